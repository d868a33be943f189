#pragma once

// Exact rational scalars and the even zeta values entering moment transforms.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace moduli {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(Integer(num), Integer(den));
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

inline Rational pow_rat(const Rational& base, int e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("0^negative");
        return Rational(1) / pow_rat(base, -e);
    }
    Rational out(1), b = base;
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

inline Integer factorial(int n) {
    Integer out(1);
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

inline Integer binomial(int n, int k) {
    if (k < 0 || k > n) return Integer(0);
    Integer out(1);
    for (int i = 0; i < k; ++i) { out *= (n - i); out /= (i + 1); }
    return out;
}

// Parses "p/q", "p", or a plain integer decimal string.
inline Rational rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(num, den);
}

inline std::string rat_to_string(const Rational& r) {
    std::string out = numerator(r).str();
    if (denominator(r) != 1) out += "/" + denominator(r).str();
    return out;
}

// Bernoulli numbers B_0..B_m via the defining recurrence
// sum_{j=0}^{m} C(m+1,j) B_j = 0.
inline const std::vector<Rational>& bernoulli_table(int m) {
    static std::vector<Rational> table{Rational(1)};
    while (static_cast<int>(table.size()) <= m) {
        int k = static_cast<int>(table.size());
        Rational acc(0);
        for (int j = 0; j < k; ++j) acc += Rational(binomial(k + 1, j)) * table[j];
        table.push_back(-acc / Rational(k + 1));
    }
    return table;
}

// zeta(2k) / pi^{2k} = (-1)^{k+1} B_{2k} 2^{2k-1} / (2k)!  (exact rational).
inline Rational zeta2k_over_pi2k(int k) {
    if (k == 0) return rat(-1, 2);  // zeta(0) convention
    const auto& B = bernoulli_table(2 * k);
    Rational v = B[2 * k] * Rational(pow_rat(Rational(2), 2 * k - 1)) / Rational(factorial(2 * k));
    if (k % 2 == 0) v = -v;
    return v;
}

}  // namespace moduli
