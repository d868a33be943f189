#include "moduli/even_poly.hpp"
#include "moduli/poly_json.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace moduli;

namespace {

const double kPi2 = std::acos(-1.0) * std::acos(-1.0);

Poly vd_mirzakhani() {
    Poly p(1);
    p.add_term({0}, CoeffElem::pi2_power(1, rat(1, 12)));
    p.add_term({1}, CoeffElem(rat(1, 48)));
    return p;
}

// deterministic sparse random polynomials for the property tests
Poly random_poly(std::mt19937& rng, int nvars) {
    std::uniform_int_distribution<int> nterms(1, 5), expo(0, 3), num(-6, 6), den(1, 5), pk(0, 2);
    Poly p(nvars);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        ExpVec d(nvars);
        for (int& x : d) x = expo(rng);
        p.add_term(d, CoeffElem::pi2_power(pk(rng), rat(num(rng), den(rng))));
    }
    return p;
}

}  // namespace

TEST_CASE("coefficient ring basics") {
    CoeffElem one = CoeffElem::one();
    CoeffElem pi2 = CoeffElem::pi2_power(1);
    CHECK(one * pi2 == pi2);
    CHECK(pi2 * pi2 == CoeffElem::pi2_power(2));  // pi^4 with rational 1 at exponent 2
    CHECK((pi2 - pi2).is_zero());
    CHECK(pi2.eval(2.0) == 2.0);
}

TEST_CASE("add: identity, inverse, VD example") {
    Poly vd = vd_mirzakhani();
    Poly a(1), b(1);
    a.add_term({0}, CoeffElem::pi2_power(1, rat(1, 12)));
    b.add_term({1}, CoeffElem(rat(1, 48)));
    CHECK(a + b == vd);  // pi^2/12 + L^2/48
    CHECK(vd + Poly(1) == vd);

    Poly s(4);
    s.add_term({0, 0, 0, 0}, CoeffElem::pi2_power(1, rat(2)));
    for (int i = 0; i < 4; ++i) s.add_term(ExpVec{i == 0, i == 1, i == 2, i == 3}, CoeffElem(rat(1, 2)));
    CHECK((s + (-s)).is_zero());
}

TEST_CASE("mul: unit, scalars, constants broadcast") {
    Poly vd = vd_mirzakhani();
    CHECK(Poly::constant(1, CoeffElem::one()) * vd == vd);
    Poly l2(1);
    l2.add_term({1}, CoeffElem(rat(1, 48)));
    Poly scaled = l2 * CoeffElem(rat(48));
    CHECK(scaled.coefficient({1}) == CoeffElem::one());
    // a constant with a different variable count broadcasts
    Poly c3 = Poly::constant(3, CoeffElem(rat(2)));
    Poly p2(2);
    p2.add_term({1, 0}, CoeffElem::one());
    CHECK((p2 * c3).coefficient({1, 0}) == CoeffElem(rat(2)));
    Poly q2(2);
    q2.add_term({0, 1}, CoeffElem::one());
    CHECK_THROWS_AS(p2 + Poly(3), std::invalid_argument);
}

TEST_CASE("ring axioms on random sparse polynomials") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        Poly p = random_poly(rng, 2), q = random_poly(rng, 2), r = random_poly(rng, 2);
        CHECK(p + q == q + p);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("eval is a ring homomorphism within 1e-12") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        Poly p = random_poly(rng, 3), q = random_poly(rng, 3);
        std::vector<std::complex<double>> pt{{coord(rng), coord(rng)},
                                             {coord(rng), coord(rng)},
                                             {coord(rng), coord(rng)}};
        auto sum = eval(p + q, pt, kPi2), prod = eval(p * q, pt, kPi2);
        auto ep = eval(p, pt, kPi2), eq = eval(q, pt, kPi2);
        double scale = std::max(1.0, std::abs(ep) * std::abs(eq));
        CHECK(std::abs(sum - (ep + eq)) <= 1e-12 * std::max(1.0, std::abs(ep) + std::abs(eq)));
        CHECK(std::abs(prod - ep * eq) <= 1e-12 * scale);
    }
}

TEST_CASE("eval examples") {
    Poly vd = vd_mirzakhani();
    // VD^M at L = 0 with pi^2 ~ 9.8696044
    CHECK_THAT(eval(vd, {{0.0, 0.0}}, 9.8696044).real(),
               Catch::Matchers::WithinAbs(0.8224670334, 1e-9));
    // constant term at the all-zero point with pi2 = 0
    Poly mixed(2);
    mixed.add_term({0, 0}, CoeffElem(rat(5, 7)));
    mixed.add_term({1, 1}, CoeffElem::pi2_power(2, rat(3)));
    CHECK(eval(mixed, {{0, 0}, {0, 0}}, 0.0).real() == to_double(rat(5, 7)));
    // L^2 at L = 2i is -4
    Poly l2(1);
    l2.add_term({1}, CoeffElem::one());
    CHECK_THAT(eval(l2, {{0.0, 2.0}}, kPi2).real(), Catch::Matchers::WithinAbs(-4.0, 1e-14));
    CHECK_THAT(eval(l2, {{0.0, 2.0}}, kPi2).imag(), Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("scale_lengths and top_degree_part") {
    Poly vd = vd_mirzakhani();
    FPoly tagged = scale_lengths(vd);
    // the L^2 monomial picks up beta^2
    FormalPoly expect = FormalPoly(CoeffElem(rat(1, 48))) * FormalPoly::generator(Symbol{Symbol::Beta, 0}, 2);
    CHECK(tagged.coefficient({1}) == expect);
    CHECK(tagged.coefficient({0}) == FormalPoly(CoeffElem::pi2_power(1, rat(1, 12))));

    Poly top = vd.top_degree_part();
    CHECK(top.coefficient({1}) == CoeffElem(rat(1, 48)));
    CHECK(top.terms().size() == 1);

    Poly c = Poly::constant(2, CoeffElem(rat(3)));
    CHECK(c.top_degree_part() == c);

    Poly v04(4);
    v04.add_term({0, 0, 0, 0}, CoeffElem::pi2_power(1, rat(2)));
    for (int i = 0; i < 4; ++i) v04.add_term(ExpVec{i == 0, i == 1, i == 2, i == 3}, CoeffElem(rat(1, 2)));
    Poly v04top = v04.top_degree_part();
    CHECK(v04top.terms().size() == 4);
    CHECK(v04top.coefficient({1, 0, 0, 0}) == CoeffElem(rat(1, 2)));
}

TEST_CASE("coefficient extraction") {
    Poly vd = vd_mirzakhani();
    CHECK(vd.coefficient({1}) == CoeffElem(rat(1, 48)));
    CHECK(vd.coefficient({3}).is_zero());
}

TEST_CASE("canonical JSON round-trips bit-exactly") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Poly p = random_poly(rng, 3);
        auto j = poly_to_json(p);
        Poly q = poly_from_json(j);
        CHECK(p == q);
        CHECK(poly_to_json(q).dump() == j.dump());
    }
    // terms are ordered lexicographically by d
    Poly p(2);
    p.add_term({2, 0}, CoeffElem::one());
    p.add_term({0, 1}, CoeffElem::one());
    auto j = poly_to_json(p);
    CHECK(j["terms"][0]["d"] == std::vector<int>{0, 1});
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(Poly(0), std::invalid_argument);  // closed surfaces out of scope
    Poly p(2);
    CHECK_THROWS_AS(p.add_term({1}, CoeffElem::one()), std::invalid_argument);
}

TEST_CASE("formal polynomial ring") {
    FormalPoly u0 = FormalPoly::generator(Symbol{Symbol::U, 0});
    FormalPoly u1 = FormalPoly::generator(Symbol{Symbol::U, 1});
    CHECK(u0 * u1 == u1 * u0);
    CHECK((u0 + u1) * (u0 - u1) == u0 * u0 - u1 * u1);
    CHECK_THROWS_AS((u0 + FormalPoly(CoeffElem::one())).to_coeff(), std::domain_error);
    CHECK(FormalPoly(CoeffElem(rat(3))).to_coeff() == CoeffElem(rat(3)));
    // substitution
    FormalPoly mix = u0 * u0 * FormalPoly(CoeffElem(rat(2))) + u1;
    FormalPoly sub = substitute(mix, [](Symbol s) -> std::optional<Rational> {
        if (s.kind == Symbol::U && s.index == 0) return rat(1, 2);
        return std::nullopt;
    });
    CHECK(sub == u1 + FormalPoly(CoeffElem(rat(1, 2))));
}
