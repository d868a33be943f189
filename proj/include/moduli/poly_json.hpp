#pragma once

// Canonical JSON form for polynomials over Q[pi^2]:
//   {"nvars": n, "terms": [{"d": [d1,...,dn],
//                           "coeff": [{"pi2": k, "num": "...", "den": "..."}]}]}
// Terms are emitted in lexicographic order of d, integers as decimal strings,
// so serialize/parse round-trips are bit-exact.

#include "moduli/even_poly.hpp"

#include <json.hpp>

namespace moduli {

inline nlohmann::json coeff_to_json(const CoeffElem& c) {
    auto arr = nlohmann::json::array();
    for (const auto& [k, q] : c.terms()) {
        arr.push_back({{"pi2", k},
                       {"num", numerator(q).str()},
                       {"den", denominator(q).str()}});
    }
    return arr;
}

inline CoeffElem coeff_from_json(const nlohmann::json& j) {
    CoeffElem c;
    for (const auto& t : j) {
        Rational q(Integer(t.at("num").get<std::string>()), Integer(t.at("den").get<std::string>()));
        c += CoeffElem::pi2_power(t.at("pi2").get<int>(), q);
    }
    return c;
}

inline nlohmann::json poly_to_json(const Poly& p) {
    nlohmann::json j;
    j["nvars"] = p.nvars();
    auto arr = nlohmann::json::array();
    for (const auto& [d, c] : p.terms()) arr.push_back({{"d", d}, {"coeff", coeff_to_json(c)}});
    j["terms"] = arr;
    return j;
}

inline Poly poly_from_json(const nlohmann::json& j) {
    Poly p(j.at("nvars").get<int>());
    for (const auto& t : j.at("terms"))
        p.add_term(t.at("d").get<std::vector<int>>(), coeff_from_json(t.at("coeff")));
    return p;
}

}  // namespace moduli
