#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewmin/field.hpp"
#include "skewmin/shift_register.hpp"
#include "skewmin/skew_poly.hpp"

namespace skewmin {

using nlohmann::json;

// File formats. Field elements are serialised by their canonical integer
// encoding sum coeffs[i] p^i, polynomials as little-endian arrays of those.
//
// instance: {"field": {"p","m","s","modulus"}, "ell", "gamma", "g", "s"}
// solution: {"lambda","omega","deg_lambda","engine","field_ops","transforms"}

inline json field_to_json(const FieldParams& f) {
    return json{{"p", f.p()}, {"m", f.m()}, {"s", f.s()}, {"modulus", f.modulus()}};
}

inline FieldRef field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("m") || !j.contains("modulus"))
        throw std::invalid_argument("malformed field description");
    const std::uint32_t s = j.value("s", 1u);
    return make_field(j.at("p").get<std::uint32_t>(), j.at("m").get<std::uint32_t>(),
                      j.at("modulus").get<std::vector<std::uint32_t>>(), s);
}

inline json poly_to_json(const SkewPoly& f) {
    json arr = json::array();
    for (std::int64_t i = 0; i < f.size(); ++i) arr.push_back(f.coeff(i).to_uint());
    return arr;
}

inline SkewPoly poly_from_json(const FieldRef& f, const json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array");
    std::vector<FieldElement> coeffs;
    coeffs.reserve(j.size());
    for (const auto& v : j) coeffs.push_back(FieldElement::from_uint(f, v.get<std::uint64_t>()));
    return SkewPoly(f, std::move(coeffs));
}

inline json instance_to_json(const ShiftRegisterProblem& P) {
    json jg = json::array(), js = json::array();
    for (const auto& g : P.g_all()) jg.push_back(poly_to_json(g));
    for (const auto& s : P.s_all()) js.push_back(poly_to_json(s));
    return json{{"field", field_to_json(*P.field())},
                {"ell", P.ell()},
                {"gamma", P.gamma_all()},
                {"g", jg},
                {"s", js}};
}

inline ShiftRegisterProblem instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("gamma") || !j.contains("g") ||
        !j.contains("s"))
        throw std::invalid_argument("malformed instance");
    FieldRef f = field_from_json(j.at("field"));
    std::vector<SkewPoly> g, s;
    for (const auto& jp : j.at("g")) g.push_back(poly_from_json(f, jp));
    for (const auto& jp : j.at("s")) s.push_back(poly_from_json(f, jp));
    auto gamma = j.at("gamma").get<std::vector<std::int64_t>>();
    if (j.contains("ell") && j.at("ell").get<std::size_t>() != g.size())
        throw std::invalid_argument("ell does not match modulus count");
    return ShiftRegisterProblem(std::move(f), std::move(s), std::move(g), std::move(gamma));
}

inline json solution_to_json(const SrSolution& sol) {
    json jo = json::array();
    for (const auto& w : sol.omega) jo.push_back(poly_to_json(w));
    return json{{"lambda", poly_to_json(sol.lambda)},
                {"omega", jo},
                {"deg_lambda", sol.deg_lambda},
                {"engine", engine_name(sol.engine)},
                {"field_ops", sol.counters.field_ops()},
                {"transforms", sol.counters.transforms}};
}

inline SrSolution solution_from_json(const FieldRef& f, const json& j) {
    if (!j.is_object() || !j.contains("lambda") || !j.contains("omega"))
        throw std::invalid_argument("malformed solution");
    SrSolution sol;
    sol.lambda = poly_from_json(f, j.at("lambda"));
    for (const auto& jp : j.at("omega")) sol.omega.push_back(poly_from_json(f, jp));
    sol.deg_lambda = j.value("deg_lambda", std::int64_t{0});
    const std::string e = j.value("engine", "MS");
    if (e == "MS")
        sol.engine = Engine::MS;
    else if (e == "DD")
        sol.engine = Engine::DD;
    else
        throw std::invalid_argument("unknown engine tag");
    return sol;
}

}  // namespace skewmin
