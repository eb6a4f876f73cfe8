/**
 * @file serialize.hpp
 * @brief JSON form of divisor classes.
 *
 *     {"g": 3, "n": 2, "coeffs": {"lambda": "+13/1", "psi_1": "+1/1", ...}}
 *
 * Keys follow the generator order (λ, ψ_1.., δ_irr, δ_{i,S} lexicographic),
 * coefficients are lowest-terms "p/q" strings with an explicit sign, so two
 * equal classes always serialize to the same bytes. Symmetric classes add
 * "symmetric": true and use orbit keys (psi, delta_0_2, ...).
 */
#pragma once

#include "mgn/picard.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <string>
#include <string_view>

namespace mgn {

using Json = nlohmann::ordered_json;

namespace detail {

inline int parse_int(std::string_view text, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("malformed " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}

inline MarkingSet parse_set(std::string_view text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw std::invalid_argument("malformed marking set '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
    MarkingSet s;
    while (!text.empty()) {
        auto comma = text.find(',');
        s = s.with(parse_int(text.substr(0, comma), "marking"));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return s;
}

}  // namespace detail

inline BasisElement parse_basis_name(std::string_view name) {
    if (name == "lambda") return BasisElement::lambda();
    if (name == "delta_irr") return BasisElement::delta_irr();
    if (name.starts_with("psi_")) return BasisElement::psi(detail::parse_int(name.substr(4), "psi index"));
    if (name.starts_with("delta_")) {
        auto rest = name.substr(6);
        auto us = rest.find('_');
        if (us == std::string_view::npos) throw std::invalid_argument("malformed generator '" + std::string(name) + "'");
        return BasisElement::delta_sep(detail::parse_int(rest.substr(0, us), "genus"), detail::parse_set(rest.substr(us + 1)));
    }
    throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

inline SymKey parse_sym_name(std::string_view name) {
    if (name == "lambda") return SymKey::lambda();
    if (name == "psi") return SymKey::psi();
    if (name == "delta_irr") return SymKey::delta_irr();
    if (name.starts_with("delta_")) {
        auto rest = name.substr(6);
        auto us = rest.find('_');
        if (us == std::string_view::npos) throw std::invalid_argument("malformed orbit '" + std::string(name) + "'");
        return SymKey::delta(detail::parse_int(rest.substr(0, us), "genus"), detail::parse_int(rest.substr(us + 1), "size"));
    }
    throw std::invalid_argument("unknown orbit '" + std::string(name) + "'");
}

inline Json to_json(const DivisorClass& c) {
    Json coeffs = Json::object();
    for (const auto& [e, r] : c.terms()) coeffs[e.name()] = to_signed_string(r);
    Json j;
    j["g"] = c.index().g;
    j["n"] = c.index().n;
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline Json to_json(const SymDivisorClass& c) {
    Json coeffs = Json::object();
    for (const auto& [k, r] : c.terms()) coeffs[k.name()] = to_signed_string(r);
    Json j;
    j["g"] = c.index().g;
    j["n"] = c.index().n;
    j["symmetric"] = true;
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline bool is_symmetric_json(const Json& j) { return j.contains("symmetric") && j.at("symmetric").get<bool>(); }

inline DivisorClass divisor_class_from_json(const Json& j) {
    if (is_symmetric_json(j)) throw std::invalid_argument("expected a full-basis class, got a symmetric one");
    DivisorClass c(ModuliIndex{j.at("g").get<int>(), j.at("n").get<int>()});
    for (const auto& [name, value] : j.at("coeffs").items())
        c.add(parse_basis_name(name), parse_rational(value.get<std::string>()));
    return c;
}

inline SymDivisorClass sym_class_from_json(const Json& j) {
    if (!is_symmetric_json(j)) throw std::invalid_argument("expected a symmetric class");
    SymDivisorClass c(ModuliIndex{j.at("g").get<int>(), j.at("n").get<int>()});
    for (const auto& [name, value] : j.at("coeffs").items())
        c.add(parse_sym_name(name), parse_rational(value.get<std::string>()));
    return c;
}

}  // namespace mgn
