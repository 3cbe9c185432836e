#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "polariton/constants.hpp"
#include "polariton/errors.hpp"

namespace polariton::units {

enum class Dimension {
    dimensionless,
    length,
    inverse_length,
    inverse_area,
    speed,
    time,
    rate,  ///< angular frequency, rad/s
    magnetic_field,
    field_gradient,
    field_curvature,
    moment,  ///< rad/s per tesla
    number_density,
};

inline const char* name(Dimension d) {
    switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::length: return "length";
    case Dimension::inverse_length: return "inverse length";
    case Dimension::inverse_area: return "inverse area";
    case Dimension::speed: return "speed";
    case Dimension::time: return "time";
    case Dimension::rate: return "rate";
    case Dimension::magnetic_field: return "magnetic field";
    case Dimension::field_gradient: return "field gradient";
    case Dimension::field_curvature: return "field curvature";
    case Dimension::moment: return "magnetic moment";
    case Dimension::number_density: return "number density";
    }
    return "?";
}

namespace detail {

struct UnitEntry {
    Dimension dim;
    double factor;  ///< multiply to get SI (rates in rad/s)
};

inline const std::map<std::string, UnitEntry>& table() {
    using D = Dimension;
    constexpr double tp = constants::two_pi;
    static const std::map<std::string, UnitEntry> t{
        {"m", {D::length, 1.0}},          {"cm", {D::length, 1e-2}},
        {"mm", {D::length, 1e-3}},        {"um", {D::length, 1e-6}},
        {"nm", {D::length, 1e-9}},        {"1/m", {D::inverse_length, 1.0}},
        {"1/cm", {D::inverse_length, 1e2}}, {"1/mm", {D::inverse_length, 1e3}},
        {"1/um", {D::inverse_length, 1e6}}, {"rad/m", {D::inverse_length, 1.0}},
        {"1/m^2", {D::inverse_area, 1.0}}, {"1/cm^2", {D::inverse_area, 1e4}},
        {"1/mm^2", {D::inverse_area, 1e6}}, {"m/s", {D::speed, 1.0}},
        {"s", {D::time, 1.0}},            {"ms", {D::time, 1e-3}},
        {"us", {D::time, 1e-6}},          {"ns", {D::time, 1e-9}},
        {"ps", {D::time, 1e-12}},
        // cyclic frequencies become angular: 1 Hz = 2 pi rad/s
        {"rad/s", {D::rate, 1.0}},        {"1/s", {D::rate, 1.0}},
        {"Hz", {D::rate, tp}},            {"kHz", {D::rate, tp * 1e3}},
        {"MHz", {D::rate, tp * 1e6}},     {"GHz", {D::rate, tp * 1e9}},
        {"THz", {D::rate, tp * 1e12}},
        {"T", {D::magnetic_field, 1.0}},  {"mT", {D::magnetic_field, 1e-3}},
        {"uT", {D::magnetic_field, 1e-6}}, {"G", {D::magnetic_field, 1e-4}},
        {"mG", {D::magnetic_field, 1e-7}},
        {"T/m", {D::field_gradient, 1.0}}, {"mT/m", {D::field_gradient, 1e-3}},
        {"G/cm", {D::field_gradient, 1e-2}}, {"G/m", {D::field_gradient, 1e-4}},
        {"T/m^2", {D::field_curvature, 1.0}}, {"G/cm^2", {D::field_curvature, 1.0}},
        {"G/m^2", {D::field_curvature, 1e-4}},
        {"rad/s/T", {D::moment, 1.0}},    {"Hz/T", {D::moment, tp}},
        {"MHz/T", {D::moment, tp * 1e6}}, {"MHz/G", {D::moment, tp * 1e10}},
        {"1/m^3", {D::number_density, 1.0}}, {"1/cm^3", {D::number_density, 1e6}},
        {"cm^-3", {D::number_density, 1e6}},
    };
    return t;
}

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace detail

/// Parses "7.5 cm", "2.87 MHz", "5e-3 T/m" or a bare number (taken as SI) into SI units,
/// checking the unit against `expected`.
inline double parse_quantity(const std::string& text, Dimension expected) {
    const std::string s = detail::trim(text);
    if (s.empty()) throw ConfigError("empty quantity");
    const char* begin = s.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) throw ConfigError("quantity '" + s + "' does not start with a number");
    if (!std::isfinite(value)) throw ConfigError("quantity '" + s + "' is not finite");
    const std::string unit = detail::trim(std::string(end));
    if (unit.empty()) return value;
    const auto& t = detail::table();
    const auto it = t.find(unit);
    if (it == t.end()) throw ConfigError("unknown unit '" + unit + "' in '" + s + "'");
    if (it->second.dim != expected)
        throw ConfigError("unit '" + unit + "' is a " + name(it->second.dim) + ", expected " + name(expected));
    return value * it->second.factor;
}

}  // namespace polariton::units
