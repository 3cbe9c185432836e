#pragma once

#include <numbers>

namespace polariton::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Vacuum light speed, m/s.
inline constexpr double speed_of_light = 299792458.0;

/// Bohr magneton over hbar in rad/s per tesla (mu_B/h = 13.996244936 GHz/T).
inline constexpr double bohr_magneton = two_pi * 13.996244936e9;

}  // namespace polariton::constants
