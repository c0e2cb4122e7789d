#pragma once

#include <numbers>

namespace ommsim::units {

// CODATA 2018 exact / recommended values, SI.
inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;   // J / K
inline constexpr double kSpeedOfLight = 299792458.0; // m / s

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Electron gyromagnetic ratio used for YIG, gamma / 2pi = 28 GHz/T.
inline constexpr double kGyromagneticRatio = kTwoPi * 28.0e9;  // rad / (s T)

/// Ordinary frequency (Hz) to angular frequency (rad/s).
constexpr double angular(double hz) noexcept { return kTwoPi * hz; }

/// Angular frequency (rad/s) to ordinary frequency (Hz).
constexpr double ordinary(double rad_per_s) noexcept { return rad_per_s / kTwoPi; }

}  // namespace ommsim::units
