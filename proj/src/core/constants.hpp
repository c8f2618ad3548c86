#pragma once

namespace fpcav {

// Vacuum speed of light, exact.
inline constexpr double kSpeedOfLight_m_s = 299792458.0;

// c expressed in the unit systems used throughout: lengths in um,
// frequencies in THz (1 um * 1 THz = 1e-6 m * 1e12 Hz = 1e6 m/s).
inline constexpr double kSpeedOfLight_um_THz = 299.792458;

inline constexpr double kPi = 3.14159265358979323846;

// Optical frequency in THz for a vacuum wavelength in nm.
inline double frequency_thz(double lambda_nm) {
    return kSpeedOfLight_um_THz / (lambda_nm * 1e-3);
}

} // namespace fpcav
