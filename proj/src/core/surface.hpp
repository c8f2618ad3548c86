#pragma once

#include <cstdint>
#include <vector>

#include "core/error.hpp"

namespace fpcav {

// Sparse height map from a white-light interferometer scan.
struct SurfaceMap {
    std::vector<double> x_um;
    std::vector<double> y_um;
    std::vector<double> z_um;
    double pitch_um = 0.0; // lateral sampling pitch, 0 when unknown

    size_t size() const { return x_um.size(); }
    void validate() const;
};

struct ProfileFit {
    double roc_um = 0.0;
    double roc_sigma_um = 0.0;
    double center_x_um = 0.0;
    double center_y_um = 0.0;
    double vertex_height_um = 0.0;
    double tilt_x = 0.0; // um per um
    double tilt_y = 0.0;
    double quartic_um3 = 0.0; // coefficient of r^4, in um^-3
    double rms_residual_nm = 0.0;
    double fit_radius_um = 0.0;
    bool quartic_included = false;
};

// Parabolic bowl with an optional rotationally symmetric quartic term and
// Gaussian height noise, sampled on a square grid out to the cap aperture.
// Deterministic for a fixed seed.
SurfaceMap synthesize_surface(double roc_um, double depth_um, double quartic_um3,
                              double noise_sigma_nm, double pitch_um, uint64_t seed);

// Fits z = z0 + a*(x-x0) + b*(y-y0) + r^2/(2R) + c4*r^4 over a disc of
// fit_radius around the depression minimum. Linear parameters are solved
// exactly; the center is refined by damped least squares to 1e-9 step
// tolerance.
ProfileFit fit_mirror_profile(const SurfaceMap& map, double fit_radius_um, bool include_quartic);

} // namespace fpcav
