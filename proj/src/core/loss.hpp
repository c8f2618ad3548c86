#pragma once

#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace fpcav {

// Per-mechanism round-trip losses. All entries in ppm; conversion to a
// probability happens only inside the finesse evaluation.
struct LossBudget {
    double transmission_a_ppm = 0.0;
    double transmission_b_ppm = 0.0;
    double absorption_ppm = 0.0;
    double scattering_ppm = 0.0;
    double clipping_ppm = 0.0;
    double shape_excess_ppm = 0.0;

    double total_ppm() const {
        return transmission_a_ppm + transmission_b_ppm + absorption_ppm + scattering_ppm +
               clipping_ppm + shape_excess_ppm;
    }
    void validate() const;
};

struct FinesseResult {
    double exact = 0.0;  // pi / (2*arcsin((1-sqrt(1-l)) / (2*(1-l)^(1/4))))
    double approx = 0.0; // 2*pi / l
};

FinesseResult finesse_from_loss(double total_ppm);
FinesseResult finesse_from_loss(const LossBudget& budget);

// Closed-form inverse of the exact relation; finesse_from_loss round-trips.
double loss_from_finesse_ppm(double finesse);

// Q = 2*L*F / lambda.
double q_from_finesse(double finesse, double length_um, double lambda_nm);

// Q = nu / dnu_FWHM.
double q_from_linewidth(double lambda_nm, double fwhm_mhz);

// Upsilon = Q / (V/lambda^3) / n^3, with V supplied in lambda^3 units.
double enhancement(double quality, double volume_lambda3, double medium_index);

// P = 3*Upsilon*eta / (4*pi^2).
double purcell(double upsilon, double branching_ratio);

struct EnhancementReport {
    double finesse = 0.0;
    double quality = 0.0;
    double upsilon = 0.0;
    double purcell = 0.0;
    double branching_ratio = 1.0;
    double medium_index = 1.0;
};

// Gaussian power past a circular aperture, exp(-2*a^2/w^2), per reflection.
double clipping_loss_ppm(double spot_w_um, double aperture_radius_um);

// (4*pi*sigma/lambda)^2 per reflection.
double scattering_loss_ppm(double roughness_rms_nm, double lambda_nm);

// Length-dependent loss model: fixed coating terms, roughness scattering,
// aperture clipping, and an exponential shape-excess law
// l_shape(L) = A * exp((L - L0)/s) capturing departure from the ideal
// parabolic mirror figure at large spot sizes.
struct LengthLossModel {
    double transmission_a_ppm = 5.0;
    double transmission_b_ppm = 5.0;
    double excess_coating_ppm = 1.0; // both mirrors combined
    double absorption_ppm = 0.0;
    double roughness_rms_nm = 0.072;
    double aperture_radius_um = 41.5;
    bool shape_excess_enabled = true;
    double shape_amplitude_ppm = 38.0;
    double shape_reference_um = 39.0;
    double shape_scale_um = 5.24;

    double shape_excess_ppm(double length_um) const;
};

LossBudget loss_at_length(Topology topology, double roc_um, double lambda_nm,
                          double length_um, const LengthLossModel& model);

struct SweepPoint {
    double length_um = 0.0;
    double total_ppm = 0.0;
    double finesse = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    bool truncated = false;
    std::string warning;
};

SweepResult finesse_vs_length(Topology topology, double roc_um, double lambda_nm,
                              const LengthLossModel& model, double length_min_um,
                              double length_max_um, int samples);

} // namespace fpcav
