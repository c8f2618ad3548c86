#pragma once

#include <optional>

#include "core/error.hpp"

namespace fpcav {

enum class Topology {
    planoConcave,  // one curved mirror, one flat (alpha = 1)
    concaveConcave // two identical curved mirrors (alpha = 2)
};

struct MirrorSpec {
    double roc_um = 0.0; // radius of curvature; ignored when flat
    bool flat = false;
    double depth_um = 0.0;
    std::optional<double> aperture_radius_um; // default derived from cap geometry
    double transmission_ppm = 0.0;
    double excess_loss_ppm = 0.0;
    double roughness_rms_nm = 0.0;

    // Lateral cap radius: explicit aperture if present, else sqrt(2*R*d - d^2).
    double effective_aperture_um() const;
};

// Spherical-cap aperture radius from ROC and depression depth.
double aperture_from_cap_um(double roc_um, double depth_um);

struct CavityGeometry {
    Topology topology = Topology::planoConcave;
    MirrorSpec mirror_a; // curved
    MirrorSpec mirror_b; // flat for PC, identical to mirror_a for symmetric CC
    double geometric_spacing_um = 0.0;
    double penetration_per_mirror_um = 0.0;
    double medium_index = 1.0;

    double alpha() const { return topology == Topology::planoConcave ? 1.0 : 2.0; }
    double roc_um() const { return mirror_a.roc_um; }
    double effective_length_um() const {
        return geometric_spacing_um + 2.0 * penetration_per_mirror_um;
    }

    // Effective length passed directly (penetration already folded in).
    static CavityGeometry pc(double roc_um, double effective_length_um);
    static CavityGeometry cc(double roc_um, double effective_length_um);

    static CavityGeometry pc_spacing(double roc_um, double geometric_spacing_um,
                                     double penetration_per_mirror_um);
    static CavityGeometry cc_spacing(double roc_um, double geometric_spacing_um,
                                     double penetration_per_mirror_um);

    void validate() const; // throws Error on invariant violation
};

// Default mode-penetration depth per mirror, 0.8 lambda.
double default_penetration_um(double lambda_nm);

// L = spacing + 2 * penetration; penetration defaults to 0.8 lambda.
double effective_length_um(double geometric_spacing_um, double lambda_nm,
                           std::optional<double> penetration_per_mirror_um = std::nullopt);

struct StabilityResult {
    double g_product = 0.0;
    bool stable = false;
};

// g1*g2 with g_i = 1 - L/R_i (flat mirror: g = 1); stable iff 0 <= g1*g2 <= 1.
StabilityResult stability(const CavityGeometry& geom);

// Fundamental-mode waist, w0 = sqrt((lambda/(pi*alpha)) * sqrt(alpha*R*L - L^2)).
double beam_waist_um(const CavityGeometry& geom, double lambda_nm);

struct SpotSize {
    double w_um = 0.0;
    double wavefront_roc_um = 0.0; // +infinity at the waist (planar wavefront)
};

// Spot size and wavefront curvature at longitudinal distance z from the waist.
SpotSize spot_size_and_wavefront(const CavityGeometry& geom, double lambda_nm, double z_um);

struct ModeVolume {
    double um3 = 0.0;
    double lambda3 = 0.0;
};

// V = (pi/4) * w0^2 * L, effective length included.
ModeVolume mode_volume(const CavityGeometry& geom, double lambda_nm);

double free_spectral_range_thz(double length_um);

// One-way Gouy phase per transverse order: arccos(sqrt(1 - L/R)) for PC,
// arccos(1 - L/R) for symmetric CC.
double gouy_zeta(const CavityGeometry& geom);

// Delta-nu_{p+q} = (p+q) * (c / (2*L*pi)) * zeta, in THz.
double transverse_mode_spacing_thz(const CavityGeometry& geom, int order);

struct ModeIndex {
    int p = 0;
    int q = 0;
    int order() const { return p + q; }
};

struct GaussianMode {
    double effective_length_um = 0.0;
    double waist_um = 0.0;
    double rayleigh_um = 0.0;
    double fsr_thz = 0.0;
    double transverse_spacing_thz = 0.0; // per unit of p+q
    double volume_um3 = 0.0;
    double volume_lambda3 = 0.0;
};

GaussianMode gaussian_mode(const CavityGeometry& geom, double lambda_nm);

struct LengthSolution {
    double length_um = 0.0;
    int root_count = 0; // roots found in the bracket; smallest is returned
};

// Solves L = R * sin^2(2*pi*dnu*L/c) for L by bracketed bisection.
LengthSolution length_from_splitting_thz(double roc_um, double dnu_per_order_thz,
                                         double bracket_lo_um, double bracket_hi_um);

// Same, with the splitting taken from a fundamental / higher-order mode pair.
LengthSolution length_from_mode_splitting(double roc_um, double lambda00_nm,
                                          double lambdapq_nm, int order,
                                          double bracket_lo_um, double bracket_hi_um);

} // namespace fpcav
