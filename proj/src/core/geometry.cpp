#include "core/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "core/constants.hpp"

namespace fpcav {

double MirrorSpec::effective_aperture_um() const {
    if (aperture_radius_um)
        return *aperture_radius_um;
    if (flat || depth_um <= 0.0)
        return std::numeric_limits<double>::infinity();
    return aperture_from_cap_um(roc_um, depth_um);
}

double aperture_from_cap_um(double roc_um, double depth_um) {
    if (roc_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "cap ROC must be positive");
    if (depth_um <= 0.0 || depth_um >= roc_um)
        throw Error(ErrorCode::domain, "cap depth must satisfy 0 < depth < ROC");
    return std::sqrt(depth_um * (2.0 * roc_um - depth_um));
}

CavityGeometry CavityGeometry::pc(double roc_um, double effective_length_um) {
    return pc_spacing(roc_um, effective_length_um, 0.0);
}

CavityGeometry CavityGeometry::cc(double roc_um, double effective_length_um) {
    return cc_spacing(roc_um, effective_length_um, 0.0);
}

CavityGeometry CavityGeometry::pc_spacing(double roc_um, double geometric_spacing_um,
                                          double penetration_per_mirror_um) {
    CavityGeometry g;
    g.topology = Topology::planoConcave;
    g.mirror_a.roc_um = roc_um;
    g.mirror_b.flat = true;
    g.geometric_spacing_um = geometric_spacing_um;
    g.penetration_per_mirror_um = penetration_per_mirror_um;
    g.validate();
    return g;
}

CavityGeometry CavityGeometry::cc_spacing(double roc_um, double geometric_spacing_um,
                                          double penetration_per_mirror_um) {
    CavityGeometry g;
    g.topology = Topology::concaveConcave;
    g.mirror_a.roc_um = roc_um;
    g.mirror_b.roc_um = roc_um;
    g.geometric_spacing_um = geometric_spacing_um;
    g.penetration_per_mirror_um = penetration_per_mirror_um;
    g.validate();
    return g;
}

void CavityGeometry::validate() const {
    if (mirror_a.flat)
        throw Error(ErrorCode::invalid_argument, "mirror_a must be curved");
    if (mirror_a.roc_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "mirror ROC must be positive");
    if (topology == Topology::planoConcave && !mirror_b.flat)
        throw Error(ErrorCode::invalid_argument, "PC topology requires a flat mirror_b");
    if (topology == Topology::concaveConcave && mirror_b.flat)
        throw Error(ErrorCode::invalid_argument, "CC topology requires a curved mirror_b");
    if (geometric_spacing_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "geometric spacing must be positive");
    if (penetration_per_mirror_um < 0.0)
        throw Error(ErrorCode::invalid_argument, "penetration must be non-negative");
    if (medium_index <= 0.0)
        throw Error(ErrorCode::invalid_argument, "medium index must be positive");
}

double default_penetration_um(double lambda_nm) {
    if (lambda_nm <= 0.0)
        throw Error(ErrorCode::invalid_argument, "wavelength must be positive");
    return 0.8 * lambda_nm * 1e-3;
}

double effective_length_um(double geometric_spacing_um, double lambda_nm,
                           std::optional<double> penetration_per_mirror_um) {
    if (geometric_spacing_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "geometric spacing must be positive");
    double pen = penetration_per_mirror_um ? *penetration_per_mirror_um
                                           : default_penetration_um(lambda_nm);
    if (pen < 0.0)
        throw Error(ErrorCode::invalid_argument, "penetration must be non-negative");
    return geometric_spacing_um + 2.0 * pen;
}

StabilityResult stability(const CavityGeometry& geom) {
    geom.validate();
    const double L = geom.effective_length_um();
    const double ga = 1.0 - L / geom.mirror_a.roc_um;
    const double gb = geom.mirror_b.flat ? 1.0 : 1.0 - L / geom.mirror_b.roc_um;
    StabilityResult r;
    r.g_product = ga * gb;
    r.stable = r.g_product >= 0.0 && r.g_product <= 1.0;
    return r;
}

namespace {

// sqrt(alpha*R*L - L^2), guarded; throws when marginal or unstable.
double stable_interior_root(const CavityGeometry& geom) {
    const StabilityResult st = stability(geom);
    const double L = geom.effective_length_um();
    const double disc = geom.alpha() * geom.roc_um() * L - L * L;
    if (!st.stable)
        throw Error(ErrorCode::unstable,
                    "unstable geometry: g1*g2 = " + std::to_string(st.g_product) +
                        " outside [0, 1]");
    if (disc <= 0.0)
        throw Error(ErrorCode::domain,
                    "marginal geometry: alpha*R*L - L^2 = " + std::to_string(disc) +
                        " is not positive");
    return std::sqrt(disc);
}

} // namespace

double beam_waist_um(const CavityGeometry& geom, double lambda_nm) {
    const double lambda_um = lambda_nm * 1e-3;
    if (lambda_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "wavelength must be positive");
    const double root = stable_interior_root(geom);
    return std::sqrt(lambda_um / (kPi * geom.alpha()) * root);
}

SpotSize spot_size_and_wavefront(const CavityGeometry& geom, double lambda_nm, double z_um) {
    const double w0 = beam_waist_um(geom, lambda_nm);
    const double zr = kPi * w0 * w0 / (lambda_nm * 1e-3);
    SpotSize s;
    s.w_um = w0 * std::sqrt(1.0 + (z_um / zr) * (z_um / zr));
    if (z_um == 0.0)
        s.wavefront_roc_um = std::numeric_limits<double>::infinity();
    else
        s.wavefront_roc_um = z_um * (1.0 + (zr / z_um) * (zr / z_um));
    return s;
}

ModeVolume mode_volume(const CavityGeometry& geom, double lambda_nm) {
    const double w0 = beam_waist_um(geom, lambda_nm);
    const double L = geom.effective_length_um();
    const double lambda_um = lambda_nm * 1e-3;
    ModeVolume v;
    v.um3 = kPi / 4.0 * w0 * w0 * L;
    v.lambda3 = v.um3 / (lambda_um * lambda_um * lambda_um);
    return v;
}

double free_spectral_range_thz(double length_um) {
    if (length_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "cavity length must be positive");
    return kSpeedOfLight_um_THz / (2.0 * length_um);
}

double gouy_zeta(const CavityGeometry& geom) {
    const double L = geom.effective_length_um();
    const double R = geom.roc_um();
    if (L >= geom.alpha() * R)
        throw Error(ErrorCode::domain, "Gouy phase undefined: L >= alpha*R");
    if (geom.topology == Topology::planoConcave)
        return std::acos(std::sqrt(1.0 - L / R));
    return std::acos(1.0 - L / R);
}

double transverse_mode_spacing_thz(const CavityGeometry& geom, int order) {
    if (order < 0)
        throw Error(ErrorCode::invalid_argument, "mode order must be non-negative");
    const double L = geom.effective_length_um();
    return order * kSpeedOfLight_um_THz / (2.0 * L * kPi) * gouy_zeta(geom);
}

GaussianMode gaussian_mode(const CavityGeometry& geom, double lambda_nm) {
    GaussianMode m;
    m.effective_length_um = geom.effective_length_um();
    m.waist_um = beam_waist_um(geom, lambda_nm);
    m.rayleigh_um = kPi * m.waist_um * m.waist_um / (lambda_nm * 1e-3);
    m.fsr_thz = free_spectral_range_thz(m.effective_length_um);
    m.transverse_spacing_thz = transverse_mode_spacing_thz(geom, 1);
    const ModeVolume v = mode_volume(geom, lambda_nm);
    m.volume_um3 = v.um3;
    m.volume_lambda3 = v.lambda3;
    return m;
}

namespace {

double splitting_residual(double length_um, double roc_um, double dnu_thz) {
    const double theta = 2.0 * kPi * dnu_thz * length_um / kSpeedOfLight_um_THz;
    const double s = std::sin(theta);
    return length_um - roc_um * s * s;
}

} // namespace

LengthSolution length_from_splitting_thz(double roc_um, double dnu_per_order_thz,
                                         double bracket_lo_um, double bracket_hi_um) {
    if (roc_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "ROC must be positive");
    if (dnu_per_order_thz <= 0.0)
        throw Error(ErrorCode::invalid_argument, "mode splitting must be positive");
    if (!(bracket_lo_um > 0.0 && bracket_hi_um > bracket_lo_um))
        throw Error(ErrorCode::invalid_argument, "invalid search bracket");

    // Eq. L = R*sin^2(theta(L)) is oscillatory; subdivide and bisect each
    // sign change. Plain fixed-point iteration diverges in the short-cavity
    // regime of interest, so a bracketed method is mandatory.
    constexpr int kSubdivisions = 2048;
    std::vector<double> roots;
    double prev_x = bracket_lo_um;
    double prev_f = splitting_residual(prev_x, roc_um, dnu_per_order_thz);
    for (int i = 1; i <= kSubdivisions; ++i) {
        const double x = bracket_lo_um +
                         (bracket_hi_um - bracket_lo_um) * static_cast<double>(i) / kSubdivisions;
        const double f = splitting_residual(x, roc_um, dnu_per_order_thz);
        if (prev_f == 0.0) {
            roots.push_back(prev_x);
        } else if (prev_f * f < 0.0) {
            double a = prev_x, b = x, fa = prev_f;
            while ((b - a) > 1e-13 * std::max(1.0, b)) {
                const double mid = 0.5 * (a + b);
                const double fm = splitting_residual(mid, roc_um, dnu_per_order_thz);
                if (fa * fm <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = f;
    }
    if (roots.empty()) {
        throw Error(ErrorCode::no_solution,
                    "no solution in bracket; residual at ends: f(lo) = " +
                        std::to_string(splitting_residual(bracket_lo_um, roc_um,
                                                          dnu_per_order_thz)) +
                        ", f(hi) = " +
                        std::to_string(splitting_residual(bracket_hi_um, roc_um,
                                                          dnu_per_order_thz)));
    }
    LengthSolution sol;
    sol.length_um = roots.front();
    sol.root_count = static_cast<int>(roots.size());
    return sol;
}

LengthSolution length_from_mode_splitting(double roc_um, double lambda00_nm,
                                          double lambdapq_nm, int order,
                                          double bracket_lo_um, double bracket_hi_um) {
    if (lambda00_nm <= 0.0 || lambdapq_nm <= 0.0)
        throw Error(ErrorCode::invalid_argument, "wavelengths must be positive");
    if (lambda00_nm == lambdapq_nm)
        throw Error(ErrorCode::invalid_argument, "mode pair wavelengths must differ");
    if (order <= 0)
        throw Error(ErrorCode::invalid_argument, "mode order must be positive");
    const double dnu_thz =
        std::abs(frequency_thz(lambdapq_nm) - frequency_thz(lambda00_nm)) / order;
    return length_from_splitting_thz(roc_um, dnu_thz, bracket_lo_um, bracket_hi_um);
}

} // namespace fpcav
