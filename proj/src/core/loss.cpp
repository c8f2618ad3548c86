#include "core/loss.hpp"

#include <cmath>

#include "core/constants.hpp"

namespace fpcav {

void LossBudget::validate() const {
    const double parts[] = {transmission_a_ppm, transmission_b_ppm, absorption_ppm,
                            scattering_ppm,     clipping_ppm,       shape_excess_ppm};
    for (double p : parts)
        if (p < 0.0)
            throw Error(ErrorCode::invalid_argument, "loss components must be non-negative");
    if (total_ppm() >= 1e6)
        throw Error(ErrorCode::domain, "total round-trip loss must be below 10^6 ppm");
}

FinesseResult finesse_from_loss(double total_ppm) {
    if (total_ppm == 0.0)
        throw Error(ErrorCode::domain, "lossless cavity: finesse unbounded");
    if (total_ppm < 0.0 || total_ppm >= 1e6)
        throw Error(ErrorCode::domain, "round-trip loss must lie in (0, 10^6) ppm");
    const double l = total_ppm * 1e-6;
    const double s = std::sqrt(1.0 - l);
    FinesseResult r;
    r.exact = kPi / (2.0 * std::asin((1.0 - s) / (2.0 * std::pow(1.0 - l, 0.25))));
    r.approx = 2.0 * kPi / l;
    return r;
}

FinesseResult finesse_from_loss(const LossBudget& budget) {
    budget.validate();
    return finesse_from_loss(budget.total_ppm());
}

double loss_from_finesse_ppm(double finesse) {
    if (finesse <= 1.0)
        throw Error(ErrorCode::invalid_argument, "finesse must exceed 1");
    // Invert F = pi/(2*arcsin(x)): x = sin(pi/2F); then with u = (1-l)^(1/4),
    // 1 - u^2 = 2*x*u gives u = sqrt(1+x^2) - x and l = 1 - u^4.
    const double x = std::sin(kPi / (2.0 * finesse));
    const double u = std::sqrt(1.0 + x * x) - x;
    const double u2 = u * u;
    return (1.0 - u2 * u2) * 1e6;
}

double q_from_finesse(double finesse, double length_um, double lambda_nm) {
    if (finesse <= 0.0 || length_um <= 0.0 || lambda_nm <= 0.0)
        throw Error(ErrorCode::invalid_argument, "finesse, length and wavelength must be positive");
    return 2.0 * length_um * finesse / (lambda_nm * 1e-3);
}

double q_from_linewidth(double lambda_nm, double fwhm_mhz) {
    if (fwhm_mhz <= 0.0)
        throw Error(ErrorCode::invalid_argument, "linewidth must be positive");
    return frequency_thz(lambda_nm) * 1e6 / fwhm_mhz;
}

double enhancement(double quality, double volume_lambda3, double medium_index) {
    if (quality <= 0.0 || volume_lambda3 <= 0.0 || medium_index <= 0.0)
        throw Error(ErrorCode::invalid_argument, "Q, V and n must be positive");
    const double n3 = medium_index * medium_index * medium_index;
    return quality / volume_lambda3 / n3;
}

double purcell(double upsilon, double branching_ratio) {
    if (upsilon < 0.0)
        throw Error(ErrorCode::invalid_argument, "enhancement must be non-negative");
    if (branching_ratio < 0.0 || branching_ratio > 1.0)
        throw Error(ErrorCode::domain, "branching ratio must lie in [0, 1]");
    return 3.0 * upsilon * branching_ratio / (4.0 * kPi * kPi);
}

double clipping_loss_ppm(double spot_w_um, double aperture_radius_um) {
    if (spot_w_um <= 0.0 || aperture_radius_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "spot size and aperture must be positive");
    const double ratio = aperture_radius_um / spot_w_um;
    const double loss = std::exp(-2.0 * ratio * ratio) * 1e6;
    return loss < 1e-30 ? 0.0 : loss;
}

double scattering_loss_ppm(double roughness_rms_nm, double lambda_nm) {
    if (roughness_rms_nm < 0.0)
        throw Error(ErrorCode::invalid_argument, "roughness must be non-negative");
    if (lambda_nm <= 0.0)
        throw Error(ErrorCode::invalid_argument, "wavelength must be positive");
    const double x = 4.0 * kPi * roughness_rms_nm / lambda_nm;
    return x * x * 1e6;
}

double LengthLossModel::shape_excess_ppm(double length_um) const {
    if (!shape_excess_enabled)
        return 0.0;
    return shape_amplitude_ppm * std::exp((length_um - shape_reference_um) / shape_scale_um);
}

LossBudget loss_at_length(Topology topology, double roc_um, double lambda_nm,
                          double length_um, const LengthLossModel& model) {
    CavityGeometry geom = topology == Topology::planoConcave
                              ? CavityGeometry::pc(roc_um, length_um)
                              : CavityGeometry::cc(roc_um, length_um);
    LossBudget b;
    b.transmission_a_ppm = model.transmission_a_ppm;
    b.transmission_b_ppm = model.transmission_b_ppm;
    b.absorption_ppm = model.absorption_ppm + model.excess_coating_ppm;
    // Two mirror reflections per round trip.
    b.scattering_ppm = 2.0 * scattering_loss_ppm(model.roughness_rms_nm, lambda_nm);
    // Clipping is charged once per curved-mirror reflection: one for PC
    // (spot evaluated at z = L from the waist on the flat mirror), two
    // for CC (spot at z = L/2 on each mirror).
    if (topology == Topology::planoConcave) {
        const SpotSize s = spot_size_and_wavefront(geom, lambda_nm, length_um);
        b.clipping_ppm = clipping_loss_ppm(s.w_um, model.aperture_radius_um);
    } else {
        const SpotSize s = spot_size_and_wavefront(geom, lambda_nm, length_um / 2.0);
        b.clipping_ppm = 2.0 * clipping_loss_ppm(s.w_um, model.aperture_radius_um);
    }
    b.shape_excess_ppm = model.shape_excess_ppm(length_um);
    b.validate();
    return b;
}

SweepResult finesse_vs_length(Topology topology, double roc_um, double lambda_nm,
                              const LengthLossModel& model, double length_min_um,
                              double length_max_um, int samples) {
    if (samples < 2)
        throw Error(ErrorCode::invalid_argument, "sweep needs at least 2 samples");
    if (!(length_min_um > 0.0 && length_max_um > length_min_um))
        throw Error(ErrorCode::invalid_argument, "invalid sweep range");
    const double alpha = topology == Topology::planoConcave ? 1.0 : 2.0;
    const double limit = alpha * roc_um;
    SweepResult result;
    for (int i = 0; i < samples; ++i) {
        const double L = length_min_um +
                         (length_max_um - length_min_um) * static_cast<double>(i) / (samples - 1);
        if (L >= 0.999 * limit) {
            result.truncated = true;
            result.warning = "sweep truncated at L = " + std::to_string(L) +
                             " um: stability limit alpha*R = " + std::to_string(limit) + " um";
            break;
        }
        SweepPoint p;
        p.length_um = L;
        try {
            const LossBudget b = loss_at_length(topology, roc_um, lambda_nm, L, model);
            p.total_ppm = b.total_ppm();
        } catch (const Error&) {
            // Shape excess grows without bound; past the opaque limit the
            // budget invariant (total < 10^6 ppm) rejects the point.
            result.truncated = true;
            result.warning = "sweep truncated at L = " + std::to_string(L) +
                             " um: round-trip loss reached 10^6 ppm";
            break;
        }
        p.finesse = finesse_from_loss(p.total_ppm).exact;
        result.points.push_back(p);
    }
    if (result.points.empty())
        throw Error(ErrorCode::domain, "sweep range lies entirely outside the stable region");
    return result;
}

} // namespace fpcav
