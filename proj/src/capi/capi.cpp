#include "fpcav.h"

#include <cstring>
#include <string>

#include "core/constants.hpp"
#include "core/csv.hpp"
#include "core/geometry.hpp"
#include "core/loss.hpp"
#include "core/spectrum.hpp"
#include "core/surface.hpp"

using namespace fpcav;

struct fpcav_cavity {
    CavityGeometry geom;
    double lambda_nm = 0.0;
};

struct fpcav_spectrum {
    Spectrum spec;
};

struct fpcav_surface {
    SurfaceMap map;
};

namespace {

thread_local std::string g_last_error;

fpcav_status map_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_argument: return FPCAV_ERR_INVALID_ARGUMENT;
    case ErrorCode::domain: return FPCAV_ERR_DOMAIN;
    case ErrorCode::unstable: return FPCAV_ERR_UNSTABLE;
    case ErrorCode::no_solution: return FPCAV_ERR_NO_SOLUTION;
    case ErrorCode::calibration: return FPCAV_ERR_CALIBRATION;
    case ErrorCode::fit: return FPCAV_ERR_FIT;
    case ErrorCode::format: return FPCAV_ERR_FORMAT;
    case ErrorCode::io: return FPCAV_ERR_IO;
    }
    return FPCAV_ERR_INVALID_ARGUMENT;
}

template <typename Fn>
fpcav_status guarded(Fn&& fn) {
    try {
        fn();
        return FPCAV_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FPCAV_ERR_INVALID_ARGUMENT;
    }
}

fpcav_status require(bool ok, const char* message) {
    if (ok)
        return FPCAV_OK;
    g_last_error = message;
    return FPCAV_ERR_INVALID_ARGUMENT;
}

Topology to_topology(fpcav_topology t) {
    return t == FPCAV_TOPOLOGY_PC ? Topology::planoConcave : Topology::concaveConcave;
}

AxisKind to_axis(fpcav_axis_kind a) {
    switch (a) {
    case FPCAV_AXIS_WAVELENGTH_NM: return AxisKind::wavelength_nm;
    case FPCAV_AXIS_FREQUENCY_GHZ: return AxisKind::frequency_ghz;
    default: return AxisKind::sample_index;
    }
}

LengthLossModel to_model(const fpcav_loss_model* m) {
    LengthLossModel model;
    model.transmission_a_ppm = m->transmission_a_ppm;
    model.transmission_b_ppm = m->transmission_b_ppm;
    model.excess_coating_ppm = m->excess_coating_ppm;
    model.absorption_ppm = m->absorption_ppm;
    model.roughness_rms_nm = m->roughness_rms_nm;
    model.aperture_radius_um = m->aperture_radius_um;
    model.shape_excess_enabled = m->shape_excess_enabled != 0;
    model.shape_amplitude_ppm = m->shape_amplitude_ppm;
    model.shape_reference_um = m->shape_reference_um;
    model.shape_scale_um = m->shape_scale_um;
    return model;
}

} // namespace

extern "C" {

const char* fpcav_last_error(void) {
    return g_last_error.c_str();
}

fpcav_status fpcav_cavity_create(const fpcav_cavity_config* config, fpcav_cavity** out) {
    if (auto s = require(config && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const double penetration = config->penetration_per_mirror_um < 0.0
                                       ? default_penetration_um(config->lambda_nm)
                                       : config->penetration_per_mirror_um;
        CavityGeometry geom =
            config->topology == FPCAV_TOPOLOGY_PC
                ? CavityGeometry::pc_spacing(config->roc_um, config->geometric_spacing_um,
                                             penetration)
                : CavityGeometry::cc_spacing(config->roc_um, config->geometric_spacing_um,
                                             penetration);
        geom.medium_index = config->medium_index <= 0.0 ? 1.0 : config->medium_index;
        if (config->lambda_nm <= 0.0)
            throw Error(ErrorCode::invalid_argument, "wavelength must be positive");
        if (!stability(geom).stable)
            throw Error(ErrorCode::unstable, "unstable geometry: g1*g2 lies outside [0, 1]");
        *out = new fpcav_cavity{geom, config->lambda_nm};
    });
}

fpcav_status fpcav_cavity_create_effective(fpcav_topology topology, double roc_um,
                                           double effective_length_um, double lambda_nm,
                                           fpcav_cavity** out) {
    if (auto s = require(out != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        if (lambda_nm <= 0.0)
            throw Error(ErrorCode::invalid_argument, "wavelength must be positive");
        CavityGeometry geom = topology == FPCAV_TOPOLOGY_PC
                                  ? CavityGeometry::pc(roc_um, effective_length_um)
                                  : CavityGeometry::cc(roc_um, effective_length_um);
        if (!stability(geom).stable)
            throw Error(ErrorCode::unstable, "unstable geometry: g1*g2 lies outside [0, 1]");
        *out = new fpcav_cavity{geom, lambda_nm};
    });
}

void fpcav_cavity_destroy(fpcav_cavity* cavity) {
    delete cavity;
}

fpcav_status fpcav_cavity_stability(const fpcav_cavity* cavity, double* g_product,
                                    int* is_stable) {
    if (auto s = require(cavity && g_product && is_stable, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const StabilityResult r = stability(cavity->geom);
        *g_product = r.g_product;
        *is_stable = r.stable ? 1 : 0;
    });
}

fpcav_status fpcav_cavity_mode(const fpcav_cavity* cavity, fpcav_mode_report* out) {
    if (auto s = require(cavity && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const GaussianMode m = gaussian_mode(cavity->geom, cavity->lambda_nm);
        out->effective_length_um = m.effective_length_um;
        out->waist_um = m.waist_um;
        out->rayleigh_um = m.rayleigh_um;
        out->fsr_thz = m.fsr_thz;
        out->transverse_spacing_thz = m.transverse_spacing_thz;
        out->mode_volume_um3 = m.volume_um3;
        out->mode_volume_lambda3 = m.volume_lambda3;
    });
}

fpcav_status fpcav_cavity_spot(const fpcav_cavity* cavity, double z_um, double* w_um,
                               double* wavefront_roc_um) {
    if (auto s = require(cavity && w_um && wavefront_roc_um, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const SpotSize sp = spot_size_and_wavefront(cavity->geom, cavity->lambda_nm, z_um);
        *w_um = sp.w_um;
        *wavefront_roc_um = sp.wavefront_roc_um;
    });
}

fpcav_status fpcav_effective_length(double geometric_spacing_um, double lambda_nm,
                                    double penetration_per_mirror_um_or_negative,
                                    double* out_um) {
    if (auto s = require(out_um != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        std::optional<double> pen;
        if (penetration_per_mirror_um_or_negative >= 0.0)
            pen = penetration_per_mirror_um_or_negative;
        *out_um = effective_length_um(geometric_spacing_um, lambda_nm, pen);
    });
}

fpcav_status fpcav_fsr_thz(double length_um, double* out) {
    if (auto s = require(out != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *out = free_spectral_range_thz(length_um); });
}

fpcav_status fpcav_length_from_mode_splitting(double roc_um, double lambda00_nm,
                                              double lambdapq_nm, int order,
                                              double bracket_lo_um, double bracket_hi_um,
                                              double* length_um, int* root_count) {
    if (auto s = require(length_um && root_count, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const LengthSolution sol = length_from_mode_splitting(
            roc_um, lambda00_nm, lambdapq_nm, order, bracket_lo_um, bracket_hi_um);
        *length_um = sol.length_um;
        *root_count = sol.root_count;
    });
}

fpcav_status fpcav_finesse_from_loss(double total_ppm, double* exact, double* approx) {
    if (auto s = require(exact && approx, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const FinesseResult r = finesse_from_loss(total_ppm);
        *exact = r.exact;
        *approx = r.approx;
    });
}

fpcav_status fpcav_loss_from_finesse(double finesse, double* total_ppm) {
    if (auto s = require(total_ppm != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *total_ppm = loss_from_finesse_ppm(finesse); });
}

fpcav_status fpcav_q_from_finesse(double finesse, double length_um, double lambda_nm,
                                  double* quality) {
    if (auto s = require(quality != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *quality = q_from_finesse(finesse, length_um, lambda_nm); });
}

fpcav_status fpcav_q_from_linewidth(double lambda_nm, double fwhm_mhz, double* quality) {
    if (auto s = require(quality != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *quality = q_from_linewidth(lambda_nm, fwhm_mhz); });
}

fpcav_status fpcav_enhancement(double quality, double volume_lambda3, double medium_index,
                               double* upsilon) {
    if (auto s = require(upsilon != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *upsilon = enhancement(quality, volume_lambda3, medium_index); });
}

fpcav_status fpcav_purcell(double upsilon, double branching_ratio, double* purcell_factor) {
    if (auto s = require(purcell_factor != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *purcell_factor = purcell(upsilon, branching_ratio); });
}

fpcav_status fpcav_clipping_loss_ppm(double spot_w_um, double aperture_radius_um,
                                     double* ppm) {
    if (auto s = require(ppm != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *ppm = clipping_loss_ppm(spot_w_um, aperture_radius_um); });
}

fpcav_status fpcav_scattering_loss_ppm(double roughness_rms_nm, double lambda_nm,
                                       double* ppm) {
    if (auto s = require(ppm != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *ppm = scattering_loss_ppm(roughness_rms_nm, lambda_nm); });
}

fpcav_status fpcav_aperture_from_cap(double roc_um, double depth_um, double* aperture_um) {
    if (auto s = require(aperture_um != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *aperture_um = aperture_from_cap_um(roc_um, depth_um); });
}

void fpcav_loss_model_defaults(fpcav_loss_model* model) {
    if (!model)
        return;
    const LengthLossModel d;
    model->transmission_a_ppm = d.transmission_a_ppm;
    model->transmission_b_ppm = d.transmission_b_ppm;
    model->excess_coating_ppm = d.excess_coating_ppm;
    model->absorption_ppm = d.absorption_ppm;
    model->roughness_rms_nm = d.roughness_rms_nm;
    model->aperture_radius_um = d.aperture_radius_um;
    model->shape_excess_enabled = d.shape_excess_enabled ? 1 : 0;
    model->shape_amplitude_ppm = d.shape_amplitude_ppm;
    model->shape_reference_um = d.shape_reference_um;
    model->shape_scale_um = d.shape_scale_um;
}

fpcav_status fpcav_loss_at_length(fpcav_topology topology, double roc_um, double lambda_nm,
                                  const fpcav_loss_model* model, double length_um,
                                  fpcav_loss_budget* out) {
    if (auto s = require(model && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const LossBudget b =
            loss_at_length(to_topology(topology), roc_um, lambda_nm, length_um, to_model(model));
        out->transmission_a_ppm = b.transmission_a_ppm;
        out->transmission_b_ppm = b.transmission_b_ppm;
        out->absorption_ppm = b.absorption_ppm;
        out->scattering_ppm = b.scattering_ppm;
        out->clipping_ppm = b.clipping_ppm;
        out->shape_excess_ppm = b.shape_excess_ppm;
        out->total_ppm = b.total_ppm();
    });
}

fpcav_status fpcav_finesse_sweep(fpcav_topology topology, double roc_um, double lambda_nm,
                                 const fpcav_loss_model* model, double length_min_um,
                                 double length_max_um, int samples, fpcav_sweep_point* out,
                                 size_t capacity, size_t* count, int* truncated) {
    if (auto s = require(model && out && count && truncated, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const SweepResult r = finesse_vs_length(to_topology(topology), roc_um, lambda_nm,
                                                to_model(model), length_min_um, length_max_um,
                                                samples);
        if (r.points.size() > capacity)
            throw Error(ErrorCode::invalid_argument, "sweep output capacity too small");
        for (size_t i = 0; i < r.points.size(); ++i) {
            out[i].length_um = r.points[i].length_um;
            out[i].total_ppm = r.points[i].total_ppm;
            out[i].finesse = r.points[i].finesse;
        }
        *count = r.points.size();
        *truncated = r.truncated ? 1 : 0;
        if (r.truncated)
            g_last_error = r.warning;
    });
}

fpcav_status fpcav_spectrum_create(fpcav_axis_kind axis, const double* x,
                                   const double* signal, size_t n, fpcav_spectrum** out) {
    if (auto s = require(x && signal && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        Spectrum spec;
        spec.axis = to_axis(axis);
        spec.x.assign(x, x + n);
        spec.signal.assign(signal, signal + n);
        spec.validate();
        *out = new fpcav_spectrum{std::move(spec)};
    });
}

fpcav_status fpcav_spectrum_read_csv(const char* path, fpcav_axis_kind axis,
                                     fpcav_spectrum** out) {
    if (auto s = require(path && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *out = new fpcav_spectrum{read_spectrum_csv(path, to_axis(axis))}; });
}

fpcav_status fpcav_spectrum_write_csv(const fpcav_spectrum* spectrum, const char* path) {
    if (auto s = require(spectrum && path, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { write_spectrum_csv(spectrum->spec, path); });
}

void fpcav_spectrum_destroy(fpcav_spectrum* spectrum) {
    delete spectrum;
}

size_t fpcav_spectrum_size(const fpcav_spectrum* spectrum) {
    return spectrum ? spectrum->spec.size() : 0;
}

fpcav_status fpcav_spectrum_point(const fpcav_spectrum* spectrum, size_t index, double* x,
                                  double* signal) {
    if (auto s = require(spectrum && x && signal, "null argument"); s != FPCAV_OK)
        return s;
    if (index >= spectrum->spec.size())
        return require(false, "spectrum index out of range");
    *x = spectrum->spec.x[index];
    *signal = spectrum->spec.signal[index];
    return FPCAV_OK;
}

void fpcav_linewidth_scan_defaults(fpcav_linewidth_scan_config* config) {
    if (!config)
        return;
    const LinewidthScanConfig d;
    config->linewidth_mhz = d.linewidth_mhz;
    config->contrast = d.contrast;
    config->span_mhz = d.span_mhz;
    config->samples = d.samples;
    config->sideband_mhz = d.sideband_mhz;
    config->sideband_depth = d.sideband_depth;
    config->noise_sigma = d.noise_sigma;
    config->seed = d.seed;
    config->mhz_per_unit = d.mhz_per_unit;
    config->raw_axis = d.raw_axis ? 1 : 0;
}

fpcav_status fpcav_synthesize_linewidth_scan(const fpcav_linewidth_scan_config* config,
                                             fpcav_spectrum** out) {
    if (auto s = require(config && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        LinewidthScanConfig cfg;
        cfg.linewidth_mhz = config->linewidth_mhz;
        cfg.contrast = config->contrast;
        cfg.span_mhz = config->span_mhz;
        cfg.samples = config->samples;
        cfg.sideband_mhz = config->sideband_mhz;
        cfg.sideband_depth = config->sideband_depth;
        cfg.noise_sigma = config->noise_sigma;
        cfg.seed = config->seed;
        cfg.mhz_per_unit = config->mhz_per_unit;
        cfg.raw_axis = config->raw_axis != 0;
        *out = new fpcav_spectrum{synthesize_linewidth_scan(cfg)};
    });
}

void fpcav_mode_scan_defaults(fpcav_mode_scan_config* config) {
    if (!config)
        return;
    const ModeScanConfig d;
    config->lambda_min_nm = d.lambda_min_nm;
    config->lambda_max_nm = d.lambda_max_nm;
    config->samples = d.samples;
    config->linewidth_ghz = d.linewidth_ghz;
    config->max_order = d.max_order;
    config->fundamental_contrast = d.fundamental_contrast;
    config->order_contrast_decay = d.order_contrast_decay;
    config->noise_sigma = d.noise_sigma;
    config->seed = d.seed;
}

fpcav_status fpcav_synthesize_mode_scan(const fpcav_cavity* cavity,
                                        const fpcav_mode_scan_config* config,
                                        fpcav_spectrum** out) {
    if (auto s = require(cavity && config && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        ModeScanConfig cfg;
        cfg.lambda_min_nm = config->lambda_min_nm;
        cfg.lambda_max_nm = config->lambda_max_nm;
        cfg.samples = config->samples;
        cfg.linewidth_ghz = config->linewidth_ghz;
        cfg.max_order = config->max_order;
        cfg.fundamental_contrast = config->fundamental_contrast;
        cfg.order_contrast_decay = config->order_contrast_decay;
        cfg.noise_sigma = config->noise_sigma;
        cfg.seed = config->seed;
        *out = new fpcav_spectrum{synthesize_mode_scan(cavity->geom, cfg)};
    });
}

fpcav_status fpcav_detect_peaks(const fpcav_spectrum* spectrum, double min_contrast,
                                fpcav_peak* out, size_t capacity, size_t* count) {
    if (auto s = require(spectrum && out && count, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const auto peaks = detect_peaks(spectrum->spec, min_contrast);
        if (peaks.size() > capacity)
            throw Error(ErrorCode::invalid_argument, "peak output capacity too small");
        for (size_t i = 0; i < peaks.size(); ++i) {
            out[i].center = peaks[i].center;
            out[i].fwhm = peaks[i].fwhm;
            out[i].contrast = peaks[i].contrast;
            out[i].order = peaks[i].assignment ? peaks[i].assignment->order() : -1;
        }
        *count = peaks.size();
    });
}

fpcav_status fpcav_calibrate_with_sidebands(const fpcav_spectrum* spectrum,
                                            double f_mod_mhz, fpcav_calibration* out) {
    if (auto s = require(spectrum && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const CalibrationResult r = calibrate_with_sidebands(spectrum->spec, f_mod_mhz);
        out->scale_mhz_per_unit = r.scale_mhz_per_unit;
        out->sideband_spacing_units = r.sideband_spacing_units;
        out->residual = r.residual;
    });
}

fpcav_status fpcav_fit_lorentzian(const fpcav_spectrum* spectrum, const fpcav_peak* seed,
                                  double window_halfwidth, fpcav_lorentz_fit* out) {
    if (auto s = require(spectrum && seed && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        ResonancePeak p;
        p.center = seed->center;
        p.fwhm = seed->fwhm;
        p.contrast = seed->contrast;
        const LorentzFit f =
            fit_lorentzian(spectrum->spec, p, window_halfwidth > 0.0 ? window_halfwidth : 0.0);
        out->center = f.center;
        out->center_sigma = f.center_sigma;
        out->fwhm = f.fwhm;
        out->fwhm_sigma = f.fwhm_sigma;
        out->contrast = f.contrast;
        out->contrast_sigma = f.contrast_sigma;
        out->residual_rms = f.residual_rms;
        out->iterations = f.iterations;
    });
}

fpcav_status fpcav_identify_mode_ladder(const fpcav_spectrum* spectrum, double roc_um,
                                        double min_contrast, fpcav_ladder_result* out,
                                        fpcav_peak* peaks_out, size_t capacity,
                                        size_t* peak_count) {
    if (auto s = require(spectrum && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const auto peaks = detect_peaks(spectrum->spec, min_contrast);
        const LadderResult r = identify_mode_ladder(peaks, spectrum->spec.axis, roc_um);
        out->length_um = r.length_um;
        out->root_count = r.root_count;
        out->spacing_residual = r.spacing_residual;
        out->fsr_cross_length_um = r.fsr_cross_length_um ? *r.fsr_cross_length_um : -1.0;
        if (peaks_out && peak_count) {
            if (r.peaks.size() > capacity)
                throw Error(ErrorCode::invalid_argument, "peak output capacity too small");
            for (size_t i = 0; i < r.peaks.size(); ++i) {
                peaks_out[i].center = r.peaks[i].center;
                peaks_out[i].fwhm = r.peaks[i].fwhm;
                peaks_out[i].contrast = r.peaks[i].contrast;
                peaks_out[i].order =
                    r.peaks[i].assignment ? r.peaks[i].assignment->order() : -1;
            }
            *peak_count = r.peaks.size();
        }
    });
}

fpcav_status fpcav_surface_create(const double* x_um, const double* y_um, const double* z_um,
                                  size_t n, fpcav_surface** out) {
    if (auto s = require(x_um && y_um && z_um && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        SurfaceMap map;
        map.x_um.assign(x_um, x_um + n);
        map.y_um.assign(y_um, y_um + n);
        map.z_um.assign(z_um, z_um + n);
        map.validate();
        *out = new fpcav_surface{std::move(map)};
    });
}

fpcav_status fpcav_surface_read_csv(const char* path, fpcav_surface** out) {
    if (auto s = require(path && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { *out = new fpcav_surface{read_surface_csv(path)}; });
}

fpcav_status fpcav_surface_write_csv(const fpcav_surface* surface, const char* path) {
    if (auto s = require(surface && path, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] { write_surface_csv(surface->map, path); });
}

void fpcav_surface_destroy(fpcav_surface* surface) {
    delete surface;
}

size_t fpcav_surface_size(const fpcav_surface* surface) {
    return surface ? surface->map.size() : 0;
}

fpcav_status fpcav_surface_point(const fpcav_surface* surface, size_t index, double* x_um,
                                 double* y_um, double* z_um) {
    if (auto s = require(surface && x_um && y_um && z_um, "null argument"); s != FPCAV_OK)
        return s;
    if (index >= surface->map.size())
        return require(false, "surface index out of range");
    *x_um = surface->map.x_um[index];
    *y_um = surface->map.y_um[index];
    *z_um = surface->map.z_um[index];
    return FPCAV_OK;
}

fpcav_status fpcav_synthesize_surface(double roc_um, double depth_um, double quartic_um3,
                                      double noise_sigma_nm, double pitch_um, uint64_t seed,
                                      fpcav_surface** out) {
    if (auto s = require(out != nullptr, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        *out = new fpcav_surface{
            synthesize_surface(roc_um, depth_um, quartic_um3, noise_sigma_nm, pitch_um, seed)};
    });
}

fpcav_status fpcav_fit_mirror_profile(const fpcav_surface* surface, double fit_radius_um,
                                      int include_quartic, fpcav_profile_fit* out) {
    if (auto s = require(surface && out, "null argument"); s != FPCAV_OK)
        return s;
    return guarded([&] {
        const ProfileFit f =
            fit_mirror_profile(surface->map, fit_radius_um, include_quartic != 0);
        out->roc_um = f.roc_um;
        out->roc_sigma_um = f.roc_sigma_um;
        out->center_x_um = f.center_x_um;
        out->center_y_um = f.center_y_um;
        out->vertex_height_um = f.vertex_height_um;
        out->tilt_x = f.tilt_x;
        out->tilt_y = f.tilt_y;
        out->quartic_um3 = f.quartic_um3;
        out->rms_residual_nm = f.rms_residual_nm;
        out->fit_radius_um = f.fit_radius_um;
        out->quartic_included = f.quartic_included ? 1 : 0;
    });
}

} // extern "C"
