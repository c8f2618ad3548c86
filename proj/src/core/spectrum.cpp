#include "core/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "core/constants.hpp"
#include "core/levmar.hpp"

namespace fpcav {

void Spectrum::validate() const {
    if (x.size() != signal.size())
        throw Error(ErrorCode::invalid_argument, "axis and signal lengths differ");
    if (x.size() < 16)
        throw Error(ErrorCode::invalid_argument, "spectrum needs at least 16 points");
    const bool ascending = x[1] > x[0];
    for (size_t i = 1; i < x.size(); ++i) {
        const bool step_ok = ascending ? x[i] > x[i - 1] : x[i] < x[i - 1];
        if (!step_ok)
            throw Error(ErrorCode::invalid_argument, "axis must be strictly monotonic");
    }
}

Spectrum render_scan(AxisKind axis, double x_min, double x_max, int samples,
                     std::span<const Dip> dips, double noise_sigma, uint64_t seed) {
    if (samples < 16)
        throw Error(ErrorCode::invalid_argument, "scan needs at least 16 samples");
    if (!(x_max > x_min))
        throw Error(ErrorCode::invalid_argument, "scan span must be non-empty");
    Spectrum spec;
    spec.axis = axis;
    spec.x.resize(samples);
    spec.signal.resize(samples);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int i = 0; i < samples; ++i) {
        const double x = x_min + (x_max - x_min) * static_cast<double>(i) / (samples - 1);
        double s = 1.0;
        for (const Dip& d : dips) {
            const double hw = d.fwhm / 2.0;
            const double dx = x - d.center;
            s -= d.contrast * hw * hw / (dx * dx + hw * hw);
        }
        if (noise_sigma > 0.0)
            s += noise_sigma * noise(rng);
        spec.x[i] = x;
        spec.signal[i] = std::max(s, 0.0);
    }
    return spec;
}

Spectrum synthesize_linewidth_scan(const LinewidthScanConfig& cfg) {
    if (cfg.linewidth_mhz <= 0.0)
        throw Error(ErrorCode::invalid_argument, "linewidth must be positive");
    if (cfg.span_mhz < 2.0 * cfg.linewidth_mhz)
        throw Error(ErrorCode::domain, "no resonance in span: scan span too narrow");
    std::vector<Dip> dips;
    dips.push_back({0.0, cfg.linewidth_mhz, cfg.contrast});
    if (cfg.sideband_mhz > 0.0) {
        dips.push_back({-cfg.sideband_mhz, cfg.linewidth_mhz, cfg.contrast * cfg.sideband_depth});
        dips.push_back({cfg.sideband_mhz, cfg.linewidth_mhz, cfg.contrast * cfg.sideband_depth});
    }
    const double half = cfg.span_mhz / 2.0;
    if (cfg.raw_axis) {
        if (cfg.mhz_per_unit <= 0.0)
            throw Error(ErrorCode::invalid_argument, "raw axis scale must be positive");
        std::vector<Dip> raw = dips;
        for (Dip& d : raw) {
            d.center /= cfg.mhz_per_unit;
            d.fwhm /= cfg.mhz_per_unit;
        }
        return render_scan(AxisKind::sample_index, -half / cfg.mhz_per_unit,
                           half / cfg.mhz_per_unit, cfg.samples, raw, cfg.noise_sigma, cfg.seed);
    }
    // Frequency axis in GHz, offsets from the carrier.
    std::vector<Dip> ghz = dips;
    for (Dip& d : ghz) {
        d.center *= 1e-3;
        d.fwhm *= 1e-3;
    }
    return render_scan(AxisKind::frequency_ghz, -half * 1e-3, half * 1e-3, cfg.samples, ghz,
                       cfg.noise_sigma, cfg.seed);
}

Spectrum synthesize_mode_scan(const CavityGeometry& geom, const ModeScanConfig& cfg) {
    if (!(cfg.lambda_max_nm > cfg.lambda_min_nm) || cfg.lambda_min_nm <= 0.0)
        throw Error(ErrorCode::invalid_argument, "invalid wavelength span");
    const double L = geom.effective_length_um();
    const double fsr = free_spectral_range_thz(L);
    const double zeta = gouy_zeta(geom);
    const double nu_min = frequency_thz(cfg.lambda_max_nm);
    const double nu_max = frequency_thz(cfg.lambda_min_nm);

    std::vector<Dip> dips;
    const int m_lo = std::max(1, static_cast<int>(std::floor(nu_min / fsr)) - 1);
    const int m_hi = static_cast<int>(std::ceil(nu_max / fsr)) + 1;
    for (int m = m_lo; m <= m_hi; ++m) {
        for (int k = 0; k <= cfg.max_order; ++k) {
            const double nu = fsr * (m + (k + 1) * zeta / kPi);
            if (nu < nu_min || nu > nu_max)
                continue;
            const double lambda_nm = kSpeedOfLight_um_THz / nu * 1e3;
            const double lambda_um = lambda_nm * 1e-3;
            const double fwhm_nm =
                lambda_um * lambda_um * (cfg.linewidth_ghz * 1e-3) / kSpeedOfLight_um_THz * 1e3;
            const double contrast =
                cfg.fundamental_contrast * std::pow(cfg.order_contrast_decay, k);
            dips.push_back({lambda_nm, fwhm_nm, contrast});
        }
    }
    if (dips.empty())
        throw Error(ErrorCode::domain, "no resonance in span");
    return render_scan(AxisKind::wavelength_nm, cfg.lambda_min_nm, cfg.lambda_max_nm,
                       cfg.samples, dips, cfg.noise_sigma, cfg.seed);
}

namespace {

struct Candidate {
    size_t index;
    double center;
    double contrast;
    double xl, xr; // half-depth window
};

// Half-depth crossing positions around a local minimum, linearly interpolated.
void half_depth_window(const Spectrum& spec, size_t i, double contrast, double& xl, double& xr) {
    const double target = 1.0 - contrast / 2.0;
    const size_t n = spec.size();
    xl = spec.x.front();
    xr = spec.x.back();
    for (size_t j = i; j > 0; --j) {
        if (spec.signal[j - 1] >= target) {
            const double t = (target - spec.signal[j]) / (spec.signal[j - 1] - spec.signal[j]);
            xl = spec.x[j] + t * (spec.x[j - 1] - spec.x[j]);
            break;
        }
    }
    for (size_t j = i; j + 1 < n; ++j) {
        if (spec.signal[j + 1] >= target) {
            const double t = (target - spec.signal[j]) / (spec.signal[j + 1] - spec.signal[j]);
            xr = spec.x[j] + t * (spec.x[j + 1] - spec.x[j]);
            break;
        }
    }
    if (xr < xl)
        std::swap(xl, xr);
}

struct MultiFit {
    std::vector<double> params; // x0, Gamma, contrast per component
    std::vector<double> covariance;
    double sse = 0.0;
    size_t points = 0;
    int iterations = 0;
};

// Joint fit of a sum of Lorentzian dips on unit baseline. The first
// component is the one of interest; the others absorb neighboring dips
// whose tails would otherwise bias it.
MultiFit fit_components(const Spectrum& spec, const std::vector<ResonancePeak>& comps,
                        double window0) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < spec.size(); ++i) {
        bool keep = std::abs(spec.x[i] - comps[0].center) <= window0;
        for (size_t k = 1; k < comps.size() && !keep; ++k)
            keep = std::abs(spec.x[i] - comps[k].center) <= 2.0 * comps[k].fwhm;
        if (keep) {
            xs.push_back(spec.x[i]);
            ys.push_back(spec.signal[i]);
        }
    }
    if (xs.size() < 8)
        throw Error(ErrorCode::fit, "insufficient points in fit window (" +
                                        std::to_string(xs.size()) + " < 8)");

    const size_t m = xs.size();
    const size_t nk = comps.size();
    const size_t np = 3 * nk;
    auto residual = [&](std::span<const double> p, std::vector<double>& r) {
        r.assign(m, 0.0);
        for (size_t i = 0; i < m; ++i) {
            double model = 1.0;
            for (size_t k = 0; k < nk; ++k) {
                const double d = xs[i] - p[3 * k];
                const double hw = std::abs(p[3 * k + 1]) / 2.0;
                model -= p[3 * k + 2] * hw * hw / (d * d + hw * hw);
            }
            r[i] = ys[i] - model;
        }
    };
    auto jacobian = [&](std::span<const double> p, std::vector<double>& jac) {
        jac.assign(m * np, 0.0);
        for (size_t i = 0; i < m; ++i) {
            for (size_t k = 0; k < nk; ++k) {
                const double x0 = p[3 * k];
                const double gamma = std::abs(p[3 * k + 1]);
                const double c = p[3 * k + 2];
                const double h = gamma * gamma / 4.0;
                const double d = xs[i] - x0;
                const double den = d * d + h;
                const double den2 = den * den;
                // r = y - model, model subtracts c*h/den per component
                jac[i * np + 3 * k + 0] = c * h * 2.0 * d / den2;           // d/dx0
                jac[i * np + 3 * k + 1] = c * (gamma / 2.0) * d * d / den2; // d/dGamma
                jac[i * np + 3 * k + 2] = h / den;                          // d/dc
            }
        }
    };

    std::vector<double> init;
    for (const ResonancePeak& p : comps) {
        init.push_back(p.center);
        init.push_back(p.fwhm);
        init.push_back(p.contrast);
    }
    LevMarOptions opts;
    LevMarResult res = levmar(residual, jacobian, init, opts);
    if (!res.converged)
        throw Error(ErrorCode::fit, "Lorentzian fit did not converge after " +
                                        std::to_string(res.iterations) +
                                        " iterations; residual SSE = " + std::to_string(res.sse));

    MultiFit out;
    out.params = std::move(res.params);
    out.covariance = std::move(res.covariance);
    out.sse = res.sse;
    out.points = m;
    out.iterations = res.iterations;
    return out;
}

} // namespace

std::vector<ResonancePeak> detect_peaks(const Spectrum& spec, double min_contrast) {
    spec.validate();
    const size_t n = spec.size();
    std::vector<Candidate> cands;
    for (size_t i = 1; i + 1 < n; ++i) {
        if (spec.signal[i] <= spec.signal[i - 1] && spec.signal[i] <= spec.signal[i + 1]) {
            const double contrast = 1.0 - spec.signal[i];
            if (contrast < min_contrast)
                continue;
            Candidate c;
            c.index = i;
            c.center = spec.x[i];
            c.contrast = contrast;
            half_depth_window(spec, i, contrast, c.xl, c.xr);
            cands.push_back(c);
        }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.center < b.center; });

    // Merge candidates whose half-depth windows overlap, keeping the deepest.
    std::vector<ResonancePeak> peaks;
    size_t i = 0;
    while (i < cands.size()) {
        Candidate best = cands[i];
        double group_xr = cands[i].xr;
        size_t j = i + 1;
        while (j < cands.size() && cands[j].xl < group_xr) {
            group_xr = std::max(group_xr, cands[j].xr);
            if (cands[j].contrast > best.contrast)
                best = cands[j];
            ++j;
        }
        ResonancePeak p;
        p.center = best.center;
        p.contrast = best.contrast;
        p.fwhm = std::max(best.xr - best.xl, 1e-30);
        peaks.push_back(p);
        i = j;
    }
    return peaks;
}

CalibrationResult calibrate_with_sidebands(const Spectrum& spec, double f_mod_mhz) {
    if (f_mod_mhz <= 0.0)
        throw Error(ErrorCode::invalid_argument, "modulation frequency must be positive");
    spec.validate();
    double deepest = 0.0;
    for (double s : spec.signal)
        deepest = std::max(deepest, 1.0 - s);
    const double threshold = std::max(0.15 * deepest, 0.01);
    std::vector<ResonancePeak> peaks = detect_peaks(spec, threshold);
    if (peaks.size() < 3)
        throw Error(ErrorCode::calibration,
                    "sidebands not found: " + std::to_string(peaks.size()) +
                        " dip(s) above contrast " + std::to_string(threshold));

    size_t carrier = 0;
    for (size_t i = 1; i < peaks.size(); ++i)
        if (peaks[i].contrast > peaks[carrier].contrast)
            carrier = i;
    if (carrier == 0 || carrier + 1 >= peaks.size())
        throw Error(ErrorCode::calibration, "sidebands not found on both sides of the carrier");

    // The sidebands are the most prominent dips on either side of the
    // carrier; noise minima on the carrier tails are shallower.
    size_t ileft = 0, iright = carrier + 1;
    for (size_t i = 1; i < carrier; ++i)
        if (peaks[i].contrast > peaks[ileft].contrast)
            ileft = i;
    for (size_t i = carrier + 2; i < peaks.size(); ++i)
        if (peaks[i].contrast > peaks[iright].contrast)
            iright = i;

    // Sample minima are biased by the neighbors' tails and by the grid
    // pitch; a joint three-component fit pins the centers.
    double c_carrier = peaks[carrier].center;
    double c_left = peaks[ileft].center;
    double c_right = peaks[iright].center;
    try {
        const MultiFit joint = fit_components(
            spec, {peaks[carrier], peaks[ileft], peaks[iright]}, 2.0 * peaks[carrier].fwhm);
        c_carrier = joint.params[0];
        c_left = joint.params[3];
        c_right = joint.params[6];
    } catch (const Error&) {
        // fall back to the detected minima
    }

    const double left = c_carrier - c_left;
    const double right = c_right - c_carrier;
    const double mean = 0.5 * (left + right);
    const double step =
        std::abs(spec.x.back() - spec.x.front()) / static_cast<double>(spec.size() - 1);
    if (mean <= 2.0 * step)
        throw Error(ErrorCode::calibration, "sidebands unresolved: spacing below 2 samples");

    CalibrationResult r;
    r.sideband_spacing_units = mean;
    r.scale_mhz_per_unit = f_mod_mhz / mean;
    r.residual = std::abs(right - left) / mean;
    return r;
}

LorentzFit fit_lorentzian(const Spectrum& spec, const ResonancePeak& seed,
                          double window_halfwidth) {
    spec.validate();
    if (seed.contrast <= 0.0)
        throw Error(ErrorCode::fit, "degenerate seed: zero contrast");
    if (seed.fwhm <= 0.0)
        throw Error(ErrorCode::fit, "degenerate seed: zero linewidth");
    const double window = window_halfwidth > 0.0 ? window_halfwidth : 2.0 * seed.fwhm;

    // Neighboring dips (e.g. modulation sidebands) are co-modeled as separate
    // Lorentzian components; their tails reach into the fit window and would
    // otherwise bias the extracted linewidth.
    std::vector<ResonancePeak> comps{seed};
    std::vector<ResonancePeak> sats = detect_peaks(spec, std::max(0.05, 0.25 * seed.contrast));
    std::sort(sats.begin(), sats.end(), [](const ResonancePeak& a, const ResonancePeak& b) {
        return a.contrast > b.contrast;
    });
    for (const ResonancePeak& p : sats) {
        // A much narrower dip has negligible tails; modeling it only lets a
        // noise blip soak up iterations.
        if (p.fwhm < 0.25 * seed.fwhm)
            continue;
        // Noise minima on a dip's flank duplicate it; one component per dip.
        bool duplicate = false;
        for (const ResonancePeak& q : comps)
            if (std::abs(p.center - q.center) <= std::max(p.fwhm, q.fwhm)) {
                duplicate = true;
                break;
            }
        if (!duplicate)
            comps.push_back(p);
    }

    const MultiFit res = fit_components(spec, comps, window);

    const size_t np = 3 * comps.size();
    LorentzFit fit;
    fit.center = res.params[0];
    fit.fwhm = std::abs(res.params[1]);
    fit.contrast = res.params[2];
    fit.residual_rms = std::sqrt(res.sse / static_cast<double>(res.points));
    fit.iterations = res.iterations;
    if (res.covariance.size() == np * np) {
        fit.center_sigma = std::sqrt(std::max(res.covariance[0], 0.0));
        fit.fwhm_sigma = std::sqrt(std::max(res.covariance[1 * np + 1], 0.0));
        fit.contrast_sigma = std::sqrt(std::max(res.covariance[2 * np + 2], 0.0));
    }
    return fit;
}

LadderResult identify_mode_ladder(const std::vector<ResonancePeak>& peaks, AxisKind axis,
                                  double roc_um) {
    if (peaks.size() < 2)
        throw Error(ErrorCode::invalid_argument, "insufficient modes: need at least 2 peaks");
    if (roc_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "ROC must be positive");

    struct Mode {
        double nu_thz;
        ResonancePeak peak;
    };
    std::vector<Mode> modes;
    for (const ResonancePeak& p : peaks) {
        double nu;
        switch (axis) {
        case AxisKind::wavelength_nm:
            nu = frequency_thz(p.center);
            break;
        case AxisKind::frequency_ghz:
            nu = p.center * 1e-3;
            break;
        default:
            throw Error(ErrorCode::calibration,
                        "raw sample-index axis: calibrate the spectrum first");
        }
        modes.push_back({nu, p});
    }
    std::sort(modes.begin(), modes.end(),
              [](const Mode& a, const Mode& b) { return a.nu_thz < b.nu_thz; });

    std::vector<double> diffs;
    for (size_t i = 1; i < modes.size(); ++i)
        diffs.push_back(modes[i].nu_thz - modes[i - 1].nu_thz);
    const double delta = *std::min_element(diffs.begin(), diffs.end());

    // Classify consecutive gaps as small multiples of the per-order spacing;
    // much larger gaps are candidate jumps to the next longitudinal family.
    LadderResult result;
    std::vector<int> orders(modes.size(), 0);
    std::vector<size_t> fsr_gap_at;
    double worst = 0.0;
    for (size_t i = 0; i < diffs.size(); ++i) {
        const double d = diffs[i];
        const int k = static_cast<int>(std::llround(d / delta));
        if (k >= 1 && k <= 3) {
            const double rel = std::abs(d - k * delta) / (k * delta);
            if (rel > 0.05)
                throw Error(ErrorCode::no_solution,
                            "ambiguous mode ladder: gap " + std::to_string(d) +
                                " THz is not a multiple of the candidate spacing " +
                                std::to_string(delta) + " THz");
            worst = std::max(worst, rel);
            orders[i + 1] = orders[i] + k;
        } else if (d > 3.5 * delta) {
            fsr_gap_at.push_back(i);
            orders[i + 1] = 0; // next longitudinal fundamental
        } else {
            throw Error(ErrorCode::no_solution,
                        "ambiguous mode ladder: gap " + std::to_string(d) +
                            " THz does not fit the candidate spacing " + std::to_string(delta));
        }
    }
    result.spacing_residual = worst;

    const LengthSolution sol =
        length_from_splitting_thz(roc_um, delta, 0.02 * roc_um, 0.98 * roc_um);
    result.length_um = sol.length_um;
    result.root_count = sol.root_count;

    const double fsr = free_spectral_range_thz(sol.length_um);
    for (size_t gi : fsr_gap_at) {
        // Gap from order j back to the next fundamental spans fsr - j*delta.
        const double implied_fsr = diffs[gi] + orders[gi] * delta;
        if (std::abs(implied_fsr - fsr) / fsr < 0.1) {
            result.fsr_cross_length_um = kSpeedOfLight_um_THz / (2.0 * implied_fsr);
            break;
        }
    }

    result.peaks.reserve(modes.size());
    for (size_t i = 0; i < modes.size(); ++i) {
        ResonancePeak p = modes[i].peak;
        p.assignment = ModeIndex{orders[i], 0};
        result.peaks.push_back(p);
    }
    return result;
}

} // namespace fpcav
