#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "core/geometry.hpp"

namespace fpcav {

enum class AxisKind {
    wavelength_nm,
    frequency_ghz,
    sample_index, // uncalibrated raw units
};

struct Spectrum {
    AxisKind axis = AxisKind::sample_index;
    std::vector<double> x;      // strictly monotonic
    std::vector<double> signal; // reflected power, off-resonance ~ 1

    size_t size() const { return x.size(); }
    void validate() const;
};

struct Dip {
    double center = 0.0;
    double fwhm = 0.0;
    double contrast = 0.0; // dip depth in (0, 1]
};

// Lorentzian reflection dips on a unit baseline plus Gaussian noise;
// deterministic for a fixed seed.
Spectrum render_scan(AxisKind axis, double x_min, double x_max, int samples,
                     std::span<const Dip> dips, double noise_sigma, uint64_t seed);

struct LinewidthScanConfig {
    double linewidth_mhz = 58.0;
    double contrast = 0.7;
    double span_mhz = 1200.0; // full span, centered on the carrier
    int samples = 2400;
    double sideband_mhz = 0.0;  // 0 disables the satellites
    double sideband_depth = 0.3; // relative to the carrier contrast
    double noise_sigma = 0.0;
    uint64_t seed = 0;
    // Raw axis scale; 1.0 together with axis=frequency keeps the axis in MHz.
    double mhz_per_unit = 1.0;
    bool raw_axis = false; // true: emit sample_index axis in raw units
};

// Single-resonance scan around a carrier at x = 0, optionally with
// phase-modulation sidebands at +-f_mod.
Spectrum synthesize_linewidth_scan(const LinewidthScanConfig& cfg);

struct ModeScanConfig {
    double lambda_min_nm = 0.0;
    double lambda_max_nm = 0.0;
    int samples = 4000;
    double linewidth_ghz = 20.0; // per-dip FWHM in optical frequency
    int max_order = 2;
    double fundamental_contrast = 0.8;
    double order_contrast_decay = 0.55;
    double noise_sigma = 0.0;
    uint64_t seed = 0;
};

// Broad wavelength scan across the longitudinal/transverse mode ladder of a
// cavity; dips at nu = FSR * (m + (order+1)*zeta/pi).
Spectrum synthesize_mode_scan(const CavityGeometry& geom, const ModeScanConfig& cfg);

struct ResonancePeak {
    double center = 0.0;
    double fwhm = 0.0;     // coarse, from half-depth crossings
    double contrast = 0.0; // 1 - min signal
    std::optional<ModeIndex> assignment;
};

// Local-minimum dip detection with a contrast threshold; output sorted by
// center. Overlapping candidates are merged, keeping the deepest.
std::vector<ResonancePeak> detect_peaks(const Spectrum& spec, double min_contrast);

struct CalibrationResult {
    double scale_mhz_per_unit = 0.0;
    double sideband_spacing_units = 0.0; // mean carrier-to-sideband spacing
    double residual = 0.0;               // left/right spacing asymmetry
};

CalibrationResult calibrate_with_sidebands(const Spectrum& spec, double f_mod_mhz);

struct LorentzFit {
    double center = 0.0;
    double center_sigma = 0.0;
    double fwhm = 0.0;
    double fwhm_sigma = 0.0;
    double contrast = 0.0;
    double contrast_sigma = 0.0;
    double residual_rms = 0.0;
    int iterations = 0;
};

// Nonlinear least squares on s(x) = 1 - c*(G/2)^2/((x-x0)^2 + (G/2)^2) over a
// window around the seed (default half-width 2x the seed FWHM, which keeps
// 200 MHz sidebands outside the fit for a 58 MHz line).
LorentzFit fit_lorentzian(const Spectrum& spec, const ResonancePeak& seed,
                          double window_halfwidth = 0.0);

struct LadderResult {
    std::vector<ResonancePeak> peaks; // with order assignments
    double length_um = 0.0;
    int root_count = 0;
    double spacing_residual = 0.0; // worst relative deviation from the common spacing
    std::optional<double> fsr_cross_length_um;
};

// Assigns transverse orders to an ascending-frequency peak ladder and inverts
// the per-order splitting to the cavity length.
LadderResult identify_mode_ladder(const std::vector<ResonancePeak>& peaks, AxisKind axis,
                                  double roc_um);

} // namespace fpcav
