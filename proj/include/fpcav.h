/*
 * fpcav: design and characterization toolkit for open-access Fabry-Perot
 * optical microcavities.
 *
 * C API over the C++ core. All functions return fpcav_status; on any status
 * other than FPCAV_OK a human-readable diagnostic is available from
 * fpcav_last_error() (thread-local). Opaque handles are created and
 * destroyed by the matching *_create / *_destroy pairs.
 *
 * Units: lengths in um unless suffixed otherwise, wavelengths in nm,
 * frequencies in THz/GHz/MHz as suffixed, losses in ppm per round trip.
 */
#ifndef FPCAV_H
#define FPCAV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fpcav_status {
    FPCAV_OK = 0,
    FPCAV_ERR_INVALID_ARGUMENT,
    FPCAV_ERR_DOMAIN,
    FPCAV_ERR_UNSTABLE,
    FPCAV_ERR_NO_SOLUTION,
    FPCAV_ERR_CALIBRATION,
    FPCAV_ERR_FIT,
    FPCAV_ERR_FORMAT,
    FPCAV_ERR_IO
} fpcav_status;

/* Message for the most recent failure on the calling thread. */
const char* fpcav_last_error(void);

typedef enum fpcav_topology {
    FPCAV_TOPOLOGY_PC = 0, /* plano-concave */
    FPCAV_TOPOLOGY_CC = 1  /* symmetric concave-concave */
} fpcav_topology;

typedef enum fpcav_axis_kind {
    FPCAV_AXIS_WAVELENGTH_NM = 0,
    FPCAV_AXIS_FREQUENCY_GHZ = 1,
    FPCAV_AXIS_SAMPLE_INDEX = 2
} fpcav_axis_kind;

typedef struct fpcav_cavity fpcav_cavity;
typedef struct fpcav_spectrum fpcav_spectrum;
typedef struct fpcav_surface fpcav_surface;

/* ---- cavity geometry ---------------------------------------------------- */

typedef struct fpcav_cavity_config {
    fpcav_topology topology;
    double roc_um;
    double geometric_spacing_um;
    double penetration_per_mirror_um; /* negative: default 0.8*lambda */
    double lambda_nm;
    double medium_index; /* <= 0: 1.0 */
} fpcav_cavity_config;

fpcav_status fpcav_cavity_create(const fpcav_cavity_config* config, fpcav_cavity** out);
/* Effective length given directly (mode penetration already included). */
fpcav_status fpcav_cavity_create_effective(fpcav_topology topology, double roc_um,
                                           double effective_length_um, double lambda_nm,
                                           fpcav_cavity** out);
void fpcav_cavity_destroy(fpcav_cavity* cavity);

fpcav_status fpcav_cavity_stability(const fpcav_cavity* cavity, double* g_product,
                                    int* is_stable);

typedef struct fpcav_mode_report {
    double effective_length_um;
    double waist_um;
    double rayleigh_um;
    double fsr_thz;
    double transverse_spacing_thz; /* per unit of p+q */
    double mode_volume_um3;
    double mode_volume_lambda3;
} fpcav_mode_report;

fpcav_status fpcav_cavity_mode(const fpcav_cavity* cavity, fpcav_mode_report* out);

/* Spot size and wavefront ROC at distance z from the waist; the wavefront
 * ROC is +infinity at z = 0 (planar wavefront). */
fpcav_status fpcav_cavity_spot(const fpcav_cavity* cavity, double z_um, double* w_um,
                               double* wavefront_roc_um);

fpcav_status fpcav_effective_length(double geometric_spacing_um, double lambda_nm,
                                    double penetration_per_mirror_um_or_negative,
                                    double* out_um);
fpcav_status fpcav_fsr_thz(double length_um, double* out);

/* Inverts the transverse-mode-splitting relation to the effective cavity
 * length by bracketed root-finding; returns the smallest root and the number
 * of roots found in the bracket. */
fpcav_status fpcav_length_from_mode_splitting(double roc_um, double lambda00_nm,
                                              double lambdapq_nm, int order,
                                              double bracket_lo_um, double bracket_hi_um,
                                              double* length_um, int* root_count);

/* ---- losses and figures of merit ---------------------------------------- */

fpcav_status fpcav_finesse_from_loss(double total_ppm, double* exact, double* approx);
fpcav_status fpcav_loss_from_finesse(double finesse, double* total_ppm);
fpcav_status fpcav_q_from_finesse(double finesse, double length_um, double lambda_nm,
                                  double* quality);
fpcav_status fpcav_q_from_linewidth(double lambda_nm, double fwhm_mhz, double* quality);
fpcav_status fpcav_enhancement(double quality, double volume_lambda3, double medium_index,
                               double* upsilon);
fpcav_status fpcav_purcell(double upsilon, double branching_ratio, double* purcell_factor);
fpcav_status fpcav_clipping_loss_ppm(double spot_w_um, double aperture_radius_um,
                                     double* ppm);
fpcav_status fpcav_scattering_loss_ppm(double roughness_rms_nm, double lambda_nm,
                                       double* ppm);
/* Spherical-cap aperture radius from ROC and depression depth. */
fpcav_status fpcav_aperture_from_cap(double roc_um, double depth_um, double* aperture_um);

typedef struct fpcav_loss_model {
    double transmission_a_ppm;
    double transmission_b_ppm;
    double excess_coating_ppm; /* both mirrors combined */
    double absorption_ppm;
    double roughness_rms_nm;
    double aperture_radius_um;
    int shape_excess_enabled;
    /* l_shape(L) = amplitude * exp((L - reference)/scale) */
    double shape_amplitude_ppm;
    double shape_reference_um;
    double shape_scale_um;
} fpcav_loss_model;

/* Default calibration (coating-limited baseline anchored to measured
 * finesse-versus-length behavior). */
void fpcav_loss_model_defaults(fpcav_loss_model* model);

typedef struct fpcav_loss_budget {
    double transmission_a_ppm;
    double transmission_b_ppm;
    double absorption_ppm;
    double scattering_ppm;
    double clipping_ppm;
    double shape_excess_ppm;
    double total_ppm;
} fpcav_loss_budget;

fpcav_status fpcav_loss_at_length(fpcav_topology topology, double roc_um, double lambda_nm,
                                  const fpcav_loss_model* model, double length_um,
                                  fpcav_loss_budget* out);

typedef struct fpcav_sweep_point {
    double length_um;
    double total_ppm;
    double finesse;
} fpcav_sweep_point;

/* Fills up to `capacity` points; *count receives the number written and
 * *truncated is set when the sweep hit the stability limit early. */
fpcav_status fpcav_finesse_sweep(fpcav_topology topology, double roc_um, double lambda_nm,
                                 const fpcav_loss_model* model, double length_min_um,
                                 double length_max_um, int samples, fpcav_sweep_point* out,
                                 size_t capacity, size_t* count, int* truncated);

/* ---- spectra ------------------------------------------------------------ */

fpcav_status fpcav_spectrum_create(fpcav_axis_kind axis, const double* x,
                                   const double* signal, size_t n, fpcav_spectrum** out);
fpcav_status fpcav_spectrum_read_csv(const char* path, fpcav_axis_kind axis,
                                     fpcav_spectrum** out);
fpcav_status fpcav_spectrum_write_csv(const fpcav_spectrum* spectrum, const char* path);
void fpcav_spectrum_destroy(fpcav_spectrum* spectrum);
size_t fpcav_spectrum_size(const fpcav_spectrum* spectrum);
fpcav_status fpcav_spectrum_point(const fpcav_spectrum* spectrum, size_t index, double* x,
                                  double* signal);

typedef struct fpcav_linewidth_scan_config {
    double linewidth_mhz;
    double contrast;
    double span_mhz;
    int samples;
    double sideband_mhz;  /* 0 disables */
    double sideband_depth; /* relative to carrier contrast */
    double noise_sigma;
    uint64_t seed;
    double mhz_per_unit; /* raw-axis scale */
    int raw_axis;        /* nonzero: sample-index axis in raw units */
} fpcav_linewidth_scan_config;

void fpcav_linewidth_scan_defaults(fpcav_linewidth_scan_config* config);
fpcav_status fpcav_synthesize_linewidth_scan(const fpcav_linewidth_scan_config* config,
                                             fpcav_spectrum** out);

typedef struct fpcav_mode_scan_config {
    double lambda_min_nm;
    double lambda_max_nm;
    int samples;
    double linewidth_ghz;
    int max_order;
    double fundamental_contrast;
    double order_contrast_decay;
    double noise_sigma;
    uint64_t seed;
} fpcav_mode_scan_config;

void fpcav_mode_scan_defaults(fpcav_mode_scan_config* config);
fpcav_status fpcav_synthesize_mode_scan(const fpcav_cavity* cavity,
                                        const fpcav_mode_scan_config* config,
                                        fpcav_spectrum** out);

typedef struct fpcav_peak {
    double center;   /* axis units */
    double fwhm;     /* coarse, axis units */
    double contrast; /* dip depth, 1 = full extinction */
    int order;       /* assigned transverse order; -1 when unassigned */
} fpcav_peak;

fpcav_status fpcav_detect_peaks(const fpcav_spectrum* spectrum, double min_contrast,
                                fpcav_peak* out, size_t capacity, size_t* count);

typedef struct fpcav_calibration {
    double scale_mhz_per_unit;
    double sideband_spacing_units;
    double residual; /* left/right spacing asymmetry */
} fpcav_calibration;

fpcav_status fpcav_calibrate_with_sidebands(const fpcav_spectrum* spectrum,
                                            double f_mod_mhz, fpcav_calibration* out);

typedef struct fpcav_lorentz_fit {
    double center;
    double center_sigma;
    double fwhm;
    double fwhm_sigma;
    double contrast;
    double contrast_sigma;
    double residual_rms;
    int iterations;
} fpcav_lorentz_fit;

/* window_halfwidth <= 0 selects the default (2x the seed FWHM). */
fpcav_status fpcav_fit_lorentzian(const fpcav_spectrum* spectrum, const fpcav_peak* seed,
                                  double window_halfwidth, fpcav_lorentz_fit* out);

typedef struct fpcav_ladder_result {
    double length_um;
    int root_count;
    double spacing_residual;
    double fsr_cross_length_um; /* negative when no FSR cross-check was possible */
} fpcav_ladder_result;

fpcav_status fpcav_identify_mode_ladder(const fpcav_spectrum* spectrum, double roc_um,
                                        double min_contrast, fpcav_ladder_result* out,
                                        fpcav_peak* peaks_out, size_t capacity,
                                        size_t* peak_count);

/* ---- surface maps ------------------------------------------------------- */

fpcav_status fpcav_surface_create(const double* x_um, const double* y_um, const double* z_um,
                                  size_t n, fpcav_surface** out);
fpcav_status fpcav_surface_read_csv(const char* path, fpcav_surface** out);
fpcav_status fpcav_surface_write_csv(const fpcav_surface* surface, const char* path);
void fpcav_surface_destroy(fpcav_surface* surface);
size_t fpcav_surface_size(const fpcav_surface* surface);
fpcav_status fpcav_surface_point(const fpcav_surface* surface, size_t index, double* x_um,
                                 double* y_um, double* z_um);

fpcav_status fpcav_synthesize_surface(double roc_um, double depth_um, double quartic_um3,
                                      double noise_sigma_nm, double pitch_um, uint64_t seed,
                                      fpcav_surface** out);

typedef struct fpcav_profile_fit {
    double roc_um;
    double roc_sigma_um;
    double center_x_um;
    double center_y_um;
    double vertex_height_um;
    double tilt_x;
    double tilt_y;
    double quartic_um3;
    double rms_residual_nm;
    double fit_radius_um;
    int quartic_included;
} fpcav_profile_fit;

fpcav_status fpcav_fit_mirror_profile(const fpcav_surface* surface, double fit_radius_um,
                                      int include_quartic, fpcav_profile_fit* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FPCAV_H */
