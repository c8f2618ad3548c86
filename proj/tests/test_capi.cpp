#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "fpcav.h"

TEST_CASE("cavity lifecycle and mode report") {
    fpcav_cavity* cavity = nullptr;
    REQUIRE(fpcav_cavity_create_effective(FPCAV_TOPOLOGY_PC, 69.3, 8.7, 1276.0, &cavity) ==
            FPCAV_OK);
    double g = 0.0;
    int stable = 0;
    CHECK(fpcav_cavity_stability(cavity, &g, &stable) == FPCAV_OK);
    CHECK(stable == 1);
    CHECK(g == doctest::Approx(1.0 - 8.7 / 69.3));

    fpcav_mode_report mode{};
    CHECK(fpcav_cavity_mode(cavity, &mode) == FPCAV_OK);
    CHECK(mode.waist_um == doctest::Approx(3.05).epsilon(0.01));
    CHECK(mode.mode_volume_lambda3 == doctest::Approx(30.8).epsilon(0.02));

    double w = 0.0, roc_wf = 0.0;
    CHECK(fpcav_cavity_spot(cavity, 8.7, &w, &roc_wf) == FPCAV_OK);
    CHECK(roc_wf == doctest::Approx(69.3).epsilon(1e-6));
    fpcav_cavity_destroy(cavity);
}

TEST_CASE("config-based construction applies the penetration default") {
    fpcav_cavity_config config{};
    config.topology = FPCAV_TOPOLOGY_PC;
    config.roc_um = 69.3;
    config.geometric_spacing_um = 6.7;
    config.penetration_per_mirror_um = -1.0;
    config.lambda_nm = 1276.0;
    config.medium_index = 0.0;
    fpcav_cavity* cavity = nullptr;
    REQUIRE(fpcav_cavity_create(&config, &cavity) == FPCAV_OK);
    fpcav_mode_report mode{};
    CHECK(fpcav_cavity_mode(cavity, &mode) == FPCAV_OK);
    CHECK(mode.effective_length_um == doctest::Approx(6.7 + 1.6 * 1.276).epsilon(1e-9));
    fpcav_cavity_destroy(cavity);
}

TEST_CASE("error reporting carries a diagnostic") {
    fpcav_cavity* cavity = nullptr;
    CHECK(fpcav_cavity_create_effective(FPCAV_TOPOLOGY_PC, 69.3, 0.0, 1276.0, &cavity) !=
          FPCAV_OK);
    CHECK(std::strlen(fpcav_last_error()) > 0);
    CHECK(cavity == nullptr);

    double out = 0.0;
    CHECK(fpcav_fsr_thz(10.0, nullptr) == FPCAV_ERR_INVALID_ARGUMENT);
    CHECK(fpcav_fsr_thz(-1.0, &out) != FPCAV_OK);

    double exact = 0.0, approx = 0.0;
    CHECK(fpcav_finesse_from_loss(0.0, &exact, &approx) == FPCAV_ERR_DOMAIN);
}

TEST_CASE("unstable geometry maps to the dedicated status") {
    fpcav_cavity* cavity = nullptr;
    const fpcav_status status =
        fpcav_cavity_create_effective(FPCAV_TOPOLOGY_PC, 69.3, 80.0, 1276.0, &cavity);
    CHECK((status == FPCAV_ERR_UNSTABLE || status == FPCAV_ERR_DOMAIN));
}

TEST_CASE("scalar helpers") {
    double finesse = 0.0, approx = 0.0;
    REQUIRE(fpcav_finesse_from_loss(12.0, &finesse, &approx) == FPCAV_OK);
    CHECK(finesse == doctest::Approx(5.24e5).epsilon(0.005));
    double loss = 0.0;
    REQUIRE(fpcav_loss_from_finesse(finesse, &loss) == FPCAV_OK);
    CHECK(loss == doctest::Approx(12.0).epsilon(1e-9));

    double q = 0.0;
    CHECK(fpcav_q_from_finesse(490e3, 18.9, 1280.0, &q) == FPCAV_OK);
    CHECK(q == doctest::Approx(1.45e7).epsilon(0.005));
    CHECK(fpcav_q_from_linewidth(1276.0, 58.0, &q) == FPCAV_OK);
    CHECK(q == doctest::Approx(4.05e6).epsilon(0.005));

    double upsilon = 0.0, p = 0.0;
    CHECK(fpcav_enhancement(4.1e6, 30.8, 1.0, &upsilon) == FPCAV_OK);
    CHECK(upsilon == doctest::Approx(1.33e5).epsilon(0.01));
    CHECK(fpcav_purcell(upsilon, 1.0, &p) == FPCAV_OK);
    CHECK(p == doctest::Approx(1.01e4).epsilon(0.005));
    CHECK(fpcav_purcell(upsilon, 2.0, &p) == FPCAV_ERR_DOMAIN);

    double aperture = 0.0;
    CHECK(fpcav_aperture_from_cap(105.6, 8.5, &aperture) == FPCAV_OK);
    CHECK(aperture == doctest::Approx(41.5).epsilon(0.002));
}

TEST_CASE("length inversion through the C API") {
    double length = 0.0;
    int roots = 0;
    REQUIRE(fpcav_length_from_mode_splitting(69.3, 1275.7, 1263.5, 1, 1.0, 20.0, &length,
                                             &roots) == FPCAV_OK);
    CHECK(length > 6.2);
    CHECK(length < 7.2);
    CHECK(roots >= 1);
    CHECK(fpcav_length_from_mode_splitting(69.3, 1275.7, 1263.5, 1, 15.0, 19.0, &length,
                                           &roots) == FPCAV_ERR_NO_SOLUTION);
}

TEST_CASE("loss model and sweep") {
    fpcav_loss_model model{};
    fpcav_loss_model_defaults(&model);
    CHECK(model.transmission_a_ppm == doctest::Approx(5.0));

    fpcav_loss_budget budget{};
    REQUIRE(fpcav_loss_at_length(FPCAV_TOPOLOGY_PC, 105.6, 1280.0, &model, 39.0, &budget) ==
            FPCAV_OK);
    CHECK(budget.total_ppm == doctest::Approx(50.0).epsilon(0.1));

    std::vector<fpcav_sweep_point> points(64);
    size_t count = 0;
    int truncated = 0;
    REQUIRE(fpcav_finesse_sweep(FPCAV_TOPOLOGY_PC, 105.6, 1280.0, &model, 10.0, 40.0, 64,
                                points.data(), points.size(), &count, &truncated) == FPCAV_OK);
    REQUIRE(count == 64);
    for (size_t i = 1; i < count; ++i)
        CHECK(points[i].finesse <= points[i - 1].finesse * (1.0 + 1e-12));
}

TEST_CASE("spectrum pipeline through the C API") {
    fpcav_linewidth_scan_config cfg{};
    fpcav_linewidth_scan_defaults(&cfg);
    cfg.sideband_mhz = 200.0;
    cfg.noise_sigma = 0.02;
    cfg.seed = 17;
    fpcav_spectrum* spec = nullptr;
    REQUIRE(fpcav_synthesize_linewidth_scan(&cfg, &spec) == FPCAV_OK);
    CHECK(fpcav_spectrum_size(spec) == 2400);

    std::vector<fpcav_peak> peaks(16);
    size_t n_peaks = 0;
    REQUIRE(fpcav_detect_peaks(spec, 0.15, peaks.data(), peaks.size(), &n_peaks) == FPCAV_OK);
    REQUIRE(n_peaks == 3);

    fpcav_calibration cal{};
    REQUIRE(fpcav_calibrate_with_sidebands(spec, 200.0, &cal) == FPCAV_OK);
    CHECK(cal.scale_mhz_per_unit == doctest::Approx(1000.0).epsilon(0.01));

    size_t carrier = 0;
    for (size_t i = 1; i < n_peaks; ++i)
        if (peaks[i].contrast > peaks[carrier].contrast)
            carrier = i;
    fpcav_lorentz_fit fit{};
    REQUIRE(fpcav_fit_lorentzian(spec, &peaks[carrier], 0.0, &fit) == FPCAV_OK);
    CHECK(fit.fwhm * cal.scale_mhz_per_unit == doctest::Approx(58.0).epsilon(0.05));
    fpcav_spectrum_destroy(spec);
}

TEST_CASE("mode scan and ladder through the C API") {
    fpcav_cavity* cavity = nullptr;
    REQUIRE(fpcav_cavity_create_effective(FPCAV_TOPOLOGY_PC, 105.6, 18.9, 1280.0, &cavity) ==
            FPCAV_OK);
    fpcav_mode_scan_config cfg{};
    fpcav_mode_scan_defaults(&cfg);
    cfg.lambda_min_nm = 1260.0;
    cfg.lambda_max_nm = 1300.0;
    cfg.samples = 8000;
    fpcav_spectrum* spec = nullptr;
    REQUIRE(fpcav_synthesize_mode_scan(cavity, &cfg, &spec) == FPCAV_OK);

    fpcav_ladder_result ladder{};
    std::vector<fpcav_peak> peaks(64);
    size_t n_peaks = 0;
    REQUIRE(fpcav_identify_mode_ladder(spec, 105.6, 0.05, &ladder, peaks.data(), peaks.size(),
                                       &n_peaks) == FPCAV_OK);
    CHECK(ladder.length_um == doctest::Approx(18.9).epsilon(1e-3));
    CHECK(n_peaks >= 3);
    bool assigned = false;
    for (size_t i = 0; i < n_peaks; ++i)
        assigned = assigned || peaks[i].order >= 0;
    CHECK(assigned);
    fpcav_spectrum_destroy(spec);
    fpcav_cavity_destroy(cavity);
}

TEST_CASE("spectrum csv through the C API") {
    const auto path = std::filesystem::temp_directory_path() / "fpcav_capi_spec.csv";
    fpcav_linewidth_scan_config cfg{};
    fpcav_linewidth_scan_defaults(&cfg);
    fpcav_spectrum* spec = nullptr;
    REQUIRE(fpcav_synthesize_linewidth_scan(&cfg, &spec) == FPCAV_OK);
    REQUIRE(fpcav_spectrum_write_csv(spec, path.string().c_str()) == FPCAV_OK);

    fpcav_spectrum* back = nullptr;
    REQUIRE(fpcav_spectrum_read_csv(path.string().c_str(), FPCAV_AXIS_FREQUENCY_GHZ, &back) ==
            FPCAV_OK);
    CHECK(fpcav_spectrum_size(back) == fpcav_spectrum_size(spec));
    double x0 = 0.0, s0 = 0.0, x1 = 0.0, s1 = 0.0;
    CHECK(fpcav_spectrum_point(spec, 7, &x0, &s0) == FPCAV_OK);
    CHECK(fpcav_spectrum_point(back, 7, &x1, &s1) == FPCAV_OK);
    CHECK(x0 == doctest::Approx(x1).epsilon(1e-9));
    CHECK(s0 == doctest::Approx(s1).epsilon(1e-9));
    CHECK(fpcav_spectrum_point(back, 1u << 20, &x1, &s1) == FPCAV_ERR_INVALID_ARGUMENT);
    fpcav_spectrum_destroy(spec);
    fpcav_spectrum_destroy(back);
    std::filesystem::remove(path);

    fpcav_spectrum* missing = nullptr;
    CHECK(fpcav_spectrum_read_csv("/nonexistent/fpcav.csv", FPCAV_AXIS_SAMPLE_INDEX,
                                  &missing) == FPCAV_ERR_IO);
}

TEST_CASE("surface fit through the C API") {
    fpcav_surface* surface = nullptr;
    REQUIRE(fpcav_synthesize_surface(105.6, 8.5, -2e-6, 1.0, 0.5, 9, &surface) == FPCAV_OK);
    CHECK(fpcav_surface_size(surface) >= 25);

    fpcav_profile_fit fit{};
    REQUIRE(fpcav_fit_mirror_profile(surface, 16.0, 1, &fit) == FPCAV_OK);
    CHECK(fit.roc_um == doctest::Approx(105.6).epsilon(0.01));
    CHECK(fit.quartic_included == 1);

    const auto path = std::filesystem::temp_directory_path() / "fpcav_capi_surf.csv";
    REQUIRE(fpcav_surface_write_csv(surface, path.string().c_str()) == FPCAV_OK);
    fpcav_surface* back = nullptr;
    REQUIRE(fpcav_surface_read_csv(path.string().c_str(), &back) == FPCAV_OK);
    CHECK(fpcav_surface_size(back) == fpcav_surface_size(surface));
    fpcav_surface_destroy(back);
    fpcav_surface_destroy(surface);
    std::filesystem::remove(path);
}
