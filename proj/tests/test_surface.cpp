#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <vector>

#include "core/csv.hpp"
#include "core/geometry.hpp"
#include "core/surface.hpp"

using namespace fpcav;

TEST_CASE("surface validation") {
    SurfaceMap map;
    for (int i = 0; i < 30; ++i) {
        map.x_um.push_back(i % 6);
        map.y_um.push_back(i / 6);
        map.z_um.push_back(0.01 * i);
    }
    CHECK_NOTHROW(map.validate());
    map.x_um[7] = map.x_um[3];
    map.y_um[7] = map.y_um[3];
    CHECK_THROWS_AS(map.validate(), Error);
    map.x_um[7] = 99.0;
    map.z_um[9] = std::nan("");
    CHECK_THROWS_AS(map.validate(), Error);
}

TEST_CASE("synthesize_surface determinism and scale") {
    auto a = synthesize_surface(105.6, 8.5, 0.0, 1.0, 1.0, 5);
    auto b = synthesize_surface(105.6, 8.5, 0.0, 1.0, 1.0, 5);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(a.z_um[i] == b.z_um[i]);
    // depression depth reaches roughly the requested cap depth
    double zmax = 0.0;
    for (double z : a.z_um)
        zmax = std::max(zmax, z);
    CHECK(zmax == doctest::Approx(8.5).epsilon(0.05));
}

TEST_CASE("perfect paraboloid recovered exactly") {
    for (double roc : {69.3, 105.6}) {
        auto map = synthesize_surface(roc, 4.5, 0.0, 0.0, 0.5, 0);
        auto fit = fit_mirror_profile(map, 0.4 * aperture_from_cap_um(roc, 4.5), true);
        CHECK(std::abs(fit.roc_um - roc) / roc < 1e-9);
        CHECK(fit.rms_residual_nm < 1e-6);
    }
}

TEST_CASE("quartic perturbation with noise stays within 1%") {
    auto map69 = synthesize_surface(69.3, 4.5, -1e-5, 1.0, 0.5, 3);
    auto fit69 = fit_mirror_profile(map69, 9.0, true);
    CHECK(std::abs(fit69.roc_um - 69.3) / 69.3 < 0.01);

    auto map105 = synthesize_surface(105.6, 8.5, -2e-6, 1.0, 0.5, 4);
    auto fit105 = fit_mirror_profile(map105, 16.0, true);
    CHECK(std::abs(fit105.roc_um - 105.6) / 105.6 < 0.01);
}

TEST_CASE("nested models: quartic residual never larger") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        auto map = synthesize_surface(105.6, 8.5, -2e-6, 1.0, 0.5, seed);
        auto with = fit_mirror_profile(map, 16.0, true);
        auto without = fit_mirror_profile(map, 16.0, false);
        CHECK(with.rms_residual_nm <= without.rms_residual_nm * (1.0 + 1e-9));
        CHECK_FALSE(without.quartic_included);
        CHECK(with.quartic_included);
    }
}

TEST_CASE("translation and tilt invariance of the recovered ROC") {
    auto base = synthesize_surface(105.6, 8.5, -2e-6, 0.0, 0.5, 0);
    auto ref = fit_mirror_profile(base, 16.0, true);

    SurfaceMap moved = base;
    for (size_t i = 0; i < moved.size(); ++i) {
        moved.x_um[i] += 3.7;
        moved.y_um[i] -= 2.1;
        moved.z_um[i] += 0.4 + 0.003 * moved.x_um[i] - 0.002 * moved.y_um[i];
    }
    auto fit = fit_mirror_profile(moved, 16.0, true);
    CHECK(std::abs(fit.roc_um - ref.roc_um) / ref.roc_um < 1e-9);
    CHECK(fit.center_x_um == doctest::Approx(ref.center_x_um + 3.7).epsilon(1e-6));
    CHECK(fit.center_y_um == doctest::Approx(ref.center_y_um - 2.1).epsilon(1e-6));
    CHECK(fit.tilt_x == doctest::Approx(0.003).epsilon(1e-3));
}

TEST_CASE("noise scaling of the recovered ROC") {
    auto stddev_at = [](double sigma_nm) {
        std::vector<double> rocs;
        for (uint64_t seed = 0; seed < 100; ++seed) {
            auto map = synthesize_surface(105.6, 8.5, 0.0, sigma_nm, 1.0, seed);
            rocs.push_back(fit_mirror_profile(map, 16.0, false).roc_um);
        }
        double mean = 0.0;
        for (double r : rocs)
            mean += r;
        mean /= rocs.size();
        double var = 0.0;
        for (double r : rocs)
            var += (r - mean) * (r - mean);
        return std::sqrt(var / (rocs.size() - 1));
    };
    const double s05 = stddev_at(0.5);
    const double s1 = stddev_at(1.0);
    const double s2 = stddev_at(2.0);
    CHECK(s1 == doctest::Approx(2.0 * s05).epsilon(0.25));
    CHECK(s2 == doctest::Approx(2.0 * s1).epsilon(0.25));
}

TEST_CASE("fit radius beyond the map extent is rejected") {
    auto map = synthesize_surface(105.6, 8.5, 0.0, 0.0, 1.0, 0);
    CHECK_THROWS_AS(fit_mirror_profile(map, 500.0, true), Error);
}

TEST_CASE("roc uncertainty shrinks with more data") {
    auto coarse = synthesize_surface(105.6, 8.5, 0.0, 1.0, 1.0, 0);
    auto fine = synthesize_surface(105.6, 8.5, 0.0, 1.0, 0.5, 0);
    auto fit_coarse = fit_mirror_profile(coarse, 16.0, false);
    auto fit_fine = fit_mirror_profile(fine, 16.0, false);
    CHECK(fit_fine.roc_sigma_um < fit_coarse.roc_sigma_um);
    CHECK(fit_coarse.roc_sigma_um > 0.0);
}

TEST_CASE("surface csv round trip and format errors") {
    const auto path = std::filesystem::temp_directory_path() / "fpcav_surf_rt.csv";
    auto map = synthesize_surface(69.3, 4.5, 0.0, 0.5, 2.0, 1);
    write_surface_csv(map, path.string());
    auto back = read_surface_csv(path.string());
    REQUIRE(back.size() == map.size());
    for (size_t i = 0; i < map.size(); ++i)
        CHECK(back.z_um[i] == doctest::Approx(map.z_um[i]).epsilon(1e-9));
    std::filesystem::remove(path);

    {
        std::FILE* f = std::fopen(path.string().c_str(), "wb");
        std::fputs("x_um,y_um,height\n0,0,0\n", f);
        std::fclose(f);
    }
    CHECK_THROWS_WITH_AS(read_surface_csv(path.string()), doctest::Contains("z_um"), Error);
    std::filesystem::remove(path);
}
