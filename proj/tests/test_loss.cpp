#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/constants.hpp"
#include "core/loss.hpp"

using namespace fpcav;

TEST_CASE("finesse from loss reference points") {
    CHECK(finesse_from_loss(10.0).exact == doctest::Approx(6.28e5).epsilon(0.005));
    CHECK(finesse_from_loss(12.0).exact == doctest::Approx(5.24e5).epsilon(0.005));
    CHECK(finesse_from_loss(18.0).exact == doctest::Approx(3.49e5).epsilon(0.005));
}

TEST_CASE("finesse exact vs approx relation") {
    // The arcsin form sits slightly below 2*pi/l for every physical loss;
    // the gap is bounded by l (and the signed exact-relative gap by l/2).
    for (double l = 1e-6; l < 0.9; l += 0.004) {
        auto f = finesse_from_loss(l * 1e6);
        CHECK(f.exact < f.approx);
        CHECK(std::abs(f.approx - f.exact) / f.approx < l);
        CHECK((f.exact - f.approx) / f.exact < l / 2.0);
    }
}

TEST_CASE("gross loss evaluated both ways") {
    const double l = 0.5;
    auto f = finesse_from_loss(l * 1e6);
    const double direct =
        kPi / (2.0 * std::asin((1.0 - std::sqrt(1.0 - l)) /
                               (2.0 * std::pow(1.0 - l, 0.25))));
    CHECK(f.exact == doctest::Approx(direct).epsilon(1e-12));
    CHECK(f.approx == doctest::Approx(2.0 * kPi / l).epsilon(1e-12));
}

TEST_CASE("lossless cavity rejected") {
    CHECK_THROWS_AS(finesse_from_loss(0.0), Error);
    CHECK_THROWS_AS(finesse_from_loss(1e6), Error);
}

TEST_CASE("loss from finesse inverse") {
    CHECK(loss_from_finesse_ppm(4.9e5) == doctest::Approx(12.8).epsilon(0.01));
    CHECK(loss_from_finesse_ppm(3.5e5) == doctest::Approx(18.0).epsilon(0.01));
    for (double f = 1e2; f <= 1e7; f *= 3.1623) {
        const double l = loss_from_finesse_ppm(f);
        CHECK(finesse_from_loss(l).exact == doctest::Approx(f).epsilon(1e-9));
    }
    for (double l : {5.0, 13.0, 50.0, 1e3, 1e5}) {
        CHECK(loss_from_finesse_ppm(finesse_from_loss(l).exact) ==
              doctest::Approx(l).epsilon(1e-9));
    }
}

TEST_CASE("quality factor") {
    CHECK(q_from_finesse(490e3, 18.9, 1280.0) == doctest::Approx(1.45e7).epsilon(0.005));
    // L = lambda/2 makes Q and F coincide
    CHECK(q_from_finesse(3.5e5, 1.280 / 2.0, 1280.0) == doctest::Approx(3.5e5).epsilon(1e-12));
    CHECK(q_from_finesse(1e5, 20.0, 1280.0) ==
          doctest::Approx(2.0 * q_from_finesse(1e5, 10.0, 1280.0)).epsilon(1e-12));

    CHECK(q_from_linewidth(1276.0, 58.0) == doctest::Approx(4.05e6).epsilon(0.005));
    CHECK(q_from_linewidth(1280.0, 100.0) == doctest::Approx(2.342e6).epsilon(0.001));
    const double nu_mhz = frequency_thz(1280.0) * 1e6;
    CHECK(q_from_linewidth(1280.0, nu_mhz) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("enhancement and Purcell") {
    CHECK(enhancement(4.1e6, 30.8, 1.0) == doctest::Approx(1.33e5).epsilon(0.01));
    CHECK(enhancement(7.1e6, 148.2, 1.0) == doctest::Approx(4.8e4).epsilon(0.01));
    CHECK(enhancement(1.0, 1.0, 1.0) == doctest::Approx(1.0));
    // homogeneity
    CHECK(enhancement(2.0e6, 30.8, 1.0) ==
          doctest::Approx(2.0 * enhancement(1.0e6, 30.8, 1.0)).epsilon(1e-12));
    CHECK(enhancement(1.0e6, 61.6, 1.0) ==
          doctest::Approx(0.5 * enhancement(1.0e6, 30.8, 1.0)).epsilon(1e-12));

    CHECK(purcell(1.0e5, 0.0) == doctest::Approx(0.0));
    CHECK(purcell(4.0 * kPi * kPi / 3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(purcell(1.33e5, 1.0) == doctest::Approx(1.01e4).epsilon(0.005));
    CHECK_THROWS_AS(purcell(1.0, 1.5), Error);
    CHECK_THROWS_AS(purcell(1.0, -0.1), Error);
}

TEST_CASE("clipping loss") {
    const double w = 4.0;
    CHECK(clipping_loss_ppm(w, w) == doctest::Approx(std::exp(-2.0) * 1e6).epsilon(1e-9));
    CHECK(clipping_loss_ppm(w, 10.0 * w) == 0.0);
}

TEST_CASE("scattering loss") {
    CHECK(scattering_loss_ppm(0.0, 1276.0) == 0.0);
    const double l1 = scattering_loss_ppm(0.1, 1276.0);
    CHECK(l1 == doctest::Approx(0.97).epsilon(0.01));
    CHECK(scattering_loss_ppm(0.2, 1276.0) == doctest::Approx(4.0 * l1).epsilon(1e-12));
}

TEST_CASE("loss budget validation") {
    LossBudget budget;
    budget.transmission_a_ppm = 5.0;
    budget.transmission_b_ppm = 5.0;
    budget.shape_excess_ppm = 2.0;
    CHECK(budget.total_ppm() == doctest::Approx(12.0));
    budget.clipping_ppm = -1.0;
    CHECK_THROWS_AS(budget.validate(), Error);
}

TEST_CASE("length loss model anchors") {
    LengthLossModel model;
    auto at_design = loss_at_length(Topology::planoConcave, 105.6, 1280.0, 18.9, model);
    CHECK(finesse_from_loss(at_design).exact == doctest::Approx(4.9e5).epsilon(0.1));
    auto at_39 = loss_at_length(Topology::planoConcave, 105.6, 1280.0, 39.0, model);
    CHECK(at_39.total_ppm() == doctest::Approx(50.0).epsilon(0.1));
    // clipping alone is negligible at 39 um: the drop is shape excess
    CHECK(at_39.clipping_ppm < 1.0);
    CHECK(at_39.shape_excess_ppm > 30.0);
}

TEST_CASE("shape excess disabled leaves curve nearly flat over 15-35 um") {
    LengthLossModel model;
    model.shape_excess_enabled = false;
    auto sweep = finesse_vs_length(Topology::planoConcave, 105.6, 1280.0, model, 15.0, 35.0, 50);
    REQUIRE(sweep.points.size() == 50);
    double fmin = sweep.points.front().finesse, fmax = fmin;
    for (const auto& p : sweep.points) {
        fmin = std::min(fmin, p.finesse);
        fmax = std::max(fmax, p.finesse);
    }
    CHECK((fmax - fmin) / fmax < 1e-3);
}

TEST_CASE("sweep is non-increasing and truncates at the stability edge") {
    LengthLossModel model;
    auto sweep = finesse_vs_length(Topology::planoConcave, 105.6, 1280.0, model, 5.0, 45.0, 120);
    REQUIRE(!sweep.points.empty());
    for (size_t i = 1; i < sweep.points.size(); ++i)
        CHECK(sweep.points[i].finesse <= sweep.points[i - 1].finesse * (1.0 + 1e-12));
    CHECK_FALSE(sweep.truncated);

    auto past = finesse_vs_length(Topology::planoConcave, 105.6, 1280.0, model, 5.0, 120.0, 120);
    CHECK(past.truncated);
    CHECK(!past.warning.empty());
    CHECK(past.points.back().length_um < 105.6);
}
