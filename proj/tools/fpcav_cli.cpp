// fpcav command-line front end: design reports, reference-table reproduction,
// spectrum analysis, mirror-profile fitting, and finesse-versus-length sweeps.
// Links only the C API in fpcav.h.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpcav.h"
#include "reference_cavities.hpp"
#include "svg.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kSpeedOfLight_um_THz = 299.792458;

[[noreturn]] void fail(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(1);
}

void check(fpcav_status status, const std::string& context) {
    if (status != FPCAV_OK)
        fail(context + ": " + fpcav_last_error());
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct CommonOptions {
    std::string out_dir = ".";
    std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--out-dir", opts.out_dir, "Directory for generated files");
    cmd->add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
}

fs::path out_path(const CommonOptions& opts, const std::string& name) {
    fs::create_directories(opts.out_dir);
    return fs::path(opts.out_dir) / name;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail("cannot write " + path.string());
    out << content;
}

/* ---------------------------------------------------------------- design */

struct DesignOptions {
    CommonOptions common;
    std::string topology = "pc";
    double roc_um = 0.0;
    double length_um = 0.0;  // effective length
    double spacing_um = 0.0; // alternative: geometric spacing
    double penetration_lambda = 0.8;
    double lambda_nm = 0.0;
    double medium_index = 1.0;
    double transmission_a_ppm = 5.0;
    double transmission_b_ppm = 5.0;
    double excess_ppm = 1.0;
    double absorption_ppm = 0.0;
    double roughness_nm = 0.072;
    double depth_um = 0.0;
    double aperture_um = 0.0;
    double eta = 1.0;
    bool svg = false;
};

void run_design(const DesignOptions& o) {
    if (o.length_um <= 0.0 && o.spacing_um <= 0.0)
        fail("design: provide --length-um (effective) or --spacing-um (geometric)");
    const fpcav_topology topo = o.topology == "cc" ? FPCAV_TOPOLOGY_CC : FPCAV_TOPOLOGY_PC;

    double effective_length = o.length_um;
    if (effective_length <= 0.0)
        check(fpcav_effective_length(o.spacing_um, o.lambda_nm,
                                     o.penetration_lambda * o.lambda_nm * 1e-3,
                                     &effective_length),
              "effective length");

    fpcav_cavity* cavity = nullptr;
    check(fpcav_cavity_create_effective(topo, o.roc_um, effective_length, o.lambda_nm, &cavity),
          "cavity");
    double g_product = 0.0;
    int stable = 0;
    check(fpcav_cavity_stability(cavity, &g_product, &stable), "stability");
    if (!stable)
        fail("unstable geometry: g1*g2 = " + num(g_product) + " lies outside [0, 1]");

    fpcav_mode_report mode{};
    check(fpcav_cavity_mode(cavity, &mode), "mode geometry");

    // Round-trip loss budget.
    double scattering = 0.0;
    check(fpcav_scattering_loss_ppm(o.roughness_nm, o.lambda_nm, &scattering), "scattering");
    scattering *= 2.0; // two mirror reflections per round trip
    double aperture = o.aperture_um;
    if (aperture <= 0.0 && o.depth_um > 0.0)
        check(fpcav_aperture_from_cap(o.roc_um, o.depth_um, &aperture), "aperture");
    double clipping = 0.0;
    if (aperture > 0.0) {
        const double z = topo == FPCAV_TOPOLOGY_PC ? effective_length : effective_length / 2.0;
        double w = 0.0, roc_wf = 0.0;
        check(fpcav_cavity_spot(cavity, z, &w, &roc_wf), "spot size");
        double per_reflection = 0.0;
        check(fpcav_clipping_loss_ppm(w, aperture, &per_reflection), "clipping");
        clipping = (topo == FPCAV_TOPOLOGY_PC ? 1.0 : 2.0) * per_reflection;
    }
    const double total_ppm = o.transmission_a_ppm + o.transmission_b_ppm + o.excess_ppm +
                             o.absorption_ppm + scattering + clipping;

    double finesse = 0.0, finesse_approx = 0.0;
    check(fpcav_finesse_from_loss(total_ppm, &finesse, &finesse_approx), "finesse");
    double quality = 0.0;
    check(fpcav_q_from_finesse(finesse, effective_length, o.lambda_nm, &quality), "Q");
    double upsilon = 0.0;
    check(fpcav_enhancement(quality, mode.mode_volume_lambda3, o.medium_index, &upsilon),
          "enhancement");
    double purcell = 0.0;
    check(fpcav_purcell(upsilon, o.eta, &purcell), "Purcell factor");

    std::printf("cavity design (%s, R = %s um, L = %s um, lambda = %s nm)\n",
                o.topology.c_str(), num(o.roc_um).c_str(), num(effective_length).c_str(),
                num(o.lambda_nm).c_str());
    std::printf("  %-28s %s\n", "g1*g2", num(g_product).c_str());
    std::printf("  %-28s %s\n", "waist w0 [um]", num(mode.waist_um).c_str());
    std::printf("  %-28s %s\n", "Rayleigh range [um]", num(mode.rayleigh_um).c_str());
    std::printf("  %-28s %s\n", "mode volume [um^3]", num(mode.mode_volume_um3).c_str());
    std::printf("  %-28s %s\n", "mode volume [lambda^3]", num(mode.mode_volume_lambda3).c_str());
    std::printf("  %-28s %s\n", "FSR [THz]", num(mode.fsr_thz).c_str());
    std::printf("  %-28s %s\n", "transverse spacing [THz]",
                num(mode.transverse_spacing_thz).c_str());
    std::printf("  %-28s %s\n", "round-trip loss [ppm]", num(total_ppm).c_str());
    std::printf("  %-28s %s\n", "finesse", num(finesse).c_str());
    std::printf("  %-28s %s\n", "quality factor Q", num(quality).c_str());
    std::printf("  %-28s %s\n", "enhancement", num(upsilon).c_str());
    std::printf("  %-28s %s (eta = %s)\n", "Purcell factor", num(purcell).c_str(),
                num(o.eta).c_str());

    if (o.common.format == "csv") {
        std::string csv =
            "topology,roc_um,length_um,lambda_nm,waist_um,volume_lambda3,fsr_thz,"
            "transverse_spacing_thz,loss_ppm,finesse,quality,enhancement,purcell\n";
        csv += o.topology + "," + num(o.roc_um) + "," + num(effective_length) + "," +
               num(o.lambda_nm) + "," + num(mode.waist_um) + "," +
               num(mode.mode_volume_lambda3) + "," + num(mode.fsr_thz) + "," +
               num(mode.transverse_spacing_thz) + "," + num(total_ppm) + "," + num(finesse) +
               "," + num(quality) + "," + num(upsilon) + "," + num(purcell) + "\n";
        write_text_file(out_path(o.common, "design.csv"), csv);
    } else if (o.common.format == "json") {
        json j{{"topology", o.topology},
               {"roc_um", o.roc_um},
               {"length_um", effective_length},
               {"lambda_nm", o.lambda_nm},
               {"g_product", g_product},
               {"waist_um", mode.waist_um},
               {"rayleigh_um", mode.rayleigh_um},
               {"mode_volume_um3", mode.mode_volume_um3},
               {"mode_volume_lambda3", mode.mode_volume_lambda3},
               {"fsr_thz", mode.fsr_thz},
               {"transverse_spacing_thz", mode.transverse_spacing_thz},
               {"loss_ppm", total_ppm},
               {"finesse", finesse},
               {"quality", quality},
               {"enhancement", upsilon},
               {"purcell", purcell}};
        write_text_file(out_path(o.common, "design.json"), j.dump(2) + "\n");
    }

    if (o.svg) {
        // Beam envelope +-w(z) along the cavity axis.
        svgplot::Series upper, lower;
        upper.color = "#2980b9";
        lower.color = "#2980b9";
        const double z0 = topo == FPCAV_TOPOLOGY_PC ? 0.0 : -effective_length / 2.0;
        const double z1 = topo == FPCAV_TOPOLOGY_PC ? effective_length : effective_length / 2.0;
        for (int i = 0; i <= 200; ++i) {
            const double z = z0 + (z1 - z0) * i / 200.0;
            double w = 0.0, roc_wf = 0.0;
            check(fpcav_cavity_spot(cavity, z, &w, &roc_wf), "spot size");
            upper.x.push_back(z);
            upper.y.push_back(w);
            lower.x.push_back(z);
            lower.y.push_back(-w);
        }
        svgplot::write_line_plot(out_path(o.common, "design.svg").string(), {upper, lower},
                                 "Fundamental mode envelope", "z [um]", "w [um]");
    }
    fpcav_cavity_destroy(cavity);
}

/* ---------------------------------------------------------------- table1 */

void run_table1(const CommonOptions& common) {
    using fpcav_cli::kReferenceCavities;
    std::string csv =
        "name,lambda_nm,roc_um,length_um,waist_um,waist_ref_um,waist_ok,volume_lambda3,"
        "volume_ref_lambda3,volume_ok,quality_from_finesse,upsilon_q_over_v\n";
    json rows = json::array();
    bool all_ok = true;

    std::printf("%-6s %-8s %-8s %-8s %-18s %-20s %-12s %-10s\n", "name", "lam[nm]", "R[um]",
                "L[um]", "w0[um] (ref)", "V[lam^3] (ref)", "Q(F,L,lam)", "Ups=Q/V");
    for (const auto& row : kReferenceCavities) {
        fpcav_cavity* cavity = nullptr;
        check(fpcav_cavity_create_effective(row.topology == 0 ? FPCAV_TOPOLOGY_PC
                                                              : FPCAV_TOPOLOGY_CC,
                                            row.roc_um, row.length_um, row.lambda_nm, &cavity),
              row.name);
        fpcav_mode_report mode{};
        check(fpcav_cavity_mode(cavity, &mode), row.name);
        double quality = 0.0;
        check(fpcav_q_from_finesse(row.finesse_k * 1e3, row.length_um, row.lambda_nm, &quality),
              row.name);
        double upsilon = 0.0;
        check(fpcav_enhancement(row.quality_m * 1e6, mode.mode_volume_lambda3, 1.0, &upsilon),
              row.name);
        fpcav_cavity_destroy(cavity);

        const bool waist_ok = std::abs(mode.waist_um - row.waist_um) <= row.waist_unc_um;
        const bool volume_ok =
            std::abs(mode.mode_volume_lambda3 - row.volume_lambda3) <= row.volume_unc_lambda3;
        all_ok = all_ok && waist_ok && volume_ok;

        std::printf("%-6s %-8s %-8s %-8s %-8s (%.2f) %s  %-8s (%.1f) %s  %-12s %-10s\n",
                    row.name, num(row.lambda_nm).c_str(), num(row.roc_um).c_str(),
                    num(row.length_um).c_str(), num(mode.waist_um).c_str(), row.waist_um,
                    waist_ok ? "ok " : "OFF", num(mode.mode_volume_lambda3).c_str(),
                    row.volume_lambda3, volume_ok ? "ok " : "OFF", num(quality).c_str(),
                    num(upsilon).c_str());

        csv += std::string(row.name) + "," + num(row.lambda_nm) + "," + num(row.roc_um) + "," +
               num(row.length_um) + "," + num(mode.waist_um) + "," + num(row.waist_um) + "," +
               (waist_ok ? "1" : "0") + "," + num(mode.mode_volume_lambda3) + "," +
               num(row.volume_lambda3) + "," + (volume_ok ? "1" : "0") + "," + num(quality) +
               "," + num(upsilon) + "\n";
        rows.push_back({{"name", row.name},
                        {"waist_um", mode.waist_um},
                        {"waist_ref_um", row.waist_um},
                        {"waist_ok", waist_ok},
                        {"volume_lambda3", mode.mode_volume_lambda3},
                        {"volume_ref_lambda3", row.volume_lambda3},
                        {"volume_ok", volume_ok},
                        {"quality_from_finesse", quality},
                        {"upsilon_q_over_v", upsilon},
                        {"upsilon_printed_1e5", row.upsilon_printed}});
    }
    std::printf("note: the enhancement column here is strictly Q/(V/lambda^3); the originally\n"
                "tabulated values for the PC rows are not consistent with their own Q and V\n"
                "columns (e.g. 4.1e6/30.8 = 1.33e5, tabulated as ~1.8e5).\n");
    if (common.format == "csv")
        write_text_file(out_path(common, "table1.csv"), csv);
    else if (common.format == "json")
        write_text_file(out_path(common, "table1.json"), rows.dump(2) + "\n");
    if (!all_ok)
        fail("table1: computed values fall outside the reference uncertainties");
}

/* -------------------------------------------------------------- spectrum */

struct SpectrumOptions {
    CommonOptions common;
    std::string input;
    std::string x_unit = "index";
    double sideband_mhz = 0.0;
    double roc_um = 0.0;
    double min_contrast = 0.1;
};

void run_spectrum(const SpectrumOptions& o) {
    const fpcav_axis_kind axis = o.x_unit == "nm"    ? FPCAV_AXIS_WAVELENGTH_NM
                                 : o.x_unit == "ghz" ? FPCAV_AXIS_FREQUENCY_GHZ
                                                     : FPCAV_AXIS_SAMPLE_INDEX;
    fpcav_spectrum* spec = nullptr;
    check(fpcav_spectrum_read_csv(o.input.c_str(), axis, &spec), o.input);

    std::vector<fpcav_peak> peaks(256);
    size_t n_peaks = 0;
    check(fpcav_detect_peaks(spec, o.min_contrast, peaks.data(), peaks.size(), &n_peaks),
          "peak detection");
    peaks.resize(n_peaks);
    if (n_peaks == 0)
        fail("no resonance dips above contrast " + num(o.min_contrast));

    size_t carrier = 0;
    for (size_t i = 1; i < n_peaks; ++i)
        if (peaks[i].contrast > peaks[carrier].contrast)
            carrier = i;

    json report;
    std::vector<std::string> warnings;

    // Axis scale in MHz per axis unit.
    double scale = 0.0;
    if (o.sideband_mhz > 0.0) {
        fpcav_calibration cal{};
        check(fpcav_calibrate_with_sidebands(spec, o.sideband_mhz, &cal), "calibration");
        scale = cal.scale_mhz_per_unit;
        report["calibration"] = {{"scale_mhz_per_unit", cal.scale_mhz_per_unit},
                                 {"sideband_spacing_units", cal.sideband_spacing_units},
                                 {"residual", cal.residual}};
    } else if (axis == FPCAV_AXIS_FREQUENCY_GHZ) {
        scale = 1000.0;
    } else if (axis == FPCAV_AXIS_WAVELENGTH_NM) {
        // Local wavelength-to-frequency conversion at the carrier, MHz per nm.
        const double lambda_um = peaks[carrier].center * 1e-3;
        scale = kSpeedOfLight_um_THz / (lambda_um * lambda_um) * 1e3;
    } else {
        warnings.push_back("raw axis without --sideband-mhz: linewidth reported in raw units");
    }

    fpcav_lorentz_fit fit{};
    check(fpcav_fit_lorentzian(spec, &peaks[carrier], 0.0, &fit), "Lorentzian fit");

    report["center"] = fit.center;
    report["contrast"] = fit.contrast;
    report["residual"] = fit.residual_rms;
    if (scale > 0.0) {
        report["fwhm_mhz"] = fit.fwhm * scale;
        report["fwhm_sigma_mhz"] = fit.fwhm_sigma * scale;
    } else {
        report["fwhm_raw"] = fit.fwhm;
        report["fwhm_sigma_raw"] = fit.fwhm_sigma;
    }

    if (n_peaks >= 2 && o.roc_um > 0.0) {
        fpcav_ladder_result ladder{};
        std::vector<fpcav_peak> assigned(256);
        size_t n_assigned = 0;
        check(fpcav_identify_mode_ladder(spec, o.roc_um, o.min_contrast, &ladder,
                                         assigned.data(), assigned.size(), &n_assigned),
              "mode ladder");
        double fsr = 0.0;
        check(fpcav_fsr_thz(ladder.length_um, &fsr), "FSR");
        report["length_um"] = ladder.length_um;
        report["length_root_count"] = ladder.root_count;
        report["fsr_thz"] = fsr;
        if (ladder.fsr_cross_length_um > 0.0)
            report["fsr_cross_length_um"] = ladder.fsr_cross_length_um;
        if (scale > 0.0 && fit.fwhm > 0.0)
            report["finesse"] = fsr * 1e6 / (fit.fwhm * scale);
    }
    if (!warnings.empty())
        report["warnings"] = warnings;

    const std::string text = report.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (o.common.format == "json")
        write_text_file(out_path(o.common, "spectrum_report.json"), text);
    for (const std::string& w : warnings)
        std::cerr << "warning: " << w << "\n";
    fpcav_spectrum_destroy(spec);
}

/* --------------------------------------------------------------- profile */

struct ProfileOptions {
    CommonOptions common;
    std::string input;
    double fit_radius_um = 0.0; // 0: central 40% of the estimated cap radius
    std::string quartic = "on";
    bool svg = false;
};

void run_profile(const ProfileOptions& o) {
    fpcav_surface* surface = nullptr;
    check(fpcav_surface_read_csv(o.input.c_str(), &surface), o.input);

    const size_t n = fpcav_surface_size(surface);
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0, z_min = 0, z_max = 0;
    for (size_t i = 0; i < n; ++i) {
        double x, y, z;
        check(fpcav_surface_point(surface, i, &x, &y, &z), "surface point");
        if (i == 0) {
            x_lo = x_hi = x;
            y_lo = y_hi = y;
            z_min = z_max = z;
        }
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
        z_min = std::min(z_min, z);
        z_max = std::max(z_max, z);
    }
    const double cap_radius_est = std::min(x_hi - x_lo, y_hi - y_lo) / 2.0;
    const double fit_radius = o.fit_radius_um > 0.0 ? o.fit_radius_um : 0.4 * cap_radius_est;

    fpcav_profile_fit fit{};
    check(fpcav_fit_mirror_profile(surface, fit_radius, o.quartic == "on" ? 1 : 0, &fit),
          "profile fit");

    double aperture = 0.0;
    const double depth = z_max - fit.vertex_height_um;
    if (depth > 0.0 && depth < fit.roc_um)
        check(fpcav_aperture_from_cap(fit.roc_um, depth, &aperture), "aperture");

    json report{{"roc_um", fit.roc_um},
                {"roc_sigma_um", fit.roc_sigma_um},
                {"center_um", {fit.center_x_um, fit.center_y_um}},
                {"quartic", fit.quartic_included ? json(fit.quartic_um3) : json(nullptr)},
                {"rms_residual_nm", fit.rms_residual_nm},
                {"fit_radius_um", fit.fit_radius_um},
                {"depth_um", depth},
                {"aperture_um", aperture}};
    const std::string text = report.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (o.common.format == "json")
        write_text_file(out_path(o.common, "profile_report.json"), text);

    if (o.svg) {
        // Residual map over the fitted region, reconstructed from the model.
        std::vector<double> xs, ys, res;
        for (size_t i = 0; i < n; ++i) {
            double x, y, z;
            check(fpcav_surface_point(surface, i, &x, &y, &z), "surface point");
            const double dx = x - fit.center_x_um;
            const double dy = y - fit.center_y_um;
            const double r2 = dx * dx + dy * dy;
            if (r2 > fit.fit_radius_um * fit.fit_radius_um)
                continue;
            double model = fit.vertex_height_um + fit.tilt_x * dx + fit.tilt_y * dy +
                           r2 / (2.0 * fit.roc_um) + fit.quartic_um3 * r2 * r2;
            xs.push_back(x);
            ys.push_back(y);
            res.push_back((z - model) * 1e3); // nm
        }
        double cell = 1.0;
        if (xs.size() > 1)
            cell = 2.0 * fit.fit_radius_um / std::sqrt(static_cast<double>(xs.size()));
        svgplot::write_heatmap(out_path(o.common, "profile_residuals.svg").string(), xs, ys,
                               res, cell, "Profile fit residuals [nm]");
    }
    fpcav_surface_destroy(surface);
}

/* ----------------------------------------------------------------- sweep */

struct SweepOptions {
    CommonOptions common;
    std::string topology = "pc";
    double roc_um = 105.6;
    double lambda_nm = 1280.0;
    double depth_um = 8.5;
    double length_min_um = 0.0;
    double length_max_um = 0.0;
    int samples = 200;
    std::string calibration = "pc-a";
    bool svg = false;
};

void run_sweep(const SweepOptions& o) {
    fpcav_loss_model model{};
    fpcav_loss_model_defaults(&model);
    check(fpcav_aperture_from_cap(o.roc_um, o.depth_um, &model.aperture_radius_um), "aperture");
    if (o.calibration == "pc-a2") {
        // Mirror family with additional excess losses.
        model.excess_coating_ppm += 5.0;
    } else if (o.calibration != "pc-a") {
        fail("unknown --calibration (expected pc-a or pc-a2)");
    }

    std::vector<fpcav_sweep_point> points(static_cast<size_t>(o.samples));
    size_t count = 0;
    int truncated = 0;
    check(fpcav_finesse_sweep(o.topology == "cc" ? FPCAV_TOPOLOGY_CC : FPCAV_TOPOLOGY_PC,
                              o.roc_um, o.lambda_nm, &model, o.length_min_um, o.length_max_um,
                              o.samples, points.data(), points.size(), &count, &truncated),
          "sweep");
    points.resize(count);
    if (truncated)
        std::cerr << "warning: " << fpcav_last_error() << "\n";

    std::string csv = "length_um,total_loss_ppm,finesse\n";
    for (const auto& p : points)
        csv += num(p.length_um) + "," + num(p.total_ppm) + "," + num(p.finesse) + "\n";
    const fs::path csv_path = out_path(o.common, "sweep.csv");
    write_text_file(csv_path, csv);
    std::printf("wrote %zu sweep points to %s\n", count, csv_path.string().c_str());

    if (o.svg) {
        svgplot::Series finesse;
        finesse.color = o.calibration == "pc-a2" ? "#2980b9" : "#c0392b";
        for (const auto& p : points) {
            finesse.x.push_back(p.length_um);
            finesse.y.push_back(p.finesse);
        }
        svgplot::write_line_plot(out_path(o.common, "sweep.svg").string(), {finesse},
                                 "Finesse vs cavity length (" + o.calibration + ")", "L [um]",
                                 "finesse");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fabry-Perot microcavity design and characterization toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI configuration file with one [section] per subcommand; flags override");

    DesignOptions d;
    CLI::App* design = app.add_subcommand("design", "Single-cavity design report");
    add_common(design, d.common);
    design->add_option("--topology", d.topology)->check(CLI::IsMember({"pc", "cc"}));
    design->add_option("--roc-um", d.roc_um)->required()->check(CLI::PositiveNumber);
    design->add_option("--length-um", d.length_um, "Effective cavity length")
        ->check(CLI::PositiveNumber);
    design->add_option("--spacing-um", d.spacing_um, "Geometric mirror spacing")
        ->check(CLI::PositiveNumber);
    design->add_option("--penetration-lambda", d.penetration_lambda,
                       "Mode penetration per mirror, in units of lambda");
    design->add_option("--lambda-nm", d.lambda_nm)->required()->check(CLI::PositiveNumber);
    design->add_option("--index", d.medium_index);
    design->add_option("--transmission-a-ppm", d.transmission_a_ppm);
    design->add_option("--transmission-b-ppm", d.transmission_b_ppm);
    design->add_option("--excess-ppm", d.excess_ppm);
    design->add_option("--absorption-ppm", d.absorption_ppm);
    design->add_option("--roughness-nm", d.roughness_nm);
    design->add_option("--depth-um", d.depth_um, "Mirror depth, sets the clipping aperture");
    design->add_option("--aperture-um", d.aperture_um, "Explicit clipping aperture radius");
    design->add_option("--eta", d.eta, "Branching ratio for the Purcell factor");
    design->add_flag("--svg", d.svg, "Write a mode-envelope sketch");

    CommonOptions t1;
    CLI::App* table1 = app.add_subcommand("table1", "Reference cavity table reproduction");
    add_common(table1, t1);

    SpectrumOptions sp;
    CLI::App* spectrum = app.add_subcommand("spectrum", "Analyze a laser-scan CSV");
    add_common(spectrum, sp.common);
    spectrum->add_option("--input", sp.input)->required()->check(CLI::ExistingFile);
    spectrum->add_option("--x-unit", sp.x_unit)->check(CLI::IsMember({"nm", "ghz", "index"}));
    spectrum->add_option("--sideband-mhz", sp.sideband_mhz,
                         "Known sideband modulation for axis calibration");
    spectrum->add_option("--roc-um", sp.roc_um, "Mirror ROC for mode-ladder length inference");
    spectrum->add_option("--min-contrast", sp.min_contrast);

    ProfileOptions pr;
    CLI::App* profile = app.add_subcommand("profile", "Fit a mirror surface map CSV");
    add_common(profile, pr.common);
    profile->add_option("--input", pr.input)->required()->check(CLI::ExistingFile);
    profile->add_option("--fit-radius-um", pr.fit_radius_um);
    profile->add_option("--quartic", pr.quartic)->check(CLI::IsMember({"on", "off"}));
    profile->add_flag("--svg", pr.svg, "Write a residual heatmap");

    SweepOptions sw;
    CLI::App* sweep = app.add_subcommand("sweep", "Finesse-versus-length sweep");
    add_common(sweep, sw.common);
    sweep->add_option("--topology", sw.topology)->check(CLI::IsMember({"pc", "cc"}));
    sweep->add_option("--roc-um", sw.roc_um)->check(CLI::PositiveNumber);
    sweep->add_option("--lambda-nm", sw.lambda_nm)->check(CLI::PositiveNumber);
    sweep->add_option("--depth-um", sw.depth_um)->check(CLI::PositiveNumber);
    sweep->add_option("--length-min-um", sw.length_min_um)->required();
    sweep->add_option("--length-max-um", sw.length_max_um)->required();
    sweep->add_option("--samples", sw.samples);
    sweep->add_option("--calibration", sw.calibration,
                      "Loss-model calibration: pc-a (nominal) or pc-a2 (extra excess loss)");
    sweep->add_flag("--svg", sw.svg, "Write a finesse plot");

    CLI11_PARSE(app, argc, argv);

    if (*design)
        run_design(d);
    else if (*table1)
        run_table1(t1);
    else if (*spectrum)
        run_spectrum(sp);
    else if (*profile)
        run_profile(pr);
    else if (*sweep)
        run_sweep(sw);
    return 0;
}
