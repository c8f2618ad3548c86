#include "core/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <string>

#include "core/geometry.hpp"
#include "core/levmar.hpp"

namespace fpcav {

void SurfaceMap::validate() const {
    if (x_um.size() != y_um.size() || x_um.size() != z_um.size())
        throw Error(ErrorCode::invalid_argument, "surface map coordinate lengths differ");
    if (size() < 25)
        throw Error(ErrorCode::invalid_argument, "surface map needs at least 25 points");
    for (double z : z_um)
        if (!std::isfinite(z))
            throw Error(ErrorCode::invalid_argument, "surface heights must be finite");
    std::vector<size_t> order(size());
    for (size_t i = 0; i < size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return x_um[a] != x_um[b] ? x_um[a] < x_um[b] : y_um[a] < y_um[b];
    });
    for (size_t i = 1; i < order.size(); ++i) {
        if (x_um[order[i]] == x_um[order[i - 1]] && y_um[order[i]] == y_um[order[i - 1]])
            throw Error(ErrorCode::invalid_argument, "duplicate (x, y) sample in surface map");
    }
}

SurfaceMap synthesize_surface(double roc_um, double depth_um, double quartic_um3,
                              double noise_sigma_nm, double pitch_um, uint64_t seed) {
    if (roc_um <= 0.0 || depth_um <= 0.0 || depth_um >= roc_um)
        throw Error(ErrorCode::invalid_argument, "need 0 < depth < ROC");
    if (pitch_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "pitch must be positive");
    const double aperture = aperture_from_cap_um(roc_um, depth_um);
    const int half = static_cast<int>(std::floor(aperture / pitch_um));
    if (2 * half + 1 < 5)
        throw Error(ErrorCode::invalid_argument, "pitch too coarse for the cap extent");

    // A negative quartic eventually turns the profile back down; the physical
    // bowl stays monotone, so the shape is frozen at its turning radius.
    double r2_mono = std::numeric_limits<double>::infinity();
    if (quartic_um3 < 0.0)
        r2_mono = -1.0 / (4.0 * quartic_um3 * roc_um);

    SurfaceMap map;
    map.pitch_um = pitch_um;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int iy = -half; iy <= half; ++iy) {
        for (int ix = -half; ix <= half; ++ix) {
            const double x = ix * pitch_um;
            const double y = iy * pitch_um;
            double r2 = x * x + y * y;
            if (r2 > aperture * aperture)
                continue;
            r2 = std::min(r2, r2_mono);
            double z = r2 / (2.0 * roc_um) + quartic_um3 * r2 * r2;
            z = std::min(z, depth_um); // rim clamp
            if (noise_sigma_nm > 0.0)
                z += noise_sigma_nm * 1e-3 * noise(rng);
            map.x_um.push_back(x);
            map.y_um.push_back(y);
            map.z_um.push_back(z);
        }
    }
    return map;
}

namespace {

struct LinearSolution {
    // columns: 1, (x-x0), (y-y0), r^2, [r^4]
    double coeff[5] = {0, 0, 0, 0, 0};
    double kappa_variance = 0.0; // unscaled (A^T A)^-1 entry for the r^2 column
    double sse = 0.0;
};

LinearSolution solve_linear(std::span<const double> xs, std::span<const double> ys,
                            std::span<const double> zs, double x0, double y0, bool quartic) {
    const int n = quartic ? 5 : 4;
    const size_t m = xs.size();
    std::vector<double> ata(static_cast<size_t>(n) * n, 0.0), atb(n, 0.0);
    double cols[5];
    for (size_t i = 0; i < m; ++i) {
        const double dx = xs[i] - x0;
        const double dy = ys[i] - y0;
        const double r2 = dx * dx + dy * dy;
        cols[0] = 1.0;
        cols[1] = dx;
        cols[2] = dy;
        cols[3] = r2;
        cols[4] = r2 * r2;
        for (int a = 0; a < n; ++a) {
            atb[a] += cols[a] * zs[i];
            for (int b = a; b < n; ++b)
                ata[static_cast<size_t>(a) * n + b] += cols[a] * cols[b];
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b)
            ata[static_cast<size_t>(a) * n + b] = ata[static_cast<size_t>(b) * n + a];

    // Equilibrate: the 1, r^2 and r^4 columns differ by orders of magnitude,
    // and large trial centers during refinement make the raw system nearly
    // singular in double precision.
    std::vector<double> scale(n, 1.0);
    for (int a = 0; a < n; ++a) {
        const double d = ata[static_cast<size_t>(a) * n + a];
        if (!(d > 0.0))
            throw Error(ErrorCode::fit, "rank-deficient surface fit: degenerate point layout");
        scale[a] = 1.0 / std::sqrt(d);
    }
    std::vector<double> ata_s(ata.size()), atb_s(n);
    for (int a = 0; a < n; ++a) {
        atb_s[a] = atb[a] * scale[a];
        for (int b = 0; b < n; ++b)
            ata_s[static_cast<size_t>(a) * n + b] =
                ata[static_cast<size_t>(a) * n + b] * scale[a] * scale[b];
    }

    std::vector<double> sol;
    if (!solve_spd(ata_s, atb_s, n, sol))
        throw Error(ErrorCode::fit, "rank-deficient surface fit: degenerate point layout");

    LinearSolution out;
    for (int a = 0; a < n; ++a)
        out.coeff[a] = sol[a] * scale[a];

    // (A^T A)^-1 column for the curvature coefficient, for its uncertainty.
    std::vector<double> e(n, 0.0), col;
    e[3] = 1.0;
    if (solve_spd(ata_s, e, n, col))
        out.kappa_variance = col[3] * scale[3] * scale[3];

    double sse = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double dx = xs[i] - x0;
        const double dy = ys[i] - y0;
        const double r2 = dx * dx + dy * dy;
        double model = out.coeff[0] + out.coeff[1] * dx + out.coeff[2] * dy + out.coeff[3] * r2;
        if (quartic)
            model += out.coeff[4] * r2 * r2;
        const double r = zs[i] - model;
        sse += r * r;
    }
    out.sse = sse;
    return out;
}

} // namespace

ProfileFit fit_mirror_profile(const SurfaceMap& map, double fit_radius_um, bool include_quartic) {
    map.validate();
    if (fit_radius_um <= 0.0)
        throw Error(ErrorCode::invalid_argument, "fit radius must be positive");

    // Initial center: deepest point of the depression.
    size_t imin = 0;
    for (size_t i = 1; i < map.size(); ++i)
        if (map.z_um[i] < map.z_um[imin])
            imin = i;
    const double cx0 = map.x_um[imin];
    const double cy0 = map.y_um[imin];

    double x_lo = map.x_um[0], x_hi = map.x_um[0], y_lo = map.y_um[0], y_hi = map.y_um[0];
    for (size_t i = 0; i < map.size(); ++i) {
        x_lo = std::min(x_lo, map.x_um[i]);
        x_hi = std::max(x_hi, map.x_um[i]);
        y_lo = std::min(y_lo, map.y_um[i]);
        y_hi = std::max(y_hi, map.y_um[i]);
    }
    const double extent = std::min(std::min(cx0 - x_lo, x_hi - cx0),
                                   std::min(cy0 - y_lo, y_hi - cy0));
    if (fit_radius_um > extent + 1e-12)
        throw Error(ErrorCode::domain,
                    "fit radius " + std::to_string(fit_radius_um) +
                        " um exceeds the map extent around the minimum (" +
                        std::to_string(extent) + " um)");

    std::vector<double> xs, ys, zs;
    for (size_t i = 0; i < map.size(); ++i) {
        const double dx = map.x_um[i] - cx0;
        const double dy = map.y_um[i] - cy0;
        if (dx * dx + dy * dy <= fit_radius_um * fit_radius_um) {
            xs.push_back(map.x_um[i]);
            ys.push_back(map.y_um[i]);
            zs.push_back(map.z_um[i]);
        }
    }
    if (xs.size() < 8)
        throw Error(ErrorCode::fit, "too few points inside the fit radius");

    // Profiled residual: the five linear coefficients are re-solved for every
    // candidate center, leaving a 2-parameter nonlinear problem.
    const size_t m = xs.size();
    auto residual = [&](std::span<const double> p, std::vector<double>& r) {
        LinearSolution lin;
        try {
            lin = solve_linear(xs, ys, zs, p[0], p[1], include_quartic);
        } catch (const Error&) {
            // A trial center far outside the data makes the basis columns
            // collinear; reject the step instead of aborting the fit.
            r.assign(m, 1e6);
            return;
        }
        r.resize(m);
        for (size_t i = 0; i < m; ++i) {
            const double dx = xs[i] - p[0];
            const double dy = ys[i] - p[1];
            const double r2 = dx * dx + dy * dy;
            double model = lin.coeff[0] + lin.coeff[1] * dx + lin.coeff[2] * dy +
                           lin.coeff[3] * r2;
            if (include_quartic)
                model += lin.coeff[4] * r2 * r2;
            r[i] = zs[i] - model;
        }
    };

    LevMarOptions opts;
    opts.step_tolerance = 1e-9;
    LevMarResult res = levmar(residual, nullptr, {cx0, cy0}, opts);
    const double x0 = res.params[0];
    const double y0 = res.params[1];
    const LinearSolution lin = solve_linear(xs, ys, zs, x0, y0, include_quartic);

    const double kappa = lin.coeff[3]; // 1/(2R)
    if (kappa <= 0.0)
        throw Error(ErrorCode::fit, "surface fit produced non-positive curvature");

    ProfileFit fit;
    fit.roc_um = 1.0 / (2.0 * kappa);
    fit.center_x_um = x0;
    fit.center_y_um = y0;
    fit.vertex_height_um = lin.coeff[0];
    fit.tilt_x = lin.coeff[1];
    fit.tilt_y = lin.coeff[2];
    fit.quartic_um3 = include_quartic ? lin.coeff[4] : 0.0;
    fit.rms_residual_nm = std::sqrt(lin.sse / static_cast<double>(m)) * 1e3;
    fit.fit_radius_um = fit_radius_um;
    fit.quartic_included = include_quartic;
    const int dof = static_cast<int>(m) - (include_quartic ? 5 : 4) - 2;
    if (dof > 0 && lin.kappa_variance > 0.0) {
        const double kappa_sigma = std::sqrt(lin.kappa_variance * lin.sse / dof);
        fit.roc_sigma_um = kappa_sigma / (2.0 * kappa * kappa);
    }
    return fit;
}

} // namespace fpcav
