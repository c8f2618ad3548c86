#include "core/levmar.hpp"

#include <cmath>

namespace fpcav {

bool solve_spd(std::vector<double> a, std::vector<double> b, int n, std::vector<double>& x) {
    // Cholesky factorization A = L*L^T, in place on the lower triangle.
    for (int j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (int k = 0; k < j; ++k)
            d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0) || !std::isfinite(d))
            return false;
        const double lj = std::sqrt(d);
        a[j * n + j] = lj;
        for (int i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (int k = 0; k < j; ++k)
                s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / lj;
        }
    }
    // Forward then back substitution.
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k)
            s -= a[i * n + k] * b[k];
        b[i] = s / a[i * n + i];
    }
    x.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k)
            s -= a[k * n + i] * x[k];
        x[i] = s / a[i * n + i];
    }
    return true;
}

namespace {

double sum_sq(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r)
        s += v * v;
    return s;
}

void numeric_jacobian(const ResidualFn& residual, std::span<const double> p,
                      const std::vector<double>& r0, std::vector<double>& jac) {
    const int n = static_cast<int>(p.size());
    const int m = static_cast<int>(r0.size());
    std::vector<double> pp(p.begin(), p.end());
    std::vector<double> r1;
    jac.assign(static_cast<size_t>(m) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        const double h = 1e-7 * std::max(1.0, std::abs(pp[j]));
        const double saved = pp[j];
        pp[j] = saved + h;
        residual(pp, r1);
        pp[j] = saved;
        for (int i = 0; i < m; ++i)
            jac[static_cast<size_t>(i) * n + j] = (r1[i] - r0[i]) / h;
    }
}

// Inverse of an SPD matrix by column-wise solves.
bool invert_spd(const std::vector<double>& a, int n, std::vector<double>& inv) {
    inv.assign(static_cast<size_t>(n) * n, 0.0);
    std::vector<double> e(n, 0.0), col;
    for (int j = 0; j < n; ++j) {
        e.assign(n, 0.0);
        e[j] = 1.0;
        if (!solve_spd(a, e, n, col))
            return false;
        for (int i = 0; i < n; ++i)
            inv[static_cast<size_t>(i) * n + j] = col[i];
    }
    return true;
}

} // namespace

LevMarResult levmar(const ResidualFn& residual, const JacobianFn& jacobian,
                    std::vector<double> initial, const LevMarOptions& options) {
    const int n = static_cast<int>(initial.size());
    LevMarResult result;
    result.params = std::move(initial);

    std::vector<double> r, jac, g(n), h(static_cast<size_t>(n) * n), step, trial, rt;
    residual(result.params, r);
    const int m = static_cast<int>(r.size());
    result.sse = sum_sq(r);
    double damping = options.initial_damping;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        result.iterations = iter + 1;
        if (jacobian)
            jacobian(result.params, jac);
        else
            numeric_jacobian(residual, result.params, r, jac);

        // g = J^T r, H = J^T J
        std::fill(g.begin(), g.end(), 0.0);
        std::fill(h.begin(), h.end(), 0.0);
        for (int i = 0; i < m; ++i) {
            const double* row = &jac[static_cast<size_t>(i) * n];
            for (int a = 0; a < n; ++a) {
                g[a] += row[a] * r[i];
                for (int b = a; b < n; ++b)
                    h[static_cast<size_t>(a) * n + b] += row[a] * row[b];
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < a; ++b)
                h[static_cast<size_t>(a) * n + b] = h[static_cast<size_t>(b) * n + a];

        const double sse_before = result.sse;
        bool accepted = false;
        for (int attempt = 0; attempt < 30 && !accepted; ++attempt) {
            std::vector<double> hd = h;
            for (int a = 0; a < n; ++a)
                hd[static_cast<size_t>(a) * n + a] *= 1.0 + damping;
            std::vector<double> neg_g(n);
            for (int a = 0; a < n; ++a)
                neg_g[a] = -g[a];
            if (!solve_spd(hd, neg_g, n, step)) {
                damping *= 10.0;
                continue;
            }
            trial = result.params;
            for (int a = 0; a < n; ++a)
                trial[a] += step[a];
            residual(trial, rt);
            const double sse_t = sum_sq(rt);
            if (sse_t < result.sse || !(result.sse > 0.0)) {
                accepted = true;
                result.params = trial;
                r = rt;
                result.sse = sse_t;
                damping = std::max(damping / 3.0, 1e-14);
            } else {
                damping *= 5.0;
            }
        }
        if (!accepted) {
            // No damped step lowers the SSE: the iterate is a local minimum
            // to working precision.
            result.converged = true;
            break;
        }

        double rel_step = 0.0;
        for (int a = 0; a < n; ++a)
            rel_step = std::max(rel_step,
                                std::abs(step[a]) / std::max(1e-30, std::abs(result.params[a]) + 1e-12));
        if (rel_step < options.step_tolerance) {
            result.converged = true;
            break;
        }
        // Near a noise-floor minimum the accepted steps can stay above the
        // step tolerance while the objective no longer improves.
        if (sse_before - result.sse <= options.sse_tolerance * std::max(result.sse, 1e-300)) {
            result.converged = true;
            break;
        }
    }
    if (!result.converged && result.sse < 1e-24)
        result.converged = true;

    // Covariance from the final Jacobian.
    if (m > n) {
        if (jacobian)
            jacobian(result.params, jac);
        else
            numeric_jacobian(residual, result.params, r, jac);
        std::fill(h.begin(), h.end(), 0.0);
        for (int i = 0; i < m; ++i) {
            const double* row = &jac[static_cast<size_t>(i) * n];
            for (int a = 0; a < n; ++a)
                for (int b = a; b < n; ++b)
                    h[static_cast<size_t>(a) * n + b] += row[a] * row[b];
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < a; ++b)
                h[static_cast<size_t>(a) * n + b] = h[static_cast<size_t>(b) * n + a];
        std::vector<double> inv;
        if (invert_spd(h, n, inv)) {
            const double scale = result.sse / (m - n);
            for (double& v : inv)
                v *= scale;
            result.covariance = std::move(inv);
        }
    }
    return result;
}

} // namespace fpcav
