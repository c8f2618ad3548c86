#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fpcav {

// Residual callback: fill r (length m) for the given parameters.
using ResidualFn = std::function<void(std::span<const double>, std::vector<double>&)>;
// Jacobian callback: fill J (m x n, row-major) for the given parameters.
using JacobianFn = std::function<void(std::span<const double>, std::vector<double>&)>;

struct LevMarOptions {
    int max_iterations = 200;
    double step_tolerance = 1e-9; // relative step size
    double sse_tolerance = 1e-12; // relative SSE improvement
    double initial_damping = 1e-3;
};

struct LevMarResult {
    std::vector<double> params;
    double sse = 0.0;
    int iterations = 0;
    bool converged = false;
    // Parameter covariance, n x n row-major, scaled by sse/(m - n).
    std::vector<double> covariance;
};

// Dense Levenberg-Marquardt for small parameter counts. If `jacobian` is
// empty, forward differences are used.
LevMarResult levmar(const ResidualFn& residual, const JacobianFn& jacobian,
                    std::vector<double> initial, const LevMarOptions& options = {});

// Solves A*x = b for a symmetric positive-definite n x n system in place.
// Returns false when the factorization breaks down (rank deficiency).
bool solve_spd(std::vector<double> a, std::vector<double> b, int n, std::vector<double>& x);

} // namespace fpcav
