#include "tnmf/tikhonov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tnmf {

namespace {

// Solves G x = rhs for symmetric positive definite G (row-major, n-by-n) by
// an in-place Cholesky factorization.  Pivots at or below a tiny multiple of
// the largest diagonal entry are treated as loss of positive definiteness.
std::vector<double> cholesky_solve(std::vector<double> g, std::vector<double> rhs,
                                   std::size_t n, double lambda) {
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, g[i * n + i]);
    const double pivot_floor = max_diag * 1e-14;

    for (std::size_t j = 0; j < n; ++j) {
        double d = g[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= g[j * n + k] * g[j * n + k];
        if (!(d > pivot_floor) || !std::isfinite(d)) {
            if (lambda == 0.0) {
                throw std::runtime_error(
                    "solve_regularized: normal equations are singular at lambda = 0 "
                    "(design matrix columns are linearly dependent)");
            }
            throw std::runtime_error(
                "solve_regularized: normal equations lost positive definiteness at lambda = " +
                std::to_string(lambda));
        }
        const double ljj = std::sqrt(d);
        g[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = g[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= g[i * n + k] * g[j * n + k];
            g[i * n + j] = s / ljj;
        }
    }
    // Forward substitution L z = rhs, then back substitution L^T x = z.
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[i];
        for (std::size_t k = 0; k < i; ++k) s -= g[i * n + k] * rhs[k];
        rhs[i] = s / g[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = rhs[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= g[k * n + ii] * rhs[k];
        rhs[ii] = s / g[ii * n + ii];
    }
    return rhs;
}

double residual_norm_sq_at(const LinearInverseProblem& p, const std::vector<double>& x) {
    const DenseMatrix& a = p.design;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) fit += a(i, j) * x[j];
        const double r = p.observation[i] - fit;
        acc += r * r;
    }
    return acc;
}

double norm_sq(const std::vector<double>& v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return acc;
}

} // namespace

void validate_problem(const LinearInverseProblem& problem) {
    if (problem.observation.size() != problem.design.rows()) {
        throw std::invalid_argument(
            "LinearInverseProblem: observation length " +
            std::to_string(problem.observation.size()) +
            " does not match design row count " +
            std::to_string(problem.design.rows()));
    }
    if (!all_finite(problem.design))
        throw std::invalid_argument("LinearInverseProblem: design matrix has non-finite entries");
    for (double v : problem.observation)
        if (!std::isfinite(v))
            throw std::invalid_argument("LinearInverseProblem: observation has non-finite entries");
}

std::vector<double> solve_regularized(const LinearInverseProblem& problem,
                                      double lambda) {
    validate_problem(problem);
    if (!(lambda >= 0.0)) {
        throw std::invalid_argument("solve_regularized: lambda must be nonnegative, got " +
                                    std::to_string(lambda));
    }
    const DenseMatrix& a = problem.design;
    const std::size_t n = a.rows(), m = a.cols();

    std::vector<double> g(m * m, 0.0), rhs(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += a(k, i) * a(k, j);
            g[i * m + j] = s;
            g[j * m + i] = s;
        }
        g[i * m + i] += lambda;
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += a(k, i) * problem.observation[k];
        rhs[i] = s;
    }
    return cholesky_solve(std::move(g), std::move(rhs), m, lambda);
}

double lambda_update(double residual_norm_sq, double solution_norm_sq,
                     double gamma, double guard) {
    if (!(guard >= 0.0)) {
        throw std::invalid_argument("lambda_update: guard must be nonnegative, got " +
                                    std::to_string(guard));
    }
    const double denom = solution_norm_sq + guard;
    if (denom == 0.0) {
        throw std::invalid_argument(
            "lambda_update: zero solution norm with zero guard divides by zero");
    }
    return std::abs(gamma) * residual_norm_sq / denom;
}

LambdaSelectionResult solve_with_lambda_selection(
    const LinearInverseProblem& problem, const LambdaSelectionOptions& options) {
    validate_problem(problem);
    if (!(options.lambda0 >= 0.0))
        throw std::invalid_argument("solve_with_lambda_selection: lambda0 must be nonnegative");
    if (!(options.eps > 0.0))
        throw std::invalid_argument("solve_with_lambda_selection: eps must be positive");
    if (options.max_iter == 0)
        throw std::invalid_argument("solve_with_lambda_selection: max_iter must be positive");

    LambdaSelectionResult result;
    result.lambda = options.lambda0;
    result.lambda_history.push_back(options.lambda0);
    std::vector<double> prev_x(problem.design.cols(), 0.0);

    for (std::size_t k = 1; k <= options.max_iter; ++k) {
        std::vector<double> x = solve_regularized(problem, result.lambda);
        const double rho_sq = residual_norm_sq_at(problem, x);
        const double eta_sq = norm_sq(x);
        result.lambda = lambda_update(rho_sq, eta_sq, options.gamma, 0.0);
        result.lambda_history.push_back(result.lambda);
        result.iterations = k;

        double change = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - prev_x[i];
            change += d * d;
        }
        change = std::sqrt(change);
        const double prev_norm = std::sqrt(norm_sq(prev_x));
        const double rel_change = prev_norm > 0.0 ? change / prev_norm : change;

        result.x = std::move(x);
        if (rel_change <= options.eps) {
            result.converged = true;
            return result;
        }
        if (result.lambda > kLambdaRunawayLimit) {
            result.diverged = true;
            return result;
        }
        prev_x = result.x;
    }
    return result;
}

std::vector<LCurvePoint> lcurve_sweep(const LinearInverseProblem& problem,
                                      const std::vector<double>& lambdas) {
    validate_problem(problem);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] >= 0.0) || !std::isfinite(lambdas[i]))
            throw std::invalid_argument("lcurve_sweep: lambdas must be finite and nonnegative");
        if (i > 0 && lambdas[i] < lambdas[i - 1])
            throw std::invalid_argument("lcurve_sweep: lambdas must be nondecreasing");
    }
    std::vector<LCurvePoint> points;
    points.reserve(lambdas.size());
    for (double lambda : lambdas) {
        const std::vector<double> x = solve_regularized(problem, lambda);
        points.push_back({lambda, residual_norm_sq_at(problem, x), norm_sq(x)});
    }
    return points;
}

} // namespace tnmf
