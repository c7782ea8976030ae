#ifndef TNMF_TIKHONOV_HPP
#define TNMF_TIKHONOV_HPP

#include <cstddef>
#include <vector>

#include "tnmf/dense_matrix.hpp"

// Ridge-penalized linear least squares
//
//   min_x  |y - A x|^2 + lambda |x|^2,    lambda >= 0,
//
// together with a fixed-point iteration that picks lambda automatically:
// each pass solves the problem at the current lambda, then maps
//
//   lambda  <-  |gamma| * |y - A x|^2 / |x|^2,
//
// which balances the two arms of the residual/solution-norm trade-off curve.
// Swept (lambda, residual, solution-norm) triples describe that curve
// explicitly for diagnostics and for locating fixed points by grid search.

namespace tnmf {

struct LinearInverseProblem {
    DenseMatrix design;               // n-by-m, rows are observations
    std::vector<double> observation;  // length n
};

/// Throws std::invalid_argument unless observation length matches the design
/// row count and all entries are finite.
void validate_problem(const LinearInverseProblem& problem);

/// Minimizer of |y - A x|^2 + lambda |x|^2 via the normal equations
/// (A^T A + lambda I) x = A^T y, solved by a dense Cholesky factorization.
/// lambda must be nonnegative.  With lambda = 0 the normal matrix must be
/// positive definite; a rank-deficient design raises std::runtime_error.
std::vector<double> solve_regularized(const LinearInverseProblem& problem,
                                      double lambda);

/// One step of the penalty-weight map: |gamma| * residual_norm_sq /
/// (solution_norm_sq + guard).  guard must be nonnegative; a zero denominator
/// (possible only with guard = 0) raises std::invalid_argument.
double lambda_update(double residual_norm_sq, double solution_norm_sq,
                     double gamma, double guard);

struct LambdaSelectionOptions {
    double gamma = 1.0;
    double lambda0 = 0.0;
    double eps = 1e-3;          // relative solution-change stopping threshold
    std::size_t max_iter = 1000;
};

struct LambdaSelectionResult {
    std::vector<double> x;                  // final solution
    double lambda = 0.0;                    // final penalty weight
    std::size_t iterations = 0;             // completed solve passes
    bool converged = false;                 // stopping test fired
    bool diverged = false;                  // lambda exceeded the runaway limit
    std::vector<double> lambda_history;     // lambda_history[k] is the weight
                                            // after k updates; [0] is lambda0
};

/// Penalty weights beyond this are treated as runaway growth and reported via
/// LambdaSelectionResult::diverged instead of iterating further.
inline constexpr double kLambdaRunawayLimit = 1e12;

/// Alternates exact solves with lambda_update until the relative change of
/// the solution drops to eps (relative to the previous solution norm, or the
/// absolute change when that norm is zero), max_iter passes elapse, or lambda
/// runs away past kLambdaRunawayLimit.
LambdaSelectionResult solve_with_lambda_selection(
    const LinearInverseProblem& problem,
    const LambdaSelectionOptions& options = {});

struct LCurvePoint {
    double lambda;
    double residual_norm_sq;   // |y - A x(lambda)|^2
    double solution_norm_sq;   // |x(lambda)|^2
};

/// Solves the problem at every weight in lambdas (which must be nonnegative
/// and nondecreasing) and returns the trade-off points in input order.
std::vector<LCurvePoint> lcurve_sweep(const LinearInverseProblem& problem,
                                      const std::vector<double>& lambdas);

} // namespace tnmf

#endif
