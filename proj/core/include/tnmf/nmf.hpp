#ifndef TNMF_NMF_HPP
#define TNMF_NMF_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "tnmf/dense_matrix.hpp"
#include "tnmf/regularization.hpp"
#include "tnmf/trace.hpp"

// Nonnegative matrix factorization A ~ B*C under the penalized objective
//
//   J(B, C) = 0.5*|A - B*C|_F^2 + 0.5*sum_m beta[m]*|B row m|^2
//                                + 0.5*sum_n alpha[n]*|C col n|^2,
//   B >= 0, C >= 0,
//
// minimized by alternating additive steps
//
//   B <- B - Bs .* grad_B(B, C) ./ (Bs*(C*C^T) + diag(beta)*Bs + delta)
//   C <- C - Cs .* grad_C(B, C) ./ ((B^T*B)*Cs + Cs*diag(alpha) + delta)
//
// where Bs and Cs lift entries that sit at zero with a descending gradient to
// at least sigma, so no entry can lock at the boundary while improvement is
// still possible.  Between factor updates the penalty weights beta and alpha
// are refreshed from the current residual (see regularization.hpp), steering
// each run toward the corner of its own residual/solution-norm trade-off
// curve.  Iteration stops once complementary slackness holds to tolerance:
// max |grad . factor| <= tol for both factors.

namespace tnmf {

enum class Variant { additive, multiplicative };

enum class TerminationReason { kkt_converged, max_iter };

struct FactorPair {
    DenseMatrix b;  // m-by-r
    DenseMatrix c;  // r-by-n
};

struct SolverConfig {
    std::size_t rank = 1;
    Variant variant = Variant::additive;
    double sigma = 1e-9;    // boundary-escape floor, must be positive
    double delta_b = 1e-9;  // denominator guard for the left-factor step
    double delta_c = 1e-9;  // denominator guard for the right-factor step
    double tol = 1e-9;      // complementary-slackness stopping tolerance
    std::size_t max_iter = 1000;
    bool update_regularization = true;
    std::vector<double> gamma_b;  // per-row weight gains, length m
    std::vector<double> gamma_c;  // per-column weight gains, length n
    std::uint64_t seed = 0;
};

/// Config with every knob at its default and the gain vectors filled with
/// 0.1 at the right lengths.
SolverConfig default_config(std::size_t rank, std::size_t m, std::size_t n);

void validate_config(const SolverConfig& config, std::size_t m, std::size_t n);

/// Complementary-slackness measurements at (B, C) for the given weights.
struct KktResidual {
    double max_slack_b;              // max |grad_B . B|
    double max_slack_c;              // max |grad_C . C|
    std::size_t neg_grad_at_zero_b;  // entries with b = 0 and grad_B < 0
    std::size_t neg_grad_at_zero_c;  // entries with c = 0 and grad_C < 0
};

KktResidual kkt_residual(const DenseMatrix& a, const FactorPair& factors,
                         const RegParams& params);

/// Returns x with every entry that sits at zero (or below sigma) under a
/// negative gradient lifted to at least sigma; entries with nonnegative
/// gradient pass through unchanged.  sigma must be positive.
DenseMatrix zero_lock_escape(const DenseMatrix& x, const DenseMatrix& grad,
                             double sigma);

/// Classic alternating multiplicative update: B is rescaled entrywise by
/// (A*C^T) ./ (B*(C*C^T) + diag(beta)*B + guard), then C by the mirrored rule
/// using the updated B.  Zero entries stay zero (which is exactly the
/// boundary-locking defect the additive steps remove).
FactorPair multiplicative_step(const DenseMatrix& a, const FactorPair& factors,
                               const RegParams& params, double guard);

/// One additive update of the left factor at (factors.b, factors.c); the
/// gradient is taken at the unmodified factor, the escape-lifted copy only
/// shapes the step.  Uses config.sigma and config.delta_b.
DenseMatrix additive_step_b(const DenseMatrix& a, const FactorPair& factors,
                            const RegParams& params, const SolverConfig& config);

/// Mirrored additive update of the right factor; callers pass the already
/// updated left factor in factors.b.  Uses config.sigma and config.delta_c.
DenseMatrix additive_step_c(const DenseMatrix& a, const FactorPair& factors,
                            const RegParams& params, const SolverConfig& config);

/// Factors filled with uniform draws from (0, 1); identical seeds give
/// identical factors on every platform.
FactorPair random_init(std::size_t m, std::size_t n, std::size_t rank,
                       std::uint64_t seed);

/// Validates user-supplied starting factors (shapes consistent, entries
/// finite and nonnegative) and passes them through.
FactorPair provided_init(DenseMatrix b, DenseMatrix c);

struct FactorizationResult {
    FactorPair factors;
    RegParams params;                   // weights in force at termination
    std::vector<IterationTrace> trace;  // entry 0 is the initial state
    ParamTrajectory trajectory;         // one weight snapshot per iteration
    TerminationReason reason;
    std::size_t iterations;             // completed iterations
};

/// Called after each completed iteration with the fresh factors and weights.
using IterationObserver =
    std::function<void(std::size_t iteration, const FactorPair& factors,
                       const RegParams& params)>;

/// Runs the full alternating scheme from the given starting point.  Each
/// iteration updates B, then C against the new B, both under the weights from
/// the previous iteration; then recomputes beta from the new B against the
/// pre-update C, and alpha from the new B and new C; then records a trace row
/// and tests the stopping rule at the new factors and new weights.  Non-finite
/// values mid-run raise std::runtime_error naming the iteration.
FactorizationResult factorize(const DenseMatrix& a, const SolverConfig& config,
                              const FactorPair& init, const RegParams& init_params,
                              const IterationObserver& observer = {});

} // namespace tnmf

#endif
