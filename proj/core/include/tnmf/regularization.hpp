#ifndef TNMF_REGULARIZATION_HPP
#define TNMF_REGULARIZATION_HPP

#include <cstddef>
#include <vector>

#include "tnmf/dense_matrix.hpp"

namespace tnmf {

/// Recomputes the per-row penalty weights of the left factor:
///
///   beta[i] = |gamma_b[i]| * |row i of (A - B*C)|^2 / (|row i of B|^2 + guard)
///
/// so each row balances its own fit residual against its own energy.
/// gamma_b must have one finite entry per row of B; guard must be nonnegative.
std::vector<double> update_beta(const DenseMatrix& a, const DenseMatrix& b,
                                const DenseMatrix& c,
                                const std::vector<double>& gamma_b, double guard);

/// Per-column counterpart for the right factor:
///
///   alpha[j] = |gamma_c[j]| * |col j of (A - B*C)|^2 / (|col j of C|^2 + guard)
std::vector<double> update_alpha(const DenseMatrix& a, const DenseMatrix& b,
                                 const DenseMatrix& c,
                                 const std::vector<double>& gamma_c, double guard);

/// All-zero starting weights (the recommended default: the first factor
/// update then runs unpenalized and the weights adapt from the first
/// residual).
RegParams init_regularization(std::size_t m, std::size_t n);

/// User-provided starting weights, validated for length, finiteness, and
/// nonnegativity.
RegParams init_regularization(std::size_t m, std::size_t n,
                              std::vector<double> beta, std::vector<double> alpha);

/// Per-iteration snapshots of the penalty weights; snapshot k holds the
/// weights in force after completed iteration k+1.
struct ParamTrajectory {
    std::vector<std::vector<double>> beta;
    std::vector<std::vector<double>> alpha;
};

enum class TrendDirection { increasing, decreasing, converged, non_monotone };

struct TrajectoryClassification {
    std::vector<TrendDirection> beta;
    std::vector<TrendDirection> alpha;
};

/// Labels one scalar sequence.  Steps with |change| <= tol * (1 + |value|)
/// are insignificant; a sequence with no significant step is converged, one
/// whose significant steps all share a sign is increasing or decreasing, and
/// anything else is non_monotone.  Fewer than two samples is an error.
TrendDirection classify_sequence(const std::vector<double>& values, double tol);

/// Applies classify_sequence to every per-row and per-column weight sequence.
/// Requires at least two snapshots with consistent lengths.
TrajectoryClassification classify_trajectory(const ParamTrajectory& trajectory,
                                             double tol);

} // namespace tnmf

#endif
