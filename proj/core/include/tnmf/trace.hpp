#ifndef TNMF_TRACE_HPP
#define TNMF_TRACE_HPP

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <vector>

#include "tnmf/dense_matrix.hpp"

namespace tnmf {

/// Scalar snapshot of one solver iteration.  Field order matches the CSV
/// column order exactly.
struct IterationTrace {
    std::size_t iteration;        // 0 is the initial state before any update
    double objective_frozen;      // objective at the new factors, previous weights
    double objective_combined;    // objective at the new factors, new weights
    double residual_norm_sq;      // |A - B*C|_F^2
    double solution_norm_sq_b;    // |B|_F^2
    double solution_norm_sq_c;    // |C|_F^2
    double max_slack_b;           // max |grad_B . B| at the new weights
    double max_slack_c;           // max |grad_C . C| at the new weights
    double beta_min;
    double beta_max;
    double beta_mean;
    double alpha_min;
    double alpha_max;
    double alpha_mean;
};

/// Computes every trace field from the supplied matrices.  frozen holds the
/// weights in force while the factors were updated, current the weights
/// recomputed afterwards; slack maxima use the current weights.  A non-finite
/// field raises std::runtime_error naming the field.
IterationTrace record_iteration(std::size_t iteration, const DenseMatrix& a,
                                const DenseMatrix& b, const DenseMatrix& c,
                                const RegParams& frozen, const RegParams& current);

/// Counts iterations whose combined objective rose above the previous one by
/// more than 1e-12 * (1 + previous value).  Needs at least two traces.
std::size_t count_combined_increases(const std::vector<IterationTrace>& traces);

/// Writes a header row plus one newline-terminated row per trace, doubles
/// rendered with 17 significant digits so values round-trip exactly.
void export_trace_csv(const std::vector<IterationTrace>& traces, std::ostream& out);
void export_trace_csv(const std::vector<IterationTrace>& traces,
                      const std::filesystem::path& path);

} // namespace tnmf

#endif
