#ifndef TNMF_DENSE_MATRIX_HPP
#define TNMF_DENSE_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace tnmf {

/// Dense real matrix with row-major contiguous storage.
///
/// A matrix always has at least one row and one column; construction with a
/// zero dimension or a value buffer of the wrong length throws
/// std::invalid_argument.  Entries are plain doubles; callers that need the
/// all-finite guarantee enforce it at their boundary via all_finite().
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return values_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) noexcept {
        return values_[i * cols_ + j];
    }

    const std::vector<double>& values() const noexcept { return values_; }
    std::vector<double>& values() noexcept { return values_; }

    static DenseMatrix identity(std::size_t n);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

/// Matrix product a * b.  Throws std::invalid_argument on inner-dimension
/// mismatch; the message reports both shapes.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& m);

/// Entrywise product a .* b (shapes must match).
DenseMatrix hadamard_mul(const DenseMatrix& a, const DenseMatrix& b);

/// Entrywise guarded quotient a[i,j] / (b[i,j] + guard).  The guard must be
/// nonnegative; it keeps denominators away from zero, it is not a clamp.
DenseMatrix hadamard_div_guarded(const DenseMatrix& a, const DenseMatrix& b,
                                 double guard);

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

/// Scales row i of m by weights[i] (weights.size() == m.rows()).
DenseMatrix row_scale(const DenseMatrix& m, const std::vector<double>& weights);

/// Scales column j of m by weights[j] (weights.size() == m.cols()).
DenseMatrix col_scale(const DenseMatrix& m, const std::vector<double>& weights);

/// Sum of squared entries.
double frobenius_norm_sq(const DenseMatrix& m);

bool all_finite(const DenseMatrix& m) noexcept;
bool all_nonnegative(const DenseMatrix& m) noexcept;
double min_entry(const DenseMatrix& m) noexcept;
double max_entry(const DenseMatrix& m) noexcept;

/// Per-row and per-column penalty weights for the regularized factorization
/// objective.  beta has one entry per row of the left factor, alpha one entry
/// per column of the right factor; all entries must be nonnegative and
/// finite (validate_reg_params enforces this).
struct RegParams {
    std::vector<double> beta;
    std::vector<double> alpha;
};

/// Throws std::invalid_argument unless params.beta has length m, params.alpha
/// has length n, and every entry is finite and nonnegative.
void validate_reg_params(const RegParams& params, std::size_t m, std::size_t n);

/// Evaluation strategy for objective_value.  Both forms are algebraically
/// identical; trace_form never materializes the m-by-n product, which matters
/// once the data matrix dwarfs the factors.
enum class ObjectiveForm { direct, trace_form };

/// Penalized least squares objective
///
///   0.5 * |A - B*C|_F^2  +  0.5 * sum_m beta[m] * |B row m|^2
///                        +  0.5 * sum_n alpha[n] * |C col n|^2.
///
/// Shapes: A is m-by-n, B is m-by-r, C is r-by-n; mismatches throw.
double objective_value(const DenseMatrix& a, const DenseMatrix& b,
                       const DenseMatrix& c, const RegParams& params,
                       ObjectiveForm form = ObjectiveForm::direct);

/// Gradient of objective_value with respect to B:  B*(C*C^T) - A*C^T + diag(beta)*B.
DenseMatrix gradient_b(const DenseMatrix& a, const DenseMatrix& b,
                       const DenseMatrix& c, const RegParams& params);

/// Gradient of objective_value with respect to C:  (B^T*B)*C - B^T*A + C*diag(alpha).
DenseMatrix gradient_c(const DenseMatrix& a, const DenseMatrix& b,
                       const DenseMatrix& c, const RegParams& params);

} // namespace tnmf

#endif
