#include "tnmf/dense_matrix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tnmf {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const char* op, const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch, " +
                                    shape_str(a.rows(), a.cols()) + " vs " +
                                    shape_str(b.rows(), b.cols()));
    }
}

void require_factor_shapes(const char* op, const DenseMatrix& a,
                           const DenseMatrix& b, const DenseMatrix& c) {
    if (b.rows() != a.rows() || c.cols() != a.cols() || b.cols() != c.rows()) {
        throw std::invalid_argument(
            std::string(op) + ": incompatible shapes, data " +
            shape_str(a.rows(), a.cols()) + ", left factor " +
            shape_str(b.rows(), b.cols()) + ", right factor " +
            shape_str(c.rows(), c.cols()));
    }
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("DenseMatrix: dimensions must be positive, got " +
                                    shape_str(rows, cols));
    }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("DenseMatrix: dimensions must be positive, got " +
                                    shape_str(rows, cols));
    }
    if (values_.size() != rows * cols) {
        throw std::invalid_argument("DenseMatrix: value buffer has length " +
                                    std::to_string(values_.size()) + ", expected " +
                                    std::to_string(rows * cols) + " for shape " +
                                    shape_str(rows, cols));
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: inner dimension mismatch, " +
                                    shape_str(a.rows(), a.cols()) + " vs " +
                                    shape_str(b.rows(), b.cols()));
    }
    DenseMatrix out(a.rows(), b.cols());
    const double* ap = a.values().data();
    const double* bp = b.values().data();
    double* op = out.values().data();
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            const double aval = ap[i * k + l];
            const double* brow = bp + l * m;
            double* orow = op + i * m;
            for (std::size_t j = 0; j < m; ++j) orow[j] += aval * brow[j];
        }
    }
    return out;
}

DenseMatrix transpose(const DenseMatrix& m) {
    DenseMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

DenseMatrix hadamard_mul(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape("hadamard_mul", a, b);
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.values()[i] = a.values()[i] * b.values()[i];
    return out;
}

DenseMatrix hadamard_div_guarded(const DenseMatrix& a, const DenseMatrix& b,
                                 double guard) {
    require_same_shape("hadamard_div_guarded", a, b);
    if (!(guard >= 0.0)) {
        throw std::invalid_argument("hadamard_div_guarded: guard must be nonnegative, got " +
                                    std::to_string(guard));
    }
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.values()[i] = a.values()[i] / (b.values()[i] + guard);
    return out;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape("operator+", a, b);
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.values()[i] = a.values()[i] + b.values()[i];
    return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape("operator-", a, b);
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.values()[i] = a.values()[i] - b.values()[i];
    return out;
}

DenseMatrix row_scale(const DenseMatrix& m, const std::vector<double>& weights) {
    if (weights.size() != m.rows()) {
        throw std::invalid_argument("row_scale: weight length " +
                                    std::to_string(weights.size()) + " does not match " +
                                    shape_str(m.rows(), m.cols()));
    }
    DenseMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * weights[i];
    return out;
}

DenseMatrix col_scale(const DenseMatrix& m, const std::vector<double>& weights) {
    if (weights.size() != m.cols()) {
        throw std::invalid_argument("col_scale: weight length " +
                                    std::to_string(weights.size()) + " does not match " +
                                    shape_str(m.rows(), m.cols()));
    }
    DenseMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * weights[j];
    return out;
}

double frobenius_norm_sq(const DenseMatrix& m) {
    double acc = 0.0;
    for (double v : m.values()) acc += v * v;
    return acc;
}

bool all_finite(const DenseMatrix& m) noexcept {
    for (double v : m.values())
        if (!std::isfinite(v)) return false;
    return true;
}

bool all_nonnegative(const DenseMatrix& m) noexcept {
    for (double v : m.values())
        if (!(v >= 0.0)) return false;
    return true;
}

double min_entry(const DenseMatrix& m) noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (double v : m.values())
        if (v < best) best = v;
    return best;
}

double max_entry(const DenseMatrix& m) noexcept {
    double best = -std::numeric_limits<double>::infinity();
    for (double v : m.values())
        if (v > best) best = v;
    return best;
}

void validate_reg_params(const RegParams& params, std::size_t m, std::size_t n) {
    if (params.beta.size() != m) {
        throw std::invalid_argument("RegParams: beta has length " +
                                    std::to_string(params.beta.size()) +
                                    ", expected " + std::to_string(m));
    }
    if (params.alpha.size() != n) {
        throw std::invalid_argument("RegParams: alpha has length " +
                                    std::to_string(params.alpha.size()) +
                                    ", expected " + std::to_string(n));
    }
    for (double v : params.beta)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("RegParams: beta entries must be finite and nonnegative");
    for (double v : params.alpha)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("RegParams: alpha entries must be finite and nonnegative");
}

namespace {

double penalty_terms(const DenseMatrix& b, const DenseMatrix& c, const RegParams& params) {
    double acc = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        double row_sq = 0.0;
        for (std::size_t j = 0; j < b.cols(); ++j) row_sq += b(i, j) * b(i, j);
        acc += 0.5 * params.beta[i] * row_sq;
    }
    for (std::size_t j = 0; j < c.cols(); ++j) {
        double col_sq = 0.0;
        for (std::size_t i = 0; i < c.rows(); ++i) col_sq += c(i, j) * c(i, j);
        acc += 0.5 * params.alpha[j] * col_sq;
    }
    return acc;
}

} // namespace

double objective_value(const DenseMatrix& a, const DenseMatrix& b,
                       const DenseMatrix& c, const RegParams& params,
                       ObjectiveForm form) {
    require_factor_shapes("objective_value", a, b, c);
    if (params.beta.size() != b.rows() || params.alpha.size() != c.cols()) {
        throw std::invalid_argument("objective_value: parameter lengths (" +
                                    std::to_string(params.beta.size()) + ", " +
                                    std::to_string(params.alpha.size()) +
                                    ") do not match factor shapes " +
                                    shape_str(b.rows(), b.cols()) + ", " +
                                    shape_str(c.rows(), c.cols()));
    }
    if (form == ObjectiveForm::direct) {
        const DenseMatrix residual = a - matmul(b, c);
        return 0.5 * frobenius_norm_sq(residual) + penalty_terms(b, c, params);
    }
    // trace_form expands 0.5*|A - BC|^2 into
    //   0.5*tr(A^T A) - tr(C^T (B^T A)) + 0.5*tr(C^T (B^T B) C)
    // so only r-by-n and r-by-r intermediates are formed.
    const DenseMatrix bt = transpose(b);
    const DenseMatrix bta = matmul(bt, a);
    const DenseMatrix btb = matmul(bt, b);
    const DenseMatrix btbc = matmul(btb, c);
    double fit = 0.5 * frobenius_norm_sq(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
        fit -= c.values()[i] * bta.values()[i];
        fit += 0.5 * c.values()[i] * btbc.values()[i];
    }
    return fit + penalty_terms(b, c, params);
}

DenseMatrix gradient_b(const DenseMatrix& a, const DenseMatrix& b,
                       const DenseMatrix& c, const RegParams& params) {
    require_factor_shapes("gradient_b", a, b, c);
    if (params.beta.size() != b.rows())
        throw std::invalid_argument("gradient_b: beta length " +
                                    std::to_string(params.beta.size()) +
                                    " does not match left factor " +
                                    shape_str(b.rows(), b.cols()));
    const DenseMatrix ct = transpose(c);
    return matmul(b, matmul(c, ct)) - matmul(a, ct) + row_scale(b, params.beta);
}

DenseMatrix gradient_c(const DenseMatrix& a, const DenseMatrix& b,
                       const DenseMatrix& c, const RegParams& params) {
    require_factor_shapes("gradient_c", a, b, c);
    if (params.alpha.size() != c.cols())
        throw std::invalid_argument("gradient_c: alpha length " +
                                    std::to_string(params.alpha.size()) +
                                    " does not match right factor " +
                                    shape_str(c.rows(), c.cols()));
    const DenseMatrix bt = transpose(b);
    return matmul(matmul(bt, b), c) - matmul(bt, a) + col_scale(c, params.alpha);
}

} // namespace tnmf
