#include "tnmf/regularization.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tnmf {

namespace {

void require_gamma(const std::vector<double>& gamma, std::size_t expected,
                   const char* op) {
    if (gamma.size() != expected) {
        throw std::invalid_argument(std::string(op) + ": gamma has length " +
                                    std::to_string(gamma.size()) + ", expected " +
                                    std::to_string(expected));
    }
    for (double v : gamma)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(op) + ": gamma entries must be finite");
}

void require_guard(double guard, const char* op) {
    if (!(guard >= 0.0))
        throw std::invalid_argument(std::string(op) + ": guard must be nonnegative, got " +
                                    std::to_string(guard));
}

} // namespace

std::vector<double> update_beta(const DenseMatrix& a, const DenseMatrix& b,
                                const DenseMatrix& c,
                                const std::vector<double>& gamma_b, double guard) {
    require_gamma(gamma_b, b.rows(), "update_beta");
    require_guard(guard, "update_beta");
    const DenseMatrix residual = a - matmul(b, c);
    std::vector<double> beta(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        double res_sq = 0.0;
        for (std::size_t j = 0; j < residual.cols(); ++j)
            res_sq += residual(i, j) * residual(i, j);
        double row_sq = 0.0;
        for (std::size_t j = 0; j < b.cols(); ++j) row_sq += b(i, j) * b(i, j);
        beta[i] = std::abs(gamma_b[i]) * res_sq / (row_sq + guard);
    }
    return beta;
}

std::vector<double> update_alpha(const DenseMatrix& a, const DenseMatrix& b,
                                 const DenseMatrix& c,
                                 const std::vector<double>& gamma_c, double guard) {
    require_gamma(gamma_c, c.cols(), "update_alpha");
    require_guard(guard, "update_alpha");
    const DenseMatrix residual = a - matmul(b, c);
    std::vector<double> alpha(c.cols());
    for (std::size_t j = 0; j < c.cols(); ++j) {
        double res_sq = 0.0;
        for (std::size_t i = 0; i < residual.rows(); ++i)
            res_sq += residual(i, j) * residual(i, j);
        double col_sq = 0.0;
        for (std::size_t i = 0; i < c.rows(); ++i) col_sq += c(i, j) * c(i, j);
        alpha[j] = std::abs(gamma_c[j]) * res_sq / (col_sq + guard);
    }
    return alpha;
}

RegParams init_regularization(std::size_t m, std::size_t n) {
    return RegParams{std::vector<double>(m, 0.0), std::vector<double>(n, 0.0)};
}

RegParams init_regularization(std::size_t m, std::size_t n,
                              std::vector<double> beta, std::vector<double> alpha) {
    RegParams params{std::move(beta), std::move(alpha)};
    validate_reg_params(params, m, n);
    return params;
}

TrendDirection classify_sequence(const std::vector<double>& values, double tol) {
    if (values.size() < 2)
        throw std::invalid_argument("classify_sequence: needs at least two samples, got " +
                                    std::to_string(values.size()));
    if (!(tol >= 0.0))
        throw std::invalid_argument("classify_sequence: tol must be nonnegative");
    bool up = false, down = false;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        const double step = values[k + 1] - values[k];
        if (std::abs(step) <= tol * (1.0 + std::abs(values[k]))) continue;
        (step > 0.0 ? up : down) = true;
    }
    if (up && down) return TrendDirection::non_monotone;
    if (up) return TrendDirection::increasing;
    if (down) return TrendDirection::decreasing;
    return TrendDirection::converged;
}

TrajectoryClassification classify_trajectory(const ParamTrajectory& trajectory,
                                             double tol) {
    if (trajectory.beta.size() < 2 || trajectory.alpha.size() < 2)
        throw std::invalid_argument("classify_trajectory: needs at least two snapshots");
    const std::size_t m = trajectory.beta.front().size();
    const std::size_t n = trajectory.alpha.front().size();
    for (const auto& snap : trajectory.beta)
        if (snap.size() != m)
            throw std::invalid_argument("classify_trajectory: inconsistent beta snapshot lengths");
    for (const auto& snap : trajectory.alpha)
        if (snap.size() != n)
            throw std::invalid_argument("classify_trajectory: inconsistent alpha snapshot lengths");

    TrajectoryClassification out;
    std::vector<double> series(trajectory.beta.size());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < trajectory.beta.size(); ++k)
            series[k] = trajectory.beta[k][i];
        out.beta.push_back(classify_sequence(series, tol));
    }
    series.resize(trajectory.alpha.size());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < trajectory.alpha.size(); ++k)
            series[k] = trajectory.alpha[k][j];
        out.alpha.push_back(classify_sequence(series, tol));
    }
    return out;
}

} // namespace tnmf
