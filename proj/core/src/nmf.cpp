#include "tnmf/nmf.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace tnmf {

namespace {

std::string shape_str(const DenseMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_factor_shapes(const char* op, const DenseMatrix& a,
                           const FactorPair& factors) {
    const DenseMatrix& b = factors.b;
    const DenseMatrix& c = factors.c;
    if (b.rows() != a.rows() || c.cols() != a.cols() || b.cols() != c.rows()) {
        throw std::invalid_argument(std::string(op) + ": incompatible shapes, data " +
                                    shape_str(a) + ", left factor " + shape_str(b) +
                                    ", right factor " + shape_str(c));
    }
}

// Uniform double in the open interval (0, 1) from one 64-bit draw; the
// mapping is fixed here rather than delegated to distribution classes so a
// seed reproduces bit-identical factors on any standard library.
double open_unit_draw(std::mt19937_64& engine) {
    return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

SolverConfig default_config(std::size_t rank, std::size_t m, std::size_t n) {
    SolverConfig config;
    config.rank = rank;
    config.gamma_b.assign(m, 0.1);
    config.gamma_c.assign(n, 0.1);
    return config;
}

void validate_config(const SolverConfig& config, std::size_t m, std::size_t n) {
    if (config.rank == 0)
        throw std::invalid_argument("SolverConfig: rank must be positive");
    if (!(config.sigma > 0.0) || !std::isfinite(config.sigma))
        throw std::invalid_argument("SolverConfig: sigma must be positive and finite");
    if (!(config.delta_b >= 0.0) || !std::isfinite(config.delta_b))
        throw std::invalid_argument("SolverConfig: delta_b must be nonnegative and finite");
    if (!(config.delta_c >= 0.0) || !std::isfinite(config.delta_c))
        throw std::invalid_argument("SolverConfig: delta_c must be nonnegative and finite");
    if (!(config.tol > 0.0) || !std::isfinite(config.tol))
        throw std::invalid_argument("SolverConfig: tol must be positive and finite");
    if (config.max_iter == 0)
        throw std::invalid_argument("SolverConfig: max_iter must be positive");
    if (config.gamma_b.size() != m)
        throw std::invalid_argument("SolverConfig: gamma_b has length " +
                                    std::to_string(config.gamma_b.size()) +
                                    ", expected " + std::to_string(m));
    if (config.gamma_c.size() != n)
        throw std::invalid_argument("SolverConfig: gamma_c has length " +
                                    std::to_string(config.gamma_c.size()) +
                                    ", expected " + std::to_string(n));
    for (double v : config.gamma_b)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("SolverConfig: gamma_b entries must be finite and nonnegative");
    for (double v : config.gamma_c)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("SolverConfig: gamma_c entries must be finite and nonnegative");
}

KktResidual kkt_residual(const DenseMatrix& a, const FactorPair& factors,
                         const RegParams& params) {
    require_factor_shapes("kkt_residual", a, factors);
    validate_reg_params(params, factors.b.rows(), factors.c.cols());
    const DenseMatrix gb = gradient_b(a, factors.b, factors.c, params);
    const DenseMatrix gc = gradient_c(a, factors.b, factors.c, params);
    KktResidual r{0.0, 0.0, 0, 0};
    for (std::size_t i = 0; i < gb.size(); ++i) {
        const double x = factors.b.values()[i];
        const double g = gb.values()[i];
        r.max_slack_b = std::max(r.max_slack_b, std::abs(g * x));
        if (x == 0.0 && g < 0.0) ++r.neg_grad_at_zero_b;
    }
    for (std::size_t i = 0; i < gc.size(); ++i) {
        const double x = factors.c.values()[i];
        const double g = gc.values()[i];
        r.max_slack_c = std::max(r.max_slack_c, std::abs(g * x));
        if (x == 0.0 && g < 0.0) ++r.neg_grad_at_zero_c;
    }
    return r;
}

DenseMatrix zero_lock_escape(const DenseMatrix& x, const DenseMatrix& grad,
                             double sigma) {
    if (x.rows() != grad.rows() || x.cols() != grad.cols())
        throw std::invalid_argument("zero_lock_escape: shape mismatch, " + shape_str(x) +
                                    " vs " + shape_str(grad));
    if (!(sigma > 0.0))
        throw std::invalid_argument("zero_lock_escape: sigma must be positive, got " +
                                    std::to_string(sigma));
    DenseMatrix out = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (grad.values()[i] < 0.0 && out.values()[i] < sigma) out.values()[i] = sigma;
    }
    return out;
}

namespace {

DenseMatrix multiplicative_step_b(const DenseMatrix& a, const FactorPair& factors,
                                  const RegParams& params, double guard) {
    const DenseMatrix ct = transpose(factors.c);
    const DenseMatrix numer = hadamard_mul(factors.b, matmul(a, ct));
    const DenseMatrix denom = matmul(factors.b, matmul(factors.c, ct)) +
                              row_scale(factors.b, params.beta);
    return hadamard_div_guarded(numer, denom, guard);
}

DenseMatrix multiplicative_step_c(const DenseMatrix& a, const FactorPair& factors,
                                  const RegParams& params, double guard) {
    const DenseMatrix bt = transpose(factors.b);
    const DenseMatrix numer = hadamard_mul(factors.c, matmul(bt, a));
    const DenseMatrix denom = matmul(matmul(bt, factors.b), factors.c) +
                              col_scale(factors.c, params.alpha);
    return hadamard_div_guarded(numer, denom, guard);
}

} // namespace

FactorPair multiplicative_step(const DenseMatrix& a, const FactorPair& factors,
                               const RegParams& params, double guard) {
    require_factor_shapes("multiplicative_step", a, factors);
    validate_reg_params(params, factors.b.rows(), factors.c.cols());
    DenseMatrix b_new = multiplicative_step_b(a, factors, params, guard);
    DenseMatrix c_new = multiplicative_step_c(a, {b_new, factors.c}, params, guard);
    return {std::move(b_new), std::move(c_new)};
}

DenseMatrix additive_step_b(const DenseMatrix& a, const FactorPair& factors,
                            const RegParams& params, const SolverConfig& config) {
    require_factor_shapes("additive_step_b", a, factors);
    const DenseMatrix grad = gradient_b(a, factors.b, factors.c, params);
    const DenseMatrix lifted = zero_lock_escape(factors.b, grad, config.sigma);
    const DenseMatrix denom = matmul(lifted, matmul(factors.c, transpose(factors.c))) +
                              row_scale(lifted, params.beta);
    return factors.b - hadamard_div_guarded(hadamard_mul(lifted, grad), denom,
                                            config.delta_b);
}

DenseMatrix additive_step_c(const DenseMatrix& a, const FactorPair& factors,
                            const RegParams& params, const SolverConfig& config) {
    require_factor_shapes("additive_step_c", a, factors);
    const DenseMatrix grad = gradient_c(a, factors.b, factors.c, params);
    const DenseMatrix lifted = zero_lock_escape(factors.c, grad, config.sigma);
    const DenseMatrix denom = matmul(matmul(transpose(factors.b), factors.b), lifted) +
                              col_scale(lifted, params.alpha);
    return factors.c - hadamard_div_guarded(hadamard_mul(lifted, grad), denom,
                                            config.delta_c);
}

FactorPair random_init(std::size_t m, std::size_t n, std::size_t rank,
                       std::uint64_t seed) {
    if (rank == 0) throw std::invalid_argument("random_init: rank must be positive");
    std::mt19937_64 engine(seed);
    DenseMatrix b(m, rank), c(rank, n);
    for (double& v : b.values()) v = open_unit_draw(engine);
    for (double& v : c.values()) v = open_unit_draw(engine);
    return {std::move(b), std::move(c)};
}

FactorPair provided_init(DenseMatrix b, DenseMatrix c) {
    if (b.cols() != c.rows())
        throw std::invalid_argument("provided_init: factor shapes " + shape_str(b) +
                                    " and " + shape_str(c) + " do not chain");
    if (!all_finite(b) || !all_finite(c))
        throw std::invalid_argument("provided_init: factors must be finite");
    if (!all_nonnegative(b) || !all_nonnegative(c))
        throw std::invalid_argument("provided_init: factors must be nonnegative");
    return {std::move(b), std::move(c)};
}

FactorizationResult factorize(const DenseMatrix& a, const SolverConfig& config,
                              const FactorPair& init, const RegParams& init_params,
                              const IterationObserver& observer) {
    require_factor_shapes("factorize", a, init);
    if (init.b.cols() != config.rank)
        throw std::invalid_argument("factorize: init factors have rank " +
                                    std::to_string(init.b.cols()) +
                                    ", config says " + std::to_string(config.rank));
    validate_config(config, a.rows(), a.cols());
    validate_reg_params(init_params, a.rows(), a.cols());
    if (!all_finite(a))
        throw std::invalid_argument("factorize: data matrix has non-finite entries");
    if (!all_nonnegative(a))
        throw std::invalid_argument("factorize: data matrix has negative entries");
    if (!all_finite(init.b) || !all_finite(init.c))
        throw std::invalid_argument("factorize: init factors have non-finite entries");
    if (!all_nonnegative(init.b) || !all_nonnegative(init.c))
        throw std::invalid_argument("factorize: init factors have negative entries");

    FactorizationResult result{init, init_params, {}, {}, TerminationReason::max_iter, 0};
    DenseMatrix& b = result.factors.b;
    DenseMatrix& c = result.factors.c;
    RegParams& params = result.params;

    try {
        result.trace.push_back(
            record_iteration(0, a, b, c, init_params, init_params));
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string(e.what()) + " at iteration 0");
    }

    for (std::size_t k = 1; k <= config.max_iter; ++k) {
        const RegParams frozen = params;
        std::optional<DenseMatrix> c_before;
        if (config.update_regularization) c_before = c;

        if (config.variant == Variant::additive) {
            b = additive_step_b(a, {b, c}, frozen, config);
            c = additive_step_c(a, {b, c}, frozen, config);
        } else {
            b = multiplicative_step_b(a, {b, c}, frozen, config.delta_b);
            c = multiplicative_step_c(a, {b, c}, frozen, config.delta_c);
        }

        if (config.update_regularization) {
            params.beta = update_beta(a, b, *c_before, config.gamma_b, config.delta_b);
            params.alpha = update_alpha(a, b, c, config.gamma_c, config.delta_c);
        }

        const std::string where = " at iteration " + std::to_string(k);
        if (!all_finite(b))
            throw std::runtime_error("factorize: non-finite entries in left factor" + where);
        if (!all_finite(c))
            throw std::runtime_error("factorize: non-finite entries in right factor" + where);
        for (double v : params.beta)
            if (!std::isfinite(v))
                throw std::runtime_error("factorize: non-finite beta entry" + where);
        for (double v : params.alpha)
            if (!std::isfinite(v))
                throw std::runtime_error("factorize: non-finite alpha entry" + where);

        IterationTrace row;
        try {
            row = record_iteration(k, a, b, c, frozen, params);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(std::string(e.what()) + where);
        }
        result.trace.push_back(row);
        result.trajectory.beta.push_back(params.beta);
        result.trajectory.alpha.push_back(params.alpha);
        result.iterations = k;

        if (observer) observer(k, result.factors, params);

        if (row.max_slack_b <= config.tol && row.max_slack_c <= config.tol) {
            result.reason = TerminationReason::kkt_converged;
            return result;
        }
    }
    result.reason = TerminationReason::max_iter;
    return result;
}

} // namespace tnmf
