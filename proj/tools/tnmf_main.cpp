// Command line front end: factorize, tikhonov-solve, lcurve-sweep, check-kkt.
//
// Exit codes: 0 on success (factorizations and solves that converged),
// 2 when the iteration limit was reached (outputs are still written),
// 1 on any usage or input error.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tnmf/matrix_io.hpp"
#include "tnmf/nmf.hpp"
#include "tnmf/tikhonov.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitIterLimit = 2;

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> absolute_entries(std::vector<double> v) {
    for (double& e : v) e = std::abs(e);
    return v;
}

struct FactorizeArgs {
    std::string input;
    std::size_t rank = 0;
    std::string variant = "additive";
    std::size_t max_iter = 1000;
    double tol = 1e-9;
    double sigma = 1e-9;
    double delta_b = 1e-9;
    double delta_c = 1e-9;
    double gamma = 0.1;
    std::string gamma_b_path, gamma_c_path;
    std::string alpha0 = "zeros";
    std::string beta0 = "zeros";
    std::string init = "random";
    std::string init_b_path, init_c_path;
    std::uint64_t seed = 0;
    std::string out_b, out_c, trace_path;
    bool freeze_regularization = false;
};

int run_factorize(const FactorizeArgs& args) {
    const tnmf::DenseMatrix a = tnmf::read_matrix(args.input);

    tnmf::SolverConfig config = tnmf::default_config(args.rank, a.rows(), a.cols());
    config.variant = args.variant == "multiplicative" ? tnmf::Variant::multiplicative
                                                      : tnmf::Variant::additive;
    config.max_iter = args.max_iter;
    config.tol = args.tol;
    config.sigma = args.sigma;
    config.delta_b = args.delta_b;
    config.delta_c = args.delta_c;
    config.update_regularization = !args.freeze_regularization;
    config.seed = args.seed;
    if (!args.gamma_b_path.empty())
        config.gamma_b = absolute_entries(tnmf::read_vector(args.gamma_b_path));
    else
        config.gamma_b.assign(a.rows(), std::abs(args.gamma));
    if (!args.gamma_c_path.empty())
        config.gamma_c = absolute_entries(tnmf::read_vector(args.gamma_c_path));
    else
        config.gamma_c.assign(a.cols(), std::abs(args.gamma));

    tnmf::RegParams params = tnmf::init_regularization(a.rows(), a.cols());
    if (args.beta0 != "zeros") params.beta = tnmf::read_vector(args.beta0);
    if (args.alpha0 != "zeros") params.alpha = tnmf::read_vector(args.alpha0);
    params = tnmf::init_regularization(a.rows(), a.cols(), std::move(params.beta),
                                       std::move(params.alpha));

    tnmf::FactorPair init = [&]() {
        if (!args.init_b_path.empty() || !args.init_c_path.empty()) {
            if (args.init_b_path.empty() || args.init_c_path.empty())
                throw std::invalid_argument("--init-b and --init-c must be given together");
            return tnmf::provided_init(tnmf::read_matrix(args.init_b_path),
                                       tnmf::read_matrix(args.init_c_path));
        }
        if (args.init != "random")
            throw std::invalid_argument("--init accepts 'random' or --init-b/--init-c files");
        return tnmf::random_init(a.rows(), a.cols(), args.rank, args.seed);
    }();

    const tnmf::FactorizationResult result =
        tnmf::factorize(a, config, init, params);

    tnmf::write_matrix(result.factors.b, args.out_b);
    tnmf::write_matrix(result.factors.c, args.out_c);
    tnmf::export_trace_csv(result.trace, std::filesystem::path(args.trace_path));

    const tnmf::IterationTrace& last = result.trace.back();
    std::cout << "iterations " << result.iterations << "\n"
              << "reason "
              << (result.reason == tnmf::TerminationReason::kkt_converged ? "kkt_converged"
                                                                          : "max_iter")
              << "\n"
              << "objective " << format17(last.objective_combined) << "\n"
              << "max_slack_b " << format17(last.max_slack_b) << "\n"
              << "max_slack_c " << format17(last.max_slack_c) << "\n";
    return result.reason == tnmf::TerminationReason::kkt_converged ? kExitOk
                                                                   : kExitIterLimit;
}

struct TikhonovArgs {
    std::string design, observation;
    double gamma = 1.0;
    double lambda0 = 0.0;
    double eps = 0.001;
    std::string out, lambda_trace;
};

int run_tikhonov(const TikhonovArgs& args) {
    tnmf::LinearInverseProblem problem{tnmf::read_matrix(args.design),
                                       tnmf::read_vector(args.observation)};
    tnmf::LambdaSelectionOptions options;
    options.gamma = args.gamma;
    options.lambda0 = args.lambda0;
    options.eps = args.eps;

    const tnmf::LambdaSelectionResult result =
        tnmf::solve_with_lambda_selection(problem, options);
    tnmf::write_vector(result.x, args.out);
    if (!args.lambda_trace.empty()) {
        std::ofstream file(args.lambda_trace);
        if (!file)
            throw std::runtime_error("cannot open " + args.lambda_trace);
        file << "iteration,lambda\n";
        for (std::size_t k = 0; k < result.lambda_history.size(); ++k)
            file << k << "," << format17(result.lambda_history[k]) << "\n";
        if (!file) throw std::runtime_error("write failed for " + args.lambda_trace);
    }
    std::cout << "lambda " << format17(result.lambda) << "\n"
              << "iterations " << result.iterations << "\n"
              << "converged " << (result.converged ? "yes" : "no") << "\n";
    if (result.diverged) {
        std::cerr << "warning: lambda exceeded the runaway limit, iteration stopped\n";
    }
    return result.converged ? kExitOk : kExitIterLimit;
}

struct SweepArgs {
    std::string design, observation;
    double lambda_min = 0.0, lambda_max = 0.0;
    std::size_t points = 0;
    std::string out;
};

int run_sweep(const SweepArgs& args) {
    if (!(args.lambda_min > 0.0))
        throw std::invalid_argument("--lambda-min must be positive (the grid is logarithmic)");
    if (!(args.lambda_max >= args.lambda_min))
        throw std::invalid_argument("--lambda-max must be at least --lambda-min");
    if (args.points < 2 && !(args.points == 1 && args.lambda_max == args.lambda_min))
        throw std::invalid_argument("--points must be at least 2 (or 1 when min equals max)");

    tnmf::LinearInverseProblem problem{tnmf::read_matrix(args.design),
                                       tnmf::read_vector(args.observation)};
    std::vector<double> lambdas(args.points);
    const double log_lo = std::log(args.lambda_min);
    const double log_hi = std::log(args.lambda_max);
    for (std::size_t i = 0; i < args.points; ++i) {
        const double t = args.points == 1
                             ? 0.0
                             : static_cast<double>(i) / static_cast<double>(args.points - 1);
        lambdas[i] = std::exp(log_lo + t * (log_hi - log_lo));
    }
    lambdas.front() = args.lambda_min;
    lambdas.back() = args.lambda_max;

    const std::vector<tnmf::LCurvePoint> points = tnmf::lcurve_sweep(problem, lambdas);
    std::ofstream file(args.out);
    if (!file) throw std::runtime_error("cannot open " + args.out);
    file << "lambda,residual_norm_sq,solution_norm_sq\n";
    for (const tnmf::LCurvePoint& p : points)
        file << format17(p.lambda) << "," << format17(p.residual_norm_sq) << ","
             << format17(p.solution_norm_sq) << "\n";
    if (!file) throw std::runtime_error("write failed for " + args.out);
    return kExitOk;
}

struct CheckKktArgs {
    std::string input, b_path, c_path, beta_path, alpha_path;
};

int run_check_kkt(const CheckKktArgs& args) {
    const tnmf::DenseMatrix a = tnmf::read_matrix(args.input);
    tnmf::FactorPair factors{tnmf::read_matrix(args.b_path), tnmf::read_matrix(args.c_path)};
    tnmf::RegParams params = tnmf::init_regularization(a.rows(), a.cols());
    if (!args.beta_path.empty()) params.beta = tnmf::read_vector(args.beta_path);
    if (!args.alpha_path.empty()) params.alpha = tnmf::read_vector(args.alpha_path);
    params = tnmf::init_regularization(a.rows(), a.cols(), std::move(params.beta),
                                       std::move(params.alpha));

    const tnmf::KktResidual r = tnmf::kkt_residual(a, factors, params);
    std::cout << "max_slack_b " << format17(r.max_slack_b) << "\n"
              << "max_slack_c " << format17(r.max_slack_c) << "\n"
              << "neg_grad_at_zero_b " << r.neg_grad_at_zero_b << "\n"
              << "neg_grad_at_zero_c " << r.neg_grad_at_zero_c << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Penalized nonnegative matrix factorization with automatic "
                 "per-row/per-column regularization"};
    app.require_subcommand(1);

    FactorizeArgs fa;
    CLI::App* factorize = app.add_subcommand(
        "factorize", "Factor a nonnegative matrix as B*C with adaptive penalties");
    factorize->add_option("--input", fa.input, "Data matrix (CSV or Matrix Market)")
        ->required();
    factorize->add_option("--rank", fa.rank, "Inner dimension of the factorization")
        ->required();
    factorize->add_option("--variant", fa.variant, "Update rule")
        ->check(CLI::IsMember({"additive", "multiplicative"}))
        ->capture_default_str();
    factorize->add_option("--max-iter", fa.max_iter, "Iteration limit")
        ->capture_default_str();
    factorize->add_option("--tol", fa.tol, "Complementary-slackness stopping tolerance")
        ->capture_default_str();
    factorize->add_option("--sigma", fa.sigma, "Boundary-escape floor")
        ->capture_default_str();
    factorize->add_option("--delta-b", fa.delta_b, "Left-factor denominator guard")
        ->capture_default_str();
    factorize->add_option("--delta-c", fa.delta_c, "Right-factor denominator guard")
        ->capture_default_str();
    CLI::Option* gamma_opt =
        factorize->add_option("--gamma", fa.gamma, "Penalty gain applied to every row and column")
            ->capture_default_str();
    CLI::Option* gamma_b_opt =
        factorize->add_option("--gamma-b", fa.gamma_b_path, "Per-row penalty gains (vector file)");
    CLI::Option* gamma_c_opt =
        factorize->add_option("--gamma-c", fa.gamma_c_path, "Per-column penalty gains (vector file)");
    gamma_opt->excludes(gamma_b_opt)->excludes(gamma_c_opt);
    factorize->add_option("--beta0", fa.beta0, "Starting row penalties: 'zeros' or a vector file")
        ->capture_default_str();
    factorize->add_option("--alpha0", fa.alpha0, "Starting column penalties: 'zeros' or a vector file")
        ->capture_default_str();
    factorize->add_option("--init", fa.init, "Factor initialization: 'random'")
        ->capture_default_str();
    factorize->add_option("--init-b", fa.init_b_path, "Starting left factor (matrix file)");
    factorize->add_option("--init-c", fa.init_c_path, "Starting right factor (matrix file)");
    factorize->add_option("--seed", fa.seed, "RNG seed for random initialization")
        ->capture_default_str();
    factorize->add_option("--out-b", fa.out_b, "Output path for the left factor")->required();
    factorize->add_option("--out-c", fa.out_c, "Output path for the right factor")->required();
    factorize->add_option("--trace", fa.trace_path, "Output path for the iteration trace CSV")
        ->required();
    factorize->add_flag("--freeze-regularization", fa.freeze_regularization,
                        "Keep the starting penalties fixed for the whole run");

    TikhonovArgs ta;
    CLI::App* tikhonov = app.add_subcommand(
        "tikhonov-solve", "Ridge-penalized least squares with automatic penalty weight");
    tikhonov->add_option("--design", ta.design, "Design matrix")->required();
    tikhonov->add_option("--observation", ta.observation, "Observation vector")->required();
    tikhonov->add_option("--gamma", ta.gamma, "Gain on the penalty-weight map")
        ->capture_default_str();
    tikhonov->add_option("--lambda0", ta.lambda0, "Starting penalty weight")
        ->capture_default_str();
    tikhonov->add_option("--eps", ta.eps, "Relative solution-change stopping threshold")
        ->capture_default_str();
    tikhonov->add_option("--out", ta.out, "Output path for the solution vector")->required();
    tikhonov->add_option("--lambda-trace", ta.lambda_trace,
                         "Optional CSV path for the penalty-weight history");

    SweepArgs sa;
    CLI::App* sweep = app.add_subcommand(
        "lcurve-sweep", "Tabulate the residual/solution-norm trade-off on a log grid");
    sweep->add_option("--design", sa.design, "Design matrix")->required();
    sweep->add_option("--observation", sa.observation, "Observation vector")->required();
    sweep->add_option("--lambda-min", sa.lambda_min, "Smallest penalty weight (positive)")
        ->required();
    sweep->add_option("--lambda-max", sa.lambda_max, "Largest penalty weight")->required();
    sweep->add_option("--points", sa.points, "Number of grid points")->required();
    sweep->add_option("--out", sa.out, "Output CSV path")->required();

    CheckKktArgs ka;
    CLI::App* check = app.add_subcommand(
        "check-kkt", "Report complementary-slackness residuals for given factors");
    check->add_option("--input", ka.input, "Data matrix")->required();
    check->add_option("--b", ka.b_path, "Left factor")->required();
    check->add_option("--c", ka.c_path, "Right factor")->required();
    check->add_option("--beta", ka.beta_path, "Row penalties (vector file, default zeros)");
    check->add_option("--alpha", ka.alpha_path, "Column penalties (vector file, default zeros)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (factorize->parsed()) return run_factorize(fa);
        if (tikhonov->parsed()) return run_tikhonov(ta);
        if (sweep->parsed()) return run_sweep(sa);
        if (check->parsed()) return run_check_kkt(ka);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
