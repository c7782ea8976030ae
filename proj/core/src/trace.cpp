#include "tnmf/trace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace tnmf {

namespace {

double require_finite(double v, const char* field) {
    if (!std::isfinite(v))
        throw std::runtime_error(std::string("record_iteration: non-finite value in field ") +
                                 field);
    return v;
}

double max_abs_hadamard(const DenseMatrix& grad, const DenseMatrix& x) {
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        best = std::max(best, std::abs(grad.values()[i] * x.values()[i]));
    return best;
}

struct VecStats {
    double min, max, mean;
};

VecStats stats(const std::vector<double>& v) {
    double lo = v.front(), hi = v.front(), sum = 0.0;
    for (double e : v) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
        sum += e;
    }
    return {lo, hi, sum / static_cast<double>(v.size())};
}

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

IterationTrace record_iteration(std::size_t iteration, const DenseMatrix& a,
                                const DenseMatrix& b, const DenseMatrix& c,
                                const RegParams& frozen, const RegParams& current) {
    IterationTrace t;
    t.iteration = iteration;
    t.objective_frozen =
        require_finite(objective_value(a, b, c, frozen), "objective_frozen");
    t.objective_combined =
        require_finite(objective_value(a, b, c, current), "objective_combined");
    t.residual_norm_sq =
        require_finite(frobenius_norm_sq(a - matmul(b, c)), "residual_norm_sq");
    t.solution_norm_sq_b = require_finite(frobenius_norm_sq(b), "solution_norm_sq_b");
    t.solution_norm_sq_c = require_finite(frobenius_norm_sq(c), "solution_norm_sq_c");
    t.max_slack_b = require_finite(max_abs_hadamard(gradient_b(a, b, c, current), b),
                                   "max_slack_b");
    t.max_slack_c = require_finite(max_abs_hadamard(gradient_c(a, b, c, current), c),
                                   "max_slack_c");
    const VecStats bs = stats(current.beta);
    t.beta_min = require_finite(bs.min, "beta_min");
    t.beta_max = require_finite(bs.max, "beta_max");
    t.beta_mean = require_finite(bs.mean, "beta_mean");
    const VecStats as = stats(current.alpha);
    t.alpha_min = require_finite(as.min, "alpha_min");
    t.alpha_max = require_finite(as.max, "alpha_max");
    t.alpha_mean = require_finite(as.mean, "alpha_mean");
    return t;
}

std::size_t count_combined_increases(const std::vector<IterationTrace>& traces) {
    if (traces.size() < 2)
        throw std::invalid_argument("count_combined_increases: needs at least two traces, got " +
                                    std::to_string(traces.size()));
    std::size_t count = 0;
    for (std::size_t k = 1; k < traces.size(); ++k) {
        const double prev = traces[k - 1].objective_combined;
        if (traces[k].objective_combined > prev + 1e-12 * (1.0 + prev)) ++count;
    }
    return count;
}

void export_trace_csv(const std::vector<IterationTrace>& traces, std::ostream& out) {
    std::string line =
        "iteration,objective_frozen,objective_combined,residual_norm_sq,"
        "solution_norm_sq_b,solution_norm_sq_c,max_slack_b,max_slack_c,"
        "beta_min,beta_max,beta_mean,alpha_min,alpha_max,alpha_mean\n";
    out << line;
    for (const IterationTrace& t : traces) {
        line = std::to_string(t.iteration);
        const double fields[] = {t.objective_frozen, t.objective_combined,
                                 t.residual_norm_sq, t.solution_norm_sq_b,
                                 t.solution_norm_sq_c, t.max_slack_b,
                                 t.max_slack_c,       t.beta_min,
                                 t.beta_max,          t.beta_mean,
                                 t.alpha_min,         t.alpha_max,
                                 t.alpha_mean};
        for (double f : fields) {
            line += ',';
            append_double(line, f);
        }
        line += '\n';
        out << line;
    }
    if (!out)
        throw std::runtime_error("export_trace_csv: write failed");
}

void export_trace_csv(const std::vector<IterationTrace>& traces,
                      const std::filesystem::path& path) {
    std::ofstream file(path);
    if (!file)
        throw std::runtime_error("export_trace_csv: cannot open " + path.string());
    export_trace_csv(traces, file);
    file.close();
    if (!file)
        throw std::runtime_error("export_trace_csv: write failed for " + path.string());
}

} // namespace tnmf
