#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tnmf/nmf.hpp"
#include "tnmf/trace.hpp"

using tnmf::DenseMatrix;
using tnmf::IterationTrace;
using tnmf::RegParams;
using tnmf::oracle::rel_err;
using tnmf::oracle::TestRng;

namespace {

IterationTrace synthetic(std::size_t k, double frozen, double combined) {
    IterationTrace t{};
    t.iteration = k;
    t.objective_frozen = frozen;
    t.objective_combined = combined;
    return t;
}

const char* kHeader =
    "iteration,objective_frozen,objective_combined,residual_norm_sq,"
    "solution_norm_sq_b,solution_norm_sq_c,max_slack_b,max_slack_c,"
    "beta_min,beta_max,beta_mean,alpha_min,alpha_max,alpha_mean";

} // namespace

TEST_CASE("record_iteration reports objectives, slacks, and weight statistics") {
    TestRng rng(201);
    const DenseMatrix a = rng.matrix(5, 4, 0.0, 2.0);
    const DenseMatrix b = rng.matrix(5, 2, 0.1, 1.0);
    const DenseMatrix c = rng.matrix(2, 4, 0.1, 1.0);
    const RegParams frozen{rng.vector(5, 0.1, 0.4), rng.vector(4, 0.1, 0.4)};
    const RegParams current{{0.1, 0.2, 0.3, 0.4, 0.5}, {1.0, 3.0, 2.0, 2.0}};

    const IterationTrace t = tnmf::record_iteration(3, a, b, c, frozen, current);
    CHECK(t.iteration == 3);
    CHECK(rel_err(t.objective_frozen, tnmf::objective_value(a, b, c, frozen)) <= 1e-12);
    CHECK(rel_err(t.objective_combined, tnmf::objective_value(a, b, c, current)) <= 1e-12);

    const tnmf::KktResidual r = tnmf::kkt_residual(a, {b, c}, current);
    CHECK(t.max_slack_b == r.max_slack_b);
    CHECK(t.max_slack_c == r.max_slack_c);

    const DenseMatrix diff = a - tnmf::matmul(b, c);
    CHECK(rel_err(t.residual_norm_sq, tnmf::frobenius_norm_sq(diff)) <= 1e-12);
    CHECK(rel_err(t.solution_norm_sq_b, tnmf::frobenius_norm_sq(b)) <= 1e-12);
    CHECK(rel_err(t.solution_norm_sq_c, tnmf::frobenius_norm_sq(c)) <= 1e-12);

    CHECK(t.beta_min == 0.1);
    CHECK(t.beta_max == 0.5);
    CHECK(rel_err(t.beta_mean, 0.3) <= 1e-12);
    CHECK(t.alpha_min == 1.0);
    CHECK(t.alpha_max == 3.0);
    CHECK(t.alpha_mean == 2.0);
}

TEST_CASE("record_iteration rejects non-finite fields by name") {
    const DenseMatrix a(2, 2, {1e200, 1e200, 1e200, 1e200});
    const DenseMatrix b(2, 1, {1.0, 1.0});
    const DenseMatrix c(1, 2, {1.0, 1.0});
    const RegParams params{{0.0, 0.0}, {0.0, 0.0}};
    try {
        tnmf::record_iteration(0, a, b, c, params, params);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        CHECK(what.find("non-finite") != std::string::npos);
    }
}

TEST_CASE("count_combined_increases counts only significant rises") {
    std::vector<IterationTrace> rows;
    rows.push_back(synthetic(0, 1.0, 1.0));
    rows.push_back(synthetic(1, 1.0, 1.5));
    rows.push_back(synthetic(2, 1.4, 1.2));
    CHECK(tnmf::count_combined_increases(rows) == 1);

    rows[2].objective_combined = 1.5 + 1e-13;  // within tolerance of the previous row
    CHECK(tnmf::count_combined_increases(rows) == 1);

    rows[2].objective_combined = 1.5 + 1e-11;
    CHECK(tnmf::count_combined_increases(rows) == 2);

    CHECK_THROWS_AS(
        tnmf::count_combined_increases(std::vector<IterationTrace>{rows[0]}),
        std::invalid_argument);
}

TEST_CASE("trace CSV starts with the exact header") {
    std::ostringstream out;
    tnmf::export_trace_csv({}, out);
    CHECK(out.str() == std::string(kHeader) + "\n");
}

TEST_CASE("trace CSV writes one newline-terminated row per record") {
    IterationTrace t = synthetic(2, 0.5, 0.25);
    t.residual_norm_sq = 0.125;
    std::ostringstream out;
    tnmf::export_trace_csv({t}, out);
    const std::string text = out.str();
    CHECK(text.back() == '\n');
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == kHeader);
    std::getline(lines, line);
    CHECK(line.rfind("2,0.5,0.25,0.125,", 0) == 0);
    CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("trace CSV round-trips doubles exactly") {
    TestRng rng(203);
    IterationTrace t{};
    t.iteration = 17;
    t.objective_frozen = rng.uniform(0.0, 1.0);
    t.objective_combined = rng.uniform(0.0, 1.0) * 1e-7;
    t.residual_norm_sq = 1.0 / 3.0;
    t.solution_norm_sq_b = rng.uniform(1e-30, 1.0);
    t.solution_norm_sq_c = rng.uniform(0.0, 1e20);
    t.max_slack_b = std::numeric_limits<double>::denorm_min();
    t.max_slack_c = 0.1;
    t.beta_min = rng.uniform(0.0, 1.0);
    t.beta_max = rng.uniform(1.0, 2.0);
    t.beta_mean = rng.uniform(0.0, 2.0);
    t.alpha_min = rng.uniform(0.0, 1.0);
    t.alpha_max = rng.uniform(1.0, 2.0);
    t.alpha_mean = rng.uniform(0.0, 2.0);

    std::ostringstream out;
    tnmf::export_trace_csv({t}, out);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);  // header
    std::getline(lines, line);

    std::vector<double> parsed;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) parsed.push_back(std::strtod(cell.c_str(), nullptr));
    REQUIRE(parsed.size() == 14);
    CHECK(parsed[0] == 17.0);
    CHECK(parsed[1] == t.objective_frozen);
    CHECK(parsed[2] == t.objective_combined);
    CHECK(parsed[3] == t.residual_norm_sq);
    CHECK(parsed[4] == t.solution_norm_sq_b);
    CHECK(parsed[5] == t.solution_norm_sq_c);
    CHECK(parsed[6] == t.max_slack_b);
    CHECK(parsed[7] == t.max_slack_c);
    CHECK(parsed[8] == t.beta_min);
    CHECK(parsed[9] == t.beta_max);
    CHECK(parsed[10] == t.beta_mean);
    CHECK(parsed[11] == t.alpha_min);
    CHECK(parsed[12] == t.alpha_max);
    CHECK(parsed[13] == t.alpha_mean);
}

TEST_CASE("trace CSV file export matches the stream export") {
    TestRng rng(205);
    const DenseMatrix a = rng.matrix(4, 3, 0.0, 1.0);
    const DenseMatrix b = rng.matrix(4, 2, 0.1, 1.0);
    const DenseMatrix c = rng.matrix(2, 3, 0.1, 1.0);
    const RegParams params{rng.vector(4, 0.0, 0.3), rng.vector(3, 0.0, 0.3)};
    std::vector<IterationTrace> rows;
    rows.push_back(tnmf::record_iteration(0, a, b, c, params, params));
    rows.push_back(tnmf::record_iteration(1, a, b, c, params, params));

    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "tnmf_trace_test.csv";
    tnmf::export_trace_csv(rows, path.string());
    std::ifstream in(path);
    std::stringstream from_file;
    from_file << in.rdbuf();
    std::ostringstream from_stream;
    tnmf::export_trace_csv(rows, from_stream);
    CHECK(from_file.str() == from_stream.str());
    std::filesystem::remove(path);
}
