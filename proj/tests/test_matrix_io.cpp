#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tnmf/matrix_io.hpp"

using tnmf::DenseMatrix;
using tnmf::MatrixFileFormat;
using tnmf::oracle::TestRng;

namespace {

class ScratchDir {
public:
    ScratchDir() : root_(std::filesystem::temp_directory_path() / "tnmf_io_test") {
        std::filesystem::create_directories(root_);
    }
    ~ScratchDir() { std::filesystem::remove_all(root_); }
    std::string path(const std::string& name) const { return (root_ / name).string(); }

private:
    std::filesystem::path root_;
};

std::string write_text(const ScratchDir& dir, const std::string& name,
                       const std::string& text) {
    const std::string path = dir.path(name);
    std::ofstream out(path);
    out << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("csv matrices parse cell by cell") {
    ScratchDir dir;
    const std::string path = write_text(dir, "m.csv", "1,2\n3,4\n");
    const DenseMatrix m = tnmf::read_matrix(path);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(0, 1) == 2.0);
    CHECK(m(1, 0) == 3.0);
    CHECK(m(1, 1) == 4.0);
}

TEST_CASE("csv writer emits compact exact text") {
    ScratchDir dir;
    const std::string zero = dir.path("zero.csv");
    tnmf::write_matrix(DenseMatrix(1, 1), zero);
    CHECK(slurp(zero) == "0\n");

    const std::string eye = dir.path("eye.csv");
    tnmf::write_matrix(DenseMatrix::identity(2), eye);
    CHECK(slurp(eye) == "1,0\n0,1\n");
}

TEST_CASE("csv rejects malformed content with the offending line") {
    ScratchDir dir;
    SUBCASE("unparsable cell") {
        const std::string path = write_text(dir, "bad.csv", "1,x\n");
        try {
            tnmf::read_matrix(path);
            FAIL("expected an exception");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(":1:") != std::string::npos);
        }
    }
    SUBCASE("ragged row") {
        const std::string path = write_text(dir, "ragged.csv", "1,2\n3\n");
        try {
            tnmf::read_matrix(path);
            FAIL("expected an exception");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(":2:") != std::string::npos);
        }
    }
    SUBCASE("trailing comma") {
        const std::string path = write_text(dir, "trail.csv", "1,2,\n");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
    SUBCASE("non-finite value") {
        const std::string path = write_text(dir, "nan.csv", "1,nan\n");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
    SUBCASE("interior blank line") {
        const std::string path = write_text(dir, "blank.csv", "1,2\n\n3,4\n");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
    SUBCASE("empty file") {
        const std::string path = write_text(dir, "empty.csv", "");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
}

TEST_CASE("missing files are reported by path") {
    try {
        tnmf::read_matrix("/nonexistent/nowhere.csv");
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("nowhere.csv") != std::string::npos);
    }
}

TEST_CASE("array-format files store columns contiguously") {
    ScratchDir dir;
    const std::string path = write_text(
        dir, "m.mtx",
        "%%MatrixMarket matrix array real general\n% comment\n2 2\n1\n3\n2\n4\n");
    const DenseMatrix m = tnmf::read_matrix(path);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(0, 1) == 2.0);
    CHECK(m(1, 0) == 3.0);
    CHECK(m(1, 1) == 4.0);
}

TEST_CASE("coordinate-format files default unlisted entries to zero") {
    ScratchDir dir;
    const std::string path = write_text(
        dir, "m.mtx",
        "%%MatrixMarket matrix coordinate real general\n3 3 2\n1 1 2.5\n3 2 7\n");
    const DenseMatrix m = tnmf::read_matrix(path);
    CHECK(m(0, 0) == 2.5);
    CHECK(m(2, 1) == 7.0);
    CHECK(m(1, 1) == 0.0);
    CHECK(m(0, 2) == 0.0);
}

TEST_CASE("coordinate-format indices are validated") {
    ScratchDir dir;
    SUBCASE("row out of range") {
        const std::string path = write_text(
            dir, "m.mtx",
            "%%MatrixMarket matrix coordinate real general\n3 3 1\n4 1 1\n");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
    SUBCASE("zero-based index rejected") {
        const std::string path = write_text(
            dir, "m.mtx",
            "%%MatrixMarket matrix coordinate real general\n3 3 1\n0 1 1\n");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
    SUBCASE("entry count mismatch") {
        const std::string path = write_text(
            dir, "m.mtx",
            "%%MatrixMarket matrix coordinate real general\n3 3 2\n1 1 1\n");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
}

TEST_CASE("unsupported banner variants are rejected") {
    ScratchDir dir;
    SUBCASE("complex field") {
        const std::string path = write_text(
            dir, "m.mtx",
            "%%MatrixMarket matrix array complex general\n2 2\n1\n1\n1\n1\n");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
    SUBCASE("symmetric storage") {
        const std::string path = write_text(
            dir, "m.mtx",
            "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 1 1\n");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
    SUBCASE("value count short of the promised size") {
        const std::string path = write_text(
            dir, "m.mtx", "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n");
        CHECK_THROWS_AS(tnmf::read_matrix(path), std::runtime_error);
    }
}

TEST_CASE("the banner wins over the file extension") {
    ScratchDir dir;
    const std::string path = write_text(
        dir, "disguised.csv",
        "%%MatrixMarket matrix array real general\n1 2\n5\n6\n");
    const DenseMatrix m = tnmf::read_matrix(path);
    REQUIRE(m.rows() == 1);
    CHECK(m(0, 0) == 5.0);
    CHECK(m(0, 1) == 6.0);
}

TEST_CASE("an explicit format overrides detection") {
    ScratchDir dir;
    // Plain CSV content force-read as CSV still works.
    const std::string path = write_text(dir, "m.txt", "1,2\n");
    const DenseMatrix m = tnmf::read_matrix(path, MatrixFileFormat::csv);
    CHECK(m(0, 1) == 2.0);
}

TEST_CASE("all formats round-trip bitwise") {
    ScratchDir dir;
    TestRng rng(301);
    DenseMatrix m = rng.matrix(7, 5, -3.0, 3.0);
    m(0, 0) = 0.0;  // exercise the sparse writer's zero skipping
    m(3, 2) = 0.0;
    m(6, 4) = 1.0 / 3.0;

    const struct {
        MatrixFileFormat format;
        const char* name;
    } cases[] = {
        {MatrixFileFormat::csv, "rt.csv"},
        {MatrixFileFormat::matrix_market_array, "rt_array.mtx"},
        {MatrixFileFormat::matrix_market_coordinate, "rt_coord.mtx"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const std::string path = dir.path(c.name);
        tnmf::write_matrix(m, path, c.format);
        const DenseMatrix back = tnmf::read_matrix(path);
        REQUIRE(back.rows() == m.rows());
        REQUIRE(back.cols() == m.cols());
        CHECK(back.values() == m.values());
    }
}

TEST_CASE("vectors read from single-row or single-column files") {
    ScratchDir dir;
    const std::string col = write_text(dir, "col.csv", "1\n2\n3\n");
    CHECK(tnmf::read_vector(col) == std::vector<double>{1.0, 2.0, 3.0});
    const std::string row = write_text(dir, "row.csv", "4,5,6\n");
    CHECK(tnmf::read_vector(row) == std::vector<double>{4.0, 5.0, 6.0});
    const std::string square = write_text(dir, "sq.csv", "1,2\n3,4\n");
    CHECK_THROWS_AS(tnmf::read_vector(square), std::runtime_error);
}

TEST_CASE("write_vector emits one value per line and round-trips") {
    ScratchDir dir;
    const std::string path = dir.path("v.csv");
    const std::vector<double> v{0.1, -2.0, 1.0 / 7.0};
    tnmf::write_vector(v, path);
    CHECK(slurp(path) == "0.10000000000000001\n-2\n0.14285714285714285\n");
    CHECK(tnmf::read_vector(path) == v);
}
