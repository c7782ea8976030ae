#include "tnmf/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tnmf {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::string trimmed(const std::string& s) {
    std::size_t lo = 0, hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
    return s.substr(lo, hi - lo);
}

double parse_value(const std::string& token, const std::filesystem::path& path,
                   std::size_t line) {
    const std::string t = trimmed(token);
    if (t.empty()) fail(path, line, "empty value");
    const char* begin = t.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + t.size()) fail(path, line, "cannot parse value '" + t + "'");
    if (!std::isfinite(v)) fail(path, line, "non-finite value '" + t + "'");
    return v;
}

std::size_t parse_index(const std::string& token, const std::filesystem::path& path,
                        std::size_t line) {
    const std::string t = trimmed(token);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        fail(path, line, "cannot parse index '" + t + "'");
    return static_cast<std::size_t>(std::strtoull(t.c_str(), nullptr, 10));
}

DenseMatrix read_csv(std::istream& in, const std::filesystem::path& path) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) {
            // A blank final line is tolerated; a blank line amid data is not.
            std::string rest;
            while (std::getline(in, rest))
                if (!trimmed(rest).empty()) fail(path, line_no, "blank line inside data");
            break;
        }
        std::vector<double> row;
        std::stringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(parse_value(cell, path, line_no));
        if (line.back() == ',') fail(path, line_no, "trailing comma");
        if (!rows.empty() && row.size() != rows.front().size())
            fail(path, line_no,
                 "row has " + std::to_string(row.size()) + " cells, expected " +
                     std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(path, line_no, "no data rows");
    DenseMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

// Reads past comment lines (leading '%') and returns the next content line.
bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trimmed(line);
        if (t.empty() || t[0] == '%') continue;
        line = t;
        return true;
    }
    return false;
}

DenseMatrix read_matrix_market(std::istream& in, const std::filesystem::path& path) {
    std::string banner;
    std::size_t line_no = 1;
    if (!std::getline(in, banner)) fail(path, 1, "empty file");
    std::stringstream header(trimmed(banner));
    std::string tag, object, layout, field, symmetry;
    header >> tag >> object >> layout >> field >> symmetry;
    if (tag != "%%MatrixMarket") fail(path, 1, "missing %%MatrixMarket banner");
    if (object != "matrix") fail(path, 1, "unsupported object '" + object + "'");
    if (layout != "array" && layout != "coordinate")
        fail(path, 1, "unsupported layout '" + layout + "'");
    if (field != "real" && field != "integer")
        fail(path, 1, "unsupported field '" + field + "'");
    if (symmetry != "general") fail(path, 1, "unsupported symmetry '" + symmetry + "'");

    std::string line;
    if (!next_content_line(in, line, line_no)) fail(path, line_no, "missing size line");
    std::stringstream size_line(line);
    std::string tok_rows, tok_cols, tok_nnz;
    size_line >> tok_rows >> tok_cols;
    const std::size_t size_line_no = line_no;
    const std::size_t rows = parse_index(tok_rows, path, line_no);
    const std::size_t cols = parse_index(tok_cols, path, line_no);
    if (rows == 0 || cols == 0) fail(path, line_no, "matrix dimensions must be positive");

    DenseMatrix m(rows, cols);
    if (layout == "array") {
        std::string extra;
        if (size_line >> extra) fail(path, size_line_no, "array size line has extra tokens");
        // Array entries run down each column in turn.
        std::size_t count = 0;
        while (next_content_line(in, line, line_no)) {
            std::stringstream values(line);
            std::string tok;
            while (values >> tok) {
                if (count >= rows * cols) fail(path, line_no, "more entries than rows*cols");
                const double v = parse_value(tok, path, line_no);
                m(count % rows, count / rows) = v;
                ++count;
            }
        }
        if (count != rows * cols)
            fail(path, line_no,
                 "expected " + std::to_string(rows * cols) + " entries, found " +
                     std::to_string(count));
    } else {
        size_line >> tok_nnz;
        const std::size_t nnz = parse_index(tok_nnz, path, size_line_no);
        std::string extra;
        if (size_line >> extra) fail(path, size_line_no, "coordinate size line has extra tokens");
        std::size_t count = 0;
        while (next_content_line(in, line, line_no)) {
            std::stringstream entry(line);
            std::string tok_i, tok_j, tok_v, tok_extra;
            entry >> tok_i >> tok_j >> tok_v;
            if (entry >> tok_extra) fail(path, line_no, "entry line has extra tokens");
            if (tok_v.empty()) fail(path, line_no, "entry line needs 'row col value'");
            const std::size_t i = parse_index(tok_i, path, line_no);
            const std::size_t j = parse_index(tok_j, path, line_no);
            if (i < 1 || i > rows || j < 1 || j > cols)
                fail(path, line_no, "entry (" + tok_i + ", " + tok_j + ") outside " +
                                        std::to_string(rows) + "x" + std::to_string(cols));
            m(i - 1, j - 1) = parse_value(tok_v, path, line_no);
            ++count;
        }
        if (count != nnz)
            fail(path, line_no,
                 "size line promised " + std::to_string(nnz) + " entries, found " +
                     std::to_string(count));
    }
    return m;
}

void format_entry(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

DenseMatrix read_matrix(const std::filesystem::path& path,
                        std::optional<MatrixFileFormat> format) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("read_matrix: cannot open " + path.string());

    MatrixFileFormat resolved;
    if (format) {
        resolved = *format;
    } else {
        std::string first;
        std::getline(file, first);
        file.clear();
        file.seekg(0);
        resolved = first.rfind("%%MatrixMarket", 0) == 0
                       ? MatrixFileFormat::matrix_market_array
                       : MatrixFileFormat::csv;
    }
    if (resolved == MatrixFileFormat::csv) return read_csv(file, path);
    return read_matrix_market(file, path);
}

void write_matrix(const DenseMatrix& m, const std::filesystem::path& path,
                  MatrixFileFormat format) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("write_matrix: cannot open " + path.string());
    std::string out;
    switch (format) {
    case MatrixFileFormat::csv:
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (j > 0) out += ',';
                format_entry(out, m(i, j));
            }
            out += '\n';
        }
        break;
    case MatrixFileFormat::matrix_market_array:
        out = "%%MatrixMarket matrix array real general\n";
        out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (std::size_t i = 0; i < m.rows(); ++i) {
                format_entry(out, m(i, j));
                out += '\n';
            }
        break;
    case MatrixFileFormat::matrix_market_coordinate: {
        std::size_t nnz = 0;
        for (double v : m.values())
            if (v != 0.0) ++nnz;
        out = "%%MatrixMarket matrix coordinate real general\n";
        out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " +
               std::to_string(nnz) + "\n";
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0.0) {
                    out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " ";
                    format_entry(out, m(i, j));
                    out += '\n';
                }
        break;
    }
    }
    file << out;
    file.close();
    if (!file) throw std::runtime_error("write_matrix: write failed for " + path.string());
}

std::vector<double> read_vector(const std::filesystem::path& path) {
    const DenseMatrix m = read_matrix(path);
    if (m.rows() != 1 && m.cols() != 1)
        throw std::runtime_error("read_vector: " + path.string() + " holds a " +
                                 std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                 " matrix, expected a single row or column");
    return m.values();
}

void write_vector(const std::vector<double>& v, const std::filesystem::path& path) {
    if (v.empty()) throw std::invalid_argument("write_vector: vector is empty");
    write_matrix(DenseMatrix(v.size(), 1, v), path, MatrixFileFormat::csv);
}

} // namespace tnmf
