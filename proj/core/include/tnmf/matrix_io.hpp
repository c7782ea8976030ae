#ifndef TNMF_MATRIX_IO_HPP
#define TNMF_MATRIX_IO_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "tnmf/dense_matrix.hpp"

namespace tnmf {

enum class MatrixFileFormat { csv, matrix_market_array, matrix_market_coordinate };

/// Reads a dense matrix from disk.  Without an explicit format the file is
/// sniffed: a "%%MatrixMarket" banner selects Matrix Market (array entries
/// are stored column-major, coordinate entries are 1-based with unlisted
/// cells zero), anything else is parsed as comma-separated decimal rows.
/// Malformed content raises std::runtime_error naming the offending line;
/// non-finite values are rejected.
DenseMatrix read_matrix(const std::filesystem::path& path,
                        std::optional<MatrixFileFormat> format = std::nullopt);

/// Writes a matrix with 17 significant digits per entry so a read round-trips
/// to the identical doubles.  Coordinate output lists nonzero cells only.
void write_matrix(const DenseMatrix& m, const std::filesystem::path& path,
                  MatrixFileFormat format = MatrixFileFormat::csv);

/// Reads a file holding a single row or single column and returns it as a
/// flat vector; anything two-dimensional is an error.
std::vector<double> read_vector(const std::filesystem::path& path);

/// Writes one value per line (a single CSV column).
void write_vector(const std::vector<double>& v, const std::filesystem::path& path);

} // namespace tnmf

#endif
