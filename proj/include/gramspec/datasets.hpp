#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gramspec/matrix.hpp"
#include "gramspec/rng.hpp"

namespace gramspec {

struct Dataset {
  Matrix x;  // d x n, one sample per column
  std::optional<std::vector<int>> labels;
  std::string name;

  index_t dims() const { return x.rows(); }
  index_t samples() const { return x.cols(); }
};

enum class CsvErrorKind { empty_file, ragged_row, bad_cell, io };

class CsvError : public std::runtime_error {
 public:
  CsvError(CsvErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind(kind) {}
  CsvErrorKind kind;
};

namespace detail {

inline bool parse_real(const std::string& cell, real& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(cell, &pos);
    while (pos < cell.size() && (cell[pos] == ' ' || cell[pos] == '\t')) ++pos;
    return pos == cell.size();
  } catch (const std::exception&) {
    return false;
  }
}

inline std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == delim) {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace detail

/// Loads a rectangular numeric CSV, one sample per row; the returned data
/// matrix holds samples as columns. A non-numeric first row is treated as a
/// header. With has_labels the last column is read as integer labels.
inline Dataset load_csv(const std::string& path, bool has_labels = false, char delimiter = ',') {
  std::ifstream in(path);
  if (!in) throw CsvError(CsvErrorKind::io, "load_csv: cannot open '" + path + "'");

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    rows.push_back(detail::split_line(line, delimiter));
  }
  if (rows.empty()) throw CsvError(CsvErrorKind::empty_file, "load_csv: '" + path + "' is empty");

  // header row: any non-numeric cell in the first row
  std::size_t first = 0;
  {
    real tmp;
    bool numeric = true;
    for (const auto& cell : rows[0])
      if (!detail::parse_real(cell, tmp)) numeric = false;
    if (!numeric) first = 1;
  }
  if (first >= rows.size())
    throw CsvError(CsvErrorKind::empty_file, "load_csv: '" + path + "' has a header but no data");

  const std::size_t width = rows[first].size();
  const std::size_t n = rows.size() - first;
  const std::size_t d = has_labels ? width - 1 : width;
  if (has_labels && width < 2)
    throw CsvError(CsvErrorKind::bad_cell, "load_csv: label column requested but file has " +
                                               std::to_string(width) + " column(s)");

  Dataset ds;
  ds.name = path;
  ds.x = Matrix(d, n);
  if (has_labels) ds.labels = std::vector<int>(n);

  for (std::size_t r = 0; r < n; ++r) {
    const auto& cells = rows[first + r];
    if (cells.size() != width)
      throw CsvError(CsvErrorKind::ragged_row,
                     "load_csv: row " + std::to_string(first + r + 1) + " has " +
                         std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(width));
    for (std::size_t c = 0; c < width; ++c) {
      real v;
      if (!detail::parse_real(cells[c], v))
        throw CsvError(CsvErrorKind::bad_cell, "load_csv: non-numeric cell at row " +
                                                   std::to_string(first + r + 1) + ", col " +
                                                   std::to_string(c + 1) + ": '" + cells[c] + "'");
      if (has_labels && c == width - 1)
        (*ds.labels)[r] = static_cast<int>(v);
      else
        ds.x(c, r) = v;
    }
  }
  return ds;
}

/// Banana-shaped sample: (x, y) = (z, z^2 + xi) with z uniform on [-1, 1]
/// and xi Gaussian with standard deviation noise_std. Uses the splitmix64
/// stream (see rng.hpp); per point, one uniform for z then one Box-Muller
/// Gaussian (two uniforms), in that order.
inline Dataset banana(index_t n, real noise_std, std::uint64_t seed) {
  detail::require(n >= 1, "banana: n must be >= 1");
  detail::require(noise_std >= 0.0, "banana: noise_std must be >= 0");
  SplitMix64 rng(seed);
  Dataset ds;
  ds.name = "banana";
  ds.x = Matrix(2, n);
  for (index_t j = 0; j < n; ++j) {
    const real z = 2.0 * rng.next_unit() - 1.0;
    const real xi = noise_std * rng.next_gaussian();
    ds.x(0, j) = z;
    ds.x(1, j) = z * z + xi;
  }
  return ds;
}

namespace detail {

inline std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError(CsvErrorKind::io, "cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char ch;
  while (in.get(ch)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Expected FNV-1a64 checksum of the vendored data/iris.csv asset.
inline constexpr std::uint64_t kIrisChecksum = 0xb0feefa6e95ee074ULL;

/// Loads the vendored iris asset (150 samples, 4 attributes, labels 0/1/2)
/// and verifies its checksum.
inline Dataset load_iris(const std::string& path) {
  if (detail::fnv1a64_file(path) != kIrisChecksum)
    throw CsvError(CsvErrorKind::io, "load_iris: '" + path + "' does not match the vendored asset");
  Dataset ds = load_csv(path, /*has_labels=*/true);
  detail::require(ds.dims() == 4 && ds.samples() == 150, "load_iris: unexpected shape");
  ds.name = "iris";
  return ds;
}

}  // namespace gramspec
