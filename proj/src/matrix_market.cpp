#include "infsup/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace infsup::mm {

namespace {

enum class Layout { Coordinate, Array };
enum class Symmetry { General, Symmetric, SkewSymmetric };

struct Header {
  Layout layout = Layout::Coordinate;
  Symmetry symmetry = Symmetry::General;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Header parse_header(const std::string& line) {
  std::istringstream ss(line);
  std::string banner, object, layout, field, symmetry;
  ss >> banner >> object >> layout >> field >> symmetry;
  INFSUP_THROW_IF(banner != "%%MatrixMarket", ErrorCode::ParseError, "missing %%MatrixMarket banner");
  INFSUP_THROW_IF(lower(object) != "matrix", ErrorCode::ParseError, "only 'matrix' objects supported");
  Header h;
  layout = lower(layout);
  if (layout == "coordinate") {
    h.layout = Layout::Coordinate;
  } else if (layout == "array") {
    h.layout = Layout::Array;
  } else {
    throw Error(ErrorCode::ParseError, "unsupported layout '" + layout + "'");
  }
  field = lower(field);
  INFSUP_THROW_IF(field != "real" && field != "integer" && field != "double", ErrorCode::ParseError,
                  "unsupported field '" + field + "'");
  symmetry = lower(symmetry);
  if (symmetry == "general") {
    h.symmetry = Symmetry::General;
  } else if (symmetry == "symmetric") {
    h.symmetry = Symmetry::Symmetric;
  } else if (symmetry == "skew-symmetric") {
    h.symmetry = Symmetry::SkewSymmetric;
  } else {
    throw Error(ErrorCode::ParseError, "unsupported symmetry '" + symmetry + "'");
  }
  return h;
}

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') {
      continue;
    }
    return true;
  }
  return false;
}

struct Triplets {
  Index rows = 0;
  Index cols = 0;
  std::vector<Eigen::Triplet<double>> entries;
};

Triplets read_triplets(std::istream& in) {
  std::string line;
  INFSUP_THROW_IF(!std::getline(in, line), ErrorCode::ParseError, "empty Matrix Market stream");
  const Header h = parse_header(line);
  INFSUP_THROW_IF(!next_data_line(in, line), ErrorCode::ParseError, "missing size line");
  std::istringstream size_line(line);
  Triplets t;
  auto add = [&](Index i, Index j, double v) {
    t.entries.emplace_back(i, j, v);
    if (i != j && h.symmetry == Symmetry::Symmetric) {
      t.entries.emplace_back(j, i, v);
    } else if (h.symmetry == Symmetry::SkewSymmetric) {
      INFSUP_THROW_IF(i == j, ErrorCode::ParseError, "skew-symmetric diagonal entry");
      t.entries.emplace_back(j, i, -v);
    }
  };
  if (h.layout == Layout::Coordinate) {
    long long nnz = 0;
    INFSUP_THROW_IF(!(size_line >> t.rows >> t.cols >> nnz), ErrorCode::ParseError, "bad size line");
    for (long long k = 0; k < nnz; ++k) {
      INFSUP_THROW_IF(!next_data_line(in, line), ErrorCode::ParseError,
                      "expected " + std::to_string(nnz) + " entries, got " + std::to_string(k));
      std::istringstream ss(line);
      Index i = 0, j = 0;
      double v = 0.0;
      INFSUP_THROW_IF(!(ss >> i >> j >> v), ErrorCode::ParseError, "bad entry line: " + line);
      INFSUP_THROW_IF(i < 1 || j < 1 || i > t.rows || j > t.cols, ErrorCode::ParseError,
                      "entry index out of range: " + line);
      add(i - 1, j - 1, v);
    }
  } else {
    INFSUP_THROW_IF(!(size_line >> t.rows >> t.cols), ErrorCode::ParseError, "bad size line");
    // Column-major; symmetric variants store the lower triangle only.
    for (Index j = 0; j < t.cols; ++j) {
      const Index first_row =
          h.symmetry == Symmetry::General ? 0 : (h.symmetry == Symmetry::Symmetric ? j : j + 1);
      for (Index i = first_row; i < t.rows; ++i) {
        INFSUP_THROW_IF(!next_data_line(in, line), ErrorCode::ParseError, "truncated array data");
        std::istringstream ss(line);
        double v = 0.0;
        INFSUP_THROW_IF(!(ss >> v), ErrorCode::ParseError, "bad value line: " + line);
        add(i, j, v);
      }
    }
  }
  return t;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  INFSUP_THROW_IF(!in, ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return in;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Matrix read_dense(std::istream& in) {
  const Triplets t = read_triplets(in);
  Matrix m = Matrix::Zero(t.rows, t.cols);
  for (const auto& e : t.entries) {
    m(e.row(), e.col()) += e.value();
  }
  return m;
}

Matrix read_dense(const std::filesystem::path& path) {
  auto in = open(path);
  return read_dense(in);
}

SparseMatrix read_sparse(std::istream& in) {
  const Triplets t = read_triplets(in);
  SparseMatrix m(t.rows, t.cols);
  m.setFromTriplets(t.entries.begin(), t.entries.end());
  return m;
}

SparseMatrix read_sparse(const std::filesystem::path& path) {
  auto in = open(path);
  return read_sparse(in);
}

void write_dense(std::ostream& out, const Matrix& m) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      out << format_value(m(i, j)) << '\n';
    }
  }
}

void write_dense(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  INFSUP_THROW_IF(!out, ErrorCode::IoError, "cannot write '" + path.string() + "'");
  write_dense(out, m);
}

void write_dense(std::ostream& out, const Eigen::MatrixXcd& m) {
  out << "%%MatrixMarket matrix array complex general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      out << format_value(m(i, j).real()) << ' ' << format_value(m(i, j).imag()) << '\n';
    }
  }
}

}  // namespace infsup::mm
