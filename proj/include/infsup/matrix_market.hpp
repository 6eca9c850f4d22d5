#pragma once

// Matrix Market reader/writer. Reads `coordinate` and `array` layouts with
// `real` or `integer` fields and `general`, `symmetric` or `skew-symmetric`
// symmetry. Writes dense matrices as `array real general`.

#include <complex>
#include <filesystem>
#include <iosfwd>

#include "infsup/linalg.hpp"

namespace infsup::mm {

Matrix read_dense(std::istream& in);
Matrix read_dense(const std::filesystem::path& path);

SparseMatrix read_sparse(std::istream& in);
SparseMatrix read_sparse(const std::filesystem::path& path);

void write_dense(std::ostream& out, const Matrix& m);
void write_dense(const std::filesystem::path& path, const Matrix& m);

/// `array complex general`; used for projector bases from complex-mode certificates.
void write_dense(std::ostream& out, const Eigen::MatrixXcd& m);

}  // namespace infsup::mm
