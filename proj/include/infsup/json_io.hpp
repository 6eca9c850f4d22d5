#pragma once

// JSON serialization of certificates and coefficient input files.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "infsup/coercivity.hpp"

namespace infsup::json_io {

/// {"alpha", "theta_star", "rank", "weight", "basis"} with the projector basis
/// embedded as Matrix Market text (complex array when the basis is complex).
std::string certificate_to_json(const CoercivityCertificate& certificate);

/// Reads [[index, coefficient], ...] or {"coefficients": [[index, coefficient], ...]}.
/// Throws ParseError on malformed content and IoError if the file cannot be read.
std::vector<std::pair<int, double>> read_coefficients(const std::filesystem::path& path);
std::vector<std::pair<int, double>> parse_coefficients(const std::string& text);

}  // namespace infsup::json_io
