#include "infsup/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "infsup/errors.hpp"
#include "infsup/matrix_market.hpp"

namespace infsup::json_io {

std::string certificate_to_json(const CoercivityCertificate& certificate) {
  const Eigen::MatrixXcd& basis = certificate.projector_basis;
  std::ostringstream mm;
  if (basis.size() > 0 && basis.imag().cwiseAbs().maxCoeff() > 0.0) {
    mm::write_dense(mm, basis);
  } else {
    mm::write_dense(mm, Matrix(basis.real()));
  }
  const nlohmann::ordered_json j{
      {"alpha", certificate.alpha},
      {"theta_star", certificate.theta_star},
      {"rank", certificate.rank},
      {"weight", certificate.weight},
      {"basis", mm.str()},
  };
  return j.dump(2);
}

std::vector<std::pair<int, double>> parse_coefficients(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("coefficient file: ") + e.what());
  }
  if (j.is_object()) {
    INFSUP_THROW_IF(!j.contains("coefficients"), ErrorCode::ParseError,
                    "coefficient object needs a 'coefficients' array");
    j = j.at("coefficients");
  }
  INFSUP_THROW_IF(!j.is_array(), ErrorCode::ParseError, "coefficients must be an array of pairs");
  std::vector<std::pair<int, double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& pair = j[i];
    const bool ok = pair.is_array() && pair.size() == 2 && pair[0].is_number_integer() &&
                    pair[1].is_number();
    INFSUP_THROW_IF(!ok, ErrorCode::ParseError,
                    "coefficient entry " + std::to_string(i) + " is not [integer, number]");
    out.emplace_back(pair[0].get<int>(), pair[1].get<double>());
  }
  return out;
}

std::vector<std::pair<int, double>> read_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  INFSUP_THROW_IF(!in, ErrorCode::IoError, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_coefficients(buffer.str());
}

}  // namespace infsup::json_io
