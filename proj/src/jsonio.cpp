#include "qdiss/jsonio.hpp"

#include <algorithm>
#include <utility>

#include "qdiss/errors.hpp"

namespace qdiss {

namespace {

std::vector<std::vector<double>> real_part(const ComplexMatrix& m, bool imag) {
  std::vector<std::vector<double>> rows(static_cast<size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto& row = rows[static_cast<size_t>(i)];
    row.resize(static_cast<size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row[static_cast<size_t>(j)] = imag ? m(i, j).imag() : m(i, j).real();
    }
  }
  return rows;
}

// Parse one nested array of numbers with consistent row lengths.
std::vector<std::vector<double>> grid_from_json(const Json& j,
                                                const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw PreconditionError(context + ": expected a nonempty array of rows");
  }
  std::vector<std::vector<double>> grid;
  grid.reserve(j.size());
  for (const Json& row : j) {
    if (!row.is_array() || row.empty()) {
      throw PreconditionError(context + ": rows must be nonempty arrays");
    }
    std::vector<double> out_row;
    out_row.reserve(row.size());
    for (const Json& v : row) {
      if (!v.is_number()) {
        throw PreconditionError(context + ": entries must be numbers");
      }
      out_row.push_back(v.get<double>());
    }
    grid.push_back(std::move(out_row));
    if (grid.back().size() != grid.front().size()) {
      throw PreconditionError(context + ": rows have inconsistent lengths");
    }
  }
  return grid;
}

}  // namespace

void require_known_keys(const Json& j, const std::vector<std::string>& allowed,
                        const std::string& context) {
  if (!j.is_object()) {
    throw PreconditionError(context + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw PreconditionError(context + ": unknown key '" + key + "'");
    }
  }
}

Json matrix_to_json(const ComplexMatrix& m) {
  return Json{{"re", real_part(m, false)}, {"im", real_part(m, true)}};
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& context) {
  require_known_keys(j, {"re", "im"}, context);
  if (!j.contains("re") || !j.contains("im")) {
    throw PreconditionError(context + ": needs both 're' and 'im'");
  }
  const auto re = grid_from_json(j.at("re"), context + ".re");
  const auto im = grid_from_json(j.at("im"), context + ".im");
  if (re.size() != im.size() || re.front().size() != im.front().size()) {
    throw PreconditionError(context + ": 're' and 'im' shapes differ");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(re.size()),
                  static_cast<Eigen::Index>(re.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      m(i, k) = Complex(re[static_cast<size_t>(i)][static_cast<size_t>(k)],
                        im[static_cast<size_t>(i)][static_cast<size_t>(k)]);
    }
  }
  return m;
}

Json vector_to_json(const ComplexVector& v) {
  std::vector<double> re(static_cast<size_t>(v.size()));
  std::vector<double> im(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re[static_cast<size_t>(i)] = v(i).real();
    im[static_cast<size_t>(i)] = v(i).imag();
  }
  return Json{{"re", re}, {"im", im}};
}

ComplexVector vector_from_json(const Json& j, const std::string& context) {
  require_known_keys(j, {"re", "im"}, context);
  if (!j.contains("re") || !j.contains("im")) {
    throw PreconditionError(context + ": needs both 're' and 'im'");
  }
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size() ||
      re.empty()) {
    throw PreconditionError(context +
                            ": 're' and 'im' must be equal-length arrays");
  }
  ComplexVector v(static_cast<Eigen::Index>(re.size()));
  for (size_t i = 0; i < re.size(); ++i) {
    if (!re[i].is_number() || !im[i].is_number()) {
      throw PreconditionError(context + ": entries must be numbers");
    }
    v(static_cast<Eigen::Index>(i)) =
        Complex(re[i].get<double>(), im[i].get<double>());
  }
  return v;
}

namespace {

std::vector<int> dims_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw PreconditionError(context + ": 'dims' must be a nonempty array");
  }
  std::vector<int> dims;
  dims.reserve(j.size());
  for (const Json& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 2) {
      throw PreconditionError(context + ": 'dims' entries must be integers >= 2");
    }
    dims.push_back(v.get<int>());
  }
  return dims;
}

}  // namespace

Json density_to_json(const DensityMatrix& rho) {
  Json j = matrix_to_json(rho.matrix());
  j["dims"] = rho.dims();
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  require_known_keys(j, {"dims", "re", "im"}, "density");
  for (const char* key : {"dims", "re", "im"}) {
    if (!j.contains(key)) {
      throw PreconditionError(std::string("density: missing '") + key + "'");
    }
  }
  std::vector<int> dims = dims_from_json(j.at("dims"), "density");
  ComplexMatrix m =
      matrix_from_json(Json{{"re", j.at("re")}, {"im", j.at("im")}}, "density");
  return DensityMatrix(std::move(m), std::move(dims));
}

ParsedModel model_from_json(const Json& j) {
  require_known_keys(j, {"dims", "hamiltonian", "form", "ops", "coeff", "rates"},
                     "model");
  for (const char* key : {"dims", "hamiltonian", "form", "ops"}) {
    if (!j.contains(key)) {
      throw PreconditionError(std::string("model: missing '") + key + "'");
    }
  }
  std::vector<int> dims = dims_from_json(j.at("dims"), "model");
  ComplexMatrix h = matrix_from_json(j.at("hamiltonian"), "model.hamiltonian");

  if (!j.at("form").is_string()) {
    throw PreconditionError("model: 'form' must be a string");
  }
  const std::string form = j.at("form").get<std::string>();
  if (form != "gks" && form != "diagonal") {
    throw PreconditionError("model: 'form' must be \"gks\" or \"diagonal\"");
  }

  if (!j.at("ops").is_array()) {
    throw PreconditionError("model: 'ops' must be an array");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(j.at("ops").size());
  for (size_t i = 0; i < j.at("ops").size(); ++i) {
    ops.push_back(matrix_from_json(j.at("ops")[i],
                                   "model.ops[" + std::to_string(i) + "]"));
  }

  Eigen::Index prod = 1;
  for (int d : dims) prod *= d;
  if (prod != h.rows()) {
    throw PreconditionError("model: 'dims' product does not match hamiltonian");
  }

  if (form == "gks") {
    if (j.contains("rates")) {
      throw PreconditionError("model: gks form takes 'coeff', not 'rates'");
    }
    if (!j.contains("coeff")) {
      throw PreconditionError("model: gks form needs 'coeff'");
    }
    ComplexMatrix coeff = matrix_from_json(j.at("coeff"), "model.coeff");
    GKSModel gks(std::move(h), std::move(ops), std::move(coeff));
    return ParsedModel{std::move(dims), diagonalize_gks(gks), form};
  }

  if (j.contains("coeff")) {
    throw PreconditionError("model: diagonal form takes 'rates', not 'coeff'");
  }
  if (!j.contains("rates") || !j.at("rates").is_array()) {
    throw PreconditionError("model: diagonal form needs a 'rates' array");
  }
  const Json& rates = j.at("rates");
  if (rates.size() != ops.size()) {
    throw PreconditionError("model: 'rates' and 'ops' lengths differ");
  }
  std::vector<Channel> channels;
  channels.reserve(ops.size());
  for (size_t i = 0; i < ops.size(); ++i) {
    if (!rates[i].is_number()) {
      throw PreconditionError("model: 'rates' entries must be numbers");
    }
    channels.push_back(Channel{rates[i].get<double>(), std::move(ops[i])});
  }
  return ParsedModel{std::move(dims),
                     DiagonalModel(std::move(h), std::move(channels)), form};
}

}  // namespace qdiss
