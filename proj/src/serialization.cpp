#include "blockspec/serialization.hpp"

#include <cmath>
#include <limits>

namespace blockspec {

namespace {

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw DomainError("symbol document: complex entries must be [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json complex_to_json(const Complex& c) {
  return Json::array({c.real(), c.imag()});
}

MatrixSymbol load_explicit_symbol(const Json& doc) {
  const auto& dims = doc.at("dims");
  const auto& blocks = doc.at("blocks");
  if (!dims.is_array() || !blocks.is_array() || dims.size() != blocks.size())
    throw DomainError(
        "symbol document: dims and blocks must be arrays of equal length");

  std::vector<Matrix> mats;
  mats.reserve(blocks.size());
  for (size_t l = 0; l < blocks.size(); ++l) {
    const Index d = dims[l].get<Index>();
    if (d < 1) throw DomainError("symbol document: block dimension < 1");
    const auto& entries = blocks[l];
    if (!entries.is_array() ||
        static_cast<Index>(entries.size()) != d * d)
      throw DomainError("symbol document: block " + std::to_string(l) +
                        " must hold " + std::to_string(d * d) +
                        " row-major entries");
    Matrix m(d, d);
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c)
        m(r, c) = complex_from_json(entries[static_cast<size_t>(r * d + c)]);
    mats.push_back(std::move(m));
  }

  std::vector<std::int64_t> mult;
  if (doc.contains("multiplicity")) {
    for (const auto& m : doc.at("multiplicity"))
      mult.push_back(m.get<std::int64_t>());
  }
  return MatrixSymbol::from_blocks(std::move(mats), std::move(mult));
}

MultiplierBeta beta_from_params(const Json& params) {
  if (params.contains("table")) {
    std::map<long, double> table;
    for (const auto& [key, value] : params.at("table").items())
      table[std::stol(key)] = value.get<double>();
    return MultiplierBeta::finite_table(std::move(table));
  }
  const std::string family = params.value("family", "inv-sqrt-quadratic");
  if (family == "inv-sqrt-quadratic") return MultiplierBeta::inverse_power(1.0);
  if (family == "inv-power")
    return MultiplierBeta::inverse_power(params.at("s").get<double>());
  throw DomainError("torus-multiplier: unknown beta family '" + family + "'");
}

MatrixSymbol load_generator_symbol(const Json& doc) {
  const std::string name = doc.at("generator").get<std::string>();
  const Json params = doc.value("params", Json::object());
  if (name == "su2-laplacian")
    return su2_laplacian_power_symbol(params.at("alpha").get<double>());
  if (name == "so3-schrodinger")
    return so3_schrodinger_symbol(params.at("gamma").get<double>());
  if (name == "torus-multiplier") {
    const int n = params.value("n", 1);
    const long radius = params.at("radius").get<long>();
    const MultiplierBeta beta = beta_from_params(params);
    return torus_multiplier_symbol(
        [beta](const std::vector<long>& j) {
          double norm2 = 0.0;
          for (long c : j) norm2 += static_cast<double>(c) * c;
          if (j.size() == 1 && !beta.is_inverse_power())
            return Complex(beta(j[0]), 0.0);
          // Inverse-power families extend to n dimensions through |j|^2;
          // tables are one-dimensional.
          if (!beta.is_inverse_power())
            throw DomainError("torus-multiplier: tables require n = 1");
          return Complex(std::pow(1.0 + norm2, -0.5 * beta.exponent()), 0.0);
        },
        n, radius);
  }
  throw DomainError("unknown generator '" + name + "'");
}

}  // namespace

MatrixSymbol load_symbol(const Json& doc) {
  if (doc.contains("generator")) return load_generator_symbol(doc);
  if (doc.contains("dims")) return load_explicit_symbol(doc);
  throw DomainError(
      "symbol document: expected either a generator form or an explicit "
      "dims/blocks form");
}

Json save_symbol(const MatrixSymbol& s) {
  const auto* blocks = s.explicit_blocks();
  if (!blocks)
    throw DomainError(
        "save_symbol: only explicit symbols (stored blocks) can be saved");
  Json dims = Json::array();
  Json blocks_json = Json::array();
  for (const auto& m : *blocks) {
    dims.push_back(m.rows());
    Json entries = Json::array();
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c)
        entries.push_back(complex_to_json(m(r, c)));
    blocks_json.push_back(std::move(entries));
  }
  Json doc;
  doc["dims"] = std::move(dims);
  doc["blocks"] = std::move(blocks_json);
  const auto* mult = s.explicit_multiplicities();
  if (mult && !mult->empty()) doc["multiplicity"] = *mult;
  return doc;
}

TensorSymbol load_tensor_symbol(const Json& doc) {
  if (!doc.is_array())
    throw DomainError("tensor symbol document: expected an array of factors");
  std::vector<MatrixSymbol> factors;
  factors.reserve(doc.size());
  for (const auto& f : doc) factors.push_back(load_symbol(f));
  return tensor_symbols(std::move(factors));
}

Json to_json(const SchattenEstimate& e) {
  Json j;
  if (std::isfinite(e.p))
    j["p"] = e.p;
  else
    j["p"] = "inf";
  j["value"] = e.value;
  j["blocks_used"] = e.blocks_used;
  j["last_increment"] = e.last_increment;
  j["converged"] = e.converged;
  return j;
}

Json to_json(const TraceEstimate& e) {
  Json j;
  j["value"] = complex_to_json(e.value);
  j["blocks_used"] = e.blocks_used;
  j["last_increment"] = e.last_increment;
  j["converged"] = e.converged;
  return j;
}

Json to_json(const TensorSchattenEstimate& e) {
  Json j;
  j["combined"] = to_json(e.combined);
  Json factors = Json::array();
  for (const auto& f : e.factors) factors.push_back(to_json(f));
  j["factors"] = std::move(factors);
  return j;
}

Json to_json(const DixmierEstimate& e) {
  Json j;
  j["limit_value"] = e.limit_value;
  j["p_grid"] = e.p_grid;
  j["g_values"] = e.g_values;
  j["h_values"] = e.h_values;
  j["extrapolation_residual"] = e.extrapolation_residual;
  j["bound_check"] = e.bound_check;
  j["converged"] = e.converged;
  j["max_skew_fraction"] = e.max_skew_fraction;
  j["skew_warning"] = e.skew_warning;
  return j;
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["stabilizes"] = r.stabilizes;
  j["p_grid"] = r.p_grid;
  j["h_values"] = r.h_values;
  j["scale"] = r.scale;
  return j;
}

Json to_json(const DecayCheck& c) {
  Json j;
  j["fitted_slope"] = c.fitted_slope;
  j["half_width"] = c.half_width;
  j["threshold_slope"] = c.threshold_slope;
  j["mu_threshold"] = c.mu_threshold;
  j["pass"] = c.pass;
  return j;
}

MultiplierBeta parse_beta(const std::string& text) {
  if (text == "inv-sqrt-quadratic") return MultiplierBeta::inverse_power(1.0);
  if (text.rfind("inv-power:", 0) == 0) {
    const double s = std::stod(text.substr(std::string("inv-power:").size()));
    return MultiplierBeta::inverse_power(s);
  }
  if (!text.empty() && text.front() == '{') {
    const Json doc = Json::parse(text);
    std::map<long, double> table;
    for (const auto& [key, value] : doc.items())
      table[std::stol(key)] = value.get<double>();
    return MultiplierBeta::finite_table(std::move(table));
  }
  throw DomainError(
      "beta: expected 'inv-sqrt-quadratic', 'inv-power:<s>' or an inline "
      "JSON table");
}

TrigPolynomial parse_a_hat(const Json& doc) {
  if (!doc.is_object())
    throw DomainError("a_hat: expected an object of frequency -> [re, im]");
  std::map<long, Complex> coeff;
  for (const auto& [key, value] : doc.items())
    coeff[std::stol(key)] = complex_from_json(value);
  return TrigPolynomial(std::move(coeff));
}

}  // namespace blockspec
