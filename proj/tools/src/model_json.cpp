#include "model_json.hpp"

#include <fstream>

#include <json.hpp>

#include "qcs/errors.hpp"

namespace qcs::cli {

namespace {

using nlohmann::json;

CoeffForm parse_form(const std::string& name) {
  if (name == "constant") return CoeffForm::constant;
  if (name == "linear") return CoeffForm::linear;
  if (name == "normal_quantile") return CoeffForm::normal_quantile;
  throw InvalidArgumentError("unknown coefficient form '" + name + "'");
}

CoeffFunc parse_coeff(const json& entry) {
  const CoeffForm form = parse_form(entry.at("form").get<std::string>());
  std::vector<double> params;
  if (entry.contains("params")) params = entry.at("params").get<std::vector<double>>();
  switch (form) {
    case CoeffForm::constant:
      if (params.size() != 1)
        throw InvalidArgumentError("constant form takes exactly one parameter");
      return CoeffFunc::constant(params[0]);
    case CoeffForm::linear:
      if (params.size() != 2)
        throw InvalidArgumentError("linear form takes exactly two parameters");
      return CoeffFunc::linear(params[0], params[1]);
    case CoeffForm::normal_quantile:
      if (!params.empty())
        throw InvalidArgumentError("normal_quantile form takes no parameters");
      return CoeffFunc::normal_quantile();
  }
  throw InvalidArgumentError("unreachable coefficient form");
}

ModelSpec parse_qvar(const json& j) {
  ModelSpec m;
  m.type = ModelSpec::Type::qvar;
  const int p = j.at("p").get<int>();
  const int d = j.at("d").get<int>();
  if (p < 1 || d < 1) throw InvalidArgumentError("qvar model needs p >= 1 and d >= 1");
  m.qvar.p = p;
  m.qvar.d = d;
  m.qvar.coeff.assign(static_cast<std::size_t>(p),
                      std::vector<CoeffFunc>(static_cast<std::size_t>(d * d),
                                             CoeffFunc::constant(0.0)));
  m.qvar.intercept.assign(static_cast<std::size_t>(d), CoeffFunc::constant(0.0));
  if (j.contains("coeff"))
    for (const json& entry : j.at("coeff")) {
      const int lag = entry.at("lag").get<int>();
      const int row = entry.at("row").get<int>();
      const int col = entry.at("col").get<int>();
      if (lag < 1 || lag > p || row < 0 || row >= d || col < 0 || col >= d)
        throw InvalidArgumentError("coeff entry out of range (lag " + std::to_string(lag) +
                                   ", row " + std::to_string(row) + ", col " +
                                   std::to_string(col) + ")");
      m.qvar.coeff[static_cast<std::size_t>(lag - 1)]
                  [static_cast<std::size_t>(row * d + col)] = parse_coeff(entry);
    }
  if (j.contains("intercept"))
    for (const json& entry : j.at("intercept")) {
      const int row = entry.at("row").get<int>();
      if (row < 0 || row >= d)
        throw InvalidArgumentError("intercept row " + std::to_string(row) + " out of range");
      m.qvar.intercept[static_cast<std::size_t>(row)] = parse_coeff(entry);
    }
  return m;
}

ModelSpec parse_var1(const json& j) {
  ModelSpec m;
  m.type = ModelSpec::Type::var1;
  const auto rows = j.at("A").get<std::vector<std::vector<double>>>();
  if (rows.empty()) throw InvalidArgumentError("var1 matrix A is empty");
  const std::size_t d = rows.size();
  RealMatrix A(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (rows[r].size() != d)
      throw InvalidArgumentError("var1 matrix A must be square");
    for (std::size_t c = 0; c < d; ++c) A(r, c) = rows[r][c];
  }
  m.var1.A = A;
  return m;
}

ToyKind parse_toy_kind(const std::string& kind) {
  if (kind == "eps_square_now") return ToyKind::eps_square_now;
  if (kind == "eps_square_lag1") return ToyKind::eps_square_lag1;
  if (kind == "independent_noise") return ToyKind::independent_noise;
  throw InvalidArgumentError("unknown toy kind '" + kind + "'");
}

}  // namespace

ModelSpec load_model_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidDataError("cannot open model file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidDataError("model file '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "qvar") return parse_qvar(j);
    if (type == "var1") return parse_var1(j);
    if (type == "toy") {
      ModelSpec m;
      m.type = ModelSpec::Type::toy;
      m.toy = parse_toy_kind(j.at("kind").get<std::string>());
      return m;
    }
    if (type == "white_noise") {
      ModelSpec m;
      m.type = ModelSpec::Type::white_noise;
      m.rho = j.at("rho").get<double>();
      return m;
    }
    throw InvalidArgumentError("unknown model type '" + type + "'");
  } catch (const json::exception& e) {
    throw InvalidDataError("model file '" + path + "' is malformed: " + e.what());
  }
}

TimeSeriesMatrix simulate_model(const ModelSpec& model, std::size_t n,
                                std::size_t burn_in, std::uint64_t seed) {
  switch (model.type) {
    case ModelSpec::Type::qvar:
      return simulate_qvar(model.qvar, n, burn_in, seed);
    case ModelSpec::Type::var1:
      return simulate_var1(model.var1, n, burn_in, seed);
    case ModelSpec::Type::toy:
      return simulate_toy(model.toy, n, seed);
    case ModelSpec::Type::white_noise:
      return simulate_white_noise(model.rho, n, seed);
  }
  throw InvalidArgumentError("unreachable model type");
}

GaussianProcessSpec oracle_spec(const ModelSpec& model) {
  switch (model.type) {
    case ModelSpec::Type::white_noise:
      return GaussianProcessSpec::white_noise(model.rho);
    case ModelSpec::Type::var1:
      return GaussianProcessSpec::var1(model.var1.A);
    default:
      throw InvalidArgumentError(
          "closed-form spectra exist only for white_noise and var1 models");
  }
}

}  // namespace qcs::cli
