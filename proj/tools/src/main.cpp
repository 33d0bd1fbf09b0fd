#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csv.hpp"
#include "model_json.hpp"
#include "pipeline.hpp"
#include "records.hpp"
#include "qcs/errors.hpp"
#include "qcs/oracle.hpp"

namespace {

using namespace qcs;
using namespace qcs::cli;

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string piece =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (piece.empty())
      throw InvalidArgumentError(std::string("empty entry in ") + what + " list");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw InvalidArgumentError("cannot parse '" + piece + "' in " + what + " list");
    }
    if (used != piece.size())
      throw InvalidArgumentError("cannot parse '" + piece + "' in " + what + " list");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    out.push_back(text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_bandwidth(const std::string& text) {
  if (text == "auto") return 0.0;  // resolved against n inside the pipeline
  const std::vector<double> v = parse_double_list(text, "bandwidth");
  if (v.size() != 1)
    throw InvalidArgumentError("bandwidth must be 'auto' or one number");
  return v[0];
}

std::vector<double> parse_omegas(const std::string& text) {
  if (text == "fourier") return {};
  return parse_double_list(text, "omega");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw InvalidArgumentError("format must be csv or json, got '" + text + "'");
}

struct CommonFlags {
  std::string quantiles = "0.05,0.25,0.5,0.75,0.95";
  std::string kernel = "epanechnikov";
  std::string bandwidth = "auto";
  std::string omegas = "fourier";
  std::string format = "csv";
  double alpha = 0.05;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

int run_analyze(const std::string& input, const std::string& columns,
                const CommonFlags& flags) {
  RunConfig config;
  config.input = input;
  if (!columns.empty()) config.columns = parse_name_list(columns);
  config.quantiles = parse_double_list(flags.quantiles, "quantile");
  config.kernel.name = parse_kernel_name(flags.kernel);
  config.bandwidth = parse_bandwidth(flags.bandwidth);
  config.alpha = flags.alpha;
  config.omegas = parse_omegas(flags.omegas);
  config.out_dir = flags.out;
  config.format = parse_format(flags.format);
  config.seed = flags.seed;
  config.workers = flags.workers;

  const TimeSeriesMatrix X = load_csv(config.input, config.columns);
  const PipelineResult result = run_pipeline(X, config);

  RunMetadata meta;
  meta.n = X.n;
  meta.d = X.d;
  meta.columns = X.names;
  meta.quantiles = config.quantiles;
  meta.kernel = kernel_name(config.kernel.name);
  meta.bandwidth = result.bandwidth;
  meta.alpha = config.alpha;
  meta.seed = config.seed;
  meta.workers = config.workers;
  meta.normalizers = result.spectrum.normalizers;
  meta.command = "analyze";
  write_spectra(result, config.format, config.out_dir, meta);
  const std::size_t rows = 7u * X.d * X.d * config.quantiles.size() *
                           config.quantiles.size() *
                           result.spectrum.eval_omegas.size();
  std::printf("wrote %zu records for n=%zu, d=%zu, K=%zu to %s\n", rows, X.n, X.d,
              config.quantiles.size(), config.out_dir.c_str());
  return 0;
}

int run_simulate(const std::string& model_path, std::size_t n, std::size_t burn_in,
                 std::uint64_t seed, const std::string& out) {
  const ModelSpec model = load_model_json(model_path);
  const TimeSeriesMatrix X = simulate_model(model, n, burn_in, seed);
  write_series_csv(out, X);
  std::printf("wrote %zu x %zu series to %s\n", X.n, X.d, out.c_str());
  return 0;
}

int run_oracle(const std::string& model_path, std::size_t n, const CommonFlags& flags) {
  const ModelSpec model = load_model_json(model_path);
  const GaussianProcessSpec gspec = oracle_spec(model);
  const QuantileSpectrumOracle oracle(gspec);
  const int d = oracle.dimension();
  const QuantileGrid grid = validate_quantile_grid(parse_double_list(flags.quantiles, "quantile"));
  const int K = static_cast<int>(grid.size());

  std::vector<double> omegas = parse_omegas(flags.omegas);
  if (omegas.empty()) {
    if (n < 2) throw InvalidArgumentError("--n must be at least 2 for the Fourier grid");
    const double two_pi = 8.0 * std::atan(1.0);
    for (std::size_t s = 0; s <= n / 2; ++s)
      omegas.push_back(two_pi * static_cast<double>(s) / static_cast<double>(n));
  }

  constexpr Quantity kQuantities[] = {Quantity::f,          Quantity::coherency,
                                      Quantity::coherence,  Quantity::cospectrum,
                                      Quantity::quadrature, Quantity::amplitude,
                                      Quantity::phase};
  RunMetadata meta;
  meta.n = n;
  meta.d = static_cast<std::size_t>(d);
  meta.quantiles = grid.levels;
  meta.kernel = "none";
  meta.bandwidth = 0.0;
  meta.alpha = std::nan("");
  meta.seed = 0;
  meta.workers = 1;
  meta.command = "oracle";

  OutputWriter writer(parse_format(flags.format), flags.out);
  std::size_t rows = 0;
  const double nan = std::nan("");
  const double two_pi = 8.0 * std::atan(1.0);
  for (Quantity q : kQuantities)
    for (int j1 = 0; j1 < d; ++j1)
      for (int j2 = 0; j2 < d; ++j2)
        for (int k1 = 0; k1 < K; ++k1)
          for (int k2 = 0; k2 < K; ++k2)
            for (std::size_t e = 0; e < omegas.size(); ++e) {
              const double tau1 = grid.levels[k1];
              const double tau2 = grid.levels[k2];
              const double w = omegas[e];
              const std::complex<double> f = oracle.at(w, tau1, tau2, j1, j2);
              SpectraRecord r;
              r.omega = w;
              r.freq_cycles = w / two_pi;
              r.tau1 = tau1;
              r.tau2 = tau2;
              r.j1 = j1 + 1;
              r.j2 = j2 + 1;
              r.quantity = q;
              r.ci_lo_re = r.ci_hi_re = r.ci_lo_im = r.ci_hi_im = nan;
              switch (q) {
                case Quantity::f:
                  r.re = f.real();
                  r.im = f.imag();
                  break;
                case Quantity::coherency:
                case Quantity::coherence: {
                  const double f11 = oracle.at(w, tau1, tau1, j1, j1).real();
                  const double f22 = oracle.at(w, tau2, tau2, j2, j2).real();
                  if (!(f11 > 0.0) || !(f22 > 0.0))
                    throw DegenerateDenominatorError(
                        "oracle auto-spectrum is not strictly positive");
                  const std::complex<double> coh = f / std::sqrt(f11 * f22);
                  r.re = q == Quantity::coherency ? coh.real() : std::norm(coh);
                  r.im = q == Quantity::coherency ? coh.imag() : 0.0;
                  break;
                }
                case Quantity::cospectrum:
                  r.re = f.real();
                  break;
                case Quantity::quadrature:
                  r.re = -f.imag();
                  break;
                case Quantity::amplitude:
                  r.re = std::abs(f);
                  break;
                case Quantity::phase:
                  r.re = (f.real() == 0.0 && f.imag() == 0.0)
                             ? 0.0
                             : std::atan2(f.imag(), f.real());
                  break;
              }
              writer.emit(r);
              ++rows;
            }
  writer.finish(meta);
  std::printf("wrote %zu oracle records to %s\n", rows, flags.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantile cross-spectral analysis toolkit"};
  app.require_subcommand(1);

  // analyze
  CLI::App* analyze = app.add_subcommand("analyze", "estimate spectra from a CSV series");
  std::string input, columns;
  CommonFlags aflags;
  analyze->add_option("--input", input, "input CSV with a header row")->required();
  analyze->add_option("--columns", columns, "comma-separated column names (default: all)");
  analyze->add_option("--quantiles", aflags.quantiles, "comma-separated levels in (0,1)");
  analyze->add_option("--kernel", aflags.kernel, "epanechnikov or rectangular");
  analyze->add_option("--bandwidth", aflags.bandwidth, "'auto' (0.4*n^-1/4) or a value in (0,1]");
  analyze->add_option("--alpha", aflags.alpha, "pointwise band level (default 0.05)");
  analyze->add_option("--omegas", aflags.omegas,
                      "'fourier' or a comma-separated list of radians "
                      "(lists skip the confidence bands)");
  analyze->add_option("--format", aflags.format, "csv or json");
  analyze->add_option("--out", aflags.out, "output directory")->required();
  analyze->add_option("--seed", aflags.seed, "recorded in metadata");
  analyze->add_option("--workers", aflags.workers, "worker threads (default 1)");

  // simulate
  CLI::App* simulate = app.add_subcommand("simulate", "draw a series from a model spec");
  std::string model_path, sim_out;
  std::size_t sim_n = 0, burn_in = 1024;
  std::uint64_t sim_seed = 0;
  simulate->add_option("--model", model_path, "model spec JSON")->required();
  simulate->add_option("--n", sim_n, "observations to keep")->required();
  simulate->add_option("--burn-in", burn_in, "discarded warmup draws (default 1024)");
  simulate->add_option("--seed", sim_seed, "stream seed (default 0)");
  simulate->add_option("--out", sim_out, "output CSV path")->required();

  // oracle
  CLI::App* oracle = app.add_subcommand("oracle", "closed-form spectra for a model");
  std::string oracle_model;
  std::size_t oracle_n = 0;
  CommonFlags oflags;
  oracle->add_option("--model", oracle_model, "white_noise or var1 model JSON")->required();
  oracle->add_option("--n", oracle_n, "Fourier grid size when --omegas is 'fourier'");
  oracle->add_option("--quantiles", oflags.quantiles, "comma-separated levels in (0,1)");
  oracle->add_option("--omegas", oflags.omegas, "'fourier' or a list of radians");
  oracle->add_option("--format", oflags.format, "csv or json");
  oracle->add_option("--out", oflags.out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  const std::string which = app.get_subcommands().front()->get_name();
  try {
    if (analyze->parsed()) return run_analyze(input, columns, aflags);
    if (simulate->parsed()) return run_simulate(model_path, sim_n, burn_in, sim_seed, sim_out);
    if (oracle->parsed()) return run_oracle(oracle_model, oracle_n, oflags);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error [%s]: %s\n", which.c_str(), e.what());
    return 1;
  }
  return 0;
}
