#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "csv.hpp"
#include "json.hpp"
#include "model_json.hpp"
#include "pipeline.hpp"
#include "qcs/errors.hpp"
#include "records.hpp"
#include "test_util.hpp"

using namespace qcs;
using namespace qcs::cli;
namespace fs = std::filesystem;

namespace {

fs::path unique_dir(const std::string& tag) {
  const auto p = fs::path(::testing::TempDir()) / ("qcs_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunMetadata tiny_meta(const PipelineResult& r, std::size_t n, std::size_t d) {
  RunMetadata m;
  m.n = n;
  m.d = d;
  m.quantiles = r.spectrum.levels;
  m.kernel = "epanechnikov";
  m.bandwidth = r.bandwidth;
  m.alpha = 0.05;
  m.normalizers = r.spectrum.normalizers;
  m.command = "analyze";
  return m;
}

}  // namespace

TEST(Csv, WriteThenLoadRoundTripsExactly) {
  const auto dir = unique_dir("csv_roundtrip");
  const auto X = qcs::test::coupled_var1(37, 81);
  const auto path = (dir / "x.csv").string();
  write_series_csv(path, X);
  const auto Y = load_csv(path);
  ASSERT_EQ(Y.n, X.n);
  ASSERT_EQ(Y.d, X.d);
  EXPECT_EQ(Y.names, X.names);
  EXPECT_EQ(Y.values, X.values);  // %.17g round-trips doubles exactly
}

TEST(Csv, SelectsByNameAndOneBasedIndex) {
  const auto dir = unique_dir("csv_select");
  const auto path = (dir / "x.csv").string();
  qcs::test::write_file(path, "a,b,c\n1,2,3\n4,5,6\n");
  const auto by_name = load_csv(path, {"c", "a"});
  ASSERT_EQ(by_name.d, 2u);
  EXPECT_EQ(by_name.names, (std::vector<std::string>{"c", "a"}));
  EXPECT_EQ(by_name.at(0, 0), 3.0);
  EXPECT_EQ(by_name.at(1, 1), 4.0);
  const auto by_index = load_csv(path, {"2"});
  ASSERT_EQ(by_index.d, 1u);
  EXPECT_EQ(by_index.names[0], "b");
  EXPECT_EQ(by_index.at(1, 0), 5.0);
}

TEST(Csv, HandlesCrlfAndPadding) {
  const auto dir = unique_dir("csv_crlf");
  const auto path = (dir / "x.csv").string();
  qcs::test::write_file(path, "a, b\r\n 1 ,2\r\n3, 4 \r\n");
  const auto X = load_csv(path);
  EXPECT_EQ(X.names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(X.at(0, 1), 2.0);
  EXPECT_EQ(X.at(1, 0), 3.0);
}

TEST(Csv, RejectsBadContentWithLocation) {
  const auto dir = unique_dir("csv_bad");
  const auto write = [&](const std::string& name, const std::string& body) {
    return qcs::test::write_file((dir / name).string(), body).string();
  };
  EXPECT_THROW(load_csv(write("miss.csv", "a\n1\n2\n"), {"zz"}),
               InvalidDataError);
  EXPECT_THROW(load_csv(write("text.csv", "a\n1\nfoo\n")), InvalidDataError);
  EXPECT_THROW(load_csv(write("nan.csv", "a\n1\nNaN\n")), InvalidDataError);
  EXPECT_THROW(load_csv(write("empty_cell.csv", "a,b\n1,\n2,3\n")),
               InvalidDataError);
  EXPECT_THROW(load_csv(write("ragged.csv", "a,b\n1,2\n3\n")),
               InvalidDataError);
  EXPECT_THROW(load_csv(write("short.csv", "a\n1\n")), InvalidArgumentError);
  EXPECT_THROW(load_csv((dir / "absent.csv").string()), InvalidDataError);
  try {
    load_csv(write("loc.csv", "head\n1\nbad\n"));
    FAIL() << "expected InvalidDataError";
  } catch (const InvalidDataError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("row 2"), std::string::npos);
    EXPECT_NE(what.find("head"), std::string::npos);
  }
}

TEST(ModelJson, ParsesEveryModelShape) {
  const auto dir = unique_dir("model_json");
  const auto write = [&](const std::string& name, const std::string& body) {
    return qcs::test::write_file((dir / name).string(), body).string();
  };

  const auto qvar = load_model_json(write("qvar.json", R"({
    "type": "qvar", "p": 1, "d": 2,
    "coeff": [
      {"lag": 1, "row": 0, "col": 1, "form": "linear", "params": [0, 1.2]},
      {"lag": 1, "row": 1, "col": 0, "form": "linear", "params": [0, 1.2]}
    ],
    "intercept": [
      {"row": 0, "form": "normal_quantile"},
      {"row": 1, "form": "normal_quantile"}
    ]})"));
  ASSERT_EQ(qvar.type, ModelSpec::Type::qvar);
  EXPECT_EQ(qvar.qvar.p, 1);
  EXPECT_EQ(qvar.qvar.d, 2);
  EXPECT_EQ(qvar.qvar.coeff[0][1].form, CoeffForm::linear);
  EXPECT_EQ(qvar.qvar.coeff[0][1].b, 1.2);
  EXPECT_EQ(qvar.qvar.coeff[0][0].form, CoeffForm::constant);  // omitted
  EXPECT_EQ(qvar.qvar.coeff[0][0].a, 0.0);
  EXPECT_EQ(qvar.qvar.intercept[1].form, CoeffForm::normal_quantile);

  const auto var1 =
      load_model_json(write("var1.json", R"({"type":"var1","A":[[0,0.5],[0.5,0]]})"));
  ASSERT_EQ(var1.type, ModelSpec::Type::var1);
  EXPECT_EQ(var1.var1.A(0, 1), 0.5);

  const auto toy = load_model_json(
      write("toy.json", R"({"type":"toy","kind":"eps_square_lag1"})"));
  ASSERT_EQ(toy.type, ModelSpec::Type::toy);
  EXPECT_EQ(toy.toy, ToyKind::eps_square_lag1);

  const auto wn = load_model_json(
      write("wn.json", R"({"type":"white_noise","rho":0.6})"));
  ASSERT_EQ(wn.type, ModelSpec::Type::white_noise);
  EXPECT_EQ(wn.rho, 0.6);
}

TEST(ModelJson, RejectsMalformedSpecs) {
  const auto dir = unique_dir("model_json_bad");
  const auto write = [&](const std::string& name, const std::string& body) {
    return qcs::test::write_file((dir / name).string(), body).string();
  };
  EXPECT_THROW(load_model_json(write("syntax.json", "{not json")),
               InvalidDataError);
  EXPECT_THROW(load_model_json(write("type.json", R"({"type":"garch"})")),
               InvalidArgumentError);
  EXPECT_THROW(load_model_json(write("kind.json",
                                     R"({"type":"toy","kind":"quux"})")),
               InvalidArgumentError);
  EXPECT_THROW(
      load_model_json(write("range.json", R"({
        "type":"qvar","p":1,"d":2,
        "coeff":[{"lag":2,"row":0,"col":0,"form":"constant","params":[0.1]}],
        "intercept":[{"row":0,"form":"constant","params":[0]},
                     {"row":1,"form":"constant","params":[0]}]})")),
      InvalidArgumentError);
  EXPECT_THROW(
      load_model_json(write("ragged.json", R"({"type":"var1","A":[[0,0.5],[0.5]]})")),
      InvalidArgumentError);
  EXPECT_THROW(load_model_json((dir / "absent.json").string()), InvalidDataError);
}

TEST(ModelJson, SimulateAndOracleDispatch) {
  ModelSpec wn;
  wn.type = ModelSpec::Type::white_noise;
  wn.rho = 0.4;
  const auto X = simulate_model(wn, 128, 64, 5);
  EXPECT_EQ(X.n, 128u);
  EXPECT_EQ(X.d, 2u);
  const auto spec = oracle_spec(wn);
  EXPECT_EQ(spec.kind, GaussianProcessSpec::Kind::white_noise);
  EXPECT_EQ(spec.rho, 0.4);

  ModelSpec toy;
  toy.type = ModelSpec::Type::toy;
  toy.toy = ToyKind::independent_noise;
  EXPECT_THROW(oracle_spec(toy), InvalidArgumentError);
}

TEST(Pipeline, ValidatesConfigurationUpFront) {
  const auto X = qcs::test::coupled_var1(32, 82);
  RunConfig cfg;
  cfg.quantiles = {0.0, 0.5};
  EXPECT_THROW(run_pipeline(X, cfg), BoundaryQuantileError);
  cfg = RunConfig{};
  cfg.alpha = 1.0;
  EXPECT_THROW(run_pipeline(X, cfg), InvalidLevelError);
  cfg = RunConfig{};
  cfg.workers = 0;
  EXPECT_THROW(run_pipeline(X, cfg), InvalidArgumentError);
  cfg = RunConfig{};
  cfg.bandwidth = 1.5;
  EXPECT_THROW(run_pipeline(X, cfg), BandwidthError);
}

TEST(Pipeline, FourierRunCarriesBandsAndResolvedBandwidth) {
  const auto X = qcs::test::coupled_var1(64, 83);
  RunConfig cfg;
  cfg.quantiles = {0.25, 0.75};
  const auto r = run_pipeline(X, cfg);
  EXPECT_TRUE(r.has_bands);
  EXPECT_TRUE(r.spectrum.fourier_half);
  EXPECT_DOUBLE_EQ(r.bandwidth, default_bandwidth(64));
  EXPECT_EQ(r.spectrum.eval_omegas.size(), 33u);
  EXPECT_TRUE(r.decomposition.normalized);
  EXPECT_EQ(r.bands.spectrum.ns, 33u);
}

TEST(Pipeline, CustomFrequenciesSkipTheBands) {
  const auto X = qcs::test::coupled_var1(64, 84);
  RunConfig cfg;
  cfg.quantiles = {0.5};
  cfg.omegas = {0.3, 1.0};
  const auto r = run_pipeline(X, cfg);
  EXPECT_FALSE(r.has_bands);
  EXPECT_EQ(r.spectrum.eval_omegas, cfg.omegas);
  std::size_t count = 0;
  bool all_ci_nan = true;
  for_each_record(r, [&](const SpectraRecord& rec) {
    ++count;
    all_ci_nan = all_ci_nan && std::isnan(rec.ci_lo_re) &&
                 std::isnan(rec.ci_hi_re) && std::isnan(rec.ci_lo_im) &&
                 std::isnan(rec.ci_hi_im);
  });
  EXPECT_EQ(count, 7u * 4u * 1u * 2u);  // quantities * d^2 * K^2 * omegas
  EXPECT_TRUE(all_ci_nan);
}

TEST(Pipeline, SingleComponentRunsEndToEnd) {
  const auto base = qcs::test::coupled_var1(64, 85);
  std::vector<double> col(base.n);
  for (std::size_t t = 0; t < base.n; ++t) col[t] = base.at(t, 0);
  const auto X = make_time_series(base.n, 1, std::move(col), {"solo"});
  RunConfig cfg;
  cfg.quantiles = {0.25, 0.75};
  const auto r = run_pipeline(X, cfg);
  EXPECT_EQ(r.spectrum.d, 1);
  EXPECT_EQ(r.coherency.value(0, 0, 0, 0, 5), std::complex<double>(1.0, 0.0));
  std::size_t count = 0;
  for_each_record(r, [&](const SpectraRecord& rec) {
    ++count;
    EXPECT_EQ(rec.j1, 1);
    EXPECT_EQ(rec.j2, 1);
  });
  EXPECT_EQ(count, 7u * 1u * 4u * 33u);
}

TEST(Records, FullProductInDeclaredOrder) {
  const auto X = qcs::test::coupled_var1(16, 86);
  RunConfig cfg;
  cfg.quantiles = {0.25, 0.75};
  const auto r = run_pipeline(X, cfg);
  const auto rows = make_records(r);
  ASSERT_EQ(rows.size(), 7u * 4u * 4u * 9u);
  EXPECT_EQ(rows[0].quantity, Quantity::f);
  EXPECT_EQ(rows[0].j1, 1);
  EXPECT_EQ(rows[0].j2, 1);
  EXPECT_EQ(rows[0].tau1, 0.25);
  EXPECT_EQ(rows[0].tau2, 0.25);
  EXPECT_EQ(rows[0].omega, 0.0);
  EXPECT_DOUBLE_EQ(rows[1].omega, 2.0 * qcs::test::kPi / 16.0);
  EXPECT_EQ(rows.back().quantity, Quantity::phase);
  // Quantity blocks appear in enum order, each of equal size.
  const std::size_t block = 4 * 4 * 9;
  for (std::size_t q = 0; q < 7; ++q)
    for (std::size_t i = 0; i < block; ++i)
      EXPECT_EQ(rows[q * block + i].quantity, static_cast<Quantity>(q));
  // freq_cycles is omega over a full turn.
  for (const auto& rec : rows)
    EXPECT_DOUBLE_EQ(rec.freq_cycles, rec.omega / (2.0 * qcs::test::kPi));
}

TEST(Records, HermitianRedundancyIsExactAcrossSwappedRows) {
  const auto X = qcs::test::coupled_var1(32, 87);
  RunConfig cfg;
  cfg.quantiles = {0.25, 0.75};
  const auto r = run_pipeline(X, cfg);
  using Key = std::tuple<int, int, double, double, double>;
  std::map<Key, SpectraRecord> f_rows, coh_rows, quad_rows;
  for_each_record(r, [&](const SpectraRecord& rec) {
    const Key key{rec.j1, rec.j2, rec.tau1, rec.tau2, rec.omega};
    if (rec.quantity == Quantity::f) f_rows[key] = rec;
    if (rec.quantity == Quantity::coherency) coh_rows[key] = rec;
    if (rec.quantity == Quantity::quadrature) quad_rows[key] = rec;
  });
  for (const auto& [key, rec] : f_rows) {
    const Key swapped{std::get<1>(key), std::get<0>(key), std::get<3>(key),
                      std::get<2>(key), std::get<4>(key)};
    const auto& mirror = f_rows.at(swapped);
    EXPECT_EQ(rec.re, mirror.re);
    EXPECT_EQ(rec.im, -mirror.im);
    EXPECT_EQ(rec.ci_lo_re, mirror.ci_lo_re);
    EXPECT_EQ(rec.ci_hi_re, mirror.ci_hi_re);
    EXPECT_EQ(rec.ci_lo_im, -mirror.ci_hi_im);
    EXPECT_EQ(rec.ci_hi_im, -mirror.ci_lo_im);
    // Quadrature is the negated imaginary part with the reflected band.
    const auto& quad = quad_rows.at(key);
    EXPECT_EQ(quad.re, -rec.im);
    EXPECT_EQ(quad.im, 0.0);
    EXPECT_EQ(quad.ci_lo_re, -rec.ci_hi_im);
    EXPECT_EQ(quad.ci_hi_re, -rec.ci_lo_im);
  }
  for (const auto& [key, rec] : coh_rows) {
    const Key swapped{std::get<1>(key), std::get<0>(key), std::get<3>(key),
                      std::get<2>(key), std::get<4>(key)};
    EXPECT_EQ(rec.re, coh_rows.at(swapped).re);
    EXPECT_EQ(rec.im, -coh_rows.at(swapped).im);
  }
}

TEST(Records, DerivedQuantitiesAgreeWithTheirDefinitions) {
  const auto X = qcs::test::coupled_var1(32, 88);
  RunConfig cfg;
  cfg.quantiles = {0.5};
  const auto r = run_pipeline(X, cfg);
  using Key = std::tuple<int, int, double>;  // (j1, j2, omega); single tau
  std::map<Key, std::map<Quantity, SpectraRecord>> rows;
  for_each_record(r, [&](const SpectraRecord& rec) {
    rows[{rec.j1, rec.j2, rec.omega}][rec.quantity] = rec;
  });
  for (auto& [key, by_q] : rows) {
    const auto& f = by_q.at(Quantity::f);
    const auto& coh = by_q.at(Quantity::coherency);
    // 2e-10 headroom: a squared modulus a hair over one is clipped to 1.
    EXPECT_NEAR(by_q.at(Quantity::coherence).re,
                coh.re * coh.re + coh.im * coh.im, 2e-10);
    EXPECT_EQ(by_q.at(Quantity::cospectrum).re, f.re);
    EXPECT_EQ(by_q.at(Quantity::quadrature).re, -f.im);
    EXPECT_NEAR(by_q.at(Quantity::amplitude).re, std::hypot(f.re, f.im),
                1e-14 * (1.0 + std::abs(f.re)));
    if (f.re != 0.0 || f.im != 0.0)
      EXPECT_DOUBLE_EQ(by_q.at(Quantity::phase).re, std::atan2(f.im, f.re));
    // Real-valued quantities carry no imaginary confidence band.
    EXPECT_TRUE(std::isnan(by_q.at(Quantity::coherence).ci_lo_re));
    EXPECT_TRUE(std::isnan(by_q.at(Quantity::phase).ci_lo_re));
    EXPECT_TRUE(std::isnan(by_q.at(Quantity::cospectrum).ci_lo_im));
    // Cospectrum inherits the real band of f.
    EXPECT_EQ(by_q.at(Quantity::cospectrum).ci_lo_re, f.ci_lo_re);
    EXPECT_EQ(by_q.at(Quantity::cospectrum).ci_hi_re, f.ci_hi_re);
  }
}

TEST(Writer, EmptyRecordSetYieldsHeaderAndMetadata) {
  const auto dir = unique_dir("writer_empty");
  RunMetadata meta;
  meta.n = 0;
  meta.d = 0;
  meta.command = "analyze";
  meta.alpha = std::nan("");
  write_outputs({}, OutputFormat::csv, dir.string(), meta);
  const auto csv = qcs::test::read_file(dir / "spectra.csv");
  EXPECT_EQ(csv,
            "omega,freq_cycles,tau1,tau2,j1,j2,quantity,re,im,"
            "ci_lo_re,ci_hi_re,ci_lo_im,ci_hi_im\n");
  const auto meta_json =
      nlohmann::json::parse(qcs::test::read_file(dir / "metadata.json"));
  EXPECT_EQ(meta_json.at("command"), "analyze");
  EXPECT_TRUE(meta_json.at("alpha").is_null());

  write_outputs({}, OutputFormat::json, dir.string(), meta);
  const auto arr =
      nlohmann::json::parse(qcs::test::read_file(dir / "spectra.json"));
  EXPECT_TRUE(arr.is_array());
  EXPECT_TRUE(arr.empty());
}

TEST(Writer, CsvRowsRoundTripTheRecordValues) {
  const auto dir = unique_dir("writer_csv");
  const auto X = qcs::test::coupled_var1(16, 89);
  RunConfig cfg;
  cfg.quantiles = {0.5};
  const auto r = run_pipeline(X, cfg);
  write_spectra(r, OutputFormat::csv, dir.string(), tiny_meta(r, X.n, X.d));
  const auto rows = make_records(r);

  std::istringstream in(qcs::test::read_file(dir / "spectra.csv"));
  std::string line;
  ASSERT_TRUE(std::getline(in, line));  // header
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ASSERT_LT(count, rows.size());
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::string> parts;
    while (std::getline(cells, cell, ',')) parts.push_back(cell);
    ASSERT_EQ(parts.size(), 13u);
    const auto& rec = rows[count];
    EXPECT_EQ(std::strtod(parts[0].c_str(), nullptr), rec.omega);
    EXPECT_EQ(std::stoi(parts[4]), rec.j1);
    EXPECT_EQ(std::stoi(parts[5]), rec.j2);
    EXPECT_EQ(parts[6], quantity_name(rec.quantity));
    EXPECT_EQ(std::strtod(parts[7].c_str(), nullptr), rec.re);
    EXPECT_EQ(std::strtod(parts[8].c_str(), nullptr), rec.im);
    if (std::isnan(rec.ci_lo_re)) {
      EXPECT_EQ(parts[9], "nan");
    } else {
      EXPECT_EQ(std::strtod(parts[9].c_str(), nullptr), rec.ci_lo_re);
    }
    ++count;
  }
  EXPECT_EQ(count, rows.size());
}

TEST(Writer, JsonMirrorsTheCsvContent) {
  const auto dir = unique_dir("writer_json");
  const auto X = qcs::test::coupled_var1(16, 90);
  RunConfig cfg;
  cfg.quantiles = {0.5};
  cfg.omegas = {0.4, 2.2};  // no bands: ci columns must be null
  const auto r = run_pipeline(X, cfg);
  write_spectra(r, OutputFormat::json, dir.string(), tiny_meta(r, X.n, X.d));
  const auto rows = make_records(r);
  const auto arr =
      nlohmann::json::parse(qcs::test::read_file(dir / "spectra.json"));
  ASSERT_EQ(arr.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(arr[i].at("omega").get<double>(), rows[i].omega);
    EXPECT_EQ(arr[i].at("quantity").get<std::string>(),
              quantity_name(rows[i].quantity));
    EXPECT_EQ(arr[i].at("re").get<double>(), rows[i].re);
    EXPECT_TRUE(arr[i].at("ci_lo_re").is_null());
  }
}

TEST(Writer, RerunsAreByteIdentical) {
  const auto X = qcs::test::coupled_var1(32, 91);
  RunConfig cfg;
  cfg.quantiles = {0.25, 0.75};
  const auto r1 = run_pipeline(X, cfg);
  cfg.workers = 4;
  const auto r4 = run_pipeline(X, cfg);
  const auto d1 = unique_dir("writer_det_a");
  const auto d2 = unique_dir("writer_det_b");
  const auto d3 = unique_dir("writer_det_c");
  write_spectra(r1, OutputFormat::csv, d1.string(), tiny_meta(r1, X.n, X.d));
  write_spectra(r1, OutputFormat::csv, d2.string(), tiny_meta(r1, X.n, X.d));
  write_spectra(r4, OutputFormat::csv, d3.string(), tiny_meta(r4, X.n, X.d));
  const auto a = qcs::test::read_file(d1 / "spectra.csv");
  EXPECT_EQ(a, qcs::test::read_file(d2 / "spectra.csv"));
  EXPECT_EQ(a, qcs::test::read_file(d3 / "spectra.csv"));
  EXPECT_EQ(qcs::test::read_file(d1 / "metadata.json"),
            qcs::test::read_file(d2 / "metadata.json"));
  EXPECT_GT(a.size(), 1000u);
}
