#include "records.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace qcs::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr Quantity kQuantities[] = {Quantity::f,          Quantity::coherency,
                                    Quantity::coherence,  Quantity::cospectrum,
                                    Quantity::quadrature, Quantity::amplitude,
                                    Quantity::phase};

struct Interval {
  double lo = kNan;
  double hi = kNan;
};

std::string format_double(double v) {
  // Canonical spellings: negating a NaN interval endpoint or an exact zero
  // must not leak "-nan" / "-0" into the files.
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json json_number(double v) {
  // NaN has no JSON literal; nlohmann would emit null anyway, but being
  // explicit keeps the intent visible.
  if (std::isnan(v)) return nullptr;
  if (v == 0.0) return 0.0;
  return v;
}

}  // namespace

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::f: return "f";
    case Quantity::coherency: return "coherency";
    case Quantity::coherence: return "coherence";
    case Quantity::cospectrum: return "cospectrum";
    case Quantity::quadrature: return "quadrature";
    case Quantity::amplitude: return "amplitude";
    case Quantity::phase: return "phase";
  }
  return "?";
}

void for_each_record(const PipelineResult& result,
                     const std::function<void(const SpectraRecord&)>& fn) {
  const SmoothedSpectrum& spec = result.spectrum;
  const int d = spec.d;
  const int K = spec.K;
  const std::size_t ns = spec.eval_omegas.size();
  const double two_pi = 8.0 * std::atan(1.0);

  for (Quantity q : kQuantities)
    for (int j1 = 0; j1 < d; ++j1)
      for (int j2 = 0; j2 < d; ++j2)
        for (int k1 = 0; k1 < K; ++k1)
          for (int k2 = 0; k2 < K; ++k2) {
            const int a1 = spec.values.atom(j1, k1);
            const int a2 = spec.values.atom(j2, k2);
            const bool swapped = a1 > a2;
            const int c1 = swapped ? a2 : a1;
            const int c2 = swapped ? a1 : a2;
            for (std::size_t e = 0; e < ns; ++e) {
              SpectraRecord r;
              r.omega = spec.eval_omegas[e];
              r.freq_cycles = r.omega / two_pi;
              r.tau1 = spec.levels[k1];
              r.tau2 = spec.levels[k2];
              r.j1 = j1 + 1;
              r.j2 = j2 + 1;
              r.quantity = q;
              r.ci_lo_re = r.ci_hi_re = r.ci_lo_im = r.ci_hi_im = kNan;

              // Swap-adjusted band intervals for this row's orientation:
              // the canonical cell stores the (c1, c2) bands, and swapping
              // conjugates the center, so the imaginary interval negates
              // and flips while the real one is unchanged.
              Interval f_re, f_im, r_re, r_im;
              if (result.has_bands) {
                const ConfidenceBand& bs = result.bands.spectrum;
                const ConfidenceBand& bc = result.bands.coherency;
                const std::size_t idx = bs.index(c1, c2, e);
                f_re = {bs.lo_re[idx], bs.hi_re[idx]};
                f_im = swapped ? Interval{-bs.hi_im[idx], -bs.lo_im[idx]}
                               : Interval{bs.lo_im[idx], bs.hi_im[idx]};
                r_re = {bc.lo_re[idx], bc.hi_re[idx]};
                r_im = swapped ? Interval{-bc.hi_im[idx], -bc.lo_im[idx]}
                               : Interval{bc.lo_im[idx], bc.hi_im[idx]};
              }

              switch (q) {
                case Quantity::f: {
                  const std::complex<double> v = spec.normalized(j1, j2, k1, k2, e);
                  r.re = v.real();
                  r.im = v.imag();
                  r.ci_lo_re = f_re.lo;
                  r.ci_hi_re = f_re.hi;
                  r.ci_lo_im = f_im.lo;
                  r.ci_hi_im = f_im.hi;
                  break;
                }
                case Quantity::coherency: {
                  const std::complex<double> v =
                      result.coherency.value(j1, j2, k1, k2, e);
                  r.re = v.real();
                  r.im = v.imag();
                  r.ci_lo_re = r_re.lo;
                  r.ci_hi_re = r_re.hi;
                  r.ci_lo_im = r_im.lo;
                  r.ci_hi_im = r_im.hi;
                  break;
                }
                case Quantity::coherence:
                  r.re = result.coherency.coherence_value(j1, j2, k1, k2, e);
                  break;
                case Quantity::cospectrum:
                  r.re = result.decomposition.cospectrum_value(j1, j2, k1, k2, e);
                  r.ci_lo_re = f_re.lo;
                  r.ci_hi_re = f_re.hi;
                  break;
                case Quantity::quadrature:
                  // quadrature = -Im f, so its band is the reflected
                  // imaginary band of f.
                  r.re = result.decomposition.quadrature_value(j1, j2, k1, k2, e);
                  r.ci_lo_re = -f_im.hi;
                  r.ci_hi_re = -f_im.lo;
                  break;
                case Quantity::amplitude:
                  r.re = result.decomposition.amplitude_value(j1, j2, k1, k2, e);
                  break;
                case Quantity::phase:
                  r.re = result.decomposition.phase_value(j1, j2, k1, k2, e);
                  break;
              }
              fn(r);
            }
          }
}

std::vector<SpectraRecord> make_records(const PipelineResult& result) {
  const SmoothedSpectrum& spec = result.spectrum;
  std::vector<SpectraRecord> records;
  records.reserve(7u * spec.d * spec.d * spec.K * spec.K * spec.eval_omegas.size());
  for_each_record(result, [&](const SpectraRecord& r) { records.push_back(r); });
  return records;
}

struct OutputWriter::Impl {
  OutputFormat format = OutputFormat::csv;
  std::string out_dir;
  std::ofstream out;
  std::string path;
  bool first_row = true;
  bool finished = false;
};

OutputWriter::OutputWriter(OutputFormat format, const std::string& out_dir)
    : impl_(std::make_unique<Impl>()) {
  namespace fs = std::filesystem;
  impl_->format = format;
  impl_->out_dir = out_dir;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw std::runtime_error("cannot create output directory '" + out_dir + "'");
  const char* name = format == OutputFormat::csv ? "spectra.csv" : "spectra.json";
  impl_->path = (fs::path(out_dir) / name).string();
  impl_->out.open(impl_->path, std::ios::binary);
  if (!impl_->out) throw std::runtime_error("cannot write '" + impl_->path + "'");
  if (format == OutputFormat::csv)
    impl_->out << "omega,freq_cycles,tau1,tau2,j1,j2,quantity,re,im,"
                  "ci_lo_re,ci_hi_re,ci_lo_im,ci_hi_im\n";
}

OutputWriter::~OutputWriter() = default;

void OutputWriter::emit(const SpectraRecord& r) {
  std::ofstream& out = impl_->out;
  if (impl_->format == OutputFormat::csv) {
    out << format_double(r.omega) << ',' << format_double(r.freq_cycles) << ','
        << format_double(r.tau1) << ',' << format_double(r.tau2) << ',' << r.j1
        << ',' << r.j2 << ',' << quantity_name(r.quantity) << ','
        << format_double(r.re) << ',' << format_double(r.im) << ','
        << format_double(r.ci_lo_re) << ',' << format_double(r.ci_hi_re) << ','
        << format_double(r.ci_lo_im) << ',' << format_double(r.ci_hi_im) << '\n';
  } else {
    // Array of row objects, one compact object per line; streams without
    // ever holding the document.
    nlohmann::ordered_json row;
    row["omega"] = r.omega;
    row["freq_cycles"] = r.freq_cycles;
    row["tau1"] = r.tau1;
    row["tau2"] = r.tau2;
    row["j1"] = r.j1;
    row["j2"] = r.j2;
    row["quantity"] = quantity_name(r.quantity);
    row["re"] = json_number(r.re);
    row["im"] = json_number(r.im);
    row["ci_lo_re"] = json_number(r.ci_lo_re);
    row["ci_hi_re"] = json_number(r.ci_hi_re);
    row["ci_lo_im"] = json_number(r.ci_lo_im);
    row["ci_hi_im"] = json_number(r.ci_hi_im);
    out << (impl_->first_row ? "[\n" : ",\n") << row.dump();
    impl_->first_row = false;
  }
}

void OutputWriter::finish(const RunMetadata& meta) {
  namespace fs = std::filesystem;
  impl_->finished = true;
  if (impl_->format == OutputFormat::json)
    impl_->out << (impl_->first_row ? "[]\n" : "\n]\n");
  if (!impl_->out) throw std::runtime_error("write failed on '" + impl_->path + "'");
  impl_->out.close();

  nlohmann::ordered_json m;
  m["version"] = "0.1.0";
  m["command"] = meta.command;
  m["n"] = meta.n;
  m["d"] = meta.d;
  m["columns"] = meta.columns;
  m["quantiles"] = meta.quantiles;
  m["kernel"] = meta.kernel;
  m["bandwidth"] = meta.bandwidth;
  m["alpha"] = json_number(meta.alpha);
  m["seed"] = meta.seed;
  m["workers"] = meta.workers;
  m["normalizers"] = meta.normalizers;
  const std::string mpath = (fs::path(impl_->out_dir) / "metadata.json").string();
  std::ofstream mout(mpath, std::ios::binary);
  if (!mout) throw std::runtime_error("cannot write '" + mpath + "'");
  mout << m.dump(2) << '\n';
  if (!mout) throw std::runtime_error("write failed on '" + mpath + "'");
}

void write_outputs(const std::vector<SpectraRecord>& records, OutputFormat format,
                   const std::string& out_dir, const RunMetadata& meta) {
  OutputWriter writer(format, out_dir);
  for (const SpectraRecord& r : records) writer.emit(r);
  writer.finish(meta);
}

void write_spectra(const PipelineResult& result, OutputFormat format,
                   const std::string& out_dir, const RunMetadata& meta) {
  OutputWriter writer(format, out_dir);
  for_each_record(result, [&](const SpectraRecord& r) { writer.emit(r); });
  writer.finish(meta);
}

}  // namespace qcs::cli
