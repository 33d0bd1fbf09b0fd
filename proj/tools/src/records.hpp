#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pipeline.hpp"

namespace qcs::cli {

enum class Quantity { f, coherency, coherence, cospectrum, quadrature, amplitude, phase };

const char* quantity_name(Quantity q);

// One output row. Components are reported 1-based; confidence columns are
// NaN where no band applies (real-part bands exist for f, coherency,
// cospectrum, and quadrature; imaginary-part bands for f and coherency).
struct SpectraRecord {
  double omega = 0.0;
  double freq_cycles = 0.0;  // omega / (2*pi)
  double tau1 = 0.0;
  double tau2 = 0.0;
  int j1 = 1;
  int j2 = 1;
  Quantity quantity = Quantity::f;
  double re = 0.0;
  double im = 0.0;
  double ci_lo_re = 0.0;
  double ci_hi_re = 0.0;
  double ci_lo_im = 0.0;
  double ci_hi_im = 0.0;
};

// Visits the full ordered product: quantity, then j1, j2, k1, k2, s, all
// ascending. Swapped rows come from the canonical storage through
// conjugation, so the Hermitian redundancy between (j1,j2,tau1,tau2) and
// (j2,j1,tau2,tau1) is exact by construction.
void for_each_record(const PipelineResult& result,
                     const std::function<void(const SpectraRecord&)>& fn);

// Materialized row set; the full product has 7 * d^2 * K^2 * ns rows, so
// prefer write_spectra for large grids.
std::vector<SpectraRecord> make_records(const PipelineResult& result);

struct RunMetadata {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<std::string> columns;
  std::vector<double> quantiles;
  std::string kernel;
  double bandwidth = 0.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<double> normalizers;  // W_n^k table over the evaluation grid
  std::string command;              // subcommand that produced the files
};

// Row-streaming writer behind both output entry points. Produces
// spectra.csv (exact SpectraRecord column order, 17 significant digits) or
// spectra.json (array of row objects, one per line), then metadata.json,
// inside out_dir (created if missing). LF endings throughout.
class OutputWriter {
 public:
  OutputWriter(OutputFormat format, const std::string& out_dir);
  ~OutputWriter();

  void emit(const SpectraRecord& r);
  void finish(const RunMetadata& meta);  // closes files; emit is done

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

void write_outputs(const std::vector<SpectraRecord>& records, OutputFormat format,
                   const std::string& out_dir, const RunMetadata& meta);

// Streams the rows of a pipeline result without materializing them.
void write_spectra(const PipelineResult& result, OutputFormat format,
                   const std::string& out_dir, const RunMetadata& meta);

}  // namespace qcs::cli
