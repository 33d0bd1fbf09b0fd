#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcs/coherency.hpp"
#include "qcs/grids.hpp"
#include "qcs/inference.hpp"
#include "qcs/smoother.hpp"

namespace qcs::cli {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string input;  // analyze input CSV
  std::vector<std::string> columns;
  std::vector<double> quantiles = {0.05, 0.25, 0.5, 0.75, 0.95};
  KernelSpec kernel;
  double bandwidth = 0.0;  // <= 0 resolves to 0.4 * n^(-1/4)
  double alpha = 0.05;
  std::vector<double> omegas;  // empty = Fourier half grid
  std::string out_dir;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct PipelineResult {
  SmoothedSpectrum spectrum;
  CoherencyField coherency;
  SpectralDecomposition decomposition;  // normalized components
  BandPair bands;
  bool has_bands = false;  // true only on the Fourier grid
  double bandwidth = 0.0;  // resolved value
};

// ranks -> clipped indicators -> DFT -> CCR periodogram -> smoothing ->
// derived fields -> pointwise bands. The covariance machinery needs the
// Fourier grid, so a custom frequency list skips the band stage and the
// output records carry empty confidence columns.
PipelineResult run_pipeline(const TimeSeriesMatrix& X, const RunConfig& config);

// Loads config.input (with column selection) first.
PipelineResult run_pipeline(const RunConfig& config);

}  // namespace qcs::cli
