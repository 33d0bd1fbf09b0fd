#include "pipeline.hpp"

#include "csv.hpp"
#include "qcs/errors.hpp"
#include "qcs/periodogram.hpp"
#include "qcs/ranks.hpp"

namespace qcs::cli {

PipelineResult run_pipeline(const TimeSeriesMatrix& X, const RunConfig& config) {
  // Config validation happens before any computation touches the data.
  const QuantileGrid grid = validate_quantile_grid(config.quantiles);
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw InvalidLevelError("alpha must be inside (0,1), got " +
                            std::to_string(config.alpha));
  if (config.workers < 1)
    throw InvalidArgumentError("workers must be >= 1");
  const double b_n =
      config.bandwidth > 0.0 ? config.bandwidth : default_bandwidth(X.n);
  if (!(b_n > 0.0 && b_n <= 1.0))
    throw BandwidthError("bandwidth must lie in (0,1], got " + std::to_string(b_n));

  const RankMatrix ranks = rank_matrix(X);
  const ClippedTensor clipped = clip_matrix(ranks, grid);
  const QuantileDFT dft = quantile_dft(clipped, config.workers);
  const CCRPeriodogram perio = ccr_periodogram_matrix(dft, config.workers);

  PipelineResult out;
  out.bandwidth = b_n;
  if (config.omegas.empty()) {
    out.spectrum = smooth_periodogram_fourier(perio, config.kernel, b_n, config.workers);
    out.bands = ci_bands(out.spectrum, config.alpha, false, config.workers);
    out.has_bands = true;
  } else {
    out.spectrum =
        smooth_periodogram(perio, config.kernel, b_n, config.omegas, config.workers);
  }
  out.coherency = quantile_coherency(out.spectrum, config.workers);
  out.decomposition = spectral_decompositions(out.spectrum, true, config.workers);
  return out;
}

PipelineResult run_pipeline(const RunConfig& config) {
  return run_pipeline(load_csv(config.input, config.columns), config);
}

}  // namespace qcs::cli
