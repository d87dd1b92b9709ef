#ifndef ANTSEL_CHANNEL_HPP
#define ANTSEL_CHANNEL_HPP

#include <cstdint>
#include <random>

#include "antsel/linalg.hpp"

namespace antsel {

/// Per-trial random substream keyed by (master seed, point index, trial
/// index). Equal keys give equal sequences regardless of which thread or in
/// which order trials execute.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t point_index,
            std::uint64_t trial_index);

  /// CN(0, variance): real and imaginary parts each N(0, variance / 2).
  Complex complex_normal(double variance = 1.0);
  int bit();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Receive-side exponential correlation: corr(i, j) = phi^|i - j| with real
/// phi in [0, 1). Immutable once built; the square root is computed once.
struct CorrelationModel {
  int m = 0;
  double phi = 0.0;
  ComplexMatrix corr;
  ComplexMatrix corr_sqrt;
};

CorrelationModel build_correlation(int m, double phi);

struct ChannelRealization {
  ComplexVector h_iid;
  ComplexVector h_true;
  ComplexVector h_est;
  double tau = 0.0;
};

ComplexVector sample_iid_channel(int m, RngStream& rng);

ComplexVector apply_correlation(const CorrelationModel& model,
                                const ComplexVector& h_iid);

/// sqrt(1 - tau) * h_iid + sqrt(tau) * e_iid with e_iid ~ CN(0, I) drawn from
/// rng. The error vector is always drawn so stream consumption is independent
/// of tau; tau == 0 returns h_iid unchanged.
ComplexVector corrupt_estimate(const ComplexVector& h_iid, double tau,
                               RngStream& rng);

/// One coherence block: true channel and its imperfect estimate, both passed
/// through the same correlation square root.
ChannelRealization sample_realization(const CorrelationModel& model, double tau,
                                      RngStream& rng);

ComplexVector sample_noise(int m, double noise_var, RngStream& rng);

}  // namespace antsel

#endif  // ANTSEL_CHANNEL_HPP
