#ifndef ANTSEL_HARNESS_HPP
#define ANTSEL_HARNESS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antsel/channel.hpp"

namespace antsel {

enum class Scheme { kOmpSelection, kMrc };

/// "omp" / "mrc"
std::string_view to_string(Scheme scheme) noexcept;
Scheme parse_scheme(std::string_view name);

/// One operating point. Transmit power is fixed at 1, so the noise variance
/// is 10^(-snr_db / 10). k_s is ignored by MRC.
struct SimPoint {
  int m = 64;
  int k_s = 32;
  double phi = 0.0;
  double tau = 0.0;
  double snr_db = 0.0;
  Scheme scheme = Scheme::kOmpSelection;
  std::int64_t trials = 10000;
  int symbols_per_channel = 100;
  std::uint64_t seed = 1;

  double noise_variance() const;
};

/// Throws InvalidParams / InvalidPhi / InvalidTau / InvalidSparsity.
void validate(const SimPoint& point);

struct BerRecord {
  SimPoint point;
  std::int64_t bits_sent = 0;
  std::int64_t bit_errors = 0;
  double ber = 0.0;
  /// Binomial standard error sqrt(ber (1 - ber) / bits_sent).
  double std_error = 0.0;

  static BerRecord from_counts(const SimPoint& point, std::int64_t bits_sent,
                               std::int64_t bit_errors);
};

/// Simulates one coherence block: draws the channel and its estimate, makes
/// the antenna selection once (OMP scheme), then sends symbols_per_channel
/// BPSK symbols. Returns the number of bit errors. When `detected` is given
/// it receives the detected bits in transmission order.
std::int64_t run_trial(const SimPoint& point, const CorrelationModel& model,
                       RngStream& rng, std::vector<int>* detected = nullptr);

/// Runs all trials of a point on `workers` threads. Trial t draws from the
/// substream (seed, point_index, t), so the record does not depend on the
/// worker count.
BerRecord run_point(const SimPoint& point, std::uint64_t point_index = 0,
                    int workers = 1);

enum class SweepAxis { kSnrDb, kPhi, kKs, kTau };

std::string_view to_string(SweepAxis axis) noexcept;
SweepAxis parse_axis(std::string_view name);

/// Substitutes each value into `base` along `axis`; record i uses point
/// index i. All values are validated before any simulation starts.
std::vector<BerRecord> run_sweep(const SimPoint& base, SweepAxis axis,
                                 std::span<const double> values, int workers = 1);

/// Exact average BPSK error probability of m-branch MRC over i.i.d.
/// unit-power Rayleigh fading with per-branch SNR snr_linear.
double analytic_mrc_ber(int m, double snr_linear);

struct RuntimeSample {
  int m = 0;
  double mean_seconds = 0.0;
};

/// Mean wall time of omp_select on `repeats` random problems per antenna
/// count. Problem construction is excluded from the timing.
std::vector<RuntimeSample> measure_omp_runtime(std::span<const int> m_values,
                                               int k_s, int repeats,
                                               std::uint64_t seed = 1);

}  // namespace antsel

#endif  // ANTSEL_HARNESS_HPP
