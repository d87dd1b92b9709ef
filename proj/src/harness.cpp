#include "antsel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "antsel/error.hpp"
#include "antsel/receiver.hpp"
#include "antsel/selection.hpp"

namespace antsel {

std::string_view to_string(Scheme scheme) noexcept {
  return scheme == Scheme::kMrc ? "mrc" : "omp";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "omp" || name == "omp-selection") return Scheme::kOmpSelection;
  if (name == "mrc") return Scheme::kMrc;
  throw Error(Errc::kInvalidParams, "unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::kSnrDb: return "snr-db";
    case SweepAxis::kPhi: return "phi";
    case SweepAxis::kKs: return "ks";
    case SweepAxis::kTau: return "tau";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "snr-db" || name == "snr_db") return SweepAxis::kSnrDb;
  if (name == "phi") return SweepAxis::kPhi;
  if (name == "ks" || name == "k_s") return SweepAxis::kKs;
  if (name == "tau") return SweepAxis::kTau;
  throw Error(Errc::kInvalidParams, "unknown sweep axis '" + std::string(name) + "'");
}

double SimPoint::noise_variance() const { return std::pow(10.0, -snr_db / 10.0); }

void validate(const SimPoint& p) {
  if (p.m < 1) {
    throw Error(Errc::kInvalidParams, "m must be >= 1, got " + std::to_string(p.m));
  }
  if (p.k_s < 1 || p.k_s > p.m) {
    throw Error(Errc::kInvalidSparsity, "k_s must lie in [1, " + std::to_string(p.m) +
                                            "], got " + std::to_string(p.k_s));
  }
  if (!(p.phi >= 0.0 && p.phi < 1.0)) {
    throw Error(Errc::kInvalidPhi, "phi must lie in [0, 1), got " + std::to_string(p.phi));
  }
  if (!(p.tau >= 0.0 && p.tau <= 1.0)) {
    throw Error(Errc::kInvalidTau, "tau must lie in [0, 1], got " + std::to_string(p.tau));
  }
  if (!std::isfinite(p.snr_db) || !(p.noise_variance() > 0.0) ||
      !std::isfinite(p.noise_variance())) {
    throw Error(Errc::kInvalidParams, "snr_db out of range: " + std::to_string(p.snr_db));
  }
  if (p.trials < 1) {
    throw Error(Errc::kInvalidParams, "trials must be >= 1");
  }
  if (p.symbols_per_channel < 1) {
    throw Error(Errc::kInvalidParams, "symbols_per_channel must be >= 1");
  }
}

BerRecord BerRecord::from_counts(const SimPoint& point, std::int64_t bits_sent,
                                 std::int64_t bit_errors) {
  BerRecord rec;
  rec.point = point;
  rec.bits_sent = bits_sent;
  rec.bit_errors = bit_errors;
  if (bits_sent > 0) {
    rec.ber = static_cast<double>(bit_errors) / static_cast<double>(bits_sent);
    rec.std_error = std::sqrt(rec.ber * (1.0 - rec.ber) / static_cast<double>(bits_sent));
  }
  return rec;
}

std::int64_t run_trial(const SimPoint& point, const CorrelationModel& model,
                       RngStream& rng, std::vector<int>* detected) {
  constexpr double kSigmaX2 = 1.0;
  const double sigma_v2 = point.noise_variance();
  const ChannelRealization ch = sample_realization(model, point.tau, rng);

  SelectionVector sel;
  if (point.scheme == Scheme::kOmpSelection) {
    sel = omp_select(build_problem(ch.h_est, kSigmaX2, sigma_v2), point.k_s);
  }

  if (detected) detected->clear();
  std::int64_t errors = 0;
  for (int s = 0; s < point.symbols_per_channel; ++s) {
    const int bit = rng.bit();
    const Complex x = bpsk_modulate(bit, kSigmaX2);
    const ComplexVector y = receive(ch.h_true, x, sample_noise(point.m, sigma_v2, rng));
    const Complex stat = point.scheme == Scheme::kMrc ? combine_mrc(ch.h_est, y)
                                                      : combine_selection(sel, y);
    const int decided = bpsk_detect(stat);
    errors += decided != bit;
    if (detected) detected->push_back(decided);
  }
  return errors;
}

BerRecord run_point(const SimPoint& point, std::uint64_t point_index, int workers) {
  validate(point);
  const CorrelationModel model = build_correlation(point.m, point.phi);

  auto run_range = [&](std::int64_t begin, std::int64_t end) {
    std::int64_t errors = 0;
    for (std::int64_t t = begin; t < end; ++t) {
      RngStream rng(point.seed, point_index, static_cast<std::uint64_t>(t));
      errors += run_trial(point, model, rng);
    }
    return errors;
  };

  const std::int64_t n_workers =
      std::max<std::int64_t>(1, std::min<std::int64_t>(workers, point.trials));
  std::int64_t total_errors = 0;
  if (n_workers == 1) {
    total_errors = run_range(0, point.trials);
  } else {
    std::vector<std::int64_t> partial(n_workers, 0);
    std::vector<std::exception_ptr> failures(n_workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(n_workers);
      for (std::int64_t w = 0; w < n_workers; ++w) {
        const std::int64_t begin = point.trials * w / n_workers;
        const std::int64_t end = point.trials * (w + 1) / n_workers;
        pool.emplace_back([&, w, begin, end] {
          try {
            partial[w] = run_range(begin, end);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
    for (const auto e : partial) total_errors += e;
  }

  return BerRecord::from_counts(point, point.trials * point.symbols_per_channel,
                                total_errors);
}

namespace {

SimPoint substitute(const SimPoint& base, SweepAxis axis, double value) {
  SimPoint p = base;
  switch (axis) {
    case SweepAxis::kSnrDb: p.snr_db = value; break;
    case SweepAxis::kPhi: p.phi = value; break;
    case SweepAxis::kTau: p.tau = value; break;
    case SweepAxis::kKs:
      if (value != std::floor(value)) {
        throw Error(Errc::kInvalidAxisValue, "k_s must be an integer");
      }
      p.k_s = static_cast<int>(value);
      break;
  }
  return p;
}

}  // namespace

std::vector<BerRecord> run_sweep(const SimPoint& base, SweepAxis axis,
                                 std::span<const double> values, int workers) {
  std::vector<SimPoint> points;
  points.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    try {
      points.push_back(substitute(base, axis, values[i]));
      validate(points.back());
    } catch (const Error& e) {
      throw Error(Errc::kInvalidAxisValue,
                  std::string(to_string(axis)) + " value #" + std::to_string(i) + " (" +
                      std::to_string(values[i]) + "): " + e.what());
    }
  }

  std::vector<BerRecord> records;
  records.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    records.push_back(run_point(points[i], i, workers));
  }
  return records;
}

double analytic_mrc_ber(int m, double snr_linear) {
  if (m < 1 || !(snr_linear > 0.0) || !std::isfinite(snr_linear)) {
    throw Error(Errc::kInvalidParams, "analytic_mrc_ber needs m >= 1 and snr > 0");
  }
  const double p = 0.5 * (1.0 - std::sqrt(snr_linear / (1.0 + snr_linear)));
  // sum_{k<m} C(m-1+k, k) (1-p)^k, terms built by ratio.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < m; ++k) {
    term *= static_cast<double>(m - 1 + k) / k * (1.0 - p);
    sum += term;
  }
  return std::pow(p, m) * sum;
}

std::vector<RuntimeSample> measure_omp_runtime(std::span<const int> m_values,
                                               int k_s, int repeats,
                                               std::uint64_t seed) {
  std::vector<RuntimeSample> out;
  if (repeats <= 0) return out;
  for (const int m : m_values) {
    if (k_s < 1 || m < k_s) {
      throw Error(Errc::kInvalidSparsity, "measure_omp_runtime needs m >= k_s >= 1");
    }
  }

  for (const int m : m_values) {
    // Problems are built one at a time; only omp_select is inside the clock.
    double elapsed = 0.0, checksum = 0.0;
    for (int r = 0; r < repeats; ++r) {
      RngStream rng(seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(r));
      const SelectionProblem problem = build_problem(sample_iid_channel(m, rng), 1.0, 0.1);
      const auto start = std::chrono::steady_clock::now();
      checksum += omp_select(problem, k_s).residual_norm;
      const auto stop = std::chrono::steady_clock::now();
      elapsed += std::chrono::duration<double>(stop - start).count();
    }
    // Keeps the selections observable.
    if (!std::isfinite(checksum)) throw Error(Errc::kInvalidParams, "non-finite residual");
    out.push_back({m, elapsed / repeats});
  }
  return out;
}

}  // namespace antsel
