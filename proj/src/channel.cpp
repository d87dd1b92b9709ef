#include "antsel/channel.hpp"

#include <cmath>
#include <string>

#include "antsel/error.hpp"

namespace antsel {
namespace {

// SplitMix64 finaliser; spreads structured keys over the seed space.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point,
                          std::uint64_t trial) {
  return mix64(mix64(mix64(master) ^ point) ^ trial);
}

void require_antennas(int m) {
  if (m < 1) {
    throw Error(Errc::kInvalidParams,
                "antenna count must be >= 1, got " + std::to_string(m));
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t point_index,
                     std::uint64_t trial_index)
    : engine_(derive_seed(master_seed, point_index, trial_index)) {}

Complex RngStream::complex_normal(double variance) {
  const double s = std::sqrt(variance / 2.0);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {s * re, s * im};
}

int RngStream::bit() { return static_cast<int>(engine_() >> 63); }

CorrelationModel build_correlation(int m, double phi) {
  require_antennas(m);
  if (!(phi >= 0.0 && phi < 1.0)) {
    throw Error(Errc::kInvalidPhi,
                "phi must lie in [0, 1), got " + std::to_string(phi));
  }
  CorrelationModel model;
  model.m = m;
  model.phi = phi;
  model.corr.resize(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      // std::pow(0.0, 0) == 1 keeps the diagonal exact for phi == 0.
      model.corr(i, j) = std::pow(phi, std::abs(j - i));
    }
  }
  model.corr_sqrt = linalg::hermitian_sqrt(model.corr);
  return model;
}

ComplexVector sample_iid_channel(int m, RngStream& rng) {
  require_antennas(m);
  ComplexVector h(m);
  for (int i = 0; i < m; ++i) h(i) = rng.complex_normal(1.0);
  return h;
}

ComplexVector apply_correlation(const CorrelationModel& model,
                                const ComplexVector& h_iid) {
  if (h_iid.size() != model.m) {
    throw Error(Errc::kDimensionMismatch,
                "channel length " + std::to_string(h_iid.size()) +
                    " does not match correlation size " + std::to_string(model.m));
  }
  return model.corr_sqrt * h_iid;
}

ComplexVector corrupt_estimate(const ComplexVector& h_iid, double tau,
                               RngStream& rng) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(Errc::kInvalidTau,
                "tau must lie in [0, 1], got " + std::to_string(tau));
  }
  const ComplexVector e_iid =
      sample_iid_channel(static_cast<int>(h_iid.size()), rng);
  if (tau == 0.0) return h_iid;
  if (tau == 1.0) return e_iid;
  return std::sqrt(1.0 - tau) * h_iid + std::sqrt(tau) * e_iid;
}

ChannelRealization sample_realization(const CorrelationModel& model, double tau,
                                      RngStream& rng) {
  ChannelRealization out;
  out.tau = tau;
  out.h_iid = sample_iid_channel(model.m, rng);
  const ComplexVector h_est_iid = corrupt_estimate(out.h_iid, tau, rng);
  out.h_true = apply_correlation(model, out.h_iid);
  out.h_est = tau == 0.0 ? out.h_true : apply_correlation(model, h_est_iid);
  return out;
}

ComplexVector sample_noise(int m, double noise_var, RngStream& rng) {
  require_antennas(m);
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw Error(Errc::kInvalidVariance,
                "noise variance must be positive, got " + std::to_string(noise_var));
  }
  ComplexVector v(m);
  for (int i = 0; i < m; ++i) v(i) = rng.complex_normal(noise_var);
  return v;
}

}  // namespace antsel
