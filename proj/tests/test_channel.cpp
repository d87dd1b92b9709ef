#include <doctest.h>

#include <cmath>

#include "antsel/channel.hpp"
#include "antsel/error.hpp"
#include "antsel/linalg.hpp"

using namespace antsel;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected antsel::Error");
  return Errc::kUsage;
}

}  // namespace

TEST_CASE("build_correlation evaluates the exponential rule") {
  const CorrelationModel m3 = build_correlation(3, 0.5);
  const double expected[3][3] = {{1, .5, .25}, {.5, 1, .5}, {.25, .5, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m3.corr(i, j) == Complex(expected[i][j]));

  const CorrelationModel m2 = build_correlation(2, 0.0);
  CHECK(m2.corr == ComplexMatrix::Identity(2, 2));
  CHECK(m2.corr_sqrt == ComplexMatrix::Identity(2, 2));

  // 2x2 eigendecomposition oracle.
  const CorrelationModel m8 = build_correlation(2, 0.8);
  const double a = std::sqrt(1.8), b = std::sqrt(0.2);
  CHECK(std::abs(m8.corr_sqrt(0, 0) - (a + b) / 2) < 1e-12);
  CHECK(std::abs(m8.corr_sqrt(0, 1) - (a - b) / 2) < 1e-12);
  CHECK(m8.corr_sqrt(0, 0).real() == doctest::Approx(0.8944).epsilon(1e-4));
  CHECK(m8.corr_sqrt(1, 0).real() == doctest::Approx(0.4472).epsilon(1e-4));
}

TEST_CASE("correlation matrix invariants across sizes") {
  for (const int m : {1, 2, 16, 64, 128}) {
    for (const double phi : {0.0, 0.3, 0.6, 0.8, 0.95, 0.99}) {
      const CorrelationModel model = build_correlation(m, phi);
      for (int i = 0; i < m; ++i) {
        CHECK(model.corr(i, i) == Complex(1.0));
        for (int j = 0; j < m; ++j) {
          CHECK(model.corr(i, j) == model.corr(j, i));
          CHECK(model.corr(i, j) == Complex(std::pow(phi, std::abs(i - j))));
        }
      }
      CHECK((model.corr_sqrt * model.corr_sqrt - model.corr).norm() <=
            1e-9 * model.corr.norm());
      if (m >= 2 && phi < 0.999) CHECK_NOTHROW(linalg::cholesky(model.corr));
    }
  }
}

TEST_CASE("build_correlation rejects phi outside [0, 1)") {
  CHECK(code_of([] { build_correlation(4, 1.0); }) == Errc::kInvalidPhi);
  CHECK(code_of([] { build_correlation(4, -0.1); }) == Errc::kInvalidPhi);
  CHECK(code_of([] { build_correlation(4, std::nan("")); }) == Errc::kInvalidPhi);
  CHECK(code_of([] { build_correlation(0, 0.5); }) == Errc::kInvalidParams);
}

TEST_CASE("sample_iid_channel draws CN(0, 1) entries") {
  RngStream rng(42, 0, 0);
  constexpr int kDraws = 1'000'000;
  double sum_re = 0, sum_im = 0, power = 0;
  Complex cross{0, 0};
  for (int n = 0; n < kDraws / 2; ++n) {
    const ComplexVector h = sample_iid_channel(2, rng);
    for (int k = 0; k < 2; ++k) {
      sum_re += h(k).real();
      sum_im += h(k).imag();
      power += std::norm(h(k));
    }
    cross += h(0) * std::conj(h(1));
  }
  CHECK(std::abs(power / kDraws - 1.0) < 0.01);
  CHECK(std::abs(sum_re / kDraws) < 0.01);
  CHECK(std::abs(sum_im / kDraws) < 0.01);
  CHECK(std::abs(cross / double(kDraws / 2)) < 0.01);
}

TEST_CASE("apply_correlation") {
  RngStream rng(1, 2, 3);
  const ComplexVector h = sample_iid_channel(5, rng);
  CHECK(apply_correlation(build_correlation(5, 0.0), h) == h);

  ComplexVector e0(2);
  e0 << 1.0, 0.0;
  const ComplexVector out = apply_correlation(build_correlation(2, 0.8), e0);
  CHECK(out(0).real() == doctest::Approx(0.8944).epsilon(1e-4));
  CHECK(out(1).real() == doctest::Approx(0.4472).epsilon(1e-4));

  CHECK(code_of([&] { apply_correlation(build_correlation(3, 0.5), e0); }) ==
        Errc::kDimensionMismatch);
}

TEST_CASE("correlated samples have covariance Phi") {
  const CorrelationModel model = build_correlation(4, 0.7);
  RngStream rng(9, 0, 0);
  ComplexMatrix cov = ComplexMatrix::Zero(4, 4);
  constexpr int kSamples = 100'000;
  for (int n = 0; n < kSamples; ++n) {
    const ComplexVector h = apply_correlation(model, sample_iid_channel(4, rng));
    cov += h * h.adjoint();
  }
  cov /= double(kSamples);
  CHECK((cov - model.corr).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("corrupt_estimate mixes the error vector") {
  RngStream rng(5, 0, 0);
  const ComplexVector h = sample_iid_channel(8, rng);
  CHECK(corrupt_estimate(h, 0.0, rng) == h);

  CHECK(code_of([&] { corrupt_estimate(h, 1.5, rng); }) == Errc::kInvalidTau);
  CHECK(code_of([&] { corrupt_estimate(h, -0.01, rng); }) == Errc::kInvalidTau);

  // tau = 1 is uncorrelated with the channel.
  Complex corr1{0, 0};
  constexpr int kTrials = 100'000;
  for (int n = 0; n < kTrials; ++n) {
    const ComplexVector hi = sample_iid_channel(1, rng);
    corr1 += corrupt_estimate(hi, 1.0, rng)(0) * std::conj(hi(0));
  }
  CHECK(std::abs(corr1 / double(kTrials)) < 0.01);

  // E[h_est h^*] = sqrt(1 - tau).
  Complex corr5{0, 0};
  constexpr int kLong = 1'000'000;
  for (int n = 0; n < kLong; ++n) {
    const ComplexVector hi = sample_iid_channel(1, rng);
    corr5 += corrupt_estimate(hi, 0.5, rng)(0) * std::conj(hi(0));
  }
  CHECK(std::abs(corr5 / double(kLong) - std::sqrt(0.5)) < 0.01);
}

TEST_CASE("estimate keeps unit variance for any tau") {
  for (const double tau : {0.25, 0.6, 0.9}) {
    RngStream rng(77, 1, static_cast<std::uint64_t>(tau * 100));
    constexpr int kSamples = 1'000'000;
    double power = 0;
    for (int n = 0; n < kSamples / 4; ++n) {
      power += corrupt_estimate(sample_iid_channel(4, rng), tau, rng).squaredNorm();
    }
    // |z|^2 ~ Exp(1): standard error 1 / sqrt(n).
    CHECK(std::abs(power / kSamples - 1.0) < 3.0 / std::sqrt(double(kSamples)));
  }
}

TEST_CASE("sample_realization composes the models") {
  {
    RngStream rng(3, 0, 0);
    const ChannelRealization ch = sample_realization(build_correlation(6, 0.0), 0.0, rng);
    CHECK(ch.h_true == ch.h_iid);
    CHECK(ch.h_est == ch.h_true);
  }
  {
    RngStream rng(3, 0, 1);
    const ChannelRealization ch = sample_realization(build_correlation(6, 0.7), 0.0, rng);
    CHECK(ch.h_est == ch.h_true);
  }

  // E[h_est h^H] = sqrt(1 - tau) Phi.
  const CorrelationModel model = build_correlation(2, 0.5);
  ComplexMatrix cross = ComplexMatrix::Zero(2, 2);
  constexpr int kTrials = 100'000;
  for (int n = 0; n < kTrials; ++n) {
    RngStream rng(11, 0, static_cast<std::uint64_t>(n));
    const ChannelRealization ch = sample_realization(model, 0.36, rng);
    cross += ch.h_est * ch.h_true.adjoint();
  }
  cross /= double(kTrials);
  CHECK((cross - 0.8 * model.corr).cwiseAbs().maxCoeff() < 0.02);

  // With tau = 1 the estimate still carries the array correlation.
  const CorrelationModel model8 = build_correlation(3, 0.8);
  ComplexMatrix cov = ComplexMatrix::Zero(3, 3);
  for (int n = 0; n < kTrials; ++n) {
    RngStream rng(12, 0, static_cast<std::uint64_t>(n));
    const ChannelRealization ch = sample_realization(model8, 1.0, rng);
    cov += ch.h_est * ch.h_est.adjoint();
  }
  cov /= double(kTrials);
  CHECK((cov - model8.corr).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("equal stream keys reproduce realizations") {
  const CorrelationModel model = build_correlation(16, 0.6);
  RngStream a(99, 4, 7), b(99, 4, 7), c(99, 4, 8);
  const ChannelRealization ra = sample_realization(model, 0.3, a);
  const ChannelRealization rb = sample_realization(model, 0.3, b);
  const ChannelRealization rc = sample_realization(model, 0.3, c);
  CHECK(ra.h_true == rb.h_true);
  CHECK(ra.h_est == rb.h_est);
  CHECK(ra.h_iid != rc.h_iid);
}

TEST_CASE("sample_noise variance and independence") {
  for (const double var : {1.0, 4.0}) {
    RngStream rng(21, 0, static_cast<std::uint64_t>(var));
    constexpr int kDraws = 1'000'000;
    double power = 0;
    for (int n = 0; n < kDraws / 4; ++n) power += sample_noise(4, var, rng).squaredNorm();
    CHECK(std::abs(power / kDraws - var) < 0.01 * var);
  }

  RngStream rng(22, 0, 0);
  Complex cross{0, 0};
  constexpr int kDraws = 1'000'000;
  for (int n = 0; n < kDraws; ++n) {
    const ComplexVector h = sample_iid_channel(1, rng);
    const ComplexVector v = sample_noise(1, 1.0, rng);
    cross += v(0) * std::conj(h(0));
  }
  CHECK(std::abs(cross / double(kDraws)) < 0.01);

  CHECK(code_of([&] { sample_noise(4, 0.0, rng); }) == Errc::kInvalidVariance);
  CHECK(code_of([&] { sample_noise(4, -1.0, rng); }) == Errc::kInvalidVariance);
}
