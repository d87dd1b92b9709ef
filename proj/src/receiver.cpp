#include "antsel/receiver.hpp"

#include <cmath>
#include <string>

#include "antsel/error.hpp"

namespace antsel {
namespace {

void require_same_length(const ComplexVector& a, const ComplexVector& b,
                         const char* what) {
  if (a.size() != b.size()) {
    throw Error(Errc::kDimensionMismatch,
                std::string(what) + ": lengths " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()) + " differ");
  }
}

}  // namespace

Complex bpsk_modulate(int bit, double sigma_x2) {
  if (!(sigma_x2 > 0.0)) {
    throw Error(Errc::kInvalidVariance,
                "sigma_x2 must be positive, got " + std::to_string(sigma_x2));
  }
  if (bit != 0 && bit != 1) {
    throw Error(Errc::kInvalidParams, "bit must be 0 or 1, got " + std::to_string(bit));
  }
  const double amp = std::sqrt(sigma_x2);
  return {bit == 0 ? amp : -amp, 0.0};
}

ComplexVector receive(const ComplexVector& channel_true, Complex symbol,
                      const ComplexVector& noise) {
  require_same_length(channel_true, noise, "receive");
  return channel_true * symbol + noise;
}

Complex combine_mrc(const ComplexVector& channel_est, const ComplexVector& y) {
  require_same_length(channel_est, y, "combine_mrc");
  return channel_est.dot(y);
}

Complex combine_selection(const SelectionVector& sel, const ComplexVector& y) {
  require_same_length(sel.weights, y, "combine_selection");
  Complex acc{0.0, 0.0};
  for (const Index j : sel.support) acc += std::conj(sel.weights(j)) * y(j);
  return acc;
}

}  // namespace antsel
