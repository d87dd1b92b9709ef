#ifndef ANTSEL_RECEIVER_HPP
#define ANTSEL_RECEIVER_HPP

#include "antsel/linalg.hpp"
#include "antsel/selection.hpp"

namespace antsel {

/// +sqrt(sigma_x2) for bit 0, -sqrt(sigma_x2) for bit 1.
Complex bpsk_modulate(int bit, double sigma_x2);

/// y = h x + v.
ComplexVector receive(const ComplexVector& channel_true, Complex symbol,
                      const ComplexVector& noise);

/// Maximum ratio combining over all branches: h_est^H y. No normalisation.
Complex combine_mrc(const ComplexVector& channel_est, const ComplexVector& y);

/// Selection combining with a sparse weight vector: h_s^H y, summed over the
/// support only.
Complex combine_selection(const SelectionVector& sel, const ComplexVector& y);

/// Hard decision: 0 when the real part is >= 0 (zero resolves to 0).
inline int bpsk_detect(Complex combined) { return combined.real() >= 0.0 ? 0 : 1; }

}  // namespace antsel

#endif  // ANTSEL_RECEIVER_HPP
