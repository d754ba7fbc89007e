#pragma once

#include <span>
#include <vector>

namespace wigner {

/// Low-pass filter of an orthonormal Daubechies family.
///
/// `order` is the number of taps (2g for genus g); the scaling function is
/// supported on [0, order - 1] and the wavelet has g vanishing moments.
struct FilterCoefficients {
  int order = 0;
  std::vector<double> taps;

  int support_length() const { return order - 1; }
  int vanishing_moments() const { return order / 2; }

  /// Quadrature-mirror high-pass tap g_k = (-1)^k h_{order-1-k}.
  double highpass(int k) const;
};

/// Orders accepted by daubechies_filter().
std::span<const int> supported_filter_orders();

/// Minimum-phase Daubechies filter with `order` taps; order even in [2, 20].
/// Throws ConfigError for anything else.
FilterCoefficients daubechies_filter(int order);

}  // namespace wigner
