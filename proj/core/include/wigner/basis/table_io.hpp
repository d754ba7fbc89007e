#pragma once

#include <iosfwd>
#include <vector>

#include "wigner/basis/wavelet_basis.hpp"

namespace wigner {

/// Contents of a WVBASIS1 table file.
struct TableDump {
  int order = 0;
  int j_coarse = 0;
  int j_fine = 0;
  Interval domain;
  std::vector<double> taps;
  std::vector<ConnectionTable> derivatives;  // Lambda^{0,d}, d = 0..
  MomentTable moments;
};

/// Binary cache of the basis tables. Little-endian throughout:
///   "WVBASIS1"                                   8 bytes
///   order, j_coarse, j_fine                      int32 each
///   domain lo, hi                                float64 each
///   tap count T, then T taps                     int32, float64[T]
///   derivative count, then per table:
///     d, max_offset K, Lambda^{0,d}_{-K..K}      int32, int32, float64[2K+1]
///   moment power P, max_offset K,
///     T^i_delta for i = 0..P, delta = -K..K      int32, int32, float64[(P+1)(2K+1)]
/// max_derivative < 0 writes every available derivative table.
void write_tables(std::ostream& out, const WaveletBasis& basis, int max_derivative = -1);

/// ConfigError on a bad header or truncated stream.
TableDump read_tables(std::istream& in);

}  // namespace wigner
