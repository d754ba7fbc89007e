#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wigner/diagnostics/diagnostics.hpp"
#include "wigner/solve/field.hpp"

namespace wigner::cli {

/// Plain-text grid of W at cell centres.
///
///   WGRID 1
///   nq np qmin qmax pmin pmax time
///   np rows of nq values (p outer, q inner), 17 significant digits
struct GridDump {
  int nq = 0;
  int np = 0;
  double q_min = 0.0;
  double q_max = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  double time = 0.0;
  std::vector<double> values;  // values[ip * nq + iq]

  double q_centre(int iq) const { return q_min + (iq + 0.5) * (q_max - q_min) / nq; }
  double p_centre(int ip) const { return p_min + (ip + 0.5) * (p_max - p_min) / np; }
  double at(int iq, int ip) const { return values[static_cast<std::size_t>(ip) * nq + iq]; }
};

/// ContractError for a resolution below 2 on either axis.
GridDump sample_grid(const CoefficientField& w, int nq, int np);
void write_grid(std::ostream& out, const GridDump& grid);
void dump_grid(std::ostream& out, const CoefficientField& w, int nq, int np);
/// ConfigError on a malformed file.
GridDump read_grid(std::istream& in);

/// Coefficient checkpoint, enough to rebuild the field exactly.
///
///   WCOEF 1
///   order j_coarse j_fine qmin qmax pmin pmax time hbar
///   nq rows of np single-scale coefficients, 17 significant digits
void write_checkpoint(std::ostream& out, const CoefficientField& w);
CoefficientField read_checkpoint(std::istream& in);

/// One marginal sampled at n cell centres.
///
///   WMARG 1
///   axis n lo hi time integral
///   n lines "x value"
void write_marginal(std::ostream& out, const Marginal& m, char axis, int n, double time);

/// %.17g
std::string exact(double v);

}  // namespace wigner::cli
