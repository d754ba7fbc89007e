#pragma once

#include <utility>

#include "wigner/assembly/operator.hpp"
#include "wigner/model/potential.hpp"

namespace wigner {

/// -(p/m) d/dq, tag "transport".
AssembledOperator assemble_transport(const PhaseSpaceBasis& ps, const ModelParams& params);

/// Sum over l of (-1)^l (hbar/2)^{2l} / (2l+1)! times
///   U^{(2l+1)}(q) d^{2l+1}/dp^{2l+1}   (q part, tags "force" for l = 0, "quantum_l")
///   - d^{2l+1}/dq^{2l+1} V^{(2l+1)}(p) (pure-p part, tags "momentum_force", "momentum_quantum_l").
/// Terms with a vanishing coefficient are omitted. ConfigError if the filter
/// cannot represent the required derivative order.
AssembledOperator assemble_quantum_correction(const PhaseSpaceBasis& ps,
                                              const PolynomialPotential& u,
                                              const ModelParams& params);

/// 2 gamma d/dp (p W) + D d^2 W/dp^2, tags "dissipator_friction", "dissipator_diffusion".
/// d/dp (p W) is assembled in conservative form, derivative matrix times the
/// p multiplication matrix, so the total integral is preserved exactly.
AssembledOperator assemble_dissipator(const PhaseSpaceBasis& ps, const ModelParams& params);

/// Closed-system generator: transport + quantum correction.
AssembledOperator assemble_liouvillian(const PhaseSpaceBasis& ps, const PolynomialPotential& u,
                                       const ModelParams& params);
/// Closed generator plus the dissipator.
AssembledOperator assemble_open_generator(const PhaseSpaceBasis& ps, const PolynomialPotential& u,
                                          const ModelParams& params);

/// Real pair of the two-sided stationary problem:
///   A_sym  = H(q, p) + sum_{l>=1} (-1)^l (hbar/2)^{2l}/(2l)! [U^{(2l)} d_p^{2l} + d_q^{2l} K^{(2l)}]
///   A_anti = -(closed generator)
/// with K(p) = p^2/2m + V(p). A_sym is symmetric and A_anti antisymmetric;
/// for a Moyal function A_sym W = (E' + E'')/2 W and A_anti W = (i/hbar)(E'' - E') W.
std::pair<AssembledOperator, AssembledOperator> assemble_stationary_pair(
    const PhaseSpaceBasis& ps, const PolynomialPotential& u, const ModelParams& params);

/// K(p + (hbar/2i) d_q) + U(q - (hbar/2i) d_p), expanded binomially term by term.
/// Equals A_sym - i (hbar/2) A_anti.
ComplexOperator assemble_stationary_cnumber(const PhaseSpaceBasis& ps,
                                            const PolynomialPotential& u,
                                            const ModelParams& params);

}  // namespace wigner
