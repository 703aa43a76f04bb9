#pragma once

// Surgery invariants from modular data: colored framed-link evaluation by
// braid-closure quantum traces, the surgery-formula invariant
//
//   Z_RT(M_L) = (1/D)^{|L|+1} sum_{colorings Y} prod_i d_{Y_i} F(L_i; Y_i),
//
// the torus mapping-class-group action S = s/D, T = diag(theta), and the
// orthonormal torus inner product on the basis indexed by the center simples.
// D denotes the category's chosen global dimension root; anomaly-free data
// (p+ = p-) is a precondition for the surgery normalization.

#include "tvrt/center.hpp"
#include "tvrt/link.hpp"

namespace tvrt {

// quantum-trace evaluation of the colored braid closure, with the blackboard
// framing corrected to the declared framings by twist factors
FieldElement eval_link(const FramedLink& link, const std::vector<Label>& colors,
                       const ModularData& z);

// surgery invariant along the (uncolored) link; refuses anomalous data
FieldElement rt_invariant(const FramedLink& link, const ModularData& z);

// S_* and T_* on the torus space
std::pair<FMatrix, FMatrix> torus_S_T(const ModularData& z);

using TorusVector = std::vector<FieldElement>;  // coordinates in the basis [Z]
FieldElement torus_inner_product(const TorusVector& a, const TorusVector& b,
                                 const ModularData& z);

// S^4 = Id, (ST)^3 = S^2, S^2 = charge conjugation; exact matrix checks
Report sl2z_relations(const ModularData& z);

// Per-component surgery step: the weighted color sum over one component
// agrees with D^2 (T^n S [1]) both as a vector identity and through full link
// evaluations.  Components carrying a color in the link are held fixed;
// component_index must be uncolored.
Report verify_surgery_step(const FramedLink& link, int component_index, const ModularData& z);

// Hopf-link evaluator for the modular validation cross-check
HopfEvaluator make_hopf_evaluator(const ModularPtr& z);

// resolve per-component color names against the category
std::vector<Label> resolve_colors(const FramedLink& link, const ModularData& z);

}  // namespace tvrt
