#pragma once

// Turaev-Viro state sum on closed oriented triangulations.
//
//   Z(M) = (sum_a d_a^2)^{-V} * sum_{admissible labelings l}
//            prod_{edge classes} d_{l(e)} * prod_{tets} W(t)
//
// with the tetrahedron weight read off the vertex-ordered slots
//   a = l(01), b = l(12), c = l(23), d = l(03), e = l(02), f = l(13)
// (labels dualized when the tet edge runs against its class orientation) as
//
//   W(t) = F[a,b,c;d | e,f] / (sqrt(d_e) sqrt(d_f)).
//
// This normalization makes the 2-3 move exactly the pentagon identity and is
// pinned by the sphere value Z(S^3) = 1/D^2; both are exercised by the tests.
// Labelings are enumerated by a pruned depth-first search over edge classes
// (each face is checked as soon as its three edges are colored).

#include "tvrt/fusion.hpp"
#include "tvrt/triangulation.hpp"

namespace tvrt {

FieldElement tv_state_sum(const Triangulation& tri, const FusionPtr& cat, unsigned threads = 1);

}  // namespace tvrt
