#pragma once

// Evaluation of sliced morphism diagrams in a spherical fusion category.
//
// States are vectors in Hom(root, V_1 (x) ... (x) V_n) expressed in the
// left-parenthesized fusion-tree basis: a chain (y_1, ..., y_n) of simples
// with y_k a fusion channel of (y_{k-1}, V_k), y_0 = 1 and y_n = root.
// Every generator acts locally on chains through F-moves:
//
//   cup(X)  at p  inserts (X, X*):  sum_e Finv[u,X,X*;u | 1,e], u = y_p
//   cap(X)  at p  consumes (X, X*): d_X * F[u,X,X*;u | y_{p+1}, 1], needs y_{p+2} = u
//   coupon(h) at p inserts the boundary word W of h:
//       sum over continued chains g (g_k = u) of
//       h_chain * prod_{j=k..2} Finv[u, c_{j-1}, W_j; g_j | c_j, g_{j-1}]
//   halfbraid_* swaps an adjacent (red, black) pair with the half-braiding
//       scalar; restricted to slots whose F-data is trivial (pointed words).
//
// Red strands carry labels of center simples (with simple underlying object)
// and participate in fusion through their underlying C-simple.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tvrt/fusion.hpp"

namespace tvrt {

// half-braiding data for red strands; built by the drinfeld-center module
struct RedData {
  std::vector<std::string> names;
  std::vector<Label> underlying;                    // C-simple per center simple
  std::vector<int> dual;                            // involution on center indices
  std::vector<std::vector<FieldElement>> half;      // half[z][x] = scalar of phi_Z on x
  int index_of(const std::string& name) const;      // -1 when absent
};
using RedPtr = std::shared_ptr<const RedData>;

struct Wire {
  Label obj;     // underlying C-simple
  int red = -1;  // center simple index when the strand is red
  bool is_red() const { return red >= 0; }
};

// ---- fusion-tree bases --------------------------------------------------------

struct HomBasis {
  std::vector<Label> boundary;
  Label root;
  std::vector<std::vector<Label>> chains;  // lexicographic in internal labels
  size_t dim() const { return chains.size(); }
  long index_of(const std::vector<Label>& chain) const;  // -1 when absent
};

// deterministic fusion-tree basis of Hom(root, V_1 (x) ... (x) V_n)
HomBasis hom_space_basis(const FusionData& cat, const std::vector<Label>& objects, Label root);

struct HomVector {
  FusionPtr cat;
  HomBasis basis;
  std::vector<FieldElement> coords;

  static HomVector zero(const FusionPtr& cat, const std::vector<Label>& boundary, Label root);
  static HomVector unit_vector(const FusionPtr& cat, const std::vector<Label>& boundary,
                               Label root, size_t index);
  bool is_zero() const;
  HomVector operator+(const HomVector& o) const;
  HomVector operator-(const HomVector& o) const;
  HomVector scaled(const FieldElement& s) const;
  bool operator==(const HomVector& o) const;
};

// ---- diagrams -----------------------------------------------------------------

// label or summed-edge variable reference
struct LV {
  Label lab = -1;
  int var = -1;
  static LV L(Label l) { return {l, -1}; }
  static LV V(int v) { return {-1, v}; }
  bool is_var() const { return var >= 0; }
};

struct Diagram {
  FusionPtr cat;
  RedPtr red;  // may be null when no red strands occur
  // R-symbols sigma_{a,b} v^c_{ab} = R^{ab}_c v^c_{ba}, for Braid generators
  std::shared_ptr<const std::map<std::array<Label, 3>, FieldElement>> braiding;
  int n_vars = 0;
  std::vector<std::string> var_names;

  enum class G {
    Cup,        // insert (X, X*) at pos
    CupDual,    // insert (X*, X)
    Cap,        // consume (X, X*)
    CapDual,    // consume (X*, X)
    Coupon,     // insert a HomVector's boundary word
    MarkerA,    // first member of a dual-basis pair
    MarkerB,    // second member (dual-reversed word)
    HalfOver,   // (Z_red, X) -> (X, Z_red) via phi_Z(X)
    HalfUnder,  // (X, Z_red) -> (Z_red, X) via phi_Z(X)^{-1}
    RedMorph,   // relabel red strand, scalar coefficient (Hom_C between simples)
    Braid       // braiding of adjacent strands via the attached R-symbols
  };
  struct Op {
    G g;
    size_t pos = 0;
    LV obj;                  // cup/cap label (black), or underlying for red ops
    int red_label = -1;      // center simple for red cup/cap and half ops
    int red_to = -1;         // RedMorph target
    std::shared_ptr<const HomVector> coupon;
    std::vector<int> coupon_red;  // redness of coupon boundary (-1 = black)
    int marker = -1;
    FieldElement scalar;  // RedMorph coefficient
  };
  std::vector<Op> ops;
  struct MarkerInfo {
    std::vector<LV> word;
    int uses = 0;
  };
  std::vector<MarkerInfo> markers;

  // builders (positions refer to the word the op is applied to)
  Diagram& cup(size_t pos, Label x);
  Diagram& cup_var(size_t pos, int v);
  Diagram& cupdual(size_t pos, Label x);
  Diagram& cup_red(size_t pos, int z);
  Diagram& cap(size_t pos, Label x);
  Diagram& cap_var(size_t pos, int v);
  Diagram& capdual(size_t pos, Label x);
  Diagram& cap_red(size_t pos, int z);
  Diagram& coupon(size_t pos, const HomVector& h, std::vector<int> redness = {});
  Diagram& marker_a(size_t pos, int marker);
  Diagram& marker_b(size_t pos, int marker);
  Diagram& half_over(size_t pos, int z, Label x);
  Diagram& half_under(size_t pos, int z, Label x);
  Diagram& red_morph(size_t pos, int red_to, const FieldElement& scalar);
  Diagram& braid(size_t pos, bool positive);  // needs the braiding table
  int add_var(const std::string& name = "");
  int add_marker(std::vector<LV> word);
};

struct EvalResult {
  bool closed = false;
  FieldElement scalar;  // set when closed
  HomVector vec;        // set when the top boundary is free
};

// evaluate from the empty bottom boundary (root = unit)
EvalResult evaluate_diagram(const Diagram& d);
// evaluate from an explicit bottom state: root object, typed wires, amplitudes
// given as a HomVector over the wires' underlying word
EvalResult evaluate_diagram_from(const Diagram& d, Label root, const std::vector<Wire>& word,
                                 const HomVector& init);

// ---- derived operations ---------------------------------------------------------

// Pairing (phi, phi') = ev_B . (phi (x) phi'), phi in <W>, phi' in <W*-reversed>
FieldElement pair_homvectors(const HomVector& a, const HomVector& b);

// phi in <V..., X>, psi in <X*, W...>  ->  sqrt(d_X) ev_X-composite in <V..., W...>
HomVector compose_along(const HomVector& phi, const HomVector& psi, Label x);

// bases with pair(b_i, b*_j) = delta_{ij}; throws on singular Gram matrix
void dual_basis(const FusionPtr& cat, const std::vector<Label>& objects,
                std::vector<HomVector>& basis, std::vector<HomVector>& dual);

// ---- diagram file format --------------------------------------------------------
//
// One layer per line, generators separated by spaces:
//   id(x)  cup(x)  cupdual(x)  cap(x)  capdual(x)
//   cup(?i) ... with `sum: i` declared summed edge variables (weight d each)
//   halfbraid_over(Ze, x)  halfbraid_under(Ze, x)
//   coupon(#1: x y z)   first use, declares the boundary word
//   coupon(#1*)         dual partner (word is the dual-reverse)
// Labels resolve against the center names first (red strands), then simples.
Diagram parse_diagram(const std::string& text, const FusionPtr& cat, const RedPtr& red);

}  // namespace tvrt
