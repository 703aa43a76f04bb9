#pragma once

// Drinfeld center machinery: modular (braided) extensions of fusion data, the
// solved center of Vec_{Z/N}, the product construction C (x) C-reversed for
// modular C, modular-data validation, the averaging projector and the gluing
// isomorphism.
//
// R-symbol semantics: sigma_{a,b} . v^c_{ab} = R^{ab}_c v^c_{ba}.
// Twists are the scalars of the ribbon element on simples; the s-matrix is
// the double-braiding trace, s_{AB} = sum_C d_C R^{AB}_C R^{BA}_C.

#include <functional>

#include "tvrt/diagram.hpp"
#include "tvrt/fusion.hpp"
#include "tvrt/matrix.hpp"

namespace tvrt {

struct ModularData {
  FusionPtr base;  // the braided category as fusion data in its own right
  std::map<std::array<Label, 3>, FieldElement> rsym;  // R^{ab}_c
  std::vector<FieldElement> twists;
  FMatrix smat;

  // zero-extended R accessor
  FieldElement R0(Label a, Label b, Label c) const;
  const FieldElement& theta(Label a) const { return twists[size_t(a)]; }
  size_t rank() const { return base->rank(); }
};
using ModularPtr = std::shared_ptr<const ModularData>;

struct CenterData {
  ModularPtr modular;
  // forget data: present for solved centers and files with underlying lines
  FusionPtr base_category;
  std::vector<Label> underlying;                    // center simple -> C simple
  std::vector<std::vector<FieldElement>> halfbraid;  // [z][x]
  bool has_forget() const { return base_category != nullptr; }
  RedPtr red_data() const;  // half-braiding table for the diagram engine
};
using CenterPtr = std::shared_ptr<const CenterData>;

// ---- construction -------------------------------------------------------------

// All pairs (g, chi) with chi a character of Z/N; half-braiding of (g,chi) on h
// is chi(h), twist chi(g), s-matrix chi(h)psi(g).  Every candidate scalar
// family is checked against the half-braiding coherence conditions, and the
// completeness of the list is certified by Dim(Z(C)) = Dim(C)^2.
// Everything lives over Q(zeta_{4N}) (the base needs sqrt(N) for its global
// dimension root).
CenterPtr solve_center_vecG(unsigned N);

// Z(C) = C (x) C-reversed for modular C: reversed braiding and inverted twists
// on the second factor; the s-matrix is recomputed from the product R-symbols.
// No forget map (not needed on the surgery side).
CenterPtr center_of_modular(const ModularPtr& m);

// ---- validation ---------------------------------------------------------------

// optional cross-module hook: evaluates the Hopf link with the given colors
using HopfEvaluator = std::function<FieldElement(Label, Label)>;

// Hexagons against F, ribbon/twist consistency, s-matrix identities
// (symmetry, unit row, nondegeneracy, row sum), Gauss sums p+-
// with p+ p- = sum d^2, and optionally p+ = p- (anomaly-freeness, asserted for
// center data) and the Hopf-link cross-check.
Report verify_modular(const ModularData& m, bool expect_anomaly_free,
                      const HopfEvaluator& hopf = nullptr);

// forget-map specific checks: half-braiding coherence (unit, channel
// naturality), underlying duals, and Dim(Z(C)) = Dim(C)^2
Report verify_center(const CenterData& z);

// ---- operations over the forget map ---------------------------------------------

// Averaging projector on Hom_C(Y, Z) (simple underlying objects):
//   P psi = (1/D^2) sum_X d_X (X-loop around psi with half-braid crossings).
// psi is a HomVector with root = underlying(Y) and boundary (underlying(Z)).
HomVector project_P(const HomVector& psi, int Y, int Z, const CenterData& center);

// Block matrix of (+)_Z <Z,A>(x)<Z*,B> -> (+)_X <A,X,B,X*>,
//   phi (x) psi -> (+)_X (sqrt(d_X) sqrt(d_Z)/D) [glued diagram].
struct GluingMap {
  std::vector<Label> a_word, b_word;
  struct Col {
    int z;
    size_t i, j;
  };
  std::vector<Col> cols;
  struct RowBlock {
    Label x;
    size_t offset, dim;
  };
  std::vector<RowBlock> rows;
  FMatrix matrix;
};
GluingMap gluing_isom(const std::vector<Label>& A, const std::vector<Label>& B,
                      const CenterData& center);

// ---- files ----------------------------------------------------------------------

// Center/modular file = category file plus R/twist/smat sections and optional
// underlying/halfbraid sections (the latter reference labels of a separately
// loaded base category).
ModularPtr build_modular(const CategoryFile& file);
ModularPtr load_modular(const std::string& path);
// loads the modular part; when the file carries underlying/halfbraid lines a
// base category must be supplied for the forget data to be attached
CenterPtr load_center(const std::string& path, const FusionPtr& base = nullptr);
std::string center_to_file_text(const CenterData& z);

}  // namespace tvrt
