#pragma once

// Closed oriented 3-manifold triangulations given by face gluings, with the
// combinatorial validation the state sum needs (involutive fixed-point-free
// face pairing, coherent orientability, edge classes free of reversing
// identifications, spherical vertex links) and the four bistellar moves.
//
// Faces are indexed by the opposite vertex: face f of a tetrahedron is the
// triangle on the other three vertices.  A gluing maps all four vertices of
// the source onto the target, carrying face f onto face f'.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tvrt/cyclotomic.hpp"

namespace tvrt {

struct Perm4 {
  std::array<uint8_t, 4> img{0, 1, 2, 3};
  uint8_t operator()(uint8_t i) const { return img[i]; }
  static Perm4 identity() { return {}; }
  Perm4 inverse() const;
  Perm4 then(const Perm4& second) const;  // second . first
  int sign() const;
  bool operator==(const Perm4& o) const { return img == o.img; }
  std::string str() const;
};

struct FaceGluing {
  int tet = -1;
  uint8_t face = 0;
  Perm4 perm;  // vertex map source tet -> target tet, perm(face_src) = face_dst
  bool exists() const { return tet >= 0; }
};

struct Triangulation {
  std::vector<std::array<FaceGluing, 4>> adj;
  size_t tet_count() const { return adj.size(); }
};

// ---- loading & validation -------------------------------------------------------

// throws Error on structural problems (open faces, non-involutive gluing,
// self-glued face, non-orientable, reversed edge identification,
// non-spherical vertex link)
void validate_closed_oriented(const Triangulation& t);

Triangulation parse_triangulation(const std::string& text);   // parse + validate
Triangulation load_triangulation(const std::string& path);
std::string triangulation_to_text(const Triangulation& t);

// ---- derived combinatorics --------------------------------------------------------

// tetrahedron edge numbering: 01,02,03,12,13,23
int edge_index(int a, int b);                 // a != b, unordered
const std::array<int, 2>& edge_vertices(int e);

struct EdgeClasses {
  int count = 0;
  // per tet, per edge slot (see edge_index): class id and orientation sign of
  // the (low -> high) direction relative to the class representative
  std::vector<std::array<int, 6>> cls;
  std::vector<std::array<int8_t, 6>> sign;
  std::vector<int> degree;  // incidences per class
};
EdgeClasses edge_classes(const Triangulation& t);

struct VertexClasses {
  int count = 0;
  std::vector<std::array<int, 4>> cls;  // per (tet, vertex)
  std::vector<int> degree;              // corners per class
};
VertexClasses vertex_classes(const Triangulation& t);

// combinatorial isomorphism (relabeling of tets and vertices)
bool isomorphic(const Triangulation& a, const Triangulation& b);

// ---- bistellar moves ---------------------------------------------------------------

enum class PachnerKind { M23, M32, M14, M41 };

struct PachnerSite {
  int tet = -1;
  int aux = -1;  // face (M23), edge slot (M32), unused (M14), vertex (M41)
};

std::vector<PachnerSite> pachner_sites(const Triangulation& t, PachnerKind kind);
// new valid triangulation; throws Error when the site does not admit the move
Triangulation pachner_move(const Triangulation& t, PachnerKind kind, const PachnerSite& site);

}  // namespace tvrt
