#include "tvrt/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tvrt {

Perm4 Perm4::inverse() const {
  Perm4 r;
  for (uint8_t i = 0; i < 4; ++i) r.img[img[i]] = i;
  return r;
}

Perm4 Perm4::then(const Perm4& second) const {
  Perm4 r;
  for (uint8_t i = 0; i < 4; ++i) r.img[i] = second.img[img[i]];
  return r;
}

int Perm4::sign() const {
  int s = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (img[i] > img[j]) s = -s;
  return s;
}

std::string Perm4::str() const {
  std::string s;
  for (int i = 0; i < 4; ++i) s += char('0' + img[i]);
  return s;
}

namespace {

Perm4 transposition(uint8_t a, uint8_t b) {
  Perm4 p;
  std::swap(p.img[a], p.img[b]);
  return p;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[size_t(x)] != x) {
      parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
      x = parent[size_t(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[size_t(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  static const int tbl[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  int e = tbl[a][b];
  if (e < 0) throw Error("degenerate edge");
  return e;
}

const std::array<int, 2>& edge_vertices(int e) {
  static const std::array<std::array<int, 2>, 6> tbl{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  return tbl[size_t(e)];
}

// ---- validation -------------------------------------------------------------------

void validate_closed_oriented(const Triangulation& t) {
  size_t n = t.tet_count();
  if (n == 0) throw Error("triangulation is empty");
  for (size_t i = 0; i < n; ++i)
    for (uint8_t f = 0; f < 4; ++f) {
      const FaceGluing& g = t.adj[i][f];
      if (!g.exists()) throw Error("unglued face (closed triangulation required): tet " +
                                   std::to_string(i) + " face " + std::to_string(f));
      if (g.tet < 0 || size_t(g.tet) >= n) throw Error("gluing target out of range");
      if (g.perm(f) != g.face) throw Error("gluing permutation does not map face to face");
      if (g.tet == int(i) && g.face == f) throw Error("face glued to itself");
      const FaceGluing& back = t.adj[size_t(g.tet)][g.face];
      if (back.tet != int(i) || back.face != f || !(back.perm == g.perm.inverse()))
        throw Error("face pairing is not an involution at tet " + std::to_string(i) +
                    " face " + std::to_string(f));
    }
  // orientability: signs with sigma(t') = -sign(perm) sigma(t)
  std::vector<int> sigma(n, 0);
  for (size_t seed = 0; seed < n; ++seed) {
    if (sigma[seed] != 0) continue;
    sigma[seed] = 1;
    std::vector<size_t> stack{seed};
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      for (uint8_t f = 0; f < 4; ++f) {
        const FaceGluing& g = t.adj[i][f];
        int want = -g.perm.sign() * sigma[i];
        int& s = sigma[size_t(g.tet)];
        if (s == 0) {
          s = want;
          stack.push_back(size_t(g.tet));
        } else if (s != want) {
          throw Error("triangulation is not orientable");
        }
      }
    }
  }
  // directed edge classes must not meet their reverses
  {
    auto code = [&](size_t tet, int a, int b) {
      // 12 directed edges per tet: a*3 + (b adjusted)
      int bb = b > a ? b - 1 : b;
      return int(tet) * 12 + a * 3 + bb;
    };
    UnionFind uf(n * 12);
    for (size_t i = 0; i < n; ++i)
      for (uint8_t f = 0; f < 4; ++f) {
        const FaceGluing& g = t.adj[i][f];
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            if (a == b || a == f || b == f) continue;
            uf.unite(code(i, a, b), code(size_t(g.tet), g.perm(uint8_t(a)), g.perm(uint8_t(b))));
          }
      }
    for (size_t i = 0; i < n; ++i)
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
          if (uf.find(code(i, a, b)) == uf.find(code(i, b, a)))
            throw Error("edge identified with itself reversed (non-manifold edge)");
  }
  // vertex links must be spheres: chi(link) = 2 per vertex class
  {
    VertexClasses vc = vertex_classes(t);
    // link vertices: corner directions (tet, v, u)
    auto code = [&](size_t tet, int v, int u) {
      int uu = u > v ? u - 1 : u;
      return int(tet) * 12 + v * 3 + uu;
    };
    UnionFind uf(n * 12);
    for (size_t i = 0; i < n; ++i)
      for (uint8_t f = 0; f < 4; ++f) {
        const FaceGluing& g = t.adj[i][f];
        for (int v = 0; v < 4; ++v)
          for (int u = 0; u < 4; ++u) {
            if (v == u || v == f || u == f) continue;
            uf.unite(code(i, v, u), code(size_t(g.tet), g.perm(uint8_t(v)), g.perm(uint8_t(u))));
          }
      }
    std::vector<std::set<int>> link_verts(size_t(vc.count));
    std::vector<long> corners(size_t(vc.count), 0);
    for (size_t i = 0; i < n; ++i)
      for (int v = 0; v < 4; ++v) {
        int c = vc.cls[i][size_t(v)];
        corners[size_t(c)]++;
        for (int u = 0; u < 4; ++u)
          if (u != v) link_verts[size_t(c)].insert(uf.find(code(i, v, u)));
      }
    for (int c = 0; c < vc.count; ++c) {
      long F = corners[size_t(c)];
      if (F == 0) continue;
      if ((3 * F) % 2 != 0) throw Error("internal: odd link edge count");
      long E = 3 * F / 2;
      long V = long(link_verts[size_t(c)].size());
      if (V - E + F != 2)
        throw Error("vertex link is not a sphere (vertex class " + std::to_string(c) + ")");
    }
  }
}

// ---- loading ------------------------------------------------------------------------

Triangulation parse_triangulation(const std::string& text) {
  Triangulation t;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  long declared = -1;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "tets:") {
      if (!(ls >> declared) || declared <= 0)
        throw Error("triangulation line " + std::to_string(lineno) + ": bad tets count");
      t.adj.assign(size_t(declared), {});
    } else if (key == "glue:") {
      //  t.f -> t'.f' perm=abcd
      std::string src, arrow, dst, permtok;
      if (!(ls >> src >> arrow >> dst >> permtok) || arrow != "->")
        throw Error("triangulation line " + std::to_string(lineno) + ": expected t.f -> t'.f' perm=abcd");
      auto parse_tf = [&](const std::string& s, long& tet, int& face) {
        size_t dot = s.find('.');
        if (dot == std::string::npos)
          throw Error("triangulation line " + std::to_string(lineno) + ": expected t.f");
        tet = std::stol(s.substr(0, dot));
        face = std::stoi(s.substr(dot + 1));
        if (tet < 0 || tet >= declared || face < 0 || face > 3)
          throw Error("triangulation line " + std::to_string(lineno) + ": tet/face out of range");
      };
      long t1, t2;
      int f1, f2;
      parse_tf(src, t1, f1);
      parse_tf(dst, t2, f2);
      if (permtok.rfind("perm=", 0) != 0 || permtok.size() != 9)
        throw Error("triangulation line " + std::to_string(lineno) + ": expected perm=abcd");
      Perm4 p;
      std::array<bool, 4> seen{false, false, false, false};
      for (int i = 0; i < 4; ++i) {
        char c = permtok[size_t(5 + i)];
        if (c < '0' || c > '3')
          throw Error("triangulation line " + std::to_string(lineno) + ": bad permutation digit");
        p.img[size_t(i)] = uint8_t(c - '0');
        seen[size_t(c - '0')] = true;
      }
      if (!(seen[0] && seen[1] && seen[2] && seen[3]))
        throw Error("triangulation line " + std::to_string(lineno) + ": not a permutation");
      if (p(uint8_t(f1)) != uint8_t(f2))
        throw Error("triangulation line " + std::to_string(lineno) +
                    ": permutation does not map face to face");
      FaceGluing fwd{int(t2), uint8_t(f2), p};
      FaceGluing bwd{int(t1), uint8_t(f1), p.inverse()};
      auto& slot_f = t.adj[size_t(t1)][size_t(f1)];
      auto& slot_b = t.adj[size_t(t2)][size_t(f2)];
      if (slot_f.exists() && !(slot_f.tet == fwd.tet && slot_f.face == fwd.face &&
                               slot_f.perm == fwd.perm))
        throw Error("triangulation line " + std::to_string(lineno) + ": conflicting gluing");
      if (slot_b.exists() && !(slot_b.tet == bwd.tet && slot_b.face == bwd.face &&
                               slot_b.perm == bwd.perm))
        throw Error("triangulation line " + std::to_string(lineno) + ": conflicting gluing");
      slot_f = fwd;
      slot_b = bwd;
    } else {
      throw Error("triangulation line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (declared < 0) throw Error("triangulation file: missing tets line");
  validate_closed_oriented(t);
  return t;
}

Triangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open triangulation file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_triangulation(ss.str());
}

std::string triangulation_to_text(const Triangulation& t) {
  std::ostringstream os;
  os << "tets: " << t.tet_count() << "\n";
  for (size_t i = 0; i < t.tet_count(); ++i)
    for (uint8_t f = 0; f < 4; ++f) {
      const FaceGluing& g = t.adj[i][f];
      if (size_t(g.tet) < i || (size_t(g.tet) == i && g.face < f)) continue;  // one direction
      os << "glue: " << i << "." << int(f) << " -> " << g.tet << "." << int(g.face)
         << " perm=" << g.perm.str() << "\n";
    }
  return os.str();
}

// ---- derived combinatorics -----------------------------------------------------------

EdgeClasses edge_classes(const Triangulation& t) {
  size_t n = t.tet_count();
  auto code = [&](size_t tet, int a, int b) {
    int bb = b > a ? b - 1 : b;
    return int(tet) * 12 + a * 3 + bb;
  };
  UnionFind uf(n * 12);
  for (size_t i = 0; i < n; ++i)
    for (uint8_t f = 0; f < 4; ++f) {
      const FaceGluing& g = t.adj[i][f];
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          if (a == b || a == f || b == f) continue;
          uf.unite(code(i, a, b), code(size_t(g.tet), g.perm(uint8_t(a)), g.perm(uint8_t(b))));
        }
    }
  EdgeClasses ec;
  ec.cls.assign(n, {});
  ec.sign.assign(n, {});
  std::map<int, int> root_to_class;   // directed root of the chosen orientation -> class id
  std::map<int, int> other_to_class;  // the reverse root -> class id
  for (size_t i = 0; i < n; ++i)
    for (int e = 0; e < 6; ++e) {
      auto [a, b] = edge_vertices(e);
      int r1 = uf.find(code(i, a, b));
      int r2 = uf.find(code(i, b, a));
      int cls;
      auto it = root_to_class.find(r1);
      if (it != root_to_class.end()) {
        cls = it->second;
        ec.sign[i][size_t(e)] = 1;
      } else {
        auto jt = other_to_class.find(r1);
        if (jt != other_to_class.end()) {
          cls = jt->second;
          ec.sign[i][size_t(e)] = -1;
        } else {
          cls = ec.count++;
          root_to_class.emplace(r1, cls);
          other_to_class.emplace(r2, cls);
          ec.sign[i][size_t(e)] = 1;
        }
      }
      ec.cls[i][size_t(e)] = cls;
    }
  ec.degree.assign(size_t(ec.count), 0);
  for (size_t i = 0; i < n; ++i)
    for (int e = 0; e < 6; ++e) ec.degree[size_t(ec.cls[i][size_t(e)])]++;
  return ec;
}

VertexClasses vertex_classes(const Triangulation& t) {
  size_t n = t.tet_count();
  UnionFind uf(n * 4);
  for (size_t i = 0; i < n; ++i)
    for (uint8_t f = 0; f < 4; ++f) {
      const FaceGluing& g = t.adj[i][f];
      for (int v = 0; v < 4; ++v)
        if (v != f) uf.unite(int(i) * 4 + v, g.tet * 4 + g.perm(uint8_t(v)));
    }
  VertexClasses vc;
  vc.cls.assign(n, {});
  std::map<int, int> root_to_class;
  for (size_t i = 0; i < n; ++i)
    for (int v = 0; v < 4; ++v) {
      int r = uf.find(int(i) * 4 + v);
      auto it = root_to_class.find(r);
      int cls;
      if (it == root_to_class.end()) {
        cls = vc.count++;
        root_to_class.emplace(r, cls);
      } else {
        cls = it->second;
      }
      vc.cls[i][size_t(v)] = cls;
    }
  vc.degree.assign(size_t(vc.count), 0);
  for (size_t i = 0; i < n; ++i)
    for (int v = 0; v < 4; ++v) vc.degree[size_t(vc.cls[i][size_t(v)])]++;
  return vc;
}

// ---- canonical form / isomorphism ------------------------------------------------------

namespace {

// BFS-normalized encoding from a seed (tet, vertex relabeling)
std::vector<int> encode_from(const Triangulation& t, size_t seed, const Perm4& sigma) {
  size_t n = t.tet_count();
  std::vector<int> newindex(n, -1);
  std::vector<Perm4> relab(n);  // old vertices -> new vertices
  std::vector<size_t> order;
  newindex[seed] = 0;
  relab[seed] = sigma;
  order.push_back(seed);
  std::vector<int> enc;
  for (size_t k = 0; k < order.size(); ++k) {
    size_t i = order[k];
    // visit faces in new-label order
    Perm4 inv = relab[i].inverse();
    for (uint8_t nf = 0; nf < 4; ++nf) {
      uint8_t f = inv(nf);
      const FaceGluing& g = t.adj[i][f];
      size_t j = size_t(g.tet);
      if (newindex[j] < 0) {
        newindex[j] = int(order.size());
        // choose the neighbor's relabeling so the gluing becomes "identity-like":
        // new vertices of j = image of new vertices of i under the gluing
        relab[j] = g.perm.inverse().then(relab[i]);
        // the face vertex itself must map consistently; perm(f) = face, fine
        order.push_back(j);
      }
      Perm4 glue_new = relab[i].inverse().then(g.perm).then(relab[j]);
      enc.push_back(newindex[j]);
      enc.push_back(int(glue_new.img[0]) * 64 + int(glue_new.img[1]) * 16 +
                    int(glue_new.img[2]) * 4 + int(glue_new.img[3]));
    }
  }
  if (order.size() != n) enc.push_back(-2);  // disconnected: flag (compare equal only together)
  return enc;
}

std::vector<Perm4> all_perms() {
  std::vector<Perm4> out;
  std::array<uint8_t, 4> v{0, 1, 2, 3};
  std::sort(v.begin(), v.end());
  do {
    Perm4 p;
    p.img = v;
    out.push_back(p);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<int> canonical_encoding(const Triangulation& t) {
  std::vector<int> best;
  for (size_t seed = 0; seed < t.tet_count(); ++seed)
    for (const Perm4& sigma : all_perms()) {
      std::vector<int> enc = encode_from(t, seed, sigma);
      if (best.empty() || enc < best) best = std::move(enc);
    }
  return best;
}

}  // namespace

bool isomorphic(const Triangulation& a, const Triangulation& b) {
  if (a.tet_count() != b.tet_count()) return false;
  return canonical_encoding(a) == canonical_encoding(b);
}

// ---- bistellar moves --------------------------------------------------------------------

namespace {

struct Replacement {
  std::vector<int> removed;
  int added = 0;
  struct Internal {
    int local_a;
    uint8_t face_a;
    int local_b;
    uint8_t face_b;
    Perm4 perm;  // vertices of local_a -> local_b
  };
  std::vector<Internal> internal;
  struct BFace {
    int old_tet;
    uint8_t old_face;
    int local;
    uint8_t new_face;
    Perm4 mu;  // old tet vertices -> new tet vertices, mu(old_face) = new_face
  };
  std::vector<BFace> boundary;
};

Triangulation apply_replacement(const Triangulation& t, const Replacement& r) {
  size_t n = t.tet_count();
  std::vector<int> remap(n, -1);
  std::vector<bool> removed(n, false);
  for (int i : r.removed) removed[size_t(i)] = true;
  int next = 0;
  for (size_t i = 0; i < n; ++i)
    if (!removed[i]) remap[i] = next++;
  int base = next;  // local new tets start here
  Triangulation out;
  out.adj.assign(size_t(base + r.added), {});
  // copy kept gluings between kept tets
  for (size_t i = 0; i < n; ++i) {
    if (removed[i]) continue;
    for (uint8_t f = 0; f < 4; ++f) {
      const FaceGluing& g = t.adj[i][f];
      if (removed[size_t(g.tet)]) continue;  // patched via boundary
      out.adj[size_t(remap[i])][f] = {remap[size_t(g.tet)], g.face, g.perm};
    }
  }
  for (const auto& in : r.internal) {
    out.adj[size_t(base + in.local_a)][in.face_a] = {base + in.local_b, in.face_b, in.perm};
    out.adj[size_t(base + in.local_b)][in.face_b] = {base + in.local_a, in.face_a,
                                                     in.perm.inverse()};
  }
  // boundary lookup
  std::map<std::pair<int, int>, const Replacement::BFace*> bmap;
  for (const auto& bf : r.boundary) bmap.emplace(std::make_pair(bf.old_tet, int(bf.old_face)), &bf);
  for (const auto& bf : r.boundary) {
    const FaceGluing& old = t.adj[size_t(bf.old_tet)][bf.old_face];
    int nt = base + bf.local;
    if (!removed[size_t(old.tet)]) {
      // new tet glued to the surviving outside tet
      Perm4 nu = bf.mu.inverse().then(old.perm);  // new vertices -> outside vertices
      out.adj[size_t(nt)][bf.new_face] = {remap[size_t(old.tet)], old.face, nu};
      out.adj[size_t(remap[size_t(old.tet)])][old.face] = {nt, bf.new_face, nu.inverse()};
    } else {
      // partner is another boundary face of the removed region
      auto it = bmap.find(std::make_pair(old.tet, int(old.face)));
      if (it == bmap.end()) throw Error("internal: unmatched region boundary face");
      const Replacement::BFace& bf2 = *it->second;
      Perm4 nu = bf.mu.inverse().then(old.perm).then(bf2.mu);
      out.adj[size_t(nt)][bf.new_face] = {base + bf2.local, bf2.new_face, nu};
      out.adj[size_t(base + bf2.local)][bf2.new_face] = {nt, bf.new_face, nu.inverse()};
    }
  }
  for (size_t i = 0; i < out.tet_count(); ++i)
    for (uint8_t f = 0; f < 4; ++f)
      if (!out.adj[i][f].exists()) throw Error("internal: replacement left an open face");
  return out;
}

// walk around an edge of expected degree 3; returns false when inadmissible
struct EdgeWalk {
  std::array<int, 3> tets;
  std::array<uint8_t, 3> posA, posB, pos_qprev, pos_qcur;
};

bool walk_degree3(const Triangulation& t, int tet0, int slot, EdgeWalk& w) {
  auto [lo, hi] = edge_vertices(slot);
  uint8_t A = uint8_t(lo), B = uint8_t(hi);
  std::array<uint8_t, 2> others{};
  int k = 0;
  for (uint8_t v = 0; v < 4; ++v)
    if (v != A && v != B) others[size_t(k++)] = v;
  // q_prev = others[1], q_cur = others[0]; leave through the face opposite q_prev
  uint8_t qprev = others[1], qcur = others[0];
  int tet = tet0;
  uint8_t a = A, b = B;
  for (int i = 0; i < 3; ++i) {
    w.tets[size_t(i)] = tet;
    w.posA[size_t(i)] = a;
    w.posB[size_t(i)] = b;
    w.pos_qprev[size_t(i)] = qprev;
    w.pos_qcur[size_t(i)] = qcur;
    const FaceGluing& g = t.adj[size_t(tet)][qprev];
    uint8_t na = g.perm(a), nb = g.perm(b), nprev = g.perm(qcur), ncur = g.perm(qprev);
    tet = g.tet;
    a = na;
    b = nb;
    qprev = nprev;
    qcur = ncur;
  }
  if (tet != tet0 || a != A || b != B || qprev != others[1] || qcur != others[0]) return false;
  if (w.tets[0] == w.tets[1] || w.tets[1] == w.tets[2] || w.tets[0] == w.tets[2]) return false;
  return true;
}

// A 4-1 site is a vertex whose star is a cone over the boundary tetrahedron:
// four distinct corner tets (t_i, v_i), each inner face of t_i glued to
// another corner so that outer vertices keep a coherent identity j_i; the
// coherent identities become the vertices of the single replacement tet.
struct Cone4 {
  std::array<int, 4> tets;
  std::array<uint8_t, 4> center;       // v_i
  std::array<Perm4, 4> mu;             // old vertices of t_i -> new tet vertices
};

bool match_41_site(const Triangulation& t, int tet0, int v0, Cone4& cone) {
  // collect the corner orbit of (tet0, v0)
  std::vector<std::pair<int, uint8_t>> corners;
  std::vector<std::pair<int, uint8_t>> stack{{tet0, uint8_t(v0)}};
  auto seen = [&](int tt, uint8_t vv) {
    for (auto& [a, b] : corners)
      if (a == tt && b == vv) return true;
    return false;
  };
  while (!stack.empty()) {
    auto [tt, vv] = stack.back();
    stack.pop_back();
    if (seen(tt, vv)) continue;
    corners.emplace_back(tt, vv);
    if (corners.size() > 4) return false;
    for (uint8_t f = 0; f < 4; ++f) {
      if (f == vv) continue;
      const FaceGluing& g = t.adj[size_t(tt)][f];
      stack.emplace_back(g.tet, g.perm(vv));
    }
  }
  if (corners.size() != 4) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (corners[size_t(i)].first == corners[size_t(j)].first) return false;
  auto corner_of = [&](int tt) {
    for (int i = 0; i < 4; ++i)
      if (corners[size_t(i)].first == tt) return i;
    return -1;
  };
  // outer-vertex identities: the inner face of t_i opposite u leads to corner j_i(u)
  std::array<std::array<int, 4>, 4> jmap{};
  for (int i = 0; i < 4; ++i) {
    auto [tt, vv] = corners[size_t(i)];
    for (uint8_t u = 0; u < 4; ++u) {
      jmap[size_t(i)][u] = -1;
      if (u == vv) continue;
      const FaceGluing& g = t.adj[size_t(tt)][u];  // face opposite u contains the center
      int k = corner_of(g.tet);
      if (k < 0 || k == i) return false;
      if (g.perm(vv) != corners[size_t(k)].second) return false;  // center maps to center
      jmap[size_t(i)][u] = k;
    }
    // the three inner faces must point at the three other corners
    std::array<bool, 4> hit{false, false, false, false};
    hit[size_t(i)] = true;
    for (uint8_t u = 0; u < 4; ++u)
      if (u != vv) {
        if (hit[size_t(jmap[size_t(i)][u])]) return false;
        hit[size_t(jmap[size_t(i)][u])] = true;
      }
  }
  // coherence across inner gluings: outer vertices keep their identity
  for (int i = 0; i < 4; ++i) {
    auto [tt, vv] = corners[size_t(i)];
    for (uint8_t u = 0; u < 4; ++u) {
      if (u == vv) continue;
      const FaceGluing& g = t.adj[size_t(tt)][u];
      int k = jmap[size_t(i)][u];
      for (uint8_t w = 0; w < 4; ++w) {
        if (w == u || w == vv) continue;
        if (jmap[size_t(k)][g.perm(w)] != jmap[size_t(i)][w]) return false;
      }
    }
  }
  for (int i = 0; i < 4; ++i) {
    cone.tets[size_t(i)] = corners[size_t(i)].first;
    cone.center[size_t(i)] = corners[size_t(i)].second;
    Perm4 mu;
    mu.img[corners[size_t(i)].second] = uint8_t(i);
    for (uint8_t u = 0; u < 4; ++u)
      if (u != corners[size_t(i)].second) mu.img[u] = uint8_t(jmap[size_t(i)][u]);
    cone.mu[size_t(i)] = mu;
  }
  return true;
}

}  // namespace

std::vector<PachnerSite> pachner_sites(const Triangulation& t, PachnerKind kind) {
  std::vector<PachnerSite> sites;
  switch (kind) {
    case PachnerKind::M23:
      for (size_t i = 0; i < t.tet_count(); ++i)
        for (uint8_t f = 0; f < 4; ++f) {
          const FaceGluing& g = t.adj[i][f];
          if (g.tet == int(i)) continue;       // the move needs two distinct tets
          if (size_t(g.tet) < i) continue;     // record each internal face once
          sites.push_back({int(i), int(f)});
        }
      break;
    case PachnerKind::M32: {
      EdgeClasses ec = edge_classes(t);
      std::vector<bool> seen(size_t(ec.count), false);
      for (size_t i = 0; i < t.tet_count(); ++i)
        for (int e = 0; e < 6; ++e) {
          int c = ec.cls[i][size_t(e)];
          if (seen[size_t(c)] || ec.degree[size_t(c)] != 3) continue;
          seen[size_t(c)] = true;
          EdgeWalk w;
          if (walk_degree3(t, int(i), e, w)) sites.push_back({int(i), e});
        }
      break;
    }
    case PachnerKind::M14:
      for (size_t i = 0; i < t.tet_count(); ++i) sites.push_back({int(i), -1});
      break;
    case PachnerKind::M41: {
      VertexClasses vc = vertex_classes(t);
      std::vector<bool> seen(size_t(vc.count), false);
      for (size_t i = 0; i < t.tet_count(); ++i)
        for (int v = 0; v < 4; ++v) {
          int c = vc.cls[i][size_t(v)];
          if (seen[size_t(c)] || vc.degree[size_t(c)] != 4) continue;
          seen[size_t(c)] = true;
          Cone4 cone;
          if (match_41_site(t, int(i), v, cone)) sites.push_back({int(i), v});
        }
      break;
    }
  }
  return sites;
}

Triangulation pachner_move(const Triangulation& t, PachnerKind kind, const PachnerSite& site) {
  Replacement r;
  switch (kind) {
    case PachnerKind::M23: {
      int T0 = site.tet;
      uint8_t fa = uint8_t(site.aux);
      const FaceGluing& g = t.adj[size_t(T0)][fa];
      int T1 = g.tet;
      uint8_t fb = g.face;
      const Perm4& pi = g.perm;
      if (T1 == T0) throw Error("2-3 move needs two distinct tetrahedra");
      std::array<uint8_t, 3> tri{};
      int k = 0;
      for (uint8_t v = 0; v < 4; ++v)
        if (v != fa) tri[size_t(k++)] = v;
      auto pos_in = [&](uint8_t x, uint8_t w) -> uint8_t {
        // position of T0-vertex w inside the new tet L_x
        if (w == fa) return 0;
        std::array<uint8_t, 2> yz{};
        int m = 0;
        for (uint8_t v : tri)
          if (v != x) yz[size_t(m++)] = v;
        if (w == yz[0]) return 2;
        if (w == yz[1]) return 3;
        return 1;  // w == x: the face slot pointing at T1's side apex
      };
      r.removed = {T0, T1};
      r.added = 3;
      for (int ix = 0; ix < 3; ++ix) {
        uint8_t x = tri[size_t(ix)];
        for (int iy = ix + 1; iy < 3; ++iy) {
          uint8_t y = tri[size_t(iy)];
          uint8_t wshared = 0;
          for (uint8_t v : tri)
            if (v != x && v != y) wshared = v;
          Perm4 p;  // L_x vertices -> L_y vertices
          p.img[0] = 0;
          p.img[1] = 1;
          p.img[pos_in(x, wshared)] = pos_in(y, wshared);
          p.img[pos_in(x, y)] = pos_in(y, x);
          r.internal.push_back({ix, pos_in(x, y), iy, pos_in(y, x), p});
        }
      }
      for (int ix = 0; ix < 3; ++ix) {
        uint8_t x = tri[size_t(ix)];
        // T0 side: face opposite x -> L_x face 1
        Perm4 mu0;
        mu0.img[fa] = 0;
        mu0.img[x] = 1;
        for (uint8_t v : tri)
          if (v != x) mu0.img[v] = pos_in(x, v);
        r.boundary.push_back({T0, x, ix, 1, mu0});
        // T1 side: face opposite pi(x) -> L_x face 0
        Perm4 mu1;
        mu1.img[fb] = 1;
        mu1.img[pi(x)] = 0;
        for (uint8_t v : tri)
          if (v != x) mu1.img[pi(v)] = pos_in(x, v);
        r.boundary.push_back({T1, pi(x), ix, 0, mu1});
      }
      break;
    }
    case PachnerKind::M32: {
      EdgeWalk w;
      if (!walk_degree3(t, site.tet, site.aux, w))
        throw Error("3-2 move: edge is not a degree-3 edge with distinct tetrahedra");
      // U (local 0, A-apex), V (local 1, B-apex); equator q_i at position i+1,
      // q_i shared between S_i and S_{i+1}
      r.removed = {w.tets[0], w.tets[1], w.tets[2]};
      r.added = 2;
      Perm4 ident;
      r.internal.push_back({0, 0, 1, 0, ident});
      for (int i = 0; i < 3; ++i) {
        // in S_i: q_{i-1} at pos_qprev, q_i at pos_qcur
        uint8_t eq_prev = uint8_t(((i - 1) + 3) % 3 + 1);  // U/V position of q_{i-1}
        uint8_t eq_cur = uint8_t(i + 1);
        uint8_t eq_missing = uint8_t((i + 1) % 3 + 1);
        // A-side face (opposite posB) -> U face eq_missing
        Perm4 muA;
        muA.img[w.posA[size_t(i)]] = 0;
        muA.img[w.pos_qprev[size_t(i)]] = eq_prev;
        muA.img[w.pos_qcur[size_t(i)]] = eq_cur;
        muA.img[w.posB[size_t(i)]] = eq_missing;
        r.boundary.push_back({w.tets[size_t(i)], w.posB[size_t(i)], 0, eq_missing, muA});
        // B-side face (opposite posA) -> V face eq_missing
        Perm4 muB;
        muB.img[w.posB[size_t(i)]] = 0;
        muB.img[w.pos_qprev[size_t(i)]] = eq_prev;
        muB.img[w.pos_qcur[size_t(i)]] = eq_cur;
        muB.img[w.posA[size_t(i)]] = eq_missing;
        r.boundary.push_back({w.tets[size_t(i)], w.posA[size_t(i)], 1, eq_missing, muB});
      }
      break;
    }
    case PachnerKind::M14: {
      int T = site.tet;
      r.removed = {T};
      r.added = 4;
      for (uint8_t f = 0; f < 4; ++f)
        for (uint8_t g2 = uint8_t(f + 1); g2 < 4; ++g2)
          r.internal.push_back({int(f), g2, int(g2), f, transposition(f, g2)});
      for (uint8_t f = 0; f < 4; ++f) r.boundary.push_back({T, f, int(f), f, Perm4::identity()});
      break;
    }
    case PachnerKind::M41: {
      Cone4 cone;
      if (!match_41_site(t, site.tet, site.aux, cone))
        throw Error("4-1 move: vertex is not a degree-4 coning vertex");
      r.removed = {cone.tets[0], cone.tets[1], cone.tets[2], cone.tets[3]};
      r.added = 1;
      for (uint8_t i = 0; i < 4; ++i)
        r.boundary.push_back({cone.tets[size_t(i)], cone.center[size_t(i)], 0, i,
                              cone.mu[size_t(i)]});
      break;
    }
  }
  Triangulation out = apply_replacement(t, r);
  validate_closed_oriented(out);
  return out;
}

}  // namespace tvrt
