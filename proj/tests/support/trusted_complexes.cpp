#include "trusted_complexes.hpp"

#include <functional>
#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tvrt::testsupport {

namespace {

struct VTet {
  std::array<long, 4> v;
};

struct FaceIdent {
  int t1;
  int w1;  // face = opposite vertex slot
  int t2;
  int w2;
  std::vector<std::pair<long, long>> vmap;  // global vertex id correspondences
};

Triangulation build_from_tets(const std::vector<VTet>& tets, const std::vector<FaceIdent>& extra) {
  Triangulation t;
  t.adj.assign(tets.size(), {});
  auto set_gluing = [&](int t1, int w1, int t2, int w2, const Perm4& p) {
    FaceGluing fwd{t2, uint8_t(w2), p};
    FaceGluing bwd{t1, uint8_t(w1), p.inverse()};
    auto& s1 = t.adj[size_t(t1)][size_t(w1)];
    auto& s2 = t.adj[size_t(t2)][size_t(w2)];
    if (s1.exists() || s2.exists()) throw Error("build_from_tets: face glued twice");
    s1 = fwd;
    s2 = bwd;
  };
  // explicit identifications first
  for (const auto& fi : extra) {
    auto map_id = [&](long u) {
      for (const auto& [a, b] : fi.vmap)
        if (a == u) return b;
      throw Error("build_from_tets: unmapped vertex id");
    };
    Perm4 p;
    for (int i = 0; i < 4; ++i) {
      if (i == fi.w1) {
        p.img[size_t(i)] = uint8_t(fi.w2);
        continue;
      }
      long target = map_id(tets[size_t(fi.t1)].v[size_t(i)]);
      int j = -1;
      for (int k = 0; k < 4; ++k)
        if (k != fi.w2 && tets[size_t(fi.t2)].v[size_t(k)] == target) j = k;
      if (j < 0) throw Error("build_from_tets: identification target vertex missing");
      p.img[size_t(i)] = uint8_t(j);
    }
    set_gluing(fi.t1, fi.w1, fi.t2, fi.w2, p);
  }
  // auto-match remaining faces by sorted global id triples
  std::map<std::array<long, 3>, std::vector<std::pair<int, int>>> faces;
  for (size_t i = 0; i < tets.size(); ++i)
    for (int w = 0; w < 4; ++w) {
      if (t.adj[i][size_t(w)].exists()) continue;
      std::array<long, 3> tri{};
      int k = 0;
      for (int j = 0; j < 4; ++j)
        if (j != w) tri[size_t(k++)] = tets[i].v[size_t(j)];
      std::sort(tri.begin(), tri.end());
      faces[tri].emplace_back(int(i), w);
    }
  for (const auto& [tri, occ] : faces) {
    if (occ.size() != 2) throw Error("build_from_tets: face does not occur exactly twice");
    auto [t1, w1] = occ[0];
    auto [t2, w2] = occ[1];
    Perm4 p;
    for (int i = 0; i < 4; ++i) {
      if (i == w1) {
        p.img[size_t(i)] = uint8_t(w2);
        continue;
      }
      long u = tets[size_t(t1)].v[size_t(i)];
      int j = -1;
      for (int k = 0; k < 4; ++k)
        if (k != w2 && tets[size_t(t2)].v[size_t(k)] == u) j = k;
      if (j < 0) throw Error("build_from_tets: vertex id mismatch in auto-match");
      p.img[size_t(i)] = uint8_t(j);
    }
    set_gluing(t1, w1, t2, w2, p);
  }
  validate_closed_oriented(t);
  return t;
}

}  // namespace

Triangulation s3_double_tet() {
  std::vector<VTet> tets{{{0, 1, 2, 3}}, {{0, 1, 2, 3}}};
  // every face triple occurs once per copy; auto-match doubles the tetrahedron
  return build_from_tets(tets, {});
}

Triangulation lens_bipyramid(unsigned p, unsigned q) {
  if (p < 2) throw Error("lens_bipyramid needs p >= 2");
  const long N = 1000, S = 1001;
  std::vector<VTet> tets;
  for (unsigned i = 0; i < p; ++i)
    tets.push_back({{N, S, long(i), long((i + 1) % p)}});
  std::vector<FaceIdent> extra;
  for (unsigned i = 0; i < p; ++i) {
    // top cap face {N, i, i+1} of sector i -> bottom cap {S, i+q, i+q+1} of sector i+q
    FaceIdent fi;
    fi.t1 = int(i);
    fi.w1 = 1;  // opposite S
    fi.t2 = int((i + q) % p);
    fi.w2 = 0;  // opposite N
    fi.vmap = {{N, S},
               {long(i), long((i + q) % p)},
               {long((i + 1) % p), long((i + q + 1) % p)}};
    extra.push_back(fi);
  }
  return build_from_tets(tets, extra);
}

Triangulation rp3_16cell() {
  // tets of the 16-cell: sign patterns; quotient reps have s0 = +1
  auto index_of = [](std::array<int, 4> s) {
    if (s[0] < 0)
      for (auto& x : s) x = -x;
    return (s[1] < 0 ? 1 : 0) + (s[2] < 0 ? 2 : 0) + (s[3] < 0 ? 4 : 0);
  };
  Triangulation t;
  t.adj.assign(8, {});
  for (int b = 0; b < 8; ++b) {
    std::array<int, 4> s{1, (b & 1) ? -1 : 1, (b & 2) ? -1 : 1, (b & 4) ? -1 : 1};
    for (uint8_t f = 0; f < 4; ++f) {
      std::array<int, 4> s2 = s;
      s2[f] = -s2[f];
      int j = index_of(s2);
      t.adj[size_t(b)][f] = {j, f, Perm4::identity()};
    }
  }
  validate_closed_oriented(t);
  return t;
}

Triangulation s2xs1_prism() {
  // two stacked prisms layers over the boundary of a tetrahedron
  auto vid = [](int v, int level) { return long(v * 2 + (level % 2)); };
  std::vector<VTet> tets;
  const std::array<std::array<int, 3>, 4> triangles{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
  for (int layer = 0; layer < 2; ++layer)
    for (const auto& tr : triangles) {
      int a = tr[0], b = tr[1], c = tr[2];
      int l0 = layer, l1 = layer + 1;
      tets.push_back({{vid(a, l0), vid(b, l0), vid(c, l0), vid(c, l1)}});
      tets.push_back({{vid(a, l0), vid(b, l0), vid(b, l1), vid(c, l1)}});
      tets.push_back({{vid(a, l0), vid(a, l1), vid(b, l1), vid(c, l1)}});
    }
  return build_from_tets(tets, {});
}

Triangulation t3_kuhn() {
  auto vid = [](int x, int y, int z) { return long(4 * x + 2 * y + z); };
  auto coords = [](long id) {
    return std::array<int, 3>{int(id >> 2) & 1, int(id >> 1) & 1, int(id) & 1};
  };
  std::vector<VTet> tets;
  std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& pi : perms) {
    std::array<int, 3> pt{0, 0, 0};
    VTet vt{};
    vt.v[0] = vid(0, 0, 0);
    for (int k = 0; k < 3; ++k) {
      pt[size_t(pi[size_t(k)])] = 1;
      vt.v[size_t(k + 1)] = vid(pt[0], pt[1], pt[2]);
    }
    tets.push_back(vt);
  }
  // interior faces auto-match; boundary faces pair across the torus translations
  std::map<std::array<long, 3>, std::vector<std::pair<int, int>>> faces;
  for (size_t i = 0; i < tets.size(); ++i)
    for (int w = 0; w < 4; ++w) {
      std::array<long, 3> tri{};
      int k = 0;
      for (int j = 0; j < 4; ++j)
        if (j != w) tri[size_t(k++)] = tets[i].v[size_t(j)];
      std::sort(tri.begin(), tri.end());
      faces[tri].emplace_back(int(i), w);
    }
  std::vector<FaceIdent> extra;
  for (const auto& [tri, occ] : faces) {
    if (occ.size() != 1) continue;
    // find the facet axis with all coordinates zero
    int axis = -1;
    for (int ax = 0; ax < 3; ++ax) {
      bool all0 = true;
      for (long id : tri)
        if (coords(id)[size_t(ax)] != 0) all0 = false;
      if (all0) axis = ax;
    }
    if (axis < 0) continue;  // lives on an x=1 facet; handled from the other side
    std::array<long, 3> target = tri;
    for (auto& id : target) {
      auto c = coords(id);
      c[size_t(axis)] = 1;
      id = vid(c[0], c[1], c[2]);
    }
    std::sort(target.begin(), target.end());
    auto it = faces.find(target);
    if (it == faces.end() || it->second.size() != 1)
      throw Error("t3_kuhn: missing translated facet");
    FaceIdent fi;
    fi.t1 = occ[0].first;
    fi.w1 = occ[0].second;
    fi.t2 = it->second[0].first;
    fi.w2 = it->second[0].second;
    for (long id : tri) {
      auto c = coords(id);
      c[size_t(axis)] = 1;
      fi.vmap.emplace_back(id, vid(c[0], c[1], c[2]));
    }
    extra.push_back(fi);
  }
  return build_from_tets(tets, extra);
}

Triangulation disjoint_union(const Triangulation& a, const Triangulation& b) {
  Triangulation t = a;
  int off = int(a.tet_count());
  for (const auto& row : b.adj) {
    std::array<FaceGluing, 4> r = row;
    for (auto& g : r) g.tet += off;
    t.adj.push_back(r);
  }
  return t;
}

// ---- pi_1 homomorphism counting ----------------------------------------------------

namespace {

struct Presentation {
  int gens = 0;                       // edge classes
  std::vector<int> tree;              // 1 if the class is a spanning-tree edge
  // relations: triples of (generator, exponent)
  std::vector<std::array<std::pair<int, int>, 3>> rels;
};

Presentation presentation_of(const Triangulation& t) {
  EdgeClasses ec = edge_classes(t);
  VertexClasses vc = vertex_classes(t);
  Presentation pres;
  pres.gens = ec.count;
  pres.tree.assign(size_t(ec.count), 0);
  // spanning forest over (vertex classes, edge classes)
  std::vector<int> parent(size_t(vc.count));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[size_t(x)] != x) x = parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
    return x;
  };
  std::vector<bool> seen(size_t(ec.count), false);
  for (size_t i = 0; i < t.tet_count(); ++i)
    for (int e = 0; e < 6; ++e) {
      int c = ec.cls[i][size_t(e)];
      if (seen[size_t(c)]) continue;
      seen[size_t(c)] = true;
      auto [lo, hi] = edge_vertices(e);
      int va = vc.cls[i][size_t(lo)], vb = vc.cls[i][size_t(hi)];
      int ra = find(va), rb = find(vb);
      if (ra != rb) {
        parent[size_t(std::max(ra, rb))] = std::min(ra, rb);
        pres.tree[size_t(c)] = 1;
      }
    }
  for (size_t i = 0; i < t.tet_count(); ++i)
    for (int f = 0; f < 4; ++f) {
      std::array<int, 3> vs{};
      int k = 0;
      for (int v = 0; v < 4; ++v)
        if (v != f) vs[size_t(k++)] = v;
      auto leg = [&](int a, int b) {  // directed a -> b with a < b convention handled
        int slot = edge_index(a, b);
        int cls = ec.cls[i][size_t(slot)];
        int sgn = ec.sign[i][size_t(slot)];
        int exp = (a < b) ? sgn : -sgn;
        return std::make_pair(cls, exp);
      };
      pres.rels.push_back({leg(vs[0], vs[1]), leg(vs[1], vs[2]), leg(vs[2], vs[0])});
    }
  return pres;
}

}  // namespace

unsigned long hom_count_mod_p(const Triangulation& t, unsigned p) {
  Presentation pres = presentation_of(t);
  // rows: relations + tree-edge pins; columns: generators; entries mod p
  std::vector<std::vector<unsigned>> rows;
  for (const auto& rel : pres.rels) {
    std::vector<unsigned> row(size_t(pres.gens), 0);
    for (const auto& [g, e] : rel)
      row[size_t(g)] = (row[size_t(g)] + unsigned((e % int(p) + int(p))) ) % p;
    rows.push_back(std::move(row));
  }
  for (int g = 0; g < pres.gens; ++g)
    if (pres.tree[size_t(g)]) {
      std::vector<unsigned> row(size_t(pres.gens), 0);
      row[size_t(g)] = 1;
      rows.push_back(std::move(row));
    }
  // rank over F_p
  size_t rank = 0;
  size_t cols = size_t(pres.gens);
  for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    // normalize
    unsigned inv = 1;
    for (unsigned k = 1; k < p; ++k)
      if ((rows[rank][col] * k) % p == 1) inv = k;
    for (auto& x : rows[rank]) x = (x * inv) % p;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] % p == 0) continue;
      unsigned factor = rows[r][col] % p;
      for (size_t cc = 0; cc < cols; ++cc)
        rows[r][cc] = (rows[r][cc] + (p - factor) * rows[rank][cc]) % p;
    }
    ++rank;
  }
  unsigned long count = 1;
  for (size_t i = 0; i + rank < cols; ++i) count *= p;
  return count;
}

unsigned long hom_count_group(const Triangulation& t, const std::vector<std::vector<int>>& mult,
                              const std::vector<int>& inv) {
  Presentation pres = presentation_of(t);
  std::vector<int> free_gens;
  for (int g = 0; g < pres.gens; ++g)
    if (!pres.tree[size_t(g)]) free_gens.push_back(g);
  size_t n = mult.size();
  std::vector<int> assign(size_t(pres.gens), 0);
  unsigned long count = 0;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == free_gens.size()) {
      for (const auto& rel : pres.rels) {
        int acc = 0;
        for (const auto& [g, e] : rel) {
          int x = assign[size_t(g)];
          if (e < 0) x = inv[size_t(x)];  // legs carry exponent +-1
          acc = mult[size_t(acc)][size_t(x)];
        }
        if (acc != 0) return;
      }
      ++count;
      return;
    }
    for (size_t v = 0; v < n; ++v) {
      assign[size_t(free_gens[k])] = int(v);
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

void s3_tables(std::vector<std::vector<int>>& mult, std::vector<int>& inv) {
  // elements as permutations of {0,1,2}: 0:id 1:(01) 2:(02) 3:(12) 4:(012) 5:(021)
  auto apply = [](int g, int x) {
    static const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                    {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    return perms[g][x];
  };
  mult.assign(6, std::vector<int>(6, 0));
  inv.assign(6, 0);
  auto index_of = [&](std::array<int, 3> p) {
    for (int g = 0; g < 6; ++g) {
      bool same = true;
      for (int x = 0; x < 3; ++x)
        if (apply(g, x) != p[size_t(x)]) same = false;
      if (same) return g;
    }
    throw Error("internal: S3 table");
  };
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h) {
      std::array<int, 3> comp{};
      for (int x = 0; x < 3; ++x) comp[size_t(x)] = apply(g, apply(h, x));
      mult[size_t(g)][size_t(h)] = index_of(comp);
    }
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h)
      if (mult[size_t(g)][size_t(h)] == 0) inv[size_t(g)] = h;
}

void zn_tables(unsigned n, std::vector<std::vector<int>>& mult, std::vector<int>& inv) {
  mult.assign(n, std::vector<int>(n, 0));
  inv.assign(n, 0);
  for (unsigned a = 0; a < n; ++a) {
    inv[a] = int((n - a) % n);
    for (unsigned b = 0; b < n; ++b) mult[a][b] = int((a + b) % n);
  }
}

}  // namespace tvrt::testsupport
