#include "tvrt/tv.hpp"

#include <thread>

namespace tvrt {

namespace {

struct SumContext {
  const Triangulation& tri;
  const FusionData& cat;
  EdgeClasses ec;
  size_t n_classes;
  // per face (4 per tet): the three edge slots and the highest class involved
  struct FaceCheck {
    size_t tet;
    // oriented slot data (class, sign) for the three face edges (v0v1, v1v2, v0v2)
    std::array<int, 3> cls;
    std::array<int8_t, 3> sign;
  };
  std::vector<std::vector<FaceCheck>> face_at;  // keyed by the class that completes the face
  std::vector<std::vector<size_t>> tet_at;      // tets whose 6 edges complete at this class

  explicit SumContext(const Triangulation& t, const FusionData& c) : tri(t), cat(c) {
    ec = edge_classes(t);
    n_classes = size_t(ec.count);
    face_at.assign(n_classes, {});
    tet_at.assign(n_classes, {});
    for (size_t i = 0; i < t.tet_count(); ++i) {
      int tet_max = 0;
      for (int e = 0; e < 6; ++e) tet_max = std::max(tet_max, ec.cls[i][size_t(e)]);
      tet_at[size_t(tet_max)].push_back(i);
      for (int f = 0; f < 4; ++f) {
        std::array<int, 3> vs{};
        int k = 0;
        for (int v = 0; v < 4; ++v)
          if (v != f) vs[size_t(k++)] = v;
        FaceCheck fc;
        fc.tet = i;
        const std::array<std::array<int, 2>, 3> pairs{
            {{vs[0], vs[1]}, {vs[1], vs[2]}, {vs[0], vs[2]}}};
        int fmax = 0;
        for (int j = 0; j < 3; ++j) {
          int slot = edge_index(pairs[size_t(j)][0], pairs[size_t(j)][1]);
          fc.cls[size_t(j)] = ec.cls[i][size_t(slot)];
          fc.sign[size_t(j)] = ec.sign[i][size_t(slot)];
          fmax = std::max(fmax, fc.cls[size_t(j)]);
        }
        face_at[size_t(fmax)].push_back(fc);
      }
    }
  }

  Label oriented(const std::vector<Label>& l, int cls, int8_t sign) const {
    Label x = l[size_t(cls)];
    return sign > 0 ? x : cat.dual[size_t(x)];
  }

  bool face_ok(const FaceCheck& fc, const std::vector<Label>& l) const {
    Label a = oriented(l, fc.cls[0], fc.sign[0]);
    Label b = oriented(l, fc.cls[1], fc.sign[1]);
    Label e = oriented(l, fc.cls[2], fc.sign[2]);
    return cat.admissible(a, b, e);
  }

  FieldElement tet_weight(size_t i, const std::vector<Label>& l) const {
    auto lam = [&](int va, int vb) {
      int slot = edge_index(va, vb);
      return oriented(l, ec.cls[i][size_t(slot)], ec.sign[i][size_t(slot)]);
    };
    Label a = lam(0, 1), b = lam(1, 2), c = lam(2, 3), d = lam(0, 3), e = lam(0, 2),
          f = lam(1, 3);
    FieldElement w = cat.F0(a, b, c, d, e, f);
    if (w.is_zero()) return w;
    return w / (cat.sd(e) * cat.sd(f));
  }

  // depth-first over classes [k, n); partial = weight so far
  void walk(size_t k, std::vector<Label>& l, const FieldElement& partial, FieldElement& acc) const {
    if (k == n_classes) {
      acc = acc + partial;
      return;
    }
    for (Label x = 0; x < Label(cat.rank()); ++x) {
      l[k] = x;
      bool ok = true;
      for (const auto& fc : face_at[k])
        if (!face_ok(fc, l)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      FieldElement w = partial * cat.d(x);
      for (size_t ti : tet_at[k]) {
        w = w * tet_weight(ti, l);
        if (w.is_zero()) break;
      }
      if (w.is_zero()) continue;
      walk(k + 1, l, w, acc);
    }
  }
};

}  // namespace

FieldElement tv_state_sum(const Triangulation& tri, const FusionPtr& cat, unsigned threads) {
  validate_closed_oriented(tri);
  SumContext ctx(tri, *cat);
  VertexClasses vc = vertex_classes(tri);

  FieldElement total = cat->zero();
  if (ctx.n_classes == 0) {
    total = cat->one();
  } else if (threads <= 1) {
    std::vector<Label> l(ctx.n_classes, 0);
    ctx.walk(0, l, cat->one(), total);
  } else {
    // partition on the first edge class color
    std::vector<FieldElement> partial(cat->rank(), cat->zero());
    std::vector<std::thread> pool;
    unsigned stride = threads;
    for (unsigned w = 0; w < stride; ++w)
      pool.emplace_back([&, w]() {
        for (size_t x = w; x < cat->rank(); x += stride) {
          std::vector<Label> l(ctx.n_classes, 0);
          l[0] = Label(x);
          bool ok = true;
          for (const auto& fc : ctx.face_at[0])
            if (!ctx.face_ok(fc, l)) {
              ok = false;
              break;
            }
          if (!ok) continue;
          FieldElement acc = cat->zero();
          FieldElement start = cat->d(Label(x));
          for (size_t ti : ctx.tet_at[0]) {
            start = start * ctx.tet_weight(ti, l);
            if (start.is_zero()) break;
          }
          if (!start.is_zero()) ctx.walk(1, l, start, acc);
          partial[x] = acc;
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& p : partial) total = total + p;
  }
  FieldElement norm = cat->dim_squared_sum().inverse().pow(long(vc.count));
  return total * norm;
}

}  // namespace tvrt
