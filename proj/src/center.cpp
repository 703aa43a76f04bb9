#include "tvrt/center.hpp"

#include <sstream>

namespace tvrt {

FieldElement ModularData::R0(Label a, Label b, Label c) const {
  if (!base->admissible(a, b, c)) return base->zero();
  auto it = rsym.find({a, b, c});
  if (it == rsym.end())
    throw Error("missing R entry for admissible (" + base->names[size_t(a)] + "," +
                base->names[size_t(b)] + ";" + base->names[size_t(c)] + ")");
  return it->second;
}

RedPtr CenterData::red_data() const {
  if (!has_forget()) throw Error("center data lacks a forget map");
  auto rd = std::make_shared<RedData>();
  rd->names = modular->base->names;
  rd->underlying = underlying;
  rd->dual.resize(modular->rank());
  for (size_t z = 0; z < modular->rank(); ++z)
    rd->dual[z] = modular->base->dual[z];
  rd->half = halfbraid;
  return rd;
}

// ---- sqrt(N) via the quadratic Gauss sum in Q(zeta_{4N}) -------------------------

namespace {

FieldElement sqrt_of_n(const FieldPtr& f4n, unsigned N) {
  unsigned M = 4 * N;
  if (f4n->order != M) throw Error("internal: wrong field for Gauss sum");
  FieldElement g = FieldElement::zero(f4n);
  for (unsigned long k = 0; k < M; ++k)
    g = g + FieldElement::zeta_pow(f4n, long((k * k) % M));
  FieldElement i = FieldElement::zeta_pow(f4n, long(N));  // i = zeta_{4N}^N
  FieldElement denom = (FieldElement::one(f4n) + i) * FieldElement::from_int(f4n, 2);
  FieldElement root = g / denom;
  if (!(root * root == FieldElement::from_int(f4n, long(N))))
    throw Error("internal: Gauss sum square root failed");
  return root;
}

FusionPtr make_vec_zn(unsigned N, const FieldPtr& f) {
  auto c = std::make_shared<FusionData>();
  c->field = f;
  for (unsigned g = 0; g < N; ++g) c->names.push_back("g" + std::to_string(g));
  c->unit = 0;
  c->dual.resize(N);
  c->dims.assign(N, FieldElement::one(f));
  c->sqrt_dims.assign(N, FieldElement::one(f));
  c->fuse.assign(N, std::vector<std::vector<char>>(N, std::vector<char>(N, 0)));
  for (unsigned a = 0; a < N; ++a) {
    c->dual[a] = Label((N - a) % N);
    for (unsigned b = 0; b < N; ++b) c->fuse[a][b][(a + b) % N] = 1;
  }
  for (Label a = 0; a < Label(N); ++a)
    for (Label b = 0; b < Label(N); ++b)
      for (Label cc = 0; cc < Label(N); ++cc) {
        Label d = Label((a + b + cc) % Label(N));
        c->fsym.emplace(std::array<Label, 6>{a, b, cc, d, Label((a + b) % Label(N)),
                                             Label((b + cc) % Label(N))},
                        FieldElement::one(f));
      }
  c->global_dim_root = sqrt_of_n(f, N);
  c->finalize();
  return c;
}

}  // namespace

CenterPtr solve_center_vecG(unsigned N) {
  if (N < 1) throw Error("solve_center_vecG needs N >= 1");
  FieldPtr f = cyclotomic_field(4 * N);
  FusionPtr base = make_vec_zn(N, f);

  // brute-force the defining conditions: a half-braiding on (g, -) is a scalar
  // family phi(h) with phi(0) = 1, phi(h+h') = phi(h)phi(h'); multiplicativity
  // forces phi(h) = w^h with w^N = 1, so enumerate w over the N-th roots
  auto zN = [&](long k) { return FieldElement::zeta_pow(f, 4 * k); };  // zeta_N^k
  size_t n2 = size_t(N) * N;
  auto zc = std::make_shared<FusionData>();
  zc->field = f;
  auto md = std::make_shared<ModularData>();
  std::vector<Label> underlying;
  std::vector<std::vector<FieldElement>> half;

  for (unsigned g = 0; g < N; ++g)
    for (unsigned j = 0; j < N; ++j) {
      zc->names.push_back("g" + std::to_string(g) + "x" + std::to_string(j));
      underlying.push_back(Label(g));
      std::vector<FieldElement> row;
      for (unsigned h = 0; h < N; ++h) row.push_back(zN(long(j) * long(h)));
      // coherence: unit and multiplicativity over every fusion channel
      if (!row[0].is_one()) throw Error("internal: half-braiding fails on the unit");
      for (unsigned h1 = 0; h1 < N; ++h1)
        for (unsigned h2 = 0; h2 < N; ++h2)
          if (!(row[(h1 + h2) % N] == row[h1] * row[h2]))
            throw Error("internal: half-braiding fails naturality");
      half.push_back(std::move(row));
    }
  auto idx = [&](unsigned g, unsigned j) { return Label(g * N + j); };
  zc->unit = idx(0, 0);
  zc->dual.resize(n2);
  zc->dims.assign(n2, FieldElement::one(f));
  zc->sqrt_dims.assign(n2, FieldElement::one(f));
  zc->fuse.assign(n2, std::vector<std::vector<char>>(n2, std::vector<char>(n2, 0)));
  for (unsigned g1 = 0; g1 < N; ++g1)
    for (unsigned j1 = 0; j1 < N; ++j1)
      for (unsigned g2 = 0; g2 < N; ++g2)
        for (unsigned j2 = 0; j2 < N; ++j2)
          zc->fuse[size_t(idx(g1, j1))][size_t(idx(g2, j2))]
                  [size_t(idx((g1 + g2) % N, (j1 + j2) % N))] = 1;
  for (unsigned g = 0; g < N; ++g)
    for (unsigned j = 0; j < N; ++j)
      zc->dual[size_t(idx(g, j))] = idx((N - g) % N, (N - j) % N);
  // F = 1 on all admissible tuples
  for (unsigned g1 = 0; g1 < N; ++g1)
    for (unsigned j1 = 0; j1 < N; ++j1)
      for (unsigned g2 = 0; g2 < N; ++g2)
        for (unsigned j2 = 0; j2 < N; ++j2)
          for (unsigned g3 = 0; g3 < N; ++g3)
            for (unsigned j3 = 0; j3 < N; ++j3) {
              Label a = idx(g1, j1), b = idx(g2, j2), c = idx(g3, j3);
              Label d = idx((g1 + g2 + g3) % N, (j1 + j2 + j3) % N);
              Label e = idx((g1 + g2) % N, (j1 + j2) % N);
              Label ff = idx((g2 + g3) % N, (j2 + j3) % N);
              zc->fsym.emplace(std::array<Label, 6>{a, b, c, d, e, ff},
                               FieldElement::one(f));
            }
  zc->global_dim_root = FieldElement::from_int(f, long(N));
  zc->finalize();

  md->base = zc;
  md->twists.resize(n2, FieldElement::one(f));
  for (unsigned g = 0; g < N; ++g)
    for (unsigned j = 0; j < N; ++j)
      md->twists[size_t(idx(g, j))] = zN(long(j) * long(g));  // chi(g)
  for (unsigned g1 = 0; g1 < N; ++g1)
    for (unsigned j1 = 0; j1 < N; ++j1)
      for (unsigned g2 = 0; g2 < N; ++g2)
        for (unsigned j2 = 0; j2 < N; ++j2) {
          Label a = idx(g1, j1), b = idx(g2, j2);
          Label c = idx((g1 + g2) % N, (j1 + j2) % N);
          // crossing scalar: the half-braiding of the first object on the
          // underlying object of the second
          md->rsym.emplace(std::array<Label, 3>{a, b, c}, zN(long(j1) * long(g2)));
        }
  md->smat = FMatrix(f, n2, n2);
  for (size_t a = 0; a < n2; ++a)
    for (size_t b = 0; b < n2; ++b) {
      // s_{AB} = sum_C d_C (R^{AB}_C R^{BA}_C)^{-1}: the Hopf-link chirality
      // that pairs with the twists so S, T generate the torus action
      Label c = zc->channel(Label(a), Label(b));
      md->smat.at(a, b) =
          (md->R0(Label(a), Label(b), c) * md->R0(Label(b), Label(a), c)).inverse();
    }

  auto z = std::make_shared<CenterData>();
  z->modular = md;
  z->base_category = base;
  z->underlying = underlying;
  z->halfbraid = half;

  // completeness of the solved list: Dim(Z(C)) = Dim(C)^2
  FieldElement dimz = zc->dim_squared_sum();
  FieldElement dimc = base->dim_squared_sum();
  if (!(dimz == dimc * dimc))
    throw Error("internal: solved center fails the dimension identity");
  return z;
}

CenterPtr center_of_modular(const ModularPtr& m) {
  // degenerate s-matrix = not modular: refuse
  if (!m->smat.is_invertible())
    throw Error("center_of_modular: input s-matrix is degenerate (not modular)");
  FusionPtr prod = deligne_product(m->base, m->base, true);
  FieldPtr f = prod->field;
  size_t n1 = m->rank();
  auto idx = [&](Label a, Label b) { return Label(size_t(a) * n1 + size_t(b)); };
  auto emb = [&](const FieldElement& e) { return e.embed(f); };

  auto md = std::make_shared<ModularData>();
  md->base = prod;
  md->twists.assign(n1 * n1, FieldElement::one(f));
  for (Label a = 0; a < Label(n1); ++a)
    for (Label a2 = 0; a2 < Label(n1); ++a2)
      md->twists[size_t(idx(a, a2))] = emb(m->theta(a)) * emb(m->theta(a2)).inverse();
  for (Label a = 0; a < Label(n1); ++a)
    for (Label a2 = 0; a2 < Label(n1); ++a2)
      for (Label b = 0; b < Label(n1); ++b)
        for (Label b2 = 0; b2 < Label(n1); ++b2)
          for (Label c : m->base->channels(a, b))
            for (Label c2 : m->base->channels(a2, b2)) {
              // reversed braiding on the second factor: R'^{a2 b2}_{c2} = (R^{b2 a2}_{c2})^{-1}
              FieldElement v = emb(m->R0(a, b, c)) * emb(m->R0(b2, a2, c2)).inverse();
              md->rsym.emplace(std::array<Label, 3>{idx(a, a2), idx(b, b2), idx(c, c2)},
                               std::move(v));
            }
  size_t n2 = n1 * n1;
  md->smat = FMatrix(f, n2, n2);
  for (size_t A = 0; A < n2; ++A)
    for (size_t B = 0; B < n2; ++B) {
      FieldElement s = FieldElement::zero(f);
      for (Label C : prod->channels(Label(A), Label(B)))
        s = s + prod->d(C) *
                    (md->R0(Label(A), Label(B), C) * md->R0(Label(B), Label(A), C)).inverse();
      md->smat.at(A, B) = s;
    }
  auto z = std::make_shared<CenterData>();
  z->modular = md;
  return z;
}

// ---- validation -----------------------------------------------------------------

Report verify_modular(const ModularData& m, bool expect_anomaly_free,
                      const HopfEvaluator& hopf) {
  Report rep;
  const FusionData& c = *m.base;
  Label n = Label(c.rank());
  auto check = [&](const std::string& name, bool ok, const std::string& witness = "") {
    rep.push_back({name, ok, ok ? "" : witness});
  };
  auto nm = [&](Label a) { return c.names[size_t(a)]; };

  {  // braiding needs commutative fusion
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n && ok; ++b)
        for (Label cc = 0; cc < n && ok; ++cc)
          if (c.fuse[size_t(a)][size_t(b)][size_t(cc)] !=
              c.fuse[size_t(b)][size_t(a)][size_t(cc)]) {
            ok = false;
            w = nm(a) + "," + nm(b);
          }
    check("fusion_commutative", ok, w);
  }
  {  // hexagon 1: sum_f F^{abc}_d[e,f] R^{af}_d F^{bca}_d[f,g] = R^{ab}_e F^{bac}_d[e,g] R^{ac}_g
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n && ok; ++b)
        for (Label cc = 0; cc < n && ok; ++cc)
          for (Label d = 0; d < n && ok; ++d)
            for (Label e : c.channels(a, b)) {
              if (!ok) break;
              for (Label g : c.channels(a, cc)) {
                FieldElement lhs = c.zero();
                for (Label f : c.channels(b, cc))
                  lhs = lhs + c.F0(a, b, cc, d, e, f) * m.R0(a, f, d) * c.F0(b, cc, a, d, f, g);
                FieldElement rhs = m.R0(a, b, e) * c.F0(b, a, cc, d, e, g) * m.R0(a, cc, g);
                if (!(lhs == rhs)) {
                  ok = false;
                  w = "(" + nm(a) + "," + nm(b) + "," + nm(cc) + ";" + nm(d) + ")";
                  break;
                }
              }
            }
    check("hexagon_braiding", ok, w);
  }
  {  // hexagon 2 (inverse braiding):
     // R^{ec}_d Finv(c,a,b;d)[e,h] = sum_f F^{abc}_d[e,f] R^{bc}_f Finv(a,c,b;d)[f,h] R^{ac}_h
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n && ok; ++b)
        for (Label cc = 0; cc < n && ok; ++cc)
          for (Label d = 0; d < n && ok; ++d)
            for (Label e : c.channels(a, b)) {
              if (!ok) break;
              if (!c.admissible(e, cc, d)) continue;
              for (Label h : c.channels(a, cc)) {
                if (!c.admissible(h, b, d)) continue;
                FieldElement lhs = m.R0(e, cc, d) * c.Finv0(cc, a, b, d, e, h);
                FieldElement rhs = c.zero();
                for (Label f : c.channels(b, cc))
                  rhs = rhs + c.F0(a, b, cc, d, e, f) * m.R0(b, cc, f) *
                                  c.Finv0(a, cc, b, d, f, h) * m.R0(a, cc, h);
                if (!(lhs == rhs)) {
                  ok = false;
                  w = "(" + nm(a) + "," + nm(b) + "," + nm(cc) + ";" + nm(d) + ")";
                  break;
                }
              }
            }
    check("hexagon_inverse", ok, w);
  }
  {  // ribbon: R^{ab}_c R^{ba}_c = theta_c / (theta_a theta_b)
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n && ok; ++b)
        for (Label cc : c.channels(a, b)) {
          if (!(m.R0(a, b, cc) * m.R0(b, a, cc) * m.theta(a) * m.theta(b) == m.theta(cc))) {
            ok = false;
            w = "(" + nm(a) + "," + nm(b) + ";" + nm(cc) + ")";
            break;
          }
        }
    check("ribbon_twist", ok, w);
  }
  check("twist_unit", m.theta(c.unit).is_one());
  {
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n; ++a)
      if (!(m.theta(a) == m.theta(c.dual[size_t(a)]))) {
        ok = false;
        w = nm(a);
        break;
      }
    check("twist_dual", ok, w);
  }
  {
    bool ok = true;
    std::string w;
    for (size_t a = 0; a < size_t(n) && ok; ++a)
      for (size_t b = 0; b < size_t(n); ++b)
        if (!(m.smat.at(a, b) == m.smat.at(b, a))) {
          ok = false;
          w = nm(Label(a)) + "," + nm(Label(b));
          break;
        }
    check("smat_symmetric", ok, w);
  }
  {
    bool ok = true;
    std::string w;
    for (size_t z = 0; z < size_t(n); ++z)
      if (!(m.smat.at(size_t(c.unit), z) == c.dims[z])) {
        ok = false;
        w = nm(Label(z));
        break;
      }
    check("smat_unit_row", ok, w);
  }
  check("smat_nondegenerate", m.smat.is_invertible());
  {  // sum_Z d_Z s_{Z,W} = delta_{W,1} sum d^2
    bool ok = true;
    std::string w;
    FieldElement dim2 = c.dim_squared_sum();
    for (size_t wcol = 0; wcol < size_t(n); ++wcol) {
      FieldElement s = c.zero();
      for (size_t z = 0; z < size_t(n); ++z) s = s + c.dims[z] * m.smat.at(z, wcol);
      FieldElement want = (Label(wcol) == c.unit) ? dim2 : c.zero();
      if (!(s == want)) {
        ok = false;
        w = nm(Label(wcol));
        break;
      }
    }
    check("smat_row_sum", ok, w);
  }
  {  // s from the double braiding (inverse-crossing chirality)
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n; ++b) {
        FieldElement s = c.zero();
        for (Label cc : c.channels(a, b))
          s = s + c.d(cc) * (m.R0(a, b, cc) * m.R0(b, a, cc)).inverse();
        if (!(s == m.smat.at(size_t(a), size_t(b)))) {
          ok = false;
          w = nm(a) + "," + nm(b);
          break;
        }
      }
    check("smat_double_braiding", ok, w);
  }
  {  // twists from R: theta_a d_a = sum_c d_c R^{aa}_c
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n; ++a) {
      FieldElement s = c.zero();
      for (Label cc : c.channels(a, a)) s = s + c.d(cc) * m.R0(a, a, cc);
      if (!(s == m.theta(a) * c.d(a))) {
        ok = false;
        w = nm(a);
        break;
      }
    }
    check("twist_from_R", ok, w);
  }
  {  // Gauss sums
    FieldElement pp = c.zero(), pm = c.zero();
    for (Label a = 0; a < n; ++a) {
      pp = pp + m.theta(a) * c.d(a) * c.d(a);
      pm = pm + m.theta(a).inverse() * c.d(a) * c.d(a);
    }
    check("gauss_product", pp * pm == c.dim_squared_sum(),
          "p+ p- != sum of d^2");
    if (expect_anomaly_free) check("anomaly_free", pp == pm, "p+ != p-");
  }
  if (hopf) {
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n; ++b)
        if (!(hopf(a, b) == m.smat.at(size_t(a), size_t(b)))) {
          ok = false;
          w = nm(a) + "," + nm(b);
          break;
        }
    check("smat_hopf_link", ok, w);
  }
  return rep;
}

Report verify_center(const CenterData& z) {
  Report rep = verify_modular(*z.modular, true);
  auto check = [&](const std::string& name, bool ok, const std::string& witness = "") {
    rep.push_back({name, ok, ok ? "" : witness});
  };
  if (!z.has_forget()) {
    check("forget_map", false, "absent");
    return rep;
  }
  const FusionData& zc = *z.modular->base;
  const FusionData& c = *z.base_category;
  {  // Dim(Z(C)) = Dim(C)^2
    FieldElement dz = zc.dim_squared_sum();
    FieldElement dc = c.dim_squared_sum().embed(zc.field);
    check("dim_center_identity", dz == dc * dc);
  }
  {  // underlying object dims and duals
    bool ok = true;
    std::string w;
    for (size_t zi = 0; zi < zc.rank() && ok; ++zi) {
      Label u = z.underlying[zi];
      if (!(zc.dims[zi] == c.dims[size_t(u)].embed(zc.field))) {
        ok = false;
        w = zc.names[zi] + ": dim mismatch";
      } else if (z.underlying[size_t(zc.dual[zi])] != c.dual[size_t(u)]) {
        ok = false;
        w = zc.names[zi] + ": dual mismatch";
      }
    }
    check("underlying_consistent", ok, w);
  }
  {  // half-braiding coherence: unit, naturality over fusion channels, invertibility
    bool ok = true;
    std::string w;
    for (size_t zi = 0; zi < zc.rank() && ok; ++zi) {
      const auto& row = z.halfbraid[zi];
      if (!row[size_t(c.unit)].is_one()) {
        ok = false;
        w = zc.names[zi] + ": phi(1) != 1";
        break;
      }
      for (Label x = 0; x < Label(c.rank()) && ok; ++x) {
        if (row[size_t(x)].is_zero()) {
          ok = false;
          w = zc.names[zi] + ": phi not invertible";
          break;
        }
        for (Label y = 0; y < Label(c.rank()); ++y)
          for (Label ch : c.channels(x, y))
            if (!(row[size_t(ch)] == row[size_t(x)] * row[size_t(y)])) {
              ok = false;
              w = zc.names[zi] + ": naturality at (" + c.names[size_t(x)] + "," +
                  c.names[size_t(y)] + ")";
              break;
            }
      }
    }
    check("halfbraid_coherence", ok, w);
  }
  return rep;
}

// ---- projector and gluing ---------------------------------------------------------

HomVector project_P(const HomVector& psi, int Y, int Z, const CenterData& center) {
  if (!center.has_forget()) throw Error("project_P needs center data with a forget map");
  const FusionData& c = *center.base_category;
  Label y = center.underlying[size_t(Y)];
  Label zu = center.underlying[size_t(Z)];
  if (psi.basis.root != y || psi.basis.boundary != std::vector<Label>{zu})
    throw Error("project_P: psi must live in Hom(Y, Z) coordinates");
  RedPtr red = center.red_data();
  HomVector acc = HomVector::zero(psi.cat, {zu}, y);
  if (psi.basis.dim() == 0 || psi.is_zero()) return acc;

  std::vector<Wire> word{{y, Y}};
  for (Label x = 0; x < Label(c.rank()); ++x) {
    Label xd = c.dual[size_t(x)];
    Diagram d;
    d.cat = psi.cat;
    d.red = red;
    d.cup(0, x);                 // (X, X*, Y)
    d.half_under(1, Y, xd);      // (X, Y, X*)
    d.red_morph(1, Z, psi.coords[0]);
    d.half_over(1, Z, xd);       // (X, X*, Z)
    d.cap(0, x);                 // (Z)
    HomVector init = HomVector::unit_vector(psi.cat, {y}, y, 0);
    auto r = evaluate_diagram_from(d, y, word, init);
    if (r.closed) throw Error("internal: projector diagram closed unexpectedly");
    acc = acc + r.vec.scaled(c.d(x));
  }
  return acc.scaled(c.dim_squared_sum().inverse());
}

GluingMap gluing_isom(const std::vector<Label>& A, const std::vector<Label>& B,
                      const CenterData& center) {
  if (!center.has_forget()) throw Error("gluing_isom needs center data with a forget map");
  const FusionData& c = *center.base_category;
  const FusionData& zc = *center.modular->base;
  FusionPtr cat = center.base_category;
  RedPtr red = center.red_data();
  FieldPtr f = c.field;

  GluingMap out;
  out.a_word = A;
  out.b_word = B;
  // rows: (+)_X <A, X, B, X*>
  size_t total_rows = 0;
  for (Label x = 0; x < Label(c.rank()); ++x) {
    std::vector<Label> w = A;
    w.push_back(x);
    w.insert(w.end(), B.begin(), B.end());
    w.push_back(c.dual[size_t(x)]);
    size_t dim = hom_space_basis(c, w, c.unit).dim();
    out.rows.push_back({x, total_rows, dim});
    total_rows += dim;
  }
  // cols: (Z, i, j)
  for (int z = 0; z < int(zc.rank()); ++z) {
    Label zu = center.underlying[size_t(z)];
    std::vector<Label> za{zu};
    za.insert(za.end(), A.begin(), A.end());
    std::vector<Label> zb{c.dual[size_t(zu)]};
    zb.insert(zb.end(), B.begin(), B.end());
    size_t da = hom_space_basis(c, za, c.unit).dim();
    size_t db = hom_space_basis(c, zb, c.unit).dim();
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < db; ++j) out.cols.push_back({z, i, j});
  }
  out.matrix = FMatrix(f, total_rows, out.cols.size());

  FieldElement Droot = c.global_dim_root;
  for (size_t col = 0; col < out.cols.size(); ++col) {
    const auto& ci = out.cols[col];
    int z = ci.z;
    int zdual = zc.dual[size_t(z)];
    Label zu = center.underlying[size_t(z)];
    std::vector<Label> za{zu};
    za.insert(za.end(), A.begin(), A.end());
    std::vector<Label> zb{c.dual[size_t(zu)]};
    zb.insert(zb.end(), B.begin(), B.end());
    HomVector phi = HomVector::unit_vector(cat, za, c.unit, ci.i);
    HomVector psi = HomVector::unit_vector(cat, zb, c.unit, ci.j);
    std::vector<int> phi_red(za.size(), -1), psi_red(zb.size(), -1);
    phi_red[0] = z;
    psi_red[0] = zdual;
    size_t a = A.size();
    for (Label x = 0; x < Label(c.rank()); ++x) {
      Diagram d;
      d.cat = cat;
      d.red = red;
      d.coupon(0, phi, phi_red);  // (Z, A...)
      for (size_t k = 0; k < a; ++k) d.half_over(k, z, A[k]);  // (A..., Z)
      d.cup(a, x);                                             // (A, X, X*, Z)
      d.half_under(a + 1, z, c.dual[size_t(x)]);               // (A, X, Z, X*)
      d.coupon(a + 2, psi, psi_red);  // (A, X, Z, Z*, B..., X*)
      d.cap(a + 1, zu);               // contract the red pair: (A, X, B..., X*)
      auto r = evaluate_diagram(d);
      if (r.closed && total_rows > 0) throw Error("internal: gluing diagram closed");
      FieldElement weight = c.sd(x) * c.sd(zu) / Droot;
      const auto& blk = out.rows[size_t(x)];
      if (blk.dim == 0) continue;
      if (r.vec.basis.dim() != blk.dim)
        throw Error("internal: gluing block dimension mismatch");
      for (size_t rix = 0; rix < blk.dim; ++rix)
        out.matrix.at(blk.offset + rix, col) = r.vec.coords[rix] * weight;
    }
  }
  return out;
}

// ---- files -------------------------------------------------------------------------

ModularPtr build_modular(const CategoryFile& file) {
  FusionPtr base = build_fusion(file);
  auto md = std::make_shared<ModularData>();
  md->base = base;
  FieldPtr f = base->field;
  size_t n = base->rank();
  for (const auto& rl : file.r_lines) {
    Label a = base->label_of(rl.slots[0]), b = base->label_of(rl.slots[1]),
          c = base->label_of(rl.slots[2]);
    if (!base->admissible(a, b, c))
      throw Error("R entry for inadmissible (" + rl.slots[0] + "," + rl.slots[1] + ";" +
                  rl.slots[2] + ")");
    if (!md->rsym.emplace(std::array<Label, 3>{a, b, c}, parse_field_element(f, rl.value))
             .second)
      throw Error("duplicate R entry");
  }
  for (Label a = 0; a < Label(n); ++a)
    for (Label b = 0; b < Label(n); ++b)
      for (Label c : base->channels(a, b))
        if (!md->rsym.count({a, b, c}))
          throw Error("missing R entry for admissible (" + base->names[size_t(a)] + "," +
                      base->names[size_t(b)] + ";" + base->names[size_t(c)] + ")");
  md->twists.assign(n, FieldElement::zero(f));
  std::vector<bool> have(n, false);
  for (const auto& [lbl, val] : file.twist_lines) {
    Label a = base->label_of(lbl);
    md->twists[size_t(a)] = parse_field_element(f, val);
    have[size_t(a)] = true;
  }
  for (size_t a = 0; a < n; ++a)
    if (!have[a]) throw Error("missing twist line for " + base->names[a]);
  md->smat = FMatrix(f, n, n);
  std::vector<std::vector<bool>> have_s(n, std::vector<bool>(n, false));
  for (const auto& sl : file.s_lines) {
    Label a = base->label_of(sl.slots[0]), b = base->label_of(sl.slots[1]);
    md->smat.at(size_t(a), size_t(b)) = parse_field_element(f, sl.value);
    have_s[size_t(a)][size_t(b)] = true;
  }
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (!have_s[a][b])
        throw Error("missing smat entry (" + base->names[a] + "," + base->names[b] + ")");
  return md;
}

ModularPtr load_modular(const std::string& path) {
  return build_modular(load_category_file(path));
}

CenterPtr load_center(const std::string& path, const FusionPtr& base) {
  CategoryFile file = load_category_file(path);
  ModularPtr md = build_modular(file);
  auto z = std::make_shared<CenterData>();
  z->modular = md;
  if (!file.underlying_lines.empty()) {
    if (!base)
      throw Error("center file has underlying/halfbraid lines; a base category is required");
    const FusionData& zc = *md->base;
    z->base_category = base;
    z->underlying.assign(zc.rank(), -1);
    for (const auto& [zl, cl] : file.underlying_lines)
      z->underlying[size_t(zc.label_of(zl))] = base->label_of(cl);
    for (size_t i = 0; i < zc.rank(); ++i)
      if (z->underlying[i] == -1)
        throw Error("missing underlying line for " + zc.names[i]);
    z->halfbraid.assign(zc.rank(),
                        std::vector<FieldElement>(base->rank(), base->zero()));
    for (const auto& hl : file.halfbraid_lines) {
      Label zi = zc.label_of(hl.center_label);
      Label x = base->label_of(hl.on_label);
      z->halfbraid[size_t(zi)][size_t(x)] = parse_field_element(base->field, hl.value);
    }
    for (size_t zi = 0; zi < zc.rank(); ++zi)
      for (size_t x = 0; x < base->rank(); ++x)
        if (z->halfbraid[zi][x].is_zero())
          throw Error("missing halfbraid line for " + zc.names[zi] + " on " +
                      base->names[x]);
  }
  return z;
}

std::string center_to_file_text(const CenterData& z) {
  const ModularData& m = *z.modular;
  const FusionData& c = *m.base;
  std::ostringstream os;
  os << fusion_to_file_text(c);
  for (const auto& [k, v] : m.rsym)
    os << "R: " << c.names[size_t(k[0])] << " " << c.names[size_t(k[1])] << " ; "
       << c.names[size_t(k[2])] << " = " << v.to_string() << "\n";
  for (size_t a = 0; a < c.rank(); ++a)
    os << "twist: " << c.names[a] << " = " << m.twists[a].to_string() << "\n";
  for (size_t a = 0; a < c.rank(); ++a)
    for (size_t b = 0; b < c.rank(); ++b)
      os << "smat: " << c.names[a] << " " << c.names[b] << " = "
         << m.smat.at(a, b).to_string() << "\n";
  if (z.has_forget()) {
    const FusionData& base = *z.base_category;
    for (size_t zi = 0; zi < c.rank(); ++zi)
      os << "underlying: " << c.names[zi] << " -> " << base.names[size_t(z.underlying[zi])]
         << "\n";
    for (size_t zi = 0; zi < c.rank(); ++zi)
      for (size_t x = 0; x < base.rank(); ++x)
        os << "halfbraid: " << c.names[zi] << " on " << base.names[x] << " = "
           << z.halfbraid[zi][x].to_string() << "\n";
  }
  return os.str();
}

}  // namespace tvrt
