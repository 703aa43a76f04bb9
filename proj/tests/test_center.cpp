#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <doctest.h>

#include <random>

#include "tvrt/center.hpp"

using namespace tvrt;

namespace {
std::string data(const std::string& name) { return std::string(TVRT_DATA_DIR) + "/" + name; }

HomVector scalar_psi(const CenterData& z, int Y, int Z, const Rational& q) {
  Label y = z.underlying[size_t(Y)];
  Label zu = z.underlying[size_t(Z)];
  HomVector psi = HomVector::zero(z.base_category, {zu}, y);
  if (psi.basis.dim() == 1)
    psi.coords[0] = FieldElement::from_rational(z.base_category->field, q);
  return psi;
}
}  // namespace

TEST_CASE("solved center of Vec_{Z/1} is trivial") {
  auto z = solve_center_vecG(1);
  CHECK(z->modular->rank() == 1);
  CHECK(all_passed(verify_center(*z)));
}

TEST_CASE("solved center of Vec_{Z/2}") {
  auto z = solve_center_vecG(2);
  const auto& zc = *z->modular->base;
  CHECK(zc.rank() == 4);
  for (size_t a = 0; a < 4; ++a) CHECK(zc.dims[a].is_one());
  // Dim(Z(C)) = 4 = Dim(C)^2
  CHECK(zc.dim_squared_sum() == FieldElement::from_int(zc.field, 4));
  auto rep = verify_center(*z);
  INFO(report_summary(rep));
  CHECK(all_passed(rep));
  // s-matrix is the character-product matrix; unit row = dims
  const auto& s = z->modular->smat;
  for (size_t b = 0; b < 4; ++b) CHECK(s.at(0, b).is_one());
  // (g,sgn) row: chi(h)psi(g) entries (1,-1,-1,1) in order g0x0,g0x1,g1x0,g1x1
  size_t gs = size_t(zc.label_of("g1x1"));
  CHECK(s.at(gs, 0).is_one());
  CHECK(s.at(gs, size_t(zc.label_of("g0x1"))) == -zc.one());
  CHECK(s.at(gs, size_t(zc.label_of("g1x0"))) == -zc.one());
  CHECK(s.at(gs, gs).is_one());
}

TEST_CASE("solved center of Vec_{Z/3} passes every coherence check") {
  auto z = solve_center_vecG(3);
  CHECK(z->modular->rank() == 9);
  auto rep = verify_center(*z);
  INFO(report_summary(rep));
  CHECK(all_passed(rep));
}

TEST_CASE("Fibonacci modular data validates (not anomaly-free)") {
  auto m = load_modular(data("fib_modular.cat"));
  auto rep = verify_modular(*m, false);
  INFO(report_summary(rep));
  CHECK(all_passed(rep));
}

TEST_CASE("center of a modular category: trivial input") {
  // Vec as a modular category
  std::string txt =
      "cyclo_order: 1\nsimples: 1\nunit: 1\ndual: 1 -> 1\nfuse: 1 1 -> 1\n"
      "dim: 1 = 1\nsqrtdim: 1 = 1\nglobal_dim: 1\nF: 1 1 1 ; 1 | 1 1 = 1\n"
      "R: 1 1 ; 1 = 1\ntwist: 1 = 1\nsmat: 1 1 = 1\n";
  auto m = build_modular(parse_category_file(txt));
  auto z = center_of_modular(m);
  CHECK(z->modular->rank() == 1);
  CHECK(all_passed(verify_modular(*z->modular, true)));
}

TEST_CASE("center of Fibonacci: product with reversed braiding") {
  auto m = load_modular(data("fib_modular.cat"));
  auto z = center_of_modular(m);
  const auto& zc = *z->modular->base;
  CHECK(zc.rank() == 4);
  // Dim identity
  auto d2 = m->base->dim_squared_sum().embed(zc.field);
  CHECK(zc.dim_squared_sum() == d2 * d2);
  // twists multiply as theta (x) theta^{-1}: theta_{(t,t)} = 1
  Label tt = zc.label_of("(t,t)");
  CHECK(z->modular->theta(tt).is_one());
  Label t1 = zc.label_of("(t,1)");
  CHECK(z->modular->theta(t1) == m->theta(m->base->label_of("t")).embed(zc.field));
  auto rep = verify_modular(*z->modular, true);
  INFO(report_summary(rep));
  CHECK(all_passed(rep));
}

TEST_CASE("center_of_modular refuses degenerate input") {
  // braided pointed category with degenerate s-matrix: Vec_{Z/2} with trivial braiding
  std::string txt =
      "cyclo_order: 8\nsimples: e g\nunit: e\ndual: e -> e\ndual: g -> g\n"
      "fuse: e e -> e\nfuse: e g -> g\nfuse: g e -> g\nfuse: g g -> e\n"
      "dim: e = 1\ndim: g = 1\nsqrtdim: e = 1\nsqrtdim: g = 1\nglobal_dim: z + z^7\n"
      "F: e e e ; e | e e = 1\nF: e e g ; g | e g = 1\nF: e g e ; g | g g = 1\n"
      "F: e g g ; e | g e = 1\nF: e g g ; g | g g = 1\nF: g e e ; g | g e = 1\n"
      "F: g e g ; e | g g = 1\nF: g e g ; g | g g = 1\nF: g g e ; e | e g = 1\n"
      "F: g g e ; g | g g = 1\nF: g g g ; e | g g = 1\nF: g g g ; g | e e = 1\n"
      "R: e e ; e = 1\nR: e g ; g = 1\nR: g e ; g = 1\nR: g g ; e = 1\n"
      "twist: e = 1\ntwist: g = 1\n"
      "smat: e e = 1\nsmat: e g = 1\nsmat: g e = 1\nsmat: g g = 1\n";
  auto file = parse_category_file(txt);
  REQUIRE_THROWS_AS(build_fusion(file), Error);  // F entry missing: g g g ; g | e e wrong? build below
  // fix the F table: the pointed category has 16 admissible entries; easier to
  // construct programmatically through solve_center_vecG's base and a trivial braiding
  auto z2center = solve_center_vecG(2);
  auto md = std::make_shared<ModularData>();
  md->base = z2center->base_category;
  const auto& c = *md->base;
  FieldPtr f = c.field;
  for (Label a = 0; a < 2; ++a)
    for (Label b = 0; b < 2; ++b)
      md->rsym.emplace(std::array<Label, 3>{a, b, c.channels(a, b)[0]}, c.one());
  md->twists.assign(2, c.one());
  md->smat = FMatrix(f, 2, 2);
  for (size_t a = 0; a < 2; ++a)
    for (size_t b = 0; b < 2; ++b) md->smat.at(a, b) = c.one();
  CHECK_THROWS_AS(center_of_modular(md), Error);
}

TEST_CASE("red circles evaluate to quantum dimensions") {
  auto z = solve_center_vecG(3);
  RedPtr red = z->red_data();
  Diagram d;
  d.cat = z->base_category;
  d.red = red;
  d.cup_red(0, int(z->modular->base->label_of("g2x1"))).cap_red(0, 4);
  // fix: the cap must name the same center simple
  d.ops[1].red_label = int(z->modular->base->label_of("g2x1"));
  auto r = evaluate_diagram(d);
  CHECK(r.closed);
  CHECK(r.scalar.is_one());
}

TEST_CASE("projector: identity, vanishing, scalars, idempotence, centrality") {
  for (unsigned N : {2u, 3u}) {
    auto z = solve_center_vecG(N);
    const auto& zc = *z->modular->base;
    const auto& c = *z->base_category;
    std::mt19937 rng(97 + N);
    std::uniform_int_distribution<int> num(-7, 7);
    for (int Y = 0; Y < int(zc.rank()); ++Y)
      for (int Z = 0; Z < int(zc.rank()); ++Z) {
        if (z->underlying[size_t(Y)] != z->underlying[size_t(Z)]) continue;
        // P on the identity: Y = Z keeps it, Y != Z kills it
        auto id_psi = scalar_psi(*z, Y, Z, Rational(1));
        auto p_id = project_P(id_psi, Y, Z, *z);
        if (Y == Z) {
          CHECK(p_id == id_psi);
        } else {
          CHECK(p_id.is_zero());
        }
        // scalar case of the trace formula: P(q Id) = delta q Id
        Rational q(num(rng), 1);
        auto psi = scalar_psi(*z, Y, Z, q);
        auto p = project_P(psi, Y, Z, *z);
        if (Y == Z) CHECK(p == psi);
        else CHECK(p.is_zero());
        // idempotence
        CHECK(project_P(p, Y, Z, *z) == p);
        // image is central: w phi_Y(X) = w phi_Z(X) for every simple X
        if (!p.is_zero())
          for (size_t x = 0; x < c.rank(); ++x)
            CHECK(p.coords[0] * z->halfbraid[size_t(Y)][x] ==
                  p.coords[0] * z->halfbraid[size_t(Z)][x]);
      }
  }
}

TEST_CASE("projector on Z(Vec_3): explicit 5 Id example") {
  auto z = solve_center_vecG(3);
  const auto& zc = *z->modular->base;
  int Y = int(zc.label_of("g1x2"));
  auto psi = scalar_psi(*z, Y, Y, Rational(5));
  auto p = project_P(psi, Y, Y, *z);
  CHECK(p == psi);
}

TEST_CASE("gluing isomorphism over the trivial category") {
  auto z = solve_center_vecG(1);
  auto g = gluing_isom({}, {}, *z);
  REQUIRE(g.matrix.rows() == 1);
  REQUIRE(g.matrix.cols() == 1);
  CHECK(g.matrix.at(0, 0).is_one());
}

TEST_CASE("gluing isomorphism: invertibility and dimension bookkeeping") {
  for (unsigned N : {2u, 3u}) {
    auto z = solve_center_vecG(N);
    const auto& c = *z->base_category;
    std::vector<std::vector<Label>> words{{}};
    for (Label a = 0; a < Label(c.rank()); ++a) {
      words.push_back({a});
      for (Label b = 0; b < Label(c.rank()); ++b) words.push_back({a, b});
    }
    for (const auto& A : words)
      for (const auto& B : words) {
        auto g = gluing_isom(A, B, *z);
        // dimension bookkeeping: sum_Z dim<Z,A> dim<Z*,B> = sum_X dim<A,X,B,X*>
        size_t lhs = g.cols.size();
        size_t rhs = 0;
        for (const auto& blk : g.rows) rhs += blk.dim;
        CHECK(lhs == rhs);
        REQUIRE(g.matrix.rows() == g.matrix.cols());
        CHECK(g.matrix.is_invertible());
        // exact inverse composes to the identity
        auto inv = g.matrix.inverse();
        CHECK(inv * g.matrix == FMatrix::identity(c.field, lhs));
      }
  }
}

TEST_CASE("Gauss sums of the solved center of Vec_Z2") {
  auto z = solve_center_vecG(2);
  const auto& zc = *z->modular->base;
  FieldElement pp = zc.zero(), pm = zc.zero();
  for (Label a = 0; a < Label(zc.rank()); ++a) {
    pp = pp + z->modular->theta(a) * zc.d(a) * zc.d(a);
    pm = pm + z->modular->theta(a).inverse() * zc.d(a) * zc.d(a);
  }
  CHECK(pp == FieldElement::from_int(zc.field, 2));
  CHECK(pm == FieldElement::from_int(zc.field, 2));
}

TEST_CASE("gluing over Vec_Z2 with empty words is a 2x2 block") {
  auto z = solve_center_vecG(2);
  auto g = gluing_isom({}, {}, *z);
  CHECK(g.cols.size() == 2);   // two center simples with underlying unit
  size_t rows = 0;
  for (const auto& blk : g.rows) rows += blk.dim;
  CHECK(rows == 2);            // <X, X*> for each base simple
  CHECK(g.matrix.is_invertible());
}

TEST_CASE("center file round trip with forget data") {
  auto z = solve_center_vecG(2);
  std::string txt = center_to_file_text(*z);
  // write to a temp file
  std::string path = "/tmp/dz2_roundtrip.cat";
  {
    std::ofstream out(path);
    out << txt;
  }
  CHECK_THROWS_AS(load_center(path), Error);  // underlying lines need a base
  auto loaded = load_center(path, z->base_category);
  CHECK(loaded->modular->base->names == z->modular->base->names);
  CHECK(loaded->modular->rsym == z->modular->rsym);
  CHECK(loaded->modular->twists == z->modular->twists);
  CHECK(loaded->modular->smat == z->modular->smat);
  CHECK(loaded->halfbraid == z->halfbraid);
  auto rep = verify_center(*loaded);
  CHECK(all_passed(rep));
}
