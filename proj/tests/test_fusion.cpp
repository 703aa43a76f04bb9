#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tvrt/fusion.hpp"

using namespace tvrt;

namespace {
std::string data(const std::string& name) { return std::string(TVRT_DATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("Vec_Z2 validates") {
  auto c = load_fusion(data("vec_z2.cat"));
  CHECK(c->rank() == 2);
  auto rep = validate_category(*c);
  CHECK(all_passed(rep));
  auto gd = global_dim(*c);
  CHECK(gd.D_squared == FieldElement::from_int(c->field, 2));
}

TEST_CASE("Vec validates with D = 1") {
  auto c = load_fusion(data("vec.cat"));
  CHECK(all_passed(validate_category(*c)));
  CHECK(global_dim(*c).D == c->one());
}

TEST_CASE("Vec_Z3 validates; duals are nontrivial") {
  auto c = load_fusion(data("vec_z3.cat"));
  CHECK(all_passed(validate_category(*c)));
  CHECK(c->dual[size_t(c->label_of("g1"))] == c->label_of("g2"));
  CHECK(global_dim(*c).D_squared == FieldElement::from_int(c->field, 3));
}

TEST_CASE("Fibonacci validates; pentagon holds for the file gauge") {
  auto c = load_fusion(data("fib.cat"));
  auto rep = validate_category(*c);
  INFO(report_summary(rep));
  CHECK(all_passed(rep));
  // D^2 = (5+sqrt5)/2 = 2 + phi
  auto phi = parse_field_element(c->field, "1 + z^4 - z^6");
  auto gd = global_dim(*c);
  CHECK(gd.D_squared == phi + FieldElement::from_int(c->field, 2));
  // sqrtdim(t)^2 = phi, supplied via the declared extension
  Label t = c->label_of("t");
  CHECK(c->sd(t) * c->sd(t) == phi);
}

TEST_CASE("Fibonacci with one flipped F sign fails the pentagon with a witness") {
  auto file = load_category_file(data("fib.cat"));
  for (auto& fl : file.f_lines)
    if (fl.slots[0] == "t" && fl.slots[1] == "t" && fl.slots[2] == "t" && fl.slots[4] == "t" &&
        fl.slots[5] == "t")
      fl.value = "z^4 - z^6";  // sign of F[t,t,t;t|t,t] flipped
  auto c = build_fusion(file);
  auto rep = validate_category(*c);
  CHECK_FALSE(all_passed(rep));
  bool pentagon_failed = false;
  for (const auto& r : rep)
    if (r.name == "pentagon" && !r.pass) {
      pentagon_failed = true;
      CHECK(!r.witness.empty());
    }
  CHECK(pentagon_failed);
}

TEST_CASE("load errors") {
  CHECK_THROWS_AS(build_fusion(parse_category_file("cyclo_order: 4\nwibble: 3\n")), Error);
  // non-involutive dual
  CHECK_THROWS_AS(build_fusion(parse_category_file(
                      "cyclo_order: 4\nsimples: a b c\nunit: a\n"
                      "dual: a -> a\ndual: b -> c\ndual: c -> b\ndual: b -> b\n")),
                  Error);
  // missing F entry for an admissible tuple
  std::string txt =
      "cyclo_order: 8\nsimples: e g\nunit: e\ndual: e -> e\ndual: g -> g\n"
      "fuse: e e -> e\nfuse: e g -> g\nfuse: g e -> g\nfuse: g g -> e\n"
      "dim: e = 1\ndim: g = 1\nsqrtdim: e = 1\nsqrtdim: g = 1\nglobal_dim: z + z^7\n"
      "F: e e e ; e | e e = 1\n";
  CHECK_THROWS_AS(build_fusion(parse_category_file(txt)), Error);
  // F entry for an inadmissible tuple
  CHECK_THROWS_AS(
      build_fusion(parse_category_file(txt + "F: e e e ; g | e e = 1\n")), Error);
}

TEST_CASE("deligne products") {
  auto vec = load_fusion(data("vec.cat"));
  auto z2 = load_fusion(data("vec_z2.cat"));
  auto fib = load_fusion(data("fib.cat"));

  // Vec (x) C is an isomorphic copy of C
  auto copy = deligne_product(vec, z2, false);
  CHECK(copy->rank() == 2);
  CHECK(all_passed(validate_category(*copy)));
  CHECK(global_dim(*copy).D_squared == FieldElement::from_int(copy->field, 2));

  auto z2z2 = deligne_product(z2, z2, false);
  CHECK(z2z2->rank() == 4);
  CHECK(all_passed(validate_category(*z2z2)));
  for (size_t a = 0; a < 4; ++a) CHECK(z2z2->dims[a].is_one());
  CHECK(global_dim(*z2z2).D_squared == FieldElement::from_int(z2z2->field, 4));

  auto fib2 = deligne_product(fib, fib, true);
  CHECK(fib2->rank() == 4);
  auto rep = validate_category(*fib2);
  INFO(report_summary(rep));
  CHECK(all_passed(rep));
  // multiplicativity of the global dimension
  auto d2 = global_dim(*fib).D_squared;
  CHECK(global_dim(*fib2).D_squared == d2 * d2);
}

TEST_CASE("file text round trip") {
  auto fib = load_fusion(data("fib.cat"));
  auto again = build_fusion(parse_category_file(fusion_to_file_text(*fib)));
  CHECK(again->names == fib->names);
  CHECK(again->fsym == fib->fsym);
  CHECK(again->dims == fib->dims);
  CHECK(again->global_dim_root == fib->global_dim_root);
}
