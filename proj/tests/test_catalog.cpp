#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "tvrt/catalog.hpp"

using namespace tvrt;

namespace {
std::string data(const std::string& name) { return std::string(TVRT_DATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("center sources parse and realize") {
  auto a = CenterSource::parse("solve-vecG:3");
  CHECK(a.kind == CenterSource::Kind::SolveVecG);
  CHECK(a.n == 3);
  auto b = CenterSource::parse("product:fib_modular.cat");
  CHECK(b.kind == CenterSource::Kind::ProductOfModular);
  auto c = CenterSource::parse("file:dz2_center.cat");
  CHECK(c.kind == CenterSource::Kind::File);
  CHECK_THROWS_AS(CenterSource::parse("mystery:3"), Error);

  auto z = realize_center(c, std::string(TVRT_DATA_DIR));
  CHECK(z->rank() == 4);
  CHECK(all_passed(verify_modular(*z, true, make_hopf_evaluator(z))));
  // the file-loaded center agrees with the solver
  auto solved = solve_center_vecG(2)->modular;
  CHECK(z->smat == solved->smat);
  CHECK(z->twists == solved->twists);
}

TEST_CASE("single comparison rows") {
  CatalogEntry e;
  e.name = "rp3_fib";
  e.tri_file = "rp3.tri";
  e.cat_file = "fib.cat";
  e.link_file = "unknot_f2.link";
  e.center = CenterSource::parse("product:fib_modular.cat");
  auto row = run_compare(e, std::string(TVRT_DATA_DIR));
  CHECK(row.ok);
  CHECK(row.equal);

  // a file-sourced center works as well
  e.name = "rp3_z2_file";
  e.cat_file = "vec_z2.cat";
  e.center = CenterSource::parse("file:dz2_center.cat");
  row = run_compare(e, std::string(TVRT_DATA_DIR));
  CHECK(row.ok);
  CHECK(row.equal);
}

TEST_CASE("default suite passes with a deterministic report") {
  auto r1 = run_suite(data("suite.cfg"));
  CHECK(r1.pass);
  CHECK(r1.rows.size() == 15);
  for (const auto& row : r1.rows) {
    CHECK(row.ok);
    CHECK(row.equal);
  }
  auto r2 = run_suite(data("suite.cfg"));
  CHECK(suite_report_text(r1, false) == suite_report_text(r2, false));
}

TEST_CASE("corrupted category data fails the suite with nonzero semantics") {
  // flip one F sign in the Fibonacci file and run a one-row config against it
  std::ifstream in(data("fib.cat"));
  std::stringstream ss;
  ss << in.rdbuf();
  std::string broken = ss.str();
  size_t at = broken.find("F: t t t ; t | t t = z^6 - z^4");
  REQUIRE(at != std::string::npos);
  broken.replace(at, 30, "F: t t t ; t | t t = z^4 - z^6");
  {
    std::ofstream out("/tmp/fib_broken.cat");
    out << broken;
  }
  {
    std::ofstream out("/tmp/broken_suite.cfg");
    out << "row: bad tri=" << data("s3.tri") << " cat=/tmp/fib_broken.cat center=product:"
        << data("fib_modular.cat") << " link=" << data("empty.link") << "\n";
  }
  auto r = run_suite("/tmp/broken_suite.cfg");
  CHECK_FALSE(r.pass);
  REQUIRE(r.rows.size() == 1);
  CHECK_FALSE(r.rows[0].ok);
  CHECK(r.rows[0].error.find("pentagon") != std::string::npos);
  CHECK(suite_report_text(r, false).find("pass=NO") != std::string::npos);
}

TEST_CASE("empty config gives an empty passing report") {
  {
    std::ofstream out("/tmp/empty_suite.cfg");
    out << "# nothing here\n";
  }
  auto r = run_suite("/tmp/empty_suite.cfg");
  CHECK(r.pass);
  CHECK(r.rows.empty());
  CHECK(suite_report_text(r, false) == "suite rows=0 failures=0 pass=yes\n");
}

TEST_CASE("config parse errors") {
  CHECK_THROWS_AS(parse_suite_config("row: x tri=a.tri\n"), Error);
  CHECK_THROWS_AS(parse_suite_config("wibble: x\n"), Error);
  CHECK_THROWS_AS(run_suite("/tmp/definitely_missing.cfg"), Error);
}
