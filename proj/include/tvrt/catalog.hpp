#pragma once

// Comparison driver: pairs a triangulation with a surgery presentation and a
// category with its center, computes both invariants and reports exact
// equality.  The suite runner consumes a line-oriented config and emits a
// diff-friendly key=value report with a zero-iff-everything-passed exit
// contract.

#include <optional>

#include "tvrt/center.hpp"
#include "tvrt/link.hpp"
#include "tvrt/rt.hpp"
#include "tvrt/triangulation.hpp"
#include "tvrt/tv.hpp"

namespace tvrt {

struct CenterSource {
  enum class Kind { SolveVecG, ProductOfModular, File } kind = Kind::File;
  unsigned n = 0;     // SolveVecG order
  std::string path;   // modular file (Product) or center file (File)
  // "solve-vecG:N" | "product:<file>" | "file:<file>"
  static CenterSource parse(const std::string& spec);
  std::string str() const;
};

// builds or loads the modular data; paths resolved against base_dir
ModularPtr realize_center(const CenterSource& src, const std::string& base_dir);

struct CatalogEntry {
  std::string name;
  std::string tri_file;
  std::string cat_file;
  CenterSource center;
  std::string link_file;
  std::string pi1;  // documentation: known fundamental group
};

struct ComparisonRow {
  std::string name;
  bool ok = false;       // false: a validation failed before values were computed
  std::string error;     // failure description / validation summary
  FieldElement tv, rt;
  bool equal = false;
  double wall_ms = 0;
};

ComparisonRow run_compare(const CatalogEntry& entry, const std::string& base_dir,
                          unsigned threads = 1);

struct SuiteResult {
  std::vector<ComparisonRow> rows;
  bool pass = false;
};

// config lines:  row: <name> tri=<file> cat=<file> center=<spec> link=<file> [pi1=<text>]
std::vector<CatalogEntry> parse_suite_config(const std::string& text);
SuiteResult run_suite(const std::string& config_path, unsigned threads = 1);

// deterministic key=value report; timing fields included only when requested
std::string suite_report_text(const SuiteResult& r, bool with_timing);

}  // namespace tvrt
