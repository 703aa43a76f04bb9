#include "tvrt/catalog.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace tvrt {

CenterSource CenterSource::parse(const std::string& spec) {
  CenterSource src;
  if (spec.rfind("solve-vecG:", 0) == 0) {
    src.kind = Kind::SolveVecG;
    src.n = unsigned(std::stoul(spec.substr(11)));
    if (src.n < 1) throw Error("solve-vecG needs N >= 1");
  } else if (spec.rfind("product:", 0) == 0) {
    src.kind = Kind::ProductOfModular;
    src.path = spec.substr(8);
  } else if (spec.rfind("file:", 0) == 0) {
    src.kind = Kind::File;
    src.path = spec.substr(5);
  } else {
    throw Error("center source must be solve-vecG:N, product:<file> or file:<file>: " + spec);
  }
  return src;
}

std::string CenterSource::str() const {
  switch (kind) {
    case Kind::SolveVecG:
      return "solve-vecG:" + std::to_string(n);
    case Kind::ProductOfModular:
      return "product:" + path;
    case Kind::File:
      return "file:" + path;
  }
  return "";
}

namespace {
std::string joined(const std::string& base, const std::string& rel) {
  if (rel.empty() || rel[0] == '/' || base.empty()) return rel;
  return base + "/" + rel;
}
}  // namespace

ModularPtr realize_center(const CenterSource& src, const std::string& base_dir) {
  switch (src.kind) {
    case CenterSource::Kind::SolveVecG:
      return solve_center_vecG(src.n)->modular;
    case CenterSource::Kind::ProductOfModular:
      return center_of_modular(load_modular(joined(base_dir, src.path)))->modular;
    case CenterSource::Kind::File:
      return load_modular(joined(base_dir, src.path));
  }
  throw Error("unreachable center source kind");
}

ComparisonRow run_compare(const CatalogEntry& entry, const std::string& base_dir,
                          unsigned threads) {
  ComparisonRow row;
  row.name = entry.name;
  auto start = std::chrono::steady_clock::now();
  try {
    FusionPtr cat = load_fusion(joined(base_dir, entry.cat_file));
    Report catrep = validate_category(*cat);
    if (!all_passed(catrep))
      throw Error("category validation failed:\n" + report_summary(catrep));
    ModularPtr z = realize_center(entry.center, base_dir);
    Report zrep = verify_modular(*z, true, make_hopf_evaluator(z));
    if (!all_passed(zrep))
      throw Error("center validation failed:\n" + report_summary(zrep));
    Triangulation tri = load_triangulation(joined(base_dir, entry.tri_file));
    FramedLink link = load_link(joined(base_dir, entry.link_file));
    FieldElement tv = tv_state_sum(tri, cat, threads);
    FieldElement rt = rt_invariant(link, *z);
    unify(tv, rt);
    row.tv = tv;
    row.rt = rt;
    row.equal = (tv == rt);
    row.ok = true;
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return row;
}

std::vector<CatalogEntry> parse_suite_config(const std::string& text) {
  std::vector<CatalogEntry> entries;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key != "row:")
      throw Error("suite config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    CatalogEntry e;
    if (!(ls >> e.name))
      throw Error("suite config line " + std::to_string(lineno) + ": missing row name");
    std::string tok;
    bool have_tri = false, have_cat = false, have_center = false, have_link = false;
    while (ls >> tok) {
      size_t eq = tok.find('=');
      if (eq == std::string::npos)
        throw Error("suite config line " + std::to_string(lineno) + ": expected key=value");
      std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
      if (k == "tri") {
        e.tri_file = v;
        have_tri = true;
      } else if (k == "cat") {
        e.cat_file = v;
        have_cat = true;
      } else if (k == "center") {
        e.center = CenterSource::parse(v);
        have_center = true;
      } else if (k == "link") {
        e.link_file = v;
        have_link = true;
      } else if (k == "pi1") {
        e.pi1 = v;
      } else {
        throw Error("suite config line " + std::to_string(lineno) + ": unknown field '" + k +
                    "'");
      }
    }
    if (!(have_tri && have_cat && have_center && have_link))
      throw Error("suite config line " + std::to_string(lineno) +
                  ": a comparison row needs tri=, cat=, center= and link=");
    entries.push_back(std::move(e));
  }
  return entries;
}

SuiteResult run_suite(const std::string& config_path, unsigned threads) {
  std::ifstream in(config_path);
  if (!in) throw Error("cannot open suite config: " + config_path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string base_dir;
  size_t slash = config_path.find_last_of('/');
  if (slash != std::string::npos) base_dir = config_path.substr(0, slash);
  SuiteResult result;
  std::vector<CatalogEntry> entries = parse_suite_config(ss.str());
  result.pass = true;
  for (const auto& e : entries) {
    ComparisonRow row = run_compare(e, base_dir, threads);
    if (!row.ok || !row.equal) result.pass = false;
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string suite_report_text(const SuiteResult& r, bool with_timing) {
  std::ostringstream os;
  int failures = 0;
  for (const auto& row : r.rows) {
    os << "row name=" << row.name;
    if (row.ok) {
      os << " tv=" << row.tv.to_string() << " rt=" << row.rt.to_string()
         << " equal=" << (row.equal ? "yes" : "NO");
    } else {
      std::string msg = row.error;
      for (auto& ch : msg)
        if (ch == '\n') ch = ';';
      os << " error=\"" << msg << "\"";
    }
    if (with_timing) os << " time_ms=" << row.wall_ms;
    os << "\n";
    if (!row.ok || !row.equal) ++failures;
  }
  os << "suite rows=" << r.rows.size() << " failures=" << failures
     << " pass=" << (r.pass ? "yes" : "NO") << "\n";
  return os.str();
}

}  // namespace tvrt
