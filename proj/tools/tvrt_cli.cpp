// Command-line front end: exact Turaev-Viro and surgery invariants with the
// catalog comparison driver.  Exit status is zero iff every requested check
// passed.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "tvrt/catalog.hpp"

using namespace tvrt;

namespace {

void print_value(const std::string& label, const FieldElement& v, unsigned digits) {
  std::cout << label << " = " << v.to_string() << "\n";
  if (digits > 0) std::cout << label << " ~ " << v.numeric_string(digits) << " (approx)\n";
}

ModularPtr center_from_spec(const std::string& spec) {
  // accepts solve-vecG:N, product:<file>, file:<file>, or a bare file path
  if (spec.rfind("solve-vecG:", 0) == 0 || spec.rfind("product:", 0) == 0 ||
      spec.rfind("file:", 0) == 0)
    return realize_center(CenterSource::parse(spec), "");
  return load_modular(spec);
}

int report_exit(const Report& rep) {
  std::cout << report_summary(rep);
  return all_passed(rep) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Turaev-Viro / surgery invariant toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned digits = 0;
  unsigned parallel = 1;
  app.add_option("--digits", digits, "also print approximate values with this many digits");
  app.add_option("--parallel", parallel, "worker threads for state-sum enumeration")
      ->check(CLI::Range(1u, 64u));

  std::string cat_path, tri_path, link_path, center_spec, out_path, config_path;
  unsigned vecg_n = 0;
  std::string product_path;

  auto* validate = app.add_subcommand("validate-cat", "run every category check");
  validate->add_option("catfile", cat_path)->required();

  std::string base_path;
  auto* center = app.add_subcommand("center", "construct or validate center data");
  center->add_option("--solve-vecG", vecg_n, "brute-force the center of Vec_Z/N");
  center->add_option("--product", product_path, "center of a modular category file");
  center->add_option("--file", center_spec, "validate an existing center file");
  center->add_option("--base", base_path,
                     "base category for a center file with underlying/halfbraid lines");
  center->add_option("--out", out_path, "write the constructed center to a file");

  auto* tv = app.add_subcommand("tv", "Turaev-Viro state sum");
  tv->add_option("trifile", tri_path)->required();
  tv->add_option("catfile", cat_path)->required();

  auto* rt = app.add_subcommand("rt", "surgery invariant of an uncolored framed link");
  rt->add_option("linkfile", link_path)->required();
  rt->add_option("center", center_spec, "center file or solve-vecG:N / product:<file>")
      ->required();

  auto* linkcmd = app.add_subcommand("link", "evaluate a colored framed link");
  linkcmd->add_option("linkfile", link_path)->required();
  linkcmd->add_option("center", center_spec)->required();

  auto* torus = app.add_subcommand("torus", "torus S/T action and relations");
  torus->add_option("center", center_spec)->required();

  auto* compare = app.add_subcommand("compare", "one state-sum vs surgery comparison");
  compare->add_option("trifile", tri_path)->required();
  compare->add_option("catfile", cat_path)->required();
  compare->add_option("linkfile", link_path)->required();
  compare->add_option("--center", center_spec)->required();

  auto* suite = app.add_subcommand("suite", "run a comparison config");
  suite->add_option("config", config_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      auto cat = load_fusion(cat_path);
      return report_exit(validate_category(*cat));
    }

    if (center->parsed()) {
      CenterPtr z;
      if (vecg_n > 0) {
        z = solve_center_vecG(vecg_n);
      } else if (!product_path.empty()) {
        z = center_of_modular(load_modular(product_path));
      } else if (!center_spec.empty()) {
        FusionPtr base = base_path.empty() ? nullptr : load_fusion(base_path);
        z = load_center(center_spec, base);
      } else {
        std::cerr << "center: one of --solve-vecG, --product, --file is required\n";
        return 2;
      }
      Report rep = verify_modular(*z->modular, true, make_hopf_evaluator(z->modular));
      if (z->has_forget()) rep = verify_center(*z);
      std::cout << "simples = " << z->modular->rank() << "\n";
      print_value("global_dim", z->modular->base->global_dim_root, digits);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << center_to_file_text(*z);
        std::cout << "written " << out_path << "\n";
      }
      return report_exit(rep);
    }

    if (tv->parsed()) {
      auto cat = load_fusion(cat_path);
      Report rep = validate_category(*cat);
      if (!all_passed(rep)) {
        std::cout << report_summary(rep);
        return 1;
      }
      auto tri = load_triangulation(tri_path);
      print_value("tv", tv_state_sum(tri, cat, parallel), digits);
      return 0;
    }

    if (rt->parsed()) {
      auto z = center_from_spec(center_spec);
      auto l = load_link(link_path);
      print_value("rt", rt_invariant(l, *z), digits);
      return 0;
    }

    if (linkcmd->parsed()) {
      auto z = center_from_spec(center_spec);
      auto l = load_link(link_path);
      print_value("F", eval_link(l, resolve_colors(l, *z), *z), digits);
      return 0;
    }

    if (torus->parsed()) {
      auto z = center_from_spec(center_spec);
      auto [S, T] = torus_S_T(*z);
      const auto& names = z->base->names;
      std::cout << "basis:";
      for (const auto& n : names) std::cout << " [" << n << "]";
      std::cout << "\n";
      for (size_t i = 0; i < S.rows(); ++i)
        for (size_t j = 0; j < S.cols(); ++j)
          std::cout << "S " << names[i] << " " << names[j] << " = " << S.at(i, j).to_string()
                    << "\n";
      for (size_t i = 0; i < T.rows(); ++i)
        std::cout << "T " << names[i] << " = " << T.at(i, i).to_string() << "\n";
      return report_exit(sl2z_relations(*z));
    }

    if (compare->parsed()) {
      CatalogEntry e;
      e.name = "compare";
      e.tri_file = tri_path;
      e.cat_file = cat_path;
      e.link_file = link_path;
      e.center = CenterSource::parse(center_spec);
      ComparisonRow row = run_compare(e, "", parallel);
      if (!row.ok) {
        std::cout << "error: " << row.error << "\n";
        return 1;
      }
      print_value("tv", row.tv, digits);
      print_value("rt", row.rt, digits);
      std::cout << "equal = " << (row.equal ? "yes" : "NO") << "\n";
      return row.equal ? 0 : 1;
    }

    if (suite->parsed()) {
      SuiteResult r = run_suite(config_path, parallel);
      std::cout << suite_report_text(r, true);
      return r.pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
