#include "tvrt/fusion.hpp"

#include <fstream>
#include <sstream>

namespace tvrt {

bool all_passed(const Report& r) {
  for (const auto& c : r)
    if (!c.pass) return false;
  return true;
}

std::string report_summary(const Report& r) {
  std::ostringstream os;
  for (const auto& c : r) {
    os << (c.pass ? "pass" : "FAIL") << "  " << c.name;
    if (!c.pass && !c.witness.empty()) os << "  [" << c.witness << "]";
    os << "\n";
  }
  return os.str();
}

Label FusionData::label_of(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return Label(i);
  throw Error("unknown simple label: " + name);
}

bool FusionData::has_label(const std::string& name) const {
  for (const auto& n : names)
    if (n == name) return true;
  return false;
}

Label FusionData::channel(Label a, Label b) const {
  const auto& ch = channels_tbl[size_t(a)][size_t(b)];
  if (ch.size() != 1)
    throw Error("fusion channel of " + names[size_t(a)] + " and " + names[size_t(b)] +
                " is not unique");
  return ch[0];
}

bool FusionData::f_admissible(Label a, Label b, Label c, Label d, Label e, Label f) const {
  return admissible(a, b, e) && admissible(e, c, d) && admissible(b, c, f) &&
         admissible(a, f, d);
}

FieldElement FusionData::F0(Label a, Label b, Label c, Label d, Label e, Label f) const {
  if (!f_admissible(a, b, c, d, e, f)) return zero();
  auto it = fsym.find({a, b, c, d, e, f});
  if (it == fsym.end())
    throw Error("missing F entry for admissible tuple (" + names[size_t(a)] + "," +
                names[size_t(b)] + "," + names[size_t(c)] + ";" + names[size_t(d)] + "|" +
                names[size_t(e)] + "," + names[size_t(f)] + ")");
  return it->second;
}

FieldElement FusionData::Finv0(Label a, Label b, Label c, Label d, Label f, Label e) const {
  auto it = finv_.find({a, b, c, d});
  if (it == finv_.end()) return zero();
  const FBlock& blk = it->second;
  size_t fi = blk.fs.size(), ei = blk.es.size();
  for (size_t i = 0; i < blk.fs.size(); ++i)
    if (blk.fs[i] == f) fi = i;
  for (size_t i = 0; i < blk.es.size(); ++i)
    if (blk.es[i] == e) ei = i;
  if (fi == blk.fs.size() || ei == blk.es.size()) return zero();
  return blk.inv.at(fi, ei);
}

FieldElement FusionData::dim_squared_sum() const {
  FieldElement s = zero();
  for (size_t a = 0; a < rank(); ++a) s = s + dims[a] * dims[a];
  return s;
}

void FusionData::finalize() {
  size_t n = rank();
  channels_tbl.assign(n, std::vector<std::vector<Label>>(n));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c)
        if (fuse[a][b][c]) channels_tbl[a][b].push_back(Label(c));
  finv_.clear();
  for (Label a = 0; a < Label(n); ++a)
    for (Label b = 0; b < Label(n); ++b)
      for (Label c = 0; c < Label(n); ++c)
        for (Label d = 0; d < Label(n); ++d) {
          std::vector<Label> es, fs;
          for (Label e : channels(a, b))
            if (admissible(e, c, d)) es.push_back(e);
          for (Label f : channels(b, c))
            if (admissible(a, f, d)) fs.push_back(f);
          if (es.empty() && fs.empty()) continue;
          if (es.size() != fs.size())
            throw Error("F-matrix for (" + names[size_t(a)] + "," + names[size_t(b)] + "," +
                        names[size_t(c)] + ";" + names[size_t(d)] +
                        ") is not square; fusion data inconsistent");
          FMatrix m(field, es.size(), fs.size());
          for (size_t i = 0; i < es.size(); ++i)
            for (size_t j = 0; j < fs.size(); ++j)
              m.at(i, j) = F0(a, b, c, d, es[i], fs[j]);
          FBlock blk;
          blk.es = es;
          blk.fs = fs;
          blk.inv = m.inverse();  // throws when singular: invalid F data
          finv_.emplace(std::array<Label, 4>{a, b, c, d}, std::move(blk));
        }
}

// ---- validation ---------------------------------------------------------------

namespace {

std::string tuple_str(const FusionData& c, std::initializer_list<Label> ls) {
  std::string s = "(";
  bool first = true;
  for (Label l : ls) {
    if (!first) s += ",";
    s += c.names[size_t(l)];
    first = false;
  }
  return s + ")";
}

}  // namespace

Report validate_category(const FusionData& c) {
  Report rep;
  Label n = Label(c.rank());
  auto check = [&](const std::string& name, bool ok, const std::string& witness = "") {
    rep.push_back({name, ok, ok ? "" : witness});
  };

  {  // unit fusion: N_{1a}^b = N_{a1}^b = delta_{ab}
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n && ok; ++b) {
        char want = (a == b) ? 1 : 0;
        if (c.fuse[size_t(c.unit)][size_t(a)][size_t(b)] != want ||
            c.fuse[size_t(a)][size_t(c.unit)][size_t(b)] != want) {
          ok = false;
          w = tuple_str(c, {a, b});
        }
      }
    check("unit_fusion", ok, w);
  }
  {  // dual involution, unit self-dual, N_{ab}^1 = 1 iff b = a*
    bool ok = c.dual[size_t(c.unit)] == c.unit;
    std::string w = ok ? "" : "unit not self-dual";
    for (Label a = 0; a < n && ok; ++a)
      if (c.dual[size_t(c.dual[size_t(a)])] != a) {
        ok = false;
        w = c.names[size_t(a)];
      }
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n && ok; ++b) {
        char want = (b == c.dual[size_t(a)]) ? 1 : 0;
        if (c.fuse[size_t(a)][size_t(b)][size_t(c.unit)] != want) {
          ok = false;
          w = tuple_str(c, {a, b});
        }
      }
    check("dual_structure", ok, w);
  }
  {  // d nonzero, d_{a*} = d_a
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a) {
      if (c.dims[size_t(a)].is_zero()) {
        ok = false;
        w = c.names[size_t(a)] + " has d = 0";
      } else if (!(c.dims[size_t(a)] == c.dims[size_t(c.dual[size_t(a)])])) {
        ok = false;
        w = c.names[size_t(a)] + ": d != d of dual";
      }
    }
    check("dims_spherical", ok, w);
  }
  {  // sqrt dims
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a) {
      if (!(c.sqrt_dims[size_t(a)] * c.sqrt_dims[size_t(a)] == c.dims[size_t(a)])) {
        ok = false;
        w = c.names[size_t(a)] + ": sqrtdim^2 != dim";
      } else if (!(c.sqrt_dims[size_t(a)] == c.sqrt_dims[size_t(c.dual[size_t(a)])])) {
        ok = false;
        w = c.names[size_t(a)] + ": sqrtdim != sqrtdim of dual";
      }
    }
    if (ok && !c.sqrt_dims[size_t(c.unit)].is_one()) {
      ok = false;
      w = "sqrtdim of unit != 1";
    }
    check("sqrt_dims", ok, w);
  }
  {  // fusion associativity of N
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n && ok; ++b)
        for (Label cc = 0; cc < n && ok; ++cc)
          for (Label d = 0; d < n && ok; ++d) {
            int lhs = 0, rhs = 0;
            for (Label e = 0; e < n; ++e) {
              lhs += c.fuse[size_t(a)][size_t(b)][size_t(e)] *
                     c.fuse[size_t(e)][size_t(cc)][size_t(d)];
              rhs += c.fuse[size_t(b)][size_t(cc)][size_t(e)] *
                     c.fuse[size_t(a)][size_t(e)][size_t(d)];
            }
            if (lhs != rhs) {
              ok = false;
              w = tuple_str(c, {a, b, cc, d});
            }
          }
    check("fusion_associative", ok, w);
  }
  {  // d_a d_b = sum_c N d_c
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n && ok; ++b) {
        FieldElement s = c.zero();
        for (Label cc : c.channels(a, b)) s = s + c.dims[size_t(cc)];
        if (!(s == c.dims[size_t(a)] * c.dims[size_t(b)])) {
          ok = false;
          w = tuple_str(c, {a, b});
        }
      }
    check("fusion_character", ok, w);
  }
  {  // declared global dimension root
    FieldElement s = c.dim_squared_sum();
    bool ok = !c.global_dim_root.is_zero() && c.global_dim_root * c.global_dim_root == s;
    check("global_dim_root", ok, "declared root squared != sum of d^2");
  }
  {  // F = 1 whenever a, b or c is the unit (trivial unit vertices gauge)
    bool ok = true;
    std::string w;
    for (const auto& [key, val] : c.fsym) {
      if ((key[0] == c.unit || key[1] == c.unit || key[2] == c.unit) && !val.is_one()) {
        ok = false;
        w = tuple_str(c, {key[0], key[1], key[2], key[3], key[4], key[5]});
        break;
      }
    }
    check("f_unit_gauge", ok, w);
  }
  {  // trivial pivotal normalization: F[a,a*,a;a|1,1] * d_a = 1
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a) {
      FieldElement v = c.F0(a, c.dual[size_t(a)], a, a, c.unit, c.unit);
      if (!(v * c.dims[size_t(a)] == c.one())) {
        ok = false;
        w = c.names[size_t(a)];
      }
    }
    check("pivotal_normalization", ok, w);
  }
  {  // pentagon:
     //  sum_f F^{abc}_g[e,f] F^{afd}_w[g,k] F^{bcd}_k[f,l] = F^{ecd}_w[g,l] F^{abl}_w[e,k]
    bool ok = true;
    std::string w;
    for (Label a = 0; a < n && ok; ++a)
      for (Label b = 0; b < n && ok; ++b)
        for (Label cc = 0; cc < n && ok; ++cc)
          for (Label d = 0; d < n && ok; ++d)
            for (Label e : c.channels(a, b)) {
              if (!ok) break;
              for (Label g : c.channels(e, cc)) {
                if (!ok) break;
                for (Label ww : c.channels(g, d)) {
                  if (!ok) break;
                  for (Label l : c.channels(cc, d)) {
                    if (!ok) break;
                    for (Label k : c.channels(b, l)) {
                      if (!c.admissible(a, k, ww)) continue;
                      FieldElement lhs = c.zero();
                      for (Label f : c.channels(b, cc))
                        lhs = lhs + c.F0(a, b, cc, g, e, f) * c.F0(a, f, d, ww, g, k) *
                                        c.F0(b, cc, d, k, f, l);
                      FieldElement rhs = c.F0(e, cc, d, ww, g, l) * c.F0(a, b, l, ww, e, k);
                      if (!(lhs == rhs)) {
                        ok = false;
                        w = tuple_str(c, {a, b, cc, d, ww, e, g, k, l});
                        break;
                      }
                    }
                  }
                }
              }
            }
    check("pentagon", ok, w);
  }
  return rep;
}

GlobalDim global_dim(const FusionData& c) {
  GlobalDim g;
  g.D_squared = c.dim_squared_sum();
  g.D = c.global_dim_root;
  if (g.D.is_zero() || !(g.D * g.D == g.D_squared))
    throw Error("declared global dimension root is inconsistent with sum of d^2");
  return g;
}

std::string product_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

FusionPtr deligne_product(const FusionPtr& c1, const FusionPtr& c2, bool /*reverse_second*/) {
  FieldElement probe1 = c1->one(), probe2 = c2->one();
  unify(probe1, probe2);
  FieldPtr f = probe1.field();
  auto emb = [&](const FieldElement& e) { return e.embed(f); };

  auto out = std::make_shared<FusionData>();
  out->field = f;
  size_t n1 = c1->rank(), n2 = c2->rank();
  size_t n = n1 * n2;
  auto idx = [&](Label a, Label b) { return Label(size_t(a) * n2 + size_t(b)); };
  for (size_t a = 0; a < n1; ++a)
    for (size_t b = 0; b < n2; ++b)
      out->names.push_back(product_name(c1->names[a], c2->names[b]));
  out->unit = idx(c1->unit, c2->unit);
  out->dual.resize(n);
  out->dims.resize(n, FieldElement::zero(f));
  out->sqrt_dims.resize(n, FieldElement::zero(f));
  for (Label a = 0; a < Label(n1); ++a)
    for (Label b = 0; b < Label(n2); ++b) {
      out->dual[size_t(idx(a, b))] = idx(c1->dual[size_t(a)], c2->dual[size_t(b)]);
      out->dims[size_t(idx(a, b))] = emb(c1->dims[size_t(a)]) * emb(c2->dims[size_t(b)]);
      out->sqrt_dims[size_t(idx(a, b))] =
          emb(c1->sqrt_dims[size_t(a)]) * emb(c2->sqrt_dims[size_t(b)]);
    }
  out->fuse.assign(n, std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
  for (Label a1 = 0; a1 < Label(n1); ++a1)
    for (Label a2 = 0; a2 < Label(n2); ++a2)
      for (Label b1 = 0; b1 < Label(n1); ++b1)
        for (Label b2 = 0; b2 < Label(n2); ++b2)
          for (Label cc1 : c1->channels(a1, b1))
            for (Label cc2 : c2->channels(a2, b2))
              out->fuse[size_t(idx(a1, a2))][size_t(idx(b1, b2))][size_t(idx(cc1, cc2))] = 1;
  for (const auto& [k1, v1] : c1->fsym)
    for (const auto& [k2, v2] : c2->fsym) {
      std::array<Label, 6> key;
      for (size_t i = 0; i < 6; ++i) key[i] = idx(k1[i], k2[i]);
      out->fsym.emplace(key, emb(v1) * emb(v2));
    }
  out->global_dim_root = emb(c1->global_dim_root) * emb(c2->global_dim_root);
  out->finalize();
  return out;
}

// ---- file parsing --------------------------------------------------------------

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool split_arrow(const std::string& s, std::string& lhs, std::string& rhs) {
  size_t p = s.find("->");
  if (p == std::string::npos) return false;
  lhs = strip(s.substr(0, p));
  rhs = strip(s.substr(p + 2));
  return true;
}

}  // namespace

CategoryFile parse_category_file(const std::string& text) {
  CategoryFile out;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw Error("category file line " + std::to_string(lineno) + ": missing ':'");
    std::string key = strip(line.substr(0, colon));
    std::string rest = strip(line.substr(colon + 1));
    auto bad = [&](const std::string& why) {
      return Error("category file line " + std::to_string(lineno) + " (" + key + "): " + why);
    };
    if (key == "cyclo_order") {
      out.cyclo_order = unsigned(std::stoul(rest));
    } else if (key == "sqrt_ext") {
      out.sqrt_ext = rest;
    } else if (key == "simples") {
      out.simples = split_ws(rest);
    } else if (key == "unit") {
      out.unit = rest;
    } else if (key == "dual") {
      std::string l, r;
      if (!split_arrow(rest, l, r)) throw bad("expected a->b");
      out.duals.emplace_back(l, r);
    } else if (key == "fuse") {
      std::string l, r;
      if (!split_arrow(rest, l, r)) throw bad("expected a b -> c");
      auto parts = split_ws(l);
      if (parts.size() != 2) throw bad("expected two labels before ->");
      out.fuse_lines.push_back({parts[0], parts[1], r});
    } else if (key == "dim" || key == "sqrtdim") {
      size_t eq = rest.find('=');
      if (eq == std::string::npos) throw bad("expected a = value");
      auto lbl = strip(rest.substr(0, eq));
      auto val = strip(rest.substr(eq + 1));
      if (key == "dim") out.dim_lines.emplace_back(lbl, val);
      else out.sqrtdim_lines.emplace_back(lbl, val);
    } else if (key == "global_dim") {
      out.global_dim_line = rest;
    } else if (key == "F") {
      size_t eq = rest.rfind('=');
      if (eq == std::string::npos) throw bad("expected = value");
      std::string head = rest.substr(0, eq), val = strip(rest.substr(eq + 1));
      size_t semi = head.find(';');
      size_t bar = head.find('|');
      if (semi == std::string::npos || bar == std::string::npos || bar < semi)
        throw bad("expected a b c ; d | e f = value");
      auto abc = split_ws(strip(head.substr(0, semi)));
      auto dd = split_ws(strip(head.substr(semi + 1, bar - semi - 1)));
      auto ef = split_ws(strip(head.substr(bar + 1)));
      if (abc.size() != 3 || dd.size() != 1 || ef.size() != 2)
        throw bad("expected a b c ; d | e f = value");
      out.f_lines.push_back({{abc[0], abc[1], abc[2], dd[0], ef[0], ef[1]}, val});
    } else if (key == "R") {
      size_t eq = rest.rfind('=');
      if (eq == std::string::npos) throw bad("expected = value");
      std::string head = rest.substr(0, eq), val = strip(rest.substr(eq + 1));
      size_t semi = head.find(';');
      if (semi == std::string::npos) throw bad("expected a b ; c = value");
      auto ab = split_ws(strip(head.substr(0, semi)));
      auto cc = split_ws(strip(head.substr(semi + 1)));
      if (ab.size() != 2 || cc.size() != 1) throw bad("expected a b ; c = value");
      out.r_lines.push_back({{ab[0], ab[1], cc[0]}, val});
    } else if (key == "twist") {
      size_t eq = rest.find('=');
      if (eq == std::string::npos) throw bad("expected a = value");
      out.twist_lines.emplace_back(strip(rest.substr(0, eq)), strip(rest.substr(eq + 1)));
    } else if (key == "smat") {
      size_t eq = rest.rfind('=');
      if (eq == std::string::npos) throw bad("expected a b = value");
      auto ab = split_ws(strip(rest.substr(0, eq)));
      if (ab.size() != 2) throw bad("expected a b = value");
      out.s_lines.push_back({{ab[0], ab[1]}, strip(rest.substr(eq + 1))});
    } else if (key == "underlying") {
      std::string l, r;
      if (!split_arrow(rest, l, r)) throw bad("expected a -> x");
      out.underlying_lines.emplace_back(l, r);
    } else if (key == "halfbraid") {
      size_t on = rest.find(" on ");
      size_t eq = rest.rfind('=');
      if (on == std::string::npos || eq == std::string::npos || eq < on)
        throw bad("expected a on x = value");
      out.halfbraid_lines.push_back({strip(rest.substr(0, on)),
                                     strip(rest.substr(on + 4, eq - on - 4)),
                                     strip(rest.substr(eq + 1))});
    } else {
      throw Error("category file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return out;
}

CategoryFile load_category_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open category file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_category_file(ss.str());
}

FusionPtr build_fusion(const CategoryFile& file) {
  if (file.cyclo_order == 0) throw Error("category file: missing cyclo_order");
  if (file.simples.empty()) throw Error("category file: missing simples");
  FieldPtr f;
  if (file.sqrt_ext) {
    FieldPtr plain = cyclotomic_field(file.cyclo_order);
    FieldElement delta = parse_field_element(plain, *file.sqrt_ext);
    f = cyclotomic_field_with_sqrt(file.cyclo_order, delta);
  } else {
    f = cyclotomic_field(file.cyclo_order);
  }
  auto data = std::make_shared<FusionData>();
  data->field = f;
  data->names = file.simples;
  for (size_t i = 0; i < data->names.size(); ++i)
    for (size_t j = i + 1; j < data->names.size(); ++j)
      if (data->names[i] == data->names[j])
        throw Error("duplicate simple label: " + data->names[i]);
  if (file.unit.empty()) throw Error("category file: missing unit");
  data->unit = data->label_of(file.unit);
  size_t n = data->rank();

  data->dual.assign(n, -1);
  for (const auto& [a, b] : file.duals) {
    Label la = data->label_of(a), lb = data->label_of(b);
    if (data->dual[size_t(la)] != -1 && data->dual[size_t(la)] != lb)
      throw Error("conflicting dual lines for " + a);
    data->dual[size_t(la)] = lb;
  }
  for (size_t a = 0; a < n; ++a)
    if (data->dual[a] == -1) throw Error("missing dual line for " + data->names[a]);
  for (size_t a = 0; a < n; ++a)
    if (data->dual[size_t(data->dual[a])] != Label(a))
      throw Error("dual map is not an involution at " + data->names[a]);

  data->fuse.assign(n, std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
  for (const auto& fl : file.fuse_lines)
    data->fuse[size_t(data->label_of(fl[0]))][size_t(data->label_of(fl[1]))]
              [size_t(data->label_of(fl[2]))] = 1;

  data->dims.assign(n, FieldElement::zero(f));
  data->sqrt_dims.assign(n, FieldElement::zero(f));
  std::vector<bool> have_dim(n, false), have_sqrt(n, false);
  for (const auto& [a, v] : file.dim_lines) {
    Label la = data->label_of(a);
    data->dims[size_t(la)] = parse_field_element(f, v);
    have_dim[size_t(la)] = true;
  }
  for (const auto& [a, v] : file.sqrtdim_lines) {
    Label la = data->label_of(a);
    data->sqrt_dims[size_t(la)] = parse_field_element(f, v);
    have_sqrt[size_t(la)] = true;
  }
  for (size_t a = 0; a < n; ++a) {
    if (!have_dim[a]) throw Error("missing dim line for " + data->names[a]);
    if (!have_sqrt[a]) throw Error("missing sqrtdim line for " + data->names[a]);
  }
  if (!file.global_dim_line) throw Error("missing global_dim line");
  data->global_dim_root = parse_field_element(f, *file.global_dim_line);

  for (const auto& fl : file.f_lines) {
    std::array<Label, 6> key;
    for (size_t i = 0; i < 6; ++i) key[i] = data->label_of(fl.slots[i]);
    if (!data->f_admissible(key[0], key[1], key[2], key[3], key[4], key[5]))
      throw Error("F entry for inadmissible tuple (" + fl.slots[0] + "," + fl.slots[1] + "," +
                  fl.slots[2] + ";" + fl.slots[3] + "|" + fl.slots[4] + "," + fl.slots[5] + ")");
    if (!data->fsym.emplace(key, parse_field_element(f, fl.value)).second)
      throw Error("duplicate F entry");
  }
  for (Label a = 0; a < Label(n); ++a)
    for (Label b = 0; b < Label(n); ++b)
      for (Label c = 0; c < Label(n); ++c)
        for (Label d = 0; d < Label(n); ++d)
          for (Label e = 0; e < Label(n); ++e)
            for (Label ff = 0; ff < Label(n); ++ff)
              if (data->f_admissible(a, b, c, d, e, ff) &&
                  !data->fsym.count({a, b, c, d, e, ff}))
                throw Error("missing F entry for admissible tuple (" + data->names[size_t(a)] +
                            "," + data->names[size_t(b)] + "," + data->names[size_t(c)] + ";" +
                            data->names[size_t(d)] + "|" + data->names[size_t(e)] + "," +
                            data->names[size_t(ff)] + ")");
  data->finalize();
  return data;
}

FusionPtr load_fusion(const std::string& path) { return build_fusion(load_category_file(path)); }

std::string fusion_to_file_text(const FusionData& c) {
  std::ostringstream os;
  os << "cyclo_order: " << c.field->order << "\n";
  if (c.field->has_ext()) {
    FieldElement delta = FieldElement::make(cyclotomic_field(c.field->order), c.field->ext_delta);
    os << "sqrt_ext: " << delta.to_string() << "\n";
  }
  os << "simples:";
  for (const auto& nm : c.names) os << " " << nm;
  os << "\nunit: " << c.names[size_t(c.unit)] << "\n";
  for (size_t a = 0; a < c.rank(); ++a)
    os << "dual: " << c.names[a] << " -> " << c.names[size_t(c.dual[a])] << "\n";
  for (size_t a = 0; a < c.rank(); ++a)
    for (size_t b = 0; b < c.rank(); ++b)
      for (Label cc : c.channels(Label(a), Label(b)))
        os << "fuse: " << c.names[a] << " " << c.names[b] << " -> " << c.names[size_t(cc)] << "\n";
  for (size_t a = 0; a < c.rank(); ++a)
    os << "dim: " << c.names[a] << " = " << c.dims[a].to_string() << "\n";
  for (size_t a = 0; a < c.rank(); ++a)
    os << "sqrtdim: " << c.names[a] << " = " << c.sqrt_dims[a].to_string() << "\n";
  os << "global_dim: " << c.global_dim_root.to_string() << "\n";
  for (const auto& [k, v] : c.fsym)
    os << "F: " << c.names[size_t(k[0])] << " " << c.names[size_t(k[1])] << " "
       << c.names[size_t(k[2])] << " ; " << c.names[size_t(k[3])] << " | "
       << c.names[size_t(k[4])] << " " << c.names[size_t(k[5])] << " = " << v.to_string() << "\n";
  return os.str();
}

}  // namespace tvrt
