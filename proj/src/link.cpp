#include "tvrt/link.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tvrt {

void FramedLink::compute_components() {
  if (strands < 0) throw Error("negative strand count");
  std::vector<int> perm(static_cast<size_t>(strands));
  std::iota(perm.begin(), perm.end(), 0);
  for (int g : word) {
    int k = std::abs(g);
    if (k < 1 || k >= strands) throw Error("braid generator index out of range");
    std::swap(perm[size_t(k - 1)], perm[size_t(k)]);
  }
  // perm[p] = bottom strand arriving at top position p; closure joins top p to bottom p
  component_of.assign(size_t(strands), -1);
  n_components = 0;
  for (int start = 0; start < strands; ++start) {
    if (component_of[size_t(start)] >= 0) continue;
    int c = n_components++;
    int p = start;
    while (component_of[size_t(p)] < 0) {
      component_of[size_t(p)] = c;
      p = perm[size_t(p)];
    }
  }
}

std::vector<long> FramedLink::writhes() const {
  // Braid letters are signed so that the closure of (1 1) evaluates to the
  // s-matrix; with the twists as given, the curl of a word-positive crossing
  // then carries theta^{-1}, so the blackboard writhe counts word-positive
  // self-crossings negatively.
  std::vector<long> w(size_t(n_components), 0);
  // track which bottom strand currently sits at each position
  std::vector<int> at(static_cast<size_t>(strands));
  std::iota(at.begin(), at.end(), 0);
  for (int g : word) {
    int k = std::abs(g);
    int s1 = at[size_t(k - 1)], s2 = at[size_t(k)];
    if (component_of[size_t(s1)] == component_of[size_t(s2)])
      w[size_t(component_of[size_t(s1)])] += (g > 0 ? -1 : 1);
    std::swap(at[size_t(k - 1)], at[size_t(k)]);
  }
  return w;
}

FramedLink parse_link(const std::string& text) {
  FramedLink l;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool have_strands = false;
  std::vector<std::pair<int, long>> framing_lines;
  std::vector<std::pair<int, std::string>> color_lines;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "strands:") {
      if (!(ls >> l.strands) || l.strands < 0)
        throw Error("link line " + std::to_string(lineno) + ": bad strand count");
      have_strands = true;
    } else if (key == "word:") {
      int g;
      while (ls >> g) l.word.push_back(g);
    } else if (key == "framing:") {
      int c;
      char eq;
      long k;
      if (!(ls >> c >> eq >> k) || eq != '=')
        throw Error("link line " + std::to_string(lineno) + ": expected framing: c = k");
      framing_lines.emplace_back(c, k);
    } else if (key == "color:") {
      int c;
      char eq;
      std::string name;
      if (!(ls >> c >> eq >> name) || eq != '=')
        throw Error("link line " + std::to_string(lineno) + ": expected color: c = Label");
      color_lines.emplace_back(c, name);
    } else if (key == "name:") {
      ls >> l.name;
    } else {
      throw Error("link line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_strands) throw Error("link file: missing strands line");
  l.compute_components();
  l.framings.assign(size_t(l.n_components), 0);
  l.colors.assign(size_t(l.n_components), "");
  std::vector<bool> have_framing(size_t(l.n_components), false);
  for (auto& [c, k] : framing_lines) {
    if (c < 1 || c > l.n_components) throw Error("framing line: component index out of range");
    l.framings[size_t(c - 1)] = k;
    have_framing[size_t(c - 1)] = true;
  }
  for (auto& [c, name] : color_lines) {
    if (c < 1 || c > l.n_components) throw Error("color line: component index out of range");
    l.colors[size_t(c - 1)] = name;
  }
  for (int c = 0; c < l.n_components; ++c)
    if (!have_framing[size_t(c)])
      throw Error("missing framing for component " + std::to_string(c + 1));
  return l;
}

FramedLink load_link(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open link file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_link(ss.str());
}

std::string link_to_text(const FramedLink& l) {
  std::ostringstream os;
  if (!l.name.empty()) os << "name: " << l.name << "\n";
  os << "strands: " << l.strands << "\nword:";
  for (int g : l.word) os << " " << g;
  os << "\n";
  for (int c = 0; c < l.n_components; ++c) {
    os << "framing: " << (c + 1) << " = " << l.framings[size_t(c)] << "\n";
    if (!l.colors[size_t(c)].empty())
      os << "color: " << (c + 1) << " = " << l.colors[size_t(c)] << "\n";
  }
  return os.str();
}

}  // namespace tvrt
