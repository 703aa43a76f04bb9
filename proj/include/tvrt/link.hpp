#pragma once

// Framed links presented as trace closures of braid words.  Components are
// the cycles of the underlying permutation, numbered by their smallest bottom
// strand (1-based in files); each carries an integer framing and optionally a
// color name resolved against the braided category's simples.

#include <string>
#include <vector>

#include "tvrt/cyclotomic.hpp"

namespace tvrt {

struct FramedLink {
  int strands = 0;
  std::vector<int> word;            // signed generator indices, |k| in 1..strands-1
  std::vector<int> component_of;    // bottom strand -> component (0-based)
  int n_components = 0;
  std::vector<long> framings;       // per component
  std::vector<std::string> colors;  // per component; empty = uncolored
  std::string name;                 // optional documentation label

  // total crossing sign between strands of the same component
  std::vector<long> writhes() const;
  void compute_components();  // fills component_of / n_components from the word
};

FramedLink parse_link(const std::string& text);
FramedLink load_link(const std::string& path);
std::string link_to_text(const FramedLink& l);

}  // namespace tvrt
