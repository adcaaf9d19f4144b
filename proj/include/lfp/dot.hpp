#pragma once

#include <string>
#include <vector>

#include "lfp/colimit.hpp"

namespace lfp {

/// One node per object; identities are drawn as self-loops.
std::string to_dot(const FinCategory& c);
/// A presheaf over E ⇉ V drawn as a multigraph. Throws UnsupportedValue for
/// any other index.
std::string to_dot(const Presheaf& graph);
/// One node per shape object labelled with carrier sizes; one edge per
/// non-identity shape morphism.
std::string to_dot(const Diagram& d);

/// Square K → K′ → D ← Z ← K.
struct DotSquare {
  std::string name;
  NatTrans k;
  NatTrans a;
  NatTrans to_d_from_cod;
  NatTrans to_d_from_base;
};
/// One cluster per square.
std::string to_dot(const std::vector<DotSquare>& squares);

/// Writes text to path; throws ParseError when the file cannot be written.
void write_dot(const std::string& text, const std::string& path);

} // namespace lfp
