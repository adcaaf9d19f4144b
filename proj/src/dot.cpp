#include "lfp/dot.hpp"

#include <fstream>
#include <sstream>

namespace lfp {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string size_label(const Presheaf& x) {
  std::ostringstream os;
  const FinCategory& c = x.index();
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    if (a) os << ",";
    os << c.object_name(static_cast<ObjId>(a)) << ":" << x.size(static_cast<ObjId>(a));
  }
  return os.str();
}

} // namespace

std::string to_dot(const FinCategory& c) {
  std::ostringstream os;
  os << "digraph category {\n";
  for (std::size_t a = 0; a < c.num_objects(); ++a)
    os << "  " << quote(c.object_name(static_cast<ObjId>(a))) << ";\n";
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto m = static_cast<MorId>(f);
    os << "  " << quote(c.object_name(c.dom(m))) << " -> " << quote(c.object_name(c.cod(m)))
       << " [label=" << quote(c.morphism_name(m)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const Presheaf& g) {
  const FinCategory& c = g.index();
  // E ⇉ V: two objects, two parallel non-identity arrows out of E
  std::vector<MorId> arrows;
  for (std::size_t f = 0; f < c.num_morphisms(); ++f)
    if (!c.is_identity(static_cast<MorId>(f))) arrows.push_back(static_cast<MorId>(f));
  if (c.num_objects() != 2 || arrows.size() != 2 || c.dom(arrows[0]) != c.dom(arrows[1]) ||
      c.cod(arrows[0]) != c.cod(arrows[1]) || c.dom(arrows[0]) == c.cod(arrows[0]))
    fail(ErrorKind::UnsupportedValue, "only presheaves over E ⇉ V are drawn as graphs");
  const ObjId e = c.dom(arrows[0]);
  const ObjId v = c.cod(arrows[0]);
  MorId src = arrows[0], tgt = arrows[1];
  if (auto s = c.find_morphism("src"); s && *s == arrows[1]) std::swap(src, tgt);
  std::ostringstream os;
  os << "digraph graph_presheaf {\n";
  for (Elem x = 0; x < static_cast<Elem>(g.size(v)); ++x)
    os << "  " << quote(g.element_name(v, x)) << ";\n";
  for (Elem x = 0; x < static_cast<Elem>(g.size(e)); ++x)
    os << "  " << quote(g.element_name(v, g.act(src, x))) << " -> "
       << quote(g.element_name(v, g.act(tgt, x))) << " [label=" << quote(g.element_name(e, x))
       << "];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const Diagram& d) {
  std::ostringstream os;
  os << "digraph diagram {\n";
  for (std::size_t a = 0; a < d.shape.num_objects(); ++a)
    os << "  " << quote(d.shape.object_name(static_cast<ObjId>(a))) << " [label="
       << quote(d.shape.object_name(static_cast<ObjId>(a)) + " {" + size_label(d.objects[a]) + "}")
       << "];\n";
  for (std::size_t f = 0; f < d.shape.num_morphisms(); ++f) {
    auto m = static_cast<MorId>(f);
    if (d.shape.is_identity(m)) continue;
    os << "  " << quote(d.shape.object_name(d.shape.dom(m))) << " -> "
       << quote(d.shape.object_name(d.shape.cod(m))) << " [label=" << quote(d.shape.morphism_name(m))
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const std::vector<DotSquare>& squares) {
  std::ostringstream os;
  os << "digraph squares {\n";
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const DotSquare& s = squares[i];
    const std::string p = "s" + std::to_string(i) + "_";
    os << "  subgraph cluster_" << i << " {\n";
    os << "    label=" << quote(s.name) << ";\n";
    os << "    " << p << "K [label=" << quote("K {" + size_label(s.k.source()) + "}") << "];\n";
    os << "    " << p << "Kp [label=" << quote("K' {" + size_label(s.k.target()) + "}") << "];\n";
    os << "    " << p << "Z [label=" << quote("Z {" + size_label(s.a.target()) + "}") << "];\n";
    os << "    " << p << "D [label=" << quote("D {" + size_label(s.to_d_from_cod.target()) + "}")
       << "];\n";
    os << "    " << p << "K -> " << p << "Kp;\n";
    os << "    " << p << "K -> " << p << "Z;\n";
    os << "    " << p << "Kp -> " << p << "D;\n";
    os << "    " << p << "Z -> " << p << "D;\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

void write_dot(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ParseError, path + ": cannot write");
  out << text;
}

} // namespace lfp
