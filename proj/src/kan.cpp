#include "lfp/kan.hpp"

#include <algorithm>

namespace lfp {

Presheaf restrict(const LfpMorphism& f, const Presheaf& x) {
  if (!(x.index() == f.target())) fail(ErrorKind::IndexMismatch, "restriction of a foreign presheaf");
  const auto& i = f.source();
  std::vector<std::vector<std::string>> names(i.num_objects());
  std::vector<std::vector<Elem>> actions(i.num_morphisms());
  for (std::size_t a = 0; a < i.num_objects(); ++a)
    names[a] = x.element_names(f.u(static_cast<ObjId>(a)));
  for (std::size_t m = 0; m < i.num_morphisms(); ++m)
    actions[m] = x.action(f.u.map(static_cast<MorId>(m)));
  return Presheaf::make(i, std::move(names), std::move(actions), false);
}

NatTrans restrict(const LfpMorphism& f, const NatTrans& t) {
  std::vector<std::vector<Elem>> comps(f.source().num_objects());
  for (std::size_t a = 0; a < comps.size(); ++a) comps[a] = t.component(f.u(static_cast<ObjId>(a)));
  return NatTrans(restrict(f, t.source()), restrict(f, t.target()), std::move(comps), false);
}

namespace {

struct Node {
  ObjId i;
  MorId phi;
};

// Pointwise colimits over u ↓ j with one representative per element.
struct LanData {
  std::vector<std::vector<Node>> nodes;
  std::vector<std::map<std::pair<ObjId, MorId>, std::size_t>> node_of;
  std::vector<Cocone> cols;
  std::vector<std::vector<std::pair<std::size_t, Elem>>> rep;
  Presheaf result;
};

Presheaf over_point(const FinCategory& pt, const Presheaf& x, ObjId a) {
  return Presheaf::make(pt, {x.element_names(a)}, {{}}, false);
}

LanData compute_lan(const LfpMorphism& f, const Presheaf& x) {
  if (!(x.index() == f.source())) fail(ErrorKind::IndexMismatch, "extension of a foreign presheaf");
  const auto& t = f.target();
  const FinCategory pt = catalog::terminal();
  LanData d;
  d.nodes.resize(t.num_objects());
  d.node_of.resize(t.num_objects());
  d.rep.resize(t.num_objects());
  std::vector<std::vector<std::string>> names(t.num_objects());
  for (std::size_t j = 0; j < t.num_objects(); ++j) {
    auto jj = static_cast<ObjId>(j);
    CommaData cd = comma_data(f.u, jj, false);
    for (std::size_t k = 0; k < cd.phi.size(); ++k) {
      d.node_of[j][{cd.source_object[k], cd.phi[k]}] = k;
      d.nodes[j].push_back({cd.source_object[k], cd.phi[k]});
    }
    const FinCategory& shape = cd.cat;
    std::vector<Presheaf> objs;
    for (const auto& n : d.nodes[j]) objs.push_back(over_point(pt, x, n.i));
    std::map<MorId, NatTrans> arrows;
    for (std::size_t m = 0; m < shape.num_morphisms(); ++m) {
      auto mm = static_cast<MorId>(m);
      if (shape.is_identity(mm)) continue;
      arrows[mm] = NatTrans(objs[shape.dom(mm)], objs[shape.cod(mm)],
                            {x.action(cd.source_morphism[m])}, false);
    }
    Diagram diag = make_diagram(shape, pt, objs, arrows);
    d.cols.push_back(finite_colimit(diag));
    const Cocone& col = d.cols.back();
    names[j] = col.apex.element_names(0);
    d.rep[j].assign(col.apex.size(0), {0, -1});
    for (std::size_t k = d.nodes[j].size(); k-- > 0;)
      for (std::size_t e = col.legs[k].source().size(0); e-- > 0;)
        d.rep[j][col.legs[k](0, static_cast<Elem>(e))] = {k, static_cast<Elem>(e)};
  }
  std::vector<std::vector<Elem>> actions(t.num_morphisms());
  for (std::size_t b = 0; b < t.num_morphisms(); ++b) {
    auto bb = static_cast<MorId>(b);
    const auto j = static_cast<std::size_t>(t.dom(bb));
    const auto j2 = static_cast<std::size_t>(t.cod(bb));
    for (auto [k, e] : d.rep[j]) {
      const Node& n = d.nodes[j][k];
      std::size_t k2 = d.node_of[j2].at({n.i, *t.compose(bb, n.phi)});
      actions[b].push_back(d.cols[j2].legs[k2](0, e));
    }
  }
  d.result = Presheaf::make(t, std::move(names), std::move(actions), false);
  return d;
}

} // namespace

Presheaf lan(const LfpMorphism& f, const Presheaf& x) { return compute_lan(f, x).result; }

NatTrans lan(const LfpMorphism& f, const NatTrans& t) {
  LanData dx = compute_lan(f, t.source());
  LanData dy = compute_lan(f, t.target());
  std::vector<std::vector<Elem>> comps(f.target().num_objects());
  for (std::size_t j = 0; j < comps.size(); ++j)
    for (auto [k, e] : dx.rep[j])
      comps[j].push_back(dy.cols[j].legs[k](0, t(dx.nodes[j][k].i, e)));
  return NatTrans(dx.result, dy.result, std::move(comps), false);
}

NatTrans unit(const LfpMorphism& f, const Presheaf& x) {
  LanData d = compute_lan(f, x);
  const auto& s = f.source();
  const auto& t = f.target();
  std::vector<std::vector<Elem>> comps(s.num_objects());
  for (std::size_t i = 0; i < s.num_objects(); ++i) {
    auto ii = static_cast<ObjId>(i);
    const auto j = static_cast<std::size_t>(f.u(ii));
    std::size_t k = d.node_of[j].at({ii, t.identity(f.u(ii))});
    for (std::size_t e = 0; e < x.size(ii); ++e)
      comps[i].push_back(d.cols[j].legs[k](0, static_cast<Elem>(e)));
  }
  return NatTrans(x, restrict(f, d.result), std::move(comps), false);
}

NatTrans counit(const LfpMorphism& f, const Presheaf& a) {
  Presheaf ra = restrict(f, a);
  LanData d = compute_lan(f, ra);
  std::vector<std::vector<Elem>> comps(f.target().num_objects());
  for (std::size_t j = 0; j < comps.size(); ++j)
    for (auto [k, e] : d.rep[j]) comps[j].push_back(a.act(d.nodes[j][k].phi, e));
  return NatTrans(d.result, a, std::move(comps), false);
}

NatTrans transpose(const LfpMorphism& f, const Presheaf& x, const NatTrans& psi) {
  return compose(restrict(f, psi), unit(f, x));
}

NatTrans transpose_back(const LfpMorphism& f, const NatTrans& phi, const Presheaf& y) {
  return compose(counit(f, y), lan(f, phi));
}

AdjunctionReport check_adjunction(const LfpMorphism& f, const Presheaf& x, const Presheaf& y,
                                  const Config& cfg) {
  AdjunctionReport r;
  Presheaf lx = lan(f, x);
  Presheaf ry = restrict(f, y);
  auto left = enumerate_homs(lx, y, cfg);
  auto right = enumerate_homs(x, ry, cfg);
  r.left = left.size();
  r.right = right.size();
  NatTrans eta = unit(f, x);
  std::vector<NatTrans> images;
  for (const auto& psi : left) {
    NatTrans phi = compose(restrict(f, psi), eta);
    if (!(transpose_back(f, phi, y) == psi)) {
      r.failure = "transposing twice does not return the map";
      return r;
    }
    images.push_back(phi);
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end() || r.left != r.right) {
    r.failure = "transposition is not a bijection";
    return r;
  }
  NatTrans t1 = compose(counit(f, lx), lan(f, eta));
  NatTrans t2 = compose(restrict(f, counit(f, y)), unit(f, ry));
  r.triangles = t1 == NatTrans::identity(lx) && t2 == NatTrans::identity(ry);
  if (!r.triangles) {
    r.failure = "a triangle identity fails";
    return r;
  }
  constexpr std::size_t kMaxEndos = 16;
  auto endos = enumerate_homs(y, y, cfg);
  if (endos.size() > kMaxEndos) endos.resize(kMaxEndos);
  for (const auto& h : endos)
    for (const auto& psi : left)
      if (!(transpose(f, x, compose(h, psi)) ==
            compose(restrict(f, h), compose(restrict(f, psi), eta)))) {
        r.failure = "transposition is not natural in the second variable";
        return r;
      }
  r.natural = true;
  r.ok = true;
  return r;
}

} // namespace lfp
