#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace lfp;
using th::graph;
using th::set;

namespace {

Diagram restrict_diagram(const LfpMorphism& f, const Diagram& d) {
  std::vector<Presheaf> objs;
  for (const auto& x : d.objects) objs.push_back(restrict(f, x));
  std::map<MorId, NatTrans> arrows;
  for (std::size_t m = 0; m < d.shape.num_morphisms(); ++m)
    if (!d.shape.is_identity(static_cast<MorId>(m)))
      arrows[static_cast<MorId>(m)] = restrict(f, d.arrows[m]);
  return make_diagram(d.shape, f.source(), objs, arrows);
}

/// The arrow 0 → 1 sent to src : E → V.
LfpMorphism source_arrow() {
  const auto g = catalog::parallel_pair();
  auto arrow = catalog::linear(2);
  std::vector<MorId> mors(arrow.num_morphisms());
  mors[arrow.identity(arrow.object("0"))] = g.identity(g.object("E"));
  mors[arrow.identity(arrow.object("1"))] = g.identity(g.object("V"));
  mors[arrow.morphism("0<1")] = g.morphism("src");
  return {FinFunctor(arrow, g, {g.object("E"), g.object("V")}, mors)};
}

} // namespace

TEST_CASE("restrict examples") {
  const auto g = catalog::parallel_pair();
  Presheaf x = graph({"a", "b"}, {{"x", "a", "b"}, {"y", "b", "b"}});
  LfpMorphism id{FinFunctor::identity(g)};
  CHECK(restrict(id, x).to_raw().carrier == x.to_raw().carrier);

  LfpMorphism cst{FinFunctor::constant(catalog::discrete(2), g, g.object("V"))};
  CHECK(th::sizes(restrict(cst, x)) == std::vector<std::size_t>{2, 2});

  auto arrow = catalog::linear(2);
  LfpMorphism src = source_arrow();
  Presheaf r = restrict(src, x);
  CHECK(th::sizes(r) == std::vector<std::size_t>{2, 2});
  MorId up = arrow.morphism("0<1");
  for (Elem e = 0; e < 2; ++e) CHECK(r.act(up, e) == x.act(g.morphism("src"), e));
}

TEST_CASE("lan examples") {
  const auto g = catalog::parallel_pair();
  Presheaf x = graph({"a", "b"}, {{"x", "a", "b"}});
  LfpMorphism id{FinFunctor::identity(g)};
  CHECK(isomorphic(lan(id, x), x));

  LfpMorphism v = th::vertex_inclusion();
  CHECK(lan(v, set({})).total_size() == 0);
  Presheaf two = set({"p", "q"});
  Presheaf l = lan(v, two);
  CHECK(isomorphic(l, graph({"p", "q"})));
  for (const auto& y : enumerate_presheaves(g, 3)) {
    AdjunctionReport rep = check_adjunction(v, two, y);
    CHECK(rep.ok);
    CHECK(rep.left == rep.right);
  }

  // along the edge object: a free edge per element
  LfpMorphism e{FinFunctor(catalog::terminal(), g, {g.object("E")}, {g.identity(g.object("E"))})};
  CHECK(th::sizes(lan(e, set({"p"}))) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("lan agrees with the pointwise oracle") {
  std::mt19937_64 rng(101);
  std::size_t checked = 0;
  for (const auto& [sn, s] : catalog::small_shapes())
    for (const auto& [tn, t] : catalog::small_shapes()) {
      auto fs = enumerate_functors(s, t);
      if (fs.empty()) continue;
      const auto& u = fs[std::uniform_int_distribution<std::size_t>(0, fs.size() - 1)(rng)];
      for (int rep = 0; rep < 2; ++rep) {
        Presheaf x = random_presheaf(s, 3, rng);
        CAPTURE(sn);
        CAPTURE(tn);
        CHECK(th::sizes(lan(LfpMorphism{u}, x)) == oracle::lan_sizes(u, x));
        ++checked;
      }
    }
  CHECK(checked > 100);
}

TEST_CASE("adjunction, triangles and naturality on random instances") {
  std::mt19937_64 rng(103);
  std::size_t checked = 0;
  for (const auto& [sn, s] : catalog::small_shapes())
    for (const auto& [tn, t] : catalog::small_shapes()) {
      if (s.num_objects() > 2 || t.num_objects() > 2) continue;
      auto fs = enumerate_functors(s, t);
      if (fs.empty()) continue;
      LfpMorphism f{fs[std::uniform_int_distribution<std::size_t>(0, fs.size() - 1)(rng)]};
      Presheaf x = random_presheaf(s, 2, rng), y = random_presheaf(t, 3, rng);
      CAPTURE(sn);
      CAPTURE(tn);
      AdjunctionReport rep = check_adjunction(f, x, y);
      CHECK(rep.ok);
      CHECK(rep.triangles);
      CHECK(rep.natural);
      CHECK(rep.left == oracle::homs(lan(f, x), y).size());
      CHECK(rep.right == oracle::homs(x, restrict(f, y)).size());
      ++checked;
    }
  CHECK(checked > 20);

  // X empty: both hom sets are singletons
  LfpMorphism v = th::vertex_inclusion();
  AdjunctionReport e = check_adjunction(v, set({}), graph({"a"}, {{"x", "a", "a"}}));
  CHECK(e.left == 1);
  CHECK(e.right == 1);
}

TEST_CASE("transposes are mutually inverse") {
  LfpMorphism v = th::vertex_inclusion();
  Presheaf x = set({"p", "q"});
  Presheaf y = graph({"a", "b"}, {{"e", "a", "b"}});
  for (const auto& psi : enumerate_homs(lan(v, x), y)) {
    NatTrans phi = transpose(v, x, psi);
    CHECK(transpose_back(v, phi, y) == psi);
  }
  for (const auto& phi : enumerate_homs(x, restrict(v, y))) CHECK(transpose(v, x, transpose_back(v, phi, y)) == phi);
  CHECK(compose(counit(v, lan(v, x)), lan(v, unit(v, x))) == NatTrans::identity(lan(v, x)));
}

TEST_CASE("restrict preserves finite limits and colimits") {
  std::mt19937_64 rng(107);
  const auto g = catalog::parallel_pair();
  LfpMorphism v = th::vertex_inclusion();
  LfpMorphism src = source_arrow();
  std::size_t checked = 0;
  for (const auto& [name, shape] : catalog::small_shapes()) {
    for (int rep = 0; rep < 3; ++rep) {
      auto d = th::random_diagram(shape, g, 3, rng);
      if (!d) continue;
      CAPTURE(name);
      for (const auto& f : {v, src}) {
        Diagram rd = restrict_diagram(f, *d);
        CHECK(isomorphic(restrict(f, finite_colimit(*d).apex), finite_colimit(rd).apex));
        CHECK(isomorphic(restrict(f, finite_limit(*d).apex), finite_limit(rd).apex));
      }
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("lan of a finite presheaf is finite and preserves colimits") {
  std::mt19937_64 rng(109);
  LfpMorphism v = th::vertex_inclusion();
  auto t = catalog::terminal();
  for (int rep = 0; rep < 20; ++rep) {
    Presheaf x = random_presheaf(t, 3, rng), y = random_presheaf(t, 3, rng);
    CHECK(isomorphic(lan(v, coproduct(x, y).object), coproduct(lan(v, x), lan(v, y)).object));
  }
}
