#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace lfp;

namespace {

RawCategory linear3_raw() {
  RawCategory raw;
  raw.objects = {"0", "1", "2"};
  for (std::string o : {"0", "1", "2"}) {
    raw.morphisms.push_back({"id" + o, o, o});
    raw.identities[o] = "id" + o;
  }
  raw.morphisms.push_back({"a", "0", "1"});
  raw.morphisms.push_back({"b", "1", "2"});
  raw.morphisms.push_back({"ba", "0", "2"});
  raw.compose.push_back({"b", "a", "ba"});
  return raw;
}

} // namespace

TEST_CASE("validate_category accepts the small shapes and rejects missing composites") {
  RawCategory t;
  t.objects = {"*"};
  t.morphisms = {{"id", "*", "*"}};
  t.identities = {{"*", "id"}};
  CHECK(validate_category(t).num_morphisms() == 1);

  FinCategory pp = validate_category(catalog::parallel_pair().to_raw());
  CHECK(pp.num_objects() == 2);
  CHECK(pp.num_morphisms() == 4);

  CHECK(validate_category(linear3_raw()).num_morphisms() == 6);
  RawCategory broken = linear3_raw();
  broken.compose.clear();
  try {
    validate_category(broken);
    FAIL("missing composite accepted");
  } catch (const LfpError& e) {
    CHECK(e.kind() == ErrorKind::BadComposite);
  }
}

TEST_CASE("validate_category reports unknown ids and missing identities") {
  RawCategory raw = linear3_raw();
  raw.compose.push_back({"b", "nope", "ba"});
  CHECK_THROWS_AS(validate_category(raw), LfpError);
  RawCategory noid = linear3_raw();
  noid.identities.erase("2");
  try {
    validate_category(noid);
    FAIL("missing identity accepted");
  } catch (const LfpError& e) {
    CHECK(e.kind() == ErrorKind::MissingIdentity);
  }
}

TEST_CASE("max_morphisms bounds validated categories") {
  Config cfg;
  cfg.max_morphisms = 5;
  CHECK_THROWS_AS(validate_category(linear3_raw(), cfg), LfpError);
}

TEST_CASE("connectedness and filteredness on named shapes") {
  CHECK(is_connected(catalog::terminal()));
  CHECK_FALSE(is_connected(catalog::discrete(2)));
  CHECK(is_connected(catalog::parallel_pair()));
  CHECK_FALSE(is_connected(catalog::discrete(0)));

  CHECK(is_filtered(catalog::terminal()));
  CHECK_FALSE(is_filtered(catalog::discrete(2)));
  CHECK(is_filtered(catalog::linear(3)));
  CHECK_FALSE(is_filtered(catalog::discrete(0)));
  CHECK_FALSE(is_filtered(catalog::parallel_pair()));
}

TEST_CASE("predicates agree with the oracle on every small shape") {
  for (const auto& [name, c] : catalog::small_shapes()) {
    CAPTURE(name);
    CHECK(is_connected(c) == oracle::connected(c));
    CHECK(is_filtered(c) == oracle::filtered(c));
  }
}

TEST_CASE("finality on identities and inclusions") {
  CHECK(is_final(FinFunctor::identity(catalog::parallel_pair())));
  auto d2 = catalog::discrete(2);
  FinFunctor incl(catalog::terminal(), d2, {0}, {d2.identity(0)});
  CHECK_FALSE(is_final(incl));
  auto l2 = catalog::linear(2);
  FinFunctor top(catalog::terminal(), l2, {1}, {l2.identity(1)});
  CHECK(is_final(top));
  FinFunctor bottom(catalog::terminal(), l2, {0}, {l2.identity(0)});
  CHECK_FALSE(is_final(bottom));
}

TEST_CASE("finality: exhaustive sweep over functors between small shapes") {
  std::size_t functors = 0, esofull = 0;
  for (const auto& [sn, s] : catalog::small_shapes())
    for (const auto& [tn, t] : catalog::small_shapes()) {
      for (const auto& f : enumerate_functors(s, t)) {
        ++functors;
        CAPTURE(sn);
        CAPTURE(tn);
        bool final = is_final(f);
        CHECK(final == oracle::final_functor(f));
        if (is_filtered(s) && is_essentially_surjective(f) && is_full(f)) {
          ++esofull;
          CHECK(final);
        }
      }
    }
  CHECK(functors > 100);
  CHECK(esofull > 5);
}

TEST_CASE("final functors preserve colimits of small diagrams") {
  std::mt19937_64 rng(7);
  const auto& g = catalog::parallel_pair();
  std::size_t checked = 0;
  for (const auto& [sn, s] : catalog::small_shapes())
    for (const auto& [tn, t] : catalog::small_shapes()) {
      if (t.num_objects() > 2) continue;
      for (const auto& f : enumerate_functors(s, t)) {
        if (!is_final(f)) continue;
        for (int rep = 0; rep < 2; ++rep) {
          // a diagram on t: random vertices, arrows built along a spanning choice
          std::vector<Presheaf> objs;
          for (std::size_t i = 0; i < t.num_objects(); ++i) objs.push_back(random_presheaf(g, 3, rng));
          std::map<MorId, NatTrans> arrows;
          bool ok = true;
          for (std::size_t m = 0; m < t.num_morphisms() && ok; ++m) {
            auto mm = static_cast<MorId>(m);
            if (t.is_identity(mm)) continue;
            // only shapes whose non-identity arrows compose freely are built this way
            auto h = first_hom(objs[t.dom(mm)], objs[t.cod(mm)]);
            if (!h) ok = false;
            else arrows[mm] = *h;
          }
          if (!ok) continue;
          Diagram d;
          try {
            d = make_diagram(t, g, objs, arrows);
          } catch (const LfpError&) {
            continue;
          }
          std::vector<Presheaf> pobjs;
          std::map<MorId, NatTrans> parrows;
          for (std::size_t i = 0; i < s.num_objects(); ++i) pobjs.push_back(objs[f(static_cast<ObjId>(i))]);
          for (std::size_t m = 0; m < s.num_morphisms(); ++m)
            if (!s.is_identity(static_cast<MorId>(m))) parrows[static_cast<MorId>(m)] = d.arrows[f.map(static_cast<MorId>(m))];
          Diagram pd = make_diagram(s, g, pobjs, parrows);
          CHECK(oracle::isomorphic(finite_colimit(d).apex, finite_colimit(pd).apex));
          ++checked;
        }
      }
    }
  CHECK(checked > 20);
}

TEST_CASE("comma categories") {
  auto t = catalog::terminal();
  CHECK(build_comma(FinFunctor::identity(t), 0).num_objects() == 1);

  // constant at V with source E ⇉ V: objects (i, φ : V → V), one per i
  const auto& g = catalog::parallel_pair();
  FinFunctor c = FinFunctor::constant(g, g, g.object("V"));
  FinCategory comma = build_comma(c, g.object("V"));
  CHECK(comma.num_objects() == 2);
  CHECK(comma.num_morphisms() == 4);
  // j = E: φ ranges over src and tgt, giving two copies of E ⇉ V
  FinCategory ce = build_comma(c, g.object("E"));
  CHECK(ce.num_objects() == 4);
  CHECK(ce.num_morphisms() == 8);
  // over V nothing maps back to E
  FinFunctor ce2 = FinFunctor::constant(g, g, g.object("E"));
  CHECK(build_comma(ce2, g.object("V")).num_objects() == 0);

  for (const auto& [sn, s] : catalog::small_shapes())
    for (const auto& [tn, tt] : catalog::small_shapes()) {
      if (s.num_objects() > 2 || tt.num_objects() > 2) continue;
      for (const auto& f : enumerate_functors(s, tt))
        for (std::size_t j = 0; j < tt.num_objects(); ++j) {
          FinCategory cc = build_comma(f, static_cast<ObjId>(j));
          CHECK_NOTHROW(validate_category(cc.to_raw()));
          FinCategory co = build_comma_over(f, static_cast<ObjId>(j));
          CHECK_NOTHROW(validate_category(co.to_raw()));
        }
    }
}

TEST_CASE("validate_functor with implicit identities") {
  const auto& g = catalog::parallel_pair();
  RawFunctor raw;
  raw.on_objects = {{"E", "E"}, {"V", "V"}};
  raw.on_morphisms = {{"src", "tgt"}, {"tgt", "src"}};
  FinFunctor swap = validate_functor(g, g, raw);
  CHECK(swap.map(g.morphism("src")) == g.morphism("tgt"));
  raw.on_morphisms = {{"src", "id_V"}};
  CHECK_THROWS_AS(validate_functor(g, g, raw), LfpError);
}
