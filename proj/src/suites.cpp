#include "lfp/suites.hpp"

#include <algorithm>
#include <functional>

namespace lfp {

json to_json(const Certificate& c) {
  return {{"check", c.check}, {"anchor", c.anchor}, {"instance", c.instance},
          {"verdict", c.verdict ? "pass" : "fail"}, {"witness", c.witness}};
}

std::string to_line(const Certificate& c) {
  std::string line = std::string(c.verdict ? "PASS " : "FAIL ") + c.check + " " + c.instance;
  if (c.verdict) return line;
  if (c.witness.contains("error")) line += ": " + c.witness.at("error").get<std::string>();
  if (c.witness.contains("failure")) line += ": " + c.witness.at("failure").get<std::string>();
  return line;
}

bool all_pass(const std::vector<Certificate>& certs) {
  return std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.verdict; });
}

namespace {

using Body = std::function<bool(json&)>;

class Collector {
public:
  Collector(std::string check, std::string anchor) : check_(std::move(check)), anchor_(std::move(anchor)) {}

  // Errors raised by the operation become failing certificates naming the error kind.
  void run(const std::string& instance, const Body& body) {
    Certificate c{check_, anchor_, instance, false, json::object()};
    try {
      c.verdict = body(c.witness);
    } catch (const LfpError& e) {
      c.verdict = false;
      c.witness["error"] = std::string(to_string(e.kind()));
      c.witness["failure"] = e.detail();
    }
    if (!c.verdict && !c.witness.contains("failure")) c.witness["failure"] = "verdict false";
    out_.push_back(std::move(c));
  }

  std::vector<Certificate> take() { return std::move(out_); }

private:
  std::string check_;
  std::string anchor_;
  std::vector<Certificate> out_;
};

void append(std::vector<Certificate>& out, std::vector<Certificate> more) {
  for (auto& c : more) out.push_back(std::move(c));
}

/// Presheaf names over the given index with total size ≤ max_total.
std::vector<std::string> presheaves_over(const Workspace& ws, const FinCategory& index,
                                         std::size_t max_total) {
  std::vector<std::string> out;
  for (const auto& n : ws.names("presheaves")) {
    Presheaf x = ws.presheaf(n);
    if (x.index() == index && x.total_size() <= max_total) out.push_back(n);
  }
  return out;
}

json sizes(const Presheaf& x) {
  json j = json::object();
  for (std::size_t a = 0; a < x.index().num_objects(); ++a)
    j[x.index().object_name(static_cast<ObjId>(a))] = x.size(static_cast<ObjId>(a));
  return j;
}

json square_json(const SquareCertificate& s) {
  return {{"name", s.name}, {"commutes", s.commutes}, {"pushout", s.pushout},
          {"universal", s.universal}, {"cocones", s.cocones}};
}

std::vector<Certificate> universal_property(const Workspace& ws, const Config& cfg) {
  Collector col("universal-property", "colimits of presheaves are pointwise");
  for (const auto& n : ws.names("diagrams")) {
    col.run("diagrams." + n, [&](json& w) {
      Diagram d = ws.is_coslice_diagram(n) ? cod_diagram(ws.coslice_diagram(n)) : ws.diagram(n);
      Cocone c = finite_colimit(d);
      auto rep = check_colimit_universal(d, c.apex, c.legs, competitor_family(d.index, 2, {}), cfg);
      w["apex"] = sizes(c.apex);
      w["cocones"] = rep.cocones;
      if (!rep.ok) w["failure"] = rep.failure;
      return rep.ok;
    });
  }
  for (const auto& n : ws.names("data")) {
    col.run("data." + n, [&](json& w) {
      GeneratorDatum d = ws.datum(n);
      Evaluation e = evaluate_square(d);
      auto sq = certify_pushout(n, d.k, d.a, e.square.inj_cod, e.square.inj_base, cfg);
      w["square"] = square_json(sq);
      return sq.ok();
    });
  }
  return col.take();
}

std::vector<Certificate> coslice_connected(const Workspace& ws, const Config& cfg) {
  Collector col("coslice-connected", "the codomain functor preserves connected colimits");
  for (const auto& n : ws.names("diagrams")) {
    if (!ws.is_coslice_diagram(n)) continue;
    CosliceDiagram d = ws.coslice_diagram(n);
    if (!is_connected(d.shape)) continue;
    col.run("diagrams." + n, [&](json& w) {
      CosliceColimit c = coslice_colimit(d, cfg);
      Cocone direct = finite_colimit(cod_diagram(d));
      auto iso = find_iso(c.object.cod(), direct.apex, cfg);
      w["colimit"] = sizes(c.object.cod());
      w["colimit_of_codomains"] = sizes(direct.apex);
      if (iso) w["iso"] = components_json(*iso);
      return iso.has_value();
    });
  }
  return col.take();
}

std::vector<Certificate> coslice_correction(const Workspace& ws, const Config& cfg) {
  Collector col("coslice-correction", "the colimit under B is a wide coequalizer of the codomain colimit");
  for (const auto& n : ws.names("diagrams")) {
    if (!ws.is_coslice_diagram(n)) continue;
    col.run("diagrams." + n, [&](json& w) {
      CosliceDiagram d = ws.coslice_diagram(n);
      CosliceColimit c = coslice_colimit(d, cfg);
      CodCorrection corr = cod_correction(d, {}, cfg);
      Cocone naive = finite_colimit(cod_diagram(d));
      auto iso = find_coslice_iso(CosliceObject{corr.arrow}, c.object, cfg);
      w["colimit"] = c.object.cod().total_size();
      w["corrected"] = corr.object.total_size();
      w["codomain_colimit"] = naive.apex.total_size();
      w["connected"] = is_connected(d.shape);
      if (iso) w["iso"] = components_json(*iso);
      return iso.has_value();
    });
  }
  return col.take();
}

std::vector<Certificate> fp_suite(const Workspace& ws, const Config& cfg) {
  Collector col("fp-certificate", "objects of the generator are finitely presented");
  for (const auto& n : ws.names("data")) {
    GeneratorDatum d = ws.datum(n);
    for (const auto& fam : default_families(d.base().index(), cfg.stage_bound)) {
      col.run("data." + n + " @ " + fam.name(), [&](json& w) {
        CosliceChain chain = coslice_chain(d.base(), fam);
        FpCertificate c = fp_certificate(d, chain, 2, cfg);
        w["arrows"] = c.arrows;
        w["lift_stages"] = c.lift_stages;
        w["agreement_stages"] = c.agreement_stages;
        w["refinement_stages"] = c.refinement_stages;
        if (!c.ok) w["failure"] = c.failure;
        return c.ok;
      });
    }
  }
  for (const auto& n : ws.names("comma_data")) {
    LfpMorphism u = ws.morphism(ws.comma_functor("comma_data", n));
    CommaGeneratorDatum d = ws.comma_datum(n);
    for (const auto& chain : default_comma_chains(u, d.m, cfg.stage_bound)) {
      col.run("comma_data." + n + " @ " + chain.name, [&](json& w) {
        CommaFpCertificate c = comma_fp_certificate(u, d, chain, 2, cfg);
        w["arrows"] = c.arrows;
        w["m_stages"] = c.m_stages;
        w["k_stages"] = c.k_stages;
        w["lift_stages"] = c.lift_stages;
        w["refinement_stages"] = c.refinement_stages;
        if (!c.ok) w["failure"] = c.failure;
        return c.ok;
      });
    }
  }
  return col.take();
}

std::vector<Certificate> anel_suite(const Workspace& ws, const Config& cfg) {
  Collector col("anel", "a map into a pushout factors through a finite intermediate pushout");
  for (const auto& n : ws.names("anel")) {
    col.run("anel." + n, [&](json& w) {
      auto inst = ws.anel(n);
      if (inst.chain) {
        IndAnelResult r = anel_factorize(inst.ind, inst.target, cfg);
        w["base_stage"] = r.base_stage;
        w["lift_stage"] = r.lift.stage;
        w["agreement_stage"] = r.lift.agreement;
        w["inner"] = sizes(r.inner.object);
        return true;
      }
      AnelResult r = anel_factorize(inst.datum.k, inst.datum.a, inst.map, cfg);
      const Factorization& f = r.factorization;
      bool factors = compose(f.comparison, r.mediator) == inst.map;
      auto sq = certify_pushout("inner", f.k0, f.a2, f.inner.inj_cod, f.inner.inj_base, cfg);
      w["position"] = f.position;
      w["stage"] = sizes(f.a2.target());
      w["factors"] = factors;
      w["square"] = square_json(sq);
      w["mediator"] = components_json(r.mediator);
      return factors && sq.ok();
    });
  }
  return col.take();
}

std::vector<Certificate> triangle_suite(const Workspace& ws, const Config& cfg) {
  Collector col("lift-triangle", "maps between generators lift to triangles of pushout squares");
  for (const auto& n : ws.names("triangles")) {
    col.run("triangles." + n, [&](json& w) {
      auto inst = ws.triangle(n);
      TriangleLift t = lift_triangle(inst.n1, inst.n2, inst.n, cfg);
      w["anel_position"] = t.anel_position;
      w["refined_position"] = t.refined_position;
      w["squares"] = json::array();
      for (const auto& s : t.squares) w["squares"].push_back(square_json(s));
      w["m"] = components_json(t.m);
      w["common"] = sizes(t.common.k.target());
      return t.ok();
    });
  }
  return col.take();
}

std::vector<Certificate> closure_suite(const Workspace& ws, const Config& cfg) {
  Collector col("closure", "the generator is closed under finite colimits and retracts");
  for (const auto& n : ws.names("generator_diagrams")) {
    col.run("generator_diagrams." + n, [&](json& w) {
      GeneratorDiagram d = ws.generator_diagram(n);
      GeneratorColimit g = generator_colimit(d, cfg);
      bool under = compose(g.iso, evaluate(g.datum).arrow) == g.direct.object.arrow;
      w["position"] = g.lifted.position;
      w["k"] = sizes(g.datum.k.source());
      w["k_prime"] = sizes(g.datum.k.target());
      w["iso"] = components_json(g.iso);
      return g.iso.is_iso() && under;
    });
  }
  for (const auto& n : ws.names("retracts")) {
    col.run("retracts." + n, [&](json& w) {
      auto inst = ws.retract(n);
      RetractSplitting s = split_retract(inst.datum, inst.retract, inst.s, inst.r, cfg);
      bool under = compose(s.iso, evaluate(s.datum).arrow) == inst.retract.arrow;
      w["anel_position"] = s.anel_position;
      w["refined_position"] = s.refined_position;
      w["iso"] = components_json(s.iso);
      return s.iso.is_iso() && under;
    });
  }
  for (const auto& n : ws.names("comma_retracts")) {
    col.run("comma_retracts." + n, [&](json& w) {
      auto inst = ws.comma_retract(n);
      CommaRetractSplitting s = comma_split_retract(inst.u, inst.datum, inst.retract, inst.s, inst.r, cfg);
      CommaObject e = evaluate_comma_datum(inst.u, s.datum);
      bool ok = s.iso.alpha.is_iso() && s.iso.beta.is_iso() && is_comma_map(inst.u, e, inst.retract, s.iso);
      w["alpha"] = components_json(s.iso.alpha);
      w["beta"] = components_json(s.iso.beta);
      return ok;
    });
  }
  return col.take();
}

std::vector<Certificate> adjunction_suite(const Workspace& ws, const Config& cfg) {
  constexpr std::size_t kMaxTotal = 5;
  std::vector<Certificate> out;
  {
    Collector col("adjunction", "cod* is left adjoint to cod");
    for (const auto& fn : ws.names("arrows")) {
      NatTrans f = ws.arrow(fn);
      if (f.source().total_size() > kMaxTotal || f.target().total_size() > kMaxTotal) continue;
      for (const auto& cn : presheaves_over(ws, f.source().index(), kMaxTotal))
        col.run("cod* " + cn + " / " + fn, [&](json& w) {
          bool ok = check_cod_star_adjunction(f.source(), ws.presheaf(cn), CosliceObject{f}, cfg);
          w["homs"] = count_homs(ws.presheaf(cn), f.target(), cfg);
          return ok;
        });
    }
    append(out, col.take());
  }
  {
    Collector col("adjunction", "pushforward along f is left adjoint to precomposition");
    std::vector<std::string> small;
    for (const auto& n : ws.names("arrows")) {
      NatTrans f = ws.arrow(n);
      if (f.source().total_size() <= kMaxTotal && f.target().total_size() <= kMaxTotal)
        small.push_back(n);
    }
    for (const auto& fn : small) {
      NatTrans f = ws.arrow(fn);
      Pushforward p = pushforward_functor(f);
      for (const auto& hn : small) {
        NatTrans h = ws.arrow(hn);
        if (!(h.source() == f.source())) continue;
        for (const auto& gn : small) {
          NatTrans g = ws.arrow(gn);
          if (!(g.source() == f.target())) continue;
          col.run("f=" + fn + " h=" + hn + " g=" + gn, [&](json&) {
            return check_pushforward_adjunction(p, CosliceObject{h}, CosliceObject{g}, cfg);
          });
        }
      }
    }
    append(out, col.take());
  }
  for (const auto& un : ws.names("functors")) {
    LfpMorphism u = ws.morphism(un);
    auto xs = presheaves_over(ws, u.source(), kMaxTotal);
    auto ys = presheaves_over(ws, u.target(), kMaxTotal);
    {
      Collector col("adjunction", "lan is left adjoint to restriction");
      for (const auto& xn : xs)
        for (const auto& yn : ys)
          col.run(un + ": " + xn + " / " + yn, [&](json& w) {
            auto rep = check_adjunction(u, ws.presheaf(xn), ws.presheaf(yn), cfg);
            w["left"] = rep.left;
            w["right"] = rep.right;
            w["triangles"] = rep.triangles;
            w["natural"] = rep.natural;
            if (!rep.ok) w["failure"] = rep.failure;
            return rep.ok;
          });
      append(out, col.take());
    }
    std::vector<std::string> commas;
    for (const auto& n : ws.names("comma_objects"))
      if (ws.comma_functor("comma_objects", n) == un) {
        CommaObject c = ws.comma_object(n);
        if (c.a.total_size() + c.b.total_size() <= kMaxTotal) commas.push_back(n);
      }
    {
      Collector col("adjunction", "comma cod* is left adjoint to cod");
      for (const auto& bn : xs)
        for (const auto& cn : commas)
          col.run(un + ": " + bn + " / " + cn, [&](json&) {
            return check_comma_cod_star_adjunction(u, ws.presheaf(bn), ws.comma_object(cn), cfg);
          });
      append(out, col.take());
    }
    {
      Collector col("adjunction", "1* is left adjoint to 1");
      for (const auto& cn : commas)
        for (const auto& an : ys)
          col.run(un + ": " + cn + " / " + an, [&](json&) {
            return check_one_star_adjunction(u, ws.comma_object(cn), ws.presheaf(an), cfg);
          });
      append(out, col.take());
    }
    {
      Collector col("adjunction", "1 is left adjoint to the projection");
      for (const auto& an : ys)
        for (const auto& cn : commas)
          col.run(un + ": " + an + " / " + cn, [&](json&) {
            return check_projection_adjunction(u, ws.presheaf(an), ws.comma_object(cn), cfg);
          });
      append(out, col.take());
    }
    {
      Collector col("adjunction", "1* after cod* is lan");
      for (const auto& kn : presheaves_over(ws, u.source(), SIZE_MAX))
        col.run(un + ": " + kn, [&](json& w) {
          Presheaf k = ws.presheaf(kn);
          OneStar s = one_star(u, comma_cod_star(u, k));
          auto iso = find_iso(s.object(), lan(u, k), cfg);
          w["one_star"] = sizes(s.object());
          if (iso) w["iso"] = components_json(*iso);
          return iso.has_value();
        });
      append(out, col.take());
    }
  }
  return out;
}

std::vector<Certificate> dense_suite(const Workspace& ws, const Config& cfg) {
  Collector col("dense-generator", "the generator is dense");
  auto record = [](json& w, const DecompositionCertificate& c) {
    w["budget"] = c.budget;
    w["fragment_size"] = c.fragment_size;
    w["probes"] = c.probes;
    w["filtered"] = c.filtered;
    if (!c.ok) {
      w["error"] = std::string(to_string(ErrorKind::BudgetExceeded));
      w["failure"] = c.failure;
    }
    return c.ok;
  };
  for (const auto& n : ws.names("targets"))
    col.run("targets." + n, [&](json& w) {
      NatTrans f = ws.arrow(ws.entry("targets", n).at("arrow").get<std::string>());
      return record(w, canonical_decomposition(CosliceObject{f}, cfg.budget, cfg));
    });
  for (const auto& n : ws.names("comma_objects"))
    col.run("comma_objects." + n, [&](json& w) {
      LfpMorphism u = ws.morphism(ws.comma_functor("comma_objects", n));
      return record(w, comma_decomposition(u, ws.comma_object(n), cfg.budget, cfg));
    });
  return col.take();
}

std::vector<Certificate> comma_suite(const Workspace& ws, const Config& cfg) {
  std::vector<Certificate> out;
  {
    Collector col("comma-object", "comma limits are computed pointwise");
    for (const auto& n : ws.names("comma_diagrams")) {
      LfpMorphism u = ws.morphism(ws.comma_functor("comma_diagrams", n));
      CommaDiagram d = ws.comma_diagram(n);
      col.run("comma_diagrams." + n + " limit", [&](json& w) {
        CommaCocone c = comma_limit(u, d, cfg);
        w["a"] = sizes(c.apex.a);
        w["b"] = sizes(c.apex.b);
        return true;
      });
      if (is_filtered(d.shape))
        col.run("comma_diagrams." + n + " colimit", [&](json& w) {
          CommaCocone c = comma_filtered_colimit(u, d, cfg);
          w["a"] = sizes(c.apex.a);
          w["b"] = sizes(c.apex.b);
          return true;
        });
    }
    append(out, col.take());
  }
  {
    Collector col("comma-object", "the comma category is the comma object");
    for (const auto& n : ws.names("two_cells"))
      col.run("two_cells." + n, [&](json& w) {
        LfpMorphism u = ws.morphism(ws.comma_functor("two_cells", n));
        TwoCellFactorization f = factor_two_cell(u, ws.two_cell(n), cfg);
        w["functors"] = f.functors;
        w["satisfying"] = f.satisfying;
        w["projections_strict"] = f.projections_strict;
        w["whiskering"] = f.whiskering;
        return f.ok();
      });
    append(out, col.take());
  }
  return out;
}

Diagram precompose(const Diagram& d, const FinFunctor& f) {
  std::vector<Presheaf> objs;
  for (std::size_t i = 0; i < f.source().num_objects(); ++i)
    objs.push_back(d.objects[f(static_cast<ObjId>(i))]);
  std::map<MorId, NatTrans> arrows;
  for (std::size_t m = 0; m < f.source().num_morphisms(); ++m) {
    auto mm = static_cast<MorId>(m);
    if (!f.source().is_identity(mm)) arrows[mm] = d.arrows[f.map(mm)];
  }
  return make_diagram(f.source(), d.index, objs, arrows);
}

std::vector<Certificate> final_suite(const Workspace& ws, const Config& cfg) {
  Collector col("final-functor", "an essentially surjective full functor out of a filtered category is final");
  for (const auto& n : ws.names("functors")) {
    FinFunctor f = ws.functor(n);
    col.run("functors." + n, [&](json& w) {
      bool direct = true;
      for (std::size_t j = 0; j < f.target().num_objects(); ++j)
        direct = direct && is_connected(build_comma(f, static_cast<ObjId>(j)));
      bool final = is_final(f);
      bool esofull = is_filtered(f.source()) && is_essentially_surjective(f) && is_full(f);
      w["final"] = final;
      w["esofull_filtered"] = esofull;
      bool ok = final == direct && (!esofull || final);
      if (!final) return ok;
      std::size_t checked = 0;
      for (const auto& dn : ws.names("diagrams")) {
        if (ws.is_coslice_diagram(dn)) continue;
        Diagram d = ws.diagram(dn);
        if (!(d.shape == f.target())) continue;
        ok = ok && isomorphic(finite_colimit(d).apex, finite_colimit(precompose(d, f)).apex, cfg);
        ++checked;
      }
      w["diagrams"] = checked;
      return ok;
    });
  }
  return col.take();
}

std::vector<Certificate> kan_suite(const Workspace& ws, const Config& cfg) {
  Collector col("kan", "a left adjoint between presheaf categories preserves colimits");
  for (const auto& un : ws.names("functors")) {
    LfpMorphism u = ws.morphism(un);
    for (const auto& dn : ws.names("diagrams")) {
      if (ws.is_coslice_diagram(dn)) continue;
      Diagram d = ws.diagram(dn);
      const bool over_source = d.index == u.source();
      const bool over_target = d.index == u.target();
      if (!over_source && !over_target) continue;
      auto transport = [&](bool left) {
        std::vector<Presheaf> objs;
        for (const auto& x : d.objects) objs.push_back(left ? lan(u, x) : restrict(u, x));
        std::map<MorId, NatTrans> arrows;
        for (std::size_t m = 0; m < d.shape.num_morphisms(); ++m)
          if (!d.shape.is_identity(static_cast<MorId>(m)))
            arrows[static_cast<MorId>(m)] = left ? lan(u, d.arrows[m]) : restrict(u, d.arrows[m]);
        return make_diagram(d.shape, left ? u.target() : u.source(), objs, arrows);
      };
      if (over_source)
        col.run(un + " lan " + dn, [&](json& w) {
          Presheaf lhs = lan(u, finite_colimit(d).apex);
          Presheaf rhs = finite_colimit(transport(true)).apex;
          w["lan_of_colimit"] = sizes(lhs);
          return isomorphic(lhs, rhs, cfg);
        });
      if (over_target)
        col.run(un + " restrict " + dn, [&](json& w) {
          Presheaf lhs = restrict(u, finite_colimit(d).apex);
          Presheaf rhs = finite_colimit(transport(false)).apex;
          w["restrict_of_colimit"] = sizes(lhs);
          return isomorphic(lhs, rhs, cfg);
        });
    }
    for (const auto& xn : presheaves_over(ws, u.source(), SIZE_MAX))
      col.run(un + " unit " + xn, [&](json& w) {
        Presheaf x = ws.presheaf(xn);
        NatTrans eta = unit(u, x);
        NatTrans eps = counit(u, lan(u, x));
        // ε_{lan X} ∘ lan(η_X) = 1
        bool tri = compose(eps, lan(u, eta)) == NatTrans::identity(lan(u, x));
        w["lan"] = sizes(lan(u, x));
        return tri;
      });
  }
  return col.take();
}

struct Suite {
  std::string name;
  std::vector<Certificate> (*run)(const Workspace&, const Config&);
};

const std::vector<Suite>& registry() {
  static const std::vector<Suite> r{
      {"universal-property", universal_property},
      {"coslice-connected", coslice_connected},
      {"coslice-correction", coslice_correction},
      {"fp-certificate", fp_suite},
      {"anel", anel_suite},
      {"lift-triangle", triangle_suite},
      {"closure", closure_suite},
      {"adjunction", adjunction_suite},
      {"dense-generator", dense_suite},
      {"comma-object", comma_suite},
      {"final-functor", final_suite},
      {"kan", kan_suite},
  };
  return r;
}

} // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : registry()) out.push_back(s.name);
  return out;
}

std::vector<Certificate> run_suite(const std::string& name, const Workspace& ws, const Config& cfg) {
  for (const auto& s : registry())
    if (s.name == name) {
      auto certs = s.run(ws, cfg);
      std::stable_sort(certs.begin(), certs.end(), [](const Certificate& a, const Certificate& b) {
        return std::tie(a.check, a.instance) < std::tie(b.check, b.instance);
      });
      return certs;
    }
  fail(ErrorKind::UnknownSuite, name);
}

std::vector<Certificate> run_all_suites(const Workspace& ws, const Config& cfg) {
  std::vector<Certificate> out;
  for (const auto& s : registry()) append(out, run_suite(s.name, ws, cfg));
  return out;
}

} // namespace lfp
