#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfp/dot.hpp"
#include "lfp/suites.hpp"

using namespace lfp;

namespace {

struct Options {
  std::vector<std::string> files;
  std::size_t stage_bound = 0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::string dot;
  std::string suite;
  bool json_out = false;
};

Config make_config(const Options& o) {
  Config cfg = Config::from_env();
  if (o.stage_bound) cfg.stage_bound = o.stage_bound;
  if (o.budget) cfg.budget = o.budget;
  cfg.seed = o.seed;
  return cfg;
}

int emit(const std::vector<Certificate>& certs, const Options& o) {
  if (o.json_out) {
    json arr = json::array();
    for (const auto& c : certs) arr.push_back(to_json(c));
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& c : certs) std::cout << to_line(c) << "\n";
  }
  return all_pass(certs) ? 0 : 1;
}

void maybe_dot(const Options& o, const std::string& text) {
  if (!o.dot.empty()) write_dot(text, o.dot);
}

json sizes(const Presheaf& x) {
  json j = json::object();
  for (std::size_t a = 0; a < x.index().num_objects(); ++a)
    j[x.index().object_name(static_cast<ObjId>(a))] = x.size(static_cast<ObjId>(a));
  return j;
}

json presheaf_json(const Presheaf& x) { return to_json(x, "")["carrier"]; }

Certificate make_cert(const std::string& check, const std::string& instance, bool verdict, json w) {
  if (!verdict && !w.contains("failure")) w["failure"] = "verdict false";
  return {check, "", instance, verdict, std::move(w)};
}

DotSquare square_of(const std::string& name, const Pushout& p, const NatTrans& k, const NatTrans& a) {
  return {name, k, a, p.inj_cod, p.inj_base};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lfpkit: finite presheaf constructions with certificates"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--stage-bound", o.stage_bound, "hard bound on chain stages (default 32)");
  app.add_option("--budget", o.budget, "total_size budget for decompositions (default 6)");
  app.add_option("--seed", o.seed, "seed for randomized choices");
  app.add_option("--dot", o.dot, "write a DOT rendering of the result to this path");
  app.add_flag("--json", o.json_out, "machine-readable certificates");
  app.add_option("--suite", o.suite, "suite name for the suite command");

  std::function<int()> action;
  auto files = [&](CLI::App* sub) { sub->add_option("files", o.files, "workspace files"); };
  auto ws = [&] { return Workspace::load(o.files, make_config(o)); };

  // workspace
  auto* validate = app.add_subcommand("validate", "load and validate workspace files");
  files(validate);
  validate->callback([&] {
    action = [&] {
      Workspace w = ws();
      std::size_t n = 0;
      for (const auto& s : Workspace::sections()) n += w.names(s).size();
      std::cout << "ok: " << n << " entries\n";
      return 0;
    };
  });
  auto* dump = app.add_subcommand("dump", "print the canonical form of the merged workspace");
  files(dump);
  dump->callback([&] { action = [&] { std::cout << ws().dump(); return 0; }; });

  std::string cat_name, presheaf_name, diagram_name;
  auto* dot = app.add_subcommand("dot", "render a category, a graph or a diagram");
  files(dot);
  dot->add_option("--category", cat_name);
  dot->add_option("--presheaf", presheaf_name);
  dot->add_option("--diagram", diagram_name);
  dot->callback([&] {
    action = [&] {
      Workspace w = ws();
      std::string text;
      if (!cat_name.empty()) text = to_dot(w.category(cat_name));
      else if (!presheaf_name.empty()) text = to_dot(w.presheaf(presheaf_name));
      else if (!diagram_name.empty())
        text = to_dot(w.is_coslice_diagram(diagram_name) ? cod_diagram(w.coslice_diagram(diagram_name))
                                                         : w.diagram(diagram_name));
      else fail(ErrorKind::UnsupportedValue, "nothing to render");
      if (o.dot.empty()) std::cout << text;
      else write_dot(text, o.dot);
      return 0;
    };
  });

  auto* suite = app.add_subcommand("suite", "run property suites (all of them unless --suite)");
  files(suite);
  suite->add_option("--suite", o.suite, "suite name");
  suite->callback([&] {
    action = [&] {
      Workspace w = ws();
      Config cfg = make_config(o);
      return emit(o.suite.empty() ? run_all_suites(w, cfg) : run_suite(o.suite, w, cfg), o);
    };
  });
  auto* list = app.add_subcommand("suites", "list suite names");
  list->callback([&] {
    action = [&] {
      for (const auto& s : suite_names()) std::cout << s << "\n";
      return 0;
    };
  });

  // coslice
  std::string name, base_name, functor_name;
  auto* coslice = app.add_subcommand("coslice", "objects under a base");
  coslice->require_subcommand(1);
  auto* cs_colim = coslice->add_subcommand("colim", "colimit of a diagram under a base");
  files(cs_colim);
  cs_colim->add_option("--diagram", name)->required();
  cs_colim->callback([&] {
    action = [&] {
      Workspace w = ws();
      Config cfg = make_config(o);
      CosliceDiagram d = w.coslice_diagram(name);
      CosliceColimit c = coslice_colimit(d, cfg);
      CodCorrection corr = cod_correction(d, {}, cfg);
      auto iso = find_coslice_iso(CosliceObject{corr.arrow}, c.object, cfg);
      maybe_dot(o, to_dot(cod_diagram(d)));
      return emit({make_cert("coslice colim", name, iso.has_value(),
                             {{"colimit", presheaf_json(c.object.cod())},
                              {"arrow", components_json(c.object.arrow)},
                              {"connected", is_connected(d.shape)}})},
                  o);
    };
  });
  auto* cs_star = coslice->add_subcommand("codstar", "B → B ⊔ C with its adjunction check");
  files(cs_star);
  cs_star->add_option("--base", base_name)->required();
  cs_star->add_option("--presheaf", presheaf_name)->required();
  cs_star->callback([&] {
    action = [&] {
      Workspace w = ws();
      Presheaf b = w.presheaf(base_name), c = w.presheaf(presheaf_name);
      CosliceObject s = cod_star(b, c);
      bool ok = check_cod_star_adjunction(b, c, s, make_config(o));
      return emit({make_cert("coslice codstar", base_name + " " + presheaf_name, ok,
                             {{"object", presheaf_json(s.cod())}})},
                  o);
    };
  });

  // generator
  auto* gen = app.add_subcommand("gen", "pushout presentations of objects under a base");
  gen->require_subcommand(1);
  auto* g_eval = gen->add_subcommand("eval", "evaluate a datum as a pushout");
  files(g_eval);
  g_eval->add_option("--datum", name)->required();
  g_eval->callback([&] {
    action = [&] {
      Workspace w = ws();
      GeneratorDatum d = w.datum(name);
      Evaluation e = evaluate_square(d);
      auto sq = certify_pushout(name, d.k, d.a, e.square.inj_cod, e.square.inj_base, make_config(o));
      maybe_dot(o, to_dot(std::vector<DotSquare>{square_of(name, e.square, d.k, d.a)}));
      return emit({make_cert("gen eval", name, sq.ok(),
                             {{"object", presheaf_json(e.square.object)},
                              {"arrow", components_json(e.square.inj_base)},
                              {"cocones", sq.cocones}})},
                  o);
    };
  });
  auto* g_anel = gen->add_subcommand("anel", "factor a map into a pushout through a finite stage");
  files(g_anel);
  g_anel->add_option("--instance", name)->required();
  g_anel->callback([&] {
    action = [&] {
      Workspace w = ws();
      Config cfg = make_config(o);
      auto inst = w.anel(name);
      if (inst.chain) {
        IndAnelResult r = anel_factorize(inst.ind, inst.target, cfg);
        return emit({make_cert("gen anel", name, true,
                               {{"base_stage", r.base_stage}, {"lift_stage", r.lift.stage},
                                {"mediator", components_json(r.mediator)}})},
                    o);
      }
      AnelResult r = anel_factorize(inst.datum.k, inst.datum.a, inst.map, cfg);
      const Factorization& f = r.factorization;
      auto sq = certify_pushout("inner", f.k0, f.a2, f.inner.inj_cod, f.inner.inj_base, cfg);
      maybe_dot(o, to_dot(std::vector<DotSquare>{square_of("inner", f.inner, f.k0, f.a2),
                                                 square_of("outer", f.outer, f.k0, f.a0)}));
      bool ok = sq.ok() && compose(f.comparison, r.mediator) == inst.map;
      return emit({make_cert("gen anel", name, ok,
                             {{"position", f.position}, {"stage", presheaf_json(f.a2.target())},
                              {"mediator", components_json(r.mediator)}})},
                  o);
    };
  });
  auto* g_tri = gen->add_subcommand("lift-triangle", "lift a map between evaluations to a triangle");
  files(g_tri);
  g_tri->add_option("--instance", name)->required();
  g_tri->callback([&] {
    action = [&] {
      Workspace w = ws();
      Config cfg = make_config(o);
      auto inst = w.triangle(name);
      TriangleLift t = lift_triangle(inst.n1, inst.n2, inst.n, cfg);
      Evaluation e1 = evaluate_square(inst.n1), e2 = evaluate_square(inst.n2);
      maybe_dot(o, to_dot(std::vector<DotSquare>{
                       {"first", t.m1, t.common.a, t.to_c1, e1.square.inj_base},
                       {"middle", t.m, t.to_c1, t.to_c2, inst.n},
                       {"second", t.m2, t.common.a, t.to_c2, e2.square.inj_base}}));
      json sq = json::array();
      for (const auto& s : t.squares) sq.push_back({{"name", s.name}, {"ok", s.ok()}});
      return emit({make_cert("gen lift-triangle", name, t.ok(),
                             {{"squares", sq}, {"m", components_json(t.m)},
                              {"anel_position", t.anel_position},
                              {"refined_position", t.refined_position}})},
                  o);
    };
  });
  auto* g_colim = gen->add_subcommand("colim", "colimit of a finite diagram of data");
  files(g_colim);
  g_colim->add_option("--diagram", name)->required();
  g_colim->callback([&] {
    action = [&] {
      Workspace w = ws();
      GeneratorColimit g = generator_colimit(w.generator_diagram(name), make_config(o));
      return emit({make_cert("gen colim", name, g.iso.is_iso(),
                             {{"k", presheaf_json(g.datum.k.source())},
                              {"k_prime", presheaf_json(g.datum.k.target())},
                              {"a", components_json(g.datum.a)}})},
                  o);
    };
  });
  auto* g_split = gen->add_subcommand("split", "present a retract of an evaluation");
  files(g_split);
  g_split->add_option("--instance", name)->required();
  g_split->callback([&] {
    action = [&] {
      Workspace w = ws();
      auto inst = w.retract(name);
      RetractSplitting s = split_retract(inst.datum, inst.retract, inst.s, inst.r, make_config(o));
      return emit({make_cert("gen split", name, s.iso.is_iso(),
                             {{"iso", components_json(s.iso)},
                              {"anel_position", s.anel_position},
                              {"refined_position", s.refined_position}})},
                  o);
    };
  });
  auto* g_dec = gen->add_subcommand("decompose", "canonical decomposition of a target");
  files(g_dec);
  g_dec->add_option("--target", name)->required();
  g_dec->callback([&] {
    action = [&] {
      Workspace w = ws();
      Config cfg = make_config(o);
      NatTrans f = w.arrow(w.entry("targets", name).at("arrow").get<std::string>());
      DecompositionCertificate c = canonical_decomposition(CosliceObject{f}, cfg.budget, cfg);
      json wj = {{"budget", c.budget}, {"fragment_size", c.fragment_size}, {"probes", c.probes},
                 {"filtered", c.filtered}};
      if (!c.ok) wj["failure"] = c.failure;
      return emit({make_cert("gen decompose", name, c.ok, wj)}, o);
    };
  });

  // kan
  bool restrict_only = false;
  auto* kan = app.add_subcommand("kan", "left Kan extension or restriction along a functor");
  files(kan);
  kan->add_option("--functor", functor_name)->required();
  kan->add_option("--presheaf", presheaf_name)->required();
  kan->add_flag("--restrict", restrict_only, "restrict instead of extending");
  kan->callback([&] {
    action = [&] {
      Workspace w = ws();
      LfpMorphism u = w.morphism(functor_name);
      Presheaf x = w.presheaf(presheaf_name);
      Presheaf y = restrict_only ? restrict(u, x) : lan(u, x);
      return emit({make_cert(restrict_only ? "kan restrict" : "kan lan",
                             functor_name + " " + presheaf_name, true,
                             {{"result", presheaf_json(y)}, {"sizes", sizes(y)}})},
                  o);
    };
  });

  // comma
  auto* comma = app.add_subcommand("comma", "the comma category of restriction over presheaves");
  comma->require_subcommand(1);
  auto comma_diag = [&](const char* cmd, bool limit) {
    auto* sub = comma->add_subcommand(cmd, limit ? "pointwise limit" : "filtered colimit");
    files(sub);
    sub->add_option("--diagram", name)->required();
    sub->callback([&, limit] {
      action = [&, limit] {
        Workspace w = ws();
        LfpMorphism u = w.morphism(w.comma_functor("comma_diagrams", name));
        CommaDiagram d = w.comma_diagram(name);
        CommaCocone c = limit ? comma_limit(u, d, make_config(o)) : comma_filtered_colimit(u, d, make_config(o));
        return emit({make_cert(limit ? "comma limit" : "comma colim", name, true,
                               {{"a", presheaf_json(c.apex.a)}, {"b", presheaf_json(c.apex.b)},
                                {"f", components_json(c.apex.f)}})},
                    o);
      };
    });
  };
  comma_diag("limit", true);
  comma_diag("colim", false);
  auto* c_eval = comma->add_subcommand("eval", "evaluate a comma datum");
  files(c_eval);
  c_eval->add_option("--datum", name)->required();
  c_eval->callback([&] {
    action = [&] {
      Workspace w = ws();
      LfpMorphism u = w.morphism(w.comma_functor("comma_data", name));
      CommaObject e = evaluate_comma_datum(u, w.comma_datum(name));
      return emit({make_cert("comma eval", name, true,
                             {{"a", presheaf_json(e.a)}, {"b", presheaf_json(e.b)},
                              {"f", components_json(e.f)}})},
                  o);
    };
  });
  auto* c_star = comma->add_subcommand("codstar", "(0, restrict(0) ⊔ B) with its adjunction check");
  files(c_star);
  c_star->add_option("--functor", functor_name)->required();
  c_star->add_option("--presheaf", presheaf_name)->required();
  c_star->callback([&] {
    action = [&] {
      Workspace w = ws();
      LfpMorphism u = w.morphism(functor_name);
      Presheaf b = w.presheaf(presheaf_name);
      CommaObject s = comma_cod_star(u, b);
      bool ok = check_comma_cod_star_adjunction(u, b, s, make_config(o));
      return emit({make_cert("comma codstar", functor_name + " " + presheaf_name, ok,
                             {{"b", presheaf_json(s.b)}, {"f", components_json(s.f)}})},
                  o);
    };
  });
  auto* c_one = comma->add_subcommand("onestar", "left adjoint of the identity-arrow functor");
  files(c_one);
  c_one->add_option("--object", name)->required();
  c_one->callback([&] {
    action = [&] {
      Workspace w = ws();
      LfpMorphism u = w.morphism(w.comma_functor("comma_objects", name));
      CommaObject f = w.comma_object(name);
      OneStar s = one_star(u, f);
      bool ok = check_one_star_adjunction(u, f, s.object(), make_config(o));
      return emit({make_cert("comma onestar", name, ok, {{"object", presheaf_json(s.object())}})}, o);
    };
  });
  auto* c_dec = comma->add_subcommand("decompose", "canonical decomposition of a comma object");
  files(c_dec);
  c_dec->add_option("--object", name)->required();
  c_dec->callback([&] {
    action = [&] {
      Workspace w = ws();
      Config cfg = make_config(o);
      LfpMorphism u = w.morphism(w.comma_functor("comma_objects", name));
      DecompositionCertificate c = comma_decomposition(u, w.comma_object(name), cfg.budget, cfg);
      json wj = {{"budget", c.budget}, {"fragment_size", c.fragment_size}, {"probes", c.probes},
                 {"filtered", c.filtered}};
      if (!c.ok) wj["failure"] = c.failure;
      return emit({make_cert("comma decompose", name, c.ok, wj)}, o);
    };
  });
  auto* c_fac = comma->add_subcommand("factor", "factor a 2-cell through the comma category");
  files(c_fac);
  c_fac->add_option("--cell", name)->required();
  c_fac->callback([&] {
    action = [&] {
      Workspace w = ws();
      LfpMorphism u = w.morphism(w.comma_functor("two_cells", name));
      TwoCellFactorization f = factor_two_cell(u, w.two_cell(name), make_config(o));
      json objs = json::array();
      for (const auto& x : f.objects)
        objs.push_back({{"a", presheaf_json(x.a)}, {"b", presheaf_json(x.b)}, {"f", components_json(x.f)}});
      return emit({make_cert("comma factor", name, f.ok(),
                             {{"objects", objs}, {"functors", f.functors}, {"satisfying", f.satisfying}})},
                  o);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return action ? action() : 0;
  } catch (const LfpError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
