#include "lfp/ind.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

namespace lfp {

struct IndObject::Impl {
  std::string name;
  FinCategory index;
  bool chain = false;
  std::size_t bound = 0;
  StageFn stage_fn;
  TransitionFn transition_fn;
  std::optional<Diagram> diagram;
  std::optional<Cocone> colimit;

  std::mutex mu;
  std::vector<std::optional<Presheaf>> stages;
  std::vector<std::optional<NatTrans>> transitions;
};

IndObject IndObject::from_diagram(Diagram d, std::string name) {
  if (!is_filtered(d.shape)) fail(ErrorKind::NotFiltered, name + ": shape is not filtered");
  IndObject q;
  q.impl_ = std::make_shared<Impl>();
  q.impl_->name = std::move(name);
  q.impl_->index = d.index;
  q.impl_->bound = d.shape.num_objects();
  q.impl_->colimit = finite_colimit(d);
  q.impl_->diagram = std::move(d);
  return q;
}

IndObject IndObject::chain(std::string name, FinCategory index, StageFn stage,
                           TransitionFn transition, std::size_t bound) {
  if (bound == 0) fail(ErrorKind::StageBoundExceeded, name + ": stage bound 0");
  IndObject q;
  q.impl_ = std::make_shared<Impl>();
  q.impl_->name = std::move(name);
  q.impl_->index = std::move(index);
  q.impl_->chain = true;
  q.impl_->bound = bound;
  q.impl_->stage_fn = std::move(stage);
  q.impl_->transition_fn = std::move(transition);
  q.impl_->stages.resize(bound);
  q.impl_->transitions.resize(bound);
  return q;
}

IndObject IndObject::constant(const Presheaf& x, std::size_t bound) {
  return chain(
      "constant", x.index(), [x](std::size_t) { return x; },
      [x](std::size_t) { return NatTrans::identity(x); }, bound);
}

bool IndObject::is_chain() const { return impl_->chain; }
const std::string& IndObject::name() const { return impl_->name; }
const FinCategory& IndObject::index() const { return impl_->index; }
std::size_t IndObject::bound() const { return impl_->bound; }

Presheaf IndObject::stage(std::size_t n) const {
  if (n >= impl_->bound)
    fail(ErrorKind::StageBoundExceeded,
         impl_->name + ": stage " + std::to_string(n) + " is past the bound " +
             std::to_string(impl_->bound));
  if (!impl_->chain) return impl_->diagram->objects[n];
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (impl_->stages[n]) return *impl_->stages[n];
  }
  // Computed outside the lock: generators may recurse into other stages.
  Presheaf s = impl_->stage_fn(n);
  std::lock_guard<std::mutex> lock(impl_->mu);
  if (!impl_->stages[n]) impl_->stages[n] = s;
  return *impl_->stages[n];
}

NatTrans IndObject::transition(std::size_t n, std::size_t m) const {
  if (!impl_->chain) fail(ErrorKind::Internal, "transition on a diagram ind-object");
  if (m < n) fail(ErrorKind::Internal, "transition backwards");
  Presheaf start = stage(n);
  NatTrans acc = NatTrans::identity(start);
  for (std::size_t i = n; i < m; ++i) {
    if (i + 1 >= impl_->bound)
      fail(ErrorKind::StageBoundExceeded,
           impl_->name + ": transition past the bound " + std::to_string(impl_->bound));
    std::optional<NatTrans> t;
    {
      std::lock_guard<std::mutex> lock(impl_->mu);
      t = impl_->transitions[i];
    }
    if (!t) {
      NatTrans fresh = impl_->transition_fn(i);
      if (!(fresh.source() == stage(i)) || !(fresh.target() == stage(i + 1)))
        fail(ErrorKind::Internal,
             impl_->name + ": transition " + std::to_string(i) + " has the wrong endpoints");
      std::lock_guard<std::mutex> lock(impl_->mu);
      if (!impl_->transitions[i]) impl_->transitions[i] = fresh;
      t = impl_->transitions[i];
    }
    acc = compose(*t, acc);
  }
  return acc;
}

NatTrans IndObject::arrow(MorId f) const { return diagram().arrows.at(f); }

const Diagram& IndObject::diagram() const {
  if (impl_->chain) fail(ErrorKind::Internal, "diagram of a chain ind-object");
  return *impl_->diagram;
}

const Cocone& IndObject::colimit() const {
  if (impl_->chain) fail(ErrorKind::Internal, "colimit of a chain ind-object");
  return *impl_->colimit;
}

// ---------------------------------------------------------------------------

ColimitArrow push_to_colimit(const NatTrans& map, int stage) {
  ColimitArrow out{map.source(), {}};
  const auto& c = map.source().index();
  out.values.resize(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a)
    for (Elem y : map.component(static_cast<ObjId>(a))) out.values[a].push_back({stage, y});
  return out;
}

bool same_class(const IndObject& q, ObjId a, IndElem x, IndElem y) {
  if (!q.is_chain()) {
    const auto& legs = q.colimit().legs;
    return legs[x.stage](a, x.elem) == legs[y.stage](a, y.elem);
  }
  auto m = static_cast<std::size_t>(std::max(x.stage, y.stage));
  for (; m < q.bound(); ++m) {
    Elem u = q.transition(x.stage, m)(a, x.elem);
    Elem v = q.transition(y.stage, m)(a, y.elem);
    if (u == v) return true;
  }
  return false;
}

namespace {

int max_stage(const ColimitArrow& t) {
  int s = 0;
  for (const auto& row : t.values)
    for (const auto& v : row) s = std::max(s, v.stage);
  return s;
}

} // namespace

Lift lift_through(const Presheaf& k, const IndObject& q, const ColimitArrow& target,
                  const Config& cfg, const LiftConstraint& extra) {
  if (!(k.index() == q.index())) fail(ErrorKind::IndexMismatch, "lift across indices");
  if (!q.is_chain()) {
    const auto& col = q.colimit();
    std::vector<std::vector<Elem>> cls(target.values.size());
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (const auto& v : target.values[a])
        cls[a].push_back(col.legs[v.stage](static_cast<ObjId>(a), v.elem));
    for (std::size_t j = 0; j < q.bound(); ++j) {
      check_cancel(cfg);
      const auto& leg = col.legs[j];
      HomSearch s;
      s.allowed = [&](ObjId a, Elem x, Elem y) {
        if (leg(a, y) != cls[a][x]) return false;
        return !extra || extra(static_cast<int>(j), a, x, y);
      };
      if (auto b = first_hom(k, q.stage(j), cfg, s))
        return {static_cast<int>(j), *b, static_cast<int>(j)};
    }
    fail(ErrorKind::StageBoundExceeded,
         q.name() + ": the arrow factors through no vertex of the diagram");
  }
  const int start = max_stage(target);
  for (auto m = static_cast<std::size_t>(start); m < q.bound(); ++m) {
    check_cancel(cfg);
    std::vector<std::vector<Elem>> pushed(target.values.size());
    for (std::size_t a = 0; a < pushed.size(); ++a)
      for (const auto& v : target.values[a])
        pushed[a].push_back(
            q.transition(static_cast<std::size_t>(v.stage), m)(static_cast<ObjId>(a), v.elem));
    for (std::size_t n = 0; n <= m; ++n) {
      NatTrans t = q.transition(n, m);
      HomSearch s;
      s.allowed = [&](ObjId a, Elem x, Elem y) {
        if (t(a, y) != pushed[a][x]) return false;
        return !extra || extra(static_cast<int>(n), a, x, y);
      };
      if (auto b = first_hom(k, q.stage(n), cfg, s))
        return {static_cast<int>(n), *b, static_cast<int>(m)};
    }
  }
  fail(ErrorKind::StageBoundExceeded,
       q.name() + ": no lift below the stage bound " + std::to_string(q.bound()));
}

Lift advance(const Lift& l, const IndObject& q, int stage) {
  if (stage < l.stage) fail(ErrorKind::Internal, "advancing a lift backwards");
  NatTrans t = q.transition(static_cast<std::size_t>(l.stage), static_cast<std::size_t>(stage));
  return {stage, compose(t, l.map), std::max(stage, l.agreement)};
}

Lift refine_lifts(const Lift& l1, const Lift& l2, const IndObject& q, const Config& cfg) {
  if (l1.stage == l2.stage && l1.map == l2.map) return l1;
  if (q.is_chain()) {
    for (auto m = static_cast<std::size_t>(std::max(l1.stage, l2.stage)); m < q.bound(); ++m) {
      check_cancel(cfg);
      NatTrans p1 = compose(q.transition(static_cast<std::size_t>(l1.stage), m), l1.map);
      NatTrans p2 = compose(q.transition(static_cast<std::size_t>(l2.stage), m), l2.map);
      if (p1 == p2) return {static_cast<int>(m), p1, static_cast<int>(m)};
    }
    fail(ErrorKind::StageBoundExceeded,
         q.name() + ": lifts are not equalized below the stage bound " +
             std::to_string(q.bound()));
  }
  const auto& shape = q.diagram().shape;
  struct Candidate {
    ObjId j;
    NatTrans map;
  };
  std::vector<Candidate> found;
  for (std::size_t j = 0; j < shape.num_objects(); ++j) {
    auto jj = static_cast<ObjId>(j);
    std::optional<NatTrans> hit;
    for (MorId d1 : shape.hom(l1.stage, jj)) {
      NatTrans p1 = compose(q.arrow(d1), l1.map);
      for (MorId d2 : shape.hom(l2.stage, jj))
        if (p1 == compose(q.arrow(d2), l2.map)) {
          hit = p1;
          break;
        }
      if (hit) break;
    }
    if (hit) found.push_back({jj, *hit});
  }
  if (found.empty())
    fail(ErrorKind::NoRefinement, q.name() + ": no vertex equalizes the two lifts");
  // Prefer a candidate mapping into every other candidate: the join in a poset.
  for (const auto& c : found) {
    bool below_all = true;
    for (const auto& o : found)
      if (shape.hom(c.j, o.j).empty()) below_all = false;
    if (below_all) return {c.j, c.map, c.j};
  }
  return {found.front().j, found.front().map, found.front().j};
}

// ---------------------------------------------------------------------------

namespace {

Presheaf copies_of_terminal(const FinCategory& c, std::size_t count) {
  std::vector<std::vector<std::string>> names(c.num_objects());
  for (auto& row : names)
    for (std::size_t i = 0; i < count; ++i) row.push_back("s" + std::to_string(i));
  std::vector<std::vector<Elem>> actions(c.num_morphisms());
  for (auto& act : actions)
    for (std::size_t i = 0; i < count; ++i) act.push_back(static_cast<Elem>(i));
  return Presheaf::make(c, std::move(names), std::move(actions), false);
}

NatTrans map_copies(const Presheaf& from, const Presheaf& to,
                    const std::function<Elem(Elem)>& f) {
  std::vector<std::vector<Elem>> comps(from.index().num_objects());
  for (std::size_t a = 0; a < comps.size(); ++a)
    for (std::size_t i = 0; i < from.size(static_cast<ObjId>(a)); ++i)
      comps[a].push_back(f(static_cast<Elem>(i)));
  return NatTrans(from, to, std::move(comps), false);
}

Presheaf path_graph(const FinCategory& g, std::size_t edges) {
  ObjId e = g.object("E");
  ObjId v = g.object("V");
  std::vector<std::vector<std::string>> names(2);
  for (std::size_t i = 0; i < edges; ++i) names[e].push_back("e" + std::to_string(i));
  for (std::size_t i = 0; i <= edges; ++i) names[v].push_back("v" + std::to_string(i));
  std::vector<std::vector<Elem>> actions(g.num_morphisms());
  for (std::size_t i = 0; i < edges; ++i) {
    actions[g.morphism("src")].push_back(static_cast<Elem>(i));
    actions[g.morphism("tgt")].push_back(static_cast<Elem>(i + 1));
  }
  return Presheaf::make(g, std::move(names), std::move(actions), false);
}

long param(const std::map<std::string, long>& params, const std::string& key, long fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

bool is_graph_index(const FinCategory& c) {
  return c.num_objects() == 2 && c.find_object("E") && c.find_object("V") &&
         c.find_morphism("src") && c.find_morphism("tgt") &&
         c.dom(*c.find_morphism("src")) == *c.find_object("E") &&
         c.cod(*c.find_morphism("src")) == *c.find_object("V") &&
         c.dom(*c.find_morphism("tgt")) == *c.find_object("E") &&
         c.cod(*c.find_morphism("tgt")) == *c.find_object("V") && c.num_morphisms() == 4;
}

} // namespace

std::vector<std::string> chain_family_names() {
  return {"growing-set", "growing-path-graph", "collapse-at"};
}

IndObject chain_family(const std::string& family, const std::map<std::string, long>& params,
                       const FinCategory& index, std::size_t bound) {
  if (family == "growing-set") {
    long k = param(params, "k", 1);
    if (k < 1) fail(ErrorKind::ValidationError, "growing-set needs k >= 1");
    auto stage = [index, k](std::size_t n) {
      return copies_of_terminal(index, static_cast<std::size_t>(k) * (n + 1));
    };
    auto trans = [stage](std::size_t n) {
      return map_copies(stage(n), stage(n + 1), [](Elem i) { return i; });
    };
    return IndObject::chain("growing-set(" + std::to_string(k) + ")", index, stage, trans, bound);
  }
  if (family == "growing-path-graph") {
    long k = param(params, "k", 1);
    if (k < 1) fail(ErrorKind::ValidationError, "growing-path-graph needs k >= 1");
    if (!is_graph_index(index))
      fail(ErrorKind::UnsupportedValue, "growing-path-graph lives over the graph index E ⇉ V");
    auto stage = [index, k](std::size_t n) {
      return path_graph(index, static_cast<std::size_t>(k) * (n + 1));
    };
    auto trans = [stage, index](std::size_t n) {
      Presheaf from = stage(n);
      Presheaf to = stage(n + 1);
      std::vector<std::vector<Elem>> comps(2);
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t i = 0; i < from.size(static_cast<ObjId>(a)); ++i)
          comps[a].push_back(static_cast<Elem>(i));
      return NatTrans(from, to, std::move(comps), false);
    };
    return IndObject::chain("growing-path-graph(" + std::to_string(k) + ")", index, stage, trans,
                            bound);
  }
  if (family == "collapse-at") {
    long at = param(params, "n", 2);
    if (at < 1) fail(ErrorKind::ValidationError, "collapse-at needs n >= 1");
    auto stage = [index, at](std::size_t n) {
      return copies_of_terminal(index, static_cast<long>(n) < at ? 2 : 1);
    };
    auto trans = [stage, at](std::size_t n) {
      bool merged = static_cast<long>(n + 1) >= at;
      return map_copies(stage(n), stage(n + 1), [merged](Elem i) { return merged ? 0 : i; });
    };
    return IndObject::chain("collapse-at(" + std::to_string(at) + ")", index, stage, trans, bound);
  }
  fail(ErrorKind::UnknownId, "chain family " + family);
}

std::vector<IndObject> default_families(const FinCategory& index, std::size_t bound) {
  std::vector<IndObject> out;
  out.push_back(chain_family("growing-set", {{"k", 1}}, index, bound));
  if (is_graph_index(index)) out.push_back(chain_family("growing-path-graph", {{"k", 1}}, index, bound));
  out.push_back(chain_family("collapse-at", {{"n", 2}}, index, bound));
  return out;
}

} // namespace lfp
