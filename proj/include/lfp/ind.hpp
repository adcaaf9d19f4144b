#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lfp/colimit.hpp"

namespace lfp {

/// Formal filtered colimit of finite presheaves: either a finite filtered
/// diagram or a chain D_0 → D_1 → ... generated on demand up to a hard bound.
/// Stages are cached; the cache is filled idempotently under a lock.
class IndObject {
public:
  using StageFn = std::function<Presheaf(std::size_t)>;
  /// Transition D_n → D_{n+1}.
  using TransitionFn = std::function<NatTrans(std::size_t)>;

  IndObject() = default;

  /// Throws NotFiltered unless the shape is filtered.
  static IndObject from_diagram(Diagram d, std::string name = "diagram");
  static IndObject chain(std::string name, FinCategory index, StageFn stage,
                         TransitionFn transition, std::size_t bound);
  /// The chain X → X → X ... with identity transitions.
  static IndObject constant(const Presheaf& x, std::size_t bound);

  bool is_chain() const;
  const std::string& name() const;
  const FinCategory& index() const;
  /// Chain: stage bound. Diagram: number of shape objects.
  std::size_t bound() const;

  /// Chain stage n, or diagram vertex n. Throws StageBoundExceeded past the bound.
  Presheaf stage(std::size_t n) const;
  /// Chain transition n → m (n ≤ m).
  NatTrans transition(std::size_t n, std::size_t m) const;
  /// Diagram arrow along a shape morphism.
  NatTrans arrow(MorId f) const;

  /// Diagram case only.
  const Diagram& diagram() const;
  const Cocone& colimit() const;

private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// An element of the colimit, named by a representative at some stage.
struct IndElem {
  int stage = 0;
  Elem elem = 0;
  bool operator==(const IndElem&) const = default;
  auto operator<=>(const IndElem&) const = default;
};

/// An arrow K → colim q given elementwise by representatives.
struct ColimitArrow {
  Presheaf source;
  std::vector<std::vector<IndElem>> values;
};

/// The arrow K → colim q obtained by composing a stage map with the stage inclusion.
ColimitArrow push_to_colimit(const NatTrans& map, int stage);

/// Whether two representatives name the same element of the colimit at object a.
/// In the chain case this looks ahead up to the bound.
bool same_class(const IndObject& q, ObjId a, IndElem x, IndElem y);

struct Lift {
  int stage = 0;
  NatTrans map;
  /// Chain: the stage at which the lift agrees with the target. Diagram: stage.
  int agreement = 0;
};

/// Extra per-stage restriction on the values a lift may take.
using LiftConstraint = std::function<bool(int stage, ObjId a, Elem x, Elem y)>;

/// Chain: searches agreement stages m from the latest representative up to the
/// bound and lift stages n ≤ m; the first hit is returned. Diagram: the first
/// shape object through which the arrow factors.
Lift lift_through(const Presheaf& k, const IndObject& q, const ColimitArrow& target,
                  const Config& cfg = default_config(), const LiftConstraint& extra = {});

/// A stage receiving both lifts at which the pushed-forward maps coincide.
/// Returns l1 unchanged when l1 and l2 are equal.
Lift refine_lifts(const Lift& l1, const Lift& l2, const IndObject& q,
                  const Config& cfg = default_config());

/// Pushes a lift forward to a later chain stage.
Lift advance(const Lift& l, const IndObject& q, int stage);

/// Built-in chain families: growing-set(k), growing-path-graph(k), collapse-at(n).
std::vector<std::string> chain_family_names();
IndObject chain_family(const std::string& family, const std::map<std::string, long>& params,
                       const FinCategory& index, std::size_t bound);
/// Each family with default parameters over the given index (path graphs only over E ⇉ V).
std::vector<IndObject> default_families(const FinCategory& index, std::size_t bound);

} // namespace lfp
