#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfp/presheaf.hpp"

namespace lfp {

/// A functor from a finite shape into presheaves over a common index.
/// `arrows` has one entry per shape morphism, identities included.
struct Diagram {
  FinCategory shape;
  FinCategory index;
  std::vector<Presheaf> objects;
  std::vector<NatTrans> arrows;
};

/// Identities are filled in; throws BadFunctor when composites are not preserved.
Diagram make_diagram(const FinCategory& shape, const FinCategory& index,
                     std::vector<Presheaf> objects, const std::map<MorId, NatTrans>& arrows);
/// Two-object discrete diagram.
Diagram pair_diagram(const Presheaf& x, const Presheaf& y);
/// E ⇉ V diagram sending src, tgt to f, g.
Diagram parallel_diagram(const NatTrans& f, const NatTrans& g);
/// l ← c → r diagram sending p, q to k, a.
Diagram span_diagram(const NatTrans& k, const NatTrans& a);

struct Cocone {
  Diagram diagram;
  Presheaf apex;
  std::vector<NatTrans> legs;
};

bool is_cocone(const Diagram& d, const std::vector<NatTrans>& legs);

struct Coproduct {
  Presheaf object;
  NatTrans inj1;
  NatTrans inj2;
};

/// Pointwise disjoint union; elements are renamed `1:x` and `2:y`.
Coproduct coproduct(const Presheaf& x, const Presheaf& y);

struct Quotient {
  Presheaf object;
  NatTrans q;
};

/// Quotient of y by the smallest congruence containing the given pairs.
/// Each class is named after its least member.
Quotient quotient_by_pairs(const Presheaf& y,
                           const std::vector<std::pair<ElemRef, ElemRef>>& pairs);
Quotient coequalizer(const NatTrans& f, const NatTrans& g);
/// Iterated binary coequalizers of every arrow against the first one.
Quotient wide_coequalizer(const std::vector<NatTrans>& arrows);

struct Pushout {
  Presheaf object;
  NatTrans inj_cod; ///< K′ → P
  NatTrans inj_base; ///< Z → P
};

/// Pushout of k : K → K′ along a : K → Z.
Pushout pushout(const NatTrans& k, const NatTrans& a);

/// Coproduct of the vertices followed by the quotient identifying along arrows.
Cocone finite_colimit(const Diagram& d);

struct Cone {
  Diagram diagram;
  Presheaf apex;
  std::vector<NatTrans> legs;
};

/// Compatible families, pointwise. Elements are named `(x,y,...)`.
Cone finite_limit(const Diagram& d);

/// The map u : p → w with u ∘ ms[i] = hs[i], for a jointly surjective family ms.
/// nullopt when no such map exists.
std::optional<NatTrans> descend(const Presheaf& p, const std::vector<NatTrans>& ms,
                                const std::vector<NatTrans>& hs, const Presheaf& w);
/// Unique mediator from a colimit to another cocone over the same diagram.
std::optional<NatTrans> mediate(const Cocone& colimit, const std::vector<NatTrans>& legs,
                                const Presheaf& w);
NatTrans copair(const Coproduct& c, const NatTrans& u, const NatTrans& v);
NatTrans pushout_mediator(const Pushout& p, const NatTrans& u, const NatTrans& v);
NatTrans coequalizer_mediator(const Quotient& q, const NatTrans& h);
/// The map into a limit induced by a cone.
std::optional<NatTrans> limit_mediator(const Cone& limit, const Presheaf& vertex,
                                       const std::vector<NatTrans>& legs);

/// Every cocone over d with apex t.
void for_each_cocone(const Diagram& d, const Presheaf& t,
                     const std::function<bool(const std::vector<NatTrans>&)>& visit,
                     const Config& cfg = default_config());

/// Homs u : apex → t with u ∘ legs[i] = given[i]; used to count mediators.
std::size_t count_mediators(const Presheaf& apex, const std::vector<NatTrans>& legs,
                            const Presheaf& t, const std::vector<NatTrans>& given,
                            const Config& cfg = default_config());

struct UniversalityReport {
  bool ok = true;
  std::size_t cocones = 0;
  std::string failure;
};

/// Existence and uniqueness of mediators against every cocone into every target.
UniversalityReport check_colimit_universal(const Diagram& d, const Presheaf& apex,
                                           const std::vector<NatTrans>& legs,
                                           const std::vector<Presheaf>& targets,
                                           const Config& cfg = default_config());
/// Same, for a pushout square K′ ← K → Z with apex p.
UniversalityReport check_pushout_universal(const NatTrans& k, const NatTrans& a,
                                           const NatTrans& inj_cod, const NatTrans& inj_base,
                                           const std::vector<Presheaf>& targets,
                                           const Config& cfg = default_config());

/// Presheaves every universal-property check is run against: every presheaf with
/// total size ≤ small_total plus the supplied extras.
std::vector<Presheaf> competitor_family(const FinCategory& index, std::size_t small_total,
                                        const std::vector<Presheaf>& extras);

} // namespace lfp
