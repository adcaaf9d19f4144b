#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lfp/ind.hpp"

namespace lfp {

/// An arrow out of the fixed base B.
struct CosliceObject {
  NatTrans arrow;
  const Presheaf& base() const { return arrow.source(); }
  const Presheaf& cod() const { return arrow.target(); }
};

/// g : cod(source) → cod(target) with g ∘ source.arrow = target.arrow.
struct CosliceMap {
  CosliceObject source;
  CosliceObject target;
  NatTrans underlying;
};

/// Throws ValidationError when the triangle over B does not commute.
CosliceMap make_coslice_map(const CosliceObject& source, const CosliceObject& target,
                            const NatTrans& g);
CosliceMap identity_map(const CosliceObject& x);
CosliceMap compose(const CosliceMap& g, const CosliceMap& f);

/// Every coslice map f1 → f2, in the order of the underlying hom enumeration.
std::vector<NatTrans> enumerate_coslice_homs(const CosliceObject& f1, const CosliceObject& f2,
                                             const Config& cfg = default_config());
std::size_t count_coslice_homs(const CosliceObject& f1, const CosliceObject& f2,
                               const Config& cfg = default_config());
std::optional<NatTrans> find_coslice_iso(const CosliceObject& f1, const CosliceObject& f2,
                                         const Config& cfg = default_config());

/// A diagram of coslice objects: vertices and arrows between codomains under B.
struct CosliceDiagram {
  FinCategory shape;
  Presheaf base;
  std::vector<CosliceObject> objects;
  std::vector<NatTrans> arrows;
};

CosliceDiagram make_coslice_diagram(const FinCategory& shape, const Presheaf& base,
                                    std::vector<CosliceObject> objects,
                                    const std::map<MorId, NatTrans>& arrows);
/// The underlying diagram of codomains.
Diagram cod_diagram(const CosliceDiagram& d);

/// The shape with a new initial vertex i0 and one arrow from it to every vertex.
struct ExtendedShape {
  FinCategory shape;
  ObjId i0;
  std::vector<MorId> from_i0; ///< indexed by original objects
};
ExtendedShape extend_shape(const FinCategory& shape);

struct CosliceColimit {
  CosliceObject object;
  /// Legs from each vertex's codomain into the colimit codomain.
  std::vector<NatTrans> legs;
};

/// Colimit of the extended diagram of codomains with B at i0; the result is its
/// leg at i0. Checks that every composite leg_i ∘ f_i agrees with it and, for
/// connected shapes, that cod preserves the colimit.
CosliceColimit coslice_colimit(const CosliceDiagram& d, const Config& cfg = default_config());

/// Colimit of codomains followed by the wide coequalizer of the composites
/// leg_i ∘ f_i. `order` permutes the arrows fed to the iterated coequalizer.
struct CodCorrection {
  Presheaf object;
  NatTrans arrow; ///< B → object
};
CodCorrection cod_correction(const CosliceDiagram& d, const std::vector<std::size_t>& order = {},
                             const Config& cfg = default_config());

/// The coproduct inclusion B → B ⊔ C.
CosliceObject cod_star(const Presheaf& base, const Presheaf& c);
/// hom(cod_star(C), f) ≅ hom(C, cod f) by restriction along the second injection.
bool check_cod_star_adjunction(const Presheaf& base, const Presheaf& c, const CosliceObject& f,
                               const Config& cfg = default_config());

/// Functoriality along f : B1 → B2.
struct Pushforward {
  NatTrans f;
  /// f_*(h) = pushout of h along f, as an object under B2.
  CosliceObject push(const CosliceObject& h) const;
  /// f_* on maps, through the pushout universal property.
  NatTrans push(const CosliceMap& g) const;
  /// f^!(g) = g ∘ f.
  CosliceObject pull(const CosliceObject& g) const;
};
Pushforward pushforward_functor(const NatTrans& f);
/// hom_{B2}(f_* h, g) ≅ hom_{B1}(h, f^! g) by precomposition with the pushout injection.
bool check_pushforward_adjunction(const Pushforward& p, const CosliceObject& h,
                                  const CosliceObject& g, const Config& cfg = default_config());

/// A chain of objects under a finite base: C_n with arrows B → C_n commuting
/// with the transitions.
struct CosliceChain {
  Presheaf base;
  IndObject chain;
  std::function<NatTrans(std::size_t)> arrow;
};

/// C_n = B ⊔ X_n with the coproduct inclusion.
CosliceChain coslice_chain(const Presheaf& base, const IndObject& x);
/// The constant chain at f.
CosliceChain constant_coslice_chain(const CosliceObject& f, std::size_t bound);
/// Lift constraint forcing the lifted map to commute with the arrows out of B.
/// `source` is the arrow B → K of the object being lifted.
LiftConstraint under_base(const CosliceChain& c, const NatTrans& source);

} // namespace lfp
