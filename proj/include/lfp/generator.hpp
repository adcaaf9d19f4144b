#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfp/coslice.hpp"

namespace lfp {

/// Pushout presentation of an arrow out of a finite base: k : K → K′ pushed along a : K → B.
struct GeneratorDatum {
  NatTrans k;
  NatTrans a;
  const Presheaf& base() const { return a.target(); }
};

/// The same over a chain base, with a given at some stage.
struct IndGeneratorDatum {
  NatTrans k;
  IndObject base;
  int stage = 0;
  NatTrans a; ///< K → base.stage(stage)
};

/// The pushout square presenting a datum, with B → C as the coslice object.
struct Evaluation {
  Pushout square;
  CosliceObject object() const { return {square.inj_base}; }
};
Evaluation evaluate_square(const GeneratorDatum& d);
CosliceObject evaluate(const GeneratorDatum& d);

/// Stagewise pushouts P_m = pushout(k, T a) at base stage `offset + m`, with the
/// canonical arrows from the base stages and from K′.
struct IndEvaluation {
  IndObject pushouts;
  int offset = 0;
  std::function<NatTrans(std::size_t)> from_base;
  std::function<NatTrans(std::size_t)> from_cod;
};
IndEvaluation evaluate(const IndGeneratorDatum& d);

/// The filtered presentation of a finite base used by the factorization
/// searches: sub-presheaves containing `required`, ordered by size, then
/// lexicographically. The last entry is the base itself.
std::vector<std::vector<std::vector<char>>> presentation_stages(
    const Presheaf& base, const std::vector<std::vector<char>>& required);

/// A factorization a0 = a1 ∘ a2 through a finite stage K1 together with the
/// pushout of k0 along a2 and its comparison into the outer pushout.
struct Factorization {
  NatTrans k0;
  NatTrans a0;
  std::vector<std::vector<char>> stage_mask; ///< K1 as a sub-presheaf of B
  NatTrans a2;                               ///< K0 → K1
  NatTrans a1;                               ///< K1 → B
  Pushout inner;                             ///< pushout of k0 along a2
  Pushout outer;                             ///< pushout of k0 along a0
  NatTrans comparison;                       ///< inner.object → outer.object
  int position = 0;                          ///< index in presentation_stages
};

struct AnelResult {
  Factorization factorization;
  NatTrans mediator; ///< K → inner.object with comparison ∘ mediator = a
};

/// Factors a : K → pushout(k0, a0) through the first intermediate pushout in
/// presentation order.
AnelResult anel_factorize(const NatTrans& k0, const NatTrans& a0, const NatTrans& a,
                          const Config& cfg = default_config());

/// Chain base: a is given by representatives in the stagewise pushouts.
struct IndAnelResult {
  int base_stage = 0; ///< K1 = base.stage(base_stage)
  NatTrans a2;        ///< K0 → K1
  Pushout inner;
  NatTrans mediator;
  Lift lift;
};
IndAnelResult anel_factorize(const IndGeneratorDatum& d, const ColimitArrow& a,
                             const Config& cfg = default_config());

/// Moves a factorization to a later stage of the presentation.
Factorization refactor(const Factorization& f, std::size_t position);

/// A further stage at which m and m′ (both into f.inner.object, equal after
/// the comparison) agree. Returns f itself when m = m′.
struct RefinedFactorization {
  Factorization factorization;
  NatTrans step; ///< old inner object → new inner object
};
RefinedFactorization refine_parallel_mediators(const Factorization& f, const NatTrans& m,
                                               const NatTrans& mp,
                                               const Config& cfg = default_config());
/// Chain base version: refines two lifts in the stagewise pushouts.
Lift refine_parallel_mediators(const IndGeneratorDatum& d, const Lift& m, const Lift& mp,
                               const Config& cfg = default_config());

struct SquareCertificate {
  std::string name;
  bool commutes = false;
  bool pushout = false; ///< comparison from the constructed pushout is an iso
  bool universal = false; ///< mediator oracle against the competitor family
  std::size_t cocones = 0;
  bool ok() const { return commutes && pushout && universal; }
};

/// Certifies that the square K → K′ → D ← Z ← K is a pushout.
SquareCertificate certify_pushout(const std::string& name, const NatTrans& k, const NatTrans& a,
                                  const NatTrans& to_d_from_cod, const NatTrans& to_d_from_base,
                                  const Config& cfg = default_config(),
                                  std::size_t competitor_total = 2);

struct TriangleLift {
  GeneratorDatum common; ///< (m1 : K → K̃1, a : K → B)
  NatTrans m1;           ///< K → K̃1
  NatTrans m2;           ///< K → K̃2
  NatTrans m;            ///< K̃1 → K̃2
  NatTrans to_c1;        ///< K̃1 → C1
  NatTrans to_c2;        ///< K̃2 → C2
  std::vector<SquareCertificate> squares;
  std::size_t anel_position = 0;
  std::size_t refined_position = 0;
  bool ok() const;
};

/// Lifts a coslice map n : evaluate(n1) → evaluate(n2) to a triangle of finite
/// presheaves whose three squares are pushouts.
TriangleLift lift_triangle(const GeneratorDatum& n1, const GeneratorDatum& n2, const NatTrans& n,
                           const Config& cfg = default_config());

/// A finite diagram in the generator: data per shape object and coslice maps
/// between their evaluations per non-identity morphism.
struct GeneratorDiagram {
  FinCategory shape;
  Presheaf base;
  std::vector<GeneratorDatum> data;
  std::map<MorId, NatTrans> arrows;
};

/// Coslice diagram of evaluations.
CosliceDiagram evaluate(const GeneratorDiagram& d);

struct LiftedDiagram {
  NatTrans a;                    ///< K → B
  std::vector<CosliceObject> objects; ///< K → K̄_i
  std::map<MorId, NatTrans> arrows;   ///< K̄_i → K̄_j under K
  std::vector<NatTrans> comparisons;  ///< a_* K̄_i → C_i, isomorphisms under B
  std::size_t position = 0;
};

/// Joint search over the presentation of B for a stage K through which every
/// datum and every arrow lifts.
LiftedDiagram lift_finite_diagram(const GeneratorDiagram& d, const Config& cfg = default_config());

struct GeneratorColimit {
  GeneratorDatum datum;
  LiftedDiagram lifted;
  CosliceColimit direct;
  NatTrans iso; ///< evaluate(datum) ≅ direct colimit, under B
};
GeneratorColimit generator_colimit(const GeneratorDiagram& d, const Config& cfg = default_config());

struct RetractSplitting {
  GeneratorDatum datum;
  NatTrans iso; ///< evaluate(datum) ≅ the retract, under B
  std::size_t anel_position = 0;
  std::size_t refined_position = 0;
};

/// s : R → C and r : C → R under B with r ∘ s = 1; C = evaluate(d).
RetractSplitting split_retract(const GeneratorDatum& d, const CosliceObject& retract,
                               const NatTrans& s, const NatTrans& r,
                               const Config& cfg = default_config());

/// The evaluated arrow as a plain map, and a finite arrow as its own datum.
NatTrans fp_coslice_reduction(const GeneratorDatum& d);
GeneratorDatum self_presentation(const CosliceObject& f);

/// Fixed probe family and filtered-fragment decomposition of an object under B.
struct DecompositionCertificate {
  bool ok = false;
  std::size_t budget = 0;
  std::size_t fragment_size = 0;
  std::size_t probes = 0;
  bool filtered = false;
  std::string failure;
};
DecompositionCertificate canonical_decomposition(const CosliceObject& f, std::size_t budget,
                                                 const Config& cfg = default_config());

/// Generic core of the fp-hom colimit test: keyed homs per vertex of a filtered
/// shape, postcomposition along generating arrows, and the comparison with homs
/// into the apex.
using HomKey = std::vector<std::vector<Elem>>;
struct HomColimitInput {
  std::vector<std::vector<HomKey>> homs;
  /// Generating arrows of the shape as (from, to) vertex pairs.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::function<HomKey(std::size_t edge, const HomKey&)> along;
  std::function<HomKey(std::size_t, const HomKey&)> to_apex;
  std::vector<HomKey> apex_homs;
};
struct HomColimitReport {
  bool ok = false;
  std::size_t classes = 0;
  std::string failure;
};
HomColimitReport compare_hom_colimit(const HomColimitInput& in);

/// hom(P, apex) ≅ colim hom(P, D_i) for every probe P. Probes default to the
/// representables and every presheaf of total size ≤ 2. Also compares the apex
/// with the direct colimit.
bool verify_colimit_by_fp_homs(const Cocone& c, const std::vector<Presheaf>& probes = {},
                               const Config& cfg = default_config(),
                               std::string* failure = nullptr);
/// The same for a cocone of objects under B.
bool verify_coslice_colimit_by_fp_homs(const CosliceDiagram& d, const CosliceObject& apex,
                                       const std::vector<NatTrans>& legs,
                                       const std::vector<CosliceObject>& probes,
                                       const Config& cfg = default_config(),
                                       std::string* failure = nullptr);

/// Lift-and-refine of arrows evaluate(d) → colim of a chain under B.
struct FpCertificate {
  bool ok = false;
  std::string chain;
  std::size_t arrows = 0;
  std::vector<int> lift_stages;
  std::vector<int> agreement_stages;
  std::vector<int> refinement_stages;
  std::string failure;
};
FpCertificate fp_certificate(const GeneratorDatum& d, const CosliceChain& chain,
                             int test_stage = 2, const Config& cfg = default_config());

} // namespace lfp
