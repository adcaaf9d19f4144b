#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfp/comma.hpp"

namespace lfp {

using json = nlohmann::json;

/// JSON forms of the core values.
json to_json(const FinCategory& c);
json to_json(const FinFunctor& f, const std::string& source, const std::string& target);
json to_json(const Presheaf& x, const std::string& index);
json to_json(const NatTrans& t, const std::string& source, const std::string& target);
/// Components only, as {obj: {elem: elem}}.
json components_json(const NatTrans& t);
NatTrans components_from_json(const Presheaf& source, const Presheaf& target, const json& j);

/// Named values loaded from JSON files. Every section is a map from names to
/// entries; cross references are by name. Everything is validated on load.
class Workspace {
public:
  /// Files are merged in order; a name defined twice is a ParseError.
  static Workspace load(const std::vector<std::string>& paths, const Config& cfg = default_config());
  static Workspace parse(const std::string& text, const std::string& origin = "<string>",
                         const Config& cfg = default_config());

  /// Canonical form: sorted keys, two-space indentation, trailing newline.
  json to_json() const;
  std::string dump() const;
  bool empty() const;

  const Config& config() const { return cfg_; }
  void set_config(const Config& cfg) { cfg_ = cfg; }

  std::vector<std::string> names(const std::string& section) const;
  const json& entry(const std::string& section, const std::string& name) const;

  FinCategory category(const std::string& name) const;
  FinFunctor functor(const std::string& name) const;
  Presheaf presheaf(const std::string& name) const;
  NatTrans arrow(const std::string& name) const;
  /// Chains are materialized with the configured stage bound.
  IndObject chain(const std::string& name) const;
  Diagram diagram(const std::string& name) const;
  bool is_coslice_diagram(const std::string& name) const;
  CosliceDiagram coslice_diagram(const std::string& name) const;
  GeneratorDatum datum(const std::string& name) const;
  GeneratorDiagram generator_diagram(const std::string& name) const;
  LfpMorphism morphism(const std::string& functor) const;
  CommaObject comma_object(const std::string& name) const;
  /// The functor name of a comma-valued entry.
  std::string comma_functor(const std::string& section, const std::string& name) const;
  CommaGeneratorDatum comma_datum(const std::string& name) const;
  CommaDiagram comma_diagram(const std::string& name) const;
  TwoCell two_cell(const std::string& name) const;

  struct AnelInstance {
    bool chain = false;
    GeneratorDatum datum;        // finite
    NatTrans map;                // finite: K → evaluation codomain
    IndGeneratorDatum ind;       // chain
    ColimitArrow target;         // chain
  };
  AnelInstance anel(const std::string& name) const;

  struct TriangleInstance {
    GeneratorDatum n1, n2;
    NatTrans n;
  };
  TriangleInstance triangle(const std::string& name) const;

  struct RetractInstance {
    GeneratorDatum datum;
    CosliceObject retract;
    NatTrans s, r;
  };
  RetractInstance retract(const std::string& name) const;

  struct CommaRetractInstance {
    LfpMorphism u;
    CommaGeneratorDatum datum;
    CommaObject retract;
    CommaMap s, r;
  };
  CommaRetractInstance comma_retract(const std::string& name) const;

  /// Every section name understood by the loader.
  static const std::vector<std::string>& sections();

private:
  void validate_all();
  [[noreturn]] void dangling(const std::string& section, const std::string& name) const;
  const json& section(const std::string& s) const;

  json doc_ = json::object();
  Config cfg_;
  mutable std::map<std::string, FinCategory> categories_;
  mutable std::map<std::string, Presheaf> presheaves_;
  mutable std::map<std::string, NatTrans> arrows_;
};

} // namespace lfp
