#include <cstdlib>
#include <string>

#include "lfp/config.hpp"
#include "lfp/error.hpp"

namespace lfp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::MissingIdentity: return "MissingIdentity";
  case ErrorKind::NonAssociative: return "NonAssociative";
  case ErrorKind::BadComposite: return "BadComposite";
  case ErrorKind::BadFunctor: return "BadFunctor";
  case ErrorKind::BadIdentityAction: return "BadIdentityAction";
  case ErrorKind::BadCompositeAction: return "BadCompositeAction";
  case ErrorKind::BadNaturality: return "BadNaturality";
  case ErrorKind::IndexMismatch: return "IndexMismatch";
  case ErrorKind::UnknownId: return "UnknownId";
  case ErrorKind::SizeBoundExceeded: return "SizeBoundExceeded";
  case ErrorKind::StageBoundExceeded: return "StageBoundExceeded";
  case ErrorKind::NoRefinement: return "NoRefinement";
  case ErrorKind::UnsupportedShape: return "UnsupportedShape";
  case ErrorKind::UnsupportedValue: return "UnsupportedValue";
  case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  case ErrorKind::BadRetraction: return "BadRetraction";
  case ErrorKind::NotFiltered: return "NotFiltered";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::ValidationError: return "ValidationError";
  case ErrorKind::UnknownSuite: return "UnknownSuite";
  case ErrorKind::Cancelled: return "Cancelled";
  case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Config Config::from_env() {
  Config cfg;
  if (const char* env = std::getenv("LFPKIT_STAGE_BOUND")) {
    try {
      auto v = std::stoul(env);
      if (v > 0) cfg.stage_bound = v;
    } catch (const std::exception&) {
      // malformed override: keep the default
    }
  }
  return cfg;
}

const Config& default_config() {
  static const Config cfg = Config::from_env();
  return cfg;
}

void check_cancel(const Config& cfg) {
  if (cfg.cancel.stop_requested()) fail(ErrorKind::Cancelled, "stop requested");
}

} // namespace lfp
