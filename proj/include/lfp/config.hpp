#pragma once

#include <cstddef>
#include <cstdint>
#include <stop_token>

namespace lfp {

/// Knobs shared by every search in the library. All searches are total:
/// they either succeed or raise an error naming the bound they hit.
struct Config {
  /// Hard bound on chain stages visited by lifting searches.
  std::size_t stage_bound = 32;
  /// total_size budget for decomposition fragments.
  std::size_t budget = 6;
  /// Upper bound on the raw function space explored by hom enumeration.
  double enumeration_budget = 1e9;
  /// Largest category accepted by validate_category.
  std::size_t max_morphisms = 64;
  std::uint64_t seed = 0;
  /// Cooperative cancellation for long enumerations.
  std::stop_token cancel;

  /// Defaults, with LFPKIT_STAGE_BOUND applied when set.
  static Config from_env();
};

const Config& default_config();

/// Throws Cancelled when a stop has been requested.
void check_cancel(const Config& cfg);

} // namespace lfp
