#pragma once

#include <string>
#include <vector>

#include "lfp/workspace.hpp"

namespace lfp {

/// One verdict of a named check on one workspace instance.
struct Certificate {
  std::string check;
  std::string anchor;   ///< the statement being exercised
  std::string instance; ///< workspace names involved
  bool verdict = false;
  json witness = json::object();
};

json to_json(const Certificate& c);
/// `PASS check instance` or `FAIL check instance: reason`.
std::string to_line(const Certificate& c);

std::vector<std::string> suite_names();
/// Throws UnknownSuite. Certificates come out sorted by (check, instance).
std::vector<Certificate> run_suite(const std::string& name, const Workspace& ws,
                                   const Config& cfg = default_config());
/// Every suite in registration order.
std::vector<Certificate> run_all_suites(const Workspace& ws, const Config& cfg = default_config());
bool all_pass(const std::vector<Certificate>& certs);

} // namespace lfp
