#pragma once

#include "admd/adaptive.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace admd::cli {

struct StandardMethod {
  RankRule rule = RankThreshold{};
};

struct DelayMethod {
  Index q = 2;
  RankRule rule = RankThreshold{};
};

struct AdaptiveMethod {
  AdmdConfig config;
};

/// A parsed `name[:key=value,...]` method description.
///
/// Names: standard, delay, admd, and the admd presets admd-dft, admd-ialm,
/// admd-gaussian, admd-achlioptas, admd-rowsample.
struct MethodSpec {
  std::string label;  // the text exactly as given
  std::variant<StandardMethod, DelayMethod, AdaptiveMethod> method;
};

/// Throws ParameterError on unknown names, unknown keys or bad values. The
/// seed is injected into adaptive configurations.
MethodSpec parse_method_spec(const std::string& text, std::uint64_t seed);

struct MethodResult {
  std::string label;
  std::string family;  // standard, delay or admd
  Index measurements_used = 0;
  DmdModel model;
  std::vector<std::optional<double>> errors;
  std::optional<AdmdReport> admd;  // model and errors moved out
  double wall_time_seconds = 0.0;

  /// False only when an IALM filter stopped before reaching its tolerance.
  bool converged() const;
};

MethodResult run_method(const SnapshotMatrix& x, const MethodSpec& spec);

}  // namespace admd::cli
