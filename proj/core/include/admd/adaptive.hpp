#pragma once

#include "admd/delay_embedding.hpp"
#include "admd/dmd.hpp"
#include "admd/filters.hpp"
#include "admd/sketching.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace admd {

enum class RankClassValue { LowRank, FullRank };

struct RankClass {
  RankClassValue value = RankClassValue::FullRank;
  Index rank = 0;
  double ratio = 0.0;  // rank / min(M, N)
};

/// LowRank when numeric_rank(x, eps_rank) <= ratio_lowrank * min(M, N).
RankClass classify(const Eigen::Ref<const Matrix>& x, double eps_rank = kDefaultRankTolerance,
                   double ratio_lowrank = 0.5);

struct NoSketch {};
struct GaussianSketch {
  Index a = 1;
};
struct AchlioptasSketch {
  Index a = 1;
  int s = 3;
};
struct RowSampleSketch {
  Index a = 1;
};
using SketchChoice = std::variant<NoSketch, GaussianSketch, AchlioptasSketch, RowSampleSketch>;

struct AutoFilter {};
using FilterChoice = std::variant<AutoFilter, DftFilterPolicy, RpcaParams>;

struct AdmdConfig {
  double eps_rank = kDefaultRankTolerance;
  double ratio_lowrank = 0.5;
  Index q = 1;
  SketchChoice sketch = NoSketch{};
  FilterChoice fullrank_filter = AutoFilter{};
  std::uint64_t seed = 20210601;

  void validate() const;
  /// One `key = value` per line; echoed into reports.
  std::string describe() const;
};

/// Robust z-score outlier test behind the automatic filter choice.
///
/// Per column z = (x - median) / (1.4826 MAD); true when more than
/// `max_fraction` of all entries have |z| > z_cut.
bool has_gross_outliers(const Eigen::Ref<const Matrix>& x, double z_cut = 6.0,
                        double max_fraction = 1e-3);

enum class Branch { LowRank, FullRank };
enum class FilterKind { None, Dft, Ialm };

std::string to_string(Branch branch);
std::string to_string(FilterKind kind);

struct AdmdReport {
  Branch branch = Branch::FullRank;
  FilterKind filter = FilterKind::None;
  std::optional<SketchKind> sketch;
  Index q = 1;
  Index measurements_used = 0;
  Index rank_before = 0;
  Index rank_after = 0;
  DmdModel model;
  std::vector<std::optional<double>> error_series;
  std::optional<RpcaResult> rpca;  // diagnostics only; matrices are dropped
  double wall_time_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::string config_echo;
};

/// Classify, pre-process along the chosen branch, fit DMD, and score the
/// model against the raw input.
AdmdReport admd_fit(const SnapshotMatrix& x, const AdmdConfig& config);

}  // namespace admd
