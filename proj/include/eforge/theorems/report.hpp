#pragma once

#include "eforge/core/tolerances.hpp"
#include "eforge/core/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eforge {

inline constexpr std::string_view kReportSchema = "ellipsoid-forge/report-v1";

/// Hypothesis stages gate the run; lemma and conclusion stages are judged only when every
/// hypothesis passes; info stages never affect the verdict.
enum class Role { Hypothesis, Lemma, Conclusion, Info };

enum class StageVerdict { Pass, Fail, NotJudged, Skipped };

enum class Comparison { AtMost, AtLeast };

enum class Outcome { Consistent, HypothesisViolated, ConclusionViolated };

std::string_view to_string(Role r);
std::string_view to_string(StageVerdict v);
std::string_view to_string(Comparison c);
std::string_view to_string(Outcome o);

struct Stage {
  std::string name;
  Role role{Role::Hypothesis};
  std::optional<double> value;  // empty when the quantity could not be computed
  double threshold{};
  Comparison comparison{Comparison::AtMost};
  bool passed{};                // raw gate outcome, before judging
  StageVerdict verdict{StageVerdict::Fail};
  Eigen::Index samples{};
  std::string note;
  std::optional<Vec> witness;   // sample that attains the reported value
};

/// Stage whose gate is `value <= threshold` (AtMost) or `value >= threshold` (AtLeast).
Stage make_stage(std::string name, Role role, std::optional<double> value, double threshold, Comparison cmp,
                 Eigen::Index samples, std::string note = {});

/// Stage reported without a gate (skipped, or informational).
Stage skipped_stage(std::string name, Role role, std::string note);

struct CheckReport {
  std::string theorem;
  std::vector<std::string> bodies;
  std::vector<Stage> stages;
  Outcome verdict{Outcome::Consistent};
  std::uint64_t seed{};
  std::vector<std::pair<std::string, std::int64_t>> sample_counts;
  std::vector<std::pair<std::string, std::string>> parameters;
  Tolerances tolerances;
  std::string branch;
  std::vector<std::string> notes;
  std::optional<double> wall_time_ms;

  Stage& add(Stage s);

  /// Judges the stages and sets the overall verdict.
  void finalize();

  const Stage* find(std::string_view name) const;
};

/// Report document. Wall time is written only when `include_timing` is set, so that identical
/// runs serialize to identical bytes.
nlohmann::ordered_json report_to_json(const CheckReport& report, bool include_timing = false);

std::string serialize_report(const CheckReport& report, bool include_timing = false);

/// One line per stage: name, verdict, value, comparison and threshold.
std::string summarize(const CheckReport& report);

}  // namespace eforge
