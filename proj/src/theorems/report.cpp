#include "eforge/theorems/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace eforge {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Hypothesis: return "hypothesis";
    case Role::Lemma: return "lemma";
    case Role::Conclusion: return "conclusion";
    case Role::Info: return "info";
  }
  return "unknown";
}

std::string_view to_string(StageVerdict v) {
  switch (v) {
    case StageVerdict::Pass: return "pass";
    case StageVerdict::Fail: return "fail";
    case StageVerdict::NotJudged: return "not-judged";
    case StageVerdict::Skipped: return "skipped";
  }
  return "unknown";
}

std::string_view to_string(Comparison c) { return c == Comparison::AtMost ? "<=" : ">="; }

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Consistent: return "consistent";
    case Outcome::HypothesisViolated: return "hypothesis-violated";
    case Outcome::ConclusionViolated: return "conclusion-violated";
  }
  return "unknown";
}

Stage make_stage(std::string name, Role role, std::optional<double> value, double threshold, Comparison cmp,
                 Eigen::Index samples, std::string note) {
  Stage s;
  s.name = std::move(name);
  s.role = role;
  if (value && !std::isfinite(*value)) value.reset();
  s.value = value;
  s.threshold = threshold;
  s.comparison = cmp;
  s.samples = samples;
  s.note = std::move(note);
  s.passed = value && (cmp == Comparison::AtMost ? *value <= threshold : *value >= threshold);
  s.verdict = s.passed ? StageVerdict::Pass : StageVerdict::Fail;
  return s;
}

Stage skipped_stage(std::string name, Role role, std::string note) {
  Stage s;
  s.name = std::move(name);
  s.role = role;
  s.passed = true;
  s.verdict = StageVerdict::Skipped;
  s.note = std::move(note);
  return s;
}

Stage& CheckReport::add(Stage s) {
  stages.push_back(std::move(s));
  return stages.back();
}

void CheckReport::finalize() {
  bool hypotheses_hold = true;
  for (const Stage& s : stages) {
    if (s.role == Role::Hypothesis && s.verdict != StageVerdict::Skipped && !s.passed) hypotheses_hold = false;
  }
  bool derived_hold = true;
  for (Stage& s : stages) {
    if (s.verdict == StageVerdict::Skipped) continue;
    if (s.role == Role::Info) {
      s.verdict = StageVerdict::Pass;
      continue;
    }
    if (s.role == Role::Hypothesis) {
      s.verdict = s.passed ? StageVerdict::Pass : StageVerdict::Fail;
      continue;
    }
    if (!hypotheses_hold) {
      s.verdict = StageVerdict::NotJudged;
      continue;
    }
    s.verdict = s.passed ? StageVerdict::Pass : StageVerdict::Fail;
    if (!s.passed) derived_hold = false;
  }
  verdict = !hypotheses_hold ? Outcome::HypothesisViolated
                             : (derived_hold ? Outcome::Consistent : Outcome::ConclusionViolated);
}

const Stage* CheckReport::find(std::string_view name) const {
  for (const Stage& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

nlohmann::ordered_json report_to_json(const CheckReport& report, bool include_timing) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["schema"] = kReportSchema;
  doc["theorem"] = report.theorem;
  doc["bodies"] = report.bodies;
  doc["verdict"] = to_string(report.verdict);
  if (!report.branch.empty()) doc["branch"] = report.branch;
  doc["seed"] = report.seed;
  json samples = json::object();
  for (const auto& [name, count] : report.sample_counts) samples[name] = count;
  doc["samples"] = samples;
  json params = json::object();
  for (const auto& [name, value] : report.parameters) params[name] = value;
  doc["parameters"] = params;
  json tol = json::object();
  for (const auto& [name, value] : report.tolerances.items()) tol[name] = value;
  doc["tolerances"] = tol;
  json stages = json::array();
  for (const Stage& s : report.stages) {
    json st;
    st["name"] = s.name;
    st["role"] = to_string(s.role);
    st["verdict"] = to_string(s.verdict);
    if (s.verdict != StageVerdict::Skipped) {
      st["value"] = s.value ? json(*s.value) : json(nullptr);
      st["comparison"] = to_string(s.comparison);
      st["threshold"] = s.threshold;
      st["samples"] = s.samples;
    }
    if (!s.note.empty()) st["note"] = s.note;
    if (s.witness) st["witness"] = std::vector<double>(s.witness->data(), s.witness->data() + s.witness->size());
    stages.push_back(std::move(st));
  }
  doc["stages"] = stages;
  doc["notes"] = report.notes;
  if (include_timing && report.wall_time_ms) doc["wall_time_ms"] = *report.wall_time_ms;
  return doc;
}

std::string serialize_report(const CheckReport& report, bool include_timing) {
  return report_to_json(report, include_timing).dump(2) + "\n";
}

std::string summarize(const CheckReport& report) {
  std::ostringstream out;
  for (const Stage& s : report.stages) {
    out << report.theorem << "  " << s.name << "  " << to_string(s.verdict);
    if (s.verdict != StageVerdict::Skipped) {
      char buf[96];
      if (s.value) {
        std::snprintf(buf, sizeof buf, "  %.3e %s %.6g", *s.value, std::string(to_string(s.comparison)).c_str(),
                      s.threshold);
      } else {
        std::snprintf(buf, sizeof buf, "  n/a %s %.6g", std::string(to_string(s.comparison)).c_str(), s.threshold);
      }
      out << buf;
    }
    if (!s.note.empty()) out << "  (" << s.note << ")";
    out << "\n";
  }
  out << report.theorem << "  verdict  " << to_string(report.verdict) << "\n";
  return out.str();
}

}  // namespace eforge
