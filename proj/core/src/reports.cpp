#include "gradelens/reports.hpp"

#include <fstream>

#include "gradelens/decimal.hpp"
#include "gradelens/error.hpp"
#include "gradelens/json_io.hpp"

namespace gradelens {

namespace {

double score_out(double v) { return round_half_up(v, kScorePlaces); }
double rate_out(double v) { return round_half_up(v, kRatePlaces); }

// RFC 4180 quoting for fields that need it.
std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const AttainmentRecord& rec) {
  return Json{{"student_id", rec.student_id},
              {"outcome_code", rec.outcome_code},
              {"scope", rec.scope.to_string()},
              {"score", score_out(rec.score)},
              {"attained", rec.attained},
              {"evidence_count", rec.evidence_count}};
}

Json to_json(const AttainmentRate& rate) {
  return Json{{"rate", rate_out(rate.rate)},
              {"attained", rate.attained},
              {"evaluated", rate.evaluated}};
}

Json to_json(const ClassAttainment& report) {
  Json records = Json::array();
  for (const auto& r : report.records) records.push_back(to_json(r));
  return Json{{"class_id", report.class_id},
              {"outcome_code", report.outcome_code},
              {"threshold", report.threshold},
              {"rate", to_json(report.rate)},
              {"records", records},
              {"no_evidence", report.no_evidence}};
}

Json to_json(const Distribution& dist) {
  Json bands = Json::array();
  for (const auto& b : dist.bands) {
    bands.push_back(Json{{"label", b.label}, {"count", b.count}});
  }
  return Json{{"scope", dist.scope.to_string()},
              {"outcome_code", dist.outcome_code},
              {"bands", bands},
              {"total", dist.total}};
}

Json to_json(const ProgramRollup& rollup) {
  Json outcomes = Json::array();
  for (const auto& e : rollup.outcomes) {
    Json entry{{"outcome_code", e.outcome_code}, {"no_evidence", e.no_evidence}};
    if (!e.no_evidence) {
      entry["rate"] = to_json(e.rate);
      entry["distribution"] = to_json(*e.distribution);
    }
    outcomes.push_back(std::move(entry));
  }
  return Json{{"curriculum_version", rollup.curriculum_version},
              {"term_from", rollup.term_from},
              {"term_to", rollup.term_to},
              {"threshold", rollup.threshold},
              {"classes", rollup.classes},
              {"outcomes", outcomes}};
}

Json to_json(const std::vector<TrendPoint>& trend) {
  Json points = Json::array();
  for (const auto& p : trend) {
    Json point{{"term", p.term}, {"no_evidence", !p.rate.has_value()}};
    if (p.rate) point["rate"] = to_json(*p.rate);
    points.push_back(std::move(point));
  }
  return Json{{"points", points}};
}

Json to_json(const GradeSummary& summary) {
  Json rows = Json::array();
  for (const auto& r : summary.rows) {
    rows.push_back(Json{{"student_id", r.student_id},
                        {"final_percent", r.final_percent},
                        {"grade", r.grade}});
  }
  Json incomplete = Json::array();
  for (const auto& r : summary.incomplete) {
    incomplete.push_back(Json{{"student_id", r.student_id},
                              {"missing_components", r.missing_components}});
  }
  Json out{{"class_id", summary.class_id},
           {"rows", rows},
           {"incomplete", incomplete}};
  if (summary.mean) out["mean"] = *summary.mean;
  return out;
}

Json to_json(const std::vector<SkillSummaryRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back(Json{{"skill_id", r.skill_id},
                       {"skill_name", r.skill_name},
                       {"mean", r.mean},
                       {"count", r.count}});
  }
  return Json{{"skills", out}};
}

Json to_json(const std::vector<StudentSkill>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back(Json{{"skill_id", r.skill_id},
                       {"skill_name", r.skill_name},
                       {"course_code", r.course_code},
                       {"class_id", r.class_id},
                       {"score", r.score},
                       {"recorded_at", format_timestamp(r.recorded_at)}});
  }
  return Json{{"skills", out}};
}

Json to_json(const std::vector<StudentOutcomeView>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j = to_json(r.record);
    j["band"] = r.band;
    out.push_back(std::move(j));
  }
  return Json{{"outcomes", out}};
}

AnalyticsReport build_analytics_report(const State& state, const Scope& scope,
                                       double theta, const BandScheme& scheme) {
  AnalyticsReport report;
  report.scope = scope;
  report.threshold = theta;
  for (const auto& code : mapped_outcome_codes(state)) {
    auto records = scope_attainment(state, code, scope, theta);
    report.distributions.push_back(bucket(records, scope, code, scheme));
    for (auto& r : records) report.records.push_back(std::move(r));
  }
  return report;
}

Json to_json(const AnalyticsReport& report) {
  Json records = Json::array();
  for (const auto& r : report.records) records.push_back(to_json(r));
  Json dists = Json::array();
  for (const auto& d : report.distributions) dists.push_back(to_json(d));
  return Json{{"scope", report.scope.to_string()},
              {"threshold", report.threshold},
              {"records", records},
              {"distributions", dists}};
}

std::string to_csv(const std::vector<AttainmentRecord>& records) {
  std::string out(kAttainmentCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += csv_field(r.student_id) + ',' + csv_field(r.outcome_code) + ',' +
           csv_field(r.scope.to_string()) + ',' +
           format_fixed(r.score, kScorePlaces) + ',' +
           (r.attained ? "true" : "false") + ',' +
           std::to_string(r.evidence_count) + '\n';
  }
  return out;
}

ExportFormat parse_export_format(std::string_view text) {
  if (text == "csv") return ExportFormat::Csv;
  if (text == "json") return ExportFormat::Json;
  fail(Errc::ValidationError, "format must be csv or json");
}

std::string render_report(const AnalyticsReport& report, ExportFormat format) {
  return format == ExportFormat::Csv ? to_csv(report.records)
                                     : canonical_dump(to_json(report));
}

std::size_t export_report(const AnalyticsReport& report, ExportFormat format,
                          const std::filesystem::path& destination) {
  const std::string bytes = render_report(report, format);
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoFailure, "cannot open " + destination.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) fail(Errc::IoFailure, "write to " + destination.string() + " failed");
  return bytes.size();
}

}  // namespace gradelens
