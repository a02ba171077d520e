#include <algorithm>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "pac/checks.hpp"

namespace pac {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) { return s + std::string(width > s.size() ? width - s.size() : 0, ' '); }

std::string emit_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const CheckReport& r : reports) {
    nlohmann::ordered_json j;
    j["check_id"] = r.check_id;
    j["paper_ref"] = r.paper_ref;
    j["manifold"] = r.manifold;
    j["max_abs_residual"] = r.max_abs_residual ? nlohmann::ordered_json(*r.max_abs_residual) : nullptr;
    j["tolerance"] = r.tolerance;
    j["points"] = r.points;
    j["seed"] = r.seed;
    j["pass"] = r.pass ? nlohmann::ordered_json(*r.pass) : nullptr;
    out.push_back(std::move(j));
  }
  return out.dump(2);
}

std::string emit_text(const std::vector<CheckReport>& reports) {
  std::size_t w_id = 8, w_m = 8;
  for (const CheckReport& r : reports) {
    w_id = std::max(w_id, r.check_id.size());
    w_m = std::max(w_m, r.manifold.size());
  }
  std::string out = pad("status", 7) + pad("check_id", w_id + 2) + pad("manifold", w_m + 2) + pad("residual", 12) +
                    pad("tolerance", 12) + "points\n";
  int passed = 0, failed = 0, skipped = 0;
  for (const CheckReport& r : reports) {
    std::string status = !r.pass ? "SKIP" : *r.pass ? "PASS" : "FAIL";
    (!r.pass ? skipped : *r.pass ? passed : failed)++;
    std::string line = pad(status, 7) + pad(r.check_id, w_id + 2) + pad(r.manifold, w_m + 2) +
                       pad(r.max_abs_residual ? sci(*r.max_abs_residual) : "-", 12) + pad(sci(r.tolerance), 12) +
                       std::to_string(r.points);
    if (!r.note.empty()) line += "  # " + r.note;
    out += line + "\n";
  }
  out += std::to_string(passed) + " passed, " + std::to_string(failed) + " failed, " + std::to_string(skipped) +
         " skipped\n";
  return out;
}

}  // namespace

std::string emit_report(const std::vector<CheckReport>& reports, ReportFormat format) {
  return format == ReportFormat::Json ? emit_json(reports) : emit_text(reports);
}

}  // namespace pac
