#include "hamon/verdict_json.hpp"

#include "hamon/constraint_text.hpp"

#include <json.hpp>

namespace hamon {

using nlohmann::json;

std::string verdict_to_json(const MonitorVerdict& v, const VarSpacePtr& model_space) {
  json doc;
  doc["indices"] = json::array();
  for (const auto& r : v.indices) {
    json jr;
    jr["i"] = r.index;
    jr["timestamp"] = r.timestamp.str();
    jr["verdict"] = std::string(verdict_text(r.verdict));
    if (!r.diagnostic.empty()) jr["diagnostic"] = r.diagnostic;
    if (r.witness) {
      json steps = json::array();
      for (const auto& s : *r.witness) {
        json js;
        js["location"] = s.location;
        if (s.via_edge >= 0) js["via_edge"] = s.via_edge;
        json cs = json::array();
        for (const auto& c : s.region.constraints())
          cs.push_back(print_constraint(c, *model_space, false));
        js["region"] = std::move(cs);
        steps.push_back(std::move(js));
      }
      jr["witness"] = std::move(steps);
    }
    doc["indices"].push_back(std::move(jr));
  }
  doc["C"] = v.accepted_set();
  doc["saturated_intervals"] = v.saturated_intervals;
  return doc.dump(2) + "\n";
}

} // namespace hamon
