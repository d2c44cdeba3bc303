#pragma once

#include "hamon/monitor.hpp"

#include <string>

namespace hamon {

/// {"indices": [{"i", "timestamp", "verdict", "witness"?}], "C": [...],
/// "saturated_intervals": [...]}; timestamps and coefficients are exact
/// rational strings.
std::string verdict_to_json(const MonitorVerdict& v, const VarSpacePtr& model_space);

} // namespace hamon
