#pragma once

#include "hamon/lha.hpp"

#include <string>
#include <string_view>

namespace hamon {

/// Model file: {"variables": [...], "locations": [{"id", "flow": [primed
/// constraint strings], "invariant": [...], "initial": [...] or "false",
/// "accepting": bool}], "edges": [{"from", "to", "guard": [...],
/// "update": {"var": [lo, hi]}}]}.
Lha model_from_json(std::string_view text);
std::string model_to_json(const Lha& m);

Lha load_model_file(const std::string& path);

/// Spec file: {"atoms": ["x1 - x2 > 0", ...]}; strict relations allowed.
SafetySpec spec_from_json(std::string_view text, const VarSpacePtr& space);
SafetySpec load_spec_file(const std::string& path, const VarSpacePtr& space);

std::string read_text_file(const std::string& path);

} // namespace hamon
