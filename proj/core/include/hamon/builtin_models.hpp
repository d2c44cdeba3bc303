#pragma once

#include "hamon/lha.hpp"

namespace hamon {

/// Two-vehicle platooning bounding model: two cruise/recovery modes over
/// positions x1, x2, interval rates, init x1 = 40, x2 = 35.
Lha platooning_model();

/// The platooning no-contact specification x1 - x2 > 0.
SafetySpec platooning_spec();

/// Interval ACC benchmark: the platooning model armed against its
/// specification (4 locations).
Lha builtin_acci();

/// Diagonal ACC benchmark of dimension dim in [2,7], slow-down parameter
/// epsilon; per-pair cruise/recovery modes with diagonal rate constraints,
/// armed against x_i - x_{i+1} > 0 for every consecutive pair (2^dim
/// locations total).
Lha builtin_accd(std::size_t dim, const Rational& epsilon);

/// Piecewise-constant ACC benchmark, dimension in {5, 10, 15}: one cruise
/// mode, one recovery mode per pair, one (unreachable) accepting crash
/// location.
Lha builtin_accc(std::size_t dim);

/// Resolves "ACCI", "ACCD:<dim>:<epsilon>", "ACCC:<dim>".
/// Throws DomainError for anything else.
Lha builtin_model(std::string_view selector);

bool is_builtin_selector(std::string_view selector);

} // namespace hamon
