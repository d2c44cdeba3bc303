#pragma once

#include <stdexcept>
#include <string>

namespace hamon {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (literals, constraint strings, file formats).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Operands over incompatible variable spaces or dimensions.
class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Domain violations: division by zero, invalid interval, unsupported
/// builtin dimension, empty flow passed to elapse, and the like.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

} // namespace hamon
