#pragma once

#include "hamon/varspace.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hamon {

/// One log sample: a total valuation over the model variables plus a
/// timestamp.
struct Sample {
  std::vector<Rational> values; // indexed by the word's VarSpace
  Rational timestamp;
};

/// A log: finite sequence of samples with nondecreasing timestamps.
class TimedQuantitativeWord {
public:
  TimedQuantitativeWord(VarSpacePtr space, std::vector<Sample> samples);

  const VarSpacePtr& space() const { return space_; }
  const std::vector<Sample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const Sample& operator[](std::size_t i) const { return samples_.at(i); } // 0-based

  /// w[i] of the problem statement: the first i samples (1-based i).
  TimedQuantitativeWord prefix(std::size_t i) const;

private:
  VarSpacePtr space_;
  std::vector<Sample> samples_;
};

/// CSV with header "time,<var1>,...,<varM>" matching the space, one sample
/// per line, '#' comments. Values are decimal or p/q rationals, exact.
TimedQuantitativeWord parse_log(std::string_view csv, VarSpacePtr space);

/// Inverse of parse_log up to value equality.
std::string format_log(const TimedQuantitativeWord& w);

} // namespace hamon
