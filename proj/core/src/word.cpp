#include "hamon/word.hpp"

#include "hamon/errors.hpp"

#include <sstream>

namespace hamon {

TimedQuantitativeWord::TimedQuantitativeWord(VarSpacePtr space, std::vector<Sample> samples)
    : space_(std::move(space)), samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].values.size() != space_->dim())
      throw DimensionError("sample " + std::to_string(i + 1) + " is not a total valuation");
    if (samples_[i].timestamp.sign() < 0)
      throw DomainError("negative timestamp at sample " + std::to_string(i + 1));
    if (i > 0 && samples_[i].timestamp < samples_[i - 1].timestamp)
      throw DomainError("decreasing timestamp at sample " + std::to_string(i + 1));
  }
}

TimedQuantitativeWord TimedQuantitativeWord::prefix(std::size_t i) const {
  if (i > samples_.size()) throw DomainError("prefix length exceeds word length");
  return TimedQuantitativeWord(space_, std::vector<Sample>(samples_.begin(), samples_.begin() + i));
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  for (auto& s : cells) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  }
  return cells;
}

} // namespace

TimedQuantitativeWord parse_log(std::string_view csv, VarSpacePtr space) {
  std::istringstream in{std::string(csv)};
  std::string line;
  bool header_seen = false;
  std::vector<Sample> samples;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    auto cells = split_csv_line(line);
    if (!header_seen) {
      if (cells.size() != space->dim() + 1 || cells[0] != "time")
        throw ParseError("log header must be \"time," +
                         [&] {
                           std::string s;
                           for (std::size_t i = 0; i < space->dim(); ++i) {
                             if (i) s += ",";
                             s += space->name(i);
                           }
                           return s;
                         }() +
                         "\"");
      for (std::size_t i = 0; i < space->dim(); ++i)
        if (cells[i + 1] != space->name(i))
          throw ParseError("log column " + std::to_string(i + 2) + " is '" + cells[i + 1] +
                           "', expected '" + space->name(i) + "'");
      header_seen = true;
      continue;
    }
    if (cells.size() != space->dim() + 1)
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(space->dim() + 1) + " cells");
    Sample s;
    s.timestamp = Rational::from_string(cells[0]);
    s.values.reserve(space->dim());
    for (std::size_t i = 0; i < space->dim(); ++i)
      s.values.push_back(Rational::from_string(cells[i + 1]));
    samples.push_back(std::move(s));
  }
  if (!header_seen) throw ParseError("log has no header row");
  return TimedQuantitativeWord(std::move(space), std::move(samples));
}

std::string format_log(const TimedQuantitativeWord& w) {
  std::ostringstream os;
  os << "time";
  for (const auto& n : w.space()->names()) os << "," << n;
  os << "\n";
  for (const auto& s : w.samples()) {
    os << s.timestamp.str();
    for (const auto& v : s.values) os << "," << v.str();
    os << "\n";
  }
  return os.str();
}

} // namespace hamon
