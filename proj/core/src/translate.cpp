#include "hamon/translate.hpp"

#include "hamon/constraint_text.hpp"
#include "hamon/errors.hpp"

#include <sstream>

namespace hamon {

const std::string kAbsClock = "t_abs";
const std::string kRelClock = "t_rel";

Lha tqw2lha(const TimedQuantitativeWord& w, const VarSpacePtr& model_space) {
  if (w.size() == 0) throw DomainError("tqw2lha needs at least one sample");
  if (model_space->index(kAbsClock) || model_space->index(kRelClock))
    throw DomainError("model variables clash with the word-automaton clocks");
  if (!same_space(w.space(), model_space))
    throw DimensionError("word variables do not match the model space");

  auto names = model_space->names();
  names.push_back(kAbsClock);
  names.push_back(kRelClock);
  auto sp = VarSpace::make(std::move(names));
  std::size_t n = sp->dim();
  std::size_t abs_i = n - 2;
  std::size_t rel_i = n - 1;

  auto unit = [&](std::size_t i) {
    std::vector<Rational> c(n, Rational(0));
    c[i] = Rational(1);
    return c;
  };

  // flows: model derivatives free, both clocks at rate 1
  auto flow = Polyhedron::from_constraints(
      sp, {make_constraint(unit(abs_i), Rel::eq, Rational(1)),
           make_constraint(unit(rel_i), Rel::eq, Rational(1))});

  std::size_t m = w.size();
  std::vector<Location> locs;
  for (std::size_t i = 0; i <= m; ++i) {
    Polyhedron inv = i < m
                         ? Polyhedron::from_constraints(
                               sp, {make_constraint(unit(abs_i), Rel::le, w[i].timestamp)})
                         : Polyhedron::universe(sp);
    Polyhedron init = Polyhedron::empty_set(sp);
    if (i == 0) {
      std::vector<LinearConstraint> cs{make_constraint(unit(abs_i), Rel::eq, Rational(0)),
                                       make_constraint(unit(rel_i), Rel::eq, Rational(0))};
      // the first sample pins the start valuation only when taken at time 0;
      // a later first sample is enforced by the first edge guard instead
      if (w[0].timestamp.sign() == 0)
        for (std::size_t v = 0; v < model_space->dim(); ++v)
          cs.push_back(make_constraint(unit(v), Rel::eq, w[0].values[v]));
      init = Polyhedron::from_constraints(sp, cs);
    }
    locs.push_back(Location{"wl" + std::to_string(i), flow, std::move(inv), std::move(init), false});
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<LinearConstraint> cs{make_constraint(unit(abs_i), Rel::eq, w[i].timestamp)};
    for (std::size_t v = 0; v < model_space->dim(); ++v)
      cs.push_back(make_constraint(unit(v), Rel::eq, w[i].values[v]));
    IntervalUpdate reset;
    reset.set(rel_i, Interval{Rational(0), Rational(0)});
    edges.push_back(Edge{"wl" + std::to_string(i), "wl" + std::to_string(i + 1),
                         Polyhedron::from_constraints(sp, cs), reset, "sample"});
  }
  return Lha(sp, std::move(locs), std::move(edges));
}

namespace {

struct ProductRun {
  Lha prod;
  std::size_t model_locs;
  std::size_t word_locs;
  ReachGraph graph;

  // product locations are a-major: index = a_idx * |L_b| + b_idx
  std::size_t model_loc_of(std::size_t prod_loc) const { return prod_loc / word_locs; }
  std::size_t word_loc_of(std::size_t prod_loc) const { return prod_loc % word_locs; }
};

ProductRun explore_product(const Lha& m, const TimedQuantitativeWord& w,
                           const MonitorConfig& cfg) {
  auto word_auto = tqw2lha(w, m.space());
  auto prod = product(m, word_auto);
  MonitorConfig scaled = cfg;
  scaled.max_discrete_steps_per_interval = cfg.effective_cap(m) * (w.size() + 1);
  scaled.emit_witness = false;
  Rational horizon = w[w.size() - 1].timestamp;
  auto start = initial_states(prod);
  auto graph = explore(prod, start, horizon, scaled);
  return ProductRun{std::move(prod), m.locations().size(), word_auto.locations().size(),
                    std::move(graph)};
}

} // namespace

MonitorVerdict method1_verdict(const Lha& m, const TimedQuantitativeWord& w,
                               const MonitorConfig& cfg) {
  MonitorVerdict verdict;
  if (w.size() == 0) return verdict;
  auto run = explore_product(m, w, cfg);
  auto ext = extended_space(run.prod.space());
  std::size_t rel_i = run.prod.space()->index_or_throw(kRelClock);
  std::vector<Rational> c(ext->dim(), Rational(0));
  c[rel_i] = Rational(1);
  auto rel_zero = Polyhedron::from_constraints(ext, {make_constraint(c, Rel::eq, Rational(0))});

  std::vector<bool> accepted(w.size() + 1, false);
  std::vector<bool> word_loc_seen(w.size() + 1, false);
  for (const auto& node : run.graph.nodes) {
    std::size_t wi = run.word_loc_of(node.location);
    std::size_t mi = run.model_loc_of(node.location);
    if (wi == 0) continue; // before the first sample
    bool accepting = m.location(mi).accepting;
    if (word_loc_seen[wi] && (!accepting || accepted[wi])) continue;
    bool at_sample = !intersect(node.region, rel_zero).is_empty();
    word_loc_seen[wi] = word_loc_seen[wi] || at_sample;
    if (accepting && at_sample) accepted[wi] = true;
  }

  for (std::size_t i = 1; i <= w.size(); ++i) {
    IndexResult res;
    res.index = i;
    res.timestamp = w[i - 1].timestamp;
    if (accepted[i]) {
      res.verdict = IndexVerdict::accepted;
    } else if (run.graph.saturated) {
      res.verdict = IndexVerdict::inconclusive;
      res.diagnostic = "exploration cap exceeded; acceptance neither proven nor refuted";
    } else {
      res.verdict = IndexVerdict::rejected;
      if (!word_loc_seen[i]) res.diagnostic = "log inconsistent with bounding model";
    }
    verdict.indices.push_back(std::move(res));
  }
  if (run.graph.saturated) verdict.saturated_intervals.push_back(w.size());
  return verdict;
}

std::vector<std::string> naive_reachable_locations(const Lha& m, const TimedQuantitativeWord& w,
                                                   const MonitorConfig& cfg) {
  auto run = explore_product(m, w, cfg);
  std::vector<bool> seen(m.locations().size(), false);
  for (const auto& node : run.graph.nodes) seen[run.model_loc_of(node.location)] = true;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(m.location(i).id);
  return out;
}

// ---------------------------------------------------------------------------
// export dialect (docs/export-dialect.md)

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

void emit_constraints(std::ostringstream& os, const char* kw, const Polyhedron& p,
                      const VarSpace& sp, bool derivatives) {
  os << "  " << kw << " ";
  if (p.is_empty()) {
    os << "false;\n";
    return;
  }
  auto cs = p.constraints();
  if (cs.empty()) {
    os << "true;\n";
    return;
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    os << print_constraint(cs[i], sp, derivatives) << "; ";
  os << "\n";
}

} // namespace

std::string export_external(const Lha& m, const TimedQuantitativeWord& w) {
  auto word_auto = tqw2lha(w, m.space());
  auto prod = product(m, word_auto);
  const auto& sp = *prod.space();

  std::ostringstream os;
  os << "// hamon reachability export, dialect v1 (docs/export-dialect.md)\n";
  os << "// product of the bounding model and the word automaton; the query\n";
  os << "// asks for accepting states at a sampling instant (t_rel = 0)\n";
  os << "var ";
  for (std::size_t i = 0; i < sp.dim(); ++i) os << (i ? ", " : "") << sp.name(i);
  os << ";\n\nautomaton product\n";
  for (const auto& loc : prod.locations()) {
    os << "loc " << quote(loc.id) << (loc.accepting ? " accepting" : "") << "\n";
    emit_constraints(os, "flow", loc.flow, sp, true);
    emit_constraints(os, "inv", loc.invariant, sp, false);
    emit_constraints(os, "init", loc.initial, sp, false);
  }
  for (const auto& e : prod.edges()) {
    os << "trans " << quote(e.source) << " -> " << quote(e.target);
    if (!e.label.empty()) os << " sync " << quote(e.label);
    os << "\n";
    emit_constraints(os, "guard", e.guard, sp, false);
    if (!e.update.empty()) {
      os << "  update ";
      for (const auto& [var, iv] : e.update.entries())
        os << sp.name(var) << " := [" << iv.lo.str() << ", " << iv.hi.str() << "]; ";
      os << "\n";
    }
  }
  os << "end\n\nreach accepting with " << kRelClock << " = 0;\n";
  return os.str();
}

namespace {

struct LineReader {
  std::istringstream in;
  std::string line;
  explicit LineReader(std::string_view text) : in(std::string(text)) {}
  bool next() {
    while (std::getline(in, line)) {
      auto c = line.find("//");
      if (c != std::string::npos) line.erase(c);
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto e = line.find_last_not_of(" \t\r");
      line = line.substr(b, e - b + 1);
      return true;
    }
    return false;
  }
};

bool starts_with(const std::string& s, std::string_view p) {
  return s.size() >= p.size() && s.compare(0, p.size(), p) == 0;
}

std::string parse_quoted(const std::string& s, std::size_t& pos) {
  auto open = s.find('"', pos);
  if (open == std::string::npos) throw ParseError("export dialect: expected quoted id in: " + s);
  auto close = s.find('"', open + 1);
  if (close == std::string::npos) throw ParseError("export dialect: unterminated id in: " + s);
  pos = close + 1;
  return s.substr(open + 1, close - open - 1);
}

Polyhedron parse_body(const std::string& line, std::size_t from, const VarSpacePtr& sp,
                      bool derivatives) {
  std::string rest = line.substr(from);
  if (rest.find("false") != std::string::npos && rest.find_first_of("<>=") == std::string::npos)
    return Polyhedron::empty_set(sp);
  if (rest.find("true") != std::string::npos && rest.find_first_of("<>=") == std::string::npos)
    return Polyhedron::universe(sp);
  std::vector<LinearConstraint> cs;
  std::size_t start = 0;
  while (start < rest.size()) {
    auto semi = rest.find(';', start);
    std::string piece = semi == std::string::npos ? rest.substr(start) : rest.substr(start, semi - start);
    auto b = piece.find_first_not_of(" \t");
    if (b != std::string::npos) {
      ConstraintSyntax syn;
      syn.derivatives = derivatives;
      cs.push_back(to_linear(parse_constraint(piece, *sp, syn)));
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return Polyhedron::from_constraints(sp, cs);
}

} // namespace

Lha parse_external(std::string_view text) {
  LineReader rd(text);
  VarSpacePtr sp;
  std::vector<Location> locs;
  std::vector<Edge> edges;

  auto need = [&](bool ok, const char* what) {
    if (!ok) throw ParseError(std::string("export dialect: expected ") + what);
  };

  bool have_line = rd.next();
  while (have_line) {
    const std::string& l = rd.line;
    if (starts_with(l, "var ")) {
      std::vector<std::string> names;
      std::string body = l.substr(4);
      if (!body.empty() && body.back() == ';') body.pop_back();
      std::string cur;
      for (char c : body + ",") {
        if (c == ',') {
          auto b = cur.find_first_not_of(" \t");
          if (b != std::string::npos) {
            auto e = cur.find_last_not_of(" \t");
            names.push_back(cur.substr(b, e - b + 1));
          }
          cur.clear();
        } else {
          cur.push_back(c);
        }
      }
      sp = VarSpace::make(names);
      have_line = rd.next();
    } else if (starts_with(l, "loc ")) {
      need(static_cast<bool>(sp), "var declaration before locations");
      std::size_t pos = 0;
      std::string id = parse_quoted(l, pos);
      bool accepting = l.find("accepting", pos) != std::string::npos;
      Polyhedron flow = Polyhedron::universe(sp), inv = Polyhedron::universe(sp),
                 init = Polyhedron::empty_set(sp);
      while ((have_line = rd.next())) {
        if (starts_with(rd.line, "flow ")) flow = parse_body(rd.line, 5, sp, true);
        else if (starts_with(rd.line, "inv ")) inv = parse_body(rd.line, 4, sp, false);
        else if (starts_with(rd.line, "init ")) init = parse_body(rd.line, 5, sp, false);
        else break;
      }
      locs.push_back(Location{id, std::move(flow), std::move(inv), std::move(init), accepting});
    } else if (starts_with(l, "trans ")) {
      need(static_cast<bool>(sp), "var declaration before transitions");
      std::size_t pos = 0;
      std::string src = parse_quoted(l, pos);
      need(l.find("->", pos) != std::string::npos, "'->' in transition");
      std::string tgt = parse_quoted(l, pos);
      std::string label;
      if (auto sy = l.find("sync", pos); sy != std::string::npos) {
        std::size_t p2 = sy;
        label = parse_quoted(l, p2);
      }
      Polyhedron guard = Polyhedron::universe(sp);
      IntervalUpdate update;
      while ((have_line = rd.next())) {
        if (starts_with(rd.line, "guard ")) {
          guard = parse_body(rd.line, 6, sp, false);
        } else if (starts_with(rd.line, "update ")) {
          std::string body = rd.line.substr(7);
          std::size_t start = 0;
          while (start < body.size()) {
            auto semi = body.find(';', start);
            std::string piece =
                semi == std::string::npos ? body.substr(start) : body.substr(start, semi - start);
            auto assign = piece.find(":=");
            if (assign != std::string::npos) {
              std::string var = piece.substr(0, assign);
              var.erase(0, var.find_first_not_of(" \t"));
              var.erase(var.find_last_not_of(" \t") + 1);
              auto lb = piece.find('[', assign);
              auto comma = piece.find(',', lb);
              auto rb = piece.find(']', comma);
              need(lb != std::string::npos && comma != std::string::npos && rb != std::string::npos,
                   "update interval [lo, hi]");
              update.set(sp->index_or_throw(var),
                         Interval{Rational::from_string(piece.substr(lb + 1, comma - lb - 1)),
                                  Rational::from_string(piece.substr(comma + 1, rb - comma - 1))});
            }
            if (semi == std::string::npos) break;
            start = semi + 1;
          }
        } else {
          break;
        }
      }
      edges.push_back(Edge{src, tgt, std::move(guard), std::move(update), label});
    } else {
      // "automaton", "end", "reach" and anything else structural
      have_line = rd.next();
    }
  }
  need(static_cast<bool>(sp), "a var declaration");
  return Lha(sp, std::move(locs), std::move(edges));
}

} // namespace hamon
