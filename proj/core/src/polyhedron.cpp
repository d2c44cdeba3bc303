#include "hamon/polyhedron.hpp"

#include "hamon/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <sstream>
#include <utility>

// Homogeneous cone representation: a polyhedron over x_1..x_n is the slice
// y_0 = 1 of the cone over y = (y_0, x) cut out by its constraint rows and
// the implicit y_0 >= 0. Constraints and generators are kept as primitive
// integer vectors; conversion between the two systems is the Chernikova
// insertion procedure with the saturation-based adjacency test.

namespace hamon {

namespace poly_detail {

using Vec = std::vector<Rational>;

struct Row {
  Vec a;    // a . y >= 0, or a . y == 0 when eq
  bool eq;
};

struct SatSet {
  std::vector<std::uint64_t> w;

  explicit SatSet(std::size_t nbits = 0) : w((nbits + 63) / 64, 0) {}
  void set(std::size_t i) { w[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  static SatSet intersect(const SatSet& a, const SatSet& b) {
    SatSet r;
    r.w.resize(a.w.size());
    for (std::size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
    return r;
  }
  bool subset_of(const SatSet& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  bool operator==(const SatSet& o) const { return w == o.w; }
};

struct Gen {
  Vec v;
  bool line;
  SatSet sat;
};

Rational dot(const Vec& a, const Vec& b) {
  mpq_class acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].raw() * b[i].raw();
  return Rational::from_raw(std::move(acc));
}

bool is_zero_vec(const Vec& v) {
  for (const auto& c : v)
    if (c.sign() != 0) return false;
  return true;
}

// Scale to a coprime integer vector (content 1), sign preserved.
void normalize_primitive(Vec& v) {
  mpz_class l(1);
  for (const auto& c : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.raw().get_den().get_mpz_t());
  mpz_class g(0);
  std::vector<mpz_class> ints;
  ints.reserve(v.size());
  for (const auto& c : v) {
    mpz_class n = c.raw().get_num() * (l / c.raw().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(std::move(n));
  }
  if (g == 0) return; // zero vector
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = Rational::from_raw(mpq_class(ints[i] / g));
}

Vec scaled_sum(const Vec& a, const Rational& ca, const Vec& b, const Rational& cb) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = Rational::from_raw(a[i].raw() * ca.raw() + b[i].raw() * cb.raw());
  return r;
}

void flip_sign(Vec& v) {
  for (auto& c : v) c = -c;
}

// One Chernikova insertion step: restrict the generator system to the
// half-space (or hyperplane) of `row`.
void insert_row(std::vector<Gen>& gens, const Row& row, std::size_t bit, std::size_t total_bits) {
  std::vector<Rational> s(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) s[i] = dot(row.a, gens[i].v);

  int pivot = -1;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].line && s[i].sign() != 0) { pivot = static_cast<int>(i); break; }

  if (pivot >= 0) {
    Gen piv = gens[static_cast<std::size_t>(pivot)];
    Rational sp = s[static_cast<std::size_t>(pivot)];
    if (sp.sign() < 0) { flip_sign(piv.v); sp = -sp; }
    std::vector<Gen> out;
    out.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (static_cast<int>(i) == pivot) continue;
      Gen g = gens[i];
      if (s[i].sign() != 0) {
        g.v = scaled_sum(g.v, sp, piv.v, -s[i]);
        normalize_primitive(g.v);
      }
      g.sat.set(bit);
      out.push_back(std::move(g));
    }
    if (!row.eq) {
      // the pivot direction survives one-sided
      piv.line = false;
      normalize_primitive(piv.v);
      out.push_back(std::move(piv));
    }
    gens = std::move(out);
    return;
  }

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].line) continue;
    if (s[i].sign() > 0) pos.push_back(i);
    else if (s[i].sign() < 0) neg.push_back(i);
  }

  std::vector<Gen> out;
  out.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].line) {
      Gen g = gens[i];
      g.sat.set(bit);
      out.push_back(std::move(g));
      continue;
    }
    bool keep = s[i].sign() == 0 || (!row.eq && s[i].sign() > 0);
    if (!keep) continue;
    Gen g = gens[i];
    if (s[i].sign() == 0) g.sat.set(bit);
    out.push_back(std::move(g));
  }

  auto adjacent = [&](std::size_t p, std::size_t n) {
    SatSet t = SatSet::intersect(gens[p].sat, gens[n].sat);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i == p || i == n || gens[i].line) continue;
      if (t.subset_of(gens[i].sat)) return false;
    }
    return true;
  };

  for (std::size_t p : pos)
    for (std::size_t n : neg) {
      if (!adjacent(p, n)) continue;
      Gen c;
      c.v = scaled_sum(gens[p].v, -s[n], gens[n].v, s[p]);
      if (is_zero_vec(c.v)) continue;
      normalize_primitive(c.v);
      c.line = false;
      c.sat = SatSet::intersect(gens[p].sat, gens[n].sat);
      c.sat.w.resize((total_bits + 63) / 64);
      c.sat.set(bit);
      out.push_back(std::move(c));
    }
  gens = std::move(out);
}

void dedupe_and_sweep(std::vector<Gen>& gens) {
  // canonical sign for lines
  for (auto& g : gens)
    if (g.line) {
      for (const auto& c : g.v) {
        if (c.sign() > 0) break;
        if (c.sign() < 0) { flip_sign(g.v); break; }
      }
    }
  std::vector<Gen> out;
  for (auto& g : gens) {
    bool dup = false;
    for (const auto& h : out)
      if (h.line == g.line && h.v == g.v) { dup = true; break; }
    if (!dup) out.push_back(std::move(g));
  }
  // a ray whose saturation set is strictly contained in another's is not extreme
  std::vector<bool> redundant(out.size(), false);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].line) continue;
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (i == j || out[j].line) continue;
      if (out[i].sat.subset_of(out[j].sat) && !(out[i].sat == out[j].sat)) { redundant[i] = true; break; }
    }
  }
  std::vector<Gen> kept;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!redundant[i]) kept.push_back(std::move(out[i]));
  gens = std::move(kept);
}

// Double-description conversion: generators of the cone {y : rows} (with
// y_0 >= 0 when add_positivity). By polarity the same procedure converts
// generators back to a minimal constraint system.
std::vector<Gen> convert_cone(std::size_t cols, const std::vector<Row>& rows, bool add_positivity) {
  std::size_t total = rows.size() + (add_positivity ? 1 : 0);
  std::vector<Gen> gens;
  gens.reserve(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    Gen g;
    g.v.assign(cols, Rational(0));
    g.v[i] = Rational(1);
    g.line = true;
    g.sat = SatSet(total);
    gens.push_back(std::move(g));
  }
  std::size_t bit = 0;
  if (add_positivity) {
    Row e0;
    e0.a.assign(cols, Rational(0));
    e0.a[0] = Rational(1);
    e0.eq = false;
    insert_row(gens, e0, bit++, total);
  }
  for (const auto& r : rows) insert_row(gens, r, bit++, total);
  dedupe_and_sweep(gens);
  return gens;
}

struct CGen {
  Vec v;
  bool line;
};

bool has_point(const std::vector<CGen>& gens) {
  for (const auto& g : gens)
    if (!g.line && g.v[0].sign() > 0) return true;
  return false;
}

bool has_point(const std::vector<Gen>& gens) {
  for (const auto& g : gens)
    if (!g.line && g.v[0].sign() > 0) return true;
  return false;
}

Row homogenize(const LinearConstraint& c) {
  Row r;
  r.a.resize(c.coeffs.size() + 1);
  switch (c.rel) {
    case Rel::le: // b - a.x >= 0
      r.a[0] = c.bound;
      for (std::size_t i = 0; i < c.coeffs.size(); ++i) r.a[i + 1] = -c.coeffs[i];
      r.eq = false;
      break;
    case Rel::ge: // a.x - b >= 0
      r.a[0] = -c.bound;
      for (std::size_t i = 0; i < c.coeffs.size(); ++i) r.a[i + 1] = c.coeffs[i];
      r.eq = false;
      break;
    case Rel::eq:
      r.a[0] = -c.bound;
      for (std::size_t i = 0; i < c.coeffs.size(); ++i) r.a[i + 1] = c.coeffs[i];
      r.eq = true;
      break;
  }
  normalize_primitive(r.a);
  return r;
}

bool is_positivity_row(const Row& r) {
  if (r.eq) return false;
  if (r.a[0].sign() <= 0) return false;
  for (std::size_t i = 1; i < r.a.size(); ++i)
    if (r.a[i].sign() != 0) return false;
  return true;
}

LinearConstraint dehomogenize(const Row& r) {
  // r: a0 + a.x >= 0 (or == 0); present with a positive leading coefficient
  LinearConstraint c;
  c.coeffs.assign(r.a.begin() + 1, r.a.end());
  c.bound = -r.a[0];
  int lead = 0;
  for (const auto& x : c.coeffs) {
    if (x.sign() != 0) { lead = x.sign(); break; }
  }
  if (r.eq) {
    if (lead < 0) {
      for (auto& x : c.coeffs) x = -x;
      c.bound = -c.bound;
    }
    c.rel = Rel::eq;
    return c;
  }
  if (lead < 0) {
    for (auto& x : c.coeffs) x = -x;
    c.bound = -c.bound;
    c.rel = Rel::le;
  } else {
    c.rel = Rel::ge;
  }
  return c;
}

} // namespace poly_detail

using namespace poly_detail;

struct PolyhedronImpl {
  VarSpacePtr space;
  std::vector<Row> rows;  // minimal cone constraints (may include the y0 facet)
  std::vector<CGen> gens; // minimal cone generators; empty iff polyhedron empty
  bool empty = false;
};

namespace {

std::vector<CGen> strip_sat(std::vector<Gen> gens) {
  std::vector<CGen> out;
  out.reserve(gens.size());
  for (auto& g : gens) out.push_back(CGen{std::move(g.v), g.line});
  return out;
}

std::vector<Row> gens_as_rows(const std::vector<CGen>& gens) {
  std::vector<Row> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(Row{g.v, g.line});
  return rows;
}

std::shared_ptr<const PolyhedronImpl> make_empty_impl(VarSpacePtr space) {
  auto impl = std::make_shared<PolyhedronImpl>();
  impl->space = std::move(space);
  impl->empty = true;
  return impl;
}

// gens -> minimal constraint rows of the cone, via the polar cone.
std::vector<Row> dual_rows(std::size_t cols, const std::vector<CGen>& gens) {
  auto polar = convert_cone(cols, gens_as_rows(gens), false);
  std::vector<Row> rows;
  rows.reserve(polar.size());
  for (auto& g : polar) rows.push_back(Row{std::move(g.v), g.line});
  return rows;
}

std::shared_ptr<const PolyhedronImpl> build_from_rows(VarSpacePtr space, std::vector<Row> rows) {
  std::size_t cols = space->dim() + 1;
  auto gens = convert_cone(cols, rows, true);
  if (!has_point(gens)) return make_empty_impl(std::move(space));
  auto impl = std::make_shared<PolyhedronImpl>();
  impl->space = std::move(space);
  impl->gens = strip_sat(std::move(gens));
  impl->rows = dual_rows(cols, impl->gens);
  return impl;
}

std::shared_ptr<const PolyhedronImpl> build_from_gens(VarSpacePtr space, const std::vector<CGen>& gens) {
  if (!has_point(gens)) return make_empty_impl(std::move(space));
  std::size_t cols = space->dim() + 1;
  auto impl = std::make_shared<PolyhedronImpl>();
  impl->space = std::move(space);
  impl->rows = dual_rows(cols, gens);
  impl->gens = strip_sat(convert_cone(cols, impl->rows, true));
  assert(has_point(impl->gens));
  return impl;
}

void check_same_space(const Polyhedron& p, const Polyhedron& q) {
  if (!same_space(p.space(), q.space()))
    throw DimensionError("polyhedra over different variable spaces");
}

} // namespace

Polyhedron Polyhedron::universe(VarSpacePtr space) {
  return from_constraints(std::move(space), {});
}

Polyhedron Polyhedron::empty_set(VarSpacePtr space) {
  return Polyhedron(make_empty_impl(std::move(space)));
}

Polyhedron Polyhedron::from_constraints(VarSpacePtr space, const std::vector<LinearConstraint>& cs) {
  std::vector<Row> rows;
  rows.reserve(cs.size());
  for (const auto& c : cs) {
    if (c.coeffs.size() != space->dim())
      throw DimensionError("constraint dimension does not match variable space");
    rows.push_back(homogenize(c));
  }
  return Polyhedron(build_from_rows(std::move(space), std::move(rows)));
}

Polyhedron Polyhedron::from_generators(VarSpacePtr space,
                                       const std::vector<std::vector<Rational>>& points,
                                       const std::vector<std::vector<Rational>>& rays,
                                       const std::vector<std::vector<Rational>>& lines) {
  if (points.empty()) return empty_set(std::move(space));
  std::vector<CGen> gens;
  auto add = [&](const std::vector<Rational>& v, const Rational& hom, bool line) {
    if (v.size() != space->dim()) throw DimensionError("generator dimension mismatch");
    CGen g;
    g.v.resize(space->dim() + 1);
    g.v[0] = hom;
    for (std::size_t i = 0; i < v.size(); ++i) g.v[i + 1] = v[i];
    if (!line && is_zero_vec(g.v)) return;
    if (line && is_zero_vec(g.v)) return;
    normalize_primitive(g.v);
    g.line = line;
    gens.push_back(std::move(g));
  };
  for (const auto& p : points) add(p, Rational(1), false);
  for (const auto& r : rays) add(r, Rational(0), false);
  for (const auto& l : lines) add(l, Rational(0), true);
  return Polyhedron(build_from_gens(std::move(space), gens));
}

const VarSpacePtr& Polyhedron::space() const { return impl_->space; }
std::size_t Polyhedron::dim() const { return impl_->space->dim(); }
bool Polyhedron::is_empty() const { return impl_->empty; }

bool Polyhedron::is_universe() const {
  if (impl_->empty) return false;
  for (const auto& r : impl_->rows)
    if (!is_positivity_row(r)) return false;
  return true;
}

std::vector<LinearConstraint> Polyhedron::constraints() const {
  std::vector<LinearConstraint> out;
  if (impl_->empty) {
    LinearConstraint c;
    c.coeffs.assign(dim(), Rational(0));
    c.rel = Rel::le;
    c.bound = Rational(-1);
    out.push_back(std::move(c));
    return out;
  }
  for (const auto& r : impl_->rows) {
    if (is_positivity_row(r)) continue;
    out.push_back(dehomogenize(r));
  }
  return out;
}

std::vector<std::vector<Rational>> Polyhedron::points() const {
  std::vector<std::vector<Rational>> out;
  for (const auto& g : impl_->gens) {
    if (g.line || g.v[0].sign() <= 0) continue;
    std::vector<Rational> p(dim());
    for (std::size_t i = 0; i < dim(); ++i) p[i] = g.v[i + 1] / g.v[0];
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<Rational>> Polyhedron::rays() const {
  std::vector<std::vector<Rational>> out;
  for (const auto& g : impl_->gens) {
    if (g.line || g.v[0].sign() != 0) continue;
    out.emplace_back(g.v.begin() + 1, g.v.end());
  }
  return out;
}

std::vector<std::vector<Rational>> Polyhedron::lines() const {
  std::vector<std::vector<Rational>> out;
  for (const auto& g : impl_->gens) {
    if (!g.line) continue;
    out.emplace_back(g.v.begin() + 1, g.v.end());
  }
  return out;
}

bool Polyhedron::contains(const std::vector<Rational>& point) const {
  if (point.size() != dim()) throw DimensionError("point dimension mismatch");
  if (impl_->empty) return false;
  Vec y(dim() + 1);
  y[0] = Rational(1);
  for (std::size_t i = 0; i < dim(); ++i) y[i + 1] = point[i];
  for (const auto& r : impl_->rows) {
    Rational d = dot(r.a, y);
    if (r.eq ? d.sign() != 0 : d.sign() < 0) return false;
  }
  return true;
}

Polyhedron Polyhedron::embedded(const VarSpacePtr& bigger) const {
  std::vector<std::size_t> map(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    map[i] = bigger->index_or_throw(impl_->space->name(i));
  if (impl_->empty) return empty_set(bigger);
  std::vector<Row> rows;
  rows.reserve(impl_->rows.size());
  for (const auto& r : impl_->rows) {
    Row nr;
    nr.a.assign(bigger->dim() + 1, Rational(0));
    nr.a[0] = r.a[0];
    for (std::size_t i = 0; i < dim(); ++i) nr.a[map[i] + 1] = r.a[i + 1];
    nr.eq = r.eq;
    rows.push_back(std::move(nr));
  }
  return Polyhedron(build_from_rows(bigger, std::move(rows)));
}

std::string Polyhedron::str() const {
  if (impl_->empty) return "false";
  auto cs = constraints();
  if (cs.empty()) return "true";
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (k) os << ", ";
    const auto& c = cs[k];
    bool first = true;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
      if (c.coeffs[i].sign() == 0) continue;
      Rational a = c.coeffs[i];
      if (first) {
        if (a == Rational(-1)) os << "-";
        else if (a != Rational(1)) os << a.str() << "*";
      } else {
        os << (a.sign() < 0 ? " - " : " + ");
        Rational m = abs(a);
        if (m != Rational(1)) os << m.str() << "*";
      }
      os << impl_->space->name(i);
      first = false;
    }
    if (first) os << "0";
    os << " " << rel_text(c.rel) << " " << c.bound.str();
  }
  os << "}";
  return os.str();
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  check_same_space(p, q);
  if (p.is_empty()) return p;
  if (q.is_empty()) return q;
  std::vector<Row> rows = p.impl_->rows;
  rows.insert(rows.end(), q.impl_->rows.begin(), q.impl_->rows.end());
  return Polyhedron(build_from_rows(p.space(), std::move(rows)));
}

Polyhedron time_elapse(const Polyhedron& p, const Polyhedron& flow) {
  check_same_space(p, flow);
  if (flow.is_empty()) throw DomainError("time_elapse with empty flow");
  if (p.is_empty()) return p;
  std::vector<CGen> gens = p.impl_->gens;
  for (const auto& g : flow.impl_->gens) {
    CGen c = g;
    c.v[0] = Rational(0); // points of the flow act as recession directions
    if (is_zero_vec(c.v)) continue;
    normalize_primitive(c.v);
    gens.push_back(std::move(c));
  }
  return Polyhedron(build_from_gens(p.space(), gens));
}

Polyhedron time_elapse(const Polyhedron& p, const Polyhedron& flow, const Rational& bound,
                       std::size_t clock_var) {
  check_same_space(p, flow);
  if (flow.is_empty()) throw DomainError("time_elapse with empty flow");
  if (bound.sign() < 0) throw DomainError("negative elapse bound");
  if (clock_var >= p.dim()) throw DimensionError("clock variable out of range");
  // the clock must advance at rate exactly 1 in every flow vector
  for (const auto& g : flow.impl_->gens) {
    const Rational& rate = g.v[clock_var + 1];
    bool ok = g.line           ? rate.sign() == 0
              : g.v[0].sign() > 0 ? rate == g.v[0]
                                  : rate.sign() == 0;
    if (!ok) throw DomainError("bounded elapse requires clock derivative fixed to 1");
  }
  if (p.is_empty()) return p;

  // truncated displacement cone {s*f : f in flow, 0 <= s <= bound}
  std::vector<CGen> cone;
  cone.push_back(CGen{Vec(p.dim() + 1, Rational(0)), false});
  cone.back().v[0] = Rational(1); // origin
  for (const auto& g : flow.impl_->gens) {
    CGen c = g;
    c.v[0] = Rational(0);
    if (is_zero_vec(c.v)) continue;
    normalize_primitive(c.v);
    cone.push_back(std::move(c));
  }
  auto disp = Polyhedron(build_from_gens(p.space(), cone));
  std::vector<Rational> coeffs(p.dim(), Rational(0));
  coeffs[clock_var] = Rational(1);
  auto capped = intersect(disp, Polyhedron::from_constraints(
                                    p.space(), {make_constraint(coeffs, Rel::le, bound)}));

  // Minkowski sum p + capped
  std::vector<CGen> gens;
  for (const auto& a : p.impl_->gens) {
    if (a.line || a.v[0].sign() == 0) continue;
    for (const auto& b : capped.impl_->gens) {
      if (b.line || b.v[0].sign() == 0) continue;
      CGen c;
      c.v = scaled_sum(a.v, b.v[0], b.v, a.v[0]);
      c.v[0] = a.v[0] * b.v[0];
      normalize_primitive(c.v);
      c.line = false;
      gens.push_back(std::move(c));
    }
  }
  auto add_homogeneous = [&](const std::vector<CGen>& src) {
    for (const auto& g : src) {
      if (!g.line && g.v[0].sign() > 0) continue;
      gens.push_back(g);
    }
  };
  add_homogeneous(p.impl_->gens);
  add_homogeneous(capped.impl_->gens);
  return Polyhedron(build_from_gens(p.space(), gens));
}

Polyhedron eliminate(const Polyhedron& p, const std::vector<std::size_t>& vars) {
  for (auto v : vars)
    if (v >= p.dim()) throw DimensionError("eliminate: variable out of range");
  std::vector<bool> drop(p.dim(), false);
  for (auto v : vars) drop[v] = true;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (!drop[i]) names.push_back(p.space()->name(i));
  auto sub = VarSpace::make(std::move(names));
  if (p.is_empty()) return Polyhedron::empty_set(sub);
  std::vector<CGen> gens;
  for (const auto& g : p.impl_->gens) {
    CGen c;
    c.v.push_back(g.v[0]);
    for (std::size_t i = 0; i < p.dim(); ++i)
      if (!drop[i]) c.v.push_back(g.v[i + 1]);
    if (is_zero_vec(c.v)) continue;
    normalize_primitive(c.v);
    c.line = g.line;
    gens.push_back(std::move(c));
  }
  return Polyhedron(build_from_gens(sub, gens));
}

Polyhedron eliminate(const Polyhedron& p, const std::vector<std::string>& vars) {
  std::vector<std::size_t> idx;
  idx.reserve(vars.size());
  for (const auto& n : vars) idx.push_back(p.space()->index_or_throw(n));
  return eliminate(p, idx);
}

Polyhedron unconstrain(const Polyhedron& p, const std::vector<std::size_t>& vars) {
  for (auto v : vars)
    if (v >= p.dim()) throw DimensionError("unconstrain: variable out of range");
  if (p.is_empty() || vars.empty()) return p;
  std::vector<CGen> gens = p.impl_->gens;
  for (auto v : vars) {
    CGen g;
    g.v.assign(p.dim() + 1, Rational(0));
    g.v[v + 1] = Rational(1);
    g.line = true;
    gens.push_back(std::move(g));
  }
  return Polyhedron(build_from_gens(p.space(), gens));
}

Polyhedron apply_update(const Polyhedron& p, const IntervalUpdate& update) {
  if (update.empty() || p.is_empty()) return p;
  std::vector<std::size_t> vars;
  std::vector<LinearConstraint> box;
  for (const auto& [v, iv] : update.entries()) {
    if (v >= p.dim()) throw DimensionError("update variable out of range");
    vars.push_back(v);
    std::vector<Rational> coeffs(p.dim(), Rational(0));
    coeffs[v] = Rational(1);
    if (iv.lo == iv.hi) {
      box.push_back(make_constraint(coeffs, Rel::eq, iv.lo));
    } else {
      box.push_back(make_constraint(coeffs, Rel::ge, iv.lo));
      box.push_back(make_constraint(coeffs, Rel::le, iv.hi));
    }
  }
  return intersect(unconstrain(p, vars), Polyhedron::from_constraints(p.space(), box));
}

bool includes(const Polyhedron& p, const Polyhedron& q) {
  check_same_space(p, q);
  if (q.is_empty()) return true;
  if (p.is_empty()) return false;
  for (const auto& g : q.impl_->gens) {
    for (const auto& r : p.impl_->rows) {
      Rational d = dot(r.a, g.v);
      bool ok = (r.eq || g.line) ? d.sign() == 0 : d.sign() >= 0;
      if (!ok) return false;
    }
  }
  return true;
}

bool equals(const Polyhedron& p, const Polyhedron& q) {
  return includes(p, q) && includes(q, p);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin feasibility with strict inequalities; used for exact
// set-difference emptiness (union coverage, merge exactness) and as an
// independent emptiness decision.

namespace {

enum class FRel { ge, gt, eq };

struct FRow {
  Vec a;
  FRel rel;
};

// returns false as soon as infeasibility is certain
bool fm_simplify(std::vector<FRow>& rows) {
  std::vector<FRow> out;
  for (auto& r : rows) {
    normalize_primitive(r.a);
    if (is_zero_vec(r.a)) {
      if (r.rel == FRel::gt) return false;
      continue;
    }
    bool dup = false;
    for (auto& o : out) {
      if (o.a == r.a && o.rel == r.rel) { dup = true; break; }
      if (o.a == r.a && o.rel == FRel::ge && r.rel == FRel::gt) { o.rel = FRel::gt; dup = true; break; }
      if (o.a == r.a && o.rel == FRel::gt && r.rel == FRel::ge) { dup = true; break; }
    }
    if (!dup) out.push_back(std::move(r));
  }
  rows = std::move(out);
  return true;
}

bool fm_feasible(std::vector<FRow> rows, std::size_t cols) {
  if (!fm_simplify(rows)) return false;
  for (std::size_t col = cols - 1; col >= 1; --col) {
    int pivot = -1;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].rel == FRel::eq && rows[i].a[col].sign() != 0) { pivot = static_cast<int>(i); break; }
    std::vector<FRow> next;
    if (pivot >= 0) {
      FRow p = rows[static_cast<std::size_t>(pivot)];
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        FRow r = rows[i];
        if (r.a[col].sign() != 0) {
          // r := r - (r_col / p_col) * p ; scaling r by 1 keeps its relation
          Rational f = r.a[col] / p.a[col];
          r.a = scaled_sum(r.a, Rational(1), p.a, -f);
        }
        next.push_back(std::move(r));
      }
    } else {
      std::vector<std::size_t> pos, neg;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].a[col].sign() > 0) pos.push_back(i);
        else if (rows[i].a[col].sign() < 0) neg.push_back(i);
        else next.push_back(rows[i]);
      }
      // only inequality rows can appear in pos/neg: an eq row with a nonzero
      // coefficient on col would have been chosen as pivot above
      for (auto pi : pos)
        for (auto ni : neg) {
          FRow c;
          c.a = scaled_sum(rows[pi].a, -rows[ni].a[col], rows[ni].a, rows[pi].a[col]);
          c.rel = (rows[pi].rel == FRel::gt || rows[ni].rel == FRel::gt) ? FRel::gt : FRel::ge;
          next.push_back(std::move(c));
        }
    }
    rows = std::move(next);
    if (!fm_simplify(rows)) return false;
  }
  for (const auto& r : rows) {
    int s = r.a[0].sign();
    bool ok = r.rel == FRel::ge ? s >= 0 : r.rel == FRel::gt ? s > 0 : s == 0;
    if (!ok) return false;
  }
  return true;
}

std::vector<FRow> rows_to_frows(const std::vector<Row>& rows) {
  std::vector<FRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(FRow{r.a, r.eq ? FRel::eq : FRel::ge});
  return out;
}

FRow strict_positivity(std::size_t cols) {
  FRow r;
  r.a.assign(cols, Rational(0));
  r.a[0] = Rational(1);
  r.rel = FRel::gt;
  return r;
}

bool covered_rec(const std::vector<FRow>& sys, std::size_t cols,
                 std::span<const Polyhedron> cover, std::size_t idx,
                 const std::vector<std::vector<Row>>& cover_rows) {
  if (!fm_feasible(sys, cols)) return true;
  if (idx == cover.size()) return false;
  for (const auto& c : cover_rows[idx]) {
    auto branch = [&](Vec negated) {
      std::vector<FRow> sub = sys;
      sub.push_back(FRow{std::move(negated), FRel::gt});
      return covered_rec(sub, cols, cover, idx + 1, cover_rows);
    };
    if (c.eq) {
      Vec a = c.a;
      if (!branch(a)) return false;
      Vec b = c.a;
      flip_sign(b);
      if (!branch(b)) return false;
    } else {
      Vec b = c.a;
      flip_sign(b);
      if (!branch(b)) return false;
    }
  }
  return true;
}

} // namespace

bool union_includes(std::span<const Polyhedron> cover, const Polyhedron& p) {
  if (p.is_empty()) return true;
  std::vector<const Polyhedron*> live;
  for (const auto& q : cover) {
    if (!same_space(q.space(), p.space()))
      throw DimensionError("union_includes: space mismatch");
    if (q.is_empty()) continue;
    if (includes(q, p)) return true;
    live.push_back(&q);
  }
  if (live.empty()) return false;
  std::size_t cols = p.dim() + 1;
  std::vector<FRow> sys = rows_to_frows(p.impl_->rows);
  sys.push_back(strict_positivity(cols));
  std::vector<Polyhedron> pack;
  pack.reserve(live.size());
  for (auto* q : live) pack.push_back(*q);
  std::vector<std::vector<Row>> cover_rows;
  cover_rows.reserve(pack.size());
  for (const auto& q : pack) cover_rows.push_back(q.impl_->rows);
  return covered_rec(sys, cols, pack, 0, cover_rows);
}

std::optional<Polyhedron> merge_if_convex(const Polyhedron& p, const Polyhedron& q) {
  check_same_space(p, q);
  if (p.is_empty()) return q;
  if (q.is_empty()) return p;
  if (includes(p, q)) return p;
  if (includes(q, p)) return q;
  std::vector<CGen> gens = p.impl_->gens;
  gens.insert(gens.end(), q.impl_->gens.begin(), q.impl_->gens.end());
  Polyhedron hull(build_from_gens(p.space(), gens));
  std::vector<Polyhedron> cover{p, q};
  if (union_includes(cover, hull)) return hull;
  return std::nullopt;
}

bool constraints_feasible(const VarSpacePtr& space, const std::vector<LinearConstraint>& cs) {
  std::size_t cols = space->dim() + 1;
  std::vector<FRow> rows;
  rows.reserve(cs.size() + 1);
  for (const auto& c : cs) {
    if (c.coeffs.size() != space->dim())
      throw DimensionError("constraint dimension does not match variable space");
    Row r = homogenize(c);
    rows.push_back(FRow{std::move(r.a), r.eq ? FRel::eq : FRel::ge});
  }
  rows.push_back(strict_positivity(cols));
  return fm_feasible(std::move(rows), cols);
}

} // namespace hamon
