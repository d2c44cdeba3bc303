#include "hamon/model_json.hpp"

#include "hamon/constraint_text.hpp"
#include "hamon/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hamon {

namespace {

using nlohmann::json;

Polyhedron constraints_from_json(const json& arr, const VarSpacePtr& sp, bool derivatives,
                                 const std::string& where) {
  if (arr.is_string()) {
    if (arr.get<std::string>() == "false") return Polyhedron::empty_set(sp);
    throw ParseError(where + ": expected a constraint array or \"false\"");
  }
  if (!arr.is_array()) throw ParseError(where + ": expected a constraint array");
  std::vector<LinearConstraint> cs;
  for (const auto& item : arr) {
    if (!item.is_string()) throw ParseError(where + ": constraints are strings");
    ConstraintSyntax syn;
    syn.derivatives = derivatives;
    cs.push_back(to_linear(parse_constraint(item.get<std::string>(), *sp, syn)));
  }
  return Polyhedron::from_constraints(sp, cs);
}

json constraints_to_json(const Polyhedron& p, const VarSpace& sp, bool derivatives) {
  if (p.is_empty()) return json("false");
  json arr = json::array();
  for (const auto& c : p.constraints()) arr.push_back(print_constraint(c, sp, derivatives));
  return arr;
}

} // namespace

Lha model_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("variables") || !doc["variables"].is_array())
    throw ParseError("model file needs a \"variables\" array");
  std::vector<std::string> names;
  for (const auto& v : doc["variables"]) names.push_back(v.get<std::string>());
  auto sp = VarSpace::make(std::move(names));

  std::vector<Location> locs;
  for (const auto& jl : doc.value("locations", json::array())) {
    std::string id = jl.value("id", "");
    if (id.empty()) throw ParseError("location without an id");
    Location l{id,
               constraints_from_json(jl.value("flow", json::array()), sp, true, "flow of " + id),
               constraints_from_json(jl.value("invariant", json::array()), sp, false,
                                     "invariant of " + id),
               jl.contains("initial")
                   ? constraints_from_json(jl["initial"], sp, false, "initial of " + id)
                   : Polyhedron::empty_set(sp),
               jl.value("accepting", false)};
    locs.push_back(std::move(l));
  }

  std::vector<Edge> edges;
  for (const auto& je : doc.value("edges", json::array())) {
    Edge e{je.value("from", ""), je.value("to", ""),
           constraints_from_json(je.value("guard", json::array()), sp, false, "edge guard"),
           IntervalUpdate{}, je.value("label", "")};
    if (e.source.empty() || e.target.empty())
      throw ParseError("edge needs \"from\" and \"to\" location ids");
    if (je.contains("update")) {
      if (!je["update"].is_object()) throw ParseError("edge update must be an object");
      for (const auto& [var, iv] : je["update"].items()) {
        auto idx = sp->index(var);
        if (!idx) throw ParseError("update of unknown variable " + var);
        if (!iv.is_array() || iv.size() != 2)
          throw ParseError("update of " + var + " must be [lo, hi]");
        auto lit = [&](const json& j) {
          return j.is_string() ? Rational::from_string(j.get<std::string>())
                               : Rational::from_string(j.dump());
        };
        e.update.set(*idx, Interval{lit(iv[0]), lit(iv[1])});
      }
    }
    edges.push_back(std::move(e));
  }
  return Lha(sp, std::move(locs), std::move(edges));
}

std::string model_to_json(const Lha& m) {
  json doc;
  doc["variables"] = m.space()->names();
  doc["locations"] = json::array();
  for (const auto& l : m.locations()) {
    json jl;
    jl["id"] = l.id;
    jl["flow"] = constraints_to_json(l.flow, *m.space(), true);
    jl["invariant"] = constraints_to_json(l.invariant, *m.space(), false);
    jl["initial"] = constraints_to_json(l.initial, *m.space(), false);
    jl["accepting"] = l.accepting;
    doc["locations"].push_back(std::move(jl));
  }
  doc["edges"] = json::array();
  for (const auto& e : m.edges()) {
    json je;
    je["from"] = e.source;
    je["to"] = e.target;
    je["guard"] = constraints_to_json(e.guard, *m.space(), false);
    if (!e.update.empty()) {
      json ju = json::object();
      for (const auto& [var, iv] : e.update.entries())
        ju[m.space()->name(var)] = json::array({iv.lo.str(), iv.hi.str()});
      je["update"] = std::move(ju);
    }
    if (!e.label.empty()) je["label"] = e.label;
    doc["edges"].push_back(std::move(je));
  }
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Lha load_model_file(const std::string& path) { return model_from_json(read_text_file(path)); }

SafetySpec spec_from_json(std::string_view text, const VarSpacePtr& space) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("spec file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("atoms") || !doc["atoms"].is_array() || doc["atoms"].empty())
    throw ParseError("spec file needs a nonempty \"atoms\" array");
  SafetySpec spec;
  for (const auto& a : doc["atoms"]) {
    ConstraintSyntax syn;
    syn.allow_strict = true;
    auto pc = parse_constraint(a.get<std::string>(), *space, syn);
    spec.atoms.push_back(SafetyAtom{std::move(pc.coeffs), pc.rel, std::move(pc.bound)});
  }
  return spec;
}

SafetySpec load_spec_file(const std::string& path, const VarSpacePtr& space) {
  return spec_from_json(read_text_file(path), space);
}

} // namespace hamon
