#include "satwork/io.hpp"

#include <fstream>

#include "satwork/families.hpp"
#include "satwork/parser.hpp"

namespace satwork {

namespace fs = std::filesystem;

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Value to_value(const Json& j) {
  if (j.is_number_unsigned()) return j.get<Value>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<Value>(j.get<std::int64_t>());
  throw InputError("expected a natural number, got " + j.dump());
}

BigNat to_bignat(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_bignat(j.get<std::string>());
    } catch (const Error&) {
      throw InputError("expected decimal digits, got " + j.dump());
    }
  }
  return BigNat(to_value(j));
}

std::vector<Value> values(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
  std::vector<Value> out;
  for (const auto& x : j) out.push_back(to_value(x));
  return out;
}

std::vector<Formula> formulas(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of formulas");
  std::vector<Formula> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw InputError("formulas are given as strings");
    out.push_back(parse_formula(x.get<std::string>()));
  }
  return out;
}

// "v1" or "p^5".
VarSeq block(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of block variables");
  VarSeq out;
  for (const auto& x : j) {
    if (!x.is_string()) throw InputError("block variables are given as strings");
    std::string s = x.get<std::string>();
    std::uint64_t count = 1;
    if (auto hat = s.find('^'); hat != std::string::npos) {
      try {
        count = std::stoull(s.substr(hat + 1));
      } catch (const std::exception&) {
        throw InputError("bad repetition count in " + s);
      }
      s = s.substr(0, hat);
    }
    if (count == 0) throw InputError("zero repetition count in block");
    out.push_back(parse_variable(s), count);
  }
  return out;
}

Backend backend_field(const Json& j, const fs::path& base_dir) { return structure_from_json(field(j, "backend"), base_dir); }

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  }
}

}  // namespace

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Backend structure_from_json(const Json& j, const fs::path& base_dir) {
  return guarded([&] {
    if (j.is_string()) {
      fs::path p = base_dir / j.get<std::string>();
      return structure_from_json(load_json(p), p.parent_path());
    }
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "cyclic") {
      Value m = to_value(field(j, "m"));
      if (m == 0) throw InputError("cyclic structure needs m >= 1");
      return Backend::cyclic(m);
    }
    if (kind == "bounded_nat") return Backend::bounded_nat(to_value(field(j, "bound")));
    if (kind == "tabular") {
      Tabular t;
      t.carrier = values(field(j, "carrier"));
      t.zero = to_value(field(j, "zero"));
      t.succ = values(field(j, "succ"));
      for (const auto& row : field(j, "plus")) t.plus.push_back(values(row));
      for (const auto& row : field(j, "times")) t.times.push_back(values(row));
      return Backend::tabular(std::move(t));
    }
    throw InputError("unknown structure kind \"" + kind + "\"");
  });
}

Json structure_to_json(const Backend& b) {
  Json j;
  if (auto* c = std::get_if<Cyclic>(&b.spec())) {
    j["kind"] = "cyclic";
    j["m"] = c->m;
  } else if (auto* n = std::get_if<BoundedNat>(&b.spec())) {
    j["kind"] = "bounded_nat";
    j["bound"] = n->bound;
  } else {
    const auto& t = std::get<Tabular>(b.spec());
    j["kind"] = "tabular";
    j["carrier"] = t.carrier;
    j["zero"] = t.zero;
    j["succ"] = t.succ;
    j["plus"] = t.plus;
    j["times"] = t.times;
  }
  return j;
}

Json assignment_to_json(const Assignment& a) {
  Json j = Json::object();
  for (const auto& [v, x] : a.bindings()) j[v.name()] = x;
  return j;
}

Assignment assignment_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("assignments are JSON objects");
  Assignment a;
  for (const auto& [k, v] : j.items()) a.set(parse_variable(k), to_value(v));
  return a;
}

SatClass satclass_from_json(const Json& j, const fs::path& base_dir) {
  return guarded([&] {
    Backend b = backend_field(j, base_dir);
    bool fragment = j.value("fragment", false);
    SatClass s(b, formulas(field(j, "universe")), true);
    s.set_fragment(fragment);
    for (const auto& m : field(j, "members")) {
      Formula f = parse_formula(field(m, "formula").get<std::string>());
      Assignment a = m.contains("asn") ? assignment_from_json(m.at("asn")) : Assignment{};
      if (!a.covers(f.free_vars())) throw InputError("assignment does not cover the free variables of " + print_compact(f));
      s.add(f, a);
    }
    return s;
  });
}

Json satclass_to_json(const SatClass& s) {
  Json j;
  j["backend"] = structure_to_json(s.backend());
  j["fragment"] = s.fragment();
  j["universe"] = formulas_to_json(s.universe());
  Json ms = Json::array();
  for (const auto& m : s.sorted_members()) ms.push_back({{"formula", print_compact(m.formula)}, {"asn", assignment_to_json(m.asn)}});
  j["members"] = ms;
  return j;
}

TruthClass truthclass_from_json(const Json& j, const fs::path& base_dir) {
  return guarded([&] {
    TruthClass t(backend_field(j, base_dir), formulas(field(j, "universe")));
    for (const auto& f : formulas(field(j, "members"))) t.add(f);
    return t;
  });
}

Json truthclass_to_json(const TruthClass& t) {
  Json j;
  j["backend"] = structure_to_json(t.backend());
  j["universe"] = formulas_to_json(t.universe());
  j["members"] = formulas_to_json(t.sorted_members());
  return j;
}

StepInput step_from_json(const Json& j, const fs::path& base_dir) {
  return guarded([&] {
    Backend b = backend_field(j, base_dir);
    SatClass base = j.contains("base") ? satclass_from_json(j.at("base"), base_dir) : SatClass(b, {}, true);
    StepConfig cfg{base, to_bignat(field(j, "b")), std::nullopt, {}, {}, j.value("initial_step", false), 1, 1};
    if (j.contains("a") && !j.at("a").is_null()) cfg.a = to_bignat(j.at("a"));
    if (j.contains("w_block")) cfg.w = block(j.at("w_block"));
    if (j.contains("w_prime_block")) cfg.w_prime = block(j.at("w_prime_block"));
    if (j.contains("m1")) cfg.m1 = to_value(j.at("m1"));
    if (j.contains("m2")) cfg.m2 = to_value(j.at("m2"));
    std::vector<Formula> u = j.contains("universe") ? formulas(j.at("universe")) : std::vector<Formula>{};
    return StepInput{cfg, u};
  });
}

Json formulas_to_json(const std::vector<Formula>& fs) {
  Json j = Json::array();
  for (const auto& f : fs) j.push_back(print_compact(f));
  return j;
}

Json report_to_json(const Report& r) {
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json e;
    e["clause"] = v.clause;
    e["formula"] = print_compact(v.formula);
    if (v.witness) e["asn"] = assignment_to_json(*v.witness);
    if (!v.detail.empty()) e["detail"] = v.detail;
    vs.push_back(e);
  }
  return {{"ok", r.ok()}, {"violations", vs}};
}

Json ct_report_to_json(const CtReport& r) {
  Json axioms = Json::array();
  for (const auto& a : r.axioms) {
    Report sub{a.violations};
    axioms.push_back({{"axiom", a.axiom},
                      {"name", a.name},
                      {"status", a.status},
                      {"instances", a.instances},
                      {"violations", report_to_json(sub)["violations"]}});
  }
  return {{"ok", r.ok()}, {"axioms", axioms}, {"missing", formulas_to_json(r.missing)}};
}

Json chain_state_to_json(const StepResult& r) {
  Json stages = Json::array();
  for (const auto& st : r.chain.stages) {
    Json ms = Json::array();
    for (const auto& m : st) ms.push_back({{"formula", print_compact(m.formula)}, {"asn", assignment_to_json(m.asn)}});
    stages.push_back(ms);
  }
  Json ranks = Json::array();
  for (std::size_t c = 0; c < r.universe.classes.size(); ++c) {
    ranks.push_back({{"class", formulas_to_json(r.universe.classes[c])}, {"rank", r.chain.rank[c]}});
  }
  return {{"stages", stages}, {"rank_map", ranks}};
}

}  // namespace satwork
