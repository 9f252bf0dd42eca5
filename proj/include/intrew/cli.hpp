#pragma once

// System files, command implementations and report rendering for the
// command-line front end.

#include <cstdint>
#include <deque>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "intrew/suites.hpp"

namespace intrew::cli {

using Json = nlohmann::ordered_json;

enum Exit : int { Pass = 0, InputError = 1, VerificationFailure = 2, ConfluenceFailure = 3, InternalFailure = 4 };

inline int exit_for(Errc code) {
  switch (code) {
    case Errc::VerificationFailed:
    case Errc::InvalidLc: return VerificationFailure;
    case Errc::NotConfluent: return ConfluenceFailure;
    case Errc::InternalConsistency: return InternalFailure;
    default: return InputError;
  }
}

struct RuleSpec {
  std::string id;
  std::string lhs;
  std::string rhs;  // a label for sets, a combination of basis labels otherwise
};

struct SystemSpec {
  std::string name;
  Kind kind = Kind::Set;
  std::vector<std::string> labels;
  std::vector<RuleSpec> rules;
  std::optional<std::map<std::string, long long>> order;
  std::optional<std::vector<std::vector<std::string>>> filtration;
  std::optional<std::map<std::string, std::string>> strategy;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string text(const Json& j, const std::string& what) {
  if (!j.is_string()) throw Error(Errc::ParseError, what + " must be a string");
  return j.get<std::string>();
}

inline std::vector<std::string> labels(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(Errc::ParseError, what + " must be a list of labels");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(text(x, what));
  return out;
}

/// {"x": "3/2", "1": "-1"} as "3/2*x + -1*1"; coefficients stay exact strings.
inline std::string combination(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_object()) throw Error(Errc::ParseError, "rhs must be a string or an object of coefficients");
  std::string out;
  for (const auto& [label, c] : j.items()) {
    Rational q = parse_rational(text(c, "coefficient of " + label));
    if (!out.empty()) out += " + ";
    out += to_string(q) + "*" + label;
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

inline SystemSpec parse_system(const Json& j, std::string name = {}) {
  if (!j.is_object()) throw Error(Errc::ParseError, "a system is a JSON object");
  SystemSpec s;
  s.name = j.contains("name") ? detail::text(j.at("name"), "name") : std::move(name);
  std::string kind = detail::text(detail::field(j, "kind"), "kind");
  if (kind == "set") {
    s.kind = Kind::Set;
    s.labels = detail::labels(detail::field(j, "elements"), "elements");
  } else if (kind == "linear") {
    s.kind = Kind::Vect;
    s.labels = detail::labels(detail::field(j, "basis"), "basis");
  } else {
    throw Error(Errc::ParseError, "kind must be 'set' or 'linear'");
  }
  const Json& rules = detail::field(j, "rules");
  if (!rules.is_array()) throw Error(Errc::ParseError, "rules must be a list");
  for (const auto& r : rules) {
    RuleSpec rs{detail::text(detail::field(r, "id"), "rule id"), detail::text(detail::field(r, "lhs"), "lhs"), {}};
    rs.rhs = s.kind == Kind::Set ? detail::text(detail::field(r, "rhs"), "rhs") : detail::combination(detail::field(r, "rhs"));
    s.rules.push_back(std::move(rs));
  }
  if (j.contains("order")) {
    const Json& o = j.at("order");
    if (!o.is_object()) throw Error(Errc::ParseError, "order maps labels to integer ranks");
    std::map<std::string, long long> m;
    for (const auto& [label, v] : o.items()) {
      if (!v.is_number_integer()) throw Error(Errc::ParseError, "rank of " + label + " must be an integer");
      m[label] = v.get<long long>();
    }
    s.order = std::move(m);
  }
  if (j.contains("filtration")) {
    const Json& f = j.at("filtration");
    if (!f.is_array()) throw Error(Errc::ParseError, "filtration is a list of stages");
    std::vector<std::vector<std::string>> stages;
    for (const auto& st : f) stages.push_back(detail::labels(st, "stage"));
    s.filtration = std::move(stages);
  }
  if (j.contains("strategy")) {
    const Json& h = j.at("strategy");
    if (!h.is_object()) throw Error(Errc::ParseError, "strategy maps labels to rule ids");
    std::map<std::string, std::string> m;
    for (const auto& [label, v] : h.items()) m[label] = detail::text(v, "strategy choice at " + label);
    s.strategy = std::move(m);
  }
  return s;
}

inline SystemSpec load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, std::string("malformed JSON: ") + e.what());
  }
  std::string stem = path.substr(path.find_last_of('/') + 1);
  return parse_system(j, stem.substr(0, stem.rfind('.')));
}

/// A parsed system resolved against its carrier, with its local strategy.
struct System {
  SystemSpec spec;
  CarrierObject base;
  InternalGraph graph;
  std::optional<SetRelation> set;
  std::optional<AlgebraicRelation> linear;
};

namespace detail {

inline std::size_t index_in(const CarrierObject& e, const std::string& label, const std::string& where) {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e.label(i) == label) return i;
  throw Error(Errc::ParseError, where + ": unknown label '" + label + "'", label);
}

inline std::size_t rule_index(const System& s, const std::string& id) {
  for (std::size_t k = 0; k < s.spec.rules.size(); ++k)
    if (s.spec.rules[k].id == id) return k;
  throw Error(Errc::ParseError, "strategy names unknown rule '" + id + "'", id);
}

}  // namespace detail

inline System resolve(SystemSpec spec) {
  System s{std::move(spec), {}, {}, {}, {}};
  const SystemSpec& sp = s.spec;
  std::set<std::string> ids;
  for (const auto& r : sp.rules)
    if (!ids.insert(r.id).second) throw Error(Errc::ParseError, "duplicate rule id '" + r.id + "'", r.id);
  if (sp.kind == Kind::Set) {
    s.base = CarrierObject::set(sp.labels);
    SetRelation rel{s.base, {}};
    for (const auto& r : sp.rules)
      rel.rules.push_back({r.id, detail::index_in(s.base, r.lhs, r.id), detail::index_in(s.base, r.rhs, r.id)});
    if (sp.order)
      for (const auto& r : rel.rules) {
        long long a = sp.order->count(sp.labels[r.source]) ? sp.order->at(sp.labels[r.source]) : 0;
        long long b = sp.order->count(sp.labels[r.target]) ? sp.order->at(sp.labels[r.target]) : 0;
        if (b >= a) throw Error(Errc::NotDecreasing, "rule " + r.id + " does not decrease the order", r.id);
      }
    s.graph = rel.graph();
    s.set = std::move(rel);
  } else {
    s.base = CarrierObject::vect(sp.labels);
    std::vector<AlgebraicRule> rules;
    for (const auto& r : sp.rules)
      rules.push_back({r.id, detail::index_in(s.base, r.lhs, r.id), parse_element(s.base, r.rhs).coords()});
    std::optional<std::vector<long long>> rank;
    if (sp.order) {
      rank.emplace();
      for (const auto& l : sp.labels) {
        if (!sp.order->count(l)) throw Error(Errc::ParseError, "order misses basis label '" + l + "'", l);
        rank->push_back(sp.order->at(l));
      }
    }
    s.linear = AlgebraicRelation::make(s.base, std::move(rules), std::move(rank));
    require_decreasing(*s.linear);
    s.graph = s.linear->graph();
  }
  return s;
}

/// The supplied filtration and choices where present; the builders otherwise.
inline LocalStrategy local_strategy(const System& s) {
  const SystemSpec& sp = s.spec;
  if (!sp.filtration && !sp.strategy)
    return s.set ? strategy_from_set_relation(*s.set) : strategy_from_algebraic_relation(*s.linear);
  Filtration f;
  if (sp.filtration) {
    std::vector<std::vector<std::size_t>> stages;
    for (const auto& st : *sp.filtration) {
      stages.emplace_back();
      for (const auto& l : st) stages.back().push_back(detail::index_in(s.base, l, "filtration"));
    }
    if (stages.empty()) throw Error(Errc::InvalidFiltration, "a filtration needs at least one stage");
    f = filtration_from_stages(DirectedPoset::nat_prefix(stages.size()), s.base, stages);
  } else {
    f = s.set ? filtration_from_terminating_relation(*s.set) : filtration_from_height(*s.linear);
  }
  std::vector<std::optional<std::size_t>> choice(s.base.size());
  if (sp.strategy) {
    for (const auto& [label, id] : *sp.strategy) choice[detail::index_in(s.base, label, "strategy")] = detail::rule_index(s, id);
  } else {
    // First declared rule whose right-hand side lies strictly lower.
    for (std::size_t x = 0; x < s.base.size(); ++x) {
      std::size_t sx = f.stage_of(s.base.generator(x));
      for (std::size_t k = 0; k < sp.rules.size() && !choice[x]; ++k) {
        if (s.graph.src().image(k) != s.base.generator(x)) continue;
        if (f.stage_of(s.graph.tgt().image(k)) < sx) choice[x] = k;
      }
    }
  }
  return strategy_from_choice(s.graph, std::move(f), choice);
}

struct Outcome {
  int code = Pass;
  std::string text;
};

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline std::string kind_name(Kind k) { return k == Kind::Set ? "set" : "linear"; }

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string rstrip(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

inline Json report_json(const Report& rep) {
  Json a = Json::array();
  for (const auto& c : rep.checks) {
    Json o;
    o["name"] = c.name;
    o["passed"] = c.passed;
    o["witness"] = c.witness;
    a.push_back(o);
  }
  return a;
}

inline std::string report_table(const Report& rep) {
  std::string out = pad("check", 16) + pad("result", 8) + "witness\n";
  for (const auto& c : rep.checks) out += rstrip(pad(c.name, 16) + pad(c.passed ? "pass" : "FAIL", 8) + c.witness) + "\n";
  return out;
}

inline Outcome error_outcome(const std::string& command, const Error& e, bool json) {
  Outcome o{exit_for(e.code()), {}};
  if (json) {
    Json j;
    j["command"] = command;
    j["result"] = "error";
    j["error"] = std::string(errc_name(e.code()));
    j["message"] = e.what();
    j["witness"] = e.witness();
    o.text = dump(j);
  } else {
    o.text = std::string("error: ") + e.what() + "\n";
    if (!e.witness().empty()) o.text += "witness: " + e.witness() + "\n";
  }
  return o;
}

template <typename F>
Outcome guarded(const std::string& command, bool json, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return error_outcome(command, e, json);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline Outcome cmd_check(const std::string& path, bool json) {
  return detail::guarded("check", json, [&] {
    System s = resolve(load_system(path));
    Report rep;
    try {
      rep = verify_local_strategy(local_strategy(s));
    } catch (const Error& e) {
      if (e.code() != Errc::VerificationFailed) throw;
      rep.add("TG4", false, e.witness(), e.what());
    }
    Outcome o{rep.passed() ? Pass : VerificationFailure, {}};
    if (json) {
      Json j;
      j["command"] = "check";
      j["system"] = s.spec.name;
      j["kind"] = detail::kind_name(s.spec.kind);
      j["result"] = rep.passed() ? "pass" : "fail";
      j["checks"] = detail::report_json(rep);
      o.text = detail::dump(j);
    } else {
      o.text = "system " + s.spec.name + " (" + detail::kind_name(s.spec.kind) + ")\n" + detail::report_table(rep) +
               "result: " + (rep.passed() ? "pass" : "fail") + "\n";
    }
    return o;
  });
}

namespace detail {

/// Normal forms reachable from x along the rules, by breadth-first search.
inline std::set<std::size_t> reachable_normal_forms(const System& s, std::size_t x) {
  std::vector<std::vector<std::size_t>> next(s.base.size());
  for (const auto& r : s.set->rules) next[r.source].push_back(r.target);
  std::set<std::size_t> seen{x}, out;
  std::deque<std::size_t> queue{x};
  while (!queue.empty()) {
    std::size_t y = queue.front();
    queue.pop_front();
    if (next[y].empty()) out.insert(y);
    for (auto z : next[y])
      if (seen.insert(z).second) queue.push_back(z);
  }
  return out;
}

}  // namespace detail

/// Normal form of `term` from the induced global strategy, against
/// reachability (sets) or greedy reduction (vector spaces).
inline Outcome cmd_normalize(const std::string& path, const std::string& term, bool json) {
  return detail::guarded("normalize", json, [&] {
    System s = resolve(load_system(path));
    Element u = parse_element(s.base, term);
    GlobalStrategy gs = induce_global_strategy(local_strategy(s));
    Element nf = normal_form(gs, u);
    std::string got = format_element(s.base, nf);
    std::vector<std::string> oracle;
    bool agree = false;
    bool confluent = is_confluent_strategy(gs).confluent;
    if (s.set) {
      for (auto y : detail::reachable_normal_forms(s, u.index())) {
        oracle.push_back(s.base.label(y));
        agree = agree || y == nf.index();
      }
    } else {
      Vector w = wf_normalize(*s.linear, u.coords()).result;
      oracle.push_back(format_element(s.base, Element::vector(w)));
      agree = w == nf.coords();
    }
    Outcome o{agree ? Pass : (confluent ? InternalFailure : ConfluenceFailure), {}};
    if (json) {
      Json j;
      j["command"] = "normalize";
      j["system"] = s.spec.name;
      j["term"] = format_element(s.base, u);
      j["normal_form"] = got;
      j["oracle"] = oracle;
      j["agree"] = agree;
      j["path_length"] = path_length(gs.H(u));
      o.text = detail::dump(j);
    } else {
      std::string joined;
      for (const auto& w : oracle) joined += (joined.empty() ? "" : ", ") + w;
      o.text = detail::pad("term", 14) + format_element(s.base, u) + "\n" + detail::pad("strategy", 14) + got + "\n" +
               detail::pad("oracle", 14) + joined + "\n" + detail::pad("path length", 14) +
               std::to_string(path_length(gs.H(u))) + "\n" + detail::pad("agree", 14) + detail::yes(agree) + "\n";
    }
    return o;
  });
}

inline Outcome cmd_newman(const std::string& path, std::optional<std::size_t> depth_cap, bool json) {
  return detail::guarded("newman", json, [&] {
    System s = resolve(load_system(path));
    LcSearch search = s.set ? search_lc_structure_set(local_strategy(s), depth_cap) : construct_lc_structure_linear(*s.linear);
    Json j;
    j["command"] = "newman";
    j["system"] = s.spec.name;
    std::string human = "system " + s.spec.name + " (" + detail::kind_name(s.spec.kind) + ")\n";
    if (!search.lc) {
      j["result"] = "blocked";
      j["witness"] = search.witness;
      human += detail::pad("lc-structure", 16) + "none\n" + detail::pad("blocked at", 16) + search.witness + "\n";
      return Outcome{ConfluenceFailure, json ? detail::dump(j) : human};
    }
    Report rep = verify_lc_structure(*search.lc);
    NewmanCertificate cert = newman(*search.lc);
    const SplitCertificate& sc = cert.split;
    j["result"] = sc.holds() ? "certified" : "fail";
    j["checks"] = detail::report_json(rep);
    Json c;
    c["retraction"] = sc.retraction;
    c["section_square"] = sc.section_square;
    c["path_section"] = sc.path_section;
    c["coequalizes"] = sc.coequalizes;
    c["isomorphism"] = sc.isomorphism;
    c["quotient_size"] = sc.quotient_size;
    c["min_size"] = sc.min_size;
    j["certificate"] = c;
    human += detail::report_table(rep);
    human += detail::pad("retraction", 16) + detail::yes(sc.retraction) + "\n";
    human += detail::pad("section square", 16) + detail::yes(sc.section_square) + "\n";
    human += detail::pad("path section", 16) + detail::yes(sc.path_section) + "\n";
    human += detail::pad("coequalizes", 16) + detail::yes(sc.coequalizes) + "\n";
    human += detail::pad("isomorphism", 16) + detail::yes(sc.isomorphism) + "\n";
    human += detail::pad("E/R", 16) + std::to_string(sc.quotient_size) + "\n";
    human += detail::pad("min(E)", 16) + std::to_string(sc.min_size) + "\n";
    return Outcome{sc.holds() ? Pass : InternalFailure, json ? detail::dump(j) : human};
  });
}

/// E/R by coequalizer, with the class of each generator for sets.
inline Outcome cmd_quotient(const std::string& path, bool json) {
  return detail::guarded("quotient", json, [&] {
    System s = resolve(load_system(path));
    Coequalizer q = quotient_by_graph(s.graph);
    std::size_t min_size = local_strategy(s).filtration.min().object.size();
    Json j;
    j["command"] = "quotient";
    j["system"] = s.spec.name;
    j["quotient_size"] = q.object.size();
    j["min_size"] = min_size;
    std::string human = detail::pad("E/R", 10) + std::to_string(q.object.size()) + "\n" + detail::pad("min(E)", 10) +
                        std::to_string(min_size) + "\n";
    if (s.set) {
      std::vector<std::vector<std::string>> classes(q.object.size());
      for (std::size_t x = 0; x < s.base.size(); ++x) classes[q.q.image(x).index()].push_back(s.base.label(x));
      j["classes"] = classes;
      for (const auto& c : classes) {
        std::string line;
        for (const auto& l : c) line += (line.empty() ? "" : " ") + l;
        human += detail::pad("class", 10) + "{" + line + "}\n";
      }
    } else {
      std::vector<std::string> images;
      for (std::size_t x = 0; x < s.base.size(); ++x)
        images.push_back(s.base.label(x) + " -> " + format_element(q.object, q.q.image(x)));
      j["images"] = images;
      for (const auto& l : images) human += detail::pad("image", 10) + l + "\n";
    }
    return Outcome{Pass, json ? detail::dump(j) : human};
  });
}

struct SuiteOptions {
  std::string family = "all";  // set, linear, quotient or all
  std::uint64_t seed = 42;
  std::size_t count = 200;
  std::size_t max_elements = 8;
  std::optional<std::size_t> depth_cap;
  bool json = false;
  unsigned threads = default_threads();
};

inline Outcome cmd_suite(const SuiteOptions& opt) {
  return detail::guarded("suite", opt.json, [&] {
    Json j;
    j["command"] = "suite";
    j["seed"] = opt.seed;
    j["count"] = opt.count;
    std::string human;
    bool ok = true;
    if (opt.family != "set" && opt.family != "linear" && opt.family != "quotient" && opt.family != "all")
      throw Error(Errc::ParseError, "unknown suite family '" + opt.family + "'");
    if (opt.count == 0) return Outcome{Pass, opt.json ? detail::dump(j) : std::string()};

    if (opt.family == "set" || opt.family == "all") {
      auto rs = run_set_suite(opt.seed, opt.count, opt.max_elements, 2 * opt.max_elements, opt.depth_cap, opt.threads);
      std::size_t agree = 0, passed = 0, lc = 0;
      Json rows = Json::array();
      human += detail::pad("set", 6) + detail::pad("elems", 7) + detail::pad("rules", 7) + detail::pad("SC1", 5) +
               detail::pad("SC2", 5) + detail::pad("SC3", 5) + detail::pad("SC4", 5) + detail::pad("lc", 5) + "result\n";
      for (const auto& r : rs) {
        agree += r.sc.agree() ? 1 : 0;
        passed += r.passed() ? 1 : 0;
        lc += r.lc_found ? 1 : 0;
        Json row;
        row["index"] = r.index;
        row["elements"] = r.elements;
        row["rules"] = r.rules;
        for (const auto& [n, v] : r.sc.values) row[n] = v;
        row["lc_found"] = r.lc_found;
        row["passed"] = r.passed();
        if (!r.error.empty()) row["error"] = r.error;
        rows.push_back(row);
        std::string line = detail::pad(std::to_string(r.index), 6) + detail::pad(std::to_string(r.elements), 7) +
                           detail::pad(std::to_string(r.rules), 7);
        for (const auto& [n, v] : r.sc.values) line += detail::pad(v ? "T" : "F", 5);
        human += line + detail::pad(r.lc_found ? "T" : "F", 5) + (r.passed() ? "pass" : "FAIL") + "\n";
      }
      std::string summary = "SC agreement " + std::to_string(agree) + "/" + std::to_string(rs.size());
      human += summary + ", lc-structures " + std::to_string(lc) + ", passed " + std::to_string(passed) + "/" +
               std::to_string(rs.size()) + "\n";
      Json sj;
      sj["summary"] = summary;
      sj["passed"] = passed;
      sj["instances"] = rows;
      j["set"] = sj;
      ok = ok && passed == rs.size();
    }

    if (opt.family == "linear" || opt.family == "all") {
      auto rs = run_linear_suite(opt.seed, opt.count, std::min<std::size_t>(opt.max_elements, 5), 5, opt.threads);
      std::size_t agree = 0, passed = 0, counter = 0;
      Json rows = Json::array();
      human += detail::pad("lin", 6) + detail::pad("basis", 7) + detail::pad("rules", 7) + detail::pad("AC1", 5) +
               detail::pad("AC2", 5) + detail::pad("AC3", 5) + detail::pad("lc", 5) + detail::pad("bridge", 8) + "result\n";
      for (const auto& r : rs) {
        agree += r.ac.agree() ? 1 : 0;
        passed += r.passed() ? 1 : 0;
        counter += r.bridge_counterexamples;
        Json row;
        row["index"] = r.index;
        row["basis"] = r.basis;
        row["rules"] = r.rules;
        for (const auto& [n, v] : r.ac.values) row[n] = v;
        row["lc_found"] = r.lc_found;
        row["bridge_trials"] = r.bridge_trials;
        row["bridge_counterexamples"] = r.bridge_counterexamples;
        row["passed"] = r.passed();
        if (!r.error.empty()) row["error"] = r.error;
        rows.push_back(row);
        std::string line = detail::pad(std::to_string(r.index), 6) + detail::pad(std::to_string(r.basis), 7) +
                           detail::pad(std::to_string(r.rules), 7);
        for (const auto& [n, v] : r.ac.values) line += detail::pad(v ? "T" : "F", 5);
        human += line + detail::pad(r.lc_found ? "T" : "F", 5) +
                 detail::pad(std::to_string(r.bridge_trials - r.bridge_counterexamples) + "/" + std::to_string(r.bridge_trials), 8) +
                 (r.passed() ? "pass" : "FAIL") + "\n";
      }
      std::string summary = "AC agreement " + std::to_string(agree) + "/" + std::to_string(rs.size()) + ", bridge " +
                            std::to_string(counter) + " counterexamples";
      human += summary + ", passed " + std::to_string(passed) + "/" + std::to_string(rs.size()) + "\n";
      Json lj;
      lj["summary"] = summary;
      lj["passed"] = passed;
      lj["instances"] = rows;
      j["linear"] = lj;
      ok = ok && passed == rs.size();
    }

    if (opt.family == "quotient" || opt.family == "all") {
      auto rs = run_quotient_suite(opt.seed, opt.count, opt.max_elements, opt.threads);
      std::size_t agree = 0;
      Json rows = Json::array();
      human += detail::pad("quo", 6) + detail::pad("kind", 8) + detail::pad("verts", 7) + detail::pad("edges", 7) + "result\n";
      for (const auto& r : rs) {
        agree += r.agree ? 1 : 0;
        Json row;
        row["index"] = r.index;
        row["kind"] = detail::kind_name(r.kind);
        row["vertices"] = r.vertices;
        row["edges"] = r.edges;
        row["agree"] = r.agree;
        rows.push_back(row);
        human += detail::pad(std::to_string(r.index), 6) + detail::pad(detail::kind_name(r.kind), 8) +
                 detail::pad(std::to_string(r.vertices), 7) + detail::pad(std::to_string(r.edges), 7) +
                 (r.agree ? "pass" : "FAIL") + "\n";
      }
      std::string summary = "quotient invariance " + std::to_string(agree) + "/" + std::to_string(rs.size());
      human += summary + "\n";
      Json qj;
      qj["summary"] = summary;
      qj["instances"] = rows;
      j["quotient"] = qj;
      ok = ok && agree == rs.size();
    }
    j["result"] = ok ? "pass" : "fail";
    return Outcome{ok ? Pass : InternalFailure, opt.json ? detail::dump(j) : human};
  });
}

}  // namespace intrew::cli
