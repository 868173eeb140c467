#include "syncgame/report.hpp"

#include <sstream>

#include "syncgame/dfa_format.hpp"
#include "syncgame/errors.hpp"

namespace syncgame {

namespace {

const char* kUnavailable = "unavailable";

Json value_json(const GameValue& v) { return v ? Json(*v) : Json(nullptr); }

Json word_json(const Dfa& dfa, const Word& w) {
  return Json{{"word", dfa.format_word(w)}, {"length", w.size()}};
}

}  // namespace

Json monoid_report(const Dfa& dfa, const TransitionMonoid& m) {
  Json out;
  out["elements"] = m.size();
  Json generators = Json::object();
  for (Letter a = 0; a < dfa.alphabet_size(); ++a) generators[dfa.alphabet()[a]] = m.generator(a);
  out["generators"] = generators;

  const auto green = green_classes(m);
  Json d_classes = Json::array();
  const auto members = green.d_members();
  for (std::size_t d = 0; d < members.size(); ++d) {
    d_classes.push_back({{"size", members[d].size()}, {"regular", static_cast<bool>(green.regular[d])}});
  }
  out["d_classes"] = d_classes;
  out["kernel_size"] = kernel(m).size();
  const bool ds = is_ds(m, green);
  out["ds"] = ds;
  out["commutative"] = is_commutative(m);
  if (!ds) {
    out["decomposition"] = nullptr;
    return out;
  }
  const auto dec = archimedean_decomposition(m);
  Json sizes = Json::array();
  for (const auto& c : dec.components) sizes.push_back(c.size());
  Json order = Json::array();
  for (std::size_t y = 0; y < dec.components.size(); ++y) {
    for (std::size_t z = 0; z < dec.components.size(); ++z) {
      if (y != z && dec.leq[y][z]) order.push_back({y, z});
    }
  }
  out["decomposition"] = {
      {"component_sizes", sizes},
      {"order", order},
      {"minimal_component", dec.minimal_component},
      {"nilpotency_index", nilpotency_index(m, dec, dec.minimal_component)},
  };
  return out;
}

Json make_certificate(const Dfa& dfa, const Word& word, GameRule rule, const std::string& method) {
  const auto v = verify_uniform_strategy_detailed(dfa, word, rule);
  Json out;
  out["schema"] = kCertificateSchema;
  out["word"] = dfa.format_word(word);
  out["rule"] = to_string(rule);
  out["method"] = method;
  out["verification"] = v.branch_counts;
  out["automaton"] = serialize_dfa(dfa);
  return out;
}

CertificateCheck check_certificate(const Json& c) {
  try {
    const Dfa dfa = parse_dfa(c.at("automaton").get<std::string>());
    const auto rule = parse_rule(c.at("rule").get<std::string>());
    if (!rule) return {false, "unknown rule"};
    const Word w = dfa.parse_word(c.at("word").get<std::string>());
    const auto v = verify_uniform_strategy_detailed(dfa, w, *rule);
    if (!v.wins) {
      std::string replies;
      for (const auto& r : v.counterexample) replies += (replies.empty() ? "" : ",") + dfa.format_word(r);
      return {false, "word does not win; Bob replies [" + replies + "] keep two or more tokens"};
    }
    if (c.contains("verification") && c.at("verification").get<std::vector<std::size_t>>() != v.branch_counts) {
      return {false, "recorded branch counts do not match"};
    }
    return {true, "word is a uniform winning strategy"};
  } catch (const Error& e) {
    return {false, e.what()};
  } catch (const nlohmann::json::exception& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  }
}

Json analysis_report(const Dfa& dfa, const AnalysisOptions& opt) {
  Json out;
  out["schema"] = kAnalysisSchema;
  out["automaton"] = {{"name", dfa.name() ? Json(*dfa.name()) : Json(nullptr)},
                      {"states", dfa.size()},
                      {"alphabet", dfa.alphabet()}};
  out["rule"] = to_string(opt.rule);

  const bool sync = is_synchronizing(dfa);
  out["synchronizing"] = sync;
  if (!sync) {
    out["reset_word"] = nullptr;
  } else {
    const bool exact = dfa.size() <= opt.exact_bound;
    const auto w = shortest_reset_word(dfa, exact ? ResetMode::exact : ResetMode::greedy, opt.exact_bound);
    Json r = word_json(dfa, *w);
    r["mode"] = exact ? "exact" : "greedy";
    out["reset_word"] = r;
  }

  const auto definite = is_definite(dfa);
  Json classifiers;
  classifiers["definite"] = definite ? Json(*definite) : Json(nullptr);
  classifiers["weakly_acyclic"] = is_weakly_acyclic(dfa);

  std::optional<TransitionMonoid> monoid;
  try {
    monoid = enumerate_monoid(dfa, opt.monoid_cap);
  } catch (const CapExceeded&) {
  }
  classifiers["commutative"] = monoid ? Json(is_commutative(*monoid)) : Json(kUnavailable);
  out["classifiers"] = classifiers;

  Json a_automaton;
  Json token_value;
  for (GameRule rule : {GameRule::normal, GameRule::modified}) {
    const auto name = std::string(to_string(rule));
    a_automaton[name] = is_a_automaton(dfa, rule);
    if (dfa.size() > kMaxMaskStates) {
      token_value[name] = kUnavailable;
      continue;
    }
    try {
      const auto sol = solve_token_game(dfa, full_mask(dfa.size()), rule, opt.token_cap);
      token_value[name] = value_json(sol.value());
    } catch (const CapExceeded&) {
      token_value[name] = kUnavailable;
    }
  }
  out["a_automaton"] = a_automaton;
  out["token_game_value"] = token_value;

  if (monoid) {
    out["monoid"] = monoid_report(dfa, *monoid);
    out["ds"] = out["monoid"]["ds"];
  } else {
    out["monoid"] = kUnavailable;
    out["ds"] = kUnavailable;
  }

  if (dfa.size() > kMaxMaskStates) {
    out["uws"] = kUnavailable;
  } else {
    try {
      const auto report = decide_uws(dfa, opt.rule, opt.config_cap);
      Json u;
      u["exists"] = report.exists;
      u["word"] = report.word ? Json(dfa.format_word(*report.word)) : Json(nullptr);
      u["length"] = report.word ? Json(report.word->size()) : Json(nullptr);
      u["explored"] = report.explored;
      u["bound"] = report.bound;
      u["certificate"] = report.word ? make_certificate(dfa, *report.word, opt.rule, "configuration-bfs")
                                     : Json(nullptr);
      out["uws"] = u;
    } catch (const CapExceeded&) {
      out["uws"] = kUnavailable;
    }
  }

  if (!sync || !monoid || !out["ds"].get<bool>()) {
    out["ds_strategy"] = nullptr;
  } else {
    try {
      const auto s = ds_uniform_strategy(dfa, {opt.monoid_cap});
      Json d = word_json(dfa, s.word);
      d["base"] = dfa.format_word(s.base);
      d["power"] = s.power;
      d["certificate"] = make_certificate(dfa, s.word, opt.rule, "theorem-ds");
      out["ds_strategy"] = d;
    } catch (const CapExceeded&) {
      out["ds_strategy"] = kUnavailable;
    }
  }
  return out;
}

namespace {

std::string show(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_null()) return "none";
  return j.dump();
}

std::string game_value(const Json& j) {
  if (j.is_null()) return "Bob wins";
  if (j.is_string()) return j.get<std::string>();
  return "Alice wins in " + j.dump() + " move(s)";
}

}  // namespace

std::string format_analysis(const Json& r) {
  std::ostringstream out;
  const auto& a = r["automaton"];
  out << "automaton: " << (a["name"].is_null() ? "(unnamed)" : a["name"].get<std::string>()) << ", "
      << a["states"].get<std::size_t>() << " states, " << a["alphabet"].size() << " letters\n";
  out << "synchronizing: " << show(r["synchronizing"]) << "\n";
  if (!r["reset_word"].is_null()) {
    const auto& w = r["reset_word"];
    out << "reset word: " << w["word"].get<std::string>() << " (length " << w["length"].get<std::size_t>()
        << ", " << w["mode"].get<std::string>() << ")\n";
  }
  const auto& c = r["classifiers"];
  out << "definite: " << show(c["definite"]) << "\n";
  out << "weakly acyclic: " << show(c["weakly_acyclic"]) << "\n";
  out << "commutative: " << show(c["commutative"]) << "\n";
  out << "DS: " << show(r["ds"]) << "\n";
  if (r["monoid"].is_object()) {
    const auto& m = r["monoid"];
    out << "transition monoid: " << m["elements"].get<std::size_t>() << " elements, "
        << m["d_classes"].size() << " d-classes, kernel size " << m["kernel_size"].get<std::size_t>() << "\n";
  }
  const std::string rule = r["rule"].get<std::string>();
  for (const char* name : {"normal", "modified"}) {
    out << "game (" << name << " rule): " << game_value(r["token_game_value"][name])
        << "; A-automaton: " << show(r["a_automaton"][name]) << "\n";
  }
  if (r["uws"].is_object()) {
    const auto& u = r["uws"];
    out << "uniform strategy (" << rule << " rule): "
        << (u["exists"].get<bool>() ? u["word"].get<std::string>() + " (length " + u["length"].dump() + ")"
                                    : std::string("NONE"))
        << ", " << u["explored"].get<std::size_t>() << " configurations explored\n";
  } else {
    out << "uniform strategy (" << rule << " rule): " << show(r["uws"]) << "\n";
  }
  if (r["ds_strategy"].is_object()) {
    const auto& d = r["ds_strategy"];
    out << "DS construction: (" << d["base"].get<std::string>() << ")^" << d["power"].get<std::size_t>() << "\n";
  }
  return out.str();
}

}  // namespace syncgame
