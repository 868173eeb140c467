#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"
#include "syncgame/dfa.hpp"
#include "syncgame/game.hpp"
#include "syncgame/monoid.hpp"
#include "syncgame/synchronization.hpp"
#include "syncgame/uniform.hpp"

namespace syncgame {

using Json = nlohmann::ordered_json;

inline constexpr const char* kAnalysisSchema = "syncgame.analysis/1";
inline constexpr const char* kCertificateSchema = "syncgame.certificate/1";

/// Element count, generator map, d-class summary, kernel size, DS verdict
/// and, for DS monoids, the archimedean decomposition.
Json monoid_report(const Dfa& dfa, const TransitionMonoid& m);

struct AnalysisOptions {
  GameRule rule = GameRule::normal;
  std::size_t exact_bound = kDefaultExactBound;
  std::size_t monoid_cap = kDefaultMonoidCap;
  std::size_t config_cap = kDefaultConfigCap;
  std::size_t token_cap = kDefaultTokenGameCap;
};

/// Every analysis the library offers. Parts that exceed a cap are reported
/// as the string "unavailable".
Json analysis_report(const Dfa& dfa, const AnalysisOptions& options = {});

/// Multi-line human-readable rendering of an analysis report.
std::string format_analysis(const Json& report);

/// {schema, word, rule, method, verification, automaton}. `verification`
/// holds the canonical branch count after each letter.
Json make_certificate(const Dfa& dfa, const Word& word, GameRule rule, const std::string& method);

struct CertificateCheck {
  bool ok = false;
  std::string reason;
};

/// Re-runs the verification recorded in a certificate.
CertificateCheck check_certificate(const Json& certificate);

}  // namespace syncgame
