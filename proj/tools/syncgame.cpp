// syncgame: analysis, solving, strategy certificates and terminal play for
// synchronization games on finite automata.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "syncgame/board.hpp"
#include "syncgame/constructions.hpp"
#include "syncgame/dfa_format.hpp"
#include "syncgame/errors.hpp"
#include "syncgame/report.hpp"
#include "syncgame/service.hpp"
#include "syncgame/session.hpp"

namespace {

using namespace syncgame;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kFailure = 2;

struct InputArgs {
  std::string path;
  std::string builtin;
  bool use_stdin = false;
};

struct Loaded {
  Dfa dfa;
  std::optional<Board> board;
};

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_all(in);
}

bool looks_like_board(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line.substr(0, line.find('#')));
    std::string kw;
    if (words >> kw) return kw == "grid" || kw == "track";
  }
  return false;
}

Loaded load(const InputArgs& in) {
  if (!in.builtin.empty()) {
    auto name = parse_builtin_name(in.builtin);
    if (!name) throw Error("unknown builtin '" + in.builtin + "'");
    return {builtin(*name), std::nullopt};
  }
  std::string text;
  if (in.use_stdin || in.path == "-") {
    text = read_all(std::cin);
  } else if (!in.path.empty()) {
    text = read_file(in.path);
  } else {
    throw Error("no input: give a file, --builtin NAME or --stdin");
  }
  if (looks_like_board(text)) {
    Board b = parse_board(text);
    return {compile_board(b), b};
  }
  return {parse_dfa(text), std::nullopt};
}

void add_input(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("input", in.path, "DFA text or board file ('-' for stdin)");
  cmd->add_option("--builtin", in.builtin, "intro, b2, b2_prime, e, f");
  cmd->add_flag("--stdin", in.use_stdin, "Read the automaton from standard input");
}

GameRule rule_from(const std::string& s) {
  auto r = parse_rule(s);
  if (!r) throw Error("rule must be normal or modified");
  return *r;
}

StateMask parse_tokens(const Dfa& dfa, const std::string& text) {
  if (text.empty()) return full_mask(dfa.size());
  StateMask m = 0;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    const std::size_t q = std::stoul(part);
    if (q >= dfa.size()) throw Error("token state " + part + " out of range");
    m |= StateMask{1} << q;
  }
  if (m == 0) throw Error("token set is empty");
  return m;
}

std::string show_value(const GameValue& v) {
  return v ? "Alice wins in " + std::to_string(*v) + " move(s)" : "Bob wins";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronization games on finite automata"};
  app.require_subcommand(1);

  std::string rule_text = "normal";
  std::size_t exact_bound = kDefaultExactBound;
  std::size_t monoid_cap = kDefaultMonoidCap;
  std::size_t config_cap = kDefaultConfigCap;
  std::size_t token_cap = kDefaultTokenGameCap;
  std::uint64_t seed = 1;
  bool json = false;
  bool fail_on_no = false;
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--rule", rule_text, "normal or modified")->check(CLI::IsMember({"normal", "modified"}));
    cmd->add_option("--exact-bound", exact_bound, "Largest state count for exact reset search");
    cmd->add_option("--monoid-cap", monoid_cap, "Largest transition monoid to enumerate");
    cmd->add_option("--config-cap", config_cap, "Largest configuration search");
    cmd->add_option("--token-cap", token_cap, "Largest token-game state space");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_flag("--json", json, "Machine-readable output");
    cmd->add_flag("--fail-on-no", fail_on_no, "Exit with 1 on a negative verdict");
  };

  InputArgs input;

  auto* analyze = app.add_subcommand("analyze", "Print an analysis report");
  add_input(analyze, input);
  common(analyze);

  std::string tokens_text;
  auto* solve = app.add_subcommand("solve", "Solve the game from a token set");
  add_input(solve, input);
  common(solve);
  solve->add_option("--tokens", tokens_text, "Initial tokens, e.g. 0,2 (default: all states)");

  std::string method = "search";
  std::string pair_text;
  std::string out_path;
  auto* uniform = app.add_subcommand("uniform", "Find a uniform winning strategy and print its certificate");
  add_input(uniform, input);
  common(uniform);
  uniform->add_option("--method", method, "search or theorem")->check(CLI::IsMember({"search", "theorem"}));
  uniform->add_option("--pair", pair_text, "Restrict to the pair p,q");
  uniform->add_option("-o,--output", out_path, "Write the certificate to a file");

  std::vector<std::string> gen_args;
  std::size_t q0 = 0;
  std::string dup_letter = "b";
  bool synchronizing_only = false;
  auto* gen = app.add_subcommand("gen", "Emit a construction in DFA text format");
  gen->add_option("what", gen_args,
                  "cerny N | builtin NAME | random KIND N K | duplication FILE | identity-letter FILE LETTER")
      ->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--q0", q0, "Duplication: reset state q0");
  gen->add_option("--letter", dup_letter, "Duplication: the letter b");
  gen->add_flag("--synchronizing", synchronizing_only, "random: reject non-synchronizing samples");

  std::string board_path;
  bool render = false;
  auto* board_cmd = app.add_subcommand("board", "Compile a board file to DFA text");
  board_cmd->add_option("file", board_path, "Board DSL file")->required();
  board_cmd->add_flag("--render", render, "Print the grid instead of the automaton");

  std::string role_text = "alice";
  std::string transcript_path;
  auto* play = app.add_subcommand("play", "Play against the engine in the terminal");
  add_input(play, input);
  common(play);
  play->add_option("--role", role_text, "Your side: alice or bob")->check(CLI::IsMember({"alice", "bob"}));
  play->add_option("--tokens", tokens_text, "Initial tokens");
  play->add_option("--transcript", transcript_path, "Write the move log as JSON lines");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string transcript_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP play service");
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--port", port, "Port to listen on");
  serve->add_option("--transcripts", transcript_dir, "Directory for session transcripts");
  common(serve);

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "Re-check a strategy certificate");
  verify->add_option("certificate", cert_path, "Certificate file ('-' for stdin)")->required();
  verify->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFailure;
  }

  try {
    const GameRule rule = rule_from(rule_text);

    if (analyze->parsed()) {
      const Loaded in = load(input);
      AnalysisOptions opt;
      opt.rule = rule;
      opt.exact_bound = exact_bound;
      opt.monoid_cap = monoid_cap;
      opt.config_cap = config_cap;
      opt.token_cap = token_cap;
      const Json report = analysis_report(in.dfa, opt);
      std::cout << (json ? report.dump(2) + "\n" : format_analysis(report));
      return fail_on_no && !report["a_automaton"][std::string(to_string(rule))].get<bool>() ? kNegative : kOk;
    }

    if (solve->parsed()) {
      const Loaded in = load(input);
      const StateMask start = parse_tokens(in.dfa, tokens_text);
      const auto sol = solve_token_game(in.dfa, start, rule, token_cap);
      const auto pairs = solve_pair_game(in.dfa, rule);
      const bool a_auto = is_a_automaton(in.dfa, pairs);
      if (json) {
        Json out;
        out["rule"] = to_string(rule);
        out["tokens"] = StateSet::from_mask(in.dfa.size(), start).members();
        out["value"] = sol.value() ? Json(*sol.value()) : Json(nullptr);
        const auto best = sol.best_move(start);
        out["best_move"] = best ? Json(in.dfa.alphabet()[*best]) : Json(nullptr);
        out["positions"] = sol.position_count();
        out["a_automaton"] = a_auto;
        Json losing = Json::array();
        const PairIndex idx(in.dfa.size());
        for (std::size_t i = 0; i < idx.count(); ++i) {
          if (!pairs.alice_distance[i]) losing.push_back({idx.pair(i).first, idx.pair(i).second});
        }
        out["bob_pairs"] = losing;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "rule: " << to_string(rule) << "\n";
        std::cout << "tokens: " << mask_to_string(start) << "\n";
        std::cout << "game: " << show_value(sol.value()) << "\n";
        if (auto best = sol.best_move(start)) std::cout << "best first move: " << in.dfa.alphabet()[*best] << "\n";
        std::cout << "positions solved: " << sol.position_count() << "\n";
        std::cout << "A-automaton: " << (a_auto ? "yes" : "no") << "\n";
      }
      return fail_on_no && !sol.value() ? kNegative : kOk;
    }

    if (uniform->parsed()) {
      const Loaded in = load(input);
      std::optional<Word> word;
      std::string used = "configuration-bfs";
      if (!pair_text.empty()) {
        const StateMask m = parse_tokens(in.dfa, pair_text);
        word = pair_uniform_strategy(in.dfa, StateSet::from_mask(in.dfa.size(), m), rule, config_cap);
      } else if (method == "theorem") {
        DsStrategyOptions opt;
        opt.monoid_cap = monoid_cap;
        word = ds_uniform_strategy(in.dfa, opt).word;
        used = "theorem-ds";
      } else {
        word = decide_uws(in.dfa, rule, config_cap).word;
      }
      if (!word) {
        std::cout << (json ? "null\n" : "NONE\n");
        return fail_on_no ? kNegative : kOk;
      }
      std::string text;
      if (!pair_text.empty()) {
        Json out{{"word", in.dfa.format_word(*word)}, {"rule", to_string(rule)}, {"pair", pair_text}};
        text = out.dump(2);
      } else {
        text = make_certificate(in.dfa, *word, rule, used).dump(2);
      }
      if (!out_path.empty()) {
        std::ofstream(out_path) << text << "\n";
        std::cout << in.dfa.format_word(*word) << "\n";
      } else {
        std::cout << text << "\n";
      }
      return kOk;
    }

    if (gen->parsed()) {
      const std::string& what = gen_args.at(0);
      auto arg = [&](std::size_t i) -> const std::string& {
        if (i >= gen_args.size()) throw Error("gen " + what + ": missing argument");
        return gen_args[i];
      };
      std::optional<Dfa> out;
      if (what == "cerny") {
        out = cerny(std::stoul(arg(1)));
      } else if (what == "builtin") {
        auto name = parse_builtin_name(arg(1));
        if (!name) throw Error("unknown builtin '" + arg(1) + "'");
        out = builtin(*name);
      } else if (what == "random") {
        auto kind = parse_random_kind(arg(1));
        if (!kind) throw Error("random kind must be weakly_acyclic, commutative or arbitrary");
        const std::size_t n = std::stoul(arg(2));
        const std::size_t k = std::stoul(arg(3));
        if (synchronizing_only) {
          out = random_synchronizing(*kind, n, k, seed);
          if (!out) throw Error("no synchronizing sample found for this seed");
        } else {
          out = random_family(*kind, n, k, seed);
        }
      } else if (what == "duplication" || what == "identity-letter") {
        InputArgs src;
        src.path = arg(1);
        if (parse_builtin_name(src.path) && !std::ifstream(src.path)) src = InputArgs{"", arg(1), false};
        const Dfa base = load(src).dfa;
        if (what == "duplication") {
          auto b = base.letter_index(dup_letter);
          if (!b) throw Error("unknown letter '" + dup_letter + "'");
          out = duplication(base, static_cast<State>(q0), *b);
        } else {
          out = with_identity_letter(base, arg(2));
        }
      } else {
        throw Error("unknown construction '" + what + "'");
      }
      std::cout << serialize_dfa(*out);
      return kOk;
    }

    if (board_cmd->parsed()) {
      const Board b = parse_board(read_file(board_path));
      if (render) {
        if (const auto* g = std::get_if<GridBoard>(&b)) {
          std::cout << render_grid(*g, 0);
        } else {
          throw Error("--render needs a grid board");
        }
      } else {
        std::cout << serialize_dfa(compile_board(b));
      }
      return kOk;
    }

    if (play->parsed()) {
      const Loaded in = load(input);
      auto dfa = std::make_shared<const Dfa>(in.dfa);
      const StateMask start = parse_tokens(*dfa, tokens_text);
      GameSession session(dfa, rule, start);
      EngineOptions eo;
      eo.token_cap = token_cap;
      eo.config_cap = config_cap;
      Engine engine(dfa, rule, start, eo);
      const Player human = role_text == "bob" ? Player::bob : Player::alice;
      const GridBoard* grid = in.board ? std::get_if<GridBoard>(&*in.board) : nullptr;

      auto show = [&] {
        std::cout << "tokens: " << mask_to_string(session.tokens()) << "\n";
        if (grid) std::cout << render_grid(*grid, session.tokens());
      };
      std::cout << "letters: ";
      for (const auto& a : dfa->alphabet()) std::cout << a << " ";
      std::cout << "\ncommands: a word to move, 'hint', 'quit'\n";
      show();
      while (session.status() == GameStatus::ongoing) {
        const Player turn = session.turn();
        if (turn != human) {
          const Word w = engine.move(session, turn);
          session.play(turn, w);
          std::cout << to_string(turn) << " plays " << (w.empty() ? "(empty)" : dfa->format_word(w)) << "\n";
          show();
          continue;
        }
        std::cout << to_string(turn) << "> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line) || line == "quit") break;
        if (line == "hint") {
          const auto advice = engine.advise(session, turn);
          std::cout << "hint: " << (advice.move.empty() ? "(empty)" : dfa->format_word(advice.move)) << " ("
                    << advice.explanation << ")\n";
          continue;
        }
        try {
          session.play(turn, dfa->parse_word(line));
          show();
        } catch (const Error& e) {
          std::cout << "illegal move: " << e.what() << "\n";
        }
      }
      std::cout << "status: " << to_string(session.status()) << " after " << session.alice_moves()
                << " Alice move(s)\n";
      if (!transcript_path.empty()) std::ofstream(transcript_path) << transcript_jsonl(session);
      return kOk;
    }

    if (serve->parsed()) {
      ServiceOptions opt;
      opt.analysis.monoid_cap = monoid_cap;
      opt.analysis.exact_bound = exact_bound;
      opt.engine.token_cap = token_cap;
      if (!transcript_dir.empty()) opt.transcript_dir = transcript_dir;
      PlayService service(opt);
      httplib::Server server;
      service.bind(server);
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!server.listen(host, port)) throw Error("cannot listen on " + host + ":" + std::to_string(port));
      return kOk;
    }

    if (verify->parsed()) {
      const std::string text = cert_path == "-" ? read_all(std::cin) : read_file(cert_path);
      Json cert;
      try {
        cert = Json::parse(text);
      } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed certificate: ") + e.what());
      }
      const auto check = check_certificate(cert);
      if (json) {
        std::cout << Json{{"ok", check.ok}, {"reason", check.reason}}.dump(2) << "\n";
      } else {
        std::cout << (check.ok ? "OK: " : "REJECTED: ") << check.reason << "\n";
      }
      return check.ok ? kOk : kNegative;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
