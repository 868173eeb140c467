#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "syncgame/board.hpp"
#include "syncgame/report.hpp"
#include "syncgame/session.hpp"

namespace httplib {
class Server;
}

namespace syncgame {

struct ServiceOptions {
  AnalysisOptions analysis;
  EngineOptions engine;
  /// Engine replies for automata with more states run on a worker thread.
  std::size_t async_threshold = 16;
  /// When set, every session appends its moves to <dir>/<id>.jsonl.
  std::optional<std::filesystem::path> transcript_dir;
};

struct ServiceResponse {
  int status = 200;
  Json body;
};

enum class HumanRole { alice, bob, both };

/// Automaton store and live game sessions behind the HTTP routes. Every
/// handler is callable directly; `bind` attaches them to a server.
class PlayService {
 public:
  explicit PlayService(ServiceOptions options = {});
  ~PlayService();
  PlayService(const PlayService&) = delete;
  PlayService& operator=(const PlayService&) = delete;

  /// Body: DFA text, board DSL, or JSON {"text": ...} / {"builtin": ...}.
  ServiceResponse create_automaton(const std::string& body);
  ServiceResponse get_analysis(const std::string& id);
  /// Body: {"automaton", "human_role", "rule", "initial_tokens"?}.
  ServiceResponse create_game(const std::string& body);
  ServiceResponse get_game(const std::string& id);
  /// Body: {"word", "expected_seq"?}. A mismatching expected_seq, a busy
  /// session or a move out of turn yields 409.
  ServiceResponse post_move(const std::string& id, const std::string& body);
  ServiceResponse get_hint(const std::string& id);

  /// Event records with seq > after; blocks up to `wait` for new ones.
  /// Returns nullopt for an unknown session. `finished` is set once the
  /// game is over and no engine work is pending.
  std::optional<std::vector<Json>> events_after(const std::string& id, std::size_t after,
                                                std::chrono::milliseconds wait, bool& finished);

  /// Waits until no engine reply is pending for the session.
  void wait_idle(const std::string& id);

  void bind(httplib::Server& server);

 private:
  struct AutomatonRecord {
    std::string id;
    std::shared_ptr<const Dfa> dfa;
    std::optional<Board> board;
    std::mutex analysis_mutex;
    std::optional<Json> analysis;
  };

  struct SessionRecord {
    std::string id;
    std::shared_ptr<AutomatonRecord> automaton;
    HumanRole human = HumanRole::alice;
    std::unique_ptr<GameSession> session;
    std::unique_ptr<Engine> engine;
    std::mutex mutex;
    std::condition_variable changed;
    bool engine_thinking = false;
    std::vector<Json> events;
    std::int64_t created_ms = 0;
    std::int64_t updated_ms = 0;
  };

  std::shared_ptr<AutomatonRecord> find_automaton(const std::string& id);
  std::shared_ptr<SessionRecord> find_session(const std::string& id);
  bool is_human(const SessionRecord& s, Player p) const;
  Json view(const SessionRecord& s) const;
  void record_move(SessionRecord& s, const MoveRecord& m);
  /// Plays engine moves while it is the engine's turn. Caller holds the
  /// session mutex.
  void run_engine(SessionRecord& s);
  void schedule_engine(const std::shared_ptr<SessionRecord>& s);

  ServiceOptions options_;
  std::mutex store_mutex_;
  std::map<std::string, std::shared_ptr<AutomatonRecord>> automata_;
  std::map<std::string, std::shared_ptr<SessionRecord>> sessions_;
  std::size_t next_session_ = 1;
  std::mutex workers_mutex_;
  std::vector<std::thread> workers_;
};

std::string_view to_string(HumanRole r);
std::optional<HumanRole> parse_human_role(std::string_view text);

}  // namespace syncgame
