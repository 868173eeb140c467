#include "syncgame/service.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "httplib.h"
#include "syncgame/constructions.hpp"
#include "syncgame/dfa_format.hpp"
#include "syncgame/errors.hpp"
#include "text_util.hpp"

namespace syncgame {

std::string_view to_string(HumanRole r) {
  switch (r) {
    case HumanRole::alice: return "alice";
    case HumanRole::bob: return "bob";
    case HumanRole::both: return "both";
  }
  return "alice";
}

std::optional<HumanRole> parse_human_role(std::string_view text) {
  if (text == "alice") return HumanRole::alice;
  if (text == "bob") return HumanRole::bob;
  if (text == "both") return HumanRole::both;
  return std::nullopt;
}

namespace {

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ServiceResponse error(int status, const std::string& message) {
  return {status, Json{{"error", message}}};
}

std::vector<State> mask_members(const Dfa& dfa, StateMask m) {
  return StateSet::from_mask(dfa.size(), m).members();
}

/// First statement keyword, ignoring comments and blank lines.
std::string first_keyword(std::string_view text) {
  std::string kw;
  detail::for_each_line(text, [&](std::size_t, const std::vector<detail::Token>& t) {
    if (kw.empty()) kw = t[0].text;
  });
  return kw;
}

}  // namespace

PlayService::PlayService(ServiceOptions options) : options_(std::move(options)) {}

PlayService::~PlayService() {
  std::lock_guard lock(workers_mutex_);
  for (auto& t : workers_) {
    if (t.joinable()) t.join();
  }
}

std::shared_ptr<PlayService::AutomatonRecord> PlayService::find_automaton(const std::string& id) {
  std::lock_guard lock(store_mutex_);
  auto it = automata_.find(id);
  return it == automata_.end() ? nullptr : it->second;
}

std::shared_ptr<PlayService::SessionRecord> PlayService::find_session(const std::string& id) {
  std::lock_guard lock(store_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool PlayService::is_human(const SessionRecord& s, Player p) const {
  if (s.human == HumanRole::both) return true;
  return (s.human == HumanRole::alice) == (p == Player::alice);
}

ServiceResponse PlayService::create_automaton(const std::string& body) {
  std::optional<Board> board;
  std::shared_ptr<const Dfa> dfa;
  std::string kind = "dfa";
  try {
    std::string text = body;
    const auto start = body.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && body[start] == '{') {
      const Json j = Json::parse(body);
      if (j.contains("builtin")) {
        const auto name = parse_builtin_name(j["builtin"].get<std::string>());
        if (!name) return error(400, "unknown builtin automaton");
        dfa = std::make_shared<const Dfa>(builtin(*name));
        kind = "builtin";
      } else {
        text = j.at("text").get<std::string>();
      }
    }
    if (!dfa) {
      const std::string kw = first_keyword(text);
      if (kw == "grid" || kw == "track") {
        board = parse_board(text);
        dfa = std::make_shared<const Dfa>(compile_board(*board));
        kind = kw;
      } else {
        dfa = std::make_shared<const Dfa>(parse_dfa(text));
      }
    }
  } catch (const ParseError& e) {
    return {400, Json{{"error", e.what()}, {"line", e.line()}, {"column", e.column()}}};
  } catch (const Error& e) {
    return error(400, e.what());
  } catch (const nlohmann::json::exception& e) {
    return error(400, std::string("malformed JSON: ") + e.what());
  }

  const std::string id = "a" + fnv1a_hex(serialize_dfa(*dfa) + "\n" + kind);
  {
    std::lock_guard lock(store_mutex_);
    if (!automata_.count(id)) {
      auto rec = std::make_shared<AutomatonRecord>();
      rec->id = id;
      rec->dfa = dfa;
      rec->board = std::move(board);
      automata_.emplace(id, std::move(rec));
    }
  }
  return {200, Json{{"id", id}, {"kind", kind}, {"states", dfa->size()}, {"alphabet", dfa->alphabet()}}};
}

ServiceResponse PlayService::get_analysis(const std::string& id) {
  auto rec = find_automaton(id);
  if (!rec) return error(404, "unknown automaton");
  std::lock_guard lock(rec->analysis_mutex);
  if (!rec->analysis) rec->analysis = analysis_report(*rec->dfa, options_.analysis);
  return {200, *rec->analysis};
}

ServiceResponse PlayService::create_game(const std::string& body) {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    return error(400, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("automaton") || !j["automaton"].is_string()) {
    return error(400, "field 'automaton' is required");
  }
  auto rec = find_automaton(j["automaton"].get<std::string>());
  if (!rec) return error(404, "unknown automaton");
  const Dfa& dfa = *rec->dfa;
  if (dfa.size() > kMaxMaskStates) return error(400, "play supports at most 64 states");

  const auto role = parse_human_role(j.value("human_role", std::string("alice")));
  if (!role) return error(400, "human_role must be alice, bob or both");
  const auto rule = parse_rule(j.value("rule", std::string("normal")));
  if (!rule) return error(400, "rule must be normal or modified");

  StateMask initial = full_mask(dfa.size());
  if (j.contains("initial_tokens") && !j["initial_tokens"].is_null()) {
    const auto& t = j["initial_tokens"];
    if (!t.is_array() || t.empty()) return error(400, "initial_tokens must be a nonempty array");
    initial = 0;
    for (const auto& q : t) {
      if (!q.is_number_unsigned() || q.get<std::size_t>() >= dfa.size()) {
        return error(400, "initial_tokens contains an invalid state");
      }
      initial |= StateMask{1} << q.get<std::size_t>();
    }
  }

  auto s = std::make_shared<SessionRecord>();
  s->automaton = rec;
  s->human = *role;
  s->session = std::make_unique<GameSession>(rec->dfa, *rule, initial);
  s->engine = std::make_unique<Engine>(rec->dfa, *rule, initial, options_.engine);
  s->created_ms = s->updated_ms = now_ms();
  {
    std::lock_guard lock(store_mutex_);
    s->id = "g" + std::to_string(next_session_++);
    sessions_.emplace(s->id, s);
  }
  std::unique_lock lock(s->mutex);
  schedule_engine(s);
  return {201, view(*s)};
}

Json PlayService::view(const SessionRecord& s) const {
  const GameSession& g = *s.session;
  Json out;
  out["id"] = s.id;
  out["automaton"] = s.automaton->id;
  out["rule"] = to_string(g.rule());
  out["human_role"] = to_string(s.human);
  out["tokens"] = mask_members(g.dfa(), g.tokens());
  out["turn"] = to_string(g.turn());
  out["status"] = to_string(g.status());
  out["seq"] = s.events.size();
  out["alice_moves"] = g.alice_moves();
  out["move_cap"] = g.move_cap();
  out["engine_thinking"] = s.engine_thinking;
  out["created_at"] = s.created_ms;
  out["updated_at"] = s.updated_ms;
  out["history"] = s.events;
  if (s.automaton->board) {
    if (const auto* grid = std::get_if<GridBoard>(&*s.automaton->board)) {
      out["board"] = render_grid(*grid, g.tokens());
    }
  }
  return out;
}

ServiceResponse PlayService::get_game(const std::string& id) {
  auto s = find_session(id);
  if (!s) return error(404, "unknown game");
  std::lock_guard lock(s->mutex);
  return {200, view(*s)};
}

void PlayService::record_move(SessionRecord& s, const MoveRecord& m) {
  const Dfa& dfa = s.session->dfa();
  Json event;
  event["seq"] = s.events.size() + 1;
  event["player"] = to_string(m.player);
  event["word"] = dfa.format_word(m.word);
  event["tokens_after"] = mask_members(dfa, m.tokens_after);
  event["status"] = to_string(s.session->status());
  s.events.push_back(event);
  s.updated_ms = now_ms();
  if (options_.transcript_dir) {
    std::ofstream out(*options_.transcript_dir / (s.id + ".jsonl"), std::ios::app);
    Json line{{"player", event["player"]}, {"word", event["word"]}, {"tokens_after", event["tokens_after"]}};
    out << line.dump() << "\n";
  }
  s.changed.notify_all();
}

void PlayService::run_engine(SessionRecord& s) {
  GameSession& g = *s.session;
  while (g.status() == GameStatus::ongoing && !is_human(s, g.turn())) {
    const Player who = g.turn();
    const Word w = s.engine->move(g, who);
    record_move(s, g.play(who, w));
  }
}

void PlayService::schedule_engine(const std::shared_ptr<SessionRecord>& s) {
  const GameSession& g = *s->session;
  if (g.status() != GameStatus::ongoing || is_human(*s, g.turn())) return;
  if (g.dfa().size() <= options_.async_threshold) {
    run_engine(*s);
    return;
  }
  s->engine_thinking = true;
  std::lock_guard lock(workers_mutex_);
  workers_.emplace_back([this, s] {
    std::lock_guard session_lock(s->mutex);
    try {
      run_engine(*s);
    } catch (const Error&) {
    }
    s->engine_thinking = false;
    s->changed.notify_all();
  });
}

ServiceResponse PlayService::post_move(const std::string& id, const std::string& body) {
  auto s = find_session(id);
  if (!s) return error(404, "unknown game");
  Json j;
  try {
    j = Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    return error(400, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("word") || !j["word"].is_string()) {
    return error(400, "field 'word' is required");
  }

  std::unique_lock lock(s->mutex, std::try_to_lock);
  if (!lock.owns_lock()) return error(409, "another move is being processed");
  if (s->engine_thinking) return error(409, "engine is thinking");
  if (j.contains("expected_seq") &&
      (!j["expected_seq"].is_number_unsigned() || j["expected_seq"].get<std::size_t>() != s->events.size())) {
    return error(409, "stale expected_seq");
  }
  GameSession& g = *s->session;
  if (g.status() != GameStatus::ongoing) return error(409, "the game is over");
  if (!is_human(*s, g.turn())) return error(409, "it is not your turn");

  Word w;
  try {
    w = g.dfa().parse_word(j["word"].get<std::string>());
  } catch (const PreconditionError& e) {
    return error(400, e.what());
  }
  try {
    record_move(*s, g.play(g.turn(), w));
  } catch (const MoveError& e) {
    return error(e.kind() == MoveError::Kind::illegal_word ? 400 : 409, e.what());
  }
  schedule_engine(s);
  return {200, view(*s)};
}

ServiceResponse PlayService::get_hint(const std::string& id) {
  auto s = find_session(id);
  if (!s) return error(404, "unknown game");
  std::lock_guard lock(s->mutex);
  const GameSession& g = *s->session;
  if (g.status() != GameStatus::ongoing) return error(409, "the game is over");
  if (s->engine_thinking || !is_human(*s, g.turn())) return error(409, "it is not your turn");
  const auto advice = s->engine->advise(g, g.turn());
  Json out;
  out["move"] = g.dfa().format_word(advice.move);
  out["source"] = advice.source;
  out["value"] = advice.value_known ? (advice.value ? Json(*advice.value) : Json("bob wins")) : Json(nullptr);
  Json alternatives = Json::array();
  for (const auto& w : advice.alternatives) alternatives.push_back(g.dfa().format_word(w));
  out["alternatives"] = alternatives;
  out["explanation"] = advice.explanation;
  return {200, out};
}

std::optional<std::vector<Json>> PlayService::events_after(const std::string& id, std::size_t after,
                                                           std::chrono::milliseconds wait, bool& finished) {
  auto s = find_session(id);
  if (!s) return std::nullopt;
  std::unique_lock lock(s->mutex);
  s->changed.wait_for(lock, wait, [&] {
    return s->events.size() > after || (s->session->status() != GameStatus::ongoing && !s->engine_thinking);
  });
  std::vector<Json> out;
  for (std::size_t i = after; i < s->events.size(); ++i) out.push_back(s->events[i]);
  finished = s->session->status() != GameStatus::ongoing && !s->engine_thinking;
  return out;
}

void PlayService::wait_idle(const std::string& id) {
  auto s = find_session(id);
  if (!s) return;
  std::unique_lock lock(s->mutex);
  s->changed.wait(lock, [&] { return !s->engine_thinking; });
}

void PlayService::bind(httplib::Server& server) {
  auto reply = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Post("/automata", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, create_automaton(req.body));
  });
  server.Get(R"(/automata/([^/]+)/analysis)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_analysis(req.matches[1]));
  });
  server.Post("/games", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, create_game(req.body));
  });
  server.Get(R"(/games/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_game(req.matches[1]));
  });
  server.Post(R"(/games/([^/]+)/move)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, post_move(req.matches[1], req.body));
  });
  server.Get(R"(/games/([^/]+)/hint)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_hint(req.matches[1]));
  });
  server.Get(R"(/games/([^/]+)/events)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    if (!find_session(id)) {
      reply(res, error(404, "unknown game"));
      return;
    }
    std::size_t after = 0;
    if (req.has_param("after")) {
      const auto v = detail::parse_index(req.get_param_value("after"));
      if (!v) {
        reply(res, error(400, "after must be a nonnegative integer"));
        return;
      }
      after = *v;
    }
    res.set_chunked_content_provider(
        "text/event-stream", [this, id, after](std::size_t, httplib::DataSink& sink) mutable {
          bool finished = false;
          auto events = events_after(id, after, std::chrono::milliseconds(500), finished);
          if (!events) return false;
          for (const auto& e : *events) {
            const std::string chunk = "data: " + e.dump() + "\n\n";
            if (!sink.write(chunk.data(), chunk.size())) return false;
            after = e["seq"].get<std::size_t>();
          }
          if (finished) {
            sink.done();
            return true;
          }
          return sink.is_writable();
        });
  });
}

}  // namespace syncgame
