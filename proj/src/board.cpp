#include "syncgame/board.hpp"

#include <algorithm>
#include <sstream>

#include "syncgame/errors.hpp"
#include "text_util.hpp"

namespace syncgame {

using detail::parse_index;
using detail::Token;

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "e") return Direction::e;
  if (text == "n") return Direction::n;
  if (text == "s") return Direction::s;
  if (text == "w") return Direction::w;
  return std::nullopt;
}

char to_char(Direction d) {
  static constexpr char kNames[] = {'e', 'n', 's', 'w'};
  return kNames[static_cast<std::size_t>(d)];
}

Direction inverse(Direction d) {
  switch (d) {
    case Direction::e: return Direction::w;
    case Direction::n: return Direction::s;
    case Direction::s: return Direction::n;
    case Direction::w: return Direction::e;
  }
  return d;
}

namespace {

constexpr std::array<Direction, 4> kDirections = {Direction::e, Direction::n, Direction::s, Direction::w};

std::size_t dir_index(Direction d) { return static_cast<std::size_t>(d); }

/// Neighbor across an edge, or nullopt when the edge is on the boundary of
/// a non-wrapping grid.
std::optional<Cell> neighbor(const GridBoard& b, Cell c, Direction d) {
  const auto w = b.width;
  const auto h = b.height;
  switch (d) {
    case Direction::e:
      if (c.x + 1 < w) return Cell{c.x + 1, c.y};
      return b.wrap ? std::optional<Cell>(Cell{0, c.y}) : std::nullopt;
    case Direction::w:
      if (c.x > 0) return Cell{c.x - 1, c.y};
      return b.wrap ? std::optional<Cell>(Cell{w - 1, c.y}) : std::nullopt;
    case Direction::n:
      if (c.y + 1 < h) return Cell{c.x, c.y + 1};
      return b.wrap ? std::optional<Cell>(Cell{c.x, 0}) : std::nullopt;
    case Direction::s:
      if (c.y > 0) return Cell{c.x, c.y - 1};
      return b.wrap ? std::optional<Cell>(Cell{c.x, h - 1}) : std::nullopt;
  }
  return std::nullopt;
}

bool on_boundary(const GridBoard& b, Cell c, Direction d) {
  if (b.wrap) return false;
  return !neighbor(b, c, d).has_value();
}

[[noreturn]] void fail(std::size_t line, const Token& t, const std::string& msg) {
  throw ParseError(line, t.column, msg);
}

std::size_t number(std::size_t line, const Token& t) {
  auto v = parse_index(t.text);
  if (!v) fail(line, t, "expected a nonnegative integer, got '" + t.text + "'");
  return *v;
}

Direction direction(std::size_t line, const Token& t) {
  auto d = parse_direction(t.text);
  if (!d) fail(line, t, "expected a direction e, n, s or w, got '" + t.text + "'");
  return *d;
}

/// Parses "key=value" with a nonnegative integer value.
std::pair<std::string, std::size_t> assignment(std::size_t line, const Token& t) {
  const auto eq = t.text.find('=');
  if (eq == std::string::npos) fail(line, t, "expected key=value, got '" + t.text + "'");
  auto v = parse_index(std::string_view(t.text).substr(eq + 1));
  if (!v) fail(line, t, "expected an integer after '='");
  return {t.text.substr(0, eq), *v};
}

void expect_count(std::size_t line, const std::vector<Token>& tokens, std::size_t count) {
  if (tokens.size() != count) {
    fail(line, tokens.back(), "'" + tokens.front().text + "' expects " + std::to_string(count - 1) +
                                  " argument(s)");
  }
}

}  // namespace

bool GridBoard::is_exit(Cell c, Direction d) const {
  return std::find(exits.begin(), exits.end(), std::pair{c, d}) != exits.end();
}

Board parse_board(std::string_view text) {
  std::optional<GridBoard> grid;
  std::optional<TrackBoard> track;
  struct PendingExit {
    std::size_t line;
    Token token;
    Cell cell;
    Direction dir;
  };
  std::vector<PendingExit> pending_exits;

  auto cell = [&](std::size_t line, const Token& tx, const Token& ty) {
    const Cell c{number(line, tx), number(line, ty)};
    if (c.x >= grid->width || c.y >= grid->height) {
      fail(line, tx, "cell (" + tx.text + "," + ty.text + ") is off the board");
    }
    return c;
  };

  detail::for_each_line(text, [&](std::size_t line, const std::vector<Token>& t) {
    const std::string& kw = t[0].text;
    if (kw == "grid") {
      if (grid || track) fail(line, t[0], "board header given twice");
      if (t.size() != 3 && t.size() != 4) fail(line, t[0], "'grid' expects W H [wrap]");
      GridBoard b;
      b.width = number(line, t[1]);
      b.height = number(line, t[2]);
      if (b.width == 0 || b.height == 0) fail(line, t[1], "grid dimensions must be positive");
      if (t.size() == 4) {
        if (t[3].text != "wrap") fail(line, t[3], "expected 'wrap'");
        b.wrap = true;
      }
      b.walls.assign(b.cell_count(), {false, false, false, false});
      grid = std::move(b);
      return;
    }
    if (kw == "track") {
      if (grid || track) fail(line, t[0], "board header given twice");
      expect_count(line, t, 2);
      auto [key, value] = assignment(line, t[1]);
      if (key != "cells") fail(line, t[1], "expected cells=N");
      if (value == 0) fail(line, t[1], "a track needs at least one cell");
      track = TrackBoard{value, std::vector<std::size_t>(value, 0)};
      return;
    }
    if (kw == "arrows") {
      if (!track) fail(line, t[0], "'arrows' requires a preceding 'track' header");
      if (t.size() < 2) fail(line, t[0], "'arrows' expects i=k entries");
      for (std::size_t i = 1; i < t.size(); ++i) {
        auto [key, value] = assignment(line, t[i]);
        auto index = parse_index(key);
        if (!index || *index >= track->cells) fail(line, t[i], "cell index out of range");
        if (value >= track->cells) fail(line, t[i], "arrow count must be below the cell count");
        track->arrows[*index] = value;
      }
      return;
    }
    if (!grid) fail(line, t[0], "'" + kw + "' requires a preceding 'grid' header");
    GridBoard& b = *grid;
    if (kw == "wall") {
      if (t.size() == 5 && t[4].text == "outside") {
        const Cell c = cell(line, t[1], t[2]);
        const Direction d = direction(line, t[3]);
        if (!on_boundary(b, c, d)) fail(line, t[3], "edge is not on the board boundary");
        b.walls[b.state_of(c)][dir_index(d)] = true;
        return;
      }
      expect_count(line, t, 5);
      const Cell c1 = cell(line, t[1], t[2]);
      const Cell c2 = cell(line, t[3], t[4]);
      for (Direction d : kDirections) {
        if (neighbor(b, c1, d) == c2) {
          b.walls[b.state_of(c1)][dir_index(d)] = true;
          b.walls[b.state_of(c2)][dir_index(inverse(d))] = true;
          return;
        }
      }
      fail(line, t[1], "wall between cells that are not adjacent");
    }
    if (kw == "arrow") {
      expect_count(line, t, 4);
      b.arrows[cell(line, t[1], t[2])] = direction(line, t[3]);
      return;
    }
    if (kw == "exit") {
      expect_count(line, t, 4);
      const Cell c = cell(line, t[1], t[2]);
      const Direction d = direction(line, t[3]);
      if (!on_boundary(b, c, d)) fail(line, t[3], "exit must lead off the board");
      pending_exits.push_back({line, t[3], c, d});
      if (!b.is_exit(c, d)) b.exits.emplace_back(c, d);
      return;
    }
    if (kw == "label") {
      expect_count(line, t, 4);
      b.labels[t[3].text] = cell(line, t[1], t[2]);
      return;
    }
    fail(line, t[0], "unknown statement '" + kw + "'");
  });

  if (track) return *track;
  if (!grid) throw ParseError(1, 1, "missing 'grid' or 'track' header");
  for (const auto& e : pending_exits) {
    if (grid->walled(e.cell, e.dir)) fail(e.line, e.token, "exit is blocked by a wall");
  }
  return *grid;
}

std::string serialize_board(const Board& board) {
  std::ostringstream out;
  if (const auto* t = std::get_if<TrackBoard>(&board)) {
    out << "track cells=" << t->cells << "\n";
    for (std::size_t i = 0; i < t->cells; ++i) {
      if (t->arrows[i] != 0) out << "arrows " << i << "=" << t->arrows[i] << "\n";
    }
    return out.str();
  }
  const auto& g = std::get<GridBoard>(board);
  out << "grid " << g.width << " " << g.height << (g.wrap ? " wrap" : "") << "\n";
  for (std::size_t y = 0; y < g.height; ++y) {
    for (std::size_t x = 0; x < g.width; ++x) {
      const Cell c{x, y};
      for (Direction d : {Direction::e, Direction::n}) {
        if (!g.walled(c, d)) continue;
        if (auto nb = neighbor(g, c, d)) {
          out << "wall " << x << " " << y << " " << nb->x << " " << nb->y << "\n";
        }
      }
      for (Direction d : kDirections) {
        if (g.walled(c, d) && on_boundary(g, c, d)) {
          out << "wall " << x << " " << y << " " << to_char(d) << " outside\n";
        }
      }
    }
  }
  for (const auto& [c, d] : g.arrows) out << "arrow " << c.x << " " << c.y << " " << to_char(d) << "\n";
  for (const auto& [c, d] : g.exits) out << "exit " << c.x << " " << c.y << " " << to_char(d) << "\n";
  for (const auto& [name, c] : g.labels) out << "label " << c.x << " " << c.y << " " << name << "\n";
  return out.str();
}

Dfa compile_grid(const GridBoard& b) {
  const std::size_t cells = b.cell_count();
  const std::size_t n = cells + (b.has_sink() ? 1 : 0);
  std::vector<State> table(n * 4);

  // Boundary edges are walls unless they are exits.
  auto attempt = [&](Cell c, Direction d) -> std::optional<State> {
    if (b.is_exit(c, d)) return b.sink();
    if (b.walled(c, d)) return std::nullopt;
    auto nb = neighbor(b, c, d);
    if (!nb) return std::nullopt;
    return b.state_of(*nb);
  };

  for (State q = 0; q < cells; ++q) {
    const Cell c = b.cell_of(q);
    for (Direction d : kDirections) {
      State target = q;
      if (auto t = attempt(c, d)) {
        target = *t;
      } else {
        Direction bounced = d;
        std::optional<State> redirected;
        if (auto arrow = b.arrows.find(c); arrow != b.arrows.end()) {
          bounced = arrow->second;
          redirected = attempt(c, bounced);
        }
        if (redirected) {
          target = *redirected;
        } else if (auto back = attempt(c, inverse(bounced))) {
          target = *back;
        }
      }
      table[q * 4 + dir_index(d)] = target;
    }
  }
  if (b.has_sink()) {
    for (std::size_t a = 0; a < 4; ++a) table[cells * 4 + a] = b.sink();
  }
  return Dfa(n, {"e", "n", "s", "w"}, std::move(table),
             "grid " + std::to_string(b.width) + "x" + std::to_string(b.height));
}

Dfa compile_track(const TrackBoard& t) {
  const std::size_t n = t.cells;
  std::vector<State> table(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    table[i * 2 + 0] = static_cast<State>((i + t.arrows[i]) % n);
    table[i * 2 + 1] = static_cast<State>((i + 1) % n);
  }
  return Dfa(n, {"a", "b"}, std::move(table), "track " + std::to_string(n));
}

Dfa compile_board(const Board& board) {
  if (const auto* g = std::get_if<GridBoard>(&board)) return compile_grid(*g);
  return compile_track(std::get<TrackBoard>(board));
}

std::string render_grid(const GridBoard& b, StateMask tokens) {
  auto has_token = [&](State q) { return q < 64 && ((tokens >> q) & 1U) != 0; };
  static constexpr char kArrow[] = {'>', '^', 'v', '<'};
  std::ostringstream out;
  for (std::size_t row = b.height; row-- > 0;) {
    out << '+';
    for (std::size_t x = 0; x < b.width; ++x) {
      const Cell c{x, row};
      const bool exit = b.is_exit(c, Direction::n);
      out << (b.walled(c, Direction::n) || (!b.wrap && row + 1 == b.height && !exit) ? "---" : "   ") << '+';
    }
    out << "\n";
    for (std::size_t x = 0; x < b.width; ++x) {
      const Cell c{x, row};
      const bool west_wall = b.walled(c, Direction::w) || (!b.wrap && x == 0 && !b.is_exit(c, Direction::w));
      out << (west_wall ? '|' : ' ');
      char mark = '.';
      if (auto a = b.arrows.find(c); a != b.arrows.end()) mark = kArrow[dir_index(a->second)];
      if (has_token(b.state_of(c))) mark = '*';
      out << ' ' << mark << ' ';
    }
    const Cell last{b.width - 1, row};
    const bool east_wall = b.walled(last, Direction::e) || (!b.wrap && !b.is_exit(last, Direction::e));
    out << (east_wall ? '|' : ' ') << "\n";
  }
  out << '+';
  for (std::size_t x = 0; x < b.width; ++x) {
    const bool exit = b.is_exit(Cell{x, 0}, Direction::s);
    out << (b.wrap || exit ? "   " : "---") << '+';
  }
  out << "\n";
  if (b.has_sink()) out << "sink: " << (has_token(b.sink()) ? '*' : '.') << "\n";
  return out.str();
}

}  // namespace syncgame
