#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "syncgame/dfa.hpp"

namespace syncgame {

/// Board directions in letter order of the compiled automaton.
enum class Direction { e = 0, n = 1, s = 2, w = 3 };

std::optional<Direction> parse_direction(std::string_view text);
char to_char(Direction d);
Direction inverse(Direction d);

struct Cell {
  std::size_t x = 0;
  std::size_t y = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Walled grid; (0,0) is the bottom-left cell and y grows northwards.
/// Without `wrap` the outer boundary is walled except at exits; with it
/// moves across the boundary re-enter on the opposite side.
struct GridBoard {
  std::size_t width = 0;
  std::size_t height = 0;
  bool wrap = false;
  /// Per cell, per direction: the edge is walled. Symmetric for interior
  /// edges.
  std::vector<std::array<bool, 4>> walls;
  std::map<Cell, Direction> arrows;
  /// Open boundary edges leading to the sink.
  std::vector<std::pair<Cell, Direction>> exits;
  /// Optional names of cells, kept for display and tests.
  std::map<std::string, Cell> labels;

  std::size_t cell_count() const noexcept { return width * height; }
  State state_of(Cell c) const { return static_cast<State>(c.y * width + c.x); }
  Cell cell_of(State q) const { return {q % width, q / width}; }
  bool has_sink() const noexcept { return !exits.empty(); }
  /// Index of σ in the compiled automaton.
  State sink() const { return static_cast<State>(cell_count()); }
  bool walled(Cell c, Direction d) const { return walls[state_of(c)][static_cast<std::size_t>(d)]; }
  bool is_exit(Cell c, Direction d) const;
};

/// Racing track: b advances one square, a advances arrows[i] squares.
struct TrackBoard {
  std::size_t cells = 0;
  std::vector<std::size_t> arrows;
};

using Board = std::variant<GridBoard, TrackBoard>;

/// Grammar, one statement per line, '#' comments:
///   grid W H [wrap]
///   wall x1 y1 x2 y2        adjacent cells
///   wall x y <dir> outside  boundary edge
///   arrow x y <dir>
///   exit x y <dir>
///   label x y <name>
///   track cells=N
///   arrows i=k [i=k ...]
/// Throws ParseError.
Board parse_board(std::string_view text);
std::string serialize_board(const Board& board);

/// States are cells in row-major order from (0,0), then σ if the board has
/// an exit. Letters e, n, s, w.
Dfa compile_grid(const GridBoard& board);
Dfa compile_track(const TrackBoard& board);
Dfa compile_board(const Board& board);

/// Text picture of the grid with tokens marked by '*', walls by '|' and
/// '-', arrows by '>', '^', 'v', '<' when the cell is empty.
std::string render_grid(const GridBoard& board, StateMask tokens);

}  // namespace syncgame
