#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvalex/laurent.hpp"

namespace mvalex {

enum class Turn { Cw, Ccw };
enum class Orientation { Up, Down };
enum class SliceKind { Cup, Cap, Cross };

/// One elementary piece of a Morse presentation.  Positions are 0-based and
/// name the left of the two strands involved.
struct Slice {
  SliceKind kind = SliceKind::Cross;
  int position = 0;
  int sign = 1;                     // crossings only
  std::optional<Turn> turn;         // required for cups, optional (checked) for caps
  std::optional<ColorVar> color;    // optional color of a cup's component

  static Slice cup(int position, Turn turn, std::optional<ColorVar> color = {});
  static Slice cap(int position, std::optional<Turn> turn = {});
  static Slice cross(int position, int sign);

  bool operator==(const Slice&) const = default;
};

struct Endpoint {
  ColorVar color;
  Orientation orientation = Orientation::Up;
  bool operator==(const Endpoint&) const = default;
};

/// Half-integers stored doubled.
struct HalfInteger {
  int twice = 0;
  bool is_integer() const { return twice % 2 == 0; }
  int value() const;  // throws unless integral
  std::string to_string() const;
  bool operator==(const HalfInteger&) const = default;
};

/// Oriented, colored tangle presented as a bottom-to-top stack of slices.
/// Always validated: construct through `make`.
class MorseTangle {
 public:
  struct Component {
    ColorVar color;
    bool closed = true;
    int rotation_twice = 0;  // counterclockwise turning / pi
  };

  MorseTangle() = default;
  static MorseTangle make(std::vector<Endpoint> bottom, std::vector<Slice> slices,
                          std::optional<std::vector<Endpoint>> top = std::nullopt);

  const std::vector<Endpoint>& bottom() const { return bottom_; }
  const std::vector<Endpoint>& top() const { return top_; }
  const std::vector<Slice>& slices() const { return slices_; }
  int levels() const { return static_cast<int>(slices_.size()) + 1; }
  int width_at(int level) const { return widths_[static_cast<std::size_t>(level)]; }

  /// Data of the strand at (level, position); level 0 is below the first slice.
  int component_at(int level, int pos) const;
  const ColorVar& color_at(int level, int pos) const;
  Orientation orientation_at(int level, int pos) const;
  /// Turn direction of cup/cap slice h, as derived from orientations.
  Turn turn_of(int slice) const { return turns_[static_cast<std::size_t>(slice)]; }
  int component_of_slice(int slice) const { return slice_component_[static_cast<std::size_t>(slice)]; }

  const std::vector<Component>& components() const { return components_; }
  std::vector<ColorVar> colors() const;
  int crossing_count() const;
  /// True when the tangle has exactly two endpoints, both on one open component.
  bool is_one_strand() const;
  /// Index of the open component of a one-strand tangle.
  int open_component() const;

  /// Recolors components; colors mapped together merge.
  MorseTangle recolored(const std::map<ColorVar, ColorVar>& map) const;

  bool operator==(const MorseTangle& o) const {
    return bottom_ == o.bottom_ && top_ == o.top_ && slices_ == o.slices_;
  }

 private:
  std::vector<Endpoint> bottom_;
  std::vector<Endpoint> top_;
  std::vector<Slice> slices_;
  std::vector<int> widths_;
  std::vector<int> level_offset_;
  std::vector<int> node_component_;
  std::vector<Orientation> node_orientation_;
  std::vector<Turn> turns_;
  std::vector<int> slice_component_;
  std::vector<Component> components_;
};

HalfInteger rotation_number(const MorseTangle& t, const ColorVar& c);
HalfInteger turning_number(const MorseTangle& t);

/// Line-oriented slice grammar; see docs/formats.md.
MorseTangle parse_tangle(std::string_view text);
std::string print_tangle(const MorseTangle& t);

/// Braid on n upward strands; word read bottom-to-top, generator (i, sign)
/// crosses strands i and i+1 (0-based).
MorseTangle braid_tangle(const std::vector<ColorVar>& colors, const std::vector<std::pair<int, int>>& word);
/// One-strand closure of a braid: strand 0 stays open, the rest close on the right.
MorseTangle braid_closure(const std::vector<ColorVar>& colors, const std::vector<std::pair<int, int>>& word);

// ---------------------------------------------------------------- PD codes

/// X[i,j,k,l]: legs counterclockwise starting from the incoming under-strand.
struct PDCrossing {
  std::array<int, 4> legs{};
  std::optional<int> sign;
  bool operator==(const PDCrossing&) const = default;
};

struct ColoredPDCode {
  std::vector<PDCrossing> crossings;
  std::vector<int> loops;  // crossingless unknotted components, by edge label
  std::map<int, ColorVar> edge_colors;
  std::optional<int> cut;
  bool operator==(const ColoredPDCode&) const = default;
};

/// Fully oriented view of a PD code: every crossing has a sign, every edge a
/// direction and a color.
struct OrientedPD {
  struct Crossing {
    int sign = 1;
    std::array<int, 4> legs{};
    int under_in = 0, under_out = 0, over_in = 0, over_out = 0;  // edge labels
  };
  struct Leg {
    int crossing = -1;
    int leg = -1;
  };
  std::vector<Crossing> crossings;
  std::vector<int> loops;
  std::map<int, Leg> tail;  // crossing leg the edge leaves from
  std::map<int, Leg> head;  // crossing leg the edge enters
  std::map<int, ColorVar> color;
  std::map<int, int> component;
  int component_count = 0;
};

ColoredPDCode parse_pd(std::string_view text);
std::string print_pd(const ColoredPDCode& pd);
OrientedPD orient(const ColoredPDCode& pd);

/// Morse presentation of a PD code.  With a cut edge the result is the
/// one-strand tangle obtained by cutting the link open there; without one it
/// is the closed link.
MorseTangle pd_to_morse(const ColoredPDCode& pd, std::optional<int> cut = std::nullopt);
/// PD code of a closed tangle, or of the closure of a tangle whose bottom and
/// top endpoints match (bottom i joined to top i).
ColoredPDCode morse_to_pd(const MorseTangle& t);

// -------------------------------------------------------------------- moves

enum class MoveKind { R2, R3, Curl };

/// R2 variants: 0 = positive below negative, 1 = negative below positive.
/// Curl variants: bit 0 = negative crossing, bit 1 = loop on the left.
struct MoveSite {
  int level = 0;
  int position = 0;
  int variant = 0;
  bool operator==(const MoveSite&) const = default;
};

MorseTangle insert_move(const MorseTangle& t, MoveKind kind, const MoveSite& site);
std::vector<MoveSite> move_sites(const MorseTangle& t, MoveKind kind);

}  // namespace mvalex
