#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mvalex/laurent.hpp"

namespace mvalex {

enum class ArcKind : std::uint8_t { Plain, Dotted, Free };

/// A chord between two boundary points (i < j).
struct Chord {
  int i;
  int j;
  ArcKind kind;
};

/// Basis element of P_k: non-crossing chords plus free ends on k boundary
/// points, indexed 0..k-1 counterclockwise from the marked point.
///
/// The partner array is the canonical form: `mate(i)` is the other endpoint
/// of the chord at i, or -1 when i carries a free end.
class BasisDiagram {
 public:
  BasisDiagram() = default;
  static BasisDiagram make(int k, const std::vector<Chord>& chords, const std::vector<int>& frees);
  /// Builds from a partner array without validation; used by the gluing engine,
  /// whose outputs are planar by construction.
  static BasisDiagram from_partners(std::vector<std::int16_t> mate, std::vector<ArcKind> kind);

  int size() const { return static_cast<int>(mate_.size()); }
  int mate(int i) const { return mate_[static_cast<std::size_t>(i)]; }
  ArcKind kind(int i) const { return kind_[static_cast<std::size_t>(i)]; }
  bool is_free(int i) const { return mate(i) < 0; }
  std::vector<Chord> chords() const;
  std::vector<int> frees() const;
  int count(ArcKind k) const;

  bool is_planar() const;

  auto operator<=>(const BasisDiagram&) const = default;
  bool operator==(const BasisDiagram&) const = default;

 private:
  std::vector<std::int16_t> mate_;
  std::vector<ArcKind> kind_;
};

/// Text form: `k=4; dotted(0,3); dotted(1,2); free(4)`.  The empty diagram is `k=0`.
std::string to_text(const BasisDiagram& d);
BasisDiagram parse_diagram(const std::string& text);
std::ostream& operator<<(std::ostream& os, const BasisDiagram& d);

/// Element of P_k: linear combination of basis diagrams.
class DiagramSum {
 public:
  using Terms = std::map<BasisDiagram, LaurentPoly>;

  explicit DiagramSum(int k = 0) : k_(k) {}
  DiagramSum(const BasisDiagram& d, const LaurentPoly& coeff);

  int size() const { return k_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coefficient(const BasisDiagram& d) const;

  void add(const BasisDiagram& d, const LaurentPoly& coeff);
  DiagramSum& operator+=(const DiagramSum& o);
  DiagramSum& operator-=(const DiagramSum& o);
  friend DiagramSum operator+(DiagramSum a, const DiagramSum& b) { return a += b; }
  friend DiagramSum operator-(DiagramSum a, const DiagramSum& b) { return a -= b; }
  friend DiagramSum operator*(const LaurentPoly& c, const DiagramSum& a);
  bool operator==(const DiagramSum&) const = default;

  /// Applies a variable substitution to every coefficient.
  DiagramSum substitute(const std::map<ColorVar, ColorVar>& map) const;

 private:
  int k_;
  Terms terms_;
};

/// a + c*b, checked for equal sizes.
DiagramSum add_sums(const DiagramSum& a, const DiagramSum& b, const LaurentPoly& c);

std::string to_text(const DiagramSum& s);
std::ostream& operator<<(std::ostream& os, const DiagramSum& s);

/// Replaces every PLAIN chord by DOTTED + (free, free).
DiagramSum expand_plain(const BasisDiagram& d);
DiagramSum expand_plain(const DiagramSum& s);

// ------------------------------------------------------------ planar tangles

/// A boundary point of a planar tangle: disk -1 is the outer disk.
struct Port {
  int disk;
  int index;
  auto operator<=>(const Port&) const = default;
};

/// Outer disk with K points, inner disks with given sizes, and non-crossing
/// strands pairing every boundary point.  Closed loops of the tangle itself
/// are counted in `loops`.
class PlanarTangle {
 public:
  PlanarTangle(int outer, std::vector<int> inner_sizes, std::vector<std::pair<Port, Port>> strands,
               int loops = 0);

  int outer_size() const { return outer_; }
  const std::vector<int>& inner_sizes() const { return inner_; }
  const std::vector<std::pair<Port, Port>>& strands() const { return strands_; }
  int loops() const { return loops_; }

  /// Dense port numbering: outer points first, then each inner disk in turn.
  int port_id(Port p) const;
  int port_count() const { return static_cast<int>(offsets_.back()); }
  int partner(int port_id) const { return partner_[static_cast<std::size_t>(port_id)]; }
  int disk_offset(int disk) const { return offsets_[static_cast<std::size_t>(disk + 1)]; }

  // Standard tangles in the "box" convention: a box with nb bottom and nt top
  // points numbers the bottom left-to-right as 0..nb-1 and the top
  // right-to-left as nb..nb+nt-1.
  static int box_bottom(int nb, int nt, int i);
  static int box_top(int nb, int nt, int j);

  /// Lower box (nb, mid) under upper box (mid, nt) giving (nb, nt).
  static PlanarTangle stacking(int nb, int mid, int nt);
  /// Multiplication tangle on P_{2n}: stacking(n, n, n).  Disk 0 is below.
  static PlanarTangle multiplication(int n);
  /// Closes an (n, n) box into P_0 by joining bottom i to top i.
  static PlanarTangle trace(int n);
  /// Rotation by one marked point on P_k.
  static PlanarTangle rotation(int k);
  /// Identity on P_k.
  static PlanarTangle identity(int k);

 private:
  int outer_;
  std::vector<int> inner_;
  std::vector<std::pair<Port, Port>> strands_;
  int loops_;
  std::vector<int> offsets_;
  std::vector<int> partner_;
};

/// Scalars assigned to closed components by the gluing rules.
struct GlueScalars {
  Integer free_path = 1;      // path between two free ends with no dotted arc
  Integer dotted_cycle = -1;  // closed cycle containing a dotted arc
};

struct GlueStats {
  std::uint64_t raw = 0;        // products of input terms considered
  std::uint64_t surviving = 0;  // products not killed by the vanishing rules
  std::uint64_t merged = 0;     // distinct diagrams with nonzero coefficient
};

struct GlueOptions {
  GlueScalars scalars{};
  unsigned threads = 1;
  GlueStats* stats = nullptr;
};

/// Glues the input sums into the inner disks of `t`, applying the vanishing
/// and scalar rules to every closed component and path.
DiagramSum glue(const PlanarTangle& t, const std::vector<const DiagramSum*>& inputs,
                const GlueOptions& options = {});
DiagramSum glue(const PlanarTangle& t, const std::vector<DiagramSum>& inputs,
                const GlueOptions& options = {});

/// Rotates a sum by one marked point.
DiagramSum rotate(const DiagramSum& s);

/// Box helpers.
BasisDiagram identity_box(int n, ArcKind kind);
/// The identity expansion sum_{S subset of strands} (dotted on S, free elsewhere).
DiagramSum identity_expansion(int n);
/// The P_2 dotted strand and the two-free-end diagram.
BasisDiagram dotted_strand();
BasisDiagram free_pair();

}  // namespace mvalex
