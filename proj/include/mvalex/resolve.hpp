#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvalex/diagrams.hpp"
#include "mvalex/tangles.hpp"

namespace mvalex {

/// Five-term resolution of an upward crossing on P_4, points 0..3 being
/// bottom-left, bottom-right, top-right, top-left.
DiagramSum resolve_crossing(int sign, const ColorVar& over, const ColorVar& under);

/// Resolution of crossing slice h of t, colored from its strands.
DiagramSum resolve_slice(const MorseTangle& t, int h);

struct SliceStats {
  int slice = 0;
  SliceKind kind = SliceKind::Cross;
  int width = 0;  // frontier width above the slice
  GlueStats glue;
};

struct ContractionStats {
  std::vector<SliceStats> slices;
  int crossings = 0;
  std::uint64_t total_raw = 0;     // products traced over all slices
  std::uint64_t total_surviving = 0;
  std::uint64_t peak_terms = 0;    // largest frontier
  std::uint64_t final_terms = 0;   // terms of the result after expanding PLAIN arcs
  std::optional<GlueStats> full;   // single-shot gluing of every crossing, when affordable
};

struct EvaluateOptions {
  unsigned threads = 1;
  bool expand_plain_eagerly = false;
  GlueScalars scalars{};
  ContractionStats* stats = nullptr;
};

/// The P_{nb+nt} element of t in box convention (bottom endpoints first,
/// then top endpoints right to left), contracted slice by slice.
DiagramSum evaluate(const MorseTangle& t, const EvaluateOptions& options = {});

/// Same value computed by gluing every crossing into one planar tangle at once.
DiagramSum evaluate_full(const MorseTangle& t, GlueStats* stats = nullptr, const GlueOptions& options = {});

/// The planar tangle whose inner disks are the crossings of t, in slice order.
PlanarTangle crossing_tangle(const MorseTangle& t);

/// Frontier statistics; the single-shot count is included for at most
/// `full_limit` crossings.
ContractionStats contraction_stats(const MorseTangle& t, int full_limit = 8, unsigned threads = 1);

}  // namespace mvalex
