#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "codedswitch/model.hpp"
#include "codedswitch/rng.hpp"

namespace codedswitch {

enum class DesignSource { projective_plane, lexicographic_packing, file };

std::string_view to_string(DesignSource source) noexcept;

/// Blocks of a packing: every pair of distinct blocks meets in at most t-1
/// points. Projective planes are additionally Steiner 2-designs.
struct BlockDesign {
  int N = 0;
  int n = 0;
  int t = 0;
  std::vector<MuSet> blocks;
  DesignSource source = DesignSource::file;

  int b() const noexcept { return static_cast<int>(blocks.size()); }
  /// Index of `block` in `blocks`, or -1.
  int find(const MuSet& block) const;
};

/// L independent uniform n-subsets of {0..N-1} (with replacement across packets).
Instance draw_uniform(int N, int n, int L, PlacementRng& rng);

/// L independent arcs of n consecutive MUs with uniform starts. Requires n < N.
Instance draw_cyclic(int N, int n, int L, PlacementRng& rng);

/// Uniform draws from the design's blocks. Without replacement the L blocks
/// are distinct (requires L <= b).
Instance draw_design(const BlockDesign& design, int L, PlacementRng& rng, bool with_replacement = true);

/// Lines of PG(2, q) for prime q: a 2-(q²+q+1, q+1, 1) design.
BlockDesign build_projective_plane(int q);

/// Greedy lexicode over n-subsets of {0..N-1} in lexicographic order, keeping
/// a subset iff it meets every kept block in at most `max_intersection` points.
BlockDesign build_lexicographic_packing(int N, int n, int max_intersection);

/// Throws IntersectionTooLarge, CoverageGap, CoverageDuplicate (or
/// CardinalityMismatch / IndexOutOfRange for malformed blocks).
void verify_packing(const BlockDesign& design);

/// Text format: header line "N n t", then one block per line as sorted
/// space-separated indices.
std::string format_design(const BlockDesign& design);
BlockDesign parse_design(std::string_view text);

BlockDesign read_design_file(const std::string& path);
void write_design_file(const std::string& path, const BlockDesign& design);

/// Published maxima A(N, 6, 5) of constant-weight codes, used as upper bounds
/// on packing sizes. Returns 0 when no value is tabulated.
int known_cw_code_size_d6_w5(int N);

}  // namespace codedswitch
