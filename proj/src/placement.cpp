#include "codedswitch/placement.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "codedswitch/json_io.hpp"

namespace codedswitch {

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

// Floyd's sampling: uniform n-subset of {0..N-1}.
MuSet sample_subset(int N, int n, PlacementRng& rng) {
  std::vector<int> chosen;
  chosen.reserve(n);
  for (int j = N - n; j < N; ++j) {
    const int t = rng.below(j + 1);
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  return MuSet(std::move(chosen));
}

// Normalized homogeneous coordinates of PG(2, q): (1,a,b), (0,1,a), (0,0,1).
std::vector<std::array<int, 3>> projective_points(int q) {
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) pts.push_back({1, a, b});
  }
  for (int a = 0; a < q; ++a) pts.push_back({0, 1, a});
  pts.push_back({0, 0, 1});
  return pts;
}

}  // namespace

std::string_view to_string(DesignSource source) noexcept {
  switch (source) {
    case DesignSource::projective_plane: return "projective_plane";
    case DesignSource::lexicographic_packing: return "lexicographic_packing";
    case DesignSource::file: return "file";
  }
  return "file";
}

int BlockDesign::find(const MuSet& block) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] == block) return static_cast<int>(i);
  }
  return -1;
}

Instance draw_uniform(int N, int n, int L, PlacementRng& rng) {
  if (n < 1 || n > N || L < 0) {
    throw SwitchError(ErrorCode::BadParams, "uniform draw needs 1 <= n <= N and L >= 0");
  }
  Instance inst{N, n, n, {}, PlacementTag::uniform};
  inst.packets.reserve(L);
  for (int i = 0; i < L; ++i) inst.packets.push_back(sample_subset(N, n, rng));
  return inst;
}

Instance draw_cyclic(int N, int n, int L, PlacementRng& rng) {
  if (n < 1 || n >= N || L < 0) {
    throw SwitchError(ErrorCode::BadParams, "cyclic draw needs 1 <= n < N and L >= 0");
  }
  Instance inst{N, n, n, {}, PlacementTag::cyclic};
  inst.packets.reserve(L);
  for (int i = 0; i < L; ++i) inst.packets.push_back(cyclic_arc(rng.below(N), n, N));
  return inst;
}

Instance draw_design(const BlockDesign& design, int L, PlacementRng& rng, bool with_replacement) {
  if (design.blocks.empty()) throw SwitchError(ErrorCode::EmptyDesign, "design has no blocks");
  if (L < 1) throw SwitchError(ErrorCode::BadParams, "design draw needs L >= 1");
  Instance inst{design.N, design.n, design.n, {}, PlacementTag::design};
  inst.packets.reserve(L);
  if (with_replacement) {
    for (int i = 0; i < L; ++i) inst.packets.push_back(design.blocks[rng.below(design.b())]);
    return inst;
  }
  if (L > design.b()) {
    throw SwitchError(ErrorCode::BadParams, "cannot draw " + std::to_string(L) + " distinct blocks from " +
                                                std::to_string(design.b()));
  }
  std::vector<int> idx(design.b());
  for (int i = 0; i < design.b(); ++i) idx[i] = i;
  for (int i = 0; i < L; ++i) {
    const int j = i + rng.below(design.b() - i);
    std::swap(idx[i], idx[j]);
    inst.packets.push_back(design.blocks[idx[i]]);
  }
  return inst;
}

BlockDesign build_projective_plane(int q) {
  if (!is_prime(q)) throw SwitchError(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
  const auto pts = projective_points(q);
  BlockDesign d;
  d.N = static_cast<int>(pts.size());
  d.n = q + 1;
  d.t = 2;
  d.source = DesignSource::projective_plane;
  // Lines are indexed by the same normalized triples; incidence is a zero dot product.
  for (const auto& line : pts) {
    std::vector<int> block;
    for (int p = 0; p < d.N; ++p) {
      const auto& x = pts[p];
      if ((line[0] * x[0] + line[1] * x[1] + line[2] * x[2]) % q == 0) block.push_back(p);
    }
    d.blocks.emplace_back(std::move(block));
  }
  std::sort(d.blocks.begin(), d.blocks.end());
  return d;
}

BlockDesign build_lexicographic_packing(int N, int n, int max_intersection) {
  if (!(0 <= max_intersection && max_intersection < n && n <= N)) {
    throw SwitchError(ErrorCode::BadParams, "lexicographic packing needs 0 <= t_max < n <= N");
  }
  BlockDesign d;
  d.N = N;
  d.n = n;
  d.t = max_intersection + 1;
  d.source = DesignSource::lexicographic_packing;

  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  while (true) {
    MuSet candidate(comb);
    const bool ok = std::all_of(d.blocks.begin(), d.blocks.end(), [&](const MuSet& kept) {
      return static_cast<int>(candidate.intersection_size(kept)) <= max_intersection;
    });
    if (ok) d.blocks.push_back(std::move(candidate));

    int i = n - 1;
    while (i >= 0 && comb[i] == N - n + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  return d;
}

void verify_packing(const BlockDesign& design) {
  for (std::size_t i = 0; i < design.blocks.size(); ++i) {
    const MuSet& blk = design.blocks[i];
    if (static_cast<int>(blk.size()) != design.n) {
      throw SwitchError(ErrorCode::CardinalityMismatch, "block " + std::to_string(i) + " has size " +
                                                            std::to_string(blk.size()));
    }
    for (int m : blk) {
      if (m < 0 || m >= design.N) {
        throw SwitchError(ErrorCode::IndexOutOfRange, "block " + std::to_string(i) + " uses point " +
                                                          std::to_string(m));
      }
    }
  }
  for (std::size_t i = 0; i < design.blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < design.blocks.size(); ++j) {
      if (design.blocks[i] == design.blocks[j]) {
        throw SwitchError(ErrorCode::CoverageDuplicate, "blocks " + std::to_string(i) + " and " +
                                                            std::to_string(j) + " coincide");
      }
      if (static_cast<int>(design.blocks[i].intersection_size(design.blocks[j])) > design.t - 1) {
        throw SwitchError(ErrorCode::IntersectionTooLarge, "blocks " + std::to_string(i) + " and " +
                                                               std::to_string(j) + " share more than t-1 points");
      }
    }
  }
  if (design.source != DesignSource::projective_plane) return;

  // Steiner 2-design: every pair of points lies in exactly one block.
  std::vector<int> pair_count(static_cast<std::size_t>(design.N) * design.N, 0);
  for (const MuSet& blk : design.blocks) {
    for (std::size_t a = 0; a < blk.size(); ++a) {
      for (std::size_t c = a + 1; c < blk.size(); ++c) ++pair_count[blk[a] * design.N + blk[c]];
    }
  }
  for (int a = 0; a < design.N; ++a) {
    for (int c = a + 1; c < design.N; ++c) {
      const int cnt = pair_count[a * design.N + c];
      if (cnt == 0) {
        throw SwitchError(ErrorCode::CoverageGap, "pair {" + std::to_string(a) + "," + std::to_string(c) +
                                                      "} lies in no block");
      }
      if (cnt > 1) {
        throw SwitchError(ErrorCode::CoverageDuplicate, "pair {" + std::to_string(a) + "," +
                                                            std::to_string(c) + "} lies in several blocks");
      }
    }
  }
}

std::string format_design(const BlockDesign& design) {
  std::ostringstream out;
  out << design.N << ' ' << design.n << ' ' << design.t << '\n';
  for (const MuSet& blk : design.blocks) {
    for (std::size_t i = 0; i < blk.size(); ++i) out << (i ? " " : "") << blk[i];
    out << '\n';
  }
  return out.str();
}

BlockDesign parse_design(std::string_view text) {
  std::istringstream in{std::string(text)};
  BlockDesign d;
  std::string line;
  if (!std::getline(in, line)) throw SwitchError(ErrorCode::ParseError, "empty design file");
  {
    std::istringstream header(line);
    if (!(header >> d.N >> d.n >> d.t)) throw SwitchError(ErrorCode::ParseError, "bad header '" + line + "'");
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::vector<int> idx;
    int v;
    while (row >> v) idx.push_back(v);
    if (!row.eof()) throw SwitchError(ErrorCode::ParseError, "bad block line '" + line + "'");
    d.blocks.emplace_back(std::move(idx));
  }
  d.source = DesignSource::file;
  return d;
}

BlockDesign read_design_file(const std::string& path) { return parse_design(read_text_file(path)); }

void write_design_file(const std::string& path, const BlockDesign& design) {
  write_text_file(path, format_design(design));
}

int known_cw_code_size_d6_w5(int N) {
  static const std::map<int, int> table = {{5, 1},   {6, 1},   {7, 1},   {8, 2},   {9, 3},
                                           {10, 6},  {11, 11}, {12, 12}, {13, 18}, {14, 28},
                                           {15, 42}, {16, 48}, {17, 68}};
  auto it = table.find(N);
  return it == table.end() ? 0 : it->second;
}

}  // namespace codedswitch
