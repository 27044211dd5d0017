#include "codedswitch/codec.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iterator>

namespace codedswitch {

namespace gf256 {

namespace {

struct Tables {
  std::array<std::uint8_t, 512> exp{};
  std::array<int, 256> log{};

  Tables() {
    int x = 1;
    for (int i = 0; i < 255; ++i) {
      exp[i] = static_cast<std::uint8_t>(x);
      log[x] = i;
      x <<= 1;
      if (x & 0x100) x ^= 0x11D;
    }
    for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  const auto& t = tables();
  return t.exp[t.log[a] + t.log[b]];
}

std::uint8_t inv(std::uint8_t a) {
  if (a == 0) throw SwitchError(ErrorCode::BadConfig, "zero has no inverse in GF(256)");
  const auto& t = tables();
  return t.exp[255 - t.log[a]];
}

std::uint8_t pow(std::uint8_t a, int e) noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const auto& t = tables();
  return t.exp[(static_cast<long>(t.log[a]) * e) % 255];
}

}  // namespace gf256

namespace {

using Matrix = std::vector<std::vector<std::uint8_t>>;

Matrix invert(Matrix m) {
  const int k = static_cast<int>(m.size());
  Matrix out(k, std::vector<std::uint8_t>(k, 0));
  for (int i = 0; i < k; ++i) out[i][i] = 1;
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    while (pivot < k && m[pivot][col] == 0) ++pivot;
    if (pivot == k) throw SwitchError(ErrorCode::DecodeFailure, "singular decoding matrix");
    std::swap(m[col], m[pivot]);
    std::swap(out[col], out[pivot]);
    const std::uint8_t s = gf256::inv(m[col][col]);
    for (int j = 0; j < k; ++j) {
      m[col][j] = gf256::mul(m[col][j], s);
      out[col][j] = gf256::mul(out[col][j], s);
    }
    for (int r = 0; r < k; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const std::uint8_t f = m[r][col];
      for (int j = 0; j < k; ++j) {
        m[r][j] ^= gf256::mul(f, m[col][j]);
        out[r][j] ^= gf256::mul(f, out[col][j]);
      }
    }
  }
  return out;
}

// dst ^= f * src
void axpy(Bytes& dst, std::uint8_t f, const Bytes& src) {
  if (f == 0) return;
  for (std::size_t b = 0; b < dst.size(); ++b) dst[b] ^= gf256::mul(f, src[b]);
}

void xor_into(Bytes& dst, const Bytes& src) {
  for (std::size_t b = 0; b < dst.size(); ++b) dst[b] ^= src[b];
}

int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t g) {
  const int dg = degree(g);
  for (int d = degree(a); d >= dg; d = degree(a)) a ^= g << (d - dg);
  return a;
}

// x^n + 1 mod g without overflow for n up to 63.
bool divides_xn_plus_1(std::uint64_t g, int n) {
  std::uint64_t r = 1;  // x^0 mod g
  for (int i = 0; i < n; ++i) r = poly_mod(r << 1, g);
  return (r ^ poly_mod(1, g)) == 0;
}

std::uint64_t resolved_generator(const CodecConfig& cfg) {
  if (cfg.generator != 0) return cfg.generator;
  return *binary_cyclic_generator(cfg.n, cfg.k);
}

void check_data(const std::vector<Bytes>& data, const CodecConfig& cfg) {
  validate_config(cfg);
  if (static_cast<int>(data.size()) != cfg.k) {
    throw SwitchError(ErrorCode::BadConfig, "expected " + std::to_string(cfg.k) + " data chunks");
  }
  for (const auto& d : data) {
    if (static_cast<int>(d.size()) != cfg.B) {
      throw SwitchError(ErrorCode::BadConfig, "data chunk is not " + std::to_string(cfg.B) + " bytes");
    }
  }
}

void check_chunks(const ChunkSet& cs, const CodecConfig& cfg) {
  validate_config(cfg);
  if (static_cast<int>(cs.chunks.size()) != cfg.n || static_cast<int>(cs.present.size()) != cfg.n) {
    throw SwitchError(ErrorCode::BadConfig, "chunk set does not have n slots");
  }
  for (int i = 0; i < cfg.n; ++i) {
    if (cs.present[i] && static_cast<int>(cs.chunks[i].size()) != cfg.B) {
      throw SwitchError(ErrorCode::BadConfig, "chunk " + std::to_string(i) + " is not B bytes");
    }
  }
}

void put_le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(const std::string& in, int offset, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(in[offset + i])) << (8 * i);
  return v;
}

}  // namespace

std::string_view to_string(CodeFamily family) noexcept {
  return family == CodeFamily::mds ? "mds" : "binary_cyclic";
}

CodeFamily code_family_from_string(std::string_view name) {
  if (name == "mds") return CodeFamily::mds;
  if (name == "binary_cyclic" || name == "cyclic") return CodeFamily::binary_cyclic;
  throw SwitchError(ErrorCode::ParseError, "unknown code family '" + std::string(name) + "'");
}

void validate_config(const CodecConfig& cfg) {
  if (cfg.k < 1 || cfg.n < cfg.k) throw SwitchError(ErrorCode::BadConfig, "need 1 <= k <= n");
  if (cfg.B < 1) throw SwitchError(ErrorCode::BadConfig, "chunk size must be positive");
  if (cfg.family == CodeFamily::mds) {
    if (cfg.n > 255) throw SwitchError(ErrorCode::BadConfig, "MDS over GF(256) supports n <= 255");
    return;
  }
  if (cfg.n > 63) throw SwitchError(ErrorCode::BadConfig, "binary cyclic codes support n <= 63");
  if (cfg.generator != 0) {
    if (degree(cfg.generator) != cfg.n - cfg.k || !divides_xn_plus_1(cfg.generator, cfg.n)) {
      throw SwitchError(ErrorCode::BadConfig, "generator must have degree n-k and divide x^n - 1");
    }
    return;
  }
  if (!binary_cyclic_generator(cfg.n, cfg.k)) {
    throw SwitchError(ErrorCode::BadConfig, "no binary cyclic [" + std::to_string(cfg.n) + "," +
                                                std::to_string(cfg.k) + "] code in the catalog");
  }
}

int ChunkSet::present_count() const {
  return static_cast<int>(std::count(present.begin(), present.end(), true));
}

ChunkSet ChunkSet::restricted_to(const std::vector<bool>& keep) const {
  ChunkSet out = *this;
  for (std::size_t i = 0; i < out.chunks.size(); ++i) {
    if (!keep[i]) {
      out.present[i] = false;
      out.chunks[i].clear();
    }
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> mds_generator(int k, int n) {
  // Vandermonde rows at points 0..n-1; any k rows are independent.
  Matrix v(n, std::vector<std::uint8_t>(k));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) v[i][j] = gf256::pow(static_cast<std::uint8_t>(i), j);
  }
  const Matrix top_inv = invert(Matrix(v.begin(), v.begin() + k));
  Matrix g(n, std::vector<std::uint8_t>(k, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      std::uint8_t acc = 0;
      for (int t = 0; t < k; ++t) acc ^= gf256::mul(v[i][t], top_inv[t][j]);
      g[i][j] = acc;
    }
  }
  return g;
}

ChunkSet mds_encode(const std::vector<Bytes>& data, const CodecConfig& cfg) {
  if (cfg.family != CodeFamily::mds) throw SwitchError(ErrorCode::BadConfig, "config is not MDS");
  check_data(data, cfg);
  const auto g = mds_generator(cfg.k, cfg.n);
  ChunkSet out{std::vector<Bytes>(cfg.n), std::vector<bool>(cfg.n, true)};
  for (int i = 0; i < cfg.k; ++i) out.chunks[i] = data[i];
  for (int i = cfg.k; i < cfg.n; ++i) {
    out.chunks[i].assign(cfg.B, 0);
    for (int j = 0; j < cfg.k; ++j) axpy(out.chunks[i], g[i][j], data[j]);
  }
  return out;
}

std::vector<Bytes> mds_decode(const ChunkSet& chunks, const CodecConfig& cfg) {
  if (cfg.family != CodeFamily::mds) throw SwitchError(ErrorCode::BadConfig, "config is not MDS");
  check_chunks(chunks, cfg);
  std::vector<int> rows;
  for (int i = 0; i < cfg.n && static_cast<int>(rows.size()) < cfg.k; ++i) {
    if (chunks.present[i]) rows.push_back(i);
  }
  if (static_cast<int>(rows.size()) < cfg.k) {
    throw SwitchError(ErrorCode::TooFewChunks, std::to_string(chunks.present_count()) + " chunks present, need " +
                                                   std::to_string(cfg.k));
  }
  if (rows.back() == cfg.k - 1) return std::vector<Bytes>(chunks.chunks.begin(), chunks.chunks.begin() + cfg.k);

  const auto g = mds_generator(cfg.k, cfg.n);
  Matrix sub;
  for (int r : rows) sub.push_back(g[r]);
  const Matrix dec = invert(std::move(sub));
  std::vector<Bytes> data(cfg.k, Bytes(cfg.B, 0));
  for (int j = 0; j < cfg.k; ++j) {
    for (int r = 0; r < cfg.k; ++r) axpy(data[j], dec[j][r], chunks.chunks[rows[r]]);
  }
  return data;
}

std::optional<std::uint64_t> binary_cyclic_generator(int n, int k) {
  if (k < 1 || n < k || n > 63) return std::nullopt;
  const int d = n - k;
  if (d == 0) return 1;
  if (d > 24) return std::nullopt;
  // The constant term is always 1: x does not divide x^n - 1.
  for (std::uint64_t g = (std::uint64_t{1} << d) | 1; g < (std::uint64_t{1} << (d + 1)); g += 2) {
    if (divides_xn_plus_1(g, n)) return g;
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> binary_cyclic_catalog(int max_n) {
  std::vector<std::pair<int, int>> out;
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 1; k <= n; ++k) {
      if (binary_cyclic_generator(n, k)) out.emplace_back(n, k);
    }
  }
  return out;
}

ChunkSet cyclic_encode(const std::vector<Bytes>& data, const CodecConfig& cfg) {
  if (cfg.family != CodeFamily::binary_cyclic) throw SwitchError(ErrorCode::BadConfig, "config is not binary cyclic");
  check_data(data, cfg);
  const std::uint64_t g = resolved_generator(cfg);
  const int d = cfg.n - cfg.k;
  ChunkSet out{std::vector<Bytes>(cfg.n, Bytes(cfg.B, 0)), std::vector<bool>(cfg.n, true)};
  for (int j = 0; j < cfg.k; ++j) {
    out.chunks[d + j] = data[j];
    const std::uint64_t r = poly_mod(std::uint64_t{1} << (d + j), g);
    for (int p = 0; p < d; ++p) {
      if (r >> p & 1u) xor_into(out.chunks[p], data[j]);
    }
  }
  return out;
}

std::vector<Bytes> cyclic_decode_burst(const ChunkSet& chunks, const CodecConfig& cfg) {
  if (cfg.family != CodeFamily::binary_cyclic) throw SwitchError(ErrorCode::BadConfig, "config is not binary cyclic");
  check_chunks(chunks, cfg);
  const int n = cfg.n, d = n - cfg.k;
  std::vector<int> erased;
  int runs = 0;
  for (int p = 0; p < n; ++p) {
    if (chunks.present[p]) continue;
    erased.push_back(p);
    runs += chunks.present[(p + n - 1) % n];
  }
  if (static_cast<int>(erased.size()) > d || runs > 1) {
    throw SwitchError(ErrorCode::NotABurst, "erasures are not one cyclic burst of length <= n-k");
  }

  // c(x) mod g = 0, split into erased unknowns and known symbols.
  const std::uint64_t g = resolved_generator(cfg);
  const int E = static_cast<int>(erased.size());
  std::vector<std::uint64_t> lhs(d, 0);
  std::vector<Bytes> rhs(d, Bytes(cfg.B, 0));
  for (int i = 0; i < n; ++i) {
    const std::uint64_t r = poly_mod(std::uint64_t{1} << i, g);
    const auto it = std::find(erased.begin(), erased.end(), i);
    for (int p = 0; p < d; ++p) {
      if (!(r >> p & 1u)) continue;
      if (it != erased.end()) {
        lhs[p] |= std::uint64_t{1} << (it - erased.begin());
      } else {
        xor_into(rhs[p], chunks.chunks[i]);
      }
    }
  }
  std::vector<Bytes> symbol(chunks.chunks);
  int row = 0;
  std::vector<int> pivot_row(E, -1);
  for (int col = 0; col < E; ++col) {
    int r = row;
    while (r < d && !(lhs[r] >> col & 1u)) ++r;
    if (r == d) throw SwitchError(ErrorCode::DecodeFailure, "burst positions are not independent");
    std::swap(lhs[row], lhs[r]);
    std::swap(rhs[row], rhs[r]);
    for (int o = 0; o < d; ++o) {
      if (o != row && (lhs[o] >> col & 1u)) {
        lhs[o] ^= lhs[row];
        xor_into(rhs[o], rhs[row]);
      }
    }
    pivot_row[col] = row++;
  }
  for (int c = 0; c < E; ++c) symbol[erased[c]] = rhs[pivot_row[c]];
  return std::vector<Bytes>(symbol.begin() + d, symbol.end());
}

ChunkSet encode(const std::vector<Bytes>& data, const CodecConfig& cfg) {
  return cfg.family == CodeFamily::mds ? mds_encode(data, cfg) : cyclic_encode(data, cfg);
}

std::vector<Bytes> decode(const ChunkSet& chunks, const CodecConfig& cfg) {
  return cfg.family == CodeFamily::mds ? mds_decode(chunks, cfg) : cyclic_decode_burst(chunks, cfg);
}

void write_chunk_file(const std::string& path, const ChunkFile& chunk) {
  if (static_cast<int>(chunk.payload.size()) != chunk.B) {
    throw SwitchError(ErrorCode::BadConfig, "payload is not B bytes");
  }
  std::string out = "CSWC";
  put_le(out, static_cast<std::uint64_t>(chunk.k), 2);
  put_le(out, static_cast<std::uint64_t>(chunk.n), 2);
  put_le(out, static_cast<std::uint64_t>(chunk.B), 4);
  put_le(out, static_cast<std::uint64_t>(chunk.index), 4);
  out.append(chunk.payload.begin(), chunk.payload.end());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SwitchError(ErrorCode::ParseError, "cannot write " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

ChunkFile read_chunk_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SwitchError(ErrorCode::ParseError, "cannot read " + path);
  const std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (in.size() < 16 || in.compare(0, 4, "CSWC") != 0) {
    throw SwitchError(ErrorCode::ParseError, path + " is not a chunk file");
  }
  ChunkFile c;
  c.k = static_cast<int>(get_le(in, 4, 2));
  c.n = static_cast<int>(get_le(in, 6, 2));
  c.B = static_cast<int>(get_le(in, 8, 4));
  c.index = static_cast<int>(get_le(in, 12, 4));
  if (in.size() != 16 + static_cast<std::size_t>(c.B)) {
    throw SwitchError(ErrorCode::ParseError, path + ": payload length does not match header");
  }
  c.payload.assign(in.begin() + 16, in.end());
  return c;
}

std::vector<std::optional<std::vector<Bytes>>> end_to_end_read(const Instance& inst, const Solution& sol,
                                                               const std::vector<ChunkSet>& stored,
                                                               const CodecConfig& cfg) {
  validate_solution(inst, sol);
  validate_config(cfg);
  if (cfg.k != inst.k || cfg.n != inst.n) throw SwitchError(ErrorCode::BadConfig, "codec (k, n) differs from instance");
  if (static_cast<int>(stored.size()) != inst.L()) throw SwitchError(ErrorCode::BadConfig, "one chunk set per packet");

  std::vector<std::optional<std::vector<Bytes>>> out(inst.L());
  for (int i = 0; i < inst.L(); ++i) {
    if (!sol.served(i)) continue;
    const auto order = storage_order(inst, i);
    std::vector<bool> keep(inst.n);
    for (int j = 0; j < inst.n; ++j) keep[j] = sol.assignments()[i]->contains(order[j]);
    try {
      out[i] = decode(stored[i].restricted_to(keep), cfg);
    } catch (const SwitchError& e) {
      throw SwitchError(ErrorCode::DecodeFailure, "packet " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace codedswitch
