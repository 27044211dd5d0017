#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "codedswitch/model.hpp"

namespace codedswitch {

using Bytes = std::vector<std::uint8_t>;

namespace gf256 {

/// GF(2^8) modulo x^8 + x^4 + x^3 + x^2 + 1 (0x11D), generator 2.
std::uint8_t mul(std::uint8_t a, std::uint8_t b) noexcept;
std::uint8_t inv(std::uint8_t a);  // throws BadConfig for 0
std::uint8_t pow(std::uint8_t a, int e) noexcept;

}  // namespace gf256

enum class CodeFamily { mds, binary_cyclic };

std::string_view to_string(CodeFamily family) noexcept;
CodeFamily code_family_from_string(std::string_view name);

struct CodecConfig {
  int k = 1;
  int n = 1;
  int B = 64;  // bytes per chunk
  CodeFamily family = CodeFamily::mds;
  /// Binary cyclic generator g(x), bit i = coefficient of x^i. 0 picks the
  /// catalog generator for (n, k).
  std::uint64_t generator = 0;
};

/// Throws BadConfig unless the parameters admit a code of the family.
void validate_config(const CodecConfig& cfg);

struct ChunkSet {
  std::vector<Bytes> chunks;  // n slots; absent slots are empty
  std::vector<bool> present;

  int present_count() const;
  /// Drops the data of every slot not in `keep`.
  ChunkSet restricted_to(const std::vector<bool>& keep) const;
};

/// Systematic Vandermonde-derived generator: row i < k is e_i, rows k..n-1 parity.
std::vector<std::vector<std::uint8_t>> mds_generator(int k, int n);

ChunkSet mds_encode(const std::vector<Bytes>& data, const CodecConfig& cfg);
/// Throws TooFewChunks when fewer than k chunks are present.
std::vector<Bytes> mds_decode(const ChunkSet& chunks, const CodecConfig& cfg);

/// Lowest-valued divisor of x^n - 1 over GF(2) with degree n - k, or nullopt.
std::optional<std::uint64_t> binary_cyclic_generator(int n, int k);
/// All (n, k) with 1 <= k <= n <= max_n for which a binary cyclic code exists.
std::vector<std::pair<int, int>> binary_cyclic_catalog(int max_n);

/// Systematic: c(x) = x^{n-k} m(x) + (x^{n-k} m(x) mod g(x)); data chunk j sits
/// at position n - k + j. Each bit lane of the bytes is an independent codeword.
ChunkSet cyclic_encode(const std::vector<Bytes>& data, const CodecConfig& cfg);
/// Recovers data when the absent positions form one cyclic run of length
/// <= n - k. Throws NotABurst otherwise.
std::vector<Bytes> cyclic_decode_burst(const ChunkSet& chunks, const CodecConfig& cfg);

ChunkSet encode(const std::vector<Bytes>& data, const CodecConfig& cfg);
std::vector<Bytes> decode(const ChunkSet& chunks, const CodecConfig& cfg);

/// Raw chunk file: 16-byte little-endian header ("CSWC", k u16, n u16, B u32,
/// index u32) followed by B payload bytes.
struct ChunkFile {
  int k = 0;
  int n = 0;
  int B = 0;
  int index = 0;
  Bytes payload;
};

void write_chunk_file(const std::string& path, const ChunkFile& chunk);
ChunkFile read_chunk_file(const std::string& path);

/// Reads every served packet from exactly the chunks at its assigned MUs.
/// stored[i].chunks[j] lives on MU storage_order(inst, i)[j]. Returns the
/// decoded data per packet, nullopt for unserved packets. Throws
/// DecodeFailure if a served packet cannot be decoded.
std::vector<std::optional<std::vector<Bytes>>> end_to_end_read(const Instance& inst, const Solution& sol,
                                                               const std::vector<ChunkSet>& stored,
                                                               const CodecConfig& cfg);

}  // namespace codedswitch
