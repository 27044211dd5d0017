#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "codedswitch/json_io.hpp"

namespace codedswitch::cli {

/// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::string& path);

/// Provenance record written next to every output a run produces.
struct RunManifest {
  std::vector<std::string> command_line;
  std::optional<std::uint64_t> seed;
  std::string seed_source = "none";  // flag, entropy, spec or none
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  /// Hashes every input and output at call time.
  ordered_json to_json() const;
  void write(const std::string& path) const;
};

ordered_json version_info();

}  // namespace codedswitch::cli
