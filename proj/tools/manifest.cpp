#include "manifest.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <boost/version.hpp>
#include <openssl/crypto.h>
#include <openssl/evp.h>

#include "codedswitch/error.hpp"

#ifndef CODEDSWITCH_VERSION
#define CODEDSWITCH_VERSION "unknown"
#endif

namespace codedswitch::cli {

std::string file_sha256(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SwitchError(ErrorCode::ParseError, "cannot read " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

ordered_json version_info() {
  ordered_json v;
  v["codedswitch"] = CODEDSWITCH_VERSION;
  v["compiler"] = __VERSION__;
  v["boost"] = BOOST_LIB_VERSION;
  v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                       "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  v["cli11"] = CLI11_VERSION;
  v["openssl"] = OpenSSL_version(OPENSSL_VERSION);
  return v;
}

ordered_json RunManifest::to_json() const {
  const auto hashed = [](const std::vector<std::string>& paths) {
    ordered_json out = ordered_json::array();
    for (const auto& p : paths) out.push_back({{"path", p}, {"sha256", file_sha256(p)}});
    return out;
  };
  ordered_json j;
  j["command_line"] = command_line;
  j["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
  j["seed_source"] = seed_source;
  j["versions"] = version_info();
  j["inputs"] = hashed(inputs);
  j["outputs"] = hashed(outputs);
  j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return j;
}

void RunManifest::write(const std::string& path) const { write_json_file(path, to_json()); }

}  // namespace codedswitch::cli
