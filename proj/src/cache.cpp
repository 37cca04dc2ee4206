#include "strata/cache.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace strata {

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string cache_descriptor(const std::string& command, const std::map<std::string, std::string>& args,
                             const Guards& guards, const std::string& version) {
  nlohmann::json j{{"command", command},
                   {"args", args},
                   {"max_bell", guards.max_bell},
                   {"max_forests", guards.max_forests},
                   {"version", version}};
  return j.dump();
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::path_for(const std::string& descriptor) const {
  return dir_ / (sha256_hex(descriptor) + ".json");
}

std::mutex& ResultCache::lock_for(const std::string& descriptor) {
  std::lock_guard lock(table_mutex_);
  return key_mutexes_[descriptor];
}

// Entry layout: descriptor line, payload digest line, payload.
std::optional<std::string> ResultCache::get(const std::string& descriptor) {
  std::lock_guard lock(lock_for(descriptor));
  std::ifstream in(path_for(descriptor), std::ios::binary);
  if (!in) return std::nullopt;
  std::string stored_descriptor, stored_digest;
  if (!std::getline(in, stored_descriptor) || !std::getline(in, stored_digest)) return std::nullopt;
  if (stored_descriptor != descriptor) return std::nullopt;
  std::ostringstream rest;
  rest << in.rdbuf();
  std::string payload = rest.str();
  if (sha256_hex(payload) != stored_digest) return std::nullopt;
  return payload;
}

bool ResultCache::put(const std::string& descriptor, const std::string& payload) {
  std::lock_guard lock(lock_for(descriptor));
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return false;
  const auto target = path_for(descriptor);
  auto temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << descriptor << '\n' << sha256_hex(payload) << '\n' << payload;
    if (!out) return false;
  }
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    return false;
  }
  return true;
}

}  // namespace strata
