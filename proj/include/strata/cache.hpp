// On-disk cache of JSON reports, addressed by the SHA-256 of a canonical
// request descriptor. Any I/O or integrity problem reads as a miss.

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "strata/config.hpp"

namespace strata {

std::string sha256_hex(const std::string& data);

/// Canonical descriptor: command, sorted arguments, guards and version.
std::string cache_descriptor(const std::string& command, const std::map<std::string, std::string>& args,
                             const Guards& guards, const std::string& version = kVersion);

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& descriptor) const;

  std::optional<std::string> get(const std::string& descriptor);
  /// Returns false when the entry could not be written.
  bool put(const std::string& descriptor, const std::string& payload);

 private:
  std::mutex& lock_for(const std::string& descriptor);

  std::filesystem::path dir_;
  std::mutex table_mutex_;
  std::map<std::string, std::mutex> key_mutexes_;
};

}  // namespace strata
