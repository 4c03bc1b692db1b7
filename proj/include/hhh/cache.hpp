#pragma once

// Content-addressed, append-only on-disk store. One file per entry, named by
// the SHA-256 of the key, holding the canonical text of the value.

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace hhh {

inline constexpr std::string_view kToolVersion = "hhh 1.0";

std::string sha256Hex(std::string_view data);

class Cache {
 public:
  explicit Cache(std::filesystem::path dir, std::string version = std::string(kToolVersion));

  // Re-putting an identical value is a no-op; a different value for a stored
  // key throws ConflictingEntry.
  void put(const std::string& key, const std::string& value);

  // Absent for unknown keys and for entries written by another tool version.
  // Throws CorruptEntry when the stored bytes do not match their hash.
  std::optional<std::string> get(const std::string& key) const;

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& version() const { return version_; }
  std::filesystem::path pathFor(const std::string& key) const;

 private:
  struct Entry {
    std::string version;
    std::string key;
    std::string hash;
    std::string value;
  };
  static std::optional<Entry> readEntry(const std::filesystem::path& file);

  std::filesystem::path dir_;
  std::string version_;
  mutable std::mutex mutex_;
};

}  // namespace hhh
