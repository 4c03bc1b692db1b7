#include "hhh/cache.hpp"

#include "hhh/errors.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace hhh {

namespace fs = std::filesystem;

std::string sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

namespace {

std::string render(const std::string& version, const std::string& key, const std::string& value) {
  return "hhh-cache v1\nversion " + version + "\nkey " + key + "\nhash " + sha256Hex(value) + "\n" +
         value;
}

std::string tempName() {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream name;
  name << ".tmp-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '-' << counter++;
  return name.str();
}

}  // namespace

Cache::Cache(fs::path dir, std::string version) : dir_(std::move(dir)), version_(std::move(version)) {
  fs::create_directories(dir_);
}

fs::path Cache::pathFor(const std::string& key) const { return dir_ / sha256Hex(key); }

std::optional<Cache::Entry> Cache::readEntry(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  Entry e;
  std::size_t pos = 0;
  auto line = [&](std::string_view prefix, std::string& out) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) throw CorruptEntry("truncated cache entry: " + file.string());
    std::string_view l(text.data() + pos, end - pos);
    if (l.substr(0, prefix.size()) != prefix)
      throw CorruptEntry("malformed cache entry: " + file.string());
    out = std::string(l.substr(prefix.size()));
    pos = end + 1;
  };
  std::string magic;
  line("", magic);
  if (magic != "hhh-cache v1") throw CorruptEntry("not a cache entry: " + file.string());
  line("version ", e.version);
  line("key ", e.key);
  line("hash ", e.hash);
  e.value = text.substr(pos);
  return e;
}

void Cache::put(const std::string& key, const std::string& value) {
  std::lock_guard lock(mutex_);
  const fs::path target = pathFor(key);
  if (auto existing = readEntry(target); existing && existing->version == version_) {
    if (existing->key == key && existing->value == value && existing->hash == sha256Hex(value)) return;
    throw ConflictingEntry("different value already stored for key: " + key);
  }

  const fs::path temp = dir_ / tempName();
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << render(version_, key, value);
    if (!out) throw std::runtime_error("cannot write cache file: " + temp.string());
  }
  std::error_code ec;
  fs::create_hard_link(temp, target, ec);
  if (ec) {
    // Someone else placed the file first, or a stale-version entry is present.
    auto existing = readEntry(target);
    if (existing && existing->version == version_) {
      fs::remove(temp);
      if (existing->key != key || existing->value != value)
        throw ConflictingEntry("different value already stored for key: " + key);
      return;
    }
    fs::rename(temp, target);
    return;
  }
  fs::remove(temp);
}

std::optional<std::string> Cache::get(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto entry = readEntry(pathFor(key));
  if (!entry || entry->version != version_) return std::nullopt;
  if (entry->key != key) return std::nullopt;
  if (sha256Hex(entry->value) != entry->hash)
    throw CorruptEntry("cache entry hash mismatch for key: " + key);
  return entry->value;
}

}  // namespace hhh
