#include "hhh/cache.hpp"
#include "hhh/engine.hpp"
#include "hhh/errors.hpp"
#include "temp_dir.hpp"

#include <doctest.h>

#include <fstream>
#include <thread>
#include <vector>

using namespace hhh;
using hhh::testing::TempDir;

namespace {

std::size_t fileCount(const std::filesystem::path& dir) {
  std::size_t n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) n += entry.is_regular_file();
  return n;
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256Hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256Hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("put and get") {
  TempDir dir;
  Cache cache(dir.path);
  CHECK_FALSE(cache.get("A(0,1,2)/fullA").has_value());

  cache.put("A(0,1,2)/fullA", "series v1 denom 1\n1 0 0 0\nend\n");
  CHECK(cache.get("A(0,1,2)/fullA") == "series v1 denom 1\n1 0 0 0\nend\n");
  CHECK(cache.pathFor("A(0,1,2)/fullA") == dir.path / sha256Hex("A(0,1,2)/fullA"));

  CHECK_NOTHROW(cache.put("A(0,1,2)/fullA", "series v1 denom 1\n1 0 0 0\nend\n"));
  CHECK(fileCount(dir.path) == 1);
  CHECK_THROWS_AS(cache.put("A(0,1,2)/fullA", "series v1 denom 0\nend\n"), ConflictingEntry);

  Cache reopened(dir.path);
  CHECK(reopened.get("A(0,1,2)/fullA") == "series v1 denom 1\n1 0 0 0\nend\n");
}

TEST_CASE("entries from another version are invisible") {
  TempDir dir;
  Cache(dir.path, "hhh 0.9").put("k", "old");
  Cache current(dir.path);
  CHECK_FALSE(current.get("k").has_value());
  current.put("k", "new");
  CHECK(current.get("k") == "new");
  CHECK_FALSE(Cache(dir.path, "hhh 0.9").get("k").has_value());
}

TEST_CASE("tampered entries are rejected") {
  TempDir dir;
  Cache cache(dir.path);
  cache.put("k", "value\n");
  {
    std::ofstream out(cache.pathFor("k"), std::ios::app);
    out << "extra\n";
  }
  CHECK_THROWS_AS(cache.get("k"), CorruptEntry);

  {
    std::ofstream out(cache.pathFor("k2"), std::ios::trunc);
    out << "garbage";
  }
  CHECK_THROWS_AS(cache.get("k2"), CorruptEntry);
}

TEST_CASE("concurrent identical puts") {
  TempDir dir;
  Cache cache(dir.path);
  {
    std::vector<std::jthread> threads;
    for (int i = 0; i < 8; ++i)
      threads.emplace_back([&] {
        for (int j = 0; j < 20; ++j) cache.put("key" + std::to_string(j), "value" + std::to_string(j));
      });
  }
  CHECK(fileCount(dir.path) == 20);
  for (int j = 0; j < 20; ++j) CHECK(cache.get("key" + std::to_string(j)) == "value" + std::to_string(j));
}

TEST_CASE("engine results through the cache") {
  TempDir dir;
  const CoxeterDegrees d{0, 2, 3, 3};
  std::string cold, warm;
  {
    Cache cache(dir.path);
    Engine engine(nullptr, &cache);
    cold = serialize(engine.hhhCoxeter(d, EvalMode::FullA));
  }
  const std::size_t stored = fileCount(dir.path);
  CHECK(stored > 0);
  {
    Cache cache(dir.path);
    Engine engine(nullptr, &cache);
    warm = serialize(engine.hhhCoxeter(d, EvalMode::FullA));
  }
  CHECK(warm == cold);
  CHECK(fileCount(dir.path) == stored);
  CHECK(cold == serialize(Engine().hhhCoxeter(d, EvalMode::FullA)));
}
