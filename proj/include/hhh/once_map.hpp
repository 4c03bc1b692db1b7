#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hhh {

// Write-once-per-key concurrent table: concurrent readers, a single initializer
// per key. Computations for distinct keys may nest (the dependency graph must be
// acyclic). A throwing computation leaves its key unpopulated.
template <class Key, class Value, class Hash = std::hash<Key>>
class OnceMap {
 public:
  template <class Compute>
  Value getOrCompute(const Key& key, Compute&& compute) {
    std::shared_ptr<Slot> slot = slotFor(key);
    std::lock_guard lock(slot->mutex);
    if (!slot->value) slot->value.emplace(compute());
    return *slot->value;
  }

  std::optional<Value> find(const Key& key) const {
    std::shared_ptr<Slot> slot;
    {
      std::lock_guard lock(mutex_);
      auto it = slots_.find(key);
      if (it == slots_.end()) return std::nullopt;
      slot = it->second;
    }
    std::lock_guard lock(slot->mutex);
    return slot->value;
  }

  // Populated entries, in unspecified order.
  std::vector<std::pair<Key, Value>> populated() const {
    std::vector<std::pair<Key, Value>> out;
    for (const auto& [k, s] : snapshot()) {
      std::lock_guard slotLock(s->mutex);
      if (s->value) out.emplace_back(k, *s->value);
    }
    return out;
  }

  std::size_t size() const { return populated().size(); }

 private:
  struct Slot {
    std::mutex mutex;
    std::optional<Value> value;
  };

  // Slot locks are never taken while holding the table lock.
  std::vector<std::pair<Key, std::shared_ptr<Slot>>> snapshot() const {
    std::lock_guard lock(mutex_);
    return {slots_.begin(), slots_.end()};
  }

  std::shared_ptr<Slot> slotFor(const Key& key) {
    std::lock_guard lock(mutex_);
    auto& slot = slots_[key];
    if (!slot) slot = std::make_shared<Slot>();
    return slot;
  }

  mutable std::mutex mutex_;
  std::unordered_map<Key, std::shared_ptr<Slot>, Hash> slots_;
};

}  // namespace hhh
