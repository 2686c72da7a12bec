#include "vpscale/matrix_cache.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace vpscale {

MatrixCache::MatrixCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("MatrixCache: capacity must be >= 1");
}

std::shared_ptr<const ScalingMatrix> MatrixCache::get(int source_n, int m, int target_n) {
  const Key key{source_n, m, target_n};
  {
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      ++hits_;
      return it->second->second;
    }
    ++builds_;
  }

  auto built = std::make_shared<const ScalingMatrix>(build_scaling_matrix(source_n, m, target_n));

  std::lock_guard lock(mutex_);
  if (auto it = index_.find(key); it != index_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second);
    return it->second->second;
  }
  lru_.emplace_front(key, built);
  index_[key] = lru_.begin();
  while (lru_.size() > capacity_) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
  return built;
}

void MatrixCache::clear() {
  std::lock_guard lock(mutex_);
  lru_.clear();
  index_.clear();
}

std::size_t MatrixCache::size() const {
  std::lock_guard lock(mutex_);
  return lru_.size();
}

std::size_t MatrixCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::size_t MatrixCache::builds() const {
  std::lock_guard lock(mutex_);
  return builds_;
}

namespace {

std::size_t capacity_from_env() {
  const char* raw = std::getenv("VPSCALE_CACHE_SIZE");
  if (raw == nullptr || *raw == '\0') return MatrixCache::kDefaultCapacity;
  char* end = nullptr;
  const long long value = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || value <= 0) return MatrixCache::kDefaultCapacity;
  return static_cast<std::size_t>(value);
}

}  // namespace

MatrixCache& default_matrix_cache() {
  static MatrixCache cache(capacity_from_env());
  return cache;
}

std::shared_ptr<const ScalingMatrix> matrix_cache_get(int source_n, int m, int target_n) {
  return default_matrix_cache().get(source_n, m, target_n);
}

}  // namespace vpscale
