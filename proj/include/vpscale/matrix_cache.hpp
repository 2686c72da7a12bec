#pragma once

#include <cstddef>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "vpscale/vp_basis.hpp"

namespace vpscale {

/// Bounded LRU store of scaling matrices keyed by (source_n, m, target_n).
///
/// Safe for concurrent use. Matrices are built outside the lock; if two
/// threads race on the same key, both may build, and the first insert wins.
/// Callers only ever see fully constructed, immutable matrices.
class MatrixCache {
 public:
  static constexpr std::size_t kDefaultCapacity = 64;

  explicit MatrixCache(std::size_t capacity = kDefaultCapacity);

  MatrixCache(const MatrixCache&) = delete;
  MatrixCache& operator=(const MatrixCache&) = delete;

  [[nodiscard]] std::shared_ptr<const ScalingMatrix> get(int source_n, int m, int target_n);

  void clear();

  [[nodiscard]] std::size_t capacity() const { return capacity_; }
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] std::size_t hits() const;
  /// Number of build_scaling_matrix calls made on behalf of get().
  [[nodiscard]] std::size_t builds() const;

 private:
  using Key = std::tuple<int, int, int>;
  using Entry = std::pair<Key, std::shared_ptr<const ScalingMatrix>>;

  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> lru_;  // front = most recently used
  std::map<Key, std::list<Entry>::iterator> index_;
  std::size_t hits_ = 0;
  std::size_t builds_ = 0;
};

/// Process-wide cache. Capacity is read once from VPSCALE_CACHE_SIZE when set
/// to a positive integer, else MatrixCache::kDefaultCapacity.
[[nodiscard]] MatrixCache& default_matrix_cache();

/// Lookup through default_matrix_cache().
[[nodiscard]] std::shared_ptr<const ScalingMatrix> matrix_cache_get(int source_n, int m, int target_n);

}  // namespace vpscale
