#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "holderlab/common.hpp"

namespace holderlab {

// Hash lookup from integer lattice coordinates round(x / spacing) to site index.
class LatticeIndex {
 public:
  using Key = std::vector<long>;

  LatticeIndex(const std::vector<Vec>& points, double spacing) : spacing_(spacing) {
    keys_.reserve(points.size());
    map_.reserve(points.size() * 2);
    for (std::size_t i = 0; i < points.size(); ++i) {
      keys_.push_back(key_of(points[i]));
      map_.emplace(keys_.back(), i);
    }
  }

  Key key_of(const Vec& x) const {
    Key k(x.size());
    for (Eigen::Index d = 0; d < x.size(); ++d) k[d] = std::lround(x(d) / spacing_);
    return k;
  }

  std::optional<std::size_t> find(const Key& k) const {
    const auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> find(const Vec& x) const { return find(key_of(x)); }

  std::optional<std::size_t> neighbour(std::size_t i, int axis, long step) const {
    Key k = keys_[i];
    k[axis] += step;
    return find(k);
  }

  const Key& key(std::size_t i) const { return keys_[i]; }
  double spacing() const { return spacing_; }

 private:
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 1469598103934665603ULL;
      for (long v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  double spacing_;
  std::vector<Key> keys_;
  std::unordered_map<Key, std::size_t, KeyHash> map_;
};

}  // namespace holderlab
