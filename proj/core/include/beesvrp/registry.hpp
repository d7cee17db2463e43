#pragma once

#include <cstdint>
#include <mutex>
#include <unordered_set>

namespace beesvrp {

// Run-wide set of occupied bee positions. A position is identified by its
// fitness quantised to a fixed absolute grid; keys are never removed.
// try_occupy is an atomic test-and-insert, safe to call from several workers.
class PositionRegistry {
 public:
  static constexpr double default_resolution = 1e-6;

  explicit PositionRegistry(double resolution = default_resolution) : resolution_(resolution) {}

  // Inserts the key of `fitness`; true when it was free. Throws
  // std::invalid_argument for non-finite fitness.
  bool try_occupy(double fitness);
  bool occupied(double fitness) const;
  std::size_t size() const;

  std::int64_t key(double fitness) const;

 private:
  double resolution_;
  mutable std::mutex mutex_;
  std::unordered_set<std::int64_t> keys_;
};

}  // namespace beesvrp
