#include "beesvrp/registry.hpp"

#include <cmath>
#include <stdexcept>

namespace beesvrp {

std::int64_t PositionRegistry::key(double fitness) const {
  if (!std::isfinite(fitness)) throw std::invalid_argument("position fitness must be finite");
  return std::llround(fitness / resolution_);
}

bool PositionRegistry::try_occupy(double fitness) {
  const auto k = key(fitness);
  std::lock_guard lock(mutex_);
  return keys_.insert(k).second;
}

bool PositionRegistry::occupied(double fitness) const {
  const auto k = key(fitness);
  std::lock_guard lock(mutex_);
  return keys_.contains(k);
}

std::size_t PositionRegistry::size() const {
  std::lock_guard lock(mutex_);
  return keys_.size();
}

}  // namespace beesvrp
