#include "manetsim/types.hpp"

#include <cmath>

namespace manetsim {

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace manetsim
