#pragma once

#include "wigner/error.hpp"

namespace wigner {

/// Uniform nodes x_j = j l / M, j = 0..M, including both device boundaries.
class SpatialGrid {
 public:
  SpatialGrid(double length, int steps) : length_(length), steps_(steps) {
    if (!(length > 0.0)) throw Error(ErrorCode::InvalidConfig, "spatial grid: l must be positive");
    if (steps < 3) throw Error(ErrorCode::InvalidConfig, "spatial grid: M_x must be at least 3");
  }

  double length() const { return length_; }
  int steps() const { return steps_; }
  int size() const { return steps_ + 1; }
  double spacing() const { return length_ / steps_; }
  double node(int j) const { return length_ * j / steps_; }

 private:
  double length_;
  int steps_;
};

}  // namespace wigner
