#pragma once

#include "tangentnav/geometry.hpp"

namespace tnav {

using ObstacleId = int;

/// Ground-truth obstacle pose at one instant, as fed to the sensor model.
struct ObstacleSnapshot {
  ObstacleId id = 0;
  Point2 position;
  double radius = 0.0;
};

}  // namespace tnav
