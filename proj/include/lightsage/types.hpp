#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace lightsage {

// All numerics run in double precision; embedding files are written as f32.
using Scalar = double;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using IntVector = Eigen::Matrix<int, Eigen::Dynamic, 1>;

using ItemId = std::string;
using NodeIndex = int32_t;

}  // namespace lightsage
