#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace gazetrack {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;
using Affine3 = Eigen::Transform<double, 3, Eigen::Affine>;

// Input that violates a documented precondition or file schema. The CLI maps
// this family to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A file that exists but cannot be parsed or does not match its schema.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace gazetrack
