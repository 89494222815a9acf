#ifndef SPINGEO_TYPES_HPP
#define SPINGEO_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace spingeo {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

/// Root of the library's error hierarchy.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inputs outside an operation's domain (bad angles, indices, parameters).
struct DomainError : Error {
  using Error::Error;
};

/// A matrix failed a structural check (hermiticity, trace, positivity).
struct ValidationError : Error {
  using Error::Error;
};

/// A numerical procedure failed to converge or drifted past tolerance.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace spingeo

#endif
