#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sublor {

/// Element of the Lie algebra g in the chosen basis (controls, velocities).
using Vec = Eigen::VectorXd;
/// Element of g*, coordinates h_i = <., e_i>.
using Covec = Eigen::VectorXd;

/// Malformed input (dimension mismatch, bad payload, unknown name).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric routine failed to converge; carries the best bound reached.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double best)
      : std::runtime_error(what), best_bound(best) {}
  double best_bound;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

/// Region of a point relative to a closed convex cone and its affine hull.
enum class Region { Outside, RelativeBoundary, RelativeInterior };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::Outside: return "outside";
    case Region::RelativeBoundary: return "relative_boundary";
    case Region::RelativeInterior: return "relative_interior";
  }
  return "?";
}

}  // namespace sublor
