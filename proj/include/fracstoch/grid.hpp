#ifndef FRACSTOCH_GRID_HPP
#define FRACSTOCH_GRID_HPP

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "fracstoch/errors.hpp"

namespace fracstoch {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Uniform partition of [0, length] into `n_steps` cells. Used both for time
/// horizons and for one-dimensional space domains.
template <typename Scalar>
class BasicGrid {
 public:
  BasicGrid(Scalar length, Eigen::Index n_steps) : length_(length), n_steps_(n_steps) {
    if (!(length > Scalar(0)) || !std::isfinite(static_cast<double>(length)))
      throw ConfigError("grid length must be positive and finite");
    if (n_steps < 1) throw ConfigError("grid needs at least one step");
    delta_ = length_ / static_cast<Scalar>(n_steps_);
  }

  Scalar length() const { return length_; }
  Scalar t_max() const { return length_; }
  Eigen::Index n_steps() const { return n_steps_; }
  Eigen::Index size() const { return n_steps_ + 1; }
  Scalar delta() const { return delta_; }

  /// Node k is k * delta (not accumulated, so the last node is exact up to one rounding).
  Scalar node(Eigen::Index k) const { return static_cast<Scalar>(k) * delta_; }

  Vector<Scalar> nodes() const {
    Vector<Scalar> out(size());
    for (Eigen::Index k = 0; k < size(); ++k) out[k] = node(k);
    return out;
  }

  bool operator==(const BasicGrid& other) const {
    return length_ == other.length_ && n_steps_ == other.n_steps_;
  }

 private:
  Scalar length_;
  Eigen::Index n_steps_;
  Scalar delta_;
};

using TimeGrid = BasicGrid<double>;
using SpaceGrid = BasicGrid<double>;

/// Node values of a function on a uniform grid.
template <typename Scalar>
struct BasicSampledFunction {
  BasicGrid<Scalar> grid;
  Vector<Scalar> values;

  BasicSampledFunction(BasicGrid<Scalar> g, Vector<Scalar> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw GridMismatchError("sampled function has " + std::to_string(values.size()) +
                              " values for a grid of " + std::to_string(grid.size()) + " nodes");
  }

  template <typename F>
  static BasicSampledFunction sample(const BasicGrid<Scalar>& g, F&& f) {
    Vector<Scalar> v(g.size());
    for (Eigen::Index k = 0; k < g.size(); ++k) v[k] = f(g.node(k));
    return {g, std::move(v)};
  }
};

using SampledFunction = BasicSampledFunction<double>;

inline void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* what) {
  if (!(a == b)) throw GridMismatchError(std::string(what) + ": grids differ");
}

}  // namespace fracstoch

#endif  // FRACSTOCH_GRID_HPP
