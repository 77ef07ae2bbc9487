#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "aitlab/types.hpp"

namespace aitlab {

/// Seeded source of uniform doubles. The mapping from engine output to [0,1)
/// is fixed here so results do not depend on the standard library's distributions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Complex complex_uniform() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::mt19937_64 engine_;
};

/// Minimum-cost perfect assignment for a square cost matrix (Hungarian method).
/// result[row] = column.
std::vector<int> optimal_assignment(const Eigen::MatrixXd& cost);

/// Matrix power by repeated multiplication in extended precision, rounded once (n >= 0).
/// Keeps roundoff near eps * ||m^n|| even when ||m||^n is far larger.
Matrix matrix_power(const Matrix& m, int n);

/// Number of singular values above `threshold`.
int numerical_rank(const Matrix& m, double threshold);

}  // namespace aitlab
