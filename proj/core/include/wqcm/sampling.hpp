#pragma once

// Deterministic sample points and direction sets.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wqcm/point.hpp"

namespace wqcm {

enum class Strategy { halton, grid };

struct SamplePlan {
  int count = 32;
  std::uint64_t seed = 7;
  Strategy strategy = Strategy::halton;
};

// Points lie in the box shrunk by 5% of each half-width on both sides.
// Throws DomainError on an empty or degenerate box, or count < 1.
std::vector<Point> sample_points(const SamplePlan& plan, const DomainBox& box);

// Uniform double in [0, 1) from the top 53 bits.
inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// The coordinate frame followed by `random_count` pseudo-random g-unit vectors.
// The random stream depends only on (seed, point_index).
std::vector<Eigen::VectorXd> direction_set(const Eigen::MatrixXd& g, std::uint64_t seed,
                                           int point_index, int random_count = 8);

Strategy parse_strategy(const std::string& name);
const char* strategy_name(Strategy s);

}  // namespace wqcm
