#include "wqcm/sampling.hpp"

#include <cmath>
#include <random>
#include <string>

#include "wqcm/errors.hpp"

namespace wqcm {

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

std::vector<Point> sample_points(const SamplePlan& plan, const DomainBox& box) {
  const int d = static_cast<int>(box.size());
  if (d == 0) throw DomainError("empty domain box");
  if (d > static_cast<int>(std::size(kPrimes))) throw DomainError("domain dimension too large");
  if (plan.count < 1) throw DomainError("sample count must be positive");
  std::vector<double> lo(d), width(d);
  for (int k = 0; k < d; ++k) {
    if (!(box[k].lo < box[k].hi)) throw DomainError("degenerate domain interval");
    const double margin = 0.05 * 0.5 * (box[k].hi - box[k].lo);
    lo[k] = box[k].lo + margin;
    width[k] = (box[k].hi - margin) - lo[k];
  }

  std::vector<Point> out;
  out.reserve(plan.count);
  if (plan.strategy == Strategy::halton) {
    for (int i = 0; i < plan.count; ++i) {
      std::vector<double> c(d);
      const std::uint64_t index = static_cast<std::uint64_t>(i) + 1 + plan.seed;
      for (int k = 0; k < d; ++k) c[k] = lo[k] + width[k] * radical_inverse(index, kPrimes[k]);
      out.emplace_back(std::move(c));
    }
    return out;
  }

  int per_axis = 1;
  while (std::pow(static_cast<double>(per_axis), d) < plan.count) ++per_axis;
  std::vector<int> digit(d, 0);
  for (int i = 0; i < plan.count; ++i) {
    std::vector<double> c(d);
    for (int k = 0; k < d; ++k) c[k] = lo[k] + width[k] * (digit[k] + 0.5) / per_axis;
    out.emplace_back(std::move(c));
    // Lexicographic order: the last coordinate varies fastest.
    for (int k = d - 1; k >= 0; --k) {
      if (++digit[k] < per_axis) break;
      digit[k] = 0;
    }
  }
  return out;
}

std::vector<Eigen::VectorXd> direction_set(const Eigen::MatrixXd& g, std::uint64_t seed,
                                           int point_index, int random_count) {
  const int d = static_cast<int>(g.rows());
  std::vector<Eigen::VectorXd> out;
  out.reserve(d + random_count);
  for (int k = 0; k < d; ++k) out.push_back(Eigen::VectorXd::Unit(d, k));

  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(point_index)};
  std::mt19937_64 rng(seq);
  while (static_cast<int>(out.size()) < d + random_count) {
    Eigen::VectorXd v(d);
    for (int k = 0; k < d; ++k) v[k] = 2.0 * unit_double(rng()) - 1.0;
    const double nv = std::sqrt(v.dot(g * v));
    if (nv < 1e-3) continue;
    out.push_back(v / nv);
  }
  return out;
}

Strategy parse_strategy(const std::string& name) {
  if (name == "halton") return Strategy::halton;
  if (name == "grid") return Strategy::grid;
  throw SchemaError("unknown sampling strategy '" + name + "'");
}

const char* strategy_name(Strategy s) { return s == Strategy::halton ? "halton" : "grid"; }

}  // namespace wqcm
