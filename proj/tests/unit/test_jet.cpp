#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wqcm/jet.hpp"

using namespace wqcm;

namespace {

// Rounding distance in units of eps times the magnitude of the component block
// (value, gradient or Hessian) of ref, so entries that are exactly zero are not
// measured against their own size.
double ulp_distance(double a, double b, double block) {
  if (a == b) return 0.0;
  const double scale = std::max({std::abs(a), std::abs(b), block});
  return std::abs(a - b) / (scale * std::numeric_limits<double>::epsilon());
}

double max_ulp(const Jet2& a, const Jet2& b, const Jet2& ref) {
  const int d = a.dim();
  double g_scale = 0.0;
  double h_scale = 0.0;
  for (int i = 0; i < d; ++i) {
    g_scale = std::max(g_scale, std::abs(ref.gradient(i)));
    for (int j = i; j < d; ++j) h_scale = std::max(h_scale, std::abs(ref.hessian(i, j)));
  }
  double worst = ulp_distance(a.value(), b.value(), std::abs(ref.value()));
  for (int i = 0; i < d; ++i) worst = std::max(worst, ulp_distance(a.gradient(i), b.gradient(i), g_scale));
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      worst = std::max(worst, ulp_distance(a.hessian(i, j), b.hessian(i, j), h_scale));
    }
  }
  return worst;
}

double max_ulp(const Jet2& a, const Jet2& b) { return max_ulp(a, b, b); }

// c0 + c1 x + c2 y + c3 x y with positive coefficients at a positive point; every
// nonzero component is positive, so products see no cancellation.
Jet2 random_jet(const Point& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const Jet2 x = Jet2::coordinate(p, 0);
  const Jet2 y = Jet2::coordinate(p, 1);
  const int d = p.dim();
  return Jet2::constant(d, u(rng)) + u(rng) * x + u(rng) * y + u(rng) * (x * y);
}

void require_symmetric_storage(const Jet2& a) {
  const int d = a.dim();
  CHECK(static_cast<int>(a.packed_hessian().size()) == d * (d + 1) / 2);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) CHECK(a.hessian(i, j) == a.hessian(j, i));
  }
}

}  // namespace

TEST_SUITE("jet") {
  TEST_CASE("seeds") {
    const Point p({1.0, 2.0, 3.0});
    const Jet2 y = Jet2::coordinate(p, 1);
    CHECK(y.value() == 2.0);
    CHECK(y.gradient(0) == 0.0);
    CHECK(y.gradient(1) == 1.0);
    CHECK(y.gradient(2) == 0.0);
    for (double h : y.packed_hessian()) CHECK(h == 0.0);

    const Jet2 c = Jet2::constant(3, 5.0);
    CHECK(c.value() == 5.0);
    for (double g : c.gradient()) CHECK(g == 0.0);

    const Jet2 x0 = Jet2::coordinate(Point({0.0, 0.0, 0.0}), 0);
    CHECK(x0.value() == 0.0);
    CHECK(x0.gradient(0) == 1.0);

    CHECK_THROWS_AS(Jet2::coordinate(p, 3), DimensionError);
    CHECK_THROWS_AS(Jet2::coordinate(p, -1), DimensionError);
  }

  TEST_CASE("binary operations") {
    const Point p({2.0, 3.0});
    const Jet2 x = Jet2::coordinate(p, 0);
    const Jet2 y = Jet2::coordinate(p, 1);

    const Jet2 xy = jet_binary(BinaryOp::mul, x, y);
    CHECK(xy.value() == 6.0);
    CHECK(xy.gradient(0) == 3.0);
    CHECK(xy.gradient(1) == 2.0);
    CHECK(xy.hessian(0, 1) == 1.0);
    CHECK(xy.hessian(0, 0) == 0.0);

    const Point q({2.0});
    const Jet2 s = jet_binary(BinaryOp::add, Jet2::coordinate(q, 0), Jet2::constant(1, 1.0));
    CHECK(s.value() == 3.0);
    CHECK(s.gradient(0) == 1.0);

    const Jet2 diff = jet_binary(BinaryOp::sub, x, y);
    CHECK(diff.value() == -1.0);
    CHECK(diff.gradient(1) == -1.0);
  }

  TEST_CASE("quotient against finite differences") {
    const Point p({1.0, 2.0});
    const Jet2 q = jet_binary(BinaryOp::div, Jet2::coordinate(p, 0), Jet2::coordinate(p, 1));
    CHECK(q.value() == doctest::Approx(0.5));
    CHECK(q.gradient(0) == doctest::Approx(0.5));
    CHECK(q.gradient(1) == doctest::Approx(-0.25));
    CHECK(q.hessian(1, 1) == doctest::Approx(0.25));

    auto fn = [](const Point& r) { return r[0] / r[1]; };
    for (int i = 0; i < 2; ++i) {
      CHECK(testing::rel_err(q.gradient(i), testing::fd_gradient(fn, p, i, 1e-4)) < 1e-6);
      for (int j = 0; j < 2; ++j) {
        CHECK(testing::rel_err(q.hessian(i, j), testing::fd_hessian(fn, p, i, j, 1e-4)) < 1e-4);
      }
    }
  }

  TEST_CASE("unary operations") {
    const Jet2 x0 = Jet2::coordinate(Point({0.0}), 0);
    const Jet2 s = jet_unary(UnaryOp::sin, x0);
    CHECK(s.value() == 0.0);
    CHECK(s.gradient(0) == 1.0);
    CHECK(s.hessian(0, 0) == 0.0);

    const Jet2 x1 = Jet2::coordinate(Point({1.0}), 0);
    const Jet2 e = jet_unary(UnaryOp::exp, x1);
    CHECK(e.value() == doctest::Approx(std::exp(1.0)));
    CHECK(e.gradient(0) == doctest::Approx(std::exp(1.0)));
    CHECK(e.hessian(0, 0) == doctest::Approx(std::exp(1.0)));

    const Jet2 x2 = Jet2::coordinate(Point({2.0}), 0);
    const Jet2 c = jet_unary(UnaryOp::powi, x2, 3);
    CHECK(c.value() == 8.0);
    CHECK(c.gradient(0) == 12.0);
    CHECK(c.hessian(0, 0) == 12.0);

    const Jet2 n = jet_unary(UnaryOp::neg, x2);
    CHECK(n.value() == -2.0);
    CHECK(n.gradient(0) == -1.0);

    const Jet2 r = jet_unary(UnaryOp::sqrt, Jet2::coordinate(Point({4.0}), 0));
    CHECK(r.value() == 2.0);
    CHECK(r.gradient(0) == doctest::Approx(0.25));
    CHECK(r.hessian(0, 0) == doctest::Approx(-1.0 / 32.0));

    const Jet2 cs = jet_unary(UnaryOp::cos, x0);
    CHECK(cs.value() == 1.0);
    CHECK(cs.hessian(0, 0) == -1.0);
  }

  TEST_CASE("domain errors") {
    const Point p({0.0, 1.0});
    const Jet2 x = Jet2::coordinate(p, 0);
    const Jet2 y = Jet2::coordinate(p, 1);
    CHECK_THROWS_AS(jet_binary(BinaryOp::div, y, x), DomainError);
    CHECK_THROWS_AS(jet_unary(UnaryOp::sqrt, x), DomainError);
    CHECK_THROWS_AS(jet_unary(UnaryOp::sqrt, -y), DomainError);
    CHECK_THROWS_AS(x + Jet2::constant(3, 1.0), DimensionError);
  }

  TEST_CASE("negative powers") {
    const Jet2 x = Jet2::coordinate(Point({2.0}), 0);
    const Jet2 r = powi(x, -2);
    CHECK(r.value() == doctest::Approx(0.25));
    CHECK(r.gradient(0) == doctest::Approx(-0.25));
    CHECK(r.hessian(0, 0) == doctest::Approx(0.375));
    CHECK(powi(x, 0).value() == 1.0);
    CHECK(powi(x, 0).gradient(0) == 0.0);
  }

  TEST_CASE("algebraic identities hold to 4 ulp") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
      const Point p({u(rng), u(rng), u(rng)});
      const Jet2 a = random_jet(p, rng);
      const Jet2 b = random_jet(p, rng);
      const Jet2 c = random_jet(p, rng);
      CHECK(max_ulp(a * b, b * a) == 0.0);
      CHECK(max_ulp((a * b) * c, a * (b * c)) <= 4.0);
      // Quotient components cancel terms of size |(a b)| / |b|; ulps are counted there.
      const Jet2 ab = a * b;
      CHECK(max_ulp(ab / b, a, (1.0 / std::abs(b.value())) * ab) <= 4.0);
    }
  }

  TEST_CASE("every operation keeps the Hessian structurally symmetric") {
    const Point p({0.7, 1.3, 0.4});
    const Jet2 x = Jet2::coordinate(p, 0);
    const Jet2 y = Jet2::coordinate(p, 1);
    const Jet2 z = Jet2::coordinate(p, 2);
    for (const Jet2& j : {x + y, x - z, x * y * z, x / (y + z), -x, sin(x * y), cos(y * z),
                          exp(x * z), sqrt(x + y + z), powi(x * y - z, 4)}) {
      require_symmetric_storage(j);
    }
  }

  TEST_CASE("partial and truncate lower the order") {
    const Point p({1.5, -0.5});
    const Jet2 f = Jet2::coordinate(p, 0) * Jet2::coordinate(p, 0) * Jet2::coordinate(p, 1);
    const Jet1 dx = partial(f, 0);
    CHECK(dx.value() == doctest::Approx(2 * 1.5 * -0.5));
    CHECK(dx.gradient(0) == doctest::Approx(2 * -0.5));
    CHECK(dx.gradient(1) == doctest::Approx(2 * 1.5));
    const Jet1 t = truncate(f);
    CHECK(t.value() == f.value());
    CHECK(t.gradient(1) == f.gradient(1));
  }
}
