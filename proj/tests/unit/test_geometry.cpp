#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wqcm/geometry.hpp"
#include "wqcm/structure.hpp"

using namespace wqcm;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

Vec<Jet2> field(const std::vector<std::string>& comps, const std::vector<std::string>& coords,
                const Point& p) {
  Vec<Jet2> v;
  for (const std::string& c : comps) v.c.push_back(parse(c, coords).eval_jet(p));
  return v;
}

Mat<Jet2> matrix(const std::vector<std::vector<std::string>>& rows,
                 const std::vector<std::string>& coords, const Point& p) {
  const int d = static_cast<int>(rows.size());
  Mat<Jet2> m(d, Jet2::constant(p.dim(), 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = parse(rows[i][j], coords).eval_jet(p);
  }
  return m;
}

std::vector<Point> points_of(const StructureDef& def, int count = 8) {
  SamplePlan plan;
  plan.count = count;
  return sample_points(plan, def.domain);
}

const std::vector<std::string> kXYZ = {"x", "y", "z"};

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("Euclidean chart is flat") {
    const WeakACM s(parse_builtin("flat-const"));
    for (const Point& p : points_of(s.def())) {
      const PointEval e = s.evaluate(p);
      for (const MatrixXd& g : e.connection.gamma) CHECK(g.cwiseAbs().maxCoeff() == 0.0);
      for (double r : e.curvature.r) CHECK(r == 0.0);
      const VectorXd x = VectorXd::Unit(3, 0);
      const VectorXd y = VectorXd::Unit(3, 1);
      CHECK(sectional(e.g, e.curvature, x, y) == 0.0);
      CHECK(ricci(e.g, e.curvature, x, x, orthonormal_frame(e.g)) == 0.0);
      // Constant vector field is parallel.
      CHECK(covariant_derivative(constant_field<Jet1>(x, 3), y, e.connection).norm() == 0.0);
    }
  }

  TEST_CASE("round sphere") {
    const std::vector<std::string> coords = {"t", "p"};
    for (double theta : {0.3, 0.9, 1.4, 2.2}) {
      const Point pt({theta, 0.5});
      const MetricEval m = MetricEval::from_jets(matrix({{"1", "0"}, {"0", "sin(t)^2"}}, coords, pt));
      const Connection c = christoffel(m);
      CHECK(c.gamma[0](1, 1) == doctest::Approx(-std::sin(theta) * std::cos(theta)).epsilon(1e-14));
      CHECK(c.gamma[1](0, 1) == doctest::Approx(std::cos(theta) / std::sin(theta)).epsilon(1e-14));
      CHECK(c.gamma[1](1, 0) == c.gamma[1](0, 1));
      const Riemann r = riemann(c);
      const double k = sectional(m.g, r, VectorXd::Unit(2, 0), VectorXd::Unit(2, 1));
      CHECK(k == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("Christoffel symbols match differenced metric values") {
    for (const testing::Fixture& fx : testing::catalog_fixtures()) {
      const WeakACM s(fx.def);
      for (const Point& p : points_of(fx.def, 4)) {
        const PointEval e = s.evaluate(p);
        const auto oracle = testing::fd_christoffel(fx.def, p);
        for (int k = 0; k < e.d; ++k) {
          INFO(fx.source);
          CHECK((e.connection.gamma[k] - oracle[k]).cwiseAbs().maxCoeff() < 1e-8);
        }
      }
    }
  }

  TEST_CASE("Riemann tensor matches differenced Christoffel symbols") {
    const double h = 1e-5;
    for (const char* key : {"sasakian-r3", "scaled?s=2", "product"}) {
      const StructureDef def = parse_builtin(key);
      const WeakACM s(def);
      for (const Point& p : points_of(def, 3)) {
        const PointEval e = s.evaluate(p);
        const int d = e.d;
        std::vector<std::vector<MatrixXd>> dgamma(d);
        for (int m = 0; m < d; ++m) {
          const Connection up = s.evaluate(testing::shifted(p, m, h)).connection;
          const Connection dn = s.evaluate(testing::shifted(p, m, -h)).connection;
          for (int l = 0; l < d; ++l) dgamma[m].push_back((up.gamma[l] - dn.gamma[l]) / (2 * h));
        }
        const auto& G = e.connection.gamma;
        double worst = 0.0;
        for (int l = 0; l < d; ++l) {
          for (int k = 0; k < d; ++k) {
            for (int i = 0; i < d; ++i) {
              for (int j = 0; j < d; ++j) {
                double want = dgamma[i][l](j, k) - dgamma[j][l](i, k);
                for (int m = 0; m < d; ++m) want += G[l](i, m) * G[m](j, k) - G[l](j, m) * G[m](i, k);
                worst = std::max(worst, std::abs(want - e.curvature(l, k, i, j)));
              }
            }
          }
        }
        INFO(key);
        CHECK(worst < 1e-7);
      }
    }
  }

  TEST_CASE("Levi-Civita contract on every catalog structure") {
    for (const testing::Fixture& fx : testing::catalog_fixtures()) {
      const WeakACM s(fx.def);
      for (const Point& p : points_of(fx.def)) {
        const PointEval e = s.evaluate(p);
        for (const MatrixXd& n : nabla_metric(e.metric, e.connection)) {
          CHECK(n.cwiseAbs().maxCoeff() < 1e-10);
        }
        for (const MatrixXd& g : e.connection.gamma) CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }

  TEST_CASE("lie bracket") {
    const Point p({0.4, -0.3, 0.8});
    const Vec<Jet2> dx = field({"1", "0", "0"}, kXYZ, p);
    const Vec<Jet2> dy = field({"0", "1", "0"}, kXYZ, p);
    CHECK(values(lie_bracket(dx, dy)).norm() == 0.0);
    const Vec<Jet2> x_dy = field({"0", "x", "0"}, kXYZ, p);
    const VectorXd b = values(lie_bracket(x_dy, dx));
    CHECK(b[0] == 0.0);
    CHECK(b[1] == -1.0);
    CHECK(b[2] == 0.0);
  }

  TEST_CASE("torsion-free and Leibniz on non-constant fields") {
    const std::vector<std::string> X3 = {"c1*c2", "sin(c0)", "1 + c0*c1"};
    const std::vector<std::string> Y3 = {"cos(c2)", "c0^2 - c2", "exp(c1/2)"};
    for (const testing::Fixture& fx : testing::catalog_fixtures()) {
      const WeakACM s(fx.def);
      const int d = fx.def.dim();
      std::vector<std::string> xs(d), ys(d);
      for (int i = 0; i < d; ++i) {
        xs[i] = i < 3 ? X3[i] : "0.5";
        ys[i] = i < 3 ? Y3[i] : "-0.25";
      }
      std::vector<std::string> names;
      for (int i = 0; i < d; ++i) names.push_back("c" + std::to_string(i));
      for (const Point& p : points_of(fx.def, 6)) {
        const PointEval e = s.evaluate(p);
        const Vec<Jet2> X = field(xs, names, p);
        const Vec<Jet2> Y = field(ys, names, p);
        const VectorXd x0 = values(X);
        const VectorXd y0 = values(Y);
        const VectorXd torsion = covariant_derivative(lower(Y), x0, e.connection) -
                                 covariant_derivative(lower(X), y0, e.connection) -
                                 values(lie_bracket(X, Y));
        CHECK(torsion.cwiseAbs().maxCoeff() < 1e-10);

        // (nabla_X eta)(Y) + eta(nabla_X Y) = X(eta(Y))
        const double lhs = covariant_derivative_oneform(lower(e.eta_jet), x0, e.connection).dot(y0) +
                           e.eta.dot(covariant_derivative(lower(Y), x0, e.connection));
        const double rhs = value_of(directional(X, contract(e.eta_jet, Y)));
        CHECK(std::abs(lhs - rhs) < 1e-10);
      }
    }
  }

  TEST_CASE("Lie derivative of the metric, two routes") {
    for (const testing::Fixture& fx : testing::catalog_fixtures()) {
      const WeakACM s(fx.def);
      for (const Point& p : points_of(fx.def, 4)) {
        const PointEval e = s.evaluate(p);
        const MatrixXd a = lie_derivative_metric(e.metric, e.nabla_xi);
        const MatrixXd b = lie_derivative_metric_coordinates(e.metric, lower(e.xi_jet));
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
    // The zero field has zero Lie derivative.
    const WeakACM s(parse_builtin("sasakian-r3"));
    const PointEval e = s.evaluate(Point({0.1, 0.2, 0.3}));
    const Vec<Jet1> zero = constant_field<Jet1>(VectorXd::Zero(3), 3);
    CHECK(values(lie_derivative(zero, lower(e.f_jet))).norm() == 0.0);
    CHECK(lie_derivative_metric_coordinates(e.metric, zero).norm() == 0.0);
  }

  TEST_CASE("exterior derivatives") {
    // eta = dz on flat R^3 is closed.
    const WeakACM flat(parse_builtin("flat-const"));
    CHECK(flat.evaluate(Point({0.1, 0.2, 0.3})).deta.norm() == 0.0);

    for (const char* key : {"sasakian-r3", "sasakian-r5", "scaled?s=2"}) {
      const StructureDef def = parse_builtin(key);
      const WeakACM s(def);
      for (const Point& p : points_of(def)) {
        const PointEval e = s.evaluate(p);
        CHECK((e.deta + e.deta.transpose()).norm() == 0.0);
        double dd = 0.0;
        double dphi = 0.0;
        for (double v : e.ddeta.a) dd = std::max(dd, std::abs(v));
        for (double v : e.dphi.a) dphi = std::max(dphi, std::abs(v));
        CHECK(dd < 1e-10);
        CHECK(dphi < 1e-10);
      }
    }

    // d eta = Phi on the Sasakian chart, including the explicit 1/4 at one point.
    const WeakACM sas(parse_builtin("sasakian-r3"));
    const PointEval e = sas.evaluate(Point({0.0, 0.0, 0.0}));
    CHECK((e.deta - e.phi).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(e.deta(0, 1)) == doctest::Approx(0.25));

    // Field formula agrees with the coordinate matrix on non-constant fields.
    const Point p({0.3, -0.6, 0.2});
    const PointEval ep = sas.evaluate(p);
    const Vec<Jet2> X = field({"y*z", "sin(x)", "1 + x*y"}, kXYZ, p);
    const Vec<Jet2> Y = field({"cos(z)", "x^2 - z", "exp(y/2)"}, kXYZ, p);
    const Vec<Jet2> Z = field({"x", "y*y", "z - x"}, kXYZ, p);
    const double via_fields = value_of(exterior_derivative_applied(ep.eta_jet, X, Y));
    CHECK(std::abs(via_fields - ep.deta_of(values(X), values(Y))) < 1e-12);
    const double dphi_fields = value_of(exterior_derivative_applied(ep.phi_jet, X, Y, Z));
    CHECK(std::abs(dphi_fields - ep.dphi_of(values(X), values(Y), values(Z))) < 1e-12);
  }

  TEST_CASE("curvature symmetries") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (const testing::Fixture& fx : testing::catalog_fixtures()) {
      const WeakACM s(fx.def);
      const int d = fx.def.dim();
      auto rv = [&] {
        VectorXd v(d);
        for (int i = 0; i < d; ++i) v[i] = nd(rng);
        return v;
      };
      for (const Point& p : points_of(fx.def, 4)) {
        const PointEval e = s.evaluate(p);
        const Riemann& r = e.curvature;
        for (int trial = 0; trial < 4; ++trial) {
          const VectorXd x = rv(), y = rv(), z = rv(), w = rv();
          CHECK((curvature(r, x, y, z) + curvature(r, y, x, z)).norm() < 1e-9);
          CHECK((curvature(r, x, y, z) + curvature(r, y, z, x) + curvature(r, z, x, y)).norm() < 1e-9);
          CHECK(std::abs(inner(e.g, curvature(r, x, y, z), w) - inner(e.g, curvature(r, z, w, x), y)) <
                1e-9);
          const double k = sectional(e.g, r, x, y);
          CHECK(std::abs(sectional(e.g, r, 2.5 * x, -0.3 * y) - k) < 1e-10);
          CHECK(std::abs(sectional(e.g, r, x + y, y) - k) < 1e-10);
        }
        CHECK_THROWS_AS(sectional(e.g, r, e.xi, 2.0 * e.xi), NumericalError);
      }
    }
  }

  TEST_CASE("Ricci does not depend on the frame") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd;
    for (const testing::Fixture& fx : testing::catalog_fixtures()) {
      const WeakACM s(fx.def);
      const int d = fx.def.dim();
      for (const Point& p : points_of(fx.def, 4)) {
        const PointEval e = s.evaluate(p);
        MatrixXd cand(d, d);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) cand(i, j) = nd(rng);
        }
        const MatrixXd f1 = orthonormal_frame(e.g);
        const MatrixXd f2 = gram_schmidt(e.g, cand);
        REQUIRE(f2.cols() == d);
        CHECK((f1.transpose() * e.g * f1 - MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
        for (int i = 0; i < d; ++i) {
          const VectorXd x = cand.col(i);
          const VectorXd y = cand.col((i + 1) % d);
          const double a = ricci(e.g, e.curvature, x, y, f1);
          CHECK(std::abs(a - ricci(e.g, e.curvature, x, y, f2)) < 1e-9);
          CHECK(std::abs(a - ricci_coordinates(e.curvature, x, y)) < 1e-9);
          CHECK(std::abs(a - ricci(e.g, e.curvature, y, x, f1)) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("Ricci of the Reeb field sums plane curvatures") {
    const WeakACM s(parse_builtin("sasakian-r5"));
    const PointEval e = s.evaluate(Point({0.2, -0.1, 0.4, 0.3, -0.5}));
    const MatrixXd frame = gram_schmidt(e.g, [&] {
      MatrixXd c(5, 5);
      c.col(0) = e.xi;
      c.rightCols(4) = MatrixXd::Identity(5, 5).leftCols(4);
      return c;
    }());
    double sum = 0.0;
    for (int a = 1; a < 5; ++a) sum += sectional(e.g, e.curvature, e.xi, frame.col(a));
    CHECK(std::abs(sum - ricci(e.g, e.curvature, e.xi, e.xi, frame)) < 1e-10);
    CHECK(sum == doctest::Approx(4.0).epsilon(1e-10));
  }
}
