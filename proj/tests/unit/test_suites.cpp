#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "wqcm/report.hpp"
#include "wqcm/suites.hpp"

using namespace wqcm;

namespace {

SuiteOptions small_options(int count = 8, int threads = 0) {
  SuiteOptions o;
  o.plan.count = count;
  o.threads = threads;
  return o;
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_SUITE("suites") {
  TEST_CASE("records are well formed") {
    for (const testing::Fixture& fx : testing::catalog_fixtures()) {
      const CheckReport r = run_all_suites(WeakACM(fx.def), small_options());
      INFO(fx.source);
      CHECK(r.suite == "all");
      CHECK(r.structure == fx.def.name);
      std::set<std::string> ids;
      for (const CheckRecord& c : r.checks) {
        INFO(c.id);
        CHECK(ids.insert(c.id).second);
        CHECK(!c.paper.empty());
        if (c.verdict == Verdict::skipped) {
          CHECK(c.points == 0);
        } else {
          CHECK(c.points > 0);
          CHECK((c.verdict == Verdict::pass) == (c.max_residual <= c.tol));
        }
        // Hypothesis gating never produces a failure on the catalog.
        CHECK(c.verdict != Verdict::fail);
      }
      CHECK(!r.failed());
    }
  }

  TEST_CASE("Sasakian chart asserts every conditional check") {
    const CheckReport r = run_all_suites(WeakACM(parse_builtin("sasakian-r3")), small_options());
    int skipped = 0;
    for (const CheckRecord& c : r.checks) {
      if (c.verdict == Verdict::skipped) {
        ++skipped;
        // ker eta of a contact form is never integrable.
        CHECK(c.id == "prop.integrable-h-self-adjoint");
      }
    }
    CHECK(skipped == 1);
    CHECK(r.at("theorem.k-contact-from-nabla-xi").verdict == Verdict::pass);
    CHECK(r.at("prop.contact-form").verdict == Verdict::pass);
  }

  TEST_CASE("scaled chart skips Lemma checks and keeps ungated ones") {
    const CheckReport r = run_all_suites(WeakACM(parse_builtin("scaled?s=2")), small_options());
    for (const CheckRecord& c : r.checks) {
      INFO(c.id);
      if (starts_with(c.id, "lemma.") || starts_with(c.id, "theorem.")) {
        CHECK(c.verdict == Verdict::skipped);
        CHECK(c.detail.find("hypotheses unmet") != std::string::npos);
      }
      if (starts_with(c.id, "algebraic.") || starts_with(c.id, "levi-civita.") ||
          starts_with(c.id, "curvature.")) {
        CHECK(c.verdict == Verdict::pass);
      }
    }
    CHECK(r.at("n2.covariant-form").verdict == Verdict::pass);
    CHECK(r.at("theorem.sasakian-from-nabla-f").detail.find("canonical quasi residual 8") !=
          std::string::npos);
  }

  TEST_CASE("results do not depend on the thread count") {
    const WeakACM s(parse_builtin("product"));
    const std::string one = emit_report(run_all_suites(s, small_options(8, 1)), Format::json);
    const std::string many = emit_report(run_all_suites(s, small_options(8, 5)), Format::json);
    CHECK(one == many);
  }

  TEST_CASE("individual suites concatenate to all") {
    const WeakACM s(parse_builtin("sasakian-r3"));
    const SuiteOptions o = small_options(4);
    const CheckReport all = run_suite("all", s, o);
    std::size_t total = 0;
    for (const char* name : {"identity", "curvature", "theorems"}) {
      const CheckReport r = run_suite(name, s, o);
      CHECK(r.suite == name);
      for (const CheckRecord& c : r.checks) CHECK(all.at(c.id).max_residual == c.max_residual);
      total += r.checks.size();
    }
    CHECK(total == all.checks.size());
    CHECK_THROWS_AS(run_suite("everything", s, o), SchemaError);
  }

  TEST_CASE("tight tolerances turn passes into failures") {
    SuiteOptions o = small_options(4);
    o.tol.algebraic = 1e-300;
    o.tol.deriv = 1e-300;
    o.tol.curv = 1e-300;
    const CheckReport r = run_all_suites(WeakACM(parse_builtin("sasakian-r5")), o);
    CHECK(r.failed());
  }

  TEST_CASE("quasi with nabla xi = -f forces Q = id at a point") {
    const Tolerances tol;
    for (const testing::Fixture& fx : testing::catalog_fixtures()) {
      const WeakACM s(fx.def);
      SamplePlan plan;
      plan.count = 8;
      int idx = 0;
      for (const Point& p : sample_points(plan, fx.def.domain)) {
        const PointEval e = s.evaluate(p);
        const auto dirs = direction_set(e.g, plan.seed, idx++);
        MaxResidual nx;
        for (const auto& x : dirs) nx.add(nabla_xi_residual(e, x));
        if (quasi_at(e, dirs).normalized < tol.deriv && nx.normalized < tol.deriv) {
          CHECK(e.Qt.cwiseAbs().maxCoeff() < 1e-8);
        }
      }
    }
  }
}

TEST_SUITE("report") {
  TEST_CASE("empty report is valid JSON") {
    CheckReport r;
    r.suite = "identity";
    r.structure = "none";
    const nlohmann::json j = nlohmann::json::parse(emit_report(r, Format::json));
    CHECK(j["checks"].is_array());
    CHECK(j["checks"].empty());
    CHECK(!j.contains("timestamp"));
  }

  TEST_CASE("field order and determinism") {
    const CheckReport r = run_theorem_suite(WeakACM(parse_builtin("sasakian-r3")), small_options(4));
    const std::string a = emit_report(r, Format::json);
    CHECK(a == emit_report(r, Format::json));
    const nlohmann::ordered_json j = nlohmann::ordered_json::parse(a);
    std::vector<std::string> keys;
    for (const auto& item : j.items()) keys.push_back(item.key());
    CHECK(keys == std::vector<std::string>{"suite", "structure", "seed", "tol", "checks"});
    std::vector<std::string> rec;
    for (const auto& item : j["checks"][0].items()) rec.push_back(item.key());
    CHECK(rec == std::vector<std::string>{"id", "paper", "max_residual", "tol", "verdict", "points", "detail"});

    CheckReport stamped = r;
    stamped.timestamp = "2026-01-01T00:00:00Z";
    CHECK(nlohmann::json::parse(emit_report(stamped, Format::json))["timestamp"] == "2026-01-01T00:00:00Z");
  }

  TEST_CASE("text table") {
    const CheckReport r = run_identity_suite(WeakACM(parse_builtin("sasakian-r3")), small_options(4));
    const std::string t = emit_report(r, Format::text);
    CHECK(t.find("check") != std::string::npos);
    CHECK(t.find("lemma.C2") != std::string::npos);
    CHECK(t.find("summary:") != std::string::npos);
    CHECK(t == emit_report(r, Format::text));
    CHECK_THROWS_AS(parse_format("yaml"), SchemaError);
  }
}
