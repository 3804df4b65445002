#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "errbound/classic_bounds.hpp"
#include "helpers.hpp"

using namespace errbound;

TEST_CASE("BLB2 attains the MAP error on uniform binary posteriors") {
  auto pr = testutil::uniform_posterior_problem(2);
  auto est = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::BLB2));
  CHECK(est.value == Catch::Approx(0.5).margin(1e-13));
}

TEST_CASE("Harmonic equals b1 at p=2 on binary problems") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    auto pr = testutil::random_discrete(rng, 2, 3 + t);
    double h = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::Harmonic)).value;
    CHECK(h == Catch::Approx(bound_b1(pr, PExponent(2.0)).value).margin(1e-12));
  }
}

TEST_CASE("Bayes2 on uniform ternary posteriors") {
  auto pr = testutil::uniform_posterior_problem(3);
  auto est = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::Bayes2));
  CHECK(est.value == Catch::Approx(1.0 - 1.0 / std::sqrt(3.0)).margin(1e-13));
}

TEST_CASE("GMD1(1,2) coincides with Bayes2") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 15; ++t) {
    auto pr = testutil::random_discrete(rng, 2 + t % 4, 4 + t % 5);
    double gmd = evaluate_classic(pr, ClassicBoundSpec::gmd1(1.0, 2.0)).value;
    double b2 = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::Bayes2)).value;
    CHECK(gmd == Catch::Approx(b2).margin(1e-12));
  }
}

TEST_CASE("Bayes1 at M=2 coincides with JAlpha(2)") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 10; ++t) {
    auto pr = testutil::random_discrete(rng, 2, 4 + t);
    double bayes1 = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::Bayes1)).value;
    double j2 = evaluate_classic(pr, ClassicBoundSpec::jalpha(2.0)).value;
    CHECK(bayes1 == Catch::Approx(j2).margin(1e-12));
  }
}

TEST_CASE("FDiv at L=1 matches the direct Jensen formula") {
  std::mt19937_64 rng(44);
  auto pr = testutil::random_discrete(rng, 2, 7);
  double fdiv = evaluate_classic(pr, ClassicBoundSpec::fdiv(1.0)).value;
  double inner = expect(pr, [](auto, const PosteriorVector& p) {
                   return 4.0 * p.values[0] * p.values[1];
                 }).value;
  CHECK(fdiv == Catch::Approx(0.5 - 0.5 * std::sqrt(1.0 - inner)).margin(1e-12));
}

TEST_CASE("soundness of all applicable classic bounds") {
  std::mt19937_64 rng(45);
  std::vector<ClassicBoundSpec> m_any = {
      ClassicBoundSpec::simple(ClassicKind::Bayes1),
      ClassicBoundSpec::simple(ClassicKind::Bayes2),
      ClassicBoundSpec::simple(ClassicKind::Bayes3),
      ClassicBoundSpec::simple(ClassicKind::Quad),
      ClassicBoundSpec::simple(ClassicKind::Matusita),
      ClassicBoundSpec::gmd1(1.0, 2.0),
      ClassicBoundSpec::gmd1(0.8, 1.5),
      ClassicBoundSpec::gmd2(0.5, 1.7),
  };
  std::vector<ClassicBoundSpec> m_two = {
      ClassicBoundSpec::simple(ClassicKind::BLB2),
      ClassicBoundSpec::fdiv(1.0),
      ClassicBoundSpec::fdiv(2.0),
      ClassicBoundSpec::simple(ClassicKind::Harmonic),
      ClassicBoundSpec::jalpha(1.0),
      ClassicBoundSpec::jalpha(2.0),
      ClassicBoundSpec::simple(ClassicKind::GaussSin),
      ClassicBoundSpec::atlb(1.0),
      ClassicBoundSpec::atlb(10.0),
  };
  for (int t = 0; t < 25; ++t) {
    auto pr = testutil::random_discrete(rng, 2 + t % 4, 3 + t % 9);
    double pe = map_error(pr).value;
    for (const auto& s : m_any)
      CHECK(evaluate_classic(pr, s).value <= pe + 1e-10);
    if (pr.num_hypotheses() == 2)
      for (const auto& s : m_two)
        CHECK(evaluate_classic(pr, s).value <= pe + 1e-10);
  }
}

TEST_CASE("divergence and first Bhattacharyya bounds are sound for equal priors") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 25; ++t) {
    auto base = testutil::random_discrete(rng, 2, 3 + t % 9);
    std::vector<std::vector<double>> lik(base.num_symbols());
    for (std::size_t s = 0; s < base.num_symbols(); ++s)
      lik[s] = {base.likelihood(s, 0), base.likelihood(s, 1)};
    DiscreteProblem pr(PriorVector({0.5, 0.5}), lik);
    double pe = map_error(pr).value;
    double div = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::Divergence)).value;
    double blb1 = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::BLB1)).value;
    CHECK(div <= pe + 1e-10);
    CHECK(blb1 <= pe + 1e-10);
    CHECK(blb1 >= div - 1e-10);  // the Bhattacharyya form dominates the divergence form
  }
}

TEST_CASE("bound chain Quad <= Bayes2 <= Bayes1") {
  std::mt19937_64 rng(46);
  for (int t = 0; t < 25; ++t) {
    auto pr = testutil::random_discrete(rng, 2 + t % 4, 3 + t % 8);
    double quad = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::Quad)).value;
    double b2 = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::Bayes2)).value;
    double b1 = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::Bayes1)).value;
    CHECK(quad <= b2 + 1e-12);
    CHECK(b2 <= b1 + 1e-12);
  }
}

TEST_CASE("ATLB tightens as alpha grows") {
  std::mt19937_64 rng(47);
  auto pr = testutil::random_discrete(rng, 2, 8);
  double prev = -1.0;
  for (double a : {1.0, 5.0, 25.0}) {
    double v = evaluate_classic(pr, ClassicBoundSpec::atlb(a)).value;
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}

TEST_CASE("binary-only bounds reject M > 2") {
  std::mt19937_64 rng(48);
  auto pr = testutil::random_discrete(rng, 3, 5);
  for (auto k : {ClassicKind::Divergence, ClassicKind::BLB1, ClassicKind::BLB2,
                 ClassicKind::Harmonic, ClassicKind::GaussSin}) {
    CHECK_THROWS_AS(evaluate_classic(pr, ClassicBoundSpec::simple(k)), unsupported_error);
  }
  CHECK_THROWS_AS(evaluate_classic(pr, ClassicBoundSpec::atlb(1.0)), unsupported_error);
  CHECK_THROWS_AS(evaluate_classic(pr, ClassicBoundSpec::jalpha(0.5)), unsupported_error);
}

TEST_CASE("parameter constraints are enforced") {
  std::mt19937_64 rng(49);
  auto pr = testutil::random_discrete(rng, 2, 4);
  CHECK_THROWS_AS(evaluate_classic(pr, ClassicBoundSpec::fdiv(0.5)), domain_error);
  CHECK_THROWS_AS(evaluate_classic(pr, ClassicBoundSpec::jalpha(0.5)), domain_error);
  CHECK_THROWS_AS(evaluate_classic(pr, ClassicBoundSpec::jalpha(0.0)), domain_error);
  CHECK_THROWS_AS(evaluate_classic(pr, ClassicBoundSpec::atlb(-1.0)), domain_error);
  CHECK_THROWS_AS(evaluate_classic(pr, ClassicBoundSpec::gmd1(0.2, 1.5)), domain_error);
  CHECK_THROWS_AS(evaluate_classic(pr, ClassicBoundSpec::gmd2(0.5, 3.0)), domain_error);
}

TEST_CASE("divergence bound degenerates to zero on posterior zeros") {
  DiscreteProblem pr(PriorVector({0.5, 0.5}), {{1.0, 0.5}, {0.0, 0.5}});
  auto est = evaluate_classic(pr, ClassicBoundSpec::simple(ClassicKind::Divergence));
  CHECK(est.value == 0.0);
  CHECK(est.degenerate);
}

TEST_CASE("compare_all produces a sorted table with map on top bounds") {
  std::mt19937_64 rng(50);
  auto pr = testutil::random_discrete(rng, 2, 6);
  auto rows = compare_all(pr,
                          {ClassicBoundSpec::simple(ClassicKind::BLB2),
                           ClassicBoundSpec::simple(ClassicKind::Bayes3)},
                          {PExponent(2.0)});
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].ok && rows[i - 1].ok)
      CHECK(rows[i - 1].estimate.value >= rows[i].estimate.value);
  }
  bool found_map = false;
  double pe = map_error(pr).value;
  for (const auto& r : rows) {
    if (r.name == "map") {
      found_map = true;
      CHECK(r.estimate.value == Catch::Approx(pe).margin(1e-14));
    } else if (r.ok) {
      CHECK(r.estimate.value <= pe + 1e-10);
    }
  }
  CHECK(found_map);
}

TEST_CASE("compare_all records per-entry failures instead of throwing") {
  std::mt19937_64 rng(51);
  auto pr = testutil::random_discrete(rng, 3, 5);
  auto rows = compare_all(pr, {ClassicBoundSpec::simple(ClassicKind::BLB2)}, {});
  REQUIRE(rows.size() == 2);
  CHECK(rows.back().name == "classic:BLB2");
  CHECK_FALSE(rows.back().ok);
  CHECK_FALSE(rows.back().error.empty());
}
