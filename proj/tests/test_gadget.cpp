#include "mx3/error.hpp"
#include "mx3/gadget.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace mx3;

namespace {

TupleCode T(const char* s) { return parse_tuple_string(s); }

TupleDistribution uniform_c() { return uniform_over(3, xor_support()); }

}  // namespace

TEST_CASE("label cover generation") {
  SUBCASE("single edge") {
    const auto lc = make_label_cover(1, 1, 1, 1, 1, 3);
    REQUIRE(lc.edges().size() == 1);
    CHECK(lc.edges()[0].projection == std::vector<std::uint32_t>{0});
    REQUIRE(lc.planted());
    CHECK(lc.count_satisfied(*lc.planted()) == 1);
  }
  SUBCASE("complete bipartite R=2 d=2") {
    const auto lc = make_label_cover(2, 2, 2, 2, 2, 11);
    CHECK(lc.edges().size() == 4);
    for (const auto& e : lc.edges()) {
      std::map<std::uint32_t, int> pre;
      for (auto t : e.projection) ++pre[t];
      CHECK(pre.size() == 2);
      CHECK(pre[0] == 2);
      CHECK(pre[1] == 2);
    }
  }
  SUBCASE("planted labeling perfect on 8 edges") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto lc = make_label_cover(2, 2, 4, 4, 2, seed);
      REQUIRE(lc.edges().size() == 8);
      const Labeling& a = *lc.planted();
      std::size_t ok = 0;
      for (const auto& e : lc.edges()) ok += e.projection[a.v_labels[e.v]] == a.u_labels[e.u];
      CHECK(ok == 8);
      std::map<std::uint32_t, int> udeg, vdeg;
      for (const auto& e : lc.edges()) {
        ++udeg[e.u];
        ++vdeg[e.v];
      }
      for (const auto& [u, c] : udeg) CHECK(c == 2);
      for (const auto& [v, c] : vdeg) CHECK(c == 2);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(make_label_cover(3, 5, 1, 1, 1, 0), CapError);
    CHECK_THROWS_AS(make_label_cover(2, 1, 3, 2, 1, 0), ValidationError);
    CHECK_THROWS_AS(make_label_cover(0, 1, 1, 1, 1, 0), ValidationError);
  }
}

TEST_CASE("label cover validation and text format") {
  const auto lc = make_label_cover(2, 2, 2, 4, 2, 5);
  const std::string text = serialize(lc);
  const auto back = parse_label_cover(text);
  CHECK(serialize(back) == text);
  CHECK(back.count_satisfied(*back.planted()) == back.edges().size());

  // A projection that is not d-to-1.
  CHECK_THROWS_AS(LabelCoverInstance(2, 2, 1, 1, {{0, 0, {0, 0, 0, 1}}}), ValidationError);
  // Irregular U side.
  CHECK_THROWS_AS(LabelCoverInstance(1, 1, 2, 1, {{0, 0, {0}}}), ValidationError);
  // Planted labeling violating an edge.
  CHECK_THROWS_AS(LabelCoverInstance(2, 1, 1, 1, {{0, 0, {0, 1}}}, Labeling{{0}, {1}}), ValidationError);
  CHECK_THROWS_AS(parse_label_cover("p lc 1 1 1 1 2\ne 1 1 1\n"), ParseError);

  // A wrong labeling is detected.
  Labeling wrong = *lc.planted();
  wrong.u_labels[0] ^= 1U;
  CHECK(lc.count_satisfied(wrong) < lc.edges().size());
}

TEST_CASE("row distribution") {
  const auto phi = uniform_c();
  SUBCASE("d=1 equals phi") { CHECK(row_distribution(phi, 1) == phi); }
  SUBCASE("column-1 marginal uniform") {
    for (int d = 1; d <= 3; ++d) {
      const auto row = row_distribution(phi, d);
      CHECK(row.arity() == 1 + 2 * d);
      const std::vector<int> first{0};
      CHECK(marginal(row, first) == uniform_over(1, std::vector<TupleCode>{0, 1}));
    }
  }
  SUBCASE("d=1 pair marginals pairwise independent") {
    const auto row = row_distribution(phi, 1);
    for (const auto& cols : {std::vector<int>{0, 1}, std::vector<int>{0, 2}, std::vector<int>{1, 2}}) {
      CHECK(check_pairwise_independent(marginal(row, cols), Rational(1, 2)).holds);
    }
  }
  SUBCASE("d=2 conditional structure") {
    const auto row = row_distribution(phi, 2);
    // Given g = +1, each (a_j, b_j) is uniform over {(+,+), (-,-)}.
    CHECK(row.prob(T("+++++")) == Rational(1, 8));
    CHECK(row.prob(T("++-+-")) == Rational(1, 8));
    CHECK(row.prob(T("+++-+")) == Rational(0));
    CHECK(ground(row).size() == 8);
  }
}

TEST_CASE("uncorrelate") {
  const auto mu = row_distribution(uniform_c(), 1);
  const auto mu2 = uncorrelate(mu);
  CHECK(mu2.prob(T("+--")) == Rational(1, 8));
  for (TupleCode t = 0; t < 8; ++t) CHECK(mu2.prob(t) == Rational(1, 8));
  const std::vector<int> first{0};
  CHECK(marginal(mu2, first) == uniform_over(1, std::vector<TupleCode>{0, 1}));

  const auto independent = product(uniform_over(1, std::vector<TupleCode>{0, 1}),
                                   TupleDistribution(2, {{T("++"), Rational(1, 3)}, {T("-+"), Rational(2, 3)}}));
  CHECK(uncorrelate(independent) == independent);
}

TEST_CASE("noise") {
  const auto point = point_mass(3, T("+++"));
  SUBCASE("exact law") {
    const auto noisy = apply_noise_exact(point, Rational(1, 10));
    const std::vector<int> first{0};
    CHECK(marginal(noisy, first).prob(1) == Rational(1, 20));
    CHECK(apply_noise_exact(point, Rational(0)) == point);
  }
  SUBCASE("sampler at eta=0.1") {
    auto draw = apply_noise(point, 0.1, 42);
    int minus = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) minus += tuple_coordinate(draw(), 3, 0) == -1;
    CHECK(std::abs(minus / double(n) - 0.05) <= 0.005);
  }
  SUBCASE("eta=0 is identity") {
    auto draw = apply_noise(uniform_c(), 0.0, 1);
    for (int i = 0; i < 1000; ++i) CHECK(uniform_c().prob(draw()) > 0);
  }
  SUBCASE("eta near 1 gives uniform coordinates") {
    const auto noisy = apply_noise_exact(point, Rational(999999, 1000000));
    const std::vector<int> first{0};
    CHECK(std::abs(to_double(marginal(noisy, first).prob(0)) - 0.5) < 1e-6);
  }
  CHECK_THROWS_AS(apply_noise(point, 1.0, 0), ValidationError);
}

TEST_CASE("folding") {
  CHECK(fold(T("++"), 2) == FoldedPoint{T("++"), 1});
  CHECK(fold(T("--"), 2) == FoldedPoint{T("++"), -1});
  CHECK(fold(T("-+-"), 3) == FoldedPoint{T("+-+"), -1});
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const int m = 1 + static_cast<int>(rng.below(12));
    const TupleCode x = rng.below(TupleCode{1} << m);
    const TupleCode neg = x ^ ((TupleCode{1} << m) - 1);
    const auto a = fold(x, m);
    const auto b = fold(neg, m);
    CHECK(a.representative == b.representative);
    CHECK(a.sign == -b.sign);
    CHECK(tuple_coordinate(a.representative, m, 0) == 1);
    CHECK((a.sign == 1 ? a.representative : (a.representative ^ ((TupleCode{1} << m) - 1))) == x);
  }
}

TEST_CASE("compose") {
  const auto phi = uniform_c();
  SUBCASE("R=1 d=1 single edge") {
    const auto lc = make_label_cover(1, 1, 1, 1, 1, 0);
    const auto inst = compose(lc, phi, {});
    CHECK(inst.sizes() == BlockSizes{1, 1, 1});
    REQUIRE(inst.constraints().size() == 4);
    for (const auto& c : inst.constraints()) CHECK(c.weight == doctest::Approx(0.25));
    CHECK(evaluate(inst, dictator_assignment(lc, inst)) == 1.0);
  }
  SUBCASE("completeness at eta=0") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto lc = make_label_cover(2, 2, 2, 2, 2, seed);
      const auto inst = compose(lc, phi, {});
      CHECK(inst.sizes() == composed_sizes(lc));
      CHECK(inst.sizes() == BlockSizes{4, 16, 16});
      CHECK(evaluate(inst, dictator_assignment(lc, inst)) == 1.0);
    }
  }
  SUBCASE("per-edge weight sums to one") {
    const auto lc = make_label_cover(2, 1, 2, 2, 1, 4);
    const auto inst = compose(lc, phi, {0.1, 1U << 16, ComposeMode::kEnumerate, 0});
    CHECK(inst.total_weight() == doctest::Approx(static_cast<double>(lc.edges().size())));
  }
  SUBCASE("noisy completeness in sample mode") {
    const auto lc = make_label_cover(2, 2, 2, 2, 2, 9);
    const double eta = 0.05;
    const auto inst = compose(lc, phi, {eta, 10000, ComposeMode::kSample, 123});
    const double value = evaluate(inst, dictator_assignment(lc, inst));
    CHECK(value >= 1 - 3 * eta);
    CHECK(value < 1.0);
  }
  SUBCASE("noisy completeness exact") {
    const auto lc = make_label_cover(1, 2, 1, 1, 1, 2);
    const auto inst = compose(lc, phi, {0.05, 1U << 16, ComposeMode::kEnumerate, 0});
    CHECK(evaluate(inst, dictator_assignment(lc, inst)) >= 1 - 3 * 0.05);
  }
  SUBCASE("non-perfect labeling scores below 1") {
    const auto lc = make_label_cover(2, 1, 2, 2, 2, 6);
    const auto inst = compose(lc, phi, {});
    Labeling wrong = *lc.planted();
    wrong.u_labels[0] ^= 1U;
    CHECK(evaluate(inst, dictator_assignment(lc, wrong, inst)) < 1.0);
  }
  SUBCASE("errors") {
    const auto lc = make_label_cover(2, 2, 1, 1, 1, 0);
    CHECK_THROWS_AS(compose(lc, point_mass(3, T("+++")), {}), ValidationError);
    CHECK_THROWS_AS(compose(lc, phi, {0.0, 10, ComposeMode::kEnumerate, 0}), CapError);
    const auto no_plant = LabelCoverInstance(1, 1, 1, 1, {{0, 0, {0}}});
    const auto inst = compose(no_plant, phi, {});
    CHECK_THROWS_AS(dictator_assignment(no_plant, inst), ValidationError);
  }
  SUBCASE("sample mode deterministic per seed") {
    const auto lc = make_label_cover(2, 2, 2, 2, 2, 1);
    const ComposeOptions opt{0.05, 2000, ComposeMode::kSample, 77};
    CHECK(serialize(compose(lc, phi, opt)) == serialize(compose(lc, phi, opt)));
  }
}
