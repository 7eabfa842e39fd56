#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "afd2d/bounds.hpp"
#include "afd2d/dictionary.hpp"
#include "afd2d/greedy.hpp"
#include "afd2d/signal.hpp"
#include "oracles.hpp"

using namespace afd2d;
using namespace oracle;

namespace {

// Unit atom built without touching the library's normalization helpers.
Signal2D oracle_unit_atom(const DiscPoint& a, const DiscPoint& b,
                          const TorusGrid& grid) {
  Signal2D atom = slow_product_atom(a, b, 1, 1, grid);
  const double nrm = std::sqrt(direct_inner(atom, atom).real());
  return scale(atom, 1.0 / nrm);
}

struct Certified {
  Signal2D f;
  double m_budget = 0.0;
  std::vector<Signal2D> atoms;
  std::vector<AtomRef> refs;
};

// f = sum c_k psi_k with unit on-grid atoms, so sum |c_k| certifies f.
Certified certified_signal(const TorusGrid& grid, const ParameterGrid& pg) {
  REQUIRE(pg.points.size() >= 4);
  const auto& p = pg.points;
  Certified out;
  out.refs = {{p[0], p[1]}, {p[2], p[3]}, {p[1], p[2]}, {p[3], p[0]}};
  const std::vector<double> coeff = {2.0, 1.2, 0.7, 0.4};
  out.f = Signal2D::zero(grid);
  for (size_t k = 0; k < out.refs.size(); ++k) {
    Signal2D atom = oracle_unit_atom(out.refs[k].a, out.refs[k].b, grid);
    out.f = add(out.f, scale(atom, coeff[k]));
    out.atoms.push_back(std::move(atom));
    out.m_budget += coeff[k];
  }
  return out;
}

}  // namespace

TEST_CASE("plain greedy budget bound starts at the budget and decays as 1/sqrt(n)") {
  const double m = 3.5;
  CHECK(woga_apriori_bound(m, {}, 1) == doctest::Approx(m).epsilon(1e-15));

  const std::vector<double> ones(8, 1.0);
  CHECK(woga_apriori_bound(m, ones, 5) ==
        doctest::Approx(m / std::sqrt(5.0)).epsilon(1e-15));
  for (int n = 1; n <= 9; ++n) {
    const double expect = m / std::sqrt(static_cast<double>(n));
    CHECK(woga_apriori_bound(m, ones, n) == doctest::Approx(expect).epsilon(1e-15));
    // Missing entries default to strict selection.
    CHECK(woga_apriori_bound(m, {}, n) == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("weighted bound reduces to the plain one at unit weights") {
  std::mt19937 gen(411);
  std::uniform_real_distribution<double> td(0.1, 1.0);
  std::vector<double> t(6);
  for (double& v : t) v = td(gen);
  const std::vector<double> ones(6, 1.0);
  for (int n = 1; n <= 7; ++n)
    CHECK(woga_posteriori_bound(2.0, t, ones, n) ==
          doctest::Approx(woga_apriori_bound(2.0, t, n)).epsilon(1e-15));
}

TEST_CASE("weighted bound with a recorded deficiency weight") {
  // One step with v = 1/2 contributes (1/v)^2 = 4 to the denominator.
  const std::vector<double> v = {0.5};
  const double got = woga_posteriori_bound(1.0, {}, v, 2);
  CHECK(got == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("weights at most one can only sharpen the plain bound") {
  std::mt19937 gen(902);
  std::uniform_real_distribution<double> vd(0.05, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(10);
    for (double& w : v) w = vd(gen);
    for (int n = 1; n <= 11; ++n)
      CHECK(woga_posteriori_bound(4.0, {}, v, n) <=
            woga_apriori_bound(4.0, {}, n) + 1e-12);
  }
}

TEST_CASE("pre-orthogonal bound shapes") {
  const std::vector<double> ones(9, 1.0);
  CHECK(wpreoga_posteriori_bound(2.5, {}, ones, 1) ==
        doctest::Approx(2.5).epsilon(1e-15));
  for (int n = 1; n <= 10; ++n)
    CHECK(wpreoga_posteriori_bound(2.5, ones, ones, n) ==
          doctest::Approx(2.5 / std::sqrt(static_cast<double>(n))).epsilon(1e-15));
}

TEST_CASE("classic pre-orthogonal estimate is the stated closed form") {
  CHECK(wpreoga_classic_bound(3.0, 0.5, 2.0, 4) == doctest::Approx(6.0));
  CHECK(wpreoga_classic_bound(1.0, 1.0, 1.0, 9) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // With unit weakness and unit span factor it matches the plain curve.
  for (int n = 1; n <= 8; ++n)
    CHECK(wpreoga_classic_bound(2.0, 1.0, 1.0, n) ==
          doctest::Approx(woga_apriori_bound(2.0, {}, n)).epsilon(1e-15));
}

TEST_CASE("completed-expansion bound uses the completed budget") {
  CHECK(preoga_completed_bound(1.7, 1) == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(preoga_completed_bound(1.7, 4) == doctest::Approx(0.85).epsilon(1e-15));
  // A smaller completed budget gives a bound no worse than the plain one.
  const double n_budget = 1.7, m_budget = 2.9;
  for (int n = 1; n <= 12; ++n)
    CHECK(preoga_completed_bound(n_budget, n) <=
          woga_apriori_bound(m_budget, {}, n) + 1e-15);
}

TEST_CASE("bound arguments are validated") {
  CHECK_THROWS_AS(woga_apriori_bound(1.0, {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(woga_apriori_bound(0.0, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(woga_apriori_bound(-2.0, {}, 3), std::invalid_argument);
  const std::vector<double> bad_t = {1.5};
  CHECK_THROWS_AS(woga_apriori_bound(1.0, bad_t, 2), std::invalid_argument);
  // The offending entry is never consulted for n = 1.
  CHECK(woga_apriori_bound(1.0, bad_t, 1) == doctest::Approx(1.0));
  const std::vector<double> zero = {0.0};
  CHECK_THROWS_AS(woga_posteriori_bound(1.0, {}, zero, 2), std::invalid_argument);
  const std::vector<double> neg = {-1.0};
  CHECK_THROWS_AS(wpreoga_posteriori_bound(1.0, {}, neg, 2), std::invalid_argument);
  CHECK_THROWS_AS(wpreoga_classic_bound(1.0, 0.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(wpreoga_classic_bound(1.0, 1.2, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(wpreoga_classic_bound(1.0, 1.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(preoga_completed_bound(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(rn_curve({}, {}, 3), std::invalid_argument);
}

TEST_CASE("span distance estimate over an empty expansion is one") {
  GreedyState state;
  state.grid = TorusGrid(16, 16);
  const ParameterGrid pg = restrict_radius(build_parameter_grid(2, 3), 0.9);
  CHECK(estimate_rn(state, pg) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("span distance estimate vanishes once every candidate is captured") {
  const TorusGrid grid(8, 8);
  const ParameterGrid pg = build_parameter_grid(1, 1);  // single origin atom
  const Signal2D f = random_signal(grid, 71);
  const GreedyState state = run_oga(f, pg, 1);
  CHECK(estimate_rn(state, pg) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("span distance estimate matches an explicit projection scan") {
  const TorusGrid grid(24, 24);
  const ParameterGrid pg = restrict_radius(build_parameter_grid(2, 3), 0.8);
  const Signal2D f = random_signal(grid, 4031);
  const GreedyState state = run_oga(f, pg, 3);
  REQUIRE(state.ortho.size() == 3);

  double worst = 0.0;
  for (const DiscPoint& a : pg.points)
    for (const DiscPoint& b : pg.points) {
      const Signal2D atom = oracle_unit_atom(a, b, grid);
      worst = std::max(worst, slow_gram_schmidt(state.ortho, atom, 1e-14).r);
    }
  CHECK(estimate_rn(state, pg) == doctest::Approx(worst).epsilon(1e-10));
}

TEST_CASE("per-step span distance curve starts at one and matches a slow scan") {
  const TorusGrid grid(24, 24);
  const ParameterGrid pg = restrict_radius(build_parameter_grid(3, 4), 0.8);
  const Certified made = certified_signal(grid, pg);
  const GreedyState state = run_oga(made.f, pg, 4);

  const int upto = state.steps() + 1;
  const std::vector<double> curve = rn_curve(state.ortho, made.atoms, upto);
  REQUIRE(static_cast<int>(curve.size()) == upto);
  CHECK(curve[0] == doctest::Approx(1.0).epsilon(1e-12));

  for (int k = 1; k <= upto; ++k) {
    const std::vector<Signal2D> prefix(state.ortho.begin(),
                                       state.ortho.begin() + (k - 1));
    double worst = 0.0;
    for (const Signal2D& atom : made.atoms)
      worst = std::max(worst, slow_gram_schmidt(prefix, atom, 1e-14).r);
    CHECK(curve[k - 1] == doctest::Approx(worst).epsilon(1e-10));
  }

  for (size_t k = 1; k < curve.size(); ++k) CHECK(curve[k] <= curve[k - 1] + 1e-12);
}

TEST_CASE("recorded residual norms dominate neither budget bound") {
  const TorusGrid grid(24, 24);
  const ParameterGrid pg = restrict_radius(build_parameter_grid(3, 4), 0.8);
  const Certified made = certified_signal(grid, pg);

  const GreedyState oga = run_oga(made.f, pg, 4);
  const std::vector<double> observed = observed_residual_norms(oga);
  REQUIRE(static_cast<int>(observed.size()) == oga.steps() + 1);
  CHECK(observed[0] == doctest::Approx(norm(made.f)).epsilon(1e-12));
  CHECK(observed[0] <= made.m_budget + 1e-12);

  const std::vector<double> ones(oga.steps(), 1.0);
  for (int n = 1; n <= oga.steps() + 1; ++n) {
    CHECK(observed[n - 1] <= woga_apriori_bound(made.m_budget, ones, n) + 1e-9);
    CHECK(observed[n - 1] <=
          woga_posteriori_bound(made.m_budget, ones, oga.v_seq, n) + 1e-9);
  }

  const GreedyState pre = run_preoga(made.f, pg, 4);
  const std::vector<double> r_seq =
      rn_curve(pre.ortho, made.atoms, pre.steps());
  const std::vector<double> pre_observed = observed_residual_norms(pre);
  for (int n = 1; n <= pre.steps() + 1; ++n)
    CHECK(pre_observed[n - 1] <=
          wpreoga_posteriori_bound(made.m_budget, ones, r_seq, n) + 1e-9);
}

TEST_CASE("bound traces pair curves with observations") {
  const TorusGrid grid(24, 24);
  const ParameterGrid pg = restrict_radius(build_parameter_grid(3, 4), 0.8);
  const Certified made = certified_signal(grid, pg);
  const GreedyState state = run_oga(made.f, pg, 4);

  const BoundTrace apriori = make_apriori_trace(made.m_budget, state);
  const BoundTrace posteriori = make_posteriori_trace(made.m_budget, state);

  REQUIRE(apriori.bound_curve.size() == apriori.observed_curve.size());
  REQUIRE(posteriori.bound_curve.size() == posteriori.observed_curve.size());
  REQUIRE(static_cast<int>(apriori.bound_curve.size()) == state.steps() + 1);
  CHECK(posteriori.weight_seq == state.v_seq);

  for (size_t i = 0; i < apriori.bound_curve.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    CHECK(apriori.bound_curve[i] ==
          doctest::Approx(made.m_budget / std::sqrt(static_cast<double>(n)))
              .epsilon(1e-12));
    CHECK(posteriori.bound_curve[i] <= apriori.bound_curve[i] + 1e-12);
    CHECK(apriori.observed_curve[i] <= apriori.bound_curve[i] + 1e-9);
    CHECK(posteriori.observed_curve[i] <= posteriori.bound_curve[i] + 1e-9);
    if (i > 0) {
      CHECK(apriori.bound_curve[i] <= apriori.bound_curve[i - 1] + 1e-15);
      CHECK(posteriori.bound_curve[i] <= posteriori.bound_curve[i - 1] + 1e-15);
    }
  }
}

TEST_CASE("decay lemma accepts the boundary sequence") {
  const double cap = 2.0;
  std::vector<double> a;
  for (int m = 1; m <= 10; ++m) a.push_back(cap / static_cast<double>(m));
  CHECK(check_lemma_sequence(a, cap, {}));
}

TEST_CASE("decay lemma hypothesis rejects a stalled sequence") {
  const double cap = 1.5;
  const std::vector<double> flat(5, cap);
  CHECK_FALSE(lemma_recursion_holds(flat, cap, {}));
  CHECK_FALSE(check_lemma_sequence(flat, cap, {}));
  CHECK(lemma_recursion_holds({}, -1.0, {}));  // nothing to check
  const std::vector<double> one = {0.5};
  CHECK_THROWS_AS(lemma_recursion_holds(one, 0.0, {}), std::invalid_argument);
}

TEST_CASE("sequences built from the recursion always satisfy the decay bound") {
  std::mt19937 gen(246);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> capd(0.5, 5.0);
  std::uniform_int_distribution<int> lend(1, 25);
  for (int trial = 0; trial < 1000; ++trial) {
    const double cap = capd(gen);
    const int len = lend(gen);
    std::vector<double> t(len), a;
    for (double& v : t) v = 0.05 + 0.95 * unit(gen);
    a.push_back(cap * unit(gen));
    for (int m = 0; m + 1 < len; ++m) {
      const double limit = a[m] * (1.0 - t[m] * t[m] * a[m] / cap);
      a.push_back(limit * unit(gen));
    }
    REQUIRE(lemma_recursion_holds(a, cap, t));
    CHECK(check_lemma_sequence(a, cap, t));
  }
}
