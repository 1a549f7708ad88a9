#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fairslice/chores.hpp"
#include "helpers.hpp"

using namespace fairslice;
using namespace fairslice::testing;

namespace {

std::vector<double> unhat(const std::vector<double>& xh) {
  int m = static_cast<int>(xh.size());
  std::vector<double> x(xh.size());
  for (int j = 0; j < m; ++j) x[static_cast<size_t>(j)] = (1.0 - xh[static_cast<size_t>(j)]) / (m - 1);
  return x;
}

double chore_cost(const AdditivePiecewiseConstant& u, const Partition& x, int j) {
  return u.integral(x.cut(j), x.cut(j + 1));
}

bool chore_envy_free(const Assignment& a, const std::vector<AdditivePiecewiseConstant>& costs,
                     double slack) {
  for (size_t j = 0; j < a.groups.size(); ++j)
    for (int i : a.groups[j]) {
      double own = chore_cost(costs[static_cast<size_t>(i)], a.partition, static_cast<int>(j));
      for (int t = 0; t < a.partition.pieces(); ++t)
        if (own > chore_cost(costs[static_cast<size_t>(i)], a.partition, t) + slack) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("hat evaluates the exemption formula") {
  auto h2 = hat(validate_partition({0.3, 0.7}));
  CHECK(h2[0] == doctest::Approx(0.7));
  CHECK(h2[1] == doctest::Approx(0.3));
  auto h3 = hat(validate_partition({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  for (double v : h3) CHECK(v == doctest::Approx(1.0 / 3));
  auto out = hat(validate_partition({0.6, 0.2, 0.2}));
  CHECK(out[0] == doctest::Approx(-0.2));
  CHECK(out[1] == doctest::Approx(0.6));
}

TEST_CASE("in_delta caps every piece at 1/(m-1)") {
  CHECK(in_delta(validate_partition({0.9, 0.1})));
  CHECK(in_delta(validate_partition({0.5, 0.5, 0.0})));
  CHECK_FALSE(in_delta(validate_partition({0.6, 0.2, 0.2})));
}

TEST_CASE("hat sums to one and inverts on the delta sub-simplex") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    int m = 2 + static_cast<int>(rng() % 3);
    std::vector<double> raw(static_cast<size_t>(m));
    double sum = 0;
    for (double& v : raw) {
      v = unif(rng);
      sum += v;
    }
    for (double& v : raw) v /= sum;
    Partition x = validate_partition(raw);
    auto xh = hat(x);
    double hsum = 0;
    for (double v : xh) hsum += v;
    CHECK(std::abs(hsum - 1.0) <= 1e-12);
    if (m == 2) {
      auto back = hat(validate_partition(xh));
      CHECK(back[0] == doctest::Approx(x.lengths[0]).epsilon(1e-12));
    }
    if (in_delta(x)) {
      auto back = unhat(xh);
      for (int j = 0; j < m; ++j)
        CHECK(back[static_cast<size_t>(j)] ==
              doctest::Approx(x.lengths[static_cast<size_t>(j)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("lifted demand follows the lazy demand through hat inside delta") {
  auto cost = AdditivePiecewiseConstant::make({{0, 1, 1.0}});
  auto h = lift_demand(make_additive_cost_demand(cost), 3);
  CHECK(h(validate_partition({0.5, 0.5, 0.0})) == std::vector<int>{0, 1});
  CHECK(h(validate_partition({0.6, 0.3, 0.1})) == std::vector<int>{0});
  // m=2: plain coordinate swap of the lazy demand
  auto h2 = lift_demand(make_additive_cost_demand(cost), 2);
  CHECK(h2(validate_partition({0.3, 0.7})) == std::vector<int>{1});
  CHECK(h2(validate_partition({0.7, 0.3})) == std::vector<int>{0});
}

TEST_CASE("lifted demand is hungry on zero-piece and random partitions") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto cost = random_lazy_cost(rng);
  for (int m = 2; m <= 4; ++m) {
    auto h = lift_demand(make_additive_cost_demand(cost), m);
    // structural: one zero piece, the rest at the delta boundary
    for (int z = 0; z < m; ++z) {
      std::vector<double> raw(static_cast<size_t>(m), 1.0 / (m - 1));
      raw[static_cast<size_t>(z)] = 0.0;
      auto d = h(validate_partition(raw));
      for (int j : d) CHECK(raw[static_cast<size_t>(j)] > 0.0);
    }
    for (int t = 0; t < 2000; ++t) {
      std::vector<double> raw(static_cast<size_t>(m));
      double sum = 0;
      for (double& v : raw) {
        v = unif(rng);
        sum += v;
      }
      for (double& v : raw) v /= sum;
      if (static_cast<int>(rng() % 3) == 0) {
        raw[rng() % m] = 0.0;
        sum = 0;
        for (double v : raw) sum += v;
        for (double& v : raw) v /= sum;
      }
      Partition x = validate_partition(raw);
      auto d = h(x);
      REQUIRE_FALSE(d.empty());
      for (int j : d) CHECK(x.lengths[static_cast<size_t>(j)] > 0.0);
    }
  }
}

TEST_CASE("pieces on the delta boundary are always demanded") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto cost = random_lazy_cost(rng);
  int m = 3;
  auto h = lift_demand(make_additive_cost_demand(cost), m);
  for (int t = 0; t < 1000; ++t) {
    // face x_0 = 1/(m-1); the remaining mass spread over the others
    double rest = 1.0 - 1.0 / (m - 1);
    double split = unif(rng) * rest;
    Partition x = validate_partition({1.0 / (m - 1), split, rest - split});
    auto d = h(x);
    CHECK(std::find(d.begin(), d.end(), 0) != d.end());
  }
}

TEST_CASE("cost halving point splits a positive cost in half") {
  CHECK(cost_halving_point(AdditivePiecewiseConstant::make({{0, 1, 1.0}})) ==
        doctest::Approx(0.5));
  auto skew = AdditivePiecewiseConstant::make({{0, 0.5, 3.0}, {0.5, 1, 1.0}});
  double s = cost_halving_point(skew);
  CHECK(skew.integral(0, s) == doctest::Approx(skew.integral(s, 1)));
}

TEST_CASE("lifted two-piece preference switches at one minus the halving point") {
  auto cost = AdditivePiecewiseConstant::make({{0, 0.5, 3.0}, {0.5, 1, 1.0}});
  auto p = lifted_two_piece(cost);
  CHECK(p.monotone());
  CHECK(p.hungry());
  CHECK(p.switches()[0] == doctest::Approx(1.0 - cost_halving_point(cost)));
  // agreement with the generic lift on a grid of cuts
  auto h = lift_demand(make_additive_cost_demand(cost), 2);
  for (int g = 0; g <= 100; ++g) {
    double t = g / 100.0;
    auto d = h(validate_partition({t, 1 - t}));
    Side s = p.eval(t);
    bool left = s == Side::Left || s == Side::Both;
    bool right = s == Side::Right || s == Side::Both;
    CHECK(left == (std::find(d.begin(), d.end(), 0) != d.end()));
    CHECK(right == (std::find(d.begin(), d.end(), 1) != d.end()));
  }
}

TEST_CASE("m=2 singleton-group chores are solved exactly by the protocol path") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng() % 7);
    std::vector<AdditivePiecewiseConstant> costs;
    for (int i = 0; i < n; ++i) costs.push_back(random_lazy_cost(rng));
    auto sol = solve_chores(costs, {1, n - 1}, 1e-3);
    CHECK(sol.exact);
    CHECK(sol.transcript.size() == n);
    CHECK(chore_envy_free(sol.assignment, costs, 1e-12));
  }
}

TEST_CASE("two identical uniform chore players split at one half") {
  std::vector<AdditivePiecewiseConstant> costs(2, AdditivePiecewiseConstant::make({{0, 1, 1.0}}));
  auto sol = solve_chores(costs, {1, 1}, 1e-3);
  CHECK(sol.assignment.partition.lengths[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(chore_envy_free(sol.assignment, costs, 1e-9));
}

TEST_CASE("three uniform chore players get thirds") {
  std::vector<AdditivePiecewiseConstant> costs(3, AdditivePiecewiseConstant::make({{0, 1, 1.0}}));
  auto sol = solve_chores(costs, {1, 1, 1}, 1e-2);
  CHECK_FALSE(sol.exact);
  for (double len : sol.assignment.partition.lengths)
    CHECK(len == doctest::Approx(1.0 / 3).epsilon(0.03));
  CHECK(chore_envy_free(sol.assignment, costs, 1e-2));
}

TEST_CASE("whole chore goes to the single group when m=1") {
  std::vector<AdditivePiecewiseConstant> costs(2, AdditivePiecewiseConstant::make({{0, 1, 1.0}}));
  auto sol = solve_chores(costs, {2}, 1e-3);
  CHECK(sol.assignment.partition.lengths == std::vector<double>{1.0});
  CHECK(sol.assignment.groups[0] == std::vector<int>{0, 1});
}

TEST_CASE("non-lazy inputs are rejected") {
  std::vector<AdditivePiecewiseConstant> costs{
      AdditivePiecewiseConstant::make({{0, 0.5, 0.0}, {0.5, 1, 1.0}}),
      AdditivePiecewiseConstant::make({{0, 1, 1.0}})};
  CHECK_THROWS_AS(solve_chores(costs, {1, 1}, 1e-3), std::invalid_argument);
}
