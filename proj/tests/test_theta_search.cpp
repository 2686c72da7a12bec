#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "vpscale/resize.hpp"
#include "vpscale/theta_search.hpp"

using namespace vpscale;
using namespace vpscale::testing;

TEST_CASE("theta grid") {
  const auto g = theta_grid();
  REQUIRE(g.size() == 19);
  CHECK(g.front() == 0.05);
  CHECK(g.back() == 0.95);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  const auto z = theta_grid(true);
  REQUIRE(z.size() == 20);
  CHECK(z.front() == 0.0);
}

TEST_CASE("odd-factor sweep is flat and picks 0.05") {
  std::mt19937 rng(1);
  const auto input = random_image(rng, 27, 18);
  const auto target = random_image(rng, 9, 6);
  const auto result = supervised_resize(input, target);
  REQUIRE(result.candidates.size() == 19);
  for (const auto& c : result.candidates) CHECK(c.mse == result.candidates.front().mse);
  CHECK(result.best_theta == 0.05);
}

TEST_CASE("a target produced at theta 0.5 is recovered exactly") {
  std::mt19937 rng(2);
  const auto input = random_image(rng, 20, 24);
  const auto target = resize_image(input, ResizeSpec{13, 17, 0.5});
  const auto result = supervised_resize(input, target);
  double best_mse = 1e300;
  double at_half = -1;
  for (const auto& c : result.candidates) {
    best_mse = std::min(best_mse, c.mse);
    if (c.theta == 0.5) at_half = c.mse;
  }
  CHECK(best_mse == 0.0);
  CHECK(at_half == 0.0);
  CHECK(result.candidates[static_cast<std::size_t>(std::lround(result.best_theta * 20)) - 1].mse == 0.0);
  CHECK(result.best_image == target);
}

TEST_CASE("identity sweep") {
  std::mt19937 rng(3);
  const auto img = random_image(rng, 10, 10);
  const auto result = supervised_resize(img, img);
  for (const auto& c : result.candidates) CHECK(c.mse == 0.0);
  CHECK(result.best_theta == 0.05);
  CHECK(result.best_image == img);
}

TEST_CASE("best image equals a fresh resize and candidates are consistent") {
  std::mt19937 rng(4);
  const auto input = random_image(rng, 16, 20);
  const auto target = random_image(rng, 24, 30);
  SweepOptions options;
  options.jobs = 3;
  const auto result = supervised_resize(input, target, options);
  CHECK(result.best_image == resize_image(input, ResizeSpec{24, 30, result.best_theta}));
  double best = 1e300;
  for (const auto& c : result.candidates) best = std::min(best, c.mse);
  for (const auto& c : result.candidates) {
    if (c.theta == result.best_theta) CHECK(c.mse == best);
    if (c.theta < result.best_theta) CHECK(c.mse > best);
    CHECK(c.report.theta_used == c.theta);
    CHECK(c.report.source_h == 16);
    CHECK(c.report.target_w == 30);
  }
  // parallel and serial sweeps agree
  const auto serial = supervised_resize(input, target);
  for (std::size_t i = 0; i < serial.candidates.size(); ++i)
    CHECK(serial.candidates[i].mse == result.candidates[i].mse);
}

TEST_CASE("sweep shares the cache") {
  MatrixCache cache;
  std::mt19937 rng(5);
  const auto input = random_image(rng, 40, 30);
  const auto target = random_image(rng, 22, 22);
  (void)supervised_resize(input, target, {}, cache);
  CHECK(cache.builds() <= 38);
}

TEST_CASE("selection by luma MSE and include_zero") {
  std::mt19937 rng(6);
  const auto input = random_image(rng, 12, 12);
  const auto target = random_image(rng, 20, 20);
  SweepOptions options;
  options.select = SelectMetric::MseLuma;
  options.include_zero = true;
  const auto result = supervised_resize(input, target, options);
  REQUIRE(result.candidates.size() == 20);
  CHECK(result.candidates.front().theta == 0.0);
  for (const auto& c : result.candidates) CHECK(c.mse == c.report.mse_luma);
}

TEST_CASE("aggregate_best_theta") {
  auto with = [](std::initializer_list<double> thetas) {
    std::vector<ThetaSweepResult> out;
    for (double t : thetas) {
      ThetaSweepResult r;
      r.best_theta = t;
      out.push_back(r);
    }
    return out;
  };
  CHECK(aggregate_best_theta(with({0.25})) == 0.25);
  CHECK(aggregate_best_theta(with({0.2, 0.4})) == doctest::Approx(0.3).epsilon(1e-15));
  std::vector<ThetaSweepResult> seq;
  for (double t : theta_grid()) seq.push_back(with({t}).front());
  CHECK(aggregate_best_theta(seq) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS((void)aggregate_best_theta({}), std::invalid_argument);
}
