#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "entwalk/classical.hpp"
#include "entwalk/metrics.hpp"
#include "entwalk/walk.hpp"

using namespace entwalk;

namespace {

ProbabilityDistribution make_dist(std::initializer_list<double> weights, int offset) {
  ProbabilityDistribution d;
  d.weights = Eigen::VectorXd(static_cast<Eigen::Index>(weights.size()));
  Eigen::Index i = 0;
  for (double w : weights) d.weights[i++] = w;
  d.position_offset = offset;
  return d;
}

}  // namespace

TEST_CASE("position moments on handcrafted distributions") {
  const ProbabilityDistribution d = make_dist({0.25, 0.0, 0.5, 0.0, 0.25}, -2);
  const PositionMoments m = position_moments(d);
  CHECK(m.expected_position == 0.0);
  CHECK(m.variance == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m.std_dev == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const ProbabilityDistribution shifted = make_dist({0.5, 0.5}, 3);
  const PositionMoments ms = position_moments(shifted);
  CHECK(ms.expected_position == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(ms.variance == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("symmetric binomial moments come out exact") {
  const ProbabilityDistribution d = classical_distribution({50, 0.5});
  const PositionMoments m = position_moments(d);
  CHECK(m.expected_position == 0.0);
  CHECK(m.variance == doctest::Approx(50.0).epsilon(1e-14));
}

TEST_CASE("support counting is a strict threshold") {
  const ProbabilityDistribution d = make_dist({0.5, 1e-4, 0.25, 0.2499, 1e-12}, 0);
  CHECK(support_count(d, 1e-4) == 3);  // the 1e-4 cell itself does not count
  CHECK(support_count(d, 0.0) == 5);
  CHECK(support_count(d, 0.3) == 1);
  CHECK_THROWS_AS(support_count(d, -1.0), std::domain_error);
}

TEST_CASE("symmetry defect") {
  CHECK(symmetry_defect(make_dist({0.25, 0.5, 0.25}, -1)) == 0.0);
  CHECK(symmetry_defect(make_dist({0.75, 0.0, 0.25}, -1)) == doctest::Approx(0.5));
  // window asymmetric around 0: missing mirror cells count in full
  CHECK(symmetry_defect(make_dist({0.5, 0.5}, 0)) == doctest::Approx(0.5));
}

TEST_CASE("shannon entropy") {
  CHECK(shannon_entropy(make_dist({1.0}, 0)) == 0.0);
  CHECK(shannon_entropy(make_dist({0.25, 0.25, 0.25, 0.25}, 0)) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(shannon_entropy(make_dist({0.5, 0.0, 0.5}, 0)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("reduced density matrices are valid states") {
  for (int n : {1, 2, 3}) {
    const StateVector state = evolve(WalkConfig::standard(n, 12));
    const ReducedDensityMatrix pos = reduced_density_position(state);
    const ReducedDensityMatrix coin = reduced_density_coin(state);
    CHECK_NOTHROW(pos.validate());
    CHECK_NOTHROW(coin.validate());
    CHECK(pos.entries.rows() == state.num_positions());
    CHECK(coin.entries.rows() == state.coin_dim());
  }
}

TEST_CASE("position and coin reductions carry the same entropy") {
  // Pure bipartite state: both marginals share the Schmidt spectrum.
  for (int n : {1, 2, 3}) {
    for (int steps : {1, 5, 12, 20}) {
      const StateVector state = evolve(WalkConfig::standard(n, steps));
      const double s_pos = von_neumann_entropy(reduced_density_position(state));
      const double s_coin = von_neumann_entropy(reduced_density_coin(state));
      CHECK(std::abs(s_pos - s_coin) <= 1e-9);
      CHECK(std::abs(s_coin - coin_entropy(state)) <= 1e-12);
    }
  }
}

TEST_CASE("von neumann entropy on explicit matrices") {
  ReducedDensityMatrix pure;
  pure.entries = Eigen::MatrixXcd::Zero(2, 2);
  pure.entries(0, 0) = 1.0;
  CHECK(von_neumann_entropy(pure) == 0.0);

  ReducedDensityMatrix mixed;
  mixed.entries = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  ReducedDensityMatrix skew;
  skew.entries = Eigen::MatrixXcd::Zero(2, 2);
  skew.entries(0, 1) = 1.0;
  CHECK_THROWS_AS(von_neumann_entropy(skew), std::domain_error);
}

TEST_CASE("coin marginal shannon entropy") {
  const WalkConfig config = WalkConfig::standard(2, 0);
  const StateVector start = initial_state_vector(config);
  // Entangled start populates two coin basis states with weight 1/2 each.
  CHECK(coin_marginal_shannon_entropy(start) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const StateVector later = evolve(WalkConfig::standard(2, 9));
  double manual = 0.0;
  for (Eigen::Index c = 0; c < later.coin_dim(); ++c) {
    const double w = later.amplitudes.col(c).squaredNorm();
    if (w > 0.0) manual -= w * std::log(w);
  }
  CHECK(coin_marginal_shannon_entropy(later) == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("metrics series shape and first row") {
  const std::vector<MetricsReport> series = metrics_series(WalkConfig::standard(2, 7));
  REQUIRE(series.size() == 8);
  for (int t = 0; t <= 7; ++t) CHECK(series[t].step == t);

  // t = 0: point distribution, product state.
  CHECK(series[0].variance == 0.0);
  CHECK(series[0].support_count == 1);
  CHECK(std::abs(series[0].shannon_entropy_position) <= 1e-12);
  CHECK(series[0].von_neumann_entropy_position <= 1e-12);
  CHECK(series[0].shannon_entropy_coin == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("metrics series reproduces frozen references at fifty steps") {
  // Cross-implementation freeze: same dynamics coded independently (python
  // prototype, explicit matrices) produced these values.
  struct Row {
    int n;
    double sigma;
    int support;
    double h_pos;
    double defect;
  };
  const Row rows[] = {
      {1, 22.53568, 40, 3.15542, 0.1651},  {2, 24.10507, 73, 3.07191, 0.0},
      {3, 21.48460, 70, 3.69970, 0.04144}, {4, 22.98260, 67, 3.43792, 0.0},
      {5, 22.95549, 62, 3.22132, 0.0251},  {6, 23.54266, 59, 2.86884, 0.0},
      {7, 23.82447, 57, 2.70852, 0.0239},
  };
  for (const Row& row : rows) {
    const std::vector<MetricsReport> series = metrics_series(WalkConfig::standard(row.n, 50));
    const MetricsReport& last = series.back();
    CHECK(last.std_dev == doctest::Approx(row.sigma).epsilon(1e-5));
    CHECK(last.support_count == row.support);
    CHECK(last.shannon_entropy_position == doctest::Approx(row.h_pos).epsilon(1e-4));
    if (row.defect == 0.0) {
      CHECK(last.symmetry_defect <= 1e-12);
    } else {
      CHECK(last.symmetry_defect == doctest::Approx(row.defect).epsilon(1e-2));
    }
  }
}
