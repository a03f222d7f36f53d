#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "csa/contention_graph.hpp"
#include "csa/degree_distribution.hpp"
#include "csa/metrics.hpp"
#include "csa/traffic.hpp"
#include "helpers.hpp"

using csa::DegreeDistribution;

TEST_CASE("mean degree and rate") {
  CHECK(DegreeDistribution::parse("2:1.0").mean_degree() == doctest::Approx(2.0));
  CHECK(DegreeDistribution::parse("2:0.5,3:0.5").mean_degree() == doctest::Approx(2.5));
  CHECK(DegreeDistribution::parse("1:1.0").mean_degree() == doctest::Approx(1.0));
  CHECK(DegreeDistribution::parse("2:1.0").rate() == doctest::Approx(0.5));
  CHECK(DegreeDistribution::parse("2:0.5,3:0.5").rate() == doctest::Approx(0.4));
  CHECK(DegreeDistribution::parse("4:1.0").rate() == doctest::Approx(0.25));
  CHECK(DegreeDistribution::parse("2:0.5,3:0.28,8:0.22").mean_degree() == doctest::Approx(3.6));
}

TEST_CASE("edge perspective coefficients") {
  auto l1 = DegreeDistribution::parse("2:1.0").edge_perspective();
  CHECK(l1.size() == 1);
  CHECK(l1.at(2) == doctest::Approx(1.0));

  auto l2 = DegreeDistribution::parse("2:0.5,3:0.5").edge_perspective();
  CHECK(l2.at(2) == doctest::Approx(0.4));
  CHECK(l2.at(3) == doctest::Approx(0.6));

  auto l3 = DegreeDistribution::parse("1:1.0").edge_perspective();
  CHECK(l3.at(1) == doctest::Approx(1.0));
}

TEST_CASE("rate * mean degree is 1 and edge coefficients form a distribution") {
  csa::Rng rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    auto dist = testutil::random_distribution(rng, 1, 9);
    CHECK(dist.rate() * dist.mean_degree() == doctest::Approx(1.0).epsilon(1e-12));
    double sum = 0.0;
    for (const auto& [d, l] : dist.edge_perspective()) {
      CHECK(l >= 0.0);
      sum += l;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(DegreeDistribution::parse("2:0.6,3:0.5"), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution::parse("0:1.0"), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution::parse("-2:1.0"), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution::parse("2:1.5"), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution::parse("2:0.5,2:0.5"), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution::parse("junk"), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution::parse("2:0.0"), std::invalid_argument);  // no mass
  CHECK_THROWS_AS(DegreeDistribution(std::map<int, double>{}), std::invalid_argument);
}

TEST_CASE("text round trip") {
  const char* text = "2:0.5,3:0.28,8:0.22";
  auto dist = DegreeDistribution::parse(text);
  CHECK(dist.to_string() == text);
  auto again = DegreeDistribution::parse(dist.to_string());
  CHECK(again.entries() == dist.entries());

  // zero-mass entries are dropped, the rest survive verbatim
  auto sparse = DegreeDistribution(std::map<int, double>{{2, 0.25}, {5, 0.0}, {7, 0.75}});
  CHECK(sparse.to_string() == "2:0.25,7:0.75");
  CHECK(sparse.min_degree() == 2);
  CHECK(sparse.max_degree() == 7);
}

TEST_CASE("degree sampling follows the distribution") {
  auto dist = DegreeDistribution::parse("2:0.5,3:0.28,8:0.22");
  csa::Rng rng(7);
  std::map<int, int> hist;
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++hist[dist.sample(rng)];
  CHECK(hist.size() == 3);
  // 5-sigma bands of the binomial counts
  CHECK(std::abs(hist[2] - 0.50 * n) < 5 * std::sqrt(n * 0.50 * 0.50));
  CHECK(std::abs(hist[3] - 0.28 * n) < 5 * std::sqrt(n * 0.28 * 0.72));
  CHECK(std::abs(hist[8] - 0.22 * n) < 5 * std::sqrt(n * 0.22 * 0.78));
}

TEST_CASE("traffic config loads") {
  using csa::TrafficConfig;
  auto g1 = TrafficConfig(1000, 0.5, 1000, DegreeDistribution::parse("2:1.0"));
  CHECK(g1.logical_load() == doctest::Approx(0.5));
  CHECK(g1.physical_load() == doctest::Approx(1.0));

  auto g2 = TrafficConfig(1000, 1.0, 1000, DegreeDistribution::parse("1:1.0"));
  CHECK(g2.logical_load() == doctest::Approx(1.0));
  CHECK(g2.physical_load() == doctest::Approx(1.0));  // single replica: loads coincide

  auto g3 = TrafficConfig(2000, 0.4, 1000, DegreeDistribution::parse("2:0.5,3:0.5"));
  CHECK(g3.logical_load() == doctest::Approx(0.8));
  CHECK(g3.physical_load() == doctest::Approx(2.0));
}

TEST_CASE("from_load hits the requested load exactly") {
  csa::Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const double g = 0.05 + rng.next_double() * 1.5;
    const auto m = static_cast<std::uint32_t>(50 + rng.next_below(2000));
    auto cfg = csa::TrafficConfig::from_load(g, m, testutil::random_distribution(rng, 1, 4));
    CHECK(cfg.logical_load() == doctest::Approx(g).epsilon(1e-12));
    CHECK(cfg.activation_probability <= 1.0);
  }
  CHECK_THROWS_AS(csa::TrafficConfig::from_load(0.0, 100, DegreeDistribution::parse("2:1.0")),
                  std::invalid_argument);
}

TEST_CASE("contention graph is the exact transpose of the user lists") {
  csa::Rng rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    auto graph = testutil::random_graph(rng);
    std::size_t edges = 0;
    std::vector<std::vector<std::uint32_t>> expect(graph.num_slots());
    for (std::size_t u = 0; u < graph.num_users(); ++u) {
      for (std::uint32_t s : graph.user(u).replica_slots) {
        expect[s].push_back(static_cast<std::uint32_t>(u));
        ++edges;
      }
    }
    CHECK(graph.num_edges() == edges);
    for (std::uint32_t s = 0; s < graph.num_slots(); ++s)
      CHECK(graph.slot_users(s) == expect[s]);
  }
}

TEST_CASE("contention graph validation") {
  using csa::ContentionGraph;
  using csa::UserRecord;
  CHECK_THROWS_AS(ContentionGraph(4, {UserRecord{0, {1, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(ContentionGraph(4, {UserRecord{0, {4}}}), std::out_of_range);
  ContentionGraph empty(4, {});
  CHECK(empty.num_users() == 0);
  CHECK(empty.num_edges() == 0);
}

TEST_CASE("metrics from a trace") {
  csa::DecodeTrace t;
  t.resolved = {1, 0, 1, 1};
  t.resolved_count = 3;
  t.recovery_slot = {5, -1, 7, -1};
  auto m = csa::Metrics::from_trace(t, 4, 4);
  CHECK(m.throughput == doctest::Approx(0.75));
  CHECK(m.plr == doctest::Approx(0.25));
  CHECK(m.mean_delay == doctest::Approx(6.0));  // over the tracked users only

  csa::DecodeTrace none;
  auto m0 = csa::Metrics::from_trace(none, 10, 0);
  CHECK(m0.throughput == 0.0);
  CHECK(m0.plr == 0.0);  // no active users means nothing was lost
  CHECK(m0.mean_delay == 0.0);
}
