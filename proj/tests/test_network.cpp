#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <doctest.h>

#include "railtac/network.hpp"
#include "test_helpers.hpp"

using namespace railtac;
using test::make_line_network;

TEST_CASE("capacity follows the daily residual schedule") {
  const Network net = make_line_network(test::LineSpec{5.3, 530.0, 1, "residual", 53.0});
  const Arc& track = *net.find_arc("track");
  CHECK(net.capacity_at(track, 12.0) == doctest::Approx(0.9));   // passenger peak
  CHECK(net.capacity_at(track, 26.0) == doctest::Approx(6.0));   // night, next day
  CHECK(net.capacity_at(track, 8.0) == doctest::Approx(1.8));    // shoulder
  CHECK_THROWS_AS(net.capacity_at(track, -1.0), std::invalid_argument);
  CHECK(std::isinf(net.capacity_at(*net.find_arc("c_in"), 3.0)));
}

TEST_CASE("capacity is 24h periodic and bounded by the base") {
  const Network net = make_line_network(test::LineSpec{5.3, 530.0, 2, "residual", 53.0});
  const Arc& track = *net.find_arc("track");
  for (double t = 0.0; t < 24.0; t += 0.5) {
    const double now = net.capacity_at(track, t);
    CHECK(net.capacity_at(track, t + 24.0) == now);
    CHECK(net.capacity_at(track, t + 48.0) == now);
    CHECK(now > 0.0);
    CHECK(now <= track.base_capacity());
  }
}

TEST_CASE("capacity integral spans band and day boundaries") {
  const Network net = make_line_network(test::LineSpec{5.3, 530.0, 1, "residual", 53.0});
  const Arc& track = *net.find_arc("track");
  // One full day: 7*6 + 3*1.8 + 8*0.9 + 6*1.8
  const double day = 7.0 * 6.0 + 3.0 * 1.8 + 8.0 * 0.9 + 6.0 * 1.8;
  CHECK(net.capacity_integral(track, 0.0, 24.0) == doctest::Approx(day));
  CHECK(net.capacity_integral(track, 24.0, 72.0) == doctest::Approx(2.0 * day));
  CHECK(net.capacity_integral(track, 9.0, 11.0) == doctest::Approx(1.8 + 0.9));
}

TEST_CASE("well-formed network validates cleanly") {
  const Network net = make_line_network();
  CHECK(validate_network(net).empty());
}

TEST_CASE("violations name the offending entity") {
  Network net = make_line_network();
  SUBCASE("connector with positive run time") {
    for (Arc& arc : net.arcs) {
      if (arc.id == "c_in") arc.run_time_h = 0.5;
    }
    net.finalize();
    const auto violations = validate_network(net);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].entity == "arc");
    CHECK(violations[0].id == "c_in");
  }
  SUBCASE("path that skips a node") {
    net.nodes.push_back(Node{"n3", NodeKind::regular, "FR", ""});
    net.arcs.push_back(Arc{"track2", "n3", "n2", ArcKind::regular, 50.0, 0.5, 1, ""});
    net.paths[0].arcs = {"c_in", "track2", "c_out"};  // c_in ends at n1, track2 starts at n3
    net.finalize();
    const auto violations = validate_network(net);
    REQUIRE(!violations.empty());
    CHECK(violations[0].entity == "path");
    CHECK(violations[0].message.find("contiguous") != std::string::npos);
  }
  SUBCASE("fraction outside (0,1]") {
    net.profiles.push_back(CapacityProfile{"bad", {{0.0, 24.0, 1.5}}});
    net.finalize();
    const auto violations = validate_network(net);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].entity == "profile");
  }
}

namespace {

Network two_route_network(double first_km, double second_km) {
  Network net;
  net.nodes = {Node{"o", NodeKind::centroid, "", ""},
               Node{"n1", NodeKind::regular, "", ""},
               Node{"n2", NodeKind::regular, "", ""},
               Node{"d", NodeKind::centroid, "", ""}};
  net.arcs = {Arc{"c_in", "o", "n1", ArcKind::connector, 0.0, 0.0, 1, ""},
              Arc{"route_a", "n1", "n2", ArcKind::regular, first_km, 1.0, 1, ""},
              Arc{"route_b", "n1", "n2", ArcKind::regular, second_km, 1.0, 1, ""},
              Arc{"c_out", "n2", "d", ArcKind::connector, 0.0, 0.0, 1, ""}};
  net.od_pairs = {OdRef{"w1", "o", "d"}};
  net.finalize();
  return net;
}

// Every simple route between the centroids, by arc-index sequence.
void enumerate_routes(const Network& net, const std::string& node,
                      const std::string& dest, std::vector<std::size_t>& current,
                      std::set<std::string>& visited,
                      std::vector<std::vector<std::size_t>>& out) {
  if (node == dest) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    const Arc& arc = net.arcs[i];
    if (arc.from != node || visited.count(arc.to)) continue;
    visited.insert(arc.to);
    current.push_back(i);
    enumerate_routes(net, arc.to, dest, current, visited, out);
    current.pop_back();
    visited.erase(arc.to);
  }
}

double route_cost(const Network& net, const std::vector<std::size_t>& route) {
  double cost = 0.0;
  for (std::size_t i : route) {
    if (net.arcs[i].kind == ArcKind::regular) cost += net.arcs[i].length_km;
  }
  return cost;
}

bool id_seq_less(const Network& net, const std::vector<std::size_t>& a,
                 const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&](std::size_t x, std::size_t y) { return net.arcs[x].id < net.arcs[y].id; });
}

}  // namespace

TEST_CASE("min_cost_path picks the shorter parallel route") {
  const Network net = two_route_network(100.0, 120.0);
  const Path path = min_cost_path(net, net.od_pairs[0]);
  CHECK(path.arcs == std::vector<std::string>{"c_in", "route_a", "c_out"});
  CHECK(path.length_km == doctest::Approx(100.0));
}

TEST_CASE("min_cost_path returns the only route when unique") {
  const Network net = make_line_network();
  const Path path = min_cost_path(net, net.od_pairs[0]);
  CHECK(path.arcs == std::vector<std::string>{"c_in", "track", "c_out"});
}

TEST_CASE("equal-cost routes break ties lexicographically") {
  const Network net = two_route_network(100.0, 100.0);
  const Path path = min_cost_path(net, net.od_pairs[0]);
  CHECK(path.arcs[1] == "route_a");
}

TEST_CASE("disconnected OD throws") {
  Network net = make_line_network();
  net.arcs.erase(net.arcs.begin() + 1);  // drop the track
  net.paths.clear();
  net.finalize();
  CHECK_THROWS_AS(min_cost_path(net, net.od_pairs[0]), DisconnectedOd);
}

TEST_CASE("min_cost_path matches exhaustive enumeration on random graphs") {
  std::mt19937 rng(20240601);
  for (int round = 0; round < 40; ++round) {
    Network net;
    const int regulars = std::uniform_int_distribution<int>(3, 6)(rng);
    for (int i = 0; i < regulars; ++i) {
      net.nodes.push_back(Node{"n" + std::to_string(i), NodeKind::regular, "", ""});
    }
    net.nodes.push_back(Node{"o", NodeKind::centroid, "", ""});
    net.nodes.push_back(Node{"d", NodeKind::centroid, "", ""});
    net.arcs.push_back(Arc{"c_in", "o", "n0", ArcKind::connector, 0.0, 0.0, 1, ""});
    net.arcs.push_back(Arc{"c_out", "n" + std::to_string(regulars - 1), "d",
                           ArcKind::connector, 0.0, 0.0, 1, ""});
    const int arcs = std::uniform_int_distribution<int>(4, 10)(rng);
    for (int a = 0; a < arcs; ++a) {
      const int from = std::uniform_int_distribution<int>(0, regulars - 1)(rng);
      int to = std::uniform_int_distribution<int>(0, regulars - 1)(rng);
      if (to == from) to = (to + 1) % regulars;
      // multiples of 10 keep cost ties exact
      const double km = 10.0 * std::uniform_int_distribution<int>(1, 8)(rng);
      net.arcs.push_back(Arc{"a" + std::to_string(a), "n" + std::to_string(from),
                             "n" + std::to_string(to), ArcKind::regular, km, 1.0, 1, ""});
    }
    net.od_pairs = {OdRef{"w", "o", "d"}};
    net.finalize();

    std::vector<std::vector<std::size_t>> routes;
    std::vector<std::size_t> current;
    std::set<std::string> visited{"o"};
    enumerate_routes(net, "o", "d", current, visited, routes);

    if (routes.empty()) {
      CHECK_THROWS_AS(min_cost_path(net, net.od_pairs[0]), DisconnectedOd);
      continue;
    }
    const auto best = *std::min_element(
        routes.begin(), routes.end(), [&](const auto& a, const auto& b) {
          const double ca = route_cost(net, a);
          const double cb = route_cost(net, b);
          if (ca != cb) return ca < cb;
          return id_seq_less(net, a, b);
        });
    const Path path = min_cost_path(net, net.od_pairs[0]);
    std::vector<std::string> expected;
    for (std::size_t i : best) expected.push_back(net.arcs[i].id);
    CHECK(path.arcs == expected);
    CHECK(path.length_km == doctest::Approx(route_cost(net, best)));
  }
}
