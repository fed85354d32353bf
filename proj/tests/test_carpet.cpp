// Carpet validation, side-sharing dual graphs, and chromatic classification.
#include <catch2/catch_amalgamated.hpp>

#include <dioph/carpet.hpp>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "support/carpet_gen.hpp"

using namespace dioph;
using testgen::brute_chromatic;
using testgen::cp;
using testgen::is_odd_cycle;
using testgen::proper_coloring;

namespace {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<Triangle2> pair_345() {
  return {{cp(0, 0), cp(3, 0), cp(0, 4)}, {cp(3, 0), cp(0, 4), cp(3, 4)}};
}

DualGraph dual_of(const std::vector<Triangle2>& tris) {
  const auto v = validate_carpet(tris);
  REQUIRE(v.carpet.has_value());
  return dual_graph(*v.carpet);
}

Coloring color_of(const std::vector<Triangle2>& tris) {
  const auto v = validate_carpet(tris);
  REQUIRE(v.carpet.has_value());
  return chromatic_number(*v.carpet);
}

}  // namespace

TEST_CASE("carpet validation accepts lawful contact") {
  // Two 3-4-5 halves of a grid rectangle sharing their full hypotenuse.
  const auto pair = validate_carpet(pair_345());
  REQUIRE(pair.violations.empty());
  REQUIRE(pair.carpet.has_value());
  REQUIRE(pair.carpet->size() == 2);
  REQUIRE(pair.carpet->triangles() == pair_345());

  // Contact at one point is lawful exactly when it is a vertex of both.
  std::vector<Triangle2> kiss;
  testgen::append_kiss_pair(kiss, 0, 0);
  REQUIRE(validate_carpet(kiss).violations.empty());

  // Disjoint triangles and the empty carpet are trivially valid.
  REQUIRE(validate_carpet({{cp(0, 0), cp(3, 0), cp(0, 4)},
                           {cp(100, 0), cp(103, 0), cp(100, 4)}})
              .violations.empty());
  const auto empty = validate_carpet({});
  REQUIRE(empty.carpet.has_value());
  REQUIRE(empty.carpet->size() == 0);
}

TEST_CASE("carpet validation rejects each defect kind") {
  // A unit right triangle: legs 1 and 1 are fine, the hypotenuse is not.
  const auto unit = validate_carpet({{cp(0, 0), cp(1, 0), cp(0, 1)}});
  REQUIRE_FALSE(unit.carpet.has_value());
  REQUIRE(unit.violations.size() == 1);
  REQUIRE(unit.violations[0].kind == ViolationKind::kNonIntegralSide);
  REQUIRE(unit.violations[0].first == 0);
  REQUIRE(unit.violations[0].second == 0);
  REQUIRE(unit.violations[0].detail ==
          "triangle 0 side (1,0)-(0,1) has non-integral length");
  REQUIRE(std::string(violation_name(unit.violations[0].kind)) == "non_integral_side");

  // Collinear vertices.
  const auto flat = validate_carpet({{cp(0, 0), cp(2, 0), cp(4, 0)}});
  REQUIRE(flat.violations.size() == 1);
  REQUIRE(flat.violations[0].kind == ViolationKind::kDegenerateTriangle);
  REQUIRE(flat.violations[0].detail == "triangle 0 has zero area");

  // Identical copies overlap with positive area, as does strict containment.
  const auto copies = validate_carpet(
      {{cp(0, 0), cp(3, 0), cp(0, 4)}, {cp(0, 0), cp(3, 0), cp(0, 4)}});
  REQUIRE(copies.violations.size() == 1);
  REQUIRE(copies.violations[0].kind == ViolationKind::kInteriorOverlap);
  REQUIRE(copies.violations[0].first == 0);
  REQUIRE(copies.violations[0].second == 1);
  const auto nested = validate_carpet(
      {{cp(0, 0), cp(40, 0), cp(0, 30)}, {cp(5, 3), cp(10, 3), cp(5, 15)}});
  REQUIRE(nested.violations.size() == 1);
  REQUIRE(nested.violations[0].kind == ViolationKind::kInteriorOverlap);

  // A vertex resting on the interior of another triangle's side.
  const auto tjoint = validate_carpet(
      {{cp(0, 0), cp(8, 0), cp(0, 6)}, {cp(4, 0), cp(8, -3), cp(0, -3)}});
  REQUIRE(tjoint.violations.size() == 1);
  REQUIRE(tjoint.violations[0].kind == ViolationKind::kPartialEdgeContact);
  REQUIRE(tjoint.violations[0].detail ==
          "triangles 0 and 1 touch at a point that is not a shared vertex");

  // Collinear sides overlapping in a segment that is a full side of neither,
  // or of only one of the two.
  const auto partial = validate_carpet(
      {{cp(0, 0), cp(8, 0), cp(0, 6)}, {cp(4, 0), cp(12, 0), cp(4, -6)}});
  REQUIRE(partial.violations.size() == 1);
  REQUIRE(partial.violations[0].kind == ViolationKind::kPartialEdgeContact);
  REQUIRE(partial.violations[0].detail ==
          "triangles 0 and 1 meet along a partial edge segment");
  const auto hanging = validate_carpet(
      {{cp(0, 0), cp(30, 0), cp(15, 20)}, {cp(10, 0), cp(20, 0), cp(15, -12)}});
  REQUIRE(hanging.violations.size() == 1);
  REQUIRE(hanging.violations[0].kind == ViolationKind::kPartialEdgeContact);
  REQUIRE(hanging.violations[0].detail ==
          "triangles 0 and 1 meet along a partial edge segment");
}

TEST_CASE("all defects are reported in index order") {
  // One of each kind, spread far apart so only the intended pairs interact.
  const auto v = validate_carpet({{cp(0, 0), cp(1, 0), cp(0, 1)},
                                  {cp(100, 0), cp(102, 0), cp(104, 0)},
                                  {cp(200, 0), cp(203, 0), cp(200, 4)},
                                  {cp(200, 0), cp(203, 0), cp(200, 4)}});
  REQUIRE_FALSE(v.carpet.has_value());
  REQUIRE(v.violations.size() == 3);
  REQUIRE(v.violations[0].kind == ViolationKind::kNonIntegralSide);
  REQUIRE(v.violations[0].first == 0);
  REQUIRE(v.violations[1].kind == ViolationKind::kDegenerateTriangle);
  REQUIRE(v.violations[1].first == 1);
  REQUIRE(v.violations[2].kind == ViolationKind::kInteriorOverlap);
  REQUIRE(v.violations[2].first == 2);
  REQUIRE(v.violations[2].second == 3);
}

TEST_CASE("the dual graph records exactly the full shared sides") {
  const auto pair = dual_of(pair_345());
  REQUIRE(pair.node_count == 2);
  REQUIRE(pair.edges == Edges{{0, 1}});
  REQUIRE(pair.adjacency == std::vector<std::vector<std::size_t>>{{1}, {0}});

  std::vector<Triangle2> kiss;
  testgen::append_kiss_pair(kiss, 0, 0);
  REQUIRE(dual_of(kiss).edges.empty());

  std::vector<Triangle2> strip;
  testgen::append_strip(strip, 3, 0, 0);
  REQUIRE(dual_of(strip).edges == Edges{{0, 1}, {0, 3}, {2, 3}, {2, 5}, {4, 5}});

  std::vector<Triangle2> fan;
  testgen::append_fan4(fan, 0, 0);
  REQUIRE(dual_of(fan).edges == Edges{{0, 1}, {0, 3}, {1, 2}, {2, 3}});

  std::vector<Triangle2> gadget;
  testgen::append_odd_gadget(gadget, 0, 0);
  REQUIRE(dual_of(gadget).edges == Edges{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("coloring certificates on the canonical shapes") {
  const auto empty = color_of({});
  REQUIRE(empty.k == 1);
  REQUIRE(empty.assignment.empty());
  REQUIRE(empty.odd_cycle.empty());

  const auto single = color_of({{cp(0, 0), cp(3, 0), cp(0, 4)}});
  REQUIRE(single.k == 1);
  REQUIRE(single.assignment == std::vector<int>{1});

  std::vector<Triangle2> kiss;
  testgen::append_kiss_pair(kiss, 0, 0);
  REQUIRE(color_of(kiss).k == 1);

  const auto pair = color_of(pair_345());
  REQUIRE(pair.k == 2);
  REQUIRE(pair.assignment == std::vector<int>{1, 2});
  REQUIRE(pair.odd_cycle.empty());

  std::vector<Triangle2> strip;
  testgen::append_strip(strip, 3, 0, 0);
  REQUIRE(color_of(strip).assignment == std::vector<int>{1, 2, 1, 2, 1, 2});

  std::vector<Triangle2> fan;
  testgen::append_fan4(fan, 0, 0);
  const auto fc = color_of(fan);
  REQUIRE(fc.k == 2);
  REQUIRE(fc.assignment == std::vector<int>{1, 2, 1, 2});

  std::vector<Triangle2> gadget;
  testgen::append_odd_gadget(gadget, 0, 0);
  const auto gc = color_of(gadget);
  REQUIRE(gc.k == 3);
  REQUIRE(gc.assignment == std::vector<int>{1, 2, 3});
  REQUIRE(gc.odd_cycle == std::vector<std::size_t>{1, 0, 2});
  REQUIRE(is_odd_cycle(dual_of(gadget), gc.odd_cycle));
}

TEST_CASE("a union of components takes the maximum over components") {
  std::vector<Triangle2> tris;
  testgen::append_odd_gadget(tris, 0, 0);
  testgen::append_strip(tris, 2, 1000, 0);
  testgen::append_single(tris, 2000, 0);
  const auto v = validate_carpet(tris);
  REQUIRE(v.carpet.has_value());
  const auto g = dual_graph(*v.carpet);
  const auto col = chromatic_number(*v.carpet);
  REQUIRE(col.k == 3);
  REQUIRE(proper_coloring(g, col));
  REQUIRE(is_odd_cycle(g, col.odd_cycle));
}

TEST_CASE("generated carpets match an exhaustive coloring oracle") {
  const auto corpus = testgen::make_corpus(200, 20240816u);
  int seen[4] = {0, 0, 0, 0};
  for (const auto& inst : corpus) {
    REQUIRE(inst.triangles.size() >= 1);
    REQUIRE(inst.triangles.size() <= 12);
    const auto v = validate_carpet(inst.triangles);
    REQUIRE(v.violations.empty());
    REQUIRE(v.carpet.has_value());

    const auto g = dual_graph(*v.carpet);
    for (const auto& n : g.adjacency) REQUIRE(n.size() <= 3);

    const auto col = chromatic_number(*v.carpet);
    REQUIRE(col.k == inst.expected_k);
    REQUIRE(col.k == brute_chromatic(g));
    REQUIRE(proper_coloring(g, col));
    REQUIRE((col.k == 3) == !col.odd_cycle.empty());
    if (col.k == 3) REQUIRE(is_odd_cycle(g, col.odd_cycle));
    ++seen[col.k];
  }
  // The corpus exercises all three chromatic classes.
  REQUIRE(seen[1] > 0);
  REQUIRE(seen[2] > 0);
  REQUIRE(seen[3] > 0);
}
