#pragma once

// Diophantine carpets: side-sharing lattice triangulations and the chromatic
// number of their dual.
//
// A carpet is a list of triangles with lattice vertices, integral side
// lengths, pairwise disjoint interiors, and contacts restricted to a shared
// vertex or a full shared side.  Validation reports violations as data.  All
// geometry is exact: pair contact is classified by clipping one triangle
// against the other's half-planes with rational arithmetic, so the closed
// intersection is computed literally (empty, one point, a segment, or a
// positive-area polygon) and never guessed from floating point.
//
// The dual graph has one node per triangle and an edge per full shared side.
// Each side hosts at most two triangles and each triangle has three sides,
// so the maximum degree is 3; a dual K4 is geometrically impossible.  Both
// facts are asserted, not assumed.  The chromatic number of the dual is 1
// exactly for edgeless duals, 2 exactly for bipartite ones (breadth-first
// bipartition), and 3 otherwise (Brooks: connected, max degree 3, not K4),
// where a backtracking search supplies the 3-coloring and the breadth-first
// tree supplies an odd-cycle witness proving 2 colors cannot suffice.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"
#include "dioph/point.hpp"
#include "dioph/rational.hpp"

namespace dioph {

// Plain vertex triple; carpet invariants are checked by validate_carpet,
// never by construction, so invalid input can be described instead of thrown.
struct Triangle2 {
  LatticePoint2 p, q, r;

  friend bool operator==(const Triangle2&, const Triangle2&) = default;
};

enum class ViolationKind {
  kNonIntegralSide,
  kDegenerateTriangle,
  kInteriorOverlap,
  kPartialEdgeContact,
};

inline const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::kNonIntegralSide: return "non_integral_side";
    case ViolationKind::kDegenerateTriangle: return "degenerate_triangle";
    case ViolationKind::kInteriorOverlap: return "interior_overlap";
    case ViolationKind::kPartialEdgeContact: return "partial_edge_contact";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::size_t first;   // triangle index
  std::size_t second;  // == first for single-triangle violations
  std::string detail;
};

class Carpet;
struct CarpetValidation;
inline CarpetValidation validate_carpet(const std::vector<Triangle2>& input);

// Only validate_carpet constructs one, so holding a Carpet certifies the
// invariants: integral sides, non-degenerate triangles, disjoint interiors,
// contacts only at shared vertices or full shared sides.
class Carpet {
 public:
  const std::vector<Triangle2>& triangles() const { return tris_; }
  std::size_t size() const { return tris_.size(); }

 private:
  friend CarpetValidation validate_carpet(const std::vector<Triangle2>&);
  explicit Carpet(std::vector<Triangle2> tris) : tris_(std::move(tris)) {}

  std::vector<Triangle2> tris_;
};

struct CarpetValidation {
  std::optional<Carpet> carpet;       // present iff violations is empty
  std::vector<Violation> violations;  // every violation found, in index order
};

namespace detail {

struct RatPoint {
  Rational x, y;

  friend bool operator==(const RatPoint&, const RatPoint&) = default;
  friend bool operator<(const RatPoint& a, const RatPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline RatPoint to_rat(const LatticePoint2& p) { return {Rational(p.x), Rational(p.y)}; }

inline Rational orient_rat(const RatPoint& a, const RatPoint& b, const RatPoint& p) {
  return Rational((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x));
}

// one Sutherland-Hodgman step: keep the closed side orient(a,b,.) >= 0
inline std::vector<RatPoint> clip_half_plane(const std::vector<RatPoint>& poly,
                                             const RatPoint& a, const RatPoint& b) {
  std::vector<RatPoint> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RatPoint& s = poly[i];
    const RatPoint& e = poly[(i + 1) % n];
    const Rational os = orient_rat(a, b, s), oe = orient_rat(a, b, e);
    const int ss = sgn(os), se = sgn(oe);
    if (ss >= 0) out.push_back(s);
    if ((ss > 0 && se < 0) || (ss < 0 && se > 0)) {
      const Rational t = os / (os - oe);
      out.push_back({Rational(s.x + t * (e.x - s.x)), Rational(s.y + t * (e.y - s.y))});
    }
  }
  return out;
}

// counterclockwise vertex order; requires a non-degenerate triangle
inline std::array<LatticePoint2, 3> ccw_vertices(const Triangle2& t) {
  if (sgn(cross2(t.p, t.q, t.r)) > 0) return {t.p, t.q, t.r};
  return {t.p, t.r, t.q};
}

// the closed intersection of two non-degenerate lattice triangles, as the
// (possibly degenerate) clipped polygon
inline std::vector<RatPoint> triangle_intersection(const Triangle2& t, const Triangle2& u) {
  auto tv = ccw_vertices(t);
  auto uv = ccw_vertices(u);
  std::vector<RatPoint> poly{to_rat(uv[0]), to_rat(uv[1]), to_rat(uv[2])};
  for (int i = 0; i < 3 && !poly.empty(); ++i)
    poly = clip_half_plane(poly, to_rat(tv[i]), to_rat(tv[(i + 1) % 3]));
  return poly;
}

// doubled signed shoelace area of the clipped polygon
inline Rational doubled_area_rat(const std::vector<RatPoint>& poly) {
  Rational sum = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RatPoint& a = poly[i];
    const RatPoint& b = poly[(i + 1) % n];
    sum += a.x * b.y - a.y * b.x;
  }
  return sum;
}

inline bool is_vertex_of(const RatPoint& p, const Triangle2& t) {
  return p == to_rat(t.p) || p == to_rat(t.q) || p == to_rat(t.r);
}

inline bool is_side_of(const RatPoint& a, const RatPoint& b, const Triangle2& t) {
  const std::array<RatPoint, 3> v{to_rat(t.p), to_rat(t.q), to_rat(t.r)};
  for (int i = 0; i < 3; ++i) {
    const RatPoint &s = v[i], &e = v[(i + 1) % 3];
    if ((a == s && b == e) || (a == e && b == s)) return true;
  }
  return false;
}

inline std::string point_str(const LatticePoint2& p) {
  return "(" + p.x.get_str() + "," + p.y.get_str() + ")";
}

}  // namespace detail

// Checks every invariant and reports every violation found; a Carpet is
// returned exactly when there are none.  Pairs are classified only when both
// members are non-degenerate (overlap is meaningless against a zero-area
// triangle); non-integral sides do not stop the geometric checks.
inline CarpetValidation validate_carpet(const std::vector<Triangle2>& input) {
  CarpetValidation result;
  std::vector<bool> degenerate(input.size(), false);

  for (std::size_t i = 0; i < input.size(); ++i) {
    const Triangle2& t = input[i];
    if (sgn(cross2(t.p, t.q, t.r)) == 0) {
      degenerate[i] = true;
      result.violations.push_back({ViolationKind::kDegenerateTriangle, i, i,
                                   "triangle " + std::to_string(i) + " has zero area"});
    }
    const std::array<std::pair<const LatticePoint2*, const LatticePoint2*>, 3> sides{
        {{&t.p, &t.q}, {&t.q, &t.r}, {&t.r, &t.p}}};
    for (const auto& [a, b] : sides) {
      if (!integral_distance2(*a, *b))
        result.violations.push_back(
            {ViolationKind::kNonIntegralSide, i, i,
             "triangle " + std::to_string(i) + " side " + detail::point_str(*a) + "-" +
                 detail::point_str(*b) + " has non-integral length"});
    }
  }

  for (std::size_t i = 0; i < input.size(); ++i) {
    if (degenerate[i]) continue;
    for (std::size_t j = i + 1; j < input.size(); ++j) {
      if (degenerate[j]) continue;
      auto poly = detail::triangle_intersection(input[i], input[j]);
      const std::string pair_name =
          "triangles " + std::to_string(i) + " and " + std::to_string(j);
      if (sgn(detail::doubled_area_rat(poly)) != 0) {
        result.violations.push_back({ViolationKind::kInteriorOverlap, i, j,
                                     pair_name + " overlap with positive area"});
        continue;
      }
      std::vector<detail::RatPoint> pts(poly);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      if (pts.empty()) continue;
      if (pts.size() == 1) {
        if (!detail::is_vertex_of(pts[0], input[i]) || !detail::is_vertex_of(pts[0], input[j]))
          result.violations.push_back(
              {ViolationKind::kPartialEdgeContact, i, j,
               pair_name + " touch at a point that is not a shared vertex"});
        continue;
      }
      // area zero with two or more distinct points: a collinear segment
      // whose extremes are the lexicographic ends
      const detail::RatPoint &a = pts.front(), &b = pts.back();
      if (!detail::is_side_of(a, b, input[i]) || !detail::is_side_of(a, b, input[j]))
        result.violations.push_back({ViolationKind::kPartialEdgeContact, i, j,
                                     pair_name + " meet along a partial edge segment"});
    }
  }

  if (result.violations.empty()) result.carpet = Carpet(input);
  return result;
}

// One node per triangle; an undirected edge per full shared side.
struct DualGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (low, high), sorted
  std::vector<std::vector<std::size_t>> adjacency;         // sorted neighbor lists
};

inline DualGraph dual_graph(const Carpet& c) {
  using Side = std::pair<LatticePoint2, LatticePoint2>;
  std::map<Side, std::vector<std::size_t>> owners;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Triangle2& t = c.triangles()[i];
    const std::array<Side, 3> sides{
        {{std::min(t.p, t.q), std::max(t.p, t.q)},
         {std::min(t.q, t.r), std::max(t.q, t.r)},
         {std::min(t.r, t.p), std::max(t.r, t.p)}}};
    for (const Side& s : sides) owners[s].push_back(i);
  }

  DualGraph g;
  g.node_count = c.size();
  g.adjacency.resize(c.size());
  for (const auto& [side, tris] : owners) {
    if (tris.size() > 2)
      throw InternalError("three triangles with disjoint interiors share one side");
    if (tris.size() == 2) {
      g.edges.emplace_back(tris[0], tris[1]);
      g.adjacency[tris[0]].push_back(tris[1]);
      g.adjacency[tris[1]].push_back(tris[0]);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    if (adj.size() > 3)
      throw InternalError("a triangle acquired more side-sharing neighbors than sides");
  }

  // a dual K4 would be four triangles pairwise sharing full sides
  auto adjacent = [&](std::size_t a, std::size_t b) {
    return std::binary_search(g.adjacency[a].begin(), g.adjacency[a].end(), b);
  };
  for (std::size_t v = 0; v < g.node_count; ++v) {
    const auto& nb = g.adjacency[v];
    if (nb.size() == 3 && adjacent(nb[0], nb[1]) && adjacent(nb[0], nb[2]) &&
        adjacent(nb[1], nb[2]))
      throw InternalError("four triangles pairwise share sides in the plane");
  }
  return g;
}

// k with a proper coloring of the dual and its certificate: for k = 2 the
// assignment itself is the bipartition; for k = 3 odd_cycle lists a dual
// cycle of odd length (consecutive entries adjacent, last adjacent to first).
struct Coloring {
  int k = 1;
  std::vector<int> assignment;         // triangle index -> color in [1, k]
  std::vector<std::size_t> odd_cycle;  // nonempty exactly when k == 3
};

namespace detail {

// breadth-first 2-coloring; on failure returns the first conflict's odd
// cycle through the search tree
struct BipartiteResult {
  bool ok = true;
  std::vector<std::size_t> odd_cycle;
};

inline BipartiteResult two_color_component(const DualGraph& g,
                                           const std::vector<std::size_t>& comp,
                                           std::vector<int>& color) {
  std::vector<std::size_t> parent(g.node_count, SIZE_MAX);
  std::vector<long> depth(g.node_count, -1);
  std::vector<std::size_t> queue{comp[0]};
  color[comp[0]] = 1;
  depth[comp[0]] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t v = queue[head];
    for (std::size_t w : g.adjacency[v]) {
      if (color[w] == 0) {
        color[w] = 3 - color[v];
        parent[w] = v;
        depth[w] = depth[v] + 1;
        queue.push_back(w);
      } else if (color[w] == color[v]) {
        // walk both endpoints to their lowest common ancestor: the tree
        // paths plus the conflict edge close a cycle of odd length
        std::vector<std::size_t> up_v{v}, up_w{w};
        std::size_t a = v, b = w;
        while (depth[a] > depth[b]) up_v.push_back(a = parent[a]);
        while (depth[b] > depth[a]) up_w.push_back(b = parent[b]);
        while (a != b) {
          up_v.push_back(a = parent[a]);
          up_w.push_back(b = parent[b]);
        }
        // both paths end at the ancestor; splice them into v .. lca .. w,
        // whose node count is odd because depth[v] and depth[w] share parity
        std::vector<std::size_t> cycle(up_v);
        for (std::size_t idx = up_w.size() - 1; idx-- > 0;) cycle.push_back(up_w[idx]);
        BipartiteResult r;
        r.ok = false;
        r.odd_cycle = std::move(cycle);
        return r;
      }
    }
  }
  return {};
}

// highest-degree-first backtracking; guaranteed to succeed on these duals
inline bool three_color_component(const DualGraph& g, const std::vector<std::size_t>& comp,
                                  std::vector<int>& color) {
  std::vector<std::size_t> order(comp);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (g.adjacency[a].size() != g.adjacency[b].size())
      return g.adjacency[a].size() > g.adjacency[b].size();
    return a < b;
  });
  for (std::size_t v : order) color[v] = 0;
  std::size_t at = 0;
  while (at < order.size()) {
    const std::size_t v = order[at];
    int next = color[v] + 1;
    bool placed = false;
    for (; next <= 3 && !placed; ++next) {
      bool clash = false;
      for (std::size_t w : g.adjacency[v])
        if (color[w] == next) {
          clash = true;
          break;
        }
      if (!clash) {
        color[v] = next;
        placed = true;
      }
    }
    if (placed) {
      ++at;
    } else {
      color[v] = 0;
      if (at == 0) return false;
      --at;
    }
  }
  return true;
}

}  // namespace detail

inline Coloring chromatic_number(const Carpet& c) {
  const DualGraph g = dual_graph(c);
  Coloring out;
  out.assignment.assign(g.node_count, 0);

  std::vector<bool> seen(g.node_count, false);
  for (std::size_t start = 0; start < g.node_count; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp{start};
    seen[start] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (std::size_t w : g.adjacency[comp[head]])
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());

    if (comp.size() == 1) {
      out.assignment[comp[0]] = 1;
      continue;
    }
    auto two = detail::two_color_component(g, comp, out.assignment);
    if (two.ok) {
      out.k = std::max(out.k, 2);
      continue;
    }
    if (!detail::three_color_component(g, comp, out.assignment))
      throw InternalError("a max-degree-3 dual without K4 resisted three colors");
    if (out.k < 3) {
      out.k = 3;
      out.odd_cycle = std::move(two.odd_cycle);
    }
  }

  for (const auto& [a, b] : g.edges)
    if (out.assignment[a] == out.assignment[b])
      throw InternalError("assembled coloring is not proper");
  return out;
}

}  // namespace dioph
