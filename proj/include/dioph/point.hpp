#pragma once

#include <compare>
#include <optional>

#include "dioph/bigint.hpp"

namespace dioph {

struct LatticePoint2 {
  BigInt x, y;

  friend bool operator==(const LatticePoint2& a, const LatticePoint2& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator<(const LatticePoint2& a, const LatticePoint2& b) {
    int cx = cmp(a.x, b.x);
    if (cx != 0) return cx < 0;
    return cmp(a.y, b.y) < 0;
  }
};

struct LatticePoint3 {
  BigInt x, y, z;

  friend bool operator==(const LatticePoint3& a, const LatticePoint3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator<(const LatticePoint3& a, const LatticePoint3& b) {
    int c = cmp(a.x, b.x);
    if (c != 0) return c < 0;
    c = cmp(a.y, b.y);
    if (c != 0) return c < 0;
    return cmp(a.z, b.z) < 0;
  }
};

inline BigInt sqdist2(const LatticePoint2& p, const LatticePoint2& q) {
  BigInt dx = p.x - q.x, dy = p.y - q.y;
  return dx * dx + dy * dy;
}

inline BigInt sqdist3(const LatticePoint3& p, const LatticePoint3& q) {
  BigInt dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
  return dx * dx + dy * dy + dz * dz;
}

// distance if it is integral, absent otherwise
inline std::optional<BigInt> integral_distance2(const LatticePoint2& p, const LatticePoint2& q) {
  IsqrtResult r = isqrt(sqdist2(p, q));
  if (!r.exact) return std::nullopt;
  return std::move(r.root);
}

inline std::optional<BigInt> integral_distance3(const LatticePoint3& p, const LatticePoint3& q) {
  IsqrtResult r = isqrt(sqdist3(p, q));
  if (!r.exact) return std::nullopt;
  return std::move(r.root);
}

// twice the signed area of triangle (a, b, c); zero iff collinear
inline BigInt cross2(const LatticePoint2& a, const LatticePoint2& b, const LatticePoint2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace dioph
