#pragma once

// Exhaustive search for unextendable Diophantine triangles by edge bound.
//
// Enumerates normalized triples (a, b, c), a descending-ordered and a up to
// max_edge, in deterministic (a, b, c) order; screens by the perfect-square
// test on the Heron product; skips Pythagorean triples; realizes survivors as
// canonical lattice embeddings.  An embedding is disposed of the moment any
// extension point is exhibited: first by the witness pre-pass, else by an
// early-exit sweep of the full (d1, d2) loop.  Only embeddings that survive
// the exhaustive sweep count as unextendable; such triples are re-classified
// in full (per-embedding extension counts) for reporting.
//
// Work is partitioned one task per value of a; results commit in order, so
// reports, checkpoint lines, and progress are identical for any worker count.
// A checkpoint line `done a=<a> found=<k>` (k cumulative) is appended after
// each completed a; resume reads the last valid line and continues at a+1.

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dioph/engine2d.hpp"
#include "dioph/errors.hpp"
#include "dioph/extension_witness.hpp"
#include "dioph/figure.hpp"
#include "dioph/parallel.hpp"
#include "dioph/planar_extension.hpp"
#include "dioph/triples.hpp"

namespace dioph {

// 3 * edge^4 must stay below 2^64 for the screened Heron product
inline constexpr long kMaxSearchEdge = 40000;

// fn(a, b, c, pythagorean) for every normalized Heronian triple with longest
// side exactly a, in (b, c) ascending order.
template <typename F>
void for_each_heronian_at(long a, F&& fn) {
  for (long b = (a + 2) / 2; b <= a; ++b)
    for (long c = a - b + 1; c <= b; ++c) {
      const std::uint64_t p = std::uint64_t(a + b + c) * std::uint64_t(-a + b + c) *
                              std::uint64_t(a - b + c) * std::uint64_t(a + b - c);
      std::uint64_t r = 0;
      if (!is_square_u64(p, &r)) continue;
      fn(a, b, c, a * a == b * b + c * c);
    }
}

template <typename F>
void for_each_heronian(long max_edge, F&& fn) {
  if (max_edge > kMaxSearchEdge)
    throw std::invalid_argument("edge bound beyond supported search range");
  for (long a = 1; a <= max_edge; ++a) for_each_heronian_at(a, fn);
}

namespace detail {

// Does the triangle admit any extension point at all?  Witness pre-pass first,
// then an early-exit exhaustive sweep; the sweep makes the negative exact.
inline bool triangle_has_extension(const LatticePoint2& A, const LatticePoint2& B,
                                   const LatticePoint2& C) {
  if (find_extension_witness(A, B, C)) return true;
  const Figure2 fig({A, B, C});
  const auto base = choose_base(fig);
  const BigInt dac = *integral_distance2(base[0], base[2]);
  const BigInt dbc = *integral_distance2(base[1], base[2]);
  if (!dac.fits_slong_p() || !dbc.fits_slong_p())
    throw std::range_error("extension loop range exceeds supported size");
  EngineBase2 e;
  e.init(base[0], base[1], base[2], dac, dbc);
  const long d1max = dac.get_si(), d2max = dbc.get_si();
  std::vector<Candidate2> cand;
  for (long d1 = -d1max; d1 <= d1max; ++d1)
    for (long d2 = -d2max; d2 <= d2max; ++d2) {
      cand.clear();
      solve_system(e, d1, d2, cand);
      for (const auto& s : cand)
        if (!fig.contains(s.p)) return true;
    }
  return false;
}

struct CheckpointState {
  long a = 0;
  std::uint64_t found = 0;
};

// last well-formed `done a=<a> found=<k>` line, if any
inline std::optional<CheckpointState> read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::optional<CheckpointState> last;
  std::string line;
  while (std::getline(in, line)) {
    long a = 0;
    unsigned long long k = 0;
    if (std::sscanf(line.c_str(), "done a=%ld found=%llu", &a, &k) == 2)
      last = CheckpointState{a, k};
  }
  return last;
}

}  // namespace detail

struct SearchOptions {
  unsigned workers = 0;                 // 0: available parallelism
  std::string checkpoint_path;          // empty: no checkpoint file
  std::function<void(const TripleReport&)> on_report;       // streamed in order
  std::function<void(long, long, std::uint64_t)> progress;  // (a_done, max_edge, found)
  std::function<bool()> cancelled;      // polled after each completed a
};

struct SearchOutcome {
  std::vector<TripleReport> reports;  // finds of this run; resume omits prior finds
  long last_completed_a = 0;
  std::uint64_t found_total = 0;      // cumulative across resumed runs
  bool interrupted = false;
};

inline SearchOutcome search_erdos_triangles(long max_edge, const SearchOptions& opts = {}) {
  if (max_edge < 1) throw std::invalid_argument("max_edge must be positive");
  if (max_edge > kMaxSearchEdge)
    throw std::invalid_argument("edge bound beyond supported search range");

  long start_a = 1;
  std::uint64_t found = 0;
  std::ofstream ckpt;
  if (!opts.checkpoint_path.empty()) {
    if (const auto st = detail::read_checkpoint(opts.checkpoint_path)) {
      start_a = st->a + 1;
      found = st->found;
    }
    ckpt.open(opts.checkpoint_path, std::ios::app);
    if (!ckpt) throw std::runtime_error("cannot open checkpoint file: " + opts.checkpoint_path);
  }

  SearchOutcome out;
  out.last_completed_a = std::min(start_a - 1, max_edge);
  out.found_total = found;
  if (start_a > max_edge) return out;  // checkpoint already covers the range

  const std::size_t n = std::size_t(max_edge - start_a + 1);
  const unsigned workers = opts.workers ? opts.workers : default_workers();

  std::function<std::vector<std::array<long, 3>>(std::size_t)> task = [&](std::size_t idx) {
    const long a = start_a + long(idx);
    std::vector<std::array<long, 3>> hits;
    for_each_heronian_at(a, [&](long ta, long tb, long tc, bool pyth) {
      if (pyth) return;
      const SideTriple t{BigInt(ta), BigInt(tb), BigInt(tc)};
      for (const Embedding& e : embeddings(t)) {
        if (!detail::triangle_has_extension(e.A, e.B, e.C)) {
          hits.push_back({ta, tb, tc});
          break;
        }
      }
    });
    return hits;
  };
  std::function<bool(std::size_t, std::vector<std::array<long, 3>>&&)> commit =
      [&](std::size_t idx, std::vector<std::array<long, 3>>&& hits) {
        const long a = start_a + long(idx);
        for (const auto& h : hits) {
          ExtendOptions eo;
          eo.workers = 1;  // inside the ordered commit; tasks own the parallelism
          TripleReport rep =
              classify_triple(SideTriple{BigInt(h[0]), BigInt(h[1]), BigInt(h[2])}, eo);
          if (!rep.erdos)
            throw InternalError("early-exit sweep and full classification disagree");
          ++found;
          if (opts.on_report) opts.on_report(rep);
          out.reports.push_back(std::move(rep));
        }
        out.last_completed_a = a;
        out.found_total = found;
        if (ckpt.is_open()) {
          ckpt << "done a=" << a << " found=" << found << '\n';
          ckpt.flush();
        }
        if (opts.progress) opts.progress(a, max_edge, found);
        if (opts.cancelled && opts.cancelled()) {
          out.interrupted = true;
          return false;
        }
        return true;
      };
  run_ordered<std::vector<std::array<long, 3>>>(n, workers, task, commit);
  return out;
}

}  // namespace dioph
