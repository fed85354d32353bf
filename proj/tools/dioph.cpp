// Command-line surface: every subcommand reads lattice data, runs the exact
// solvers, and prints one JSON document (or JSON lines) on standard output.
// Human-readable progress goes to standard error.  Exit codes: 0 success,
// 1 input or validation error, 2 infinite family / undecided under budget,
// 3 internal assertion failure.
#include <CLI11.hpp>

#include <dioph/carpet.hpp>
#include <dioph/chi.hpp>
#include <dioph/errors.hpp>
#include <dioph/json_io.hpp>
#include <dioph/planar_extension.hpp>
#include <dioph/spatial.hpp>
#include <dioph/triangle_search.hpp>
#include <dioph/triples.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitInternal = 3;

std::atomic<bool> g_interrupted{false};

void handle_sigint(int) { g_interrupted.store(true); }

dioph::Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return dioph::Json::parse(in);
}

void print_document(const dioph::Json& j) { std::cout << j.dump(2) << '\n'; }

void print_line(const dioph::Json& j) {
  std::cout << j.dump() << '\n';
  std::cout.flush();
}

// stderr progress line: `solved/total percent eta`, called at ~1 Hz by the
// solvers; eta extrapolates the observed rate.
struct ProgressPrinter {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void operator()(std::uint64_t solved, std::uint64_t total) const {
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double pct = total ? 100.0 * double(solved) / double(total) : 100.0;
    double eta = 0.0;
    if (solved > 0 && solved < total)
      eta = elapsed * double(total - solved) / double(solved);
    std::fprintf(stderr, "%llu/%llu %.1f%% eta %.0fs\n",
                 static_cast<unsigned long long>(solved), static_cast<unsigned long long>(total),
                 pct, eta);
  }
};

dioph::SideTriple parse_triple_args(std::int64_t a, std::int64_t b, std::int64_t c) {
  std::int64_t s[3] = {a, b, c};
  std::sort(s, s + 3, std::greater<>());
  return dioph::SideTriple{dioph::BigInt(s[0]), dioph::BigInt(s[1]), dioph::BigInt(s[2])};
}

int run_chi(std::uint64_t l) {
  print_document(dioph::json_chi(dioph::compute_chi(l)));
  return kExitOk;
}

// All Heronian triples with a <= max_edge, one JSON line each, Pythagorean
// ones flagged rather than skipped (the search subcommand applies the skip).
int run_heronian(long max_edge) {
  dioph::for_each_heronian(max_edge, [&](long a, long b, long c, bool pyth) {
    dioph::Json j;
    j["a"] = a;
    j["b"] = b;
    j["c"] = c;
    j["pythagorean"] = pyth;
    print_line(j);
  });
  return kExitOk;
}

int run_embed(const dioph::SideTriple& t) {
  dioph::Json j;
  j["triple"] = dioph::json_triple(t);
  j["heronian"] = dioph::is_heronian(t);
  j["pythagorean"] = dioph::is_pythagorean(t);
  j["embeddings"] = dioph::Json::array();
  for (const dioph::Embedding& e : dioph::embeddings(t))
    j["embeddings"].push_back(dioph::json_embedding(e));
  print_document(j);
  return kExitOk;
}

int run_classify(const dioph::SideTriple& t, unsigned workers) {
  dioph::ExtendOptions opts;
  opts.workers = workers;
  opts.progress = ProgressPrinter{};
  print_document(dioph::json_triple_report(dioph::classify_triple(t, opts)));
  return kExitOk;
}

int run_extend(const std::string& figure_path, int dims, unsigned workers,
               std::uint64_t budget) {
  const dioph::Json input = load_json(figure_path);
  if (dims == 2) {
    if (budget != 0) std::cerr << "note: --budget applies to --dims 3 only; ignored\n";
    const std::vector<dioph::LatticePoint2> pts = dioph::parse_points2(input);
    if (pts.size() < 3) {
      dioph::Json j;
      j["dims"] = 2;
      j["status"] = "INFINITE_FAMILY";
      j["reason"] = "fewer than three points: integral-distance extensions form an infinite family";
      print_document(j);
      return kExitUndecided;
    }
    const dioph::Figure2 fig(pts);
    dioph::ExtendOptions opts;
    opts.workers = workers;
    opts.progress = ProgressPrinter{};
    try {
      print_document(dioph::json_extend2(dioph::extension_points(fig, opts)));
    } catch (const dioph::InfiniteFamilyError& e) {
      dioph::Json j;
      j["dims"] = 2;
      j["status"] = "INFINITE_FAMILY";
      j["reason"] = e.what();
      print_document(j);
      return kExitUndecided;
    }
    return kExitOk;
  }
  const auto v = dioph::parse_tetra_vertices(input);
  const dioph::Tetrahedron t(v[0], v[1], v[2], v[3]);
  dioph::ExtendOptions3 opts;
  opts.workers = workers;
  opts.budget = budget;
  opts.progress = ProgressPrinter{};
  const dioph::ExtensionReport3 rep = dioph::extension_points_3d(t, opts);
  print_document(dioph::json_extend3(rep));
  return rep.complete ? kExitOk : kExitUndecided;
}

int run_search(long max_edge, unsigned workers, const std::string& checkpoint) {
  std::signal(SIGINT, handle_sigint);
  dioph::SearchOptions opts;
  opts.workers = workers;
  opts.checkpoint_path = checkpoint;
  opts.on_report = [](const dioph::TripleReport& rep) {
    print_line(dioph::json_triple_report(rep));
  };
  auto start = std::chrono::steady_clock::now();
  auto last = start;
  opts.progress = [&](long a_done, long bound, std::uint64_t found) {
    const auto now = std::chrono::steady_clock::now();
    if (now - last < std::chrono::seconds(1)) return;
    last = now;
    const double elapsed = std::chrono::duration<double>(now - start).count();
    const double pct = 100.0 * double(a_done) / double(bound);
    const double eta = a_done ? elapsed * double(bound - a_done) / double(a_done) : 0.0;
    std::fprintf(stderr, "%ld/%ld %.1f%% eta %.0fs found=%llu\n", a_done, bound, pct, eta,
                 static_cast<unsigned long long>(found));
  };
  opts.cancelled = [] { return g_interrupted.load(); };
  const dioph::SearchOutcome out = dioph::search_erdos_triangles(max_edge, opts);
  // The library appends and flushes a checkpoint line after each completed a,
  // so an interrupted run resumes without re-verifying finished work.
  return out.interrupted ? kExitUndecided : kExitOk;
}

int run_verify_tetrahedron(const std::string& path, bool erdos, unsigned workers,
                           std::uint64_t budget) {
  const auto v = dioph::parse_tetra_vertices(load_json(path));
  const dioph::Tetrahedron t(v[0], v[1], v[2], v[3]);
  dioph::Json j;
  j["tetrahedron"] = dioph::json_tetrahedron(t.vertices());
  const dioph::TetraMetrics m = dioph::tetra_metrics(t);
  j["metrics"] = dioph::json_metrics(m);
  const bool dioph_ok = dioph::is_diophantine_tetrahedron(t);
  j["is_diophantine"] = dioph_ok;
  if (!erdos) {
    print_document(j);
    return kExitOk;
  }
  if (!dioph_ok) {
    std::cerr << "error: --erdos requires a Diophantine tetrahedron\n";
    return kExitInput;
  }
  dioph::ExtendOptions3 opts;
  opts.workers = workers;
  opts.budget = budget;
  opts.progress = ProgressPrinter{};
  const dioph::ExtensionReport3 rep = dioph::extension_points_3d(t, opts);
  // A truncated sweep that found nothing proves nothing; one that found a
  // point has decided the question regardless of completeness.
  const bool decided = rep.complete || !rep.extension_points.empty();
  dioph::Json e;
  e["status"] = decided ? "DECIDED" : "UNDECIDED";
  e["is_erdos"] = decided ? dioph::Json(rep.extension_points.empty()) : dioph::Json(nullptr);
  e["extension_points"] = dioph::Json::array();
  for (const auto& p : rep.extension_points) e["extension_points"].push_back(dioph::json_point3(p));
  e["systems_solved"] = rep.systems_solved;
  e["systems_total"] = rep.systems_total;
  e["complete"] = rep.complete;
  j["erdos"] = std::move(e);
  print_document(j);
  return decided ? kExitOk : kExitUndecided;
}

int run_carpet(const std::string& path, bool color) {
  const std::vector<dioph::Triangle2> tris = dioph::parse_carpet_triangles(load_json(path));
  const dioph::CarpetValidation v = dioph::validate_carpet(tris);
  if (!v.carpet.has_value()) {
    print_document(dioph::json_carpet_validation(v, tris.size()));
    return kExitInput;
  }
  if (!color) {
    print_document(dioph::json_carpet_validation(v, tris.size()));
    return kExitOk;
  }
  print_document(dioph::json_coloring(dioph::chromatic_number(*v.carpet)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact integral-distance geometry on the integer lattice"};
  app.require_subcommand(1);

  std::uint64_t chi_l = 0;
  auto* chi = app.add_subcommand("chi", "Count Pythagorean triangles with a given hypotenuse");
  chi->add_option("l", chi_l, "hypotenuse length")->required()->check(CLI::PositiveNumber);

  long her_max = 0;
  auto* her = app.add_subcommand("heronian", "List Heronian side triples as JSON lines");
  her->add_option("--max-edge", her_max, "largest edge to enumerate")
      ->required()
      ->check(CLI::PositiveNumber);

  std::int64_t e_a = 0, e_b = 0, e_c = 0;
  auto* emb = app.add_subcommand("embed", "Canonical lattice embeddings of a side triple");
  emb->add_option("a", e_a)->required()->check(CLI::PositiveNumber);
  emb->add_option("b", e_b)->required()->check(CLI::PositiveNumber);
  emb->add_option("c", e_c)->required()->check(CLI::PositiveNumber);

  std::int64_t c_a = 0, c_b = 0, c_c = 0;
  unsigned classify_workers = 0;
  auto* cls = app.add_subcommand("classify-triple",
                                 "Embeddings and exact extension counts of a side triple");
  cls->add_option("a", c_a)->required()->check(CLI::PositiveNumber);
  cls->add_option("b", c_b)->required()->check(CLI::PositiveNumber);
  cls->add_option("c", c_c)->required()->check(CLI::PositiveNumber);
  cls->add_option("--workers", classify_workers, "worker threads (default: all cores)");

  std::string ext_figure;
  int ext_dims = 2;
  unsigned ext_workers = 0;
  std::uint64_t ext_budget = 0;
  auto* ext = app.add_subcommand("extend", "All integral-distance extension points of a figure");
  ext->add_option("--figure", ext_figure, "figure JSON file")->required();
  ext->add_option("--dims", ext_dims, "2 or 3")->check(CLI::Range(2, 3));
  ext->add_option("--workers", ext_workers, "worker threads (default: all cores)");
  ext->add_option("--budget", ext_budget, "solve at most this many systems (3D only)");

  long search_max = 0;
  unsigned search_workers = 0;
  std::string search_checkpoint;
  auto* sea = app.add_subcommand("search-triangles",
                                 "Search for triangles admitting no extension point");
  sea->add_option("--max-edge", search_max, "largest edge to search")
      ->required()
      ->check(CLI::PositiveNumber);
  sea->add_option("--workers", search_workers, "worker threads (default: all cores)");
  sea->add_option("--checkpoint", search_checkpoint, "append `done a=<a> found=<k>` lines here");

  std::string ver_file;
  bool ver_erdos = false;
  unsigned ver_workers = 0;
  std::uint64_t ver_budget = 0;
  auto* ver = app.add_subcommand("verify-tetrahedron",
                                 "Integrality metrics, optionally the full extension sweep");
  ver->add_option("--file", ver_file, "tetrahedron JSON file")->required();
  ver->add_flag("--erdos", ver_erdos, "run the extension sweep");
  ver->add_option("--workers", ver_workers, "worker threads (default: all cores)");
  ver->add_option("--budget", ver_budget, "solve at most this many systems");

  std::string car_file;
  auto* car = app.add_subcommand("carpet", "Validate or color a triangulated carpet");
  car->require_subcommand(1);
  auto* car_val = car->add_subcommand("validate", "check the carpet invariants");
  auto* car_col = car->add_subcommand("color", "chromatic number of the side-sharing dual");
  for (auto* sub : {car_val, car_col})
    sub->add_option("--file", car_file, "carpet JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;  // bad flags are input errors; --help is success
  }

  try {
    if (*chi) return run_chi(chi_l);
    if (*her) return run_heronian(her_max);
    if (*emb) return run_embed(parse_triple_args(e_a, e_b, e_c));
    if (*cls) return run_classify(parse_triple_args(c_a, c_b, c_c), classify_workers);
    if (*ext) return run_extend(ext_figure, ext_dims, ext_workers, ext_budget);
    if (*sea) return run_search(search_max, search_workers, search_checkpoint);
    if (*ver) return run_verify_tetrahedron(ver_file, ver_erdos, ver_workers, ver_budget);
    if (*car) return run_carpet(car_file, bool(*car_col));
  } catch (const dioph::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const dioph::Json::parse_error& e) {
    std::cerr << "error: invalid JSON: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
