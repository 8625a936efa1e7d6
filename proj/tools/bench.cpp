// Compares the serial reference implementations against the OpenMP kernels:
// Magnus expansion of long words, BFS length search, and the per-n growth
// report sweep. Results must be identical; timings are printed side by side.

#include <chrono>
#include <cstdio>
#include <string>

#include "nilcert/subdirect.hpp"
#include "nilcert/fibre.hpp"
#include "nilcert/parallel.hpp"
#include "nilcert/series.hpp"
#include "nilcert/word.hpp"

using namespace nilcert;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void bench_expand() {
  Alphabet X = Alphabet::from_csv("a,b");
  ReducedWord w = build_w(2000, 4);  // 40000 letters
  std::printf("magnus expansion, |w| = %zu, c_max = 4\n", w.length());

  (void)magnus_expand_serial(w, 4, X);  // warm up
  auto t0 = std::chrono::steady_clock::now();
  TruncatedSeries serial = magnus_expand_serial(w, 4, X);
  double t_serial = ms_since(t0);

  (void)magnus_expand(w, 4, X);
  t0 = std::chrono::steady_clock::now();
  TruncatedSeries parallel = magnus_expand(w, 4, X);
  double t_parallel = ms_since(t0);

  std::printf("  serial   %8.1f ms\n", t_serial);
  std::printf("  parallel %8.1f ms (%d threads)  speedup %.2fx  identical: %s\n", t_parallel,
              max_threads(), t_serial / t_parallel, serial == parallel ? "yes" : "NO");
}

void bench_bfs() {
  GeneratorSystem gens = build_generators(3);
  // product of eight generators; BFS has to certify the exact distance
  Tuple target(3);
  const std::vector<Tuple> all = gens.all();
  for (size_t i : {0u, 3u, 1u, 4u, 2u, 5u, 0u, 6u}) target = target * all[i];
  std::printf("bfs length search, r = 3, |target| <= 8\n");

  for (int threads : {1, max_threads()}) {
    set_max_threads(threads);
    auto t0 = std::chrono::steady_clock::now();
    auto len = shortest_length_bfs(target, gens, BfsBudget{2000000});
    double t = ms_since(t0);
    std::printf("  threads=%d  %8.1f ms  length=%s\n", threads, t,
                len ? std::to_string(*len).c_str() : "budget exhausted");
  }
}

void bench_report() {
  std::printf("growth report sweep, r = 4, n <= 25\n");
  std::vector<int64_t> ns;
  for (int64_t n = 1; n <= 25; ++n) ns.push_back(n);
  (void)growth_report(4, ns, BfsBudget{0});  // warm up
  for (int threads : {1, max_threads()}) {
    set_max_threads(threads);
    auto t0 = std::chrono::steady_clock::now();
    GrowthReport rep = growth_report(4, ns, BfsBudget{0});
    double t = ms_since(t0);
    std::printf("  threads=%d  %8.1f ms  slope=%.4f\n", threads, t,
                rep.slope.value_or(0.0));
  }
}

}  // namespace

int main() {
  bench_expand();
  bench_bfs();
  bench_report();
  return 0;
}
