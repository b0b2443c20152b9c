// Benchmark: OpenMP kernels against their serial reference
// implementations. Checks result equality, then reports timings.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dfarpl/aco.hpp"
#include "dfarpl/sweep.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::vector<dfarpl::MemberLedgerEntry>>
synthetic_clusters(std::size_t n_clusters, std::size_t members) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> count(0, 300);
  std::vector<std::vector<dfarpl::MemberLedgerEntry>> out(n_clusters);
  dfarpl::NodeId id = 1;
  for (auto& c : out)
    for (std::size_t m = 0; m < members; ++m)
      c.push_back({id++, count(rng), 0, dfarpl::MsgKind::Data});
  return out;
}

void bench_scoring() {
  const auto clusters = synthetic_clusters(200000, 32);
  dfarpl::DetectionParams p;

  auto t0 = Clock::now();
  auto serial = dfarpl::score_clusters_serial(clusters, p);
  double t_serial = seconds_since(t0);

  t0 = Clock::now();
  auto parallel = dfarpl::score_clusters_parallel(clusters, p);
  double t_parallel = seconds_since(t0);

  bool equal = serial.size() == parallel.size();
  for (std::size_t i = 0; equal && i < serial.size(); ++i)
    for (std::size_t j = 0; equal && j < serial[i].size(); ++j)
      equal = serial[i][j].member == parallel[i][j].member &&
              serial[i][j].probability == parallel[i][j].probability;

  std::printf("aco scoring   %8zu clusters  serial %.3fs  parallel %.3fs  "
              "speedup %.2fx  results %s\n",
              clusters.size(), t_serial, t_parallel, t_serial / t_parallel,
              equal ? "equal" : "DIFFER");
}

void bench_sweep() {
  dfarpl::SweepSpec spec;
  spec.ratios = {0.0, 0.1, 0.2};
  spec.seeds = {1, 2, 3, 4};
  spec.base.n_nodes = 60;
  spec.base.sim_duration = 60.0;

  auto t0 = Clock::now();
  auto serial = dfarpl::run_sweep_serial(spec);
  double t_serial = seconds_since(t0);

  t0 = Clock::now();
  auto parallel = dfarpl::run_sweep_parallel(spec);
  double t_parallel = seconds_since(t0);

  bool equal = dfarpl::sweep_csv(serial) == dfarpl::sweep_csv(parallel);
  std::printf("sweep grid    %8zu runs      serial %.3fs  parallel %.3fs  "
              "speedup %.2fx  results %s\n",
              serial.size(), t_serial, t_parallel, t_serial / t_parallel,
              equal ? "equal" : "DIFFER");
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled (serial fallback)\n");
#endif
  bench_scoring();
  bench_sweep();
  return 0;
}
