// Compares the serial reference implementations against the OpenMP kernels
// on representative workloads and checks that both produce identical exact
// results. Wall times go to stdout as a small table.

#include <chrono>
#include <cstdio>

#include "unitary/group.hpp"
#include "unitary/measure.hpp"
#include "unitary/parallel.hpp"
#include "unitary/partitions.hpp"

using namespace unitary;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double timed(F&& f) {
  auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool equal) {
  printf("%-28s %9.3fs %9.3fs %7.2fx  %s\n", name, serial, parallel,
         parallel > 0 ? serial / parallel : 0.0, equal ? "equal" : "MISMATCH");
}

}  // namespace

int main() {
  apply_thread_env();
  printf("threads: %d\n", thread_count());
  printf("%-28s %10s %10s %8s\n", "workload", "serial", "parallel", "speedup");

  {
    GroupCensus a, b;
    census(3, 2, Exec::serial);  // warm the interned field/factor caches
    double ts = timed([&] { a = census(3, 2, Exec::serial); });
    double tp = timed([&] { b = census(3, 2, Exec::parallel); });
    row("census U(3,2)", ts, tp,
        a.mu == b.mu && a.order_hist == b.order_hist &&
            a.charpoly_counts == b.charpoly_counts);
  }
  {
    SampleStats a, b;
    double ts = timed([&] { a = sample_order_stats(12, 2, 7, 4000, Exec::serial); });
    double tp = timed([&] { b = sample_order_stats(12, 2, 7, 4000, Exec::parallel); });
    row("sample 4000 of U(12,2)", ts, tp,
        a.mean_order == b.mean_order && a.max_order == b.max_order);
  }
  {
    // build the memoized table up front so both runs time the kernel alone
    OmegaTable::get(16, 2);
    Rat a, b;
    double ts = timed([&] { a = expect_stat(Stat::X, 16, 2, Exec::serial); });
    double tp = timed([&] { b = expect_stat(Stat::X, 16, 2, Exec::parallel); });
    row("expect X over Omega_16", ts, tp, a == b);
  }
  {
    std::vector<Rat> a, b;
    double ts = timed([&] { a = sigma2_sweep(100, 2, Exec::serial); });
    double tp = timed([&] { b = sigma2_sweep(100, 2, Exec::parallel); });
    row("sigma2 sweep to 100", ts, tp, a == b);
  }
  return 0;
}
