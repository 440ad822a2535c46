// Times the serial reference against the OpenMP bootstrap kernels on a
// synthetic Pareto tail and checks that both give identical results.
#include <chrono>
#include <cstdio>
#include <string>

#include "gpltail/gof.hpp"
#include "gpltail/tail_analysis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace gpltail;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int n = 2000;
  int replicates = 2000;
  if (argc > 1) n = std::stoi(argv[1]);
  if (argc > 2) replicates = std::stoi(argv[2]);

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled (parallel policy falls back to serial)\n");
#endif
  std::printf("tail size n = %d, replicates = %d\n\n", n, replicates);

  const RandomSource data_src{20240501, 0};
  const auto tail = Distribution::pareto1(1000.0, 1.1).sample(n, data_src);
  const RandomSource boot_src{7, 42};

  auto t0 = Clock::now();
  const auto serial = bootstrap_pvalue_ks(tail, replicates, boot_src, Execution::Serial);
  const double t_serial = seconds_since(t0);

  t0 = Clock::now();
  const auto parallel = bootstrap_pvalue_ks(tail, replicates, boot_src, Execution::Parallel);
  const double t_parallel = seconds_since(t0);

  std::printf("%-28s %10s %12s %12s\n", "kernel", "p-value", "exceed", "seconds");
  std::printf("%-28s %10.4f %12d %12.3f\n", "ks bootstrap (serial)", serial.p_value,
              serial.exceed_count, t_serial);
  std::printf("%-28s %10.4f %12d %12.3f\n", "ks bootstrap (openmp)", parallel.p_value,
              parallel.exceed_count, t_parallel);
  std::printf("speedup: %.2fx, identical: %s\n\n", t_serial / t_parallel,
              serial.exceed_count == parallel.exceed_count ? "yes" : "NO");

  // Smaller AD benchmark: every replicate refits a three-parameter model.
  const auto body = Distribution::lomax(50.0, 1.2).sample(600, RandomSource{3, 9});
  const CensoredSample sample = CensoredSample::from_values(body, 4.0);
  const ModelSelection lomax{Family::Lomax, GKind::LogRatio, 0.0, std::nullopt};
  const int ad_replicates = std::max(replicates / 10, 20);

  t0 = Clock::now();
  const auto ad_serial =
      bootstrap_pvalue_ad(sample, lomax, ad_replicates, boot_src, Execution::Serial);
  const double t_ad_serial = seconds_since(t0);

  t0 = Clock::now();
  const auto ad_parallel =
      bootstrap_pvalue_ad(sample, lomax, ad_replicates, boot_src, Execution::Parallel);
  const double t_ad_parallel = seconds_since(t0);

  std::printf("%-28s %10s %12s %12s\n", "kernel", "p-value", "failed", "seconds");
  std::printf("%-28s %10.4f %12d %12.3f\n", "ad bootstrap (serial)", ad_serial.p_value,
              ad_serial.failed_replicates, t_ad_serial);
  std::printf("%-28s %10.4f %12d %12.3f\n", "ad bootstrap (openmp)", ad_parallel.p_value,
              ad_parallel.failed_replicates, t_ad_parallel);
  std::printf("speedup: %.2fx, identical: %s\n", t_ad_serial / t_ad_parallel,
              ad_serial.exceed_count == ad_parallel.exceed_count ? "yes" : "NO");

  return (serial.exceed_count == parallel.exceed_count &&
          ad_serial.exceed_count == ad_parallel.exceed_count)
             ? 0
             : 1;
}
