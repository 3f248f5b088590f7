// Timing harness: OpenMP kernels against their serial reference versions.
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "madbounds/chance.hpp"
#include "madbounds/curve.hpp"
#include "madbounds/sums.hpp"

using namespace madb;

namespace {

double time_it(const std::function<void()>& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, dt.count());
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.4f s %10.4f s %8.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    AmbiguitySet set{0.0, 1.0, 0.4, 0.15};
    std::vector<double> grid = linspace(0.0, 1.0, 2000000);
    double s = time_it([&] { make_curve_serial(BoundKind::SupTail, set, grid); });
    double p = time_it([&] { make_curve(BoundKind::SupTail, set, grid); });
    row("curve eval (2e6 pts)", s, p);

    std::vector<std::function<double(double)>> qs;
    for (double m : {-0.3, 0.4, 0.8}) {
        LognormalMarginal ln{m, 0.5};
        qs.push_back([ln](double u) { return ln.quantile(u); });
    }
    s = time_it([&] { simulate_sums_serial(qs, Copula::Independent, 2000000, 7); });
    p = time_it([&] { simulate_sums(qs, Copula::Independent, 2000000, 7); });
    row("copula simulation (2e6)", s, p);

    // the dose solver has no serial twin; report the parallel time alone
    RadiotherapyProblem rp;
    p = time_it([&] { radiotherapy_solve(rp); });
    std::printf("%-28s %10s   %10.4f s\n", "dose grid search", "-", p);
    return 0;
}
