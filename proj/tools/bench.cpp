#include "gbn/tetrad.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace gbn;

namespace {

Dag random_dag(std::mt19937_64& rng, int n, double p) {
    std::vector<Edge> edges;
    std::bernoulli_distribution coin(p);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (coin(rng)) edges.push_back({i, j});
    return Dag::normalized(n, std::move(edges));
}

template <class F> double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 8;
    int reps = argc > 2 ? std::atoi(argv[2]) : 5;
    std::mt19937_64 rng(20240817);
#ifdef _OPENMP
    std::cout << "threads " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads 1 (no OpenMP)\n";
#endif
    std::cout << "tetrad scan, n = " << n << ", " << reps << " graphs\n";
    double serial = 0, parallel = 0;
    for (int r = 0; r < reps; ++r) {
        Dag g = random_dag(rng, n, 0.4);
        std::vector<TetradBinomial> a, b;
        serial += time_ms([&] { a = all_vanishing_tetrads_serial(g); });
        parallel += time_ms([&] { b = all_vanishing_tetrads(g); });
        if (a != b) {
            std::cerr << "kernel mismatch on graph " << r << "\n";
            return 1;
        }
    }
    std::cout << "serial   " << serial << " ms\n";
    std::cout << "parallel " << parallel << " ms\n";
    std::cout << "speedup  " << serial / parallel << "x\n";
    return 0;
}
