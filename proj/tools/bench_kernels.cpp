// Serial reference against the OpenMP kernels on the two-map example.

#include "ismq/bounds.hpp"
#include "ismq/fixtures.hpp"
#include "ismq/kernels.hpp"
#include "ismq/measure.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>

using namespace ismq;

namespace {

const ValidatedSystem& system315() {
    static const ValidatedSystem sys = ValidatedSystem::validate(fixtures::example_315());
    return sys;
}

const std::vector<double>& sorted_samples() {
    static const std::vector<double> xs = [] {
        auto v = sample(sampler_model(system315()), 7, 200'000);
        std::sort(v.begin(), v.end());
        return v;
    }();
    return xs;
}

std::vector<double> grid_points(std::size_t n) {
    const auto& xs = sorted_samples();
    std::vector<double> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(xs[(2 * i + 1) * xs.size() / (2 * n)]);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<std::size_t> starts(const std::vector<double>& pts) {
    const auto& xs = sorted_samples();
    std::vector<std::size_t> b{0};
    for (std::size_t i = 1; i < pts.size(); ++i)
        b.push_back(std::lower_bound(xs.begin(), xs.end(), 0.5 * (pts[i - 1] + pts[i])) - xs.begin());
    b.push_back(xs.size());
    return b;
}

template <bool Omp>
void BM_sample(benchmark::State& st) {
    const auto m = sampler_model(system315());
    std::vector<double> out(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) {
        if constexpr (Omp)
            kernels::omp::sample(m, 1, 1e-12, out);
        else
            kernels::serial::sample(m, 1, 1e-12, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Omp>
void BM_distortion(benchmark::State& st) {
    const auto pts = grid_points(static_cast<std::size_t>(st.range(0)));
    const auto& xs = sorted_samples();
    for (auto _ : st)
        benchmark::DoNotOptimize(Omp ? kernels::omp::distortion_sum(xs, pts, 2.0)
                                     : kernels::serial::distortion_sum(xs, pts, 2.0));
}

template <bool Omp>
void BM_update_cells(benchmark::State& st) {
    const auto pts = grid_points(static_cast<std::size_t>(st.range(0)));
    const auto b = starts(pts);
    const auto& xs = sorted_samples();
    const double r = static_cast<double>(st.range(1));
    for (auto _ : st) {
        auto u = Omp ? kernels::omp::update_cells(xs, b, pts, r) : kernels::serial::update_cells(xs, b, pts, r);
        benchmark::DoNotOptimize(u.point.data());
    }
}

template <bool Omp>
void BM_bootstrap(benchmark::State& st) {
    const auto pts = grid_points(256);
    const auto& xs = sorted_samples();
    std::vector<double> c(xs.size());
    kernels::serial::costs(xs, pts, 2.0, c);
    for (auto _ : st) {
        auto m = Omp ? kernels::omp::bootstrap_means(c, 32, 3) : kernels::serial::bootstrap_means(c, 32, 3);
        benchmark::DoNotOptimize(m.data());
    }
}

template <bool Omp>
void BM_separation(benchmark::State& st) {
    const auto& sys = system315();
    const auto m = find_markers(sys);
    const auto b = build_partition(sys.system(), Order(2.0), static_cast<unsigned>(st.range(0)));
    const auto pieces = test_family(sys, b, m);
    const Rational delta = separation_constant(sys, m);
    for (auto _ : st) {
        auto rep = Omp ? verify_separation(pieces, delta) : verify_separation_serial(pieces, delta);
        benchmark::DoNotOptimize(rep.pass);
    }
}

}  // namespace

BENCHMARK(BM_sample<false>)->Arg(1 << 16);
BENCHMARK(BM_sample<true>)->Arg(1 << 16);
BENCHMARK(BM_distortion<false>)->Arg(64)->Arg(4096);
BENCHMARK(BM_distortion<true>)->Arg(64)->Arg(4096);
BENCHMARK(BM_update_cells<false>)->Args({256, 2})->Args({256, 3});
BENCHMARK(BM_update_cells<true>)->Args({256, 2})->Args({256, 3});
BENCHMARK(BM_bootstrap<false>);
BENCHMARK(BM_bootstrap<true>);
BENCHMARK(BM_separation<false>)->Arg(3)->Arg(4);
BENCHMARK(BM_separation<true>)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
