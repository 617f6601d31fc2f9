// Serial reference vs OpenMP version of each parallel kernel.

#include <benchmark/benchmark.h>

#include "ffseq/construct.hpp"
#include "ffseq/digital.hpp"
#include "ffseq/verify.hpp"

using namespace ffseq;

namespace {

SeqSpec spec_for(std::uint32_t p, std::size_t s, Mode mode) {
    return SeqSpec::first_places(make_function_field(FieldKind::rational, Field::create(p, 1)), s, mode);
}

template <bool Parallel>
void BM_build_matrices(benchmark::State& st) {
    const auto spec = spec_for(3, 3, Mode::finite_row);
    const auto R = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) {
        auto m = Parallel ? build_matrices(spec, 32, R) : build_matrices_serial(spec, 32, R);
        benchmark::DoNotOptimize(m);
    }
}

template <bool Parallel>
void BM_generate_block(benchmark::State& st) {
    const auto spec = spec_for(2, 3, Mode::plain);
    const auto mats = build_matrices(spec, 24, 24);
    const auto& F = spec.field->constants();
    const auto m = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) {
        auto pts = Parallel ? generate_block(F, mats, 1, m) : generate_block_serial(F, mats, 1, m);
        benchmark::DoNotOptimize(pts);
    }
    st.SetItemsProcessed(st.iterations() * (std::int64_t{1} << m));
}

template <bool Parallel>
void BM_seq_rank_check(benchmark::State& st) {
    const auto spec = spec_for(5, 3, Mode::plain);
    const int M = static_cast<int>(st.range(0));
    const auto mats = build_matrices(spec, static_cast<std::size_t>(M), static_cast<std::size_t>(M));
    const auto& F = spec.field->constants();
    for (auto _ : st) {
        auto rep = Parallel ? seq_rank_check(F, mats, 0, spec.e, M) : seq_rank_check_serial(F, mats, 0, spec.e, M);
        benchmark::DoNotOptimize(rep);
    }
}

template <bool Parallel>
void BM_star_discrepancy(benchmark::State& st) {
    const auto spec = spec_for(2, 2, Mode::plain);
    const auto mats = build_matrices(spec, 12, 12);
    const auto N = static_cast<std::uint64_t>(st.range(0));
    const auto pts = RationalPointSet::from_digits(generate_first(spec.field->constants(), mats, N, 12));
    for (auto _ : st) {
        auto d = Parallel ? star_discrepancy_exact(pts) : star_discrepancy_exact_serial(pts);
        benchmark::DoNotOptimize(d);
    }
}

}  // namespace

BENCHMARK(BM_build_matrices<false>)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_build_matrices<true>)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generate_block<false>)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generate_block<true>)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_seq_rank_check<false>)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_seq_rank_check<true>)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_star_discrepancy<false>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_star_discrepancy<true>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
