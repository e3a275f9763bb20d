#include <benchmark/benchmark.h>

#include <string>

#include "m2v/corpus.hpp"
#include "m2v/murmur3.hpp"
#include "m2v/rng.hpp"

namespace {

std::string random_residues(std::size_t len, std::uint64_t seed) {
    m2v::Rng rng(seed);
    std::string s(len, '?');
    for (auto& c : s) c = m2v::kAminoAlphabet[rng.next_below(20)];
    return s;
}

void BM_Murmur3(benchmark::State& state) {
    std::string input = random_residues(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(m2v::murmur3_32(input, 0));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Murmur3)->Arg(3)->Arg(9)->Arg(32)->Arg(256)->Arg(4096);

void BM_BucketOf(benchmark::State& state) {
    std::string kmer = random_residues(3, 12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(m2v::bucket_of(kmer, 0, 8192));
    }
}
BENCHMARK(BM_BucketOf);

}  // namespace
