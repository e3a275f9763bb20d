#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "m2v/corpus.hpp"
#include "m2v/embed.hpp"
#include "m2v/kmer.hpp"

namespace {

m2v::Corpus make_corpus(std::uint32_t per_class, std::uint32_t length) {
    m2v::SynthSpec spec;
    spec.n_classes = 4;
    spec.seqs_per_class = {per_class};
    spec.base_length = length;
    spec.mutations_per_class = 3;
    spec.noise_rate = 0.02;
    spec.rng_seed = 21;
    return m2v::generate_synthetic(spec);
}

void BM_CountKmers(benchmark::State& state) {
    auto corpus = make_corpus(1, static_cast<std::uint32_t>(state.range(0)));
    const auto& seq = corpus.records.front().residues;
    for (auto _ : state) {
        benchmark::DoNotOptimize(m2v::count_kmers(seq, 3));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            (state.range(0) - 2));
}
BENCHMARK(BM_CountKmers)->Arg(100)->Arg(500)->Arg(2000);

void BM_EmbedCorpus(benchmark::State& state) {
    auto corpus = make_corpus(static_cast<std::uint32_t>(state.range(0)), 300);
    m2v::EmbeddingConfig config{3, 4096, 0};
    unsigned workers = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(m2v::embed_corpus(corpus, config, workers));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * corpus.size());
}
BENCHMARK(BM_EmbedCorpus)->Args({50, 1})->Args({250, 1})->Args({250, 4})->Args({250, 8});

void BM_SpectrumBaseline(benchmark::State& state) {
    auto corpus = make_corpus(static_cast<std::uint32_t>(state.range(0)), 300);
    auto vocab = m2v::corpus_vocabulary(corpus, 3);
    for (auto _ : state) {
        std::uint64_t sink = 0;
        for (const auto& rec : corpus.records) {
            sink += m2v::spectrum_embed(m2v::count_kmers(rec.residues, 3), vocab).values.size();
        }
        benchmark::DoNotOptimize(sink);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * corpus.size());
}
BENCHMARK(BM_SpectrumBaseline)->Arg(50)->Arg(250);

void BM_SparseL1(benchmark::State& state) {
    auto corpus = make_corpus(10, 500);
    auto matrix = m2v::embed_corpus(corpus, {3, 4096, 0});
    for (auto _ : state) {
        std::uint64_t sink = 0;
        for (std::size_t i = 1; i < matrix.rows.size(); ++i) {
            sink += m2v::l1_distance(matrix.rows[i - 1], matrix.rows[i]);
        }
        benchmark::DoNotOptimize(sink);
    }
}
BENCHMARK(BM_SparseL1);

}  // namespace
