#include "m2v/embed.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "m2v/errors.hpp"
#include "m2v/murmur3.hpp"

namespace m2v {

std::uint64_t EmbeddingVector::sum() const {
    std::uint64_t total = 0;
    for (const auto& [bucket, count] : nonzeros) total += count;
    return total;
}

std::vector<std::uint64_t> EmbeddingVector::dense() const {
    std::vector<std::uint64_t> out(m, 0);
    for (const auto& [bucket, count] : nonzeros) out[bucket] = count;
    return out;
}

EmbeddingVector murmur2vec(const KmerCounts& counts, const EmbeddingConfig& config) {
    if (counts.k != config.k) {
        throw argument_error("murmur2vec: counts built with k=" + std::to_string(counts.k) +
                             " but config.k=" + std::to_string(config.k));
    }
    if (config.m == 0) {
        throw argument_error("murmur2vec: table size m must be >= 1");
    }

    // std::map keeps buckets sorted; addition makes the result independent
    // of the iteration order over counts.entries.
    std::map<std::uint64_t, std::uint64_t> buckets;
    for (const auto& [kmer, count] : counts.entries) {
        buckets[bucket_of(kmer, config.seed, config.m)] += count;
    }

    EmbeddingVector vec;
    vec.m = config.m;
    vec.nonzeros.assign(buckets.begin(), buckets.end());
    return vec;
}

EmbeddingMatrix embed_corpus(const Corpus& corpus, const EmbeddingConfig& config,
                             unsigned n_threads, bool skip_short) {
    EmbeddingMatrix matrix;
    matrix.config = config;

    // Select rows first so the parallel section sees a fixed work list.
    std::vector<const SequenceRecord*> selected;
    selected.reserve(corpus.size());
    for (const auto& rec : corpus.records) {
        if (rec.residues.size() < config.k) {
            if (!skip_short) {
                throw data_error("sequence '" + rec.id + "' too short for k=" +
                                 std::to_string(config.k) + " (length " +
                                 std::to_string(rec.residues.size()) + ")");
            }
            matrix.skipped_ids.push_back(rec.id);
            continue;
        }
        selected.push_back(&rec);
    }

    matrix.rows.resize(selected.size());
    matrix.ids.resize(selected.size());
    matrix.labels.resize(selected.size());

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const SequenceRecord& rec = *selected[i];
            matrix.rows[i] = murmur2vec(count_kmers(rec.residues, config.k, rec.id), config);
            matrix.ids[i] = rec.id;
            matrix.labels[i] = rec.label;
        }
    };

    if (n_threads <= 1 || selected.size() < 2) {
        work(0, selected.size());
    } else {
        const unsigned workers = std::min<std::size_t>(n_threads, selected.size());
        std::vector<std::thread> threads;
        threads.reserve(workers);
        const std::size_t chunk = (selected.size() + workers - 1) / workers;
        for (unsigned t = 0; t < workers; ++t) {
            std::size_t begin = t * chunk;
            std::size_t end = std::min(begin + chunk, selected.size());
            if (begin >= end) break;
            threads.emplace_back(work, begin, end);
        }
        for (auto& th : threads) th.join();
    }

    return matrix;
}

namespace {

template <typename Op>
std::uint64_t merge_sparse(const EmbeddingVector& a, const EmbeddingVector& b, Op op) {
    if (a.m != b.m) {
        throw argument_error("distance between embeddings of different table sizes");
    }
    std::uint64_t acc = 0;
    std::size_t i = 0, j = 0;
    while (i < a.nonzeros.size() || j < b.nonzeros.size()) {
        if (j == b.nonzeros.size() ||
            (i < a.nonzeros.size() && a.nonzeros[i].first < b.nonzeros[j].first)) {
            acc += op(a.nonzeros[i].second, 0);
            ++i;
        } else if (i == a.nonzeros.size() || b.nonzeros[j].first < a.nonzeros[i].first) {
            acc += op(0, b.nonzeros[j].second);
            ++j;
        } else {
            acc += op(a.nonzeros[i].second, b.nonzeros[j].second);
            ++i;
            ++j;
        }
    }
    return acc;
}

std::uint64_t abs_diff(std::uint64_t x, std::uint64_t y) { return x > y ? x - y : y - x; }

}  // namespace

std::uint64_t l1_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
    return merge_sparse(a, b, [](std::uint64_t x, std::uint64_t y) { return abs_diff(x, y); });
}

std::uint64_t squared_l2_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
    return merge_sparse(a, b, [](std::uint64_t x, std::uint64_t y) {
        std::uint64_t d = abs_diff(x, y);
        return d * d;
    });
}

std::uint64_t l1_distance(const std::vector<std::uint64_t>& a,
                          const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) {
        throw argument_error("distance between vectors of different lengths");
    }
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += abs_diff(a[i], b[i]);
    return acc;
}

std::uint64_t squared_l2_distance(const std::vector<std::uint64_t>& a,
                                  const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) {
        throw argument_error("distance between vectors of different lengths");
    }
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t d = abs_diff(a[i], b[i]);
        acc += d * d;
    }
    return acc;
}

}  // namespace m2v
