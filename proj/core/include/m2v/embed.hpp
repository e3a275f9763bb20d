#ifndef M2V_EMBED_HPP
#define M2V_EMBED_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "m2v/corpus.hpp"
#include "m2v/kmer.hpp"

namespace m2v {

struct EmbeddingConfig {
    std::uint32_t k = 3;
    std::uint64_t m = 1;    // hash table size; the embedding dimension
    std::uint32_t seed = 0; // single global hash seed
};

// One hashed feature vector. Kept sparse internally: nonzero buckets are at
// most the number of distinct k-mers of the sequence, while m may be in the
// millions. Conceptually this is a length-m vector of non-negative counts
// summing to n - k + 1 (counts are added into buckets, never overwritten).
struct EmbeddingVector {
    // (bucket, count), strictly ascending by bucket, counts > 0.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> nonzeros;
    std::uint64_t m = 0;

    std::uint64_t sum() const;
    std::vector<std::uint64_t> dense() const;
};

struct EmbeddingMatrix {
    std::vector<EmbeddingVector> rows;  // corpus record order
    std::vector<std::string> ids;
    std::vector<std::optional<std::string>> labels;
    std::vector<std::string> skipped_ids;  // short sequences under skip-short
    EmbeddingConfig config;
};

EmbeddingVector murmur2vec(const KmerCounts& counts, const EmbeddingConfig& config);

// Row i embeds record i. n_threads > 1 fans out across records; the result
// is identical for any worker count. skip_short downgrades too-short
// sequences from an error to an entry in skipped_ids.
EmbeddingMatrix embed_corpus(const Corpus& corpus, const EmbeddingConfig& config,
                             unsigned n_threads = 1, bool skip_short = false);

// Exact distances on the sparse representation.
std::uint64_t l1_distance(const EmbeddingVector& a, const EmbeddingVector& b);
std::uint64_t squared_l2_distance(const EmbeddingVector& a, const EmbeddingVector& b);

std::uint64_t l1_distance(const std::vector<std::uint64_t>& a,
                          const std::vector<std::uint64_t>& b);
std::uint64_t squared_l2_distance(const std::vector<std::uint64_t>& a,
                                  const std::vector<std::uint64_t>& b);

}  // namespace m2v

#endif  // M2V_EMBED_HPP
