#ifndef M2V_KMER_HPP
#define M2V_KMER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "m2v/corpus.hpp"

namespace m2v {

// Frequencies of the distinct k-mers of one sequence. entries.size() is
// bounded by total = n - k + 1, with equality when no window repeats.
struct KmerCounts {
    std::unordered_map<std::string, std::uint64_t> entries;
    std::uint32_t k = 0;
    std::uint64_t total = 0;  // n - k + 1
};

// Exact spectrum: counts arranged over a fixed alphabetically ordered
// vocabulary. The collision-free reference the hashed embedding is checked
// against, and the bin-search baseline for benchmarks.
struct SpectrumVector {
    std::vector<std::uint64_t> values;  // aligned with the vocabulary
};

// All n - k + 1 sliding windows, left to right.
std::vector<std::string> extract_kmers(std::string_view seq, std::uint32_t k);

// Same windows with multiplicities. seq_id is only used in error messages.
KmerCounts count_kmers(std::string_view seq, std::uint32_t k, std::string_view seq_id = {});

// Sorted, duplicate-free union of k-mers over all records.
std::vector<std::string> corpus_vocabulary(const Corpus& corpus, std::uint32_t k);

// values[i] = counts of vocabulary[i], zero when absent. Vocabulary must be
// sorted and duplicate-free; k-mers outside the vocabulary are ignored.
SpectrumVector spectrum_embed(const KmerCounts& counts,
                              const std::vector<std::string>& vocabulary);

}  // namespace m2v

#endif  // M2V_KMER_HPP
