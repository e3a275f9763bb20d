#include "m2v/kmer.hpp"

#include <algorithm>
#include <set>

#include "m2v/errors.hpp"

namespace m2v {

namespace {

void check_window(std::string_view seq, std::uint32_t k, std::string_view seq_id) {
    if (k == 0) {
        throw argument_error("k-mer length must be >= 1");
    }
    if (k > seq.size()) {
        std::string who = seq_id.empty() ? "sequence" : "sequence '" + std::string(seq_id) + "'";
        throw data_error(who + " too short for k=" + std::to_string(k) +
                         " (length " + std::to_string(seq.size()) + ")");
    }
}

}  // namespace

std::vector<std::string> extract_kmers(std::string_view seq, std::uint32_t k) {
    check_window(seq, k, {});
    std::vector<std::string> kmers;
    kmers.reserve(seq.size() - k + 1);
    for (std::size_t i = 0; i + k <= seq.size(); ++i) {
        kmers.emplace_back(seq.substr(i, k));
    }
    return kmers;
}

KmerCounts count_kmers(std::string_view seq, std::uint32_t k, std::string_view seq_id) {
    check_window(seq, k, seq_id);
    KmerCounts counts;
    counts.k = k;
    counts.total = seq.size() - k + 1;
    counts.entries.reserve(counts.total);
    for (std::size_t i = 0; i + k <= seq.size(); ++i) {
        ++counts.entries[std::string(seq.substr(i, k))];
    }
    return counts;
}

std::vector<std::string> corpus_vocabulary(const Corpus& corpus, std::uint32_t k) {
    std::set<std::string> vocab;
    for (const auto& rec : corpus.records) {
        check_window(rec.residues, k, rec.id);
        for (std::size_t i = 0; i + k <= rec.residues.size(); ++i) {
            vocab.insert(rec.residues.substr(i, k));
        }
    }
    return {vocab.begin(), vocab.end()};
}

SpectrumVector spectrum_embed(const KmerCounts& counts,
                              const std::vector<std::string>& vocabulary) {
    if (!std::is_sorted(vocabulary.begin(), vocabulary.end()) ||
        std::adjacent_find(vocabulary.begin(), vocabulary.end()) != vocabulary.end()) {
        throw argument_error("spectrum vocabulary must be sorted and duplicate-free");
    }
    SpectrumVector spectrum;
    spectrum.values.assign(vocabulary.size(), 0);
    for (const auto& [kmer, count] : counts.entries) {
        auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), kmer);
        if (it != vocabulary.end() && *it == kmer) {
            spectrum.values[static_cast<std::size_t>(it - vocabulary.begin())] = count;
        }
    }
    return spectrum;
}

}  // namespace m2v
