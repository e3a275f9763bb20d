#ifndef M2V_CORPUS_HPP
#define M2V_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace m2v {

struct SequenceRecord {
    std::string id;
    std::string residues;
    std::optional<std::string> label;
};

// Immutable once loaded; safe to share across threads.
struct Corpus {
    std::vector<SequenceRecord> records;
    // Sorted, duplicate-free set of labels present in the records.
    std::vector<std::string> label_set;

    std::size_t size() const { return records.size(); }
    bool fully_labeled() const;

    // Recomputes label_set from the records. Call after any mutation.
    void refresh_label_set();
};

// FASTA: '>' headers, id is the header up to the first whitespace,
// multi-line bodies joined and uppercased. Labels, when given, come from a
// headerless CSV of `id,label` rows covering a subset of the record ids;
// every id in the file must exist in the FASTA.
Corpus load_fasta(const std::filesystem::path& fasta_path,
                  const std::optional<std::filesystem::path>& labels_path = std::nullopt);

void write_fasta(const Corpus& corpus, const std::filesystem::path& fasta_path,
                 std::size_t line_width = 60);
void write_labels_csv(const Corpus& corpus, const std::filesystem::path& csv_path);

// Synthetic labeled corpus: one random ancestor, fixed class-defining
// substitutions at positions reserved per class, then independent
// per-position noise. A deterministic stand-in for restricted real data.
struct SynthSpec {
    std::uint32_t n_classes = 2;
    std::vector<std::uint32_t> seqs_per_class;  // one entry, or one per class
    std::uint32_t base_length = 100;
    std::uint32_t mutations_per_class = 2;
    double noise_rate = 0.0;
    std::uint64_t rng_seed = 0;
};

Corpus generate_synthetic(const SynthSpec& spec);

// 20-letter amino acid alphabet used by the generator.
inline constexpr const char* kAminoAlphabet = "ACDEFGHIKLMNPQRSTVWY";

}  // namespace m2v

#endif  // M2V_CORPUS_HPP
