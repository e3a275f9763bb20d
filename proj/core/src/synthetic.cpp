#include <cstring>
#include <string>
#include <vector>

#include "m2v/corpus.hpp"
#include "m2v/errors.hpp"
#include "m2v/rng.hpp"

namespace m2v {

namespace {

std::string pad3(std::uint32_t v) {
    std::string s = std::to_string(v);
    return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

}  // namespace

Corpus generate_synthetic(const SynthSpec& spec) {
    const std::size_t alpha_n = std::strlen(kAminoAlphabet);

    if (spec.n_classes == 0 || spec.base_length == 0) {
        throw argument_error("synthetic spec: n_classes and base_length must be positive");
    }
    if (spec.seqs_per_class.empty() ||
        (spec.seqs_per_class.size() != 1 && spec.seqs_per_class.size() != spec.n_classes)) {
        throw argument_error("synthetic spec: seqs_per_class needs 1 or n_classes entries");
    }
    for (std::uint32_t c : spec.seqs_per_class) {
        if (c == 0) throw argument_error("synthetic spec: seqs_per_class entries must be positive");
    }
    if (spec.noise_rate < 0.0 || spec.noise_rate > 1.0) {
        throw argument_error("synthetic spec: noise_rate must be in [0,1]");
    }
    if (static_cast<std::uint64_t>(spec.mutations_per_class) * spec.n_classes > spec.base_length) {
        throw data_error("infeasible synthetic spec: mutations_per_class * n_classes exceeds base_length");
    }

    Rng rng(spec.rng_seed);

    // Random ancestor sequence.
    std::string ancestor(spec.base_length, '?');
    for (auto& c : ancestor) {
        c = kAminoAlphabet[rng.next_below(alpha_n)];
    }

    // Reserve disjoint mutation positions per class.
    std::vector<std::size_t> positions(spec.base_length);
    for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
    rng.shuffle(positions);

    std::vector<std::string> consensus(spec.n_classes, ancestor);
    std::size_t next_pos = 0;
    for (std::uint32_t c = 0; c < spec.n_classes; ++c) {
        for (std::uint32_t j = 0; j < spec.mutations_per_class; ++j) {
            std::size_t pos = positions[next_pos++];
            char old = ancestor[pos];
            char repl = old;
            while (repl == old) {
                repl = kAminoAlphabet[rng.next_below(alpha_n)];
            }
            consensus[c][pos] = repl;
        }
    }

    Corpus corpus;
    std::uint64_t record_index = 0;
    for (std::uint32_t c = 0; c < spec.n_classes; ++c) {
        const std::uint32_t n_seqs =
            spec.seqs_per_class.size() == 1 ? spec.seqs_per_class[0] : spec.seqs_per_class[c];
        const std::string label = "class_" + pad3(c);
        for (std::uint32_t s = 0; s < n_seqs; ++s, ++record_index) {
            SequenceRecord rec;
            rec.id = label + "_seq_" + pad3(s);
            rec.label = label;
            rec.residues = consensus[c];
            if (spec.noise_rate > 0.0) {
                // Per-record stream so record content does not depend on
                // how many records precede it.
                Rng noise(Rng::derive(spec.rng_seed, record_index));
                for (auto& ch : rec.residues) {
                    if (noise.next_double() < spec.noise_rate) {
                        char old = ch;
                        while (ch == old) {
                            ch = kAminoAlphabet[noise.next_below(alpha_n)];
                        }
                    }
                }
            }
            corpus.records.push_back(std::move(rec));
        }
    }

    corpus.refresh_label_set();
    return corpus;
}

}  // namespace m2v
