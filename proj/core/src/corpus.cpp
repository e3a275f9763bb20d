#include "m2v/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "m2v/errors.hpp"

namespace m2v {

bool Corpus::fully_labeled() const {
    return std::all_of(records.begin(), records.end(),
                       [](const SequenceRecord& r) { return r.label.has_value(); });
}

void Corpus::refresh_label_set() {
    std::set<std::string> labels;
    for (const auto& rec : records) {
        if (rec.label) labels.insert(*rec.label);
    }
    label_set.assign(labels.begin(), labels.end());
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Corpus load_fasta(const std::filesystem::path& fasta_path,
                  const std::optional<std::filesystem::path>& labels_path) {
    std::ifstream in(fasta_path);
    if (!in) {
        throw io_error("cannot open FASTA file: " + fasta_path.string());
    }

    Corpus corpus;
    std::unordered_map<std::string, std::size_t> index_of;
    std::string line;
    bool have_record = false;
    SequenceRecord current;

    auto flush = [&] {
        if (!have_record) return;
        if (current.residues.empty()) {
            throw data_error("empty sequence for record '" + current.id + "' in " +
                             fasta_path.string());
        }
        if (!index_of.emplace(current.id, corpus.records.size()).second) {
            throw data_error("duplicate record id '" + current.id + "' in " +
                             fasta_path.string());
        }
        corpus.records.push_back(std::move(current));
        current = {};
    };

    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '>') {
            flush();
            have_record = true;
            std::size_t ws = line.find_first_of(" \t", 1);
            current.id = line.substr(1, ws == std::string::npos ? std::string::npos : ws - 1);
            if (current.id.empty()) {
                throw data_error("FASTA header with empty id in " + fasta_path.string());
            }
        } else {
            if (!have_record) {
                throw data_error("sequence data before first FASTA header in " +
                                 fasta_path.string());
            }
            for (char c : line) {
                current.residues.push_back(
                    static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
            }
        }
    }
    flush();

    if (labels_path) {
        std::ifstream lin(*labels_path);
        if (!lin) {
            throw io_error("cannot open labels file: " + labels_path->string());
        }
        while (std::getline(lin, line)) {
            line = trim(line);
            if (line.empty()) continue;
            std::size_t comma = line.find(',');
            if (comma == std::string::npos) {
                throw data_error("labels row without comma: '" + line + "'");
            }
            std::string id = trim(line.substr(0, comma));
            std::string label = trim(line.substr(comma + 1));
            auto it = index_of.find(id);
            if (it == index_of.end()) {
                throw data_error("labels file references unknown record id '" + id + "'");
            }
            corpus.records[it->second].label = label;
        }
    }

    corpus.refresh_label_set();
    return corpus;
}

void write_fasta(const Corpus& corpus, const std::filesystem::path& fasta_path,
                 std::size_t line_width) {
    std::ofstream out(fasta_path);
    if (!out) {
        throw io_error("cannot write FASTA file: " + fasta_path.string());
    }
    for (const auto& rec : corpus.records) {
        out << '>' << rec.id << '\n';
        for (std::size_t i = 0; i < rec.residues.size(); i += line_width) {
            out << rec.residues.substr(i, line_width) << '\n';
        }
    }
}

void write_labels_csv(const Corpus& corpus, const std::filesystem::path& csv_path) {
    std::ofstream out(csv_path);
    if (!out) {
        throw io_error("cannot write labels file: " + csv_path.string());
    }
    for (const auto& rec : corpus.records) {
        if (rec.label) out << rec.id << ',' << *rec.label << '\n';
    }
}

}  // namespace m2v
