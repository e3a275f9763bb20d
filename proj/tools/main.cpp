// murmur2vec: hashing-based k-mer embeddings for biological sequences.
//
// Subcommands: hash, synth, embed, tune, evaluate, bench. Every run that
// writes files also writes a <prefix>.manifest.json recording the resolved
// configuration, input digests, timings, and output paths, so artifacts can
// be reproduced byte for byte.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "m2v/corpus.hpp"
#include "m2v/embed.hpp"
#include "m2v/errors.hpp"
#include "m2v/eval.hpp"
#include "m2v/kmer.hpp"
#include "m2v/matrix_io.hpp"
#include "m2v/murmur3.hpp"
#include "m2v/tune.hpp"
#include "m2v/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitArgument = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// M2V_OUTPUT_DIR redirects relative output paths.
fs::path resolve_output(const std::string& path) {
    fs::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("M2V_OUTPUT_DIR")) {
            return fs::path(dir) / p;
        }
    }
    return p;
}

std::string file_digest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw m2v::io_error("cannot open input file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    char hex[16];
    std::snprintf(hex, sizeof(hex), "%08x", m2v::murmur3_32(buffer.str()));
    return hex;
}

struct Manifest {
    json config = json::object();
    json input_digests = json::object();
    json timings = json::object();
    std::vector<std::string> outputs;

    void add_input(const std::string& role, const fs::path& path) {
        input_digests[role] = {{"path", path.string()}, {"digest", file_digest(path)}};
    }

    void write(const fs::path& path, const std::vector<std::string>& argv) {
        json m;
        m["tool_version"] = m2v::kToolVersion;
        m["format_version"] = m2v::kFormatVersion;
        m["command"] = argv;
        m["config"] = config;
        m["input_digests"] = input_digests;
        m["timings"] = timings;
        outputs.push_back(path.string());
        m["outputs"] = outputs;
        std::ofstream out(path);
        if (!out) {
            throw m2v::io_error("cannot write manifest: " + path.string());
        }
        out << m.dump(2) << '\n';
    }
};

json metrics_to_json(const m2v::MetricValues& v) {
    return {{"accuracy", v.accuracy},
            {"precision_weighted", v.precision_weighted},
            {"recall_weighted", v.recall_weighted},
            {"f1_weighted", v.f1_weighted},
            {"f1_macro", v.f1_macro}};
}

m2v::SynthSpec parse_synth_spec(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw m2v::io_error("cannot open synthetic spec: " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw m2v::data_error("invalid synthetic spec JSON: " + std::string(e.what()));
    }
    m2v::SynthSpec spec;
    try {
        spec.n_classes = j.at("n_classes").get<std::uint32_t>();
        if (j.at("seqs_per_class").is_array()) {
            spec.seqs_per_class = j.at("seqs_per_class").get<std::vector<std::uint32_t>>();
        } else {
            spec.seqs_per_class = {j.at("seqs_per_class").get<std::uint32_t>()};
        }
        spec.base_length = j.at("base_length").get<std::uint32_t>();
        spec.mutations_per_class = j.value("mutations_per_class", 0u);
        spec.noise_rate = j.value("noise_rate", 0.0);
        spec.rng_seed = j.value("rng_seed", 0ull);
    } catch (const json::exception& e) {
        throw m2v::data_error("invalid synthetic spec: " + std::string(e.what()));
    }
    return spec;
}

struct CorpusArgs {
    std::string fasta;
    std::string labels;
    bool skip_short = false;

    m2v::Corpus load(Manifest& manifest) const {
        manifest.add_input("fasta", fasta);
        std::optional<fs::path> labels_path;
        if (!labels.empty()) {
            labels_path = fs::path(labels);
            manifest.add_input("labels", *labels_path);
        }
        return m2v::load_fasta(fasta, labels_path);
    }
};

// ---------------------------------------------------------------------------

int cmd_hash(const std::string& input, std::uint32_t seed) {
    std::printf("%08x\n", m2v::murmur3_32(input, seed));
    return kExitOk;
}

int cmd_synth(const std::string& spec_path, const std::string& out_prefix,
              const std::vector<std::string>& argv) {
    Manifest manifest;
    manifest.add_input("spec", spec_path);
    m2v::SynthSpec spec = parse_synth_spec(spec_path);
    m2v::Corpus corpus = m2v::generate_synthetic(spec);

    fs::path prefix = resolve_output(out_prefix);
    fs::path fasta = prefix.string() + ".fasta";
    fs::path labels = prefix.string() + ".labels.csv";
    fs::path echo = prefix.string() + ".spec.json";
    m2v::write_fasta(corpus, fasta);
    m2v::write_labels_csv(corpus, labels);
    if (!fs::exists(echo) || !fs::equivalent(spec_path, echo)) {
        fs::copy_file(spec_path, echo, fs::copy_options::overwrite_existing);
    }

    manifest.config = {{"n_classes", spec.n_classes},
                       {"seqs_per_class", spec.seqs_per_class},
                       {"base_length", spec.base_length},
                       {"mutations_per_class", spec.mutations_per_class},
                       {"noise_rate", spec.noise_rate},
                       {"rng_seed", spec.rng_seed}};
    manifest.outputs = {fasta.string(), labels.string(), echo.string()};
    manifest.write(prefix.string() + ".manifest.json", argv);

    std::cout << "wrote " << corpus.size() << " records to " << fasta.string() << "\n";
    return kExitOk;
}

struct EmbedArgs {
    CorpusArgs corpus;
    std::uint32_t k = 3;
    std::uint64_t table_size = 0;
    double collision_target = -1.0;
    std::uint32_t seed = 0;
    std::string format = "dense";
    std::string normalize = "none";
    unsigned threads = std::thread::hardware_concurrency();
    std::string out_prefix;
};

m2v::Normalize parse_normalize(const std::string& s) {
    if (s == "none") return m2v::Normalize::none;
    if (s == "l1") return m2v::Normalize::l1;
    if (s == "l2") return m2v::Normalize::l2;
    throw m2v::argument_error("unknown normalization: " + s);
}

int cmd_embed(const EmbedArgs& args, const std::vector<std::string>& argv) {
    Manifest manifest;
    m2v::Corpus corpus = args.corpus.load(manifest);

    auto vocabulary = [&] {
        if (!args.corpus.skip_short) return m2v::corpus_vocabulary(corpus, args.k);
        m2v::Corpus kept;
        for (const auto& rec : corpus.records) {
            if (rec.residues.size() >= args.k) kept.records.push_back(rec);
        }
        if (kept.records.empty()) {
            throw m2v::data_error("no sequence long enough for k=" + std::to_string(args.k));
        }
        return m2v::corpus_vocabulary(kept, args.k);
    }();

    m2v::EmbeddingConfig config{args.k, args.table_size, args.seed};
    double collision_fraction = 0.0;
    double tune_time = 0.0;
    if (args.collision_target >= 0.0) {
        auto t0 = std::chrono::steady_clock::now();
        m2v::TuneResult tuned = m2v::tune_table_size(vocabulary, args.collision_target, args.seed);
        tune_time = seconds_since(t0);
        config.m = tuned.chosen_m;
        collision_fraction = tuned.achieved.collision_fraction;
    } else {
        collision_fraction =
            m2v::measure_collisions(vocabulary, config.m, args.seed).collision_fraction;
    }

    auto t0 = std::chrono::steady_clock::now();
    m2v::EmbeddingMatrix matrix =
        m2v::embed_corpus(corpus, config, args.threads, args.corpus.skip_short);
    double embed_time = seconds_since(t0);

    fs::path prefix = resolve_output(args.out_prefix);
    fs::path matrix_path = prefix.string() + (args.format == "dense" ? ".dense.csv" : ".sparse.csv");
    if (args.format == "dense") {
        m2v::write_dense_csv(matrix, matrix_path, parse_normalize(args.normalize));
    } else {
        m2v::write_sparse_csv(matrix, matrix_path, parse_normalize(args.normalize));
    }
    fs::path sidecar_path = prefix.string() + ".sidecar.json";
    m2v::write_sidecar(matrix, collision_fraction, sidecar_path);

    manifest.config = {{"k", args.k},
                       {"m", config.m},
                       {"seed", args.seed},
                       {"collision_target", args.collision_target},
                       {"format", args.format},
                       {"normalize", args.normalize},
                       {"threads", args.threads},
                       {"skip_short", args.corpus.skip_short}};
    manifest.timings = {{"embedding_generation_s", embed_time}, {"tune_s", tune_time}};
    manifest.outputs = {matrix_path.string(), sidecar_path.string()};
    manifest.write(prefix.string() + ".manifest.json", argv);

    std::printf("embedding_generation_s=%.6f collision_fraction=%.6f m=%llu\n", embed_time,
                collision_fraction, static_cast<unsigned long long>(config.m));
    return kExitOk;
}

int cmd_tune(const CorpusArgs& corpus_args, std::uint32_t k, std::uint32_t seed,
             const std::string& targets_csv, const std::string& out_prefix,
             const std::vector<std::string>& argv) {
    Manifest manifest;
    m2v::Corpus corpus = corpus_args.load(manifest);
    if (corpus.records.empty()) {
        throw m2v::data_error("empty corpus: " + corpus_args.fasta);
    }

    // Targets arrive in percent, matching how collision budgets are quoted.
    std::vector<double> targets;
    std::stringstream ss(targets_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            targets.push_back(std::stod(item) / 100.0);
        } catch (const std::exception&) {
            throw m2v::argument_error("invalid collision target: '" + item + "'");
        }
    }
    if (targets.empty()) {
        throw m2v::argument_error("no collision targets given");
    }

    auto vocabulary = m2v::corpus_vocabulary(corpus, k);
    auto t0 = std::chrono::steady_clock::now();
    auto results = m2v::collision_curve(vocabulary, targets, seed);
    double tune_time = seconds_since(t0);

    fs::path prefix = resolve_output(out_prefix);
    fs::path curve_path = prefix.string() + ".curve.csv";
    {
        std::ofstream out(curve_path);
        if (!out) {
            throw m2v::io_error("cannot write curve: " + curve_path.string());
        }
        out << "target,chosen_m,achieved_fraction\n";
        for (const auto& r : results) {
            char line[96];
            std::snprintf(line, sizeof(line), "%.6f,%llu,%.9f\n", r.target_fraction,
                          static_cast<unsigned long long>(r.chosen_m),
                          r.achieved.collision_fraction);
            out << line;
        }
    }

    fs::path results_path = prefix.string() + ".tune.json";
    {
        json out = json::array();
        for (const auto& r : results) {
            json probes = json::array();
            for (const auto& [m, fraction] : r.probes) {
                probes.push_back({{"m", m}, {"fraction", fraction}});
            }
            out.push_back({{"target_fraction", r.target_fraction},
                           {"chosen_m", r.chosen_m},
                           {"achieved",
                            {{"unique_kmers", r.achieved.unique_kmers},
                             {"occupied_buckets", r.achieved.occupied_buckets},
                             {"collision_fraction", r.achieved.collision_fraction},
                             {"m", r.achieved.m},
                             {"seed", r.achieved.seed},
                             {"k", r.achieved.k}}},
                           {"probes", probes}});
        }
        std::ofstream f(results_path);
        if (!f) {
            throw m2v::io_error("cannot write tune results: " + results_path.string());
        }
        f << out.dump(2) << '\n';
    }

    manifest.config = {{"k", k}, {"seed", seed}, {"targets", targets}};
    manifest.timings = {{"tune_s", tune_time}};
    manifest.outputs = {curve_path.string(), results_path.string()};
    manifest.write(prefix.string() + ".manifest.json", argv);

    std::cout << "wrote " << curve_path.string() << " (" << results.size() << " targets)\n";
    return kExitOk;
}

struct EvaluateArgs {
    CorpusArgs corpus;
    std::uint32_t k = 3;
    std::uint64_t table_size = 0;
    double collision_target = -1.0;
    std::uint32_t seed = 0;
    std::uint32_t runs = 5;
    double train_fraction = 0.7;
    std::uint64_t split_seed = 0;
    std::string knn_grid = "1,3,5";
    std::string metric = "euclidean";
    unsigned threads = std::thread::hardware_concurrency();
    std::string out_prefix;
};

int cmd_evaluate(const EvaluateArgs& args, const std::vector<std::string>& argv) {
    Manifest manifest;
    m2v::Corpus corpus = args.corpus.load(manifest);
    if (!corpus.fully_labeled()) {
        throw m2v::data_error("evaluate requires a fully labeled corpus");
    }

    m2v::ExperimentConfig config;
    config.embedding = {args.k, args.table_size, args.seed};
    config.collision_target = args.collision_target;
    config.split = {args.train_fraction, args.runs, args.split_seed, true};
    config.metric = args.metric == "manhattan" ? m2v::DistanceMetric::manhattan
                                               : m2v::DistanceMetric::euclidean;
    config.n_threads = args.threads;
    config.neighbor_grid.clear();
    std::stringstream ss(args.knn_grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
        config.neighbor_grid.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }

    m2v::ExperimentResult result = m2v::run_experiment(corpus, config);

    fs::path prefix = resolve_output(args.out_prefix);
    fs::path metrics_path = prefix.string() + ".metrics.json";
    {
        json out;
        out["metrics"] = metrics_to_json(result.report.mean);
        out["std_dev"] = metrics_to_json(result.report.std_dev);
        json per_run = json::array();
        for (const auto& run : result.report.per_run) per_run.push_back(metrics_to_json(run));
        out["per_run"] = per_run;
        out["chosen_neighbors"] = result.report.chosen_neighbors;
        out["chosen_m"] = result.chosen_m;
        out["collision_fraction"] = result.collision_fraction;
        out["timings"] = {{"embedding_generation_s", result.embed_time_s},
                          {"tune_s", result.tune_time_s},
                          {"train_s", result.report.train_time_s},
                          {"predict_s", result.report.predict_time_s}};
        std::ofstream f(metrics_path);
        if (!f) {
            throw m2v::io_error("cannot write metrics: " + metrics_path.string());
        }
        f << out.dump(2) << '\n';
    }

    // One row per run matching the usual results-table layout.
    fs::path row_path = prefix.string() + ".results.csv";
    {
        std::ofstream f(row_path);
        if (!f) {
            throw m2v::io_error("cannot write results row: " + row_path.string());
        }
        f << "collision,method,accuracy,precision,recall,f1_weighted,f1_macro,train_time_s\n";
        char line[256];
        std::snprintf(line, sizeof(line), "%.6f,KNN,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f\n",
                      result.collision_fraction, result.report.mean.accuracy,
                      result.report.mean.precision_weighted, result.report.mean.recall_weighted,
                      result.report.mean.f1_weighted, result.report.mean.f1_macro,
                      result.report.train_time_s);
        f << line;
    }

    manifest.config = {{"k", args.k},
                       {"m", result.chosen_m},
                       {"seed", args.seed},
                       {"collision_target", args.collision_target},
                       {"runs", args.runs},
                       {"train_fraction", args.train_fraction},
                       {"split_seed", args.split_seed},
                       {"knn_grid", args.knn_grid},
                       {"metric", args.metric},
                       {"threads", args.threads}};
    manifest.timings = {{"embedding_generation_s", result.embed_time_s},
                        {"tune_s", result.tune_time_s},
                        {"train_s", result.report.train_time_s},
                        {"predict_s", result.report.predict_time_s}};
    manifest.outputs = {metrics_path.string(), row_path.string()};
    manifest.write(prefix.string() + ".manifest.json", argv);

    std::printf("accuracy=%.4f f1_weighted=%.4f collision_fraction=%.6f m=%llu\n",
                result.report.mean.accuracy, result.report.mean.f1_weighted,
                result.collision_fraction, static_cast<unsigned long long>(result.chosen_m));
    return kExitOk;
}

struct BenchArgs {
    CorpusArgs corpus;
    std::uint32_t k = 3;
    std::uint32_t seed = 0;
    std::uint64_t table_size = 0;  // 0: use |vocabulary| for equal dimension
    unsigned repeats = 3;
    std::string out_prefix;
};

// Spectrum baseline: per k-mer, find its alphabetical bin by binary search
// over the vocabulary and add the count there.
void spectrum_embed_corpus(const m2v::Corpus& corpus, std::uint32_t k,
                           const std::vector<std::string>& vocabulary,
                           std::vector<std::vector<std::uint64_t>>& out) {
    out.clear();
    out.reserve(corpus.size());
    for (const auto& rec : corpus.records) {
        out.push_back(
            m2v::spectrum_embed(m2v::count_kmers(rec.residues, k, rec.id), vocabulary).values);
    }
}

int cmd_bench(const BenchArgs& args, const std::vector<std::string>& argv) {
    Manifest manifest;
    m2v::Corpus corpus = args.corpus.load(manifest);
    if (corpus.records.empty()) {
        throw m2v::data_error("empty corpus: " + args.corpus.fasta);
    }
    if (args.repeats < 1) {
        throw m2v::argument_error("bench repeats must be >= 1");
    }

    auto vocabulary = m2v::corpus_vocabulary(corpus, args.k);
    const std::uint64_t m = args.table_size == 0 ? vocabulary.size() : args.table_size;
    m2v::EmbeddingConfig config{args.k, m, args.seed};

    std::vector<double> hash_times, spectrum_times;
    for (unsigned r = 0; r < args.repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        auto matrix = m2v::embed_corpus(corpus, config);
        hash_times.push_back(seconds_since(t0));
        if (matrix.rows.size() != corpus.size()) {
            throw m2v::data_error("bench: embedding dropped rows");
        }

        std::vector<std::vector<std::uint64_t>> spectra;
        t0 = std::chrono::steady_clock::now();
        spectrum_embed_corpus(corpus, args.k, vocabulary, spectra);
        spectrum_times.push_back(seconds_since(t0));
    }

    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v.size() % 2 == 1 ? v[v.size() / 2]
                                 : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    };
    const double hash_median = median(hash_times);
    const double spectrum_median = median(spectrum_times);
    const double n_seqs = static_cast<double>(corpus.size());

    json report;
    report["n_sequences"] = corpus.size();
    report["k"] = args.k;
    report["m"] = m;
    report["vocabulary_size"] = vocabulary.size();
    report["repeats"] = args.repeats;
    report["murmur2vec_s_median"] = hash_median;
    report["spectrum_s_median"] = spectrum_median;
    report["murmur2vec_seqs_per_s"] = hash_median > 0 ? n_seqs / hash_median : 0.0;
    report["spectrum_seqs_per_s"] = spectrum_median > 0 ? n_seqs / spectrum_median : 0.0;
    report["speedup_ratio"] = hash_median > 0 ? spectrum_median / hash_median : 0.0;

    fs::path prefix = resolve_output(args.out_prefix);
    fs::path report_path = prefix.string() + ".bench.json";
    std::ofstream f(report_path);
    if (!f) {
        throw m2v::io_error("cannot write bench report: " + report_path.string());
    }
    f << report.dump(2) << '\n';

    manifest.config = {{"k", args.k}, {"seed", args.seed}, {"m", m}, {"repeats", args.repeats}};
    manifest.timings = {{"murmur2vec_s_median", hash_median},
                        {"spectrum_s_median", spectrum_median}};
    manifest.outputs = {report_path.string()};
    manifest.write(prefix.string() + ".manifest.json", argv);

    std::printf("murmur2vec_s=%.6f spectrum_s=%.6f speedup=%.3f\n", hash_median, spectrum_median,
                report["speedup_ratio"].get<double>());
    return kExitOk;
}

void add_corpus_options(CLI::App* cmd, CorpusArgs& args, bool require_labels) {
    cmd->add_option("--fasta", args.fasta, "Input FASTA file")->required();
    auto* labels = cmd->add_option("--labels", args.labels, "Labels CSV (id,label)");
    if (require_labels) labels->required();
    cmd->add_flag("--skip-short", args.skip_short,
                  "Skip sequences shorter than k instead of failing");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hashing-based k-mer embeddings for biological sequences"};
    app.set_version_flag("--version", std::string("murmur2vec ") + m2v::kToolVersion +
                                          " (format " + m2v::kFormatVersion + ")");
    app.require_subcommand(1);

    std::vector<std::string> full_argv(argv, argv + argc);

    // hash
    std::string hash_input;
    std::uint32_t hash_seed = 0;
    auto* hash_cmd = app.add_subcommand("hash", "Print the 32-bit digest of a string");
    hash_cmd->add_option("input", hash_input, "String to hash")->required();
    hash_cmd->add_option("--seed", hash_seed, "Hash seed");

    // synth
    std::string synth_spec, synth_prefix;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
    synth_cmd->add_option("--spec", synth_spec, "Synthetic spec JSON")->required();
    synth_cmd->add_option("--out-prefix", synth_prefix, "Output path prefix")->required();

    // embed
    EmbedArgs embed_args;
    auto* embed_cmd = app.add_subcommand("embed", "Embed a corpus into a hash table matrix");
    add_corpus_options(embed_cmd, embed_args.corpus, false);
    embed_cmd->add_option("--k", embed_args.k, "k-mer length")->check(CLI::PositiveNumber);
    auto* size_opt = embed_cmd->add_option("--table-size", embed_args.table_size,
                                           "Hash table size m");
    auto* target_opt = embed_cmd->add_option("--collision-target", embed_args.collision_target,
                                             "Collision fraction to tune m for, in [0,1)");
    size_opt->excludes(target_opt);
    target_opt->excludes(size_opt);
    embed_cmd->add_option("--seed", embed_args.seed, "Hash seed");
    embed_cmd->add_option("--format", embed_args.format, "Matrix format")
        ->check(CLI::IsMember({"dense", "sparse"}));
    embed_cmd->add_option("--normalize", embed_args.normalize, "Row normalization")
        ->check(CLI::IsMember({"none", "l1", "l2"}));
    embed_cmd->add_option("--threads", embed_args.threads, "Worker threads");
    embed_cmd->add_option("--out-prefix", embed_args.out_prefix, "Output path prefix")->required();

    // tune
    CorpusArgs tune_corpus;
    std::uint32_t tune_k = 3, tune_seed = 0;
    std::string tune_targets = "40,30,20,10,8,6,4,2,1,0.5,0.25,0";
    std::string tune_prefix;
    auto* tune_cmd = app.add_subcommand("tune", "Tune table sizes for collision targets");
    add_corpus_options(tune_cmd, tune_corpus, false);
    tune_cmd->add_option("--k", tune_k, "k-mer length")->check(CLI::PositiveNumber);
    tune_cmd->add_option("--seed", tune_seed, "Hash seed");
    tune_cmd->add_option("--targets", tune_targets, "Comma-separated collision targets, percent");
    tune_cmd->add_option("--out-prefix", tune_prefix, "Output path prefix")->required();

    // evaluate
    EvaluateArgs eval_args;
    auto* eval_cmd = app.add_subcommand("evaluate", "Stratified-split kNN classification");
    add_corpus_options(eval_cmd, eval_args.corpus, true);
    eval_cmd->add_option("--k", eval_args.k, "k-mer length")->check(CLI::PositiveNumber);
    auto* esize = eval_cmd->add_option("--table-size", eval_args.table_size, "Hash table size m");
    auto* etarget = eval_cmd->add_option("--collision-target", eval_args.collision_target,
                                         "Collision fraction to tune m for, in [0,1)");
    esize->excludes(etarget);
    etarget->excludes(esize);
    eval_cmd->add_option("--seed", eval_args.seed, "Hash seed");
    eval_cmd->add_option("--runs", eval_args.runs, "Number of split/score repetitions")
        ->check(CLI::PositiveNumber);
    eval_cmd->add_option("--train-fraction", eval_args.train_fraction, "Train share");
    eval_cmd->add_option("--split-seed", eval_args.split_seed, "Split RNG seed");
    eval_cmd->add_option("--knn-grid", eval_args.knn_grid, "Neighbor counts to validate over");
    eval_cmd->add_option("--metric", eval_args.metric, "Distance metric")
        ->check(CLI::IsMember({"euclidean", "manhattan"}));
    eval_cmd->add_option("--threads", eval_args.threads, "Worker threads");
    eval_cmd->add_option("--out-prefix", eval_args.out_prefix, "Output path prefix")->required();

    // bench
    BenchArgs bench_args;
    auto* bench_cmd =
        app.add_subcommand("bench", "Time hashed embedding against the spectrum baseline");
    add_corpus_options(bench_cmd, bench_args.corpus, false);
    bench_cmd->add_option("--k", bench_args.k, "k-mer length")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_args.seed, "Hash seed");
    bench_cmd->add_option("--table-size", bench_args.table_size,
                          "Hash table size (default: vocabulary size)");
    bench_cmd->add_option("--repeats", bench_args.repeats, "Timing repetitions")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out-prefix", bench_args.out_prefix, "Output path prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitArgument;
    }

    try {
        if (hash_cmd->parsed()) return cmd_hash(hash_input, hash_seed);
        if (synth_cmd->parsed()) return cmd_synth(synth_spec, synth_prefix, full_argv);
        if (embed_cmd->parsed()) {
            if (size_opt->count() == 0 && target_opt->count() == 0) {
                throw m2v::argument_error("embed: give exactly one of --table-size or --collision-target");
            }
            return cmd_embed(embed_args, full_argv);
        }
        if (tune_cmd->parsed()) {
            return cmd_tune(tune_corpus, tune_k, tune_seed, tune_targets, tune_prefix, full_argv);
        }
        if (eval_cmd->parsed()) {
            if (esize->count() == 0 && etarget->count() == 0) {
                throw m2v::argument_error(
                    "evaluate: give exactly one of --table-size or --collision-target");
            }
            return cmd_evaluate(eval_args, full_argv);
        }
        if (bench_cmd->parsed()) return cmd_bench(bench_args, full_argv);
    } catch (const m2v::argument_error& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return kExitArgument;
    } catch (const m2v::io_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const m2v::data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}
