// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criteria 9 partly exercises the CLI binary, whose path is
// expected as argv[1]; without it that part degrades to the library check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "m2v/corpus.hpp"
#include "m2v/embed.hpp"
#include "m2v/eval.hpp"
#include "m2v/kmer.hpp"
#include "m2v/murmur3.hpp"
#include "m2v/rng.hpp"
#include "m2v/tune.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_binary;
fs::path g_dir;
int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

void run_criterion(int criterion, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(criterion, name, ok, detail);
}

m2v::Corpus synth(std::uint32_t n_classes, std::uint32_t per_class, std::uint32_t length,
                  std::uint32_t mutations, double noise, std::uint64_t seed) {
    m2v::SynthSpec spec;
    spec.n_classes = n_classes;
    spec.seqs_per_class = {per_class};
    spec.base_length = length;
    spec.mutations_per_class = mutations;
    spec.noise_rate = noise;
    spec.rng_seed = seed;
    return m2v::generate_synthetic(spec);
}

// --- criterion 1: hash conformance --------------------------------------

struct HashVector {
    const char* input;
    std::uint32_t seed;
    std::uint32_t expected;
};

// Independent-reference digests; lengths 0 to 33 bytes, seeds 0, 1 and
// 0x9747b28c. Same provenance as the unit-test table.
constexpr HashVector kVectors[] = {
    {"", 0x00000000u, 0x00000000u},
    {"a", 0x00000000u, 0x3c2569b2u},
    {"ab", 0x00000000u, 0x9bbfd75fu},
    {"abc", 0x00000000u, 0xb3dd93fau},
    {"abcd", 0x00000000u, 0x43ed676au},
    {"abcde", 0x00000000u, 0xe89b9af6u},
    {"AAA", 0x00000000u, 0x6df3db36u},
    {"MDPEG", 0x00000000u, 0x955f308eu},
    {"GATTACA", 0x00000000u, 0x95ea4e2bu},
    {"Hello, world!", 0x00000000u, 0xc0363e43u},
    {"MFVFLVLLPLVSSQCVNLT", 0x00000000u, 0x3c38449fu},
    {"0123456789012345678901234567890", 0x00000000u, 0x7a47869au},
    {"01234567890123456789012345678901", 0x00000000u, 0x86db10e5u},
    {"012345678901234567890123456789012", 0x00000000u, 0x51272d94u},
    {"", 0x00000001u, 0x514e28b7u},
    {"a", 0x00000001u, 0x588adce8u},
    {"abcd", 0x00000001u, 0x9bf54592u},
    {"MDPEG", 0x00000001u, 0x3c04dae7u},
    {"GATTACA", 0x00000001u, 0x662c4b3cu},
    {"01234567890123456789012345678901", 0x00000001u, 0x5428ed16u},
    {"012345678901234567890123456789012", 0x00000001u, 0x784f537cu},
    {"", 0x9747b28cu, 0xebb6c228u},
    {"a", 0x9747b28cu, 0x7fa09ea6u},
    {"abcd", 0x9747b28cu, 0xf0478627u},
    {"MDPEG", 0x9747b28cu, 0xbad353c0u},
    {"GATTACA", 0x9747b28cu, 0x462f97eau},
    {"0123456789012345678901234567890", 0x9747b28cu, 0xc8b31f37u},
    {"012345678901234567890123456789012", 0x9747b28cu, 0xac416a98u},
};

bool criterion1(std::string& detail) {
    int checked = 0;
    for (const auto& v : kVectors) {
        if (m2v::murmur3_32(v.input, v.seed) != v.expected) {
            detail = std::string("mismatch for input '") + v.input + "'";
            return false;
        }
        ++checked;
    }
    detail = std::to_string(checked) + " vectors exact";
    return checked >= 20;
}

// --- criterion 2: avalanche ----------------------------------------------

bool criterion2(std::string& detail) {
    m2v::Rng rng(0xa5a5a5a5ull);
    const int trials = 100000;
    int flips[32] = {0};
    for (int i = 0; i < trials; ++i) {
        std::size_t len = 1 + rng.next_below(32);
        std::string s(len, '\0');
        for (auto& c : s) c = static_cast<char>(rng.next_below(256));
        std::uint32_t seed = static_cast<std::uint32_t>(rng.next_u64());
        std::uint32_t before = m2v::murmur3_32(s, seed);
        std::size_t bit = rng.next_below(len * 8);
        s[bit / 8] = static_cast<char>(s[bit / 8] ^ (1 << (bit % 8)));
        std::uint32_t diff = before ^ m2v::murmur3_32(s, seed);
        for (int b = 0; b < 32; ++b) flips[b] += (diff >> b) & 1u;
    }
    double worst = 0.0;
    for (int b = 0; b < 32; ++b) {
        double rate = static_cast<double>(flips[b]) / trials;
        worst = std::max(worst, std::abs(rate - 0.5));
        if (std::abs(rate - 0.5) > 0.02) {
            detail = "output bit " + std::to_string(b) + " flip rate " + std::to_string(rate);
            return false;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max |rate-0.5| = %.4f over %d trials", worst, trials);
    detail = buf;
    return true;
}

// --- criterion 3: conservation --------------------------------------------

bool criterion3(std::string& detail) {
    // 1000 random sequences with lengths in [50, 1500]
    m2v::Rng rng(77);
    m2v::Corpus corpus;
    for (int i = 0; i < 1000; ++i) {
        std::size_t len = 50 + rng.next_below(1451);
        std::string seq(len, '?');
        for (auto& c : seq) c = m2v::kAminoAlphabet[rng.next_below(20)];
        corpus.records.push_back({"s" + std::to_string(i), seq, {}});
    }

    for (std::uint32_t k : {3u, 5u}) {
        std::vector<std::uint64_t> sizes = {1, 64};
        if (k == 3) {
            // a collision-free table exists for the small k=3 vocabulary;
            // the k=5 vocabulary is large enough to contain 32-bit digest
            // clashes, which no table size can separate
            auto vocab = m2v::corpus_vocabulary(corpus, k);
            sizes.push_back(m2v::tune_table_size(vocab, 0.0, 0).chosen_m);
        } else {
            sizes.push_back(1 << 20);
        }
        for (std::uint64_t m : sizes) {
            auto matrix = m2v::embed_corpus(corpus, {k, m, 0});
            for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
                std::uint64_t expected = corpus.records[i].residues.size() - k + 1;
                if (matrix.rows[i].sum() != expected) {
                    detail = "row " + std::to_string(i) + " at k=" + std::to_string(k) +
                             " m=" + std::to_string(m);
                    return false;
                }
            }
        }
    }
    detail = "1000 rows exact for k in {3,5} over three table sizes each";
    return true;
}

// --- criterion 4: spectrum equivalence at 0% collision ---------------------

bool criterion4(std::string& detail) {
    m2v::Corpus corpus = synth(4, 25, 150, 3, 0.01, 404);
    auto vocab = m2v::corpus_vocabulary(corpus, 3);
    auto tuned = m2v::tune_table_size(vocab, 0.0, 0);
    if (tuned.achieved.collision_fraction != 0.0) {
        detail = "tuner did not reach fraction 0";
        return false;
    }
    auto matrix = m2v::embed_corpus(corpus, {3, tuned.chosen_m, 0});

    std::vector<m2v::SpectrumVector> spectra;
    for (const auto& rec : corpus.records) {
        spectra.push_back(m2v::spectrum_embed(m2v::count_kmers(rec.residues, 3), vocab));
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (std::size_t j = i + 1; j < corpus.size(); ++j) {
            if (m2v::l1_distance(matrix.rows[i], matrix.rows[j]) !=
                    m2v::l1_distance(spectra[i].values, spectra[j].values) ||
                m2v::squared_l2_distance(matrix.rows[i], matrix.rows[j]) !=
                    m2v::squared_l2_distance(spectra[i].values, spectra[j].values)) {
                detail = "distance mismatch for pair (" + std::to_string(i) + "," +
                         std::to_string(j) + ")";
                return false;
            }
        }
    }
    detail = "all pairwise L1 and squared-L2 distances equal at m=" +
             std::to_string(tuned.chosen_m);
    return true;
}

// --- criterion 5: tuner contract -------------------------------------------

bool criterion5(std::string& detail) {
    m2v::Corpus corpus = synth(5, 1000, 300, 4, 0.02, 505);  // 5000 sequences
    auto vocab = m2v::corpus_vocabulary(corpus, 3);

    std::vector<double> grid = {0.40, 0.30, 0.20, 0.10, 0.08, 0.06,
                                0.04, 0.02, 0.01, 0.005, 0.0025, 0.0};
    auto results = m2v::collision_curve(vocab, grid, 0);

    std::uint64_t prev_m = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (results[i].achieved.collision_fraction > grid[i]) {
            detail = "target " + std::to_string(grid[i]) + " not met";
            return false;
        }
        // independent recount
        std::set<std::uint64_t> buckets;
        for (const auto& kmer : vocab) {
            buckets.insert(m2v::murmur3_32(kmer, 0) % results[i].chosen_m);
        }
        double brute = 1.0 - static_cast<double>(buckets.size()) /
                                 static_cast<double>(vocab.size());
        if (std::abs(brute - results[i].achieved.collision_fraction) > 1e-12) {
            detail = "brute-force recount disagrees at target " + std::to_string(grid[i]);
            return false;
        }
        if (results[i].chosen_m < prev_m) {
            detail = "chosen_m not monotone at target " + std::to_string(grid[i]);
            return false;
        }
        prev_m = results[i].chosen_m;
    }
    detail = "12 targets verified, U=" + std::to_string(vocab.size()) +
             ", m(0%)=" + std::to_string(prev_m);
    return true;
}

// --- criterion 6: end-to-end classification --------------------------------

bool criterion6(std::string& detail) {
    m2v::Corpus corpus = synth(5, 200, 500, 4, 0.005, 606);

    m2v::ExperimentConfig config;
    config.embedding = {3, 0, 0};
    config.split = {0.7, 5, 6061, true};
    config.n_threads = 4;

    config.collision_target = 0.0;
    auto at_zero = m2v::run_experiment(corpus, config);
    config.collision_target = 0.40;
    auto at_forty = m2v::run_experiment(corpus, config);

    char buf[128];
    std::snprintf(buf, sizeof(buf), "acc(0%%)=%.4f acc(40%%)=%.4f",
                  at_zero.report.mean.accuracy, at_forty.report.mean.accuracy);
    detail = buf;
    if (at_zero.report.mean.accuracy < 0.95) return false;
    return std::abs(at_forty.report.mean.accuracy - at_zero.report.mean.accuracy) <= 0.05;
}

// --- criterion 7: kNN oracle equivalence -----------------------------------

bool criterion7(std::string& detail) {
    m2v::Rng rng(707);
    const char* labels[] = {"a", "b", "c", "d"};
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n_train = 10 + rng.next_below(150);
        std::size_t n_test = 1 + rng.next_below(50);
        std::uint64_t dims = 2 + rng.next_below(8);
        auto random_point = [&](void) {
            m2v::EmbeddingVector v;
            v.m = dims;
            for (std::uint64_t i = 0; i < dims; ++i) {
                std::uint64_t value = rng.next_below(5);
                if (value != 0) v.nonzeros.emplace_back(i, value);
            }
            return v;
        };
        std::vector<m2v::EmbeddingVector> train, test;
        std::vector<std::string> train_labels;
        for (std::size_t i = 0; i < n_train; ++i) {
            train.push_back(random_point());
            train_labels.push_back(labels[rng.next_below(4)]);
        }
        for (std::size_t i = 0; i < n_test; ++i) test.push_back(random_point());
        std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.next_below(9));
        auto metric = trial % 2 == 0 ? m2v::DistanceMetric::euclidean
                                     : m2v::DistanceMetric::manhattan;

        auto fast = m2v::knn_classify(train, train_labels, test, k, metric);

        // oracle: full sort with identical tie rules
        std::vector<std::string> slow;
        for (const auto& q : test) {
            std::vector<std::pair<std::uint64_t, std::size_t>> d;
            for (std::size_t i = 0; i < train.size(); ++i) {
                d.emplace_back(metric == m2v::DistanceMetric::euclidean
                                   ? m2v::squared_l2_distance(q, train[i])
                                   : m2v::l1_distance(q, train[i]),
                               i);
            }
            std::sort(d.begin(), d.end());
            std::map<std::string, int> votes;
            for (std::uint32_t j = 0; j < k; ++j) ++votes[train_labels[d[j].second]];
            std::string best;
            int best_votes = -1;
            for (const auto& [label, count] : votes) {
                if (count > best_votes) {
                    best = label;
                    best_votes = count;
                }
            }
            slow.push_back(best);
        }
        if (fast != slow) {
            detail = "mismatch on instance " + std::to_string(trial);
            return false;
        }
    }
    detail = "50 random instances exact";
    return true;
}

// --- criterion 8: metrics correctness --------------------------------------

bool criterion8(std::string& detail) {
    m2v::Rng rng(808);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n_classes = 2 + rng.next_below(21);  // up to 22
        std::vector<std::string> label_set;
        for (std::size_t c = 0; c < n_classes; ++c) {
            label_set.push_back("L" + std::string(c < 10 ? "0" : "") + std::to_string(c));
        }
        std::size_t n = 2 + rng.next_below(200);
        std::vector<std::string> truth, pred;
        for (std::size_t i = 0; i < n; ++i) {
            truth.push_back(label_set[rng.next_below(n_classes)]);
            pred.push_back(label_set[rng.next_below(n_classes)]);
        }

        auto fast = m2v::compute_metrics(truth, pred, label_set);

        // independent confusion-matrix recomputation
        m2v::MetricValues slow;
        std::size_t correct = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (truth[i] == pred[i]) ++correct;
        }
        slow.accuracy = static_cast<double>(correct) / static_cast<double>(n);
        for (const auto& c : label_set) {
            double tp = 0, fp = 0, fn = 0, support = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (truth[i] == c) {
                    ++support;
                    if (pred[i] == c) {
                        ++tp;
                    } else {
                        ++fn;
                    }
                } else if (pred[i] == c) {
                    ++fp;
                }
            }
            double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
            double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
            double f1 = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
            double w = support / static_cast<double>(n);
            slow.precision_weighted += w * p;
            slow.recall_weighted += w * r;
            slow.f1_weighted += w * f1;
            slow.f1_macro += f1;
        }
        slow.f1_macro /= static_cast<double>(n_classes);

        auto close = [](double a, double b) {
            double scale = std::max({1.0, std::abs(a), std::abs(b)});
            return std::abs(a - b) <= 1e-12 * scale;
        };
        if (!close(fast.accuracy, slow.accuracy) ||
            !close(fast.precision_weighted, slow.precision_weighted) ||
            !close(fast.recall_weighted, slow.recall_weighted) ||
            !close(fast.f1_weighted, slow.f1_weighted) ||
            !close(fast.f1_macro, slow.f1_macro)) {
            detail = "mismatch on trial " + std::to_string(trial);
            return false;
        }
    }
    detail = "1000 random labelings within 1e-12 relative";
    return true;
}

// --- criterion 9: determinism and parallel safety ---------------------------

int run_cmd(const std::string& args) {
    std::string cmd = g_binary + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion9(std::string& detail) {
    m2v::Corpus corpus = synth(4, 250, 300, 3, 0.01, 909);  // 1000 sequences

    if (g_binary.empty()) {
        detail = "no CLI binary given";
        return false;
    }

    fs::path fasta = g_dir / "det.fasta";
    fs::path labels = g_dir / "det.labels.csv";
    m2v::write_fasta(corpus, fasta);
    m2v::write_labels_csv(corpus, labels);

    // byte-identical matrix files across worker counts
    std::string base = "embed --fasta " + fasta.string() + " --k 3 --table-size 4096 "
                       "--format sparse --out-prefix ";
    if (run_cmd(base + (g_dir / "w1").string() + " --threads 1") != 0 ||
        run_cmd(base + (g_dir / "w8").string() + " --threads 8") != 0) {
        detail = "embed invocation failed";
        return false;
    }
    if (slurp(g_dir / "w1.sparse.csv") != slurp(g_dir / "w8.sparse.csv") ||
        slurp(g_dir / "w1.sidecar.json") != slurp(g_dir / "w8.sidecar.json")) {
        detail = "matrix files differ across worker counts";
        return false;
    }

    // identical evaluate outputs for identical seeds (timings excluded:
    // they are wall-clock by definition)
    std::string eval_base = "evaluate --fasta " + fasta.string() + " --labels " +
                            labels.string() +
                            " --k 3 --table-size 4096 --runs 3 --split-seed 99 --out-prefix ";
    if (run_cmd(eval_base + (g_dir / "e1").string()) != 0 ||
        run_cmd(eval_base + (g_dir / "e2").string()) != 0) {
        detail = "evaluate invocation failed";
        return false;
    }
    json a = json::parse(slurp(g_dir / "e1.metrics.json"));
    json b = json::parse(slurp(g_dir / "e2.metrics.json"));
    a.erase("timings");
    b.erase("timings");
    if (a != b) {
        detail = "metrics JSON differs between identical invocations";
        return false;
    }
    detail = "matrix bytes and metrics identical";
    return true;
}

// --- criterion 10: relative speed -------------------------------------------

bool criterion10(std::string& detail) {
    m2v::Corpus corpus = synth(5, 1000, 300, 4, 0.02, 1010);  // 5000 sequences
    auto vocab = m2v::corpus_vocabulary(corpus, 3);
    const std::uint64_t m = vocab.size();  // equal output dimension

    auto now = [] { return std::chrono::steady_clock::now(); };
    auto secs = [](auto a, auto b) { return std::chrono::duration<double>(b - a).count(); };

    std::vector<double> hashed, spectrum;
    for (int rep = 0; rep < 3; ++rep) {
        auto t0 = now();
        auto matrix = m2v::embed_corpus(corpus, {3, m, 0});
        auto t1 = now();
        hashed.push_back(secs(t0, t1));
        if (matrix.rows.size() != corpus.size()) {
            detail = "row count mismatch";
            return false;
        }

        t0 = now();
        std::uint64_t sink = 0;
        for (const auto& rec : corpus.records) {
            auto sv = m2v::spectrum_embed(m2v::count_kmers(rec.residues, 3, rec.id), vocab);
            sink += sv.values.size();
        }
        t1 = now();
        spectrum.push_back(secs(t0, t1));
        if (sink == 0) {
            detail = "spectrum produced nothing";
            return false;
        }
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    double h = median(hashed), s = median(spectrum);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "murmur2vec %.3fs vs spectrum %.3fs (ratio %.2f)", h, s,
                  h > 0 ? s / h : 0.0);
    detail = buf;
    return h < s;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc >= 2) g_binary = argv[1];
    g_dir = fs::temp_directory_path() / "m2v_acceptance";
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    run_criterion(1, "hash conformance", criterion1);
    run_criterion(2, "avalanche", criterion2);
    run_criterion(3, "conservation", criterion3);
    run_criterion(4, "spectrum equivalence at 0% collision", criterion4);
    run_criterion(5, "tuner contract", criterion5);
    run_criterion(6, "end-to-end classification", criterion6);
    run_criterion(7, "kNN oracle equivalence", criterion7);
    run_criterion(8, "metrics correctness", criterion8);
    run_criterion(9, "determinism and parallel safety", criterion9);
    run_criterion(10, "relative speed", criterion10);

    fs::remove_all(g_dir);
    if (g_failures != 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
