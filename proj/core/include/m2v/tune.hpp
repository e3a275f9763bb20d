#ifndef M2V_TUNE_HPP
#define M2V_TUNE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace m2v {

// Corpus-level collision accounting for one (vocabulary, m, seed):
// collision_fraction = 1 - occupied_buckets / unique_kmers, i.e. the share
// of vocabulary entries that lost a bucket of their own.
struct CollisionReport {
    std::uint64_t unique_kmers = 0;     // U
    std::uint64_t occupied_buckets = 0; // B
    double collision_fraction = 0.0;    // 1 - B/U
    std::uint64_t m = 0;
    std::uint32_t seed = 0;
    std::uint32_t k = 0;
};

struct SearchPolicy {
    unsigned max_probes = 64;
    std::uint64_t min_m = 1;  // lower bound on probed table sizes
};

struct TuneResult {
    double target_fraction = 0.0;
    std::uint64_t chosen_m = 0;
    CollisionReport achieved;
    std::vector<std::pair<std::uint64_t, double>> probes;  // (m, fraction) in probe order
};

CollisionReport measure_collisions(const std::vector<std::string>& vocabulary,
                                   std::uint64_t m, std::uint32_t seed);

// Smallest probed m whose measured fraction is <= target. Probes move
// geometrically from U toward the target side, then bisect between the last
// failing and first passing probe; every accepted m is backed by an exact
// measurement (the fraction is not strictly monotone in m). A target of 0 is
// unattainable when two vocabulary entries share a 32-bit digest; that case
// fails fast with the colliding pairs listed.
TuneResult tune_table_size(const std::vector<std::string>& vocabulary,
                           double target_fraction, std::uint32_t seed,
                           const SearchPolicy& policy = {});

// One TuneResult per target. Targets are tuned in descending order and each
// search is floored at the previous choice, so chosen_m is non-decreasing as
// the target decreases; results come back in the caller's target order.
std::vector<TuneResult> collision_curve(const std::vector<std::string>& vocabulary,
                                        const std::vector<double>& targets,
                                        std::uint32_t seed,
                                        const SearchPolicy& policy = {});

}  // namespace m2v

#endif  // M2V_TUNE_HPP
