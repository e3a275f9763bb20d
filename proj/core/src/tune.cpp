#include "m2v/tune.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "m2v/errors.hpp"
#include "m2v/murmur3.hpp"

namespace m2v {

namespace {

// Distinct-bucket count from precomputed digests; memory scales with the
// vocabulary, not with m.
std::uint64_t occupied_buckets(const std::vector<std::uint32_t>& digests, std::uint64_t m) {
    std::vector<std::uint64_t> buckets;
    buckets.reserve(digests.size());
    for (std::uint32_t d : digests) buckets.push_back(d % m);
    std::sort(buckets.begin(), buckets.end());
    return static_cast<std::uint64_t>(
        std::unique(buckets.begin(), buckets.end()) - buckets.begin());
}

CollisionReport make_report(const std::vector<std::uint32_t>& digests, std::uint64_t m,
                            std::uint32_t seed, std::uint32_t k) {
    CollisionReport report;
    report.unique_kmers = digests.size();
    report.occupied_buckets = occupied_buckets(digests, m);
    report.collision_fraction =
        1.0 - static_cast<double>(report.occupied_buckets) /
                  static_cast<double>(report.unique_kmers);
    report.m = m;
    report.seed = seed;
    report.k = k;
    return report;
}

std::vector<std::uint32_t> digest_vocabulary(const std::vector<std::string>& vocabulary,
                                             std::uint32_t seed) {
    std::vector<std::uint32_t> digests;
    digests.reserve(vocabulary.size());
    for (const auto& kmer : vocabulary) digests.push_back(murmur3_32(kmer, seed));
    return digests;
}

}  // namespace

CollisionReport measure_collisions(const std::vector<std::string>& vocabulary,
                                   std::uint64_t m, std::uint32_t seed) {
    if (vocabulary.empty()) {
        throw argument_error("measure_collisions: vocabulary is empty");
    }
    if (m == 0) {
        throw argument_error("measure_collisions: table size m must be >= 1");
    }
    const std::uint32_t k = static_cast<std::uint32_t>(vocabulary.front().size());
    return make_report(digest_vocabulary(vocabulary, seed), m, seed, k);
}

TuneResult tune_table_size(const std::vector<std::string>& vocabulary,
                           double target_fraction, std::uint32_t seed,
                           const SearchPolicy& policy) {
    if (vocabulary.empty()) {
        throw argument_error("tune_table_size: vocabulary is empty");
    }
    if (target_fraction < 0.0 || target_fraction >= 1.0) {
        throw argument_error("tune_table_size: target fraction must be in [0,1)");
    }

    const std::uint64_t u = vocabulary.size();
    const std::uint32_t k = static_cast<std::uint32_t>(vocabulary.front().size());
    const std::vector<std::uint32_t> digests = digest_vocabulary(vocabulary, seed);

    if (target_fraction == 0.0) {
        // Equal 32-bit digests collide at every m; report them rather than
        // search forever.
        std::unordered_map<std::uint32_t, std::size_t> seen;
        std::string clashes;
        for (std::size_t i = 0; i < digests.size(); ++i) {
            auto [it, fresh] = seen.emplace(digests[i], i);
            if (!fresh) {
                if (!clashes.empty()) clashes += ", ";
                clashes += "(" + vocabulary[it->second] + ", " + vocabulary[i] + ")";
            }
        }
        if (!clashes.empty()) {
            throw data_error(
                "0% collision unattainable: k-mers with identical 32-bit digests: " + clashes);
        }
    }

    TuneResult result;
    result.target_fraction = target_fraction;

    unsigned probes_left = policy.max_probes;
    auto probe = [&](std::uint64_t m) -> double {
        if (probes_left == 0) {
            throw data_error("tune_table_size: probe budget (" +
                             std::to_string(policy.max_probes) + ") exhausted");
        }
        --probes_left;
        double fraction = 1.0 - static_cast<double>(occupied_buckets(digests, m)) /
                                    static_cast<double>(u);
        result.probes.emplace_back(m, fraction);
        return fraction;
    };
    auto passes = [&](double fraction) { return fraction <= target_fraction; };

    // Never probe below U when aiming for injectivity.
    const std::uint64_t floor_m =
        target_fraction == 0.0 ? std::max<std::uint64_t>(policy.min_m, u)
                               : std::max<std::uint64_t>(policy.min_m, 1);

    const std::uint64_t m0 = std::max(floor_m, u);
    std::uint64_t fail_low = 0;   // largest known failing m (0 = none known)
    std::uint64_t pass_high = 0;  // smallest known passing m from the geometric phase

    if (passes(probe(m0))) {
        // Shrink toward floor_m looking for a failing bracket.
        pass_high = m0;
        std::uint64_t cur = m0;
        while (cur > floor_m) {
            std::uint64_t next = std::max(floor_m, cur / 2);
            if (passes(probe(next))) {
                pass_high = next;
                cur = next;
            } else {
                fail_low = next;
                break;
            }
        }
    } else {
        // Grow until the target is met.
        fail_low = m0;
        std::uint64_t cur = m0;
        for (;;) {
            cur = cur * 2;
            if (passes(probe(cur))) {
                pass_high = cur;
                break;
            }
            fail_low = cur;
        }
    }

    if (fail_low != 0) {
        // Bisect; only measured passes are accepted.
        while (pass_high - fail_low > 1) {
            std::uint64_t mid = fail_low + (pass_high - fail_low) / 2;
            if (passes(probe(mid))) {
                pass_high = mid;
            } else {
                fail_low = mid;
            }
        }
    }

    // The non-monotone fraction can make an early small probe pass even when
    // bisection settles higher; return the smallest verified pass.
    std::uint64_t chosen = pass_high;
    for (const auto& [m, fraction] : result.probes) {
        if (passes(fraction) && m < chosen) chosen = m;
    }

    result.chosen_m = chosen;
    result.achieved = make_report(digests, chosen, seed, k);
    return result;
}

std::vector<TuneResult> collision_curve(const std::vector<std::string>& vocabulary,
                                        const std::vector<double>& targets,
                                        std::uint32_t seed,
                                        const SearchPolicy& policy) {
    // Tune from loose to tight, flooring each search at the previous choice,
    // so table sizes are consistent along the curve.
    std::vector<std::size_t> order(targets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return targets[a] > targets[b]; });

    std::vector<TuneResult> results(targets.size());
    SearchPolicy step = policy;
    for (std::size_t idx : order) {
        results[idx] = tune_table_size(vocabulary, targets[idx], seed, step);
        step.min_m = std::max(step.min_m, results[idx].chosen_m);
    }
    return results;
}

}  // namespace m2v
