#pragma once

#include "neron/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace neron {

struct SuiteReport {
    std::string name;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    std::vector<json_io::Json> witnesses; // first few violations
    json_io::Json stats = json_io::Json::object();

    bool passed() const { return violations == 0; }
    json_io::Json to_json() const;
};

// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();
// Default budget of a suite (see README for units).
std::uint64_t default_budget(const std::string& suite);
// Throws InvalidArgument on an unknown name.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::uint64_t budget);

// Lemma 4.1, 4.4, 4.10 and the subgroup-pair form of 4.11 over all
// subgroups of all l-groups of order <= max_order, l in {2, 3}.
struct SubgroupSweep {
    SuiteReport lemma41;
    SuiteReport lemma44;
    SuiteReport lemma410;
    SuiteReport lemma411_pairs;
    std::uint64_t groups = 0;
    std::uint64_t subgroups = 0;
};
SubgroupSweep subgroup_sweep(std::uint64_t max_order);

SuiteReport suite_lemma43(std::uint64_t max_n);
SuiteReport suite_lemma411_partitions(std::uint64_t max_sum);
SuiteReport suite_lemma45(std::uint64_t seed, std::uint64_t per_prime);
SuiteReport suite_lemma48(std::uint64_t max_order);
SuiteReport suite_thm33(std::uint64_t seed, std::uint64_t random_sums);
SuiteReport suite_thm61(std::uint64_t max_d, std::uint64_t max_order = 200);
// delta_l >= delta'_l on every group of order <= 2^max_log2 (all primes).
SuiteReport suite_delta_vs_prime(unsigned max_log2);

} // namespace neron
