#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aswn/cache.hpp"
#include "aswn/dwork.hpp"
#include "aswn/lfun.hpp"
#include "aswn/report.hpp"

namespace aswn {
namespace cli {

// One verification instance: everything needed to pin down L_f(omega^u, chi, s).
struct Instance {
    long p = 3;
    int a = 1;
    std::vector<std::vector<std::uint32_t>> f; // a_0..a_d, each length a
    std::uint64_t u = 0;
    int m = 1;
    std::uint64_t r = 1;
    // optional overrides
    int M = 0;
    int K_tau = 0;
    int n_rows = 0;
    std::uint64_t budget_per_sum = 10'000'000;
    std::uint64_t budget_total = 100'000'000;

    int d() const { return static_cast<int>(f.size()) - 1; }
    std::uint64_t q() const;
    int D() const; // d * p^{m-1}
};

Instance instance_from_json(const Json& j);
Json instance_echo(const Instance& inst);
void validate(const Instance& inst);

// Shared L pipeline: tower, sums through l = D (+extra), L, its p-adic Newton
// polygon, and the scaled Hodge/upper bounds on [0, D].
struct LRun {
    FieldTower tower;
    FqPoly fq;
    LPoly L;
    NewtonResult nr;
    Polygon hp_scaled;
    Polygon up_scaled;
};
LRun l_pipeline(const Instance& inst, const ExpSumCache* cache, int extra_levels = 0);

// l_json, when given, receives the full L-polynomial serialization.
Report run_lpoly(const Instance& inst, const ExpSumCache* cache, std::string* l_json = nullptr);
Report run_verify_main(const Instance& inst, const ExpSumCache* cache);
Report run_verify_strong(const Instance& inst, const std::vector<int>& m_list,
                         const ExpSumCache* cache);
Report run_verify_decompose(const Instance& inst, const ExpSumCache* cache);
Report run_verify_independent(const Instance& inst, const std::vector<std::uint64_t>& r_list,
                              const ExpSumCache* cache);
Report run_verify_dwork(const Instance& inst, const ExpSumCache* cache);
Report run_verify_distance(const Instance& inst);
Report run_distance_sweep(long p_max, int a_max, int d_max);

// Oracle equivalence and the exact degree bound, sums through l = min(D+2, budget).
Report run_verify_oracle(const Instance& inst, const ExpSumCache* cache);

std::uint64_t dry_run_cost(const Instance& inst, const std::string& command);
int exit_code_for(const Report& rep); // 0 all pass, 1 any normative failure

} // namespace cli
} // namespace aswn
