#pragma once

#include "ismq/order.hpp"
#include "ismq/system.hpp"

#include <cstddef>
#include <vector>

namespace ismq {

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

struct PartitionOptions {
    std::size_t node_budget = kDefaultNodeBudget;  // words visited per build
};

// p_sigma s_sigma^r and t_rho c_rho^r as comparable levels
Level outer_level(const CondensationSystem& sys, const Order& r, const Word& sigma);
Level inner_level(const CondensationSystem& sys, const Order& r, const Word& rho);

// eta_r = min over all p_i s_i^r and t_j c_j^r; eta_bar_r the same with max
Level eta_lo(const CondensationSystem& sys, const Order& r);
Level eta_hi(const CondensationSystem& sys, const Order& r);

// eta_r^k, k >= 1
Level threshold(const CondensationSystem& sys, const Order& r, unsigned k);

// Words sigma with p_{sigma-} s_{sigma-}^r >= eta_r^k > p_sigma s_sigma^r,
// listed in lexicographic order.
Antichain build_gamma(const CondensationSystem& sys, const Order& r, unsigned k, const PartitionOptions& opts = {});

struct PsiResult {
    std::vector<Word> psi;          // interior nodes of Gamma, by length then lexicographically
    std::vector<Word> lambda_star;  // interior nodes of length >= l1
};

PsiResult build_psi(const Antichain& gamma);

// Inner words rho with p_sigma s_sigma^r t_{rho-} c_{rho-}^r >= eta_r^k > p_sigma s_sigma^r t_rho c_rho^r.
// Throws unless sigma belongs to Psi_{k,r}.
Antichain build_inner(const CondensationSystem& sys, const Order& r, unsigned k, const Word& sigma,
                      const PartitionOptions& opts = {});

struct PartitionBundle {
    unsigned k = 1;
    Order r{1.0};
    Antichain gamma;
    std::vector<Word> psi;
    std::vector<Word> lambda_star;
    std::vector<Antichain> inner;  // inner[i] belongs to psi[i]
    std::size_t N_kr = 0;
    std::vector<std::size_t> M_kr;  // M_kr[i] = |inner[i]|
    std::size_t phi = 0;
    std::size_t l1 = 0;
    std::size_t l2 = 0;
    // threshold comparisons that fell inside the float guard band (always 0 for exact r)
    std::size_t boundary_comparisons = 0;
};

PartitionBundle build_partition(const CondensationSystem& sys, const Order& r, unsigned k,
                                const PartitionOptions& opts = {});

// I_k(s) = sum_Psi sum_Gamma(sigma) (p_sigma s_sigma^r t_rho c_rho^r)^{s/(s+r)} + sum_Gamma (p_sigma s_sigma^r)^{s/(s+r)}
long double I_k(const CondensationSystem& sys, const PartitionBundle& b, double s);

struct GrowthConstants {
    Level eta_lo;
    Level eta_hi;
    unsigned H = 1;
    BigInt D;
    BigInt d1;
};

GrowthConstants growth_constants(const CondensationSystem& sys, const Order& r);

}  // namespace ismq
