#pragma once

#include "ismq/order.hpp"
#include "ismq/partition.hpp"
#include "ismq/system.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ismq {

struct MarkerOptions {
    unsigned depth = 12;
    std::size_t node_budget = 1'000'000;
};

struct SeparationData {
    Word tau0;
    Word rho0;
    Interval tau0_image = Interval::closed(0, 1);  // f_tau0(hull K)
    Interval rho0_image = Interval::closed(0, 1);  // g_rho0(hull C)
    Interval W = Interval::open(0, 1);             // eps0/2-neighbourhood of hull C
    Interval V = Interval::open(0, 1);             // int J, U and W intersected, J = hull C
    Rational eps0;
    Rational delta0, delta1, delta2, delta3;
    Rational delta;
};

// Shortest nonempty outer word (then inner word) certifying open containment,
// searched breadth-first in lexicographic order.
SeparationData find_markers(const ValidatedSystem& sys, const MarkerOptions& opts = {});

// The separation constant for pieces measured at the system's own scale:
// delta / |hull K|. Equal to delta when |hull K| = 1.
Rational separation_constant(const ValidatedSystem& sys, const SeparationData& m);

struct TestPiece {
    enum class Kind { cylinder, tail };

    Kind kind = Kind::cylinder;
    Word sigma;  // before appending tau0
    Word rho;    // before appending rho0; empty for tails
    Interval hull = Interval::closed(0, 1);
    Rational mass;
    Rational diameter;
};

// f_{sigma tau0}(C_{rho rho0}) for sigma in Psi, rho in Gamma(sigma); then f_{sigma tau0}(K) for sigma in Gamma.
std::vector<TestPiece> test_family(const ValidatedSystem& sys, const PartitionBundle& b, const SeparationData& m);

struct SeparationReport {
    bool pass = true;
    std::size_t pairs = 0;
    // smallest d(A1, A2) / max(|A1|, |A2|) over all pairs
    Rational min_ratio;
    // first violating pair (i < j) in lexicographic order
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

// d(A1, A2) >= delta max(|A1|, |A2|) for every unordered pair, exact.
SeparationReport verify_separation(const std::vector<TestPiece>& pieces, const Rational& delta);
SeparationReport verify_separation_serial(const std::vector<TestPiece>& pieces, const Rational& delta);

struct EnergyReport {
    Level H1, H2, H3, H4;
    Level d2, d3;
    Rational d4;
    Rational total_mass;  // mu(G_{k,r})
    long double min_energy = 0;
    long double max_energy = 0;
    // d3 eta^k <= E(A) < d2 eta^k, and the weaker E(A) < d2 eta_bar^k
    std::size_t lower_violations = 0;
    std::size_t upper_violations = 0;
    std::size_t weak_upper_violations = 0;
    std::size_t boundary_comparisons = 0;

    bool band_holds() const noexcept {
        return lower_violations == 0 && upper_violations == 0 && weak_upper_violations == 0;
    }
    bool mass_holds() const { return total_mass >= d4; }
};

EnergyReport energy_bounds(const ValidatedSystem& sys, const PartitionBundle& b, const SeparationData& m,
                           const std::vector<TestPiece>& pieces);

struct StoppingSums {
    // sum_Psi sum_Gamma(sigma) p_sigma s_sigma^r t_rho c_rho^r and sum_Gamma p_sigma s_sigma^r;
    // exact when r is an integer
    std::optional<Rational> cylinder_exact, tail_exact;
    long double cylinder = 0;
    long double tail = 0;
};

StoppingSums stopping_sums(const ValidatedSystem& sys, const PartitionBundle& b);

struct LowerSum {
    std::optional<Rational> exact;
    long double value = 0;
};

LowerSum lower_sum(const ValidatedSystem& sys, const PartitionBundle& b);

struct UpperBound {
    std::optional<Rational> exact;
    long double value = 0;  // bound on e_{phi,r}^r
    std::vector<double> codebook;  // sorted midpoints of the pieces f_sigma(C_rho) and f_sigma(K)
};

UpperBound upper_bound(const ValidatedSystem& sys, const PartitionBundle& b);

}  // namespace ismq
