#pragma once

#include "ismq/kernels.hpp"
#include "ismq/system.hpp"

#include <cstdint>
#include <vector>

namespace ismq {

// mu(f_sigma(C_omega)) = p_0 p_sigma t_omega
Rational cylinder_mass(const ValidatedSystem& sys, const Word& sigma, const Word& omega);

// mu(f_sigma(K)) = p_sigma
Rational tail_mass(const ValidatedSystem& sys, const Word& sigma);

struct PieceMass {
    enum class Kind { cylinder, tail };

    Kind kind = Kind::cylinder;
    Word sigma;
    Word omega;  // empty for tails
    Rational mass;
    Rational diameter;
    Interval hull;
};

// Splits K along a finite maximal outer antichain: cylinders f_sigma(C) for
// every interior node sigma of the antichain's prefix tree, tails f_sigma(K)
// for sigma in the antichain. Masses sum to exactly 1.
std::vector<PieceMass> decompose(const ValidatedSystem& sys, std::span<const Word> gamma);

using kernels::SamplerModel;

SamplerModel sampler_model(const ValidatedSystem& sys);

// Self-similar measure of (maps, probs) alone (p_0 = 1 in a condensation model).
SamplerModel self_similar_model(std::span<const Similitude1D> maps, std::span<const Rational> probs);

// Draws from mu. Each draw stops descending the outer tree with probability
// p_0, then descends the inner tree until the cylinder is narrower than
// `resolution` and emits that cylinder's hull midpoint. resolution <= 0
// selects 2^-40 |hull C|. Deterministic per (seed, count, resolution) and
// independent of the thread count.
std::vector<double> sample(const SamplerModel& model, std::uint64_t seed, std::size_t count,
                           double resolution = 0);

}  // namespace ismq
