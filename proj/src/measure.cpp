#include "ismq/measure.hpp"

#include "ismq/error.hpp"

#include <cmath>

namespace ismq {

Rational cylinder_mass(const ValidatedSystem& sys, const Word& sigma, const Word& omega) {
    return sys->p0() * weight(sigma, sys->outer_weights()) * weight(omega, sys->inner_weights());
}

Rational tail_mass(const ValidatedSystem& sys, const Word& sigma) {
    return weight(sigma, sys->outer_weights());
}

std::vector<PieceMass> decompose(const ValidatedSystem& sys, std::span<const Word> gamma) {
    const auto check = check_maximal_antichain(gamma, sys->N());
    if (!check.maximal()) throw Error("not_maximal", "decompose needs a finite maximal antichain");

    const Rational hK = sys.hull_K().length();
    const Rational hC = sys.hull_C().length();
    std::vector<PieceMass> out;
    for (const Word& sigma : strict_prefixes(gamma)) {
        const Similitude1D f = compose(sys->outer(), sigma);
        out.push_back({PieceMass::Kind::cylinder, sigma, Word(sys->M()), cylinder_mass(sys, sigma, Word(sys->M())),
                       f.ratio() * hC, image(f, sys.hull_C())});
    }
    for (const Word& sigma : gamma) {
        const Similitude1D f = compose(sys->outer(), sigma);
        out.push_back({PieceMass::Kind::tail, sigma, Word(sys->M()), tail_mass(sys, sigma), f.ratio() * hK,
                       image(f, sys.hull_K())});
    }
    return out;
}

SamplerModel sampler_model(const ValidatedSystem& sys) {
    SamplerModel m;
    for (const auto& f : sys->outer()) m.outer.push_back({f.scale().get_d(), f.offset().get_d()});
    for (const auto& p : sys->outer_probs()) m.outer_probs.push_back(p.get_d());
    for (const auto& g : sys->inner()) m.inner.push_back({g.scale().get_d(), g.offset().get_d()});
    for (const auto& t : sys->inner_probs()) m.inner_probs.push_back(t.get_d());
    m.hull_lo = sys.hull_C().lo.get_d();
    m.hull_hi = sys.hull_C().hi.get_d();
    return m;
}

SamplerModel self_similar_model(std::span<const Similitude1D> maps, std::span<const Rational> probs) {
    if (maps.size() != probs.size()) throw Error("bad_system", "one probability per map required");
    Rational total = 0;
    for (const auto& t : probs) total += t;
    if (total != 1) throw Error("bad_system", "probabilities must sum to 1");
    const Interval h = attractor_hull(maps);
    SamplerModel m;
    m.outer_probs = {1.0};
    for (std::size_t j = 0; j < maps.size(); ++j) {
        m.inner.push_back({maps[j].scale().get_d(), maps[j].offset().get_d()});
        m.inner_probs.push_back(probs[j].get_d());
    }
    m.hull_lo = h.lo.get_d();
    m.hull_hi = h.hi.get_d();
    return m;
}

std::vector<double> sample(const SamplerModel& model, std::uint64_t seed, std::size_t count, double resolution) {
    if (model.outer_probs.empty() || !(model.outer_probs.front() > 0))
        throw Error("bad_model", "sampler needs p_0 > 0");
    if (model.inner.empty()) throw Error("bad_model", "sampler needs at least one inner map");
    if (resolution <= 0) resolution = std::ldexp(model.hull_hi - model.hull_lo, -40);
    std::vector<double> out(count);
    kernels::omp::sample(model, seed, resolution, out);
    return out;
}

}  // namespace ismq
