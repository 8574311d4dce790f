#include "spinwalls/stable_pairs.hpp"

#include "spinwalls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spinwalls {

double sigma_from_tau(double tau, double vol, double deg_E)
{
    if (!(vol > 0.0))
        throw ValidationError("volume must be positive");
    return tau * vol / (4.0 * std::numbers::pi) - 0.5 * deg_E;
}

double tau_from_sigma(double sigma, double vol, double deg_E)
{
    if (!(vol > 0.0))
        throw ValidationError("volume must be positive");
    return 4.0 * std::numbers::pi * (sigma + 0.5 * deg_E) / vol;
}

bool is_sigma_stable(const Rational& deg_L, bool section_in_L, const Rational& deg_E, const Rational& sigma)
{
    if (sigma < Rational(0))
        throw ValidationError("sigma must be nonnegative, got " + sigma.str());
    const Rational half = deg_E / Rational(2);
    return section_in_L ? deg_L < half - sigma : deg_L < half + sigma;
}

bool is_pair_stable(const std::vector<SubbundleCandidate>& candidates, const Rational& deg_E,
                    const Rational& sigma)
{
    return std::all_of(candidates.begin(), candidates.end(), [&](const SubbundleCandidate& c) {
        return is_sigma_stable(c.deg_L, c.has_section, deg_E, sigma);
    });
}

ClosedInterval nonempty_range(const Rational& deg_E)
{
    ClosedInterval out;
    if (deg_E < Rational(0))
        return out;
    out.empty = false;
    out.lo = 0;
    out.hi = deg_E / Rational(2);
    return out;
}

std::optional<std::size_t> FlipChain::chamber_of(const Rational& sigma) const
{
    for (std::size_t i = 0; i < chambers.size(); ++i)
        if (chambers[i].contains(sigma))
            return i;
    return std::nullopt;
}

FlipChain flip_chain(const Rational& deg_E)
{
    FlipChain chain;
    chain.deg_E = deg_E;
    if (deg_E <= Rational(0))
        return chain;
    const Rational half = deg_E / Rational(2);
    for (std::int64_t i = 0;; ++i) {
        const Rational hi = half - Rational(i);
        if (hi <= Rational(0))
            break;
        const Rational lo = std::max(Rational(0), hi - Rational(1));
        chain.chambers.push_back({lo, hi});
        if (lo > Rational(0))
            chain.critical_values.push_back(lo);
    }
    return chain;
}

} // namespace spinwalls
