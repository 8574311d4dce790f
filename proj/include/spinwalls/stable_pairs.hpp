#pragma once

#include "spinwalls/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spinwalls {

/// Converts the vortex parameter: sigma = tau vol / (4 pi) - deg_E / 2.
/// Floating point only; nothing exact consumes the result.
double sigma_from_tau(double tau, double vol, double deg_E);

/// Inverse of sigma_from_tau.
double tau_from_sigma(double sigma, double vol, double deg_E);

/// Stability inequality for one line subbundle L of a pair (E, s):
/// deg L < deg_E/2 - sigma when s lies in H^0(L), deg L < deg_E/2 + sigma
/// otherwise. Rejects sigma < 0.
bool is_sigma_stable(const Rational& deg_L, bool section_in_L, const Rational& deg_E, const Rational& sigma);

struct SubbundleCandidate {
    Rational deg_L;
    bool has_section = false;
};

/// A pair is stable when every supplied candidate passes.
bool is_pair_stable(const std::vector<SubbundleCandidate>& candidates, const Rational& deg_E,
                    const Rational& sigma);

/// Closed interval [lo, hi]; `empty` when no sigma is admissible.
struct ClosedInterval {
    bool empty = true;
    Rational lo;
    Rational hi;
};

/// Necessary condition for nonempty moduli: deg_E/2 >= sigma >= 0.
ClosedInterval nonempty_range(const Rational& deg_E);

struct OpenInterval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo < x && x < hi; }
    friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Chambers of constant sigma-stability, ordered by decreasing sigma; chamber
/// i is (max(0, deg_E/2 - i - 1), deg_E/2 - i).
struct FlipChain {
    Rational deg_E;
    std::vector<OpenInterval> chambers;
    /// Interior walls between adjacent chambers, decreasing.
    std::vector<Rational> critical_values;

    bool empty() const { return chambers.empty(); }
    /// Chamber mapping to the Brill-Noether locus M_{1,0}.
    const OpenInterval& max_chamber() const { return chambers.front(); }
    /// Chamber of nontrivial extensions.
    const OpenInterval& zero_chamber() const { return chambers.back(); }
    /// Index of the chamber containing sigma, if sigma lies in one.
    std::optional<std::size_t> chamber_of(const Rational& sigma) const;
};

/// Empty chain when deg_E <= 0.
FlipChain flip_chain(const Rational& deg_E);

} // namespace spinwalls
