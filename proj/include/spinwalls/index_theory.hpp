#pragma once

#include "spinwalls/lattice.hpp"
#include "spinwalls/rational.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace spinwalls {

/// Topological type of a rank-2 bundle.
struct BundleTopology {
    LatticeVector c1;
    std::int64_t c2 = 0;

    std::int64_t p1(const IntegerLattice& lattice) const;
};

/// Jumping level r >= 1 together with the data the jumping locus depends on.
class JumpingType {
public:
    JumpingType(int r, SpinCStructure spin, BundleTopology bundle);

    int r() const { return r_; }
    const SpinCStructure& spin() const { return spin_; }
    const BundleTopology& bundle() const { return bundle_; }
    /// The locus depends only on c1 + C and p1.
    LatticeVector twisted_class() const { return bundle_.c1 + spin_.c(); }

private:
    int r_;
    SpinCStructure spin_;
    BundleTopology bundle_;
};

/// Index of a coupled Dirac operator with its sanity flags.
struct DiracIndex {
    Rational value;
    bool integral = true;
    /// False when the supplied C is not characteristic; the value is still
    /// computed but carries no geometric meaning.
    bool characteristic = true;
};

/// chi_C(L_delta) = 1/2 delta.(delta + C) + 1/8 (C^2 - I).
DiracIndex chi_line(const IntegerLattice& lattice, const LatticeVector& C, const LatticeVector& delta,
                    std::int64_t index_I);

/// chi_C(E) = 1/2 (c1^2 - 2 c2 + c1.C) + 1/4 (C^2 - I); additive over any
/// topological splitting E = L_delta + L_{c1 - delta}.
DiracIndex chi_rank2(const IntegerLattice& lattice, const LatticeVector& C, const BundleTopology& bundle,
                     std::int64_t index_I);

/// Expected codimension of the level-r jumping locus: 2 r^2 - 2 r chi.
Rational vcodim_jumping(int r, const Rational& chi);

/// Expected codimension of the Brill-Noether locus: h0 (h0 - chi).
std::int64_t brill_noether_vcodim(std::int64_t h0, std::int64_t chi);

struct InstantonDimension {
    std::int64_t vdim = 0;
    /// vdim / 2 (the polynomial degree) when vdim is even.
    std::optional<std::int64_t> degree;
    /// False flags a violated evenness claim (b_plus even).
    bool even = true;
};

/// Simply connected Donaldson dimension -2 p1 - 3 (1 + b_plus).
InstantonDimension vdim_instanton(std::int64_t p1, int b_plus);
InstantonDimension vdim_instanton(const IntegerLattice& lattice, const BundleTopology& bundle, int b_plus);

struct JumpingDimension {
    Rational vdim;
    /// vdim / 2 when vdim is an even integer.
    std::optional<std::int64_t> half;
};

/// Expected dimension of the jumping locus, vdim_instanton - vcodim_jumping.
/// Non-even results are reported through an empty `half`.
JumpingDimension jumping_vdim(std::int64_t p1, int b_plus, int r, const Rational& chi);

/// Twisting by L_lambda: (c1, C) -> (c1 + 2 lambda, C - 2 lambda).
std::pair<LatticeVector, LatticeVector> shift(const LatticeVector& c1, const LatticeVector& C,
                                              const LatticeVector& lambda);

} // namespace spinwalls
