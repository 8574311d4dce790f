#pragma once

#include "spinwalls/lattice.hpp"
#include "spinwalls/walls.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spinwalls {

/// Numerical invariants of a compact complex algebraic surface.
struct SurfaceInvariants {
    std::int64_t K_square = 0;
    /// Topological Euler characteristic; derived from Noether when absent.
    std::optional<std::int64_t> c2_top;
    std::int64_t p_g = 0;
    std::int64_t q = 0;
};

struct SurfaceReport {
    std::int64_t K_square = 0;
    std::int64_t c2_top = 0;
    std::int64_t p_g = 0;
    std::int64_t q = 0;
    std::int64_t chi_O = 0;
    Rational index;
    std::int64_t b_plus = 0;
    std::int64_t b_minus = 0;
    std::int64_t b2 = 0;
    /// Named identities that fail; empty when the data are consistent.
    std::vector<std::string> violations;

    bool consistent() const { return violations.empty(); }
    /// Throws ValidationError listing the violations.
    void require_consistent() const;
};

/// Noether K^2 + c2 = 12 chi(O), I = (K^2 - 2 c2) / 3, b+ = 2 p_g + 1,
/// b- = c2 - 2 + 4q - b+, and I = b+ - b-.
SurfaceReport surface_consistency(const SurfaceInvariants& s);

/// -K^2 < 8(r - 1) - 8(p_g - q), i.e. 8r > -I for the surface.
bool spin_invariance_threshold(const SurfaceInvariants& s, int r);

/// chi(E) = 2 chi(O) + (c1^2 - c1.K) / 2 - c2. Rejects odd c1^2 - c1.K.
std::int64_t riemann_roch_rank2(const SurfaceInvariants& s, std::int64_t c1_dot_K, std::int64_t c1_square,
                                std::int64_t c2);

struct BrillNoetherLocus {
    std::int64_t i = 0;
    std::int64_t j = 0;
    LatticeVector c1;
    std::int64_t c2 = 0;

    friend bool operator==(const BrillNoetherLocus&, const BrillNoetherLocus&) = default;
};

/// E -> E* (x) K: M_{i,j}(c1, c2) = M_{j,i}(2K - c1, c2 - c1.K + K^2).
BrillNoetherLocus serre_dual_locus(const IntegerLattice& lattice, const LatticeVector& K,
                                   const BrillNoetherLocus& locus);

/// Cohomology of a bundle at a point of the jumping locus together with the
/// Serre-duality form q_E on H^1.
struct NormalConeDatum {
    std::int64_t h0 = 0;
    std::int64_t h1 = 0;
    std::int64_t h2 = 0;
    bool q_nondegenerate = true;
    /// The light cone of q_E is {0}.
    bool isotropic_cone_trivial = true;

    /// Over C a quadratic form on a space of dimension >= 2 always has
    /// nonzero isotropic vectors; in dimension 1 only the zero form does.
    static NormalConeDatum over_complex_numbers(std::int64_t h0, std::int64_t h1, std::int64_t h2,
                                                bool q_nondegenerate);
};

struct Multiplicity {
    enum class Status { determined, not_determined, out_of_scope };

    Status status = Status::out_of_scope;
    std::optional<std::int64_t> value;
};

const char* to_string(Multiplicity::Status s);

/// Scheme multiplicity of a point of M_{1,0} when h0 = 1: the normal cone is
/// the light cone of q_E, so a trivial light cone gives multiplicity 2.
Multiplicity normal_cone_multiplicity(const NormalConeDatum& d);

struct BarlowReport {
    SurfaceReport surface;
    std::int64_t base_points = 0;
    NormalConeDatum cohomology;
    std::int64_t chi_E = 0;
    std::int64_t chi_E_dirac = 0;
    std::int64_t p1 = 0;
    std::int64_t vdim = 0;
    Rational vcodim_jumping;
    std::int64_t brill_noether_vcodim = 0;
    std::int64_t multiplicity = 0;
    std::int64_t gamma0 = 0;
    std::int64_t spin_gamma0 = 0;
    bool threshold_r1 = false;
    EmptinessCertificate emptiness;
    std::size_t sublattice_generators = 0;
    std::size_t sublattice_rank_bound = 0;
    std::size_t picard_rank = 0;
    bool sublattice_proper = false;
};

/// The canonical class K = (-3, 1, ..., 1) on <1> + 8<-1>, the lattice of a
/// surface with K^2 = 1 and p_g = 0.
IntegerLattice barlow_lattice();
LatticeVector barlow_canonical_class();

/// Full numerical chain for M(2, K, 1) on the Barlow surface.
BarlowReport barlow_demo(const EnumerationOptions& options = {});

} // namespace spinwalls
