#include "spinwalls/surface.hpp"

#include "spinwalls/errors.hpp"
#include "spinwalls/index_theory.hpp"

#include <algorithm>

namespace spinwalls {

void SurfaceReport::require_consistent() const
{
    if (consistent())
        return;
    std::string msg = "inconsistent surface invariants:";
    for (const auto& v : violations)
        msg += " [" + v + "]";
    throw ValidationError(msg);
}

SurfaceReport surface_consistency(const SurfaceInvariants& s)
{
    SurfaceReport out;
    out.K_square = s.K_square;
    out.p_g = s.p_g;
    out.q = s.q;
    if (s.p_g < 0)
        out.violations.push_back("p_g must be nonnegative");
    if (s.q < 0)
        out.violations.push_back("q must be nonnegative");

    out.chi_O = 1 + s.p_g - s.q;
    const std::int64_t noether_c2 = 12 * out.chi_O - s.K_square;
    out.c2_top = s.c2_top.value_or(noether_c2);
    if (out.c2_top != noether_c2)
        out.violations.push_back("Noether: K^2 + c2 = " + std::to_string(s.K_square + out.c2_top) +
                                 " but 12 chi(O) = " + std::to_string(12 * out.chi_O));

    out.index = Rational(s.K_square - 2 * out.c2_top, 3);
    if (!out.index.is_integer())
        out.violations.push_back("index: (K^2 - 2 c2)/3 = " + out.index.str() + " is not an integer");

    out.b_plus = 2 * s.p_g + 1;
    out.b2 = out.c2_top - 2 + 4 * s.q;
    out.b_minus = out.b2 - out.b_plus;
    if (out.b_minus < 0)
        out.violations.push_back("b2-: c2 - 2 + 4q - b2+ = " + std::to_string(out.b_minus) + " is negative");
    if (out.index != Rational(out.b_plus - out.b_minus))
        out.violations.push_back("signature: I = " + out.index.str() + " but b2+ - b2- = " +
                                 std::to_string(out.b_plus - out.b_minus));
    return out;
}

bool spin_invariance_threshold(const SurfaceInvariants& s, int r)
{
    if (r < 1)
        throw ValidationError("jumping level r must be >= 1");
    return -s.K_square < 8 * (static_cast<std::int64_t>(r) - 1) - 8 * (s.p_g - s.q);
}

std::int64_t riemann_roch_rank2(const SurfaceInvariants& s, std::int64_t c1_dot_K, std::int64_t c1_square,
                                std::int64_t c2)
{
    const std::int64_t twist = checked_add(c1_square, -c1_dot_K);
    if (twist % 2 != 0)
        throw ValidationError("c1^2 - c1.K = " + std::to_string(twist) + " is odd; no such bundle exists");
    const std::int64_t chi_O = 1 + s.p_g - s.q;
    return checked_add(checked_add(2 * chi_O, twist / 2), -c2);
}

BrillNoetherLocus serre_dual_locus(const IntegerLattice& lattice, const LatticeVector& K,
                                   const BrillNoetherLocus& locus)
{
    lattice.check(K);
    lattice.check(locus.c1);
    BrillNoetherLocus out;
    out.i = locus.j;
    out.j = locus.i;
    out.c1 = 2 * K - locus.c1;
    out.c2 = checked_add(checked_add(locus.c2, -lattice.pairing(locus.c1, K)), lattice.square(K));
    return out;
}

NormalConeDatum NormalConeDatum::over_complex_numbers(std::int64_t h0, std::int64_t h1, std::int64_t h2,
                                                      bool q_nondegenerate)
{
    if (h0 < 0 || h1 < 0 || h2 < 0)
        throw ValidationError("cohomology dimensions must be nonnegative");
    NormalConeDatum d;
    d.h0 = h0;
    d.h1 = h1;
    d.h2 = h2;
    d.q_nondegenerate = q_nondegenerate;
    d.isotropic_cone_trivial = h1 == 0 || (h1 == 1 && q_nondegenerate);
    return d;
}

const char* to_string(Multiplicity::Status s)
{
    switch (s) {
    case Multiplicity::Status::determined:
        return "determined";
    case Multiplicity::Status::not_determined:
        return "not determined by this criterion";
    case Multiplicity::Status::out_of_scope:
        return "out of implemented scope";
    }
    return "?";
}

Multiplicity normal_cone_multiplicity(const NormalConeDatum& d)
{
    const auto derived = NormalConeDatum::over_complex_numbers(d.h0, d.h1, d.h2, d.q_nondegenerate);
    if (derived.isotropic_cone_trivial != d.isotropic_cone_trivial)
        throw ValidationError("isotropic cone flag contradicts h1 = " + std::to_string(d.h1) +
                              " over the complex numbers");
    Multiplicity m;
    if (d.h0 != 1) {
        m.status = Multiplicity::Status::out_of_scope;
        return m;
    }
    if (!d.isotropic_cone_trivial) {
        m.status = Multiplicity::Status::not_determined;
        return m;
    }
    // Normal cone = {0}: the jumping locus equals the ambient moduli space as
    // schemes and each point is doubled.
    m.status = Multiplicity::Status::determined;
    m.value = 2;
    return m;
}

IntegerLattice barlow_lattice()
{
    return parse_lattice_spec("1,-1x8");
}

LatticeVector barlow_canonical_class()
{
    return LatticeVector{-3, 1, 1, 1, 1, 1, 1, 1, 1};
}

BarlowReport barlow_demo(const EnumerationOptions& options)
{
    BarlowReport out;
    const SurfaceInvariants s{.K_square = 1, .c2_top = std::nullopt, .p_g = 0, .q = 0};
    out.surface = surface_consistency(s);
    out.surface.require_consistent();

    const IntegerLattice L = barlow_lattice();
    const LatticeVector K = barlow_canonical_class();
    const Signature sig = L.signature();
    if (L.square(K) != s.K_square || sig.b_plus != out.surface.b_plus || sig.b_minus != out.surface.b_minus)
        throw FormulationMismatch("Barlow lattice model does not match the surface invariants");

    // Base points of the bicanonical pencil: (2K)^2.
    out.base_points = L.square(2 * K);

    out.cohomology = NormalConeDatum::over_complex_numbers(1, 1, 1, true);
    const BundleTopology E{K, 1};
    out.chi_E = riemann_roch_rank2(s, L.pairing(E.c1, K), L.square(E.c1), E.c2);
    const DiracIndex dirac = chi_rank2(L, -K, E, out.surface.index.to_integer());
    out.chi_E_dirac = dirac.value.to_integer();
    const std::int64_t euler = out.cohomology.h0 - out.cohomology.h1 + out.cohomology.h2;
    if (out.chi_E != out.chi_E_dirac || out.chi_E != euler)
        throw FormulationMismatch("Barlow chi(E) differs between Riemann-Roch, Dirac index and cohomology");

    out.p1 = E.p1(L);
    out.vdim = vdim_instanton(out.p1, static_cast<int>(out.surface.b_plus)).vdim;
    out.vcodim_jumping = vcodim_jumping(1, Rational(out.chi_E));
    out.brill_noether_vcodim = brill_noether_vcodim(out.cohomology.h0, out.chi_E);

    const Multiplicity m = normal_cone_multiplicity(out.cohomology);
    out.multiplicity = m.value.value_or(0);
    out.gamma0 = out.base_points * out.multiplicity;
    // The degree-0 Donaldson-Kotschick value is half the spin canonical one.
    out.spin_gamma0 = 2 * out.gamma0;

    out.threshold_r1 = spin_invariance_threshold(s, 1);
    const WallQuery query(L, K, SpinCStructure(L, -K), out.p1, 1, 6);
    out.emptiness = emptiness_certificate(query, options);

    // <K, C1, ..., C4>: five generators; only the count is used.
    out.sublattice_generators = 5;
    out.picard_rank = static_cast<std::size_t>(out.surface.b2);
    out.sublattice_rank_bound = std::min(out.sublattice_generators, out.picard_rank);
    out.sublattice_proper = out.sublattice_rank_bound < out.picard_rank;
    return out;
}

} // namespace spinwalls
