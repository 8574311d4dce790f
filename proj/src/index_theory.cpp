#include "spinwalls/index_theory.hpp"

#include "spinwalls/errors.hpp"

namespace spinwalls {

std::int64_t BundleTopology::p1(const IntegerLattice& lattice) const
{
    return checked_add(lattice.square(c1), checked_mul(-4, c2));
}

JumpingType::JumpingType(int r, SpinCStructure spin, BundleTopology bundle)
    : r_(r), spin_(std::move(spin)), bundle_(std::move(bundle))
{
    if (r_ < 1)
        throw ValidationError("jumping level must be >= 1");
    if (bundle_.c1.size() != spin_.c().size())
        throw ValidationError("c1 and C live in different lattices");
}

DiracIndex chi_line(const IntegerLattice& lattice, const LatticeVector& C, const LatticeVector& delta,
                    std::int64_t index_I)
{
    const std::int64_t twisted = lattice.pairing(delta, delta + C);
    const std::int64_t c_sq = lattice.square(C);
    DiracIndex out;
    out.value = Rational(twisted, 2) + Rational(checked_add(c_sq, -index_I), 8);
    out.integral = out.value.is_integer();
    out.characteristic = lattice.is_characteristic(C);
    return out;
}

DiracIndex chi_rank2(const IntegerLattice& lattice, const LatticeVector& C, const BundleTopology& bundle,
                     std::int64_t index_I)
{
    const std::int64_t c1_sq = lattice.square(bundle.c1);
    const std::int64_t c1_C = lattice.pairing(bundle.c1, C);
    const std::int64_t c_sq = lattice.square(C);
    DiracIndex out;
    out.value = Rational(checked_add(checked_add(c1_sq, checked_mul(-2, bundle.c2)), c1_C), 2) +
                Rational(checked_add(c_sq, -index_I), 4);
    out.integral = out.value.is_integer();
    out.characteristic = lattice.is_characteristic(C);
    return out;
}

Rational vcodim_jumping(int r, const Rational& chi)
{
    if (r < 1)
        throw ValidationError("jumping level must be >= 1");
    const Rational rr(r);
    return Rational(2) * rr * rr - Rational(2) * rr * chi;
}

std::int64_t brill_noether_vcodim(std::int64_t h0, std::int64_t chi)
{
    if (h0 < 0)
        throw ValidationError("h0 must be nonnegative");
    return checked_mul(h0, checked_add(h0, -chi));
}

InstantonDimension vdim_instanton(std::int64_t p1, int b_plus)
{
    if (b_plus < 0)
        throw ValidationError("b_plus must be nonnegative");
    InstantonDimension out;
    out.vdim = checked_add(checked_mul(-2, p1), -3 * (1 + static_cast<std::int64_t>(b_plus)));
    out.even = out.vdim % 2 == 0;
    if (out.even)
        out.degree = out.vdim / 2;
    return out;
}

InstantonDimension vdim_instanton(const IntegerLattice& lattice, const BundleTopology& bundle, int b_plus)
{
    return vdim_instanton(bundle.p1(lattice), b_plus);
}

JumpingDimension jumping_vdim(std::int64_t p1, int b_plus, int r, const Rational& chi)
{
    JumpingDimension out;
    out.vdim = Rational(vdim_instanton(p1, b_plus).vdim) - vcodim_jumping(r, chi);
    if (out.vdim.is_integer() && out.vdim.num() % 2 == 0)
        out.half = out.vdim.num() / 2;
    return out;
}

std::pair<LatticeVector, LatticeVector> shift(const LatticeVector& c1, const LatticeVector& C,
                                              const LatticeVector& lambda)
{
    return {c1 + 2 * lambda, C - 2 * lambda};
}

} // namespace spinwalls
