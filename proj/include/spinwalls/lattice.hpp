#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spinwalls {

/// Integer coordinates of a class in a fixed basis of H^2(M, Z).
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(std::size_t rank) : coeffs_(rank, 0) {}
    explicit LatticeVector(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {}
    LatticeVector(std::initializer_list<std::int64_t> coeffs) : coeffs_(coeffs) {}

    static LatticeVector basis(std::size_t rank, std::size_t i);

    std::size_t size() const { return coeffs_.size(); }
    std::int64_t operator[](std::size_t i) const { return coeffs_[i]; }
    std::int64_t& operator[](std::size_t i) { return coeffs_[i]; }
    std::span<const std::int64_t> coeffs() const { return coeffs_; }
    bool is_zero() const;

    LatticeVector& operator+=(const LatticeVector& o);
    LatticeVector& operator-=(const LatticeVector& o);
    LatticeVector& operator*=(std::int64_t k);
    LatticeVector operator-() const;

    friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
    friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
    friend LatticeVector operator*(std::int64_t k, LatticeVector v) { return v *= k; }

    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
    /// Lexicographic on coefficients; used for every reported ordering.
    friend auto operator<=>(const LatticeVector& a, const LatticeVector& b)
    {
        return a.coeffs_ <=> b.coeffs_;
    }

    /// "(a,b,c)"
    std::string str() const;

private:
    void require_same_size(const LatticeVector& o) const;

    std::vector<std::int64_t> coeffs_;
};

struct Signature {
    int b_plus = 0;
    int b_minus = 0;
    int index = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Finite-rank free abelian group with a symmetric, nondegenerate integer
/// pairing given by its Gram matrix in a fixed basis.
class IntegerLattice {
public:
    /// Throws ValidationError unless `rows` is square, symmetric and
    /// nondegenerate.
    explicit IntegerLattice(const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rank() const { return rank_; }
    std::int64_t gram(std::size_t i, std::size_t j) const { return gram_[i * rank_ + j]; }
    std::vector<std::vector<std::int64_t>> gram_rows() const;

    std::int64_t pairing(const LatticeVector& u, const LatticeVector& v) const;
    std::int64_t square(const LatticeVector& v) const { return pairing(v, v); }

    /// v.e_i == e_i.e_i (mod 2) on every basis vector.
    bool is_characteristic(const LatticeVector& v) const;
    bool is_even() const;
    std::int64_t determinant() const;
    bool is_unimodular() const;
    Signature signature() const;

    /// Rejects vectors of the wrong length.
    void check(const LatticeVector& v) const;

    friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;

private:
    std::size_t rank_ = 0;
    std::vector<std::int64_t> gram_;
    std::int64_t det_ = 0;
};

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice direct_sum(std::span<const IntegerLattice> parts);

/// <1> or <-1>.
IntegerLattice unit_lattice(int sign);
/// Hyperbolic plane [[0,1],[1,0]].
IntegerLattice hyperbolic_plane();
/// E8 root lattice scaled by +1 (positive definite) or -1.
IntegerLattice e8_lattice(int sign);

/// Parses the lattice spec mini-language: blocks from {1, -1, H, E8(+1),
/// E8(-1), gram:[[...]]}, each with an optional xN repetition suffix,
/// separated by ',' or '+'. Example: "1,-1x8", "E8(-1) + Hx3".
IntegerLattice parse_lattice_spec(std::string_view spec);

/// Rank of the subgroup generated by `vectors`, by integer row reduction.
std::size_t span_rank(const IntegerLattice& lattice, std::span<const LatticeVector> vectors);

/// Row-style Hermite normal form of an integer matrix (nonzero rows only).
/// Pivots are positive and entries above each pivot are reduced into
/// [0, pivot).
std::vector<std::vector<std::int64_t>> hermite_normal_form(std::vector<std::vector<std::int64_t>> rows);

/// Integral lift of w2: a characteristic class of the lattice.
class SpinCStructure {
public:
    /// Throws ValidationError unless `c` is characteristic for `lattice`.
    SpinCStructure(const IntegerLattice& lattice, LatticeVector c);

    const LatticeVector& c() const { return c_; }

private:
    LatticeVector c_;
};

} // namespace spinwalls
