#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace spinwalls {

/// Axis-aligned integer box prod [lo_i, hi_i]; empty when any lo_i > hi_i.
struct CoordinateBox {
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;

    static CoordinateBox cube(std::size_t rank, std::int64_t bound);

    std::size_t rank() const { return lo.size(); }
    bool empty() const;
    /// Number of lattice points, saturating at UINT64_MAX.
    std::uint64_t point_count() const;
    bool contains(const CoordinateBox& inner) const;
    CoordinateBox intersect(const CoordinateBox& other) const;
};

/// q(x) = x^T A x + b.x + c with integer coefficients, A symmetric.
struct IntegerQuadratic {
    std::size_t n = 0;
    std::vector<std::int64_t> A; // row-major n x n
    std::vector<std::int64_t> b;
    std::int64_t c = 0;

    static IntegerQuadratic zero(std::size_t n);
    __int128 eval(std::span<const std::int64_t> x) const;
};

struct Range128 {
    __int128 lo;
    __int128 hi;
};

/// Sound bounds for a quadratic over all completions of a partially fixed
/// point in a box. Coordinates are fixed in order 0, 1, ...; the bounds are
/// exact when the quadratic part is diagonal and conservative otherwise.
class PrefixBounds {
public:
    PrefixBounds(const IntegerQuadratic& q, const CoordinateBox& box);

    void push(std::int64_t value);
    void pop();
    std::size_t depth() const { return fixed_.size(); }

    Range128 range() const;
    /// Exact value once every coordinate is fixed.
    __int128 value() const { return constant_; }

private:
    IntegerQuadratic q_;
    CoordinateBox box_;
    std::vector<std::int64_t> fixed_;
    std::vector<__int128> linear_;
    __int128 constant_ = 0;
    std::vector<__int128> cross_lo_;
    std::vector<__int128> cross_hi_;
};

/// floor(sqrt(x)) for x >= 0.
std::int64_t isqrt(std::int64_t x);

} // namespace spinwalls
