#include "spinwalls/box_search.hpp"

#include "spinwalls/errors.hpp"

#include <algorithm>
#include <limits>

namespace spinwalls {

CoordinateBox CoordinateBox::cube(std::size_t rank, std::int64_t bound)
{
    if (bound < 0)
        throw ValidationError("box bound must be nonnegative");
    return {std::vector<std::int64_t>(rank, -bound), std::vector<std::int64_t>(rank, bound)};
}

bool CoordinateBox::empty() const
{
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i])
            return true;
    return false;
}

std::uint64_t CoordinateBox::point_count() const
{
    if (empty())
        return 0;
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        total *= static_cast<unsigned __int128>(hi[i] - lo[i] + 1);
        if (total > cap)
            return cap;
    }
    return static_cast<std::uint64_t>(total);
}

bool CoordinateBox::contains(const CoordinateBox& inner) const
{
    if (inner.empty())
        return true;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (inner.lo[i] < lo[i] || inner.hi[i] > hi[i])
            return false;
    return true;
}

CoordinateBox CoordinateBox::intersect(const CoordinateBox& other) const
{
    CoordinateBox out = *this;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        out.lo[i] = std::max(lo[i], other.lo[i]);
        out.hi[i] = std::min(hi[i], other.hi[i]);
    }
    return out;
}

IntegerQuadratic IntegerQuadratic::zero(std::size_t n)
{
    IntegerQuadratic q;
    q.n = n;
    q.A.assign(n * n, 0);
    q.b.assign(n, 0);
    return q;
}

__int128 IntegerQuadratic::eval(std::span<const std::int64_t> x) const
{
    __int128 acc = c;
    for (std::size_t i = 0; i < n; ++i) {
        __int128 row = b[i];
        for (std::size_t j = 0; j < n; ++j)
            row += static_cast<__int128>(A[i * n + j]) * x[j];
        acc += row * x[i];
    }
    return acc;
}

namespace {

// min/max of a x^2 + l x over the integers in [lo, hi].
Range128 univariate_range(__int128 a, __int128 l, std::int64_t lo, std::int64_t hi)
{
    auto f = [&](__int128 x) { return a * x * x + l * x; };
    Range128 r{f(lo), f(lo)};
    auto consider = [&](__int128 x) {
        if (x < lo || x > hi)
            return;
        const __int128 v = f(x);
        r.lo = std::min(r.lo, v);
        r.hi = std::max(r.hi, v);
    };
    consider(hi);
    if (a != 0) {
        // Vertex at -l / (2a); check both neighbouring integers.
        const __int128 num = -l;
        const __int128 den = 2 * a;
        __int128 q = num / den;
        consider(q - 1);
        consider(q);
        consider(q + 1);
    }
    return r;
}

Range128 product_range(std::int64_t alo, std::int64_t ahi, std::int64_t blo, std::int64_t bhi)
{
    const __int128 p[] = {static_cast<__int128>(alo) * blo, static_cast<__int128>(alo) * bhi,
                          static_cast<__int128>(ahi) * blo, static_cast<__int128>(ahi) * bhi};
    return {*std::min_element(std::begin(p), std::end(p)), *std::max_element(std::begin(p), std::end(p))};
}

} // namespace

PrefixBounds::PrefixBounds(const IntegerQuadratic& q, const CoordinateBox& box)
    : q_(q), box_(box), linear_(q.b.begin(), q.b.end()), constant_(q.c)
{
    if (box.rank() != q.n)
        throw ValidationError("box and quadratic dimension differ");
    const std::size_t n = q.n;
    // cross_[k]: bounds of sum over k <= j < l of 2 A_jl x_j x_l; they do not
    // depend on the fixed prefix.
    cross_lo_.assign(n + 1, 0);
    cross_hi_.assign(n + 1, 0);
    for (std::size_t k = n; k-- > 0;) {
        __int128 lo = cross_lo_[k + 1], hi = cross_hi_[k + 1];
        for (std::size_t l = k + 1; l < n; ++l) {
            const std::int64_t a = q.A[k * n + l];
            if (a == 0)
                continue;
            const Range128 p = product_range(box.lo[k], box.hi[k], box.lo[l], box.hi[l]);
            const __int128 w = 2 * static_cast<__int128>(a);
            if (w > 0) {
                lo += w * p.lo;
                hi += w * p.hi;
            } else {
                lo += w * p.hi;
                hi += w * p.lo;
            }
        }
        cross_lo_[k] = lo;
        cross_hi_[k] = hi;
    }
    fixed_.reserve(n);
}

void PrefixBounds::push(std::int64_t value)
{
    const std::size_t n = q_.n;
    const std::size_t k = fixed_.size();
    const __int128 x = value;
    constant_ += static_cast<__int128>(q_.A[k * n + k]) * x * x + linear_[k] * x;
    for (std::size_t j = k + 1; j < n; ++j)
        linear_[j] += 2 * static_cast<__int128>(q_.A[k * n + j]) * x;
    fixed_.push_back(value);
}

void PrefixBounds::pop()
{
    const std::size_t n = q_.n;
    const std::size_t k = fixed_.size() - 1;
    const __int128 x = fixed_.back();
    fixed_.pop_back();
    for (std::size_t j = k + 1; j < n; ++j)
        linear_[j] -= 2 * static_cast<__int128>(q_.A[k * n + j]) * x;
    constant_ -= static_cast<__int128>(q_.A[k * n + k]) * x * x + linear_[k] * x;
}

Range128 PrefixBounds::range() const
{
    const std::size_t n = q_.n;
    const std::size_t k = fixed_.size();
    Range128 r{constant_ + cross_lo_[k], constant_ + cross_hi_[k]};
    for (std::size_t j = k; j < n; ++j) {
        const Range128 u = univariate_range(q_.A[j * n + j], linear_[j], box_.lo[j], box_.hi[j]);
        r.lo += u.lo;
        r.hi += u.hi;
    }
    return r;
}

std::int64_t isqrt(std::int64_t x)
{
    if (x < 0)
        throw ValidationError("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(__builtin_sqrtl(static_cast<long double>(x)));
    while (static_cast<__int128>(r) * r > x)
        --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= x)
        ++r;
    return r;
}

} // namespace spinwalls
