#include "spinwalls/lattice.hpp"

#include "spinwalls/errors.hpp"
#include "spinwalls/rational.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace spinwalls {

// ---------------------------------------------------------------------------
// LatticeVector

LatticeVector LatticeVector::basis(std::size_t rank, std::size_t i)
{
    LatticeVector v(rank);
    v[i] = 1;
    return v;
}

bool LatticeVector::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

void LatticeVector::require_same_size(const LatticeVector& o) const
{
    if (o.size() != size())
        throw ValidationError("vector length mismatch: " + std::to_string(size()) + " vs " +
                              std::to_string(o.size()));
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o)
{
    require_same_size(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] = checked_add(coeffs_[i], o.coeffs_[i]);
    return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o)
{
    require_same_size(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] = checked_add(coeffs_[i], -o.coeffs_[i]);
    return *this;
}

LatticeVector& LatticeVector::operator*=(std::int64_t k)
{
    for (auto& c : coeffs_)
        c = checked_mul(c, k);
    return *this;
}

LatticeVector LatticeVector::operator-() const
{
    LatticeVector out = *this;
    out *= -1;
    return out;
}

std::string LatticeVector::str() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(coeffs_[i]);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// IntegerLattice

namespace {

// Fraction-free (Bareiss) determinant.
std::int64_t bareiss_determinant(std::size_t n, std::vector<std::int64_t> flat)
{
    std::vector<__int128> a(flat.begin(), flat.end());
    auto at = [&](std::size_t i, std::size_t j) -> __int128& { return a[i * n + j]; };
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                const __int128 v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                at(i, j) = v / prev;
                narrow(at(i, j));
            }
        }
        prev = at(k, k);
    }
    return narrow(sign * at(n - 1, n - 1));
}

} // namespace

IntegerLattice::IntegerLattice(const std::vector<std::vector<std::int64_t>>& rows)
    : rank_(rows.size())
{
    if (rank_ == 0)
        throw ValidationError("lattice must have positive rank");
    gram_.reserve(rank_ * rank_);
    for (const auto& row : rows) {
        if (row.size() != rank_)
            throw ValidationError("Gram matrix is not square");
        gram_.insert(gram_.end(), row.begin(), row.end());
    }
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = i + 1; j < rank_; ++j)
            if (gram(i, j) != gram(j, i))
                throw ValidationError("Gram matrix is not symmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
    det_ = bareiss_determinant(rank_, gram_);
    if (det_ == 0)
        throw ValidationError("Gram matrix is degenerate (determinant 0)");
}

std::vector<std::vector<std::int64_t>> IntegerLattice::gram_rows() const
{
    std::vector<std::vector<std::int64_t>> rows(rank_);
    for (std::size_t i = 0; i < rank_; ++i)
        rows[i].assign(gram_.begin() + static_cast<std::ptrdiff_t>(i * rank_),
                       gram_.begin() + static_cast<std::ptrdiff_t>((i + 1) * rank_));
    return rows;
}

void IntegerLattice::check(const LatticeVector& v) const
{
    if (v.size() != rank_)
        throw ValidationError("vector " + v.str() + " has length " + std::to_string(v.size()) +
                              ", lattice rank is " + std::to_string(rank_));
}

std::int64_t IntegerLattice::pairing(const LatticeVector& u, const LatticeVector& v) const
{
    check(u);
    check(v);
    __int128 acc = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
        if (u[i] == 0)
            continue;
        __int128 row = 0;
        for (std::size_t j = 0; j < rank_; ++j)
            row += static_cast<__int128>(gram(i, j)) * v[j];
        acc += row * u[i];
    }
    return narrow(acc);
}

bool IntegerLattice::is_characteristic(const LatticeVector& v) const
{
    check(v);
    for (std::size_t i = 0; i < rank_; ++i) {
        __int128 dot = 0;
        for (std::size_t j = 0; j < rank_; ++j)
            dot += static_cast<__int128>(gram(i, j)) * v[j];
        if (((dot - gram(i, i)) % 2) != 0)
            return false;
    }
    return true;
}

bool IntegerLattice::is_even() const
{
    for (std::size_t i = 0; i < rank_; ++i)
        if (gram(i, i) % 2 != 0)
            return false;
    return true;
}

std::int64_t IntegerLattice::determinant() const
{
    return det_;
}

bool IntegerLattice::is_unimodular() const
{
    return det_ == 1 || det_ == -1;
}

Signature IntegerLattice::signature() const
{
    // Symmetric Gaussian reduction A -> P A P^T over Q; by Sylvester's law the
    // signs of the resulting diagonal give the inertia.
    const std::size_t n = rank_;
    std::vector<Rational> a(gram_.begin(), gram_.end());
    auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * n + j]; };
    auto swap_sym = [&](std::size_t p, std::size_t q) {
        if (p == q)
            return;
        for (std::size_t j = 0; j < n; ++j)
            std::swap(at(p, j), at(q, j));
        for (std::size_t i = 0; i < n; ++i)
            std::swap(at(i, p), at(i, q));
    };

    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && at(p, p) == 0)
            ++p;
        if (p == n) {
            // All remaining diagonal entries vanish: replace e_i by e_i + e_j
            // for some nonzero off-diagonal a_ij, giving a new diagonal 2 a_ij.
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (at(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n)
                throw ValidationError("degenerate form in signature computation");
            for (std::size_t j = 0; j < n; ++j)
                at(pi, j) += at(pj, j);
            for (std::size_t i = 0; i < n; ++i)
                at(i, pi) += at(i, pj);
            p = pi;
        }
        swap_sym(k, p);
        const Rational pivot = at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (at(i, k) == 0)
                continue;
            const Rational f = at(i, k) / pivot;
            for (std::size_t j = k + 1; j < n; ++j)
                at(i, j) -= f * at(k, j);
            at(i, k) = 0;
        }
        for (std::size_t j = k + 1; j < n; ++j)
            at(k, j) = 0;
        // Keep the trailing block symmetric after the one-sided row updates.
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                at(j, i) = at(i, j);
        if (pivot > 0)
            ++sig.b_plus;
        else
            ++sig.b_minus;
    }
    sig.index = sig.b_plus - sig.b_minus;
    return sig;
}

IntegerLattice direct_sum(std::span<const IntegerLattice> parts)
{
    std::size_t total = 0;
    for (const auto& p : parts)
        total += p.rank();
    std::vector<std::vector<std::int64_t>> rows(total, std::vector<std::int64_t>(total, 0));
    std::size_t offset = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rank(); ++i)
            for (std::size_t j = 0; j < p.rank(); ++j)
                rows[offset + i][offset + j] = p.gram(i, j);
        offset += p.rank();
    }
    return IntegerLattice(rows);
}

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b)
{
    const IntegerLattice parts[] = {a, b};
    return direct_sum(std::span<const IntegerLattice>(parts));
}

IntegerLattice unit_lattice(int sign)
{
    if (sign != 1 && sign != -1)
        throw ValidationError("unit lattice sign must be +1 or -1");
    return IntegerLattice(std::vector<std::vector<std::int64_t>>{{sign}});
}

IntegerLattice hyperbolic_plane()
{
    return IntegerLattice({{0, 1}, {1, 0}});
}

IntegerLattice e8_lattice(int sign)
{
    if (sign != 1 && sign != -1)
        throw ValidationError("E8 sign must be +1 or -1");
    // Cartan matrix, Bourbaki labelling: chain 1-3-4-5-6-7-8, node 2 on node 4.
    constexpr std::pair<int, int> edges[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    std::vector<std::vector<std::int64_t>> rows(8, std::vector<std::int64_t>(8, 0));
    for (int i = 0; i < 8; ++i)
        rows[i][i] = 2 * sign;
    for (auto [i, j] : edges)
        rows[i][j] = rows[j][i] = -sign;
    return IntegerLattice(rows);
}

// ---------------------------------------------------------------------------
// Spec parsing

namespace {

std::string strip(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::int64_t parse_int64(std::string_view text, std::string_view context)
{
    std::string t = strip(text);
    std::int64_t value = 0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
        throw ValidationError("bad integer '" + t + "' in lattice spec block '" + std::string(context) + "'");
    return value;
}

std::vector<std::string> split_top_level(std::string_view spec)
{
    std::vector<std::string> blocks;
    int depth = 0;
    std::string current;
    for (char ch : spec) {
        if (ch == '(' || ch == '[')
            ++depth;
        else if (ch == ')' || ch == ']')
            --depth;
        if (depth < 0)
            throw ValidationError("unbalanced brackets in lattice spec");
        if (depth == 0 && (ch == ',' || ch == '+')) {
            blocks.push_back(strip(current));
            current.clear();
            continue;
        }
        current += ch;
    }
    if (depth != 0)
        throw ValidationError("unbalanced brackets in lattice spec");
    blocks.push_back(strip(current));
    return blocks;
}

std::vector<std::vector<std::int64_t>> parse_gram_literal(std::string_view body, std::string_view block)
{
    // body is "[[a,b],[c,d]]"
    std::string s = strip(body);
    if (s.size() < 4 || s.front() != '[' || s.back() != ']')
        throw ValidationError("gram block must look like gram:[[...],...]: '" + std::string(block) + "'");
    s = strip(std::string_view(s).substr(1, s.size() - 2));
    std::vector<std::vector<std::int64_t>> rows;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ',' || std::isspace(static_cast<unsigned char>(s[pos]))))
            ++pos;
        if (pos >= s.size())
            break;
        if (s[pos] != '[')
            throw ValidationError("expected '[' in gram block '" + std::string(block) + "'");
        const auto close = s.find(']', pos);
        if (close == std::string::npos)
            throw ValidationError("unterminated row in gram block '" + std::string(block) + "'");
        std::vector<std::int64_t> row;
        std::string_view inner = std::string_view(s).substr(pos + 1, close - pos - 1);
        std::size_t start = 0;
        while (start <= inner.size()) {
            auto comma = inner.find(',', start);
            if (comma == std::string_view::npos)
                comma = inner.size();
            row.push_back(parse_int64(inner.substr(start, comma - start), block));
            start = comma + 1;
        }
        rows.push_back(std::move(row));
        pos = close + 1;
    }
    return rows;
}

IntegerLattice parse_block(const std::string& block)
{
    if (block.empty())
        throw ValidationError("empty block in lattice spec");

    std::string base = block;
    std::int64_t repeat = 1;
    // Repetition suffix "xN" outside of brackets.
    const auto x = block.find_last_of('x');
    if (x != std::string::npos && block.find_first_of("[(", x) == std::string::npos &&
        block.find(']', x) == std::string::npos && block.find(')', x) == std::string::npos) {
        base = strip(std::string_view(block).substr(0, x));
        repeat = parse_int64(std::string_view(block).substr(x + 1), block);
        if (repeat < 1)
            throw ValidationError("repetition count must be positive in '" + block + "'");
    }

    std::string compact;
    for (char ch : base)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            compact += ch;

    IntegerLattice unit = [&] {
        if (compact == "1" || compact == "+1")
            return unit_lattice(1);
        if (compact == "-1")
            return unit_lattice(-1);
        if (compact == "H")
            return hyperbolic_plane();
        if (compact == "E8(+1)" || compact == "E8(1)")
            return e8_lattice(1);
        if (compact == "E8(-1)")
            return e8_lattice(-1);
        if (compact.rfind("gram:", 0) == 0)
            return IntegerLattice(parse_gram_literal(std::string_view(compact).substr(5), block));
        throw ValidationError("unknown lattice block '" + block + "'");
    }();

    std::vector<IntegerLattice> copies(static_cast<std::size_t>(repeat), unit);
    return direct_sum(std::span<const IntegerLattice>(copies));
}

} // namespace

IntegerLattice parse_lattice_spec(std::string_view spec)
{
    std::vector<IntegerLattice> parts;
    for (const auto& block : split_top_level(spec))
        parts.push_back(parse_block(block));
    return direct_sum(std::span<const IntegerLattice>(parts));
}

// ---------------------------------------------------------------------------
// Row reduction

std::vector<std::vector<std::int64_t>> hermite_normal_form(std::vector<std::vector<std::int64_t>> rows)
{
    if (rows.empty())
        return rows;
    const std::size_t cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols)
            throw ValidationError("ragged matrix in hermite_normal_form");

    auto axpy = [](std::vector<std::int64_t>& dst, std::int64_t k, const std::vector<std::int64_t>& src) {
        for (std::size_t j = 0; j < dst.size(); ++j)
            dst[j] = checked_add(dst[j], checked_mul(-k, src[j]));
    };

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
        // Euclid on the column: repeatedly bring the smallest nonzero entry up
        // and reduce the others modulo it.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = pivot_row; i < rows.size(); ++i)
                if (rows[i][col] != 0 &&
                    (best == rows.size() || std::abs(rows[i][col]) < std::abs(rows[best][col])))
                    best = i;
            if (best == rows.size())
                break;
            std::swap(rows[pivot_row], rows[best]);
            bool done = true;
            for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0)
                    continue;
                axpy(rows[i], rows[i][col] / rows[pivot_row][col], rows[pivot_row]);
                if (rows[i][col] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (rows[pivot_row][col] == 0)
            continue;
        if (rows[pivot_row][col] < 0)
            for (auto& c : rows[pivot_row])
                c = -c;
        const std::int64_t pivot = rows[pivot_row][col];
        for (std::size_t i = 0; i < pivot_row; ++i) {
            std::int64_t q = rows[i][col] / pivot;
            if (rows[i][col] - q * pivot < 0)
                --q;
            if (q != 0)
                axpy(rows[i], q, rows[pivot_row]);
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

std::size_t span_rank(const IntegerLattice& lattice, std::span<const LatticeVector> vectors)
{
    std::vector<std::vector<std::int64_t>> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        lattice.check(v);
        rows.emplace_back(v.coeffs().begin(), v.coeffs().end());
    }
    return hermite_normal_form(std::move(rows)).size();
}

SpinCStructure::SpinCStructure(const IntegerLattice& lattice, LatticeVector c)
    : c_(std::move(c))
{
    if (!lattice.is_characteristic(c_))
        throw ValidationError("class " + c_.str() + " is not characteristic, so it is not a Spin^C structure");
}

} // namespace spinwalls
