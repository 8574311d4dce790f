#include "spinwalls/walls.hpp"

#include "spinwalls/index_theory.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace spinwalls {

const char* to_string(Orientation o)
{
    return o == Orientation::plus ? "+" : "-";
}

// ---------------------------------------------------------------------------
// WallQuery

WallQuery::WallQuery(IntegerLattice lattice, LatticeVector c1, SpinCStructure C, std::int64_t p1, int r,
                     std::int64_t coeff_bound, std::optional<std::int64_t> index_I)
    : lattice_(std::move(lattice)), c1_(std::move(c1)), C_(std::move(C)), p1_(p1), c2_(0), r_(r),
      bound_(coeff_bound), signature_(lattice_.signature()), index_(index_I.value_or(signature_.index))
{
    lattice_.check(c1_);
    lattice_.check(C_.c());
    if (r_ < 1)
        throw ValidationError("jumping level r must be >= 1");
    if (bound_ < 0)
        throw ValidationError("coefficient bound must be >= 0");
    const std::int64_t diff = checked_add(lattice_.square(c1_), -p1_);
    if (diff % 4 != 0)
        throw ValidationError("p1 = " + std::to_string(p1_) + " is not c1^2 - 4 c2 for an integer c2 (c1^2 = " +
                              std::to_string(lattice_.square(c1_)) + ")");
    c2_ = diff / 4;
}

WallQuery WallQuery::from_c2(IntegerLattice lattice, LatticeVector c1, SpinCStructure C, std::int64_t c2, int r,
                             std::int64_t coeff_bound, std::optional<std::int64_t> index_I)
{
    const std::int64_t p1 = checked_add(lattice.square(c1), checked_mul(-4, c2));
    return WallQuery(std::move(lattice), std::move(c1), std::move(C), p1, r, coeff_bound, index_I);
}

WallQuery WallQuery::with_bound(std::int64_t bound) const
{
    WallQuery q = *this;
    if (bound < 0)
        throw ValidationError("coefficient bound must be >= 0");
    q.bound_ = bound;
    return q;
}

// ---------------------------------------------------------------------------
// Predicates

namespace {

LatticeVector fired_class(const WallQuery& q, const LatticeVector& delta, Orientation o)
{
    return o == Orientation::plus ? delta : q.c1() - delta;
}

bool squares_form(const WallQuery& q, const LatticeVector& d)
{
    const auto& L = q.lattice();
    const std::int64_t e_sq = L.square(q.c1() - 2 * d);
    const std::int64_t s_sq = L.square(q.C() + 2 * d);
    return e_sq <= 0 && e_sq >= q.p1() && s_sq >= q.dirac_threshold();
}

bool chi_form(const WallQuery& q, const LatticeVector& d)
{
    const auto& L = q.lattice();
    const std::int64_t c1_sq = L.square(q.c1());
    const Rational middle(checked_add(L.pairing(q.c1(), d), -L.square(d)));
    const bool cond1 = Rational(c1_sq, 4) <= middle && middle <= Rational(checked_add(c1_sq, -q.p1()), 4);
    const Rational lhs(checked_add(-L.pairing(q.C(), d), -L.square(d)));
    const Rational rhs = Rational(L.square(q.C()), 4) - Rational(q.index(), 4) - Rational(2 * q.r());
    const bool cond2 = lhs <= rhs;
    // The rewritten inequality is the Atiyah-Singer bound chi >= r.
    const bool by_index = chi_line(L, q.C(), d, q.index()).value >= Rational(q.r());
    if (by_index != cond2)
        throw FormulationMismatch("chi_C(L_delta) >= r disagrees with its rewritten form at delta = " + d.str());
    return cond1 && cond2;
}

bool delta_form(const WallQuery& q, const LatticeVector& d)
{
    const auto& L = q.lattice();
    const LatticeVector Delta = -q.C() - 2 * d;
    const std::int64_t shifted = L.square(Delta + (q.c1() + q.C()));
    return shifted <= 0 && shifted >= q.p1() && L.square(Delta) >= q.dirac_threshold();
}

} // namespace

FormulationVerdicts evaluate_formulations(const WallQuery& query, const LatticeVector& delta, Orientation orientation)
{
    query.lattice().check(delta);
    const LatticeVector d = fired_class(query, delta, orientation);
    FormulationVerdicts v;
    v.squares = squares_form(query, d);
    v.chi_form = chi_form(query, d);
    v.delta_form = delta_form(query, d);
    if (v.squares != v.chi_form || v.squares != v.delta_form) {
        std::ostringstream msg;
        msg << "wall formulations disagree at delta = " << delta.str() << " (orientation " << to_string(orientation)
            << "): squares=" << v.squares << " chi=" << v.chi_form << " Delta=" << v.delta_form;
        throw FormulationMismatch(msg.str());
    }
    return v;
}

bool is_hurdle_class(const WallQuery& query, const LatticeVector& e)
{
    query.lattice().check(e);
    for (std::size_t i = 0; i < e.size(); ++i)
        if ((e[i] - query.c1()[i]) % 2 != 0)
            return false;
    return query.lattice().square(e) == query.p1();
}

bool is_wall_class(const WallQuery& query, const LatticeVector& delta, Orientation orientation)
{
    return evaluate_formulations(query, delta, orientation).squares;
}

WallClass make_wall_class(const WallQuery& query, const LatticeVector& delta, Orientation orientation)
{
    const auto& L = query.lattice();
    WallClass w;
    w.delta = delta;
    w.e = query.c1() - 2 * delta;
    w.Delta = -query.C() - 2 * delta;
    w.e_square = L.square(w.e);
    const DiracIndex chi = chi_line(L, query.C(), fired_class(query, delta, orientation), query.index());
    if (!chi.integral)
        throw ValidationError("chi_C is not integral at delta = " + delta.str() +
                              "; the supplied index does not match a closed Spin^C manifold");
    w.chi = chi.value.num();
    w.orientation = orientation;
    return w;
}

// ---------------------------------------------------------------------------
// Search region

namespace {

// Inverse of an integer matrix over Q by Gauss-Jordan.
std::vector<Rational> rational_inverse(const IntegerLattice& L, int scale)
{
    const std::size_t n = L.rank();
    std::vector<Rational> a(n * 2 * n);
    auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * 2 * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            at(i, j) = Rational(scale * L.gram(i, j));
        at(i, n + i) = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (at(p, k) == 0)
            ++p;
        if (p != k)
            for (std::size_t j = 0; j < 2 * n; ++j)
                std::swap(at(p, j), at(k, j));
        const Rational pivot = at(k, k);
        for (std::size_t j = 0; j < 2 * n; ++j)
            at(k, j) /= pivot;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || at(i, k) == 0)
                continue;
            const Rational f = at(i, k);
            for (std::size_t j = 0; j < 2 * n; ++j)
                at(i, j) -= f * at(k, j);
        }
    }
    std::vector<Rational> inv(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i * n + j] = at(i, n + j);
    return inv;
}

CoordinateBox empty_box(std::size_t n)
{
    return {std::vector<std::int64_t>(n, 1), std::vector<std::int64_t>(n, 0)};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    return -floor_div(-a, b);
}

} // namespace

SearchRegion search_region(const WallQuery& query)
{
    const std::size_t n = query.lattice().rank();
    SearchRegion region;
    region.requested = CoordinateBox::cube(n, query.coeff_bound());
    region.searched = region.requested;

    const Signature& sig = query.signature();
    if (sig.b_plus != 0 && sig.b_minus != 0)
        return region;

    // Definite form: condition 1 confines e = c1 - 2 delta to a bounded set.
    CoordinateBox tight;
    if (query.p1() > 0) {
        tight = empty_box(n);
    } else if (sig.b_minus == 0) {
        // Positive definite: e^2 <= 0 forces e = 0.
        tight = {std::vector<std::int64_t>(n), std::vector<std::int64_t>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            if (query.c1()[i] % 2 != 0) {
                tight = empty_box(n);
                break;
            }
            tight.lo[i] = tight.hi[i] = query.c1()[i] / 2;
        }
    } else {
        // Negative definite: -e^2 <= -p1 gives e_i^2 <= -p1 * ((-G)^-1)_ii.
        const auto inv = rational_inverse(query.lattice(), -1);
        tight = {std::vector<std::int64_t>(n), std::vector<std::int64_t>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            const Rational bound_sq = Rational(-query.p1()) * inv[i * n + i];
            const std::int64_t emax = isqrt(bound_sq.floor());
            tight.lo[i] = ceil_div(query.c1()[i] - emax, 2);
            tight.hi[i] = floor_div(query.c1()[i] + emax, 2);
        }
    }
    region.tightened = true;
    region.complete_globally = region.requested.contains(tight);
    region.searched = region.requested.intersect(tight);
    return region;
}

// ---------------------------------------------------------------------------
// Enumeration

BoxTooLarge::BoxTooLarge(std::uint64_t nominal_points, std::uint64_t cap)
    : ValidationError("search box has " + std::to_string(nominal_points) +
                      " candidate points and the pruned search exceeded the cap of " + std::to_string(cap) +
                      " nodes; lower the bound or raise --max-box"),
      nominal_(nominal_points)
{
}

namespace {

IntegerQuadratic gram_quadratic(const IntegerLattice& L, std::int64_t scale)
{
    IntegerQuadratic q = IntegerQuadratic::zero(L.rank());
    for (std::size_t i = 0; i < L.rank(); ++i)
        for (std::size_t j = 0; j < L.rank(); ++j)
            q.A[i * L.rank() + j] = checked_mul(scale, L.gram(i, j));
    return q;
}

// Linear term coefficient vector: scale * G v.
std::vector<std::int64_t> gram_times(const IntegerLattice& L, const LatticeVector& v, std::int64_t scale)
{
    std::vector<std::int64_t> out(L.rank());
    for (std::size_t i = 0; i < L.rank(); ++i)
        out[i] = checked_mul(scale, L.pairing(LatticeVector::basis(L.rank(), i), v));
    return out;
}

// The five polynomials in delta that drive pruning. With s = c1 + C and
// e = c1 - 2 delta:
//   E  = e^2                         condition 1 (p1 <= E <= 0)
//   P  = (C + 2 delta)^2             plus Dirac condition (P >= T)
//   M  = (C + 2 (c1 - delta))^2      minus Dirac condition (M >= T)
//   P - E, M - E                     linear; P >= T and E <= 0 imply P - E >= T
struct WallPolynomials {
    IntegerQuadratic E, P, M, PE, ME;
};

WallPolynomials wall_polynomials(const WallQuery& q)
{
    const auto& L = q.lattice();
    const std::size_t n = L.rank();
    const LatticeVector s = q.c1() + q.C();
    const LatticeVector minus_anchor = q.C() + 2 * q.c1();

    WallPolynomials w{gram_quadratic(L, 4), gram_quadratic(L, 4), gram_quadratic(L, 4),
                      IntegerQuadratic::zero(n), IntegerQuadratic::zero(n)};
    w.E.b = gram_times(L, q.c1(), -4);
    w.E.c = L.square(q.c1());
    w.P.b = gram_times(L, q.C(), 4);
    w.P.c = L.square(q.C());
    w.M.b = gram_times(L, minus_anchor, -4);
    w.M.c = L.square(minus_anchor);
    w.PE.b = gram_times(L, s, 4);
    w.PE.c = checked_add(w.P.c, -w.E.c);
    w.ME.b = gram_times(L, s, -4);
    w.ME.c = checked_add(w.M.c, -w.E.c);
    return w;
}

struct Bounds {
    PrefixBounds E, P, M, PE, ME;

    Bounds(const WallPolynomials& w, const CoordinateBox& box)
        : E(w.E, box), P(w.P, box), M(w.M, box), PE(w.PE, box), ME(w.ME, box)
    {
    }
    void push(std::int64_t x)
    {
        E.push(x);
        P.push(x);
        M.push(x);
        PE.push(x);
        ME.push(x);
    }
    void pop()
    {
        E.pop();
        P.pop();
        M.pop();
        PE.pop();
        ME.pop();
    }
    bool feasible(std::int64_t p1, std::int64_t threshold) const
    {
        const Range128 e = E.range();
        if (e.lo > 0 || e.hi < p1)
            return false;
        const bool plus = P.range().hi >= threshold && PE.range().hi >= threshold;
        const bool minus = M.range().hi >= threshold && ME.range().hi >= threshold;
        return plus || minus;
    }
};

struct SliceResult {
    std::vector<WallClass> walls;
    std::uint64_t nodes = 0;
    std::uint64_t candidates = 0;
};

void collect_candidate(const WallQuery& q, const LatticeVector& delta, std::vector<WallClass>& out)
{
    for (Orientation o : {Orientation::plus, Orientation::minus})
        if (is_wall_class(q, delta, o))
            out.push_back(make_wall_class(q, delta, o));
}

class SliceSearch {
public:
    SliceSearch(const WallQuery& q, const WallPolynomials& w, const CoordinateBox& box,
                std::atomic<std::uint64_t>* budget_used, std::uint64_t budget, std::atomic<bool>* abort)
        : q_(q), box_(box), bounds_(w, box), point_(box.rank()), budget_used_(budget_used), budget_(budget),
          abort_(abort)
    {
    }

    SliceResult run(std::int64_t first)
    {
        SliceResult result;
        out_ = &result;
        descend_with(0, first);
        return result;
    }

private:
    void descend_with(std::size_t depth, std::int64_t value)
    {
        if (abort_->load(std::memory_order_relaxed))
            return;
        ++out_->nodes;
        if (budget_used_ != nullptr && budget_used_->fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
            abort_->store(true);
            return;
        }
        point_[depth] = value;
        bounds_.push(value);
        if (bounds_.feasible(q_.p1(), q_.dirac_threshold())) {
            if (depth + 1 == box_.rank()) {
                ++out_->candidates;
                collect_candidate(q_, LatticeVector(point_), out_->walls);
            } else {
                for (std::int64_t x = box_.lo[depth + 1]; x <= box_.hi[depth + 1]; ++x)
                    descend_with(depth + 1, x);
            }
        }
        bounds_.pop();
    }

    const WallQuery& q_;
    const CoordinateBox& box_;
    Bounds bounds_;
    std::vector<std::int64_t> point_;
    std::atomic<std::uint64_t>* budget_used_;
    std::uint64_t budget_;
    std::atomic<bool>* abort_;
    SliceResult* out_ = nullptr;
};

} // namespace

WallEnumeration enumerate_walls(const WallQuery& query, const EnumerationOptions& options)
{
    WallEnumeration result;
    result.box_bound = query.coeff_bound();
    result.region = search_region(query);
    const CoordinateBox& box = result.region.searched;
    result.nominal_points = result.region.requested.point_count();
    if (box.empty())
        return result;

    const WallPolynomials polys = wall_polynomials(query);
    {
        const Bounds root(polys, box);
        result.nodes_visited = 1;
        if (!root.feasible(query.p1(), query.dirac_threshold()))
            return result;
    }

    const bool capped = box.point_count() > options.max_box;
    std::atomic<std::uint64_t> used{0};
    std::atomic<bool> abort{false};

    const std::int64_t first_lo = box.lo[0];
    const std::size_t slices = static_cast<std::size_t>(box.hi[0] - first_lo + 1);
    std::vector<SliceResult> parts(slices);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        SliceSearch search(query, polys, box, capped ? &used : nullptr, options.max_box, &abort);
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= slices)
                return;
            parts[i] = search.run(first_lo + static_cast<std::int64_t>(i));
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(slices)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (abort.load())
        throw BoxTooLarge(result.nominal_points, options.max_box);

    for (auto& part : parts) {
        result.nodes_visited += part.nodes;
        result.candidates_evaluated += part.candidates;
        std::move(part.walls.begin(), part.walls.end(), std::back_inserter(result.walls));
    }
    return result;
}

WallEnumeration enumerate_walls_exhaustive(const WallQuery& query)
{
    WallEnumeration result;
    result.box_bound = query.coeff_bound();
    result.region.requested = CoordinateBox::cube(query.lattice().rank(), query.coeff_bound());
    result.region.searched = result.region.requested;
    result.nominal_points = result.region.requested.point_count();

    const CoordinateBox& box = result.region.requested;
    std::vector<std::int64_t> point(box.lo);
    for (;;) {
        ++result.candidates_evaluated;
        collect_candidate(query, LatticeVector(point), result.walls);
        std::size_t i = point.size();
        while (i > 0) {
            --i;
            if (point[i] < box.hi[i]) {
                ++point[i];
                break;
            }
            point[i] = box.lo[i];
            if (i == 0)
                return result;
        }
        if (point.empty())
            return result;
    }
}

// ---------------------------------------------------------------------------
// Emptiness certificate

const char* to_string(EmptinessCertificate::Status s)
{
    switch (s) {
    case EmptinessCertificate::Status::valid:
        return "valid";
    case EmptinessCertificate::Status::theorem_silent:
        return "theorem silent";
    case EmptinessCertificate::Status::not_applicable:
        return "not applicable";
    }
    return "?";
}

EmptinessCertificate::Status emptiness_status(const WallQuery& query)
{
    if (!query.is_very_important_case())
        return EmptinessCertificate::Status::not_applicable;
    return 8 * static_cast<std::int64_t>(query.r()) > -query.index() ? EmptinessCertificate::Status::valid
                                                                      : EmptinessCertificate::Status::theorem_silent;
}

EmptinessCertificate emptiness_certificate(const WallQuery& query, const EnumerationOptions& options)
{
    EmptinessCertificate cert;
    cert.eight_r = 8 * static_cast<std::int64_t>(query.r());
    cert.minus_I = -query.index();
    if (!query.is_very_important_case()) {
        cert.status = EmptinessCertificate::Status::not_applicable;
        cert.derivation.push_back("c1 != -C: the very important case does not apply");
        return cert;
    }

    const auto& L = query.lattice();
    const std::int64_t c1_sq = L.square(query.c1());
    const std::int64_t C_sq = L.square(query.C());
    const std::int64_t I = query.index();
    const int r = query.r();
    auto n = [](std::int64_t v) { return std::to_string(v); };

    cert.derivation.push_back("condition 1: (c1 - 2 delta)^2 <= 0  <=>  c1^2/4 <= c1.delta - delta^2, c1^2 = " +
                              n(c1_sq));
    cert.derivation.push_back("condition 2: chi_C(L_delta) >= r  <=>  -C.delta - delta^2 <= C^2/4 - I/4 - 2r = " +
                              Rational(C_sq, 4).str() + " - (" + Rational(I, 4).str() + ") - " + n(2 * r));
    cert.derivation.push_back("C = -c1: -C.delta - delta^2 = c1.delta - delta^2 and C^2 = c1^2 = " + n(C_sq));
    cert.derivation.push_back("combining: c1^2/4 <= c1^2/4 - I/4 - 2r  <=>  8r <= -I");
    cert.status = emptiness_status(query);
    if (cert.status == EmptinessCertificate::Status::valid) {
        cert.derivation.push_back("8r = " + n(cert.eight_r) + " > " + n(cert.minus_I) +
                                  " = -I: contradiction, the system of walls is empty");
    } else {
        cert.derivation.push_back("8r = " + n(cert.eight_r) + " <= " + n(cert.minus_I) +
                                  " = -I: no contradiction, only the box search decides");
    }

    cert.box_search = enumerate_walls(query, options);
    if (cert.status == EmptinessCertificate::Status::valid && !cert.box_search->walls.empty())
        throw FormulationMismatch("box search found a wall at delta = " + cert.box_search->walls.front().delta.str() +
                                  " although the emptiness argument applies");
    return cert;
}

// ---------------------------------------------------------------------------
// Witness search

const char* to_string(WitnessResult::Status s)
{
    switch (s) {
    case WitnessResult::Status::found:
        return "found";
    case WitnessResult::Status::none_in_box:
        return "none in box";
    case WitnessResult::Status::hypothesis_unmet:
        return "hypothesis unmet";
    }
    return "?";
}

namespace {

class ShellSearch {
public:
    ShellSearch(const IntegerQuadratic& f, std::int64_t shell, std::int64_t target)
        : box_(CoordinateBox::cube(f.n, shell)), bounds_(f, box_), shell_(shell), target_(target), point_(f.n)
    {
    }

    std::optional<LatticeVector> run()
    {
        if (bounds_.range().hi < target_)
            return std::nullopt;
        if (box_.rank() == 0)
            return std::nullopt;
        return descend(0, false);
    }

private:
    std::optional<LatticeVector> descend(std::size_t depth, bool on_shell)
    {
        for (std::int64_t x = box_.lo[depth]; x <= box_.hi[depth]; ++x) {
            const bool touches = on_shell || x == shell_ || x == -shell_;
            point_[depth] = x;
            bounds_.push(x);
            std::optional<LatticeVector> hit;
            if (bounds_.range().hi >= target_) {
                if (depth + 1 == box_.rank()) {
                    if (touches && bounds_.value() >= target_)
                        hit = LatticeVector(point_);
                } else {
                    hit = descend(depth + 1, touches);
                }
            }
            bounds_.pop();
            if (hit)
                return hit;
        }
        return std::nullopt;
    }

    CoordinateBox box_;
    PrefixBounds bounds_;
    std::int64_t shell_;
    std::int64_t target_;
    std::vector<std::int64_t> point_;
};

} // namespace

WitnessResult witness_search(const IntegerLattice& picard, const LatticeVector& K, int r, std::int64_t bound)
{
    picard.check(K);
    if (r < 1)
        throw ValidationError("jumping level r must be >= 1");
    if (bound < 0)
        throw ValidationError("bound must be >= 0");
    WitnessResult result;
    const std::int64_t k_sq = picard.square(K);
    const std::int64_t target = 2 * (static_cast<std::int64_t>(r) - 1);
    if (!(-k_sq < 8 * (static_cast<std::int64_t>(r) - 1))) {
        result.status = WitnessResult::Status::hypothesis_unmet;
        return result;
    }
    // f(delta) = delta.delta - K.delta
    IntegerQuadratic f = gram_quadratic(picard, 1);
    f.b = gram_times(picard, K, -1);
    for (std::int64_t shell = 0; shell <= bound; ++shell) {
        if (auto hit = ShellSearch(f, shell, target).run()) {
            result.status = WitnessResult::Status::found;
            result.delta = std::move(hit);
            return result;
        }
    }
    result.status = WitnessResult::Status::none_in_box;
    return result;
}

bool polarization_check(const IntegerLattice& picard, const LatticeVector& delta, const LatticeVector& K,
                        const LatticeVector& H)
{
    return 2 * static_cast<__int128>(picard.pairing(delta, H)) < picard.pairing(K, H);
}

} // namespace spinwalls
