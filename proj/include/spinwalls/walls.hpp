#pragma once

#include "spinwalls/box_search.hpp"
#include "spinwalls/errors.hpp"
#include "spinwalls/lattice.hpp"
#include "spinwalls/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spinwalls {

/// Which line bundle of the splitting E = L_delta + L_{c1 - delta} carries the
/// Dirac condition. Choosing c1 - delta instead of delta reverses e.
enum class Orientation { plus, minus };

const char* to_string(Orientation o);

/// Complete data of a wall question for jumping level r.
class WallQuery {
public:
    /// Throws ValidationError when p1 is not c1^2 - 4 c2 for an integer c2,
    /// r < 1, bound < 0, or vectors do not match the lattice. The index I
    /// defaults to the signature of the lattice.
    WallQuery(IntegerLattice lattice, LatticeVector c1, SpinCStructure C, std::int64_t p1, int r,
              std::int64_t coeff_bound, std::optional<std::int64_t> index_I = std::nullopt);

    static WallQuery from_c2(IntegerLattice lattice, LatticeVector c1, SpinCStructure C, std::int64_t c2,
                             int r, std::int64_t coeff_bound,
                             std::optional<std::int64_t> index_I = std::nullopt);

    const IntegerLattice& lattice() const { return lattice_; }
    const LatticeVector& c1() const { return c1_; }
    const LatticeVector& C() const { return C_.c(); }
    std::int64_t p1() const { return p1_; }
    std::int64_t c2() const { return c2_; }
    int r() const { return r_; }
    std::int64_t coeff_bound() const { return bound_; }
    std::int64_t index() const { return index_; }
    /// The lattice signature even when I was overridden.
    const Signature& signature() const { return signature_; }

    /// Threshold 8r + I of the Dirac condition in squared form.
    std::int64_t dirac_threshold() const { return 8 * static_cast<std::int64_t>(r_) + index_; }
    bool is_very_important_case() const { return c1_ == -C_.c(); }

    WallQuery with_bound(std::int64_t bound) const;

private:
    IntegerLattice lattice_;
    LatticeVector c1_;
    SpinCStructure C_;
    std::int64_t p1_;
    std::int64_t c2_;
    int r_;
    std::int64_t bound_;
    Signature signature_;
    std::int64_t index_;
};

/// A certified wall: delta together with its derived classes.
struct WallClass {
    LatticeVector delta;
    /// c1 - 2 delta
    LatticeVector e;
    /// -C - 2 delta
    LatticeVector Delta;
    std::int64_t e_square = 0;
    /// chi_C of the line bundle whose Dirac condition fired: L_delta for
    /// plus, L_{c1 - delta} for minus.
    std::int64_t chi = 0;
    Orientation orientation = Orientation::plus;

    friend bool operator==(const WallClass&, const WallClass&) = default;
};

/// Per-formulation verdicts for one delta; all three must agree.
struct FormulationVerdicts {
    bool squares = false; // 0 >= (c1 - 2d)^2 >= p1, (C + 2d)^2 >= 8r + I
    bool chi_form = false; // c1^2/4 <= c1.d - d^2 <= (c1^2 - p1)/4, -C.d - d^2 <= C^2/4 - I/4 - 2r
    bool delta_form = false; // 0 >= (D + c1 + C)^2 >= p1, D^2 >= 8r + I with D = -C - 2d
};

/// Evaluates every formulation, throws FormulationMismatch on disagreement.
FormulationVerdicts evaluate_formulations(const WallQuery& query, const LatticeVector& delta,
                                          Orientation orientation = Orientation::plus);

/// e = c1 (mod 2) and e^2 = p1.
bool is_hurdle_class(const WallQuery& query, const LatticeVector& e);

/// Shared verdict of the three equivalent wall formulations.
bool is_wall_class(const WallQuery& query, const LatticeVector& delta,
                   Orientation orientation = Orientation::plus);

/// Builds the wall record; requires is_wall_class(query, delta, orientation).
WallClass make_wall_class(const WallQuery& query, const LatticeVector& delta, Orientation orientation);

/// Search region derived from a query before enumeration.
struct SearchRegion {
    CoordinateBox requested;
    CoordinateBox searched;
    /// The form was definite and the box was shrunk to the region that can
    /// hold walls at all.
    bool tightened = false;
    /// Every wall of the lattice lies inside `searched`; only possible for
    /// definite forms.
    bool complete_globally = false;
};

SearchRegion search_region(const WallQuery& query);

struct EnumerationOptions {
    unsigned workers = 1;
    /// Safety cap on visited search nodes; see enumerate_walls.
    std::uint64_t max_box = 100'000'000;
};

struct WallEnumeration {
    std::vector<WallClass> walls;
    std::int64_t box_bound = 0;
    SearchRegion region;
    std::uint64_t nominal_points = 0;
    std::uint64_t nodes_visited = 0;
    std::uint64_t candidates_evaluated = 0;
};

class BoxTooLarge : public ValidationError {
public:
    BoxTooLarge(std::uint64_t nominal_points, std::uint64_t cap);
    std::uint64_t nominal_points() const { return nominal_; }

private:
    std::uint64_t nominal_;
};

/// Every wall (both orientations) with delta in the coefficient box, ordered
/// lexicographically by delta, plus before minus. The search prunes branches
/// with exact interval bounds and checks all three formulations at each
/// surviving candidate. The work is split over `workers` by the first
/// coefficient; output does not depend on the worker count. When the box
/// holds more than `max_box` points the search still runs, but is rejected
/// with BoxTooLarge once it visits more than `max_box` nodes.
WallEnumeration enumerate_walls(const WallQuery& query, const EnumerationOptions& options = {});

/// Evaluates is_wall_class on every point of the requested box with no
/// pruning. Returns the walls found; used as the oracle for enumerate_walls.
WallEnumeration enumerate_walls_exhaustive(const WallQuery& query);

struct EmptinessCertificate {
    enum class Status { valid, theorem_silent, not_applicable };

    Status status = Status::not_applicable;
    std::int64_t eight_r = 0;
    std::int64_t minus_I = 0;
    /// Symbolic steps with the query's numbers substituted.
    std::vector<std::string> derivation;
    /// Box search outcome; absent when not applicable.
    std::optional<WallEnumeration> box_search;
};

const char* to_string(EmptinessCertificate::Status s);

/// Arithmetic verdict only, without the box search.
EmptinessCertificate::Status emptiness_status(const WallQuery& query);

/// Very important case c1 = -C: when 8r > -I the wall system is empty.
EmptinessCertificate emptiness_certificate(const WallQuery& query, const EnumerationOptions& options = {});

struct WitnessResult {
    enum class Status { found, none_in_box, hypothesis_unmet };

    Status status = Status::none_in_box;
    std::optional<LatticeVector> delta;
};

const char* to_string(WitnessResult::Status s);

/// Looks for delta with delta.(delta - K) >= 2 (r - 1), given -K^2 < 8(r - 1).
/// Candidates are ordered by max-norm first and lexicographically within a
/// shell, so the simplest witness is returned.
WitnessResult witness_search(const IntegerLattice& picard, const LatticeVector& K, int r, std::int64_t bound);

/// 2 delta.H < K.H
bool polarization_check(const IntegerLattice& picard, const LatticeVector& delta, const LatticeVector& K,
                        const LatticeVector& H);

} // namespace spinwalls
