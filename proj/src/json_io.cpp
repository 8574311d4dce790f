#include "spinwalls/json_io.hpp"

namespace spinwalls {

Json to_json(const Rational& r)
{
    if (r.is_integer())
        return r.num();
    return Json::array({r.num(), r.den()});
}

Json to_json(const LatticeVector& v)
{
    Json out = Json::array();
    for (std::int64_t x : v.coeffs())
        out.push_back(x);
    return out;
}

Json to_json(const CoordinateBox& box)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < box.rank(); ++i)
        out.push_back(Json::array({box.lo[i], box.hi[i]}));
    return out;
}

Json to_json(const Signature& s)
{
    return Json{{"b_plus", s.b_plus}, {"b_minus", s.b_minus}, {"index", s.index}};
}

Json lattice_info_json(const IntegerLattice& lattice)
{
    Json gram = Json::array();
    for (const auto& row : lattice.gram_rows())
        gram.push_back(row);
    return Json{{"rank", lattice.rank()},
                {"signature", to_json(lattice.signature())},
                {"determinant", lattice.determinant()},
                {"unimodular", lattice.is_unimodular()},
                {"even", lattice.is_even()},
                {"gram", gram}};
}

Json to_json(const DiracIndex& chi)
{
    return Json{{"value", to_json(chi.value)}, {"integral", chi.integral}, {"characteristic", chi.characteristic}};
}

Json to_json(const InstantonDimension& d)
{
    Json out{{"vdim", d.vdim}, {"even", d.even}};
    out["degree"] = d.degree ? Json(*d.degree) : Json(nullptr);
    return out;
}

Json to_json(const WallClass& w)
{
    return Json{{"delta", to_json(w.delta)}, {"e", to_json(w.e)},       {"Delta", to_json(w.Delta)},
                {"e_square", w.e_square},    {"chi", w.chi},            {"orientation", to_string(w.orientation)}};
}

Json to_json(const WallEnumeration& e)
{
    Json walls = Json::array();
    for (const auto& w : e.walls)
        walls.push_back(to_json(w));
    Json cert{{"box_bound", e.box_bound},
              {"complete_within_box", true},
              {"complete_globally", e.region.complete_globally},
              {"tightened", e.region.tightened},
              {"searched_box", to_json(e.region.searched)},
              {"nominal_points", e.nominal_points},
              {"nodes_visited", e.nodes_visited},
              {"candidates_evaluated", e.candidates_evaluated}};
    return Json{{"count", e.walls.size()}, {"walls", walls}, {"certification", cert}};
}

Json to_json(const EmptinessCertificate& c)
{
    Json out{{"certificate", to_string(c.status)}, {"eight_r", c.eight_r}, {"minus_I", c.minus_I}};
    out["derivation"] = c.derivation;
    if (c.box_search) {
        out["box_search"] = c.box_search->walls.empty() ? "empty" : "nonempty";
        out["search"] = to_json(*c.box_search);
    } else {
        out["box_search"] = nullptr;
    }
    return out;
}

Json to_json(const SurfaceReport& s)
{
    return Json{{"K2", s.K_square},       {"c2", s.c2_top},     {"pg", s.p_g},           {"q", s.q},
                {"chi_O", s.chi_O},       {"I", to_json(s.index)}, {"b_plus", s.b_plus}, {"b_minus", s.b_minus},
                {"b2", s.b2},             {"consistent", s.consistent()}, {"violations", s.violations}};
}

Json to_json(const Multiplicity& m)
{
    Json out{{"status", to_string(m.status)}};
    out["value"] = m.value ? Json(*m.value) : Json(nullptr);
    return out;
}

Json to_json(const FlipChain& chain)
{
    Json chambers = Json::array();
    for (const auto& c : chain.chambers)
        chambers.push_back(Json::array({to_json(c.lo), to_json(c.hi)}));
    Json critical = Json::array();
    for (const auto& v : chain.critical_values)
        critical.push_back(to_json(v));
    Json out{{"degE", to_json(chain.deg_E)}, {"chambers", chambers}, {"critical", critical}};
    if (chain.empty())
        out["labels"] = nullptr;
    else
        out["labels"] = Json{{"max", 0}, {"zero", chain.chambers.size() - 1}};
    return out;
}

Json to_json(const BarlowReport& b)
{
    const auto& h = b.cohomology;
    return Json{{"surface", to_json(b.surface)},
                {"base_points", b.base_points},
                {"cohomology", Json{{"h0", h.h0}, {"h1", h.h1}, {"h2", h.h2}}},
                {"chi_E", b.chi_E},
                {"chi_E_dirac", b.chi_E_dirac},
                {"p1", b.p1},
                {"vdim", b.vdim},
                {"vcodim_jumping", to_json(b.vcodim_jumping)},
                {"brill_noether_vcodim", b.brill_noether_vcodim},
                {"multiplicity", b.multiplicity},
                {"threshold_r1", b.threshold_r1},
                {"emptiness", to_json(b.emptiness)},
                {"sublattice", Json{{"generators", b.sublattice_generators},
                                    {"rank_bound", b.sublattice_rank_bound},
                                    {"picard_rank", b.picard_rank},
                                    {"proper", b.sublattice_proper}}},
                {"gamma0", b.gamma0},
                {"spin_gamma0", b.spin_gamma0}};
}

} // namespace spinwalls
