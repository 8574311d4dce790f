#include "spinwalls/cli.hpp"

#include "spinwalls/errors.hpp"
#include "spinwalls/index_theory.hpp"
#include "spinwalls/json_io.hpp"
#include "spinwalls/manifest.hpp"
#include "spinwalls/stable_pairs.hpp"
#include "spinwalls/surface.hpp"
#include "spinwalls/walls.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace spinwalls::cli {

namespace {

struct Flags {
    bool pretty = false;
    std::optional<std::int64_t> bound;
    std::optional<std::uint64_t> max_box;
    unsigned workers = 1;
    std::optional<int> r;
};

std::uint64_t parse_cap(const std::string& text, const std::string& what)
{
    std::uint64_t v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || v == 0)
        throw ValidationError(what + " must be a positive integer, got '" + text + "'");
    return v;
}

EnumerationOptions enumeration_options(const Flags& flags)
{
    EnumerationOptions opts;
    opts.workers = flags.workers == 0 ? 1 : flags.workers;
    if (flags.max_box) {
        opts.max_box = *flags.max_box;
    } else if (const char* env = std::getenv("SPINWALLS_MAX_BOX"); env && *env) {
        opts.max_box = parse_cap(env, "SPINWALLS_MAX_BOX");
    }
    return opts;
}

std::int64_t index_of(const Manifest& m, const IntegerLattice& L)
{
    return m.find_int("query", "index").value_or(L.signature().index);
}

int r_of(const Manifest& m, const Flags& flags)
{
    if (flags.r)
        return *flags.r;
    const std::int64_t r = m.get_int("query", "r");
    if (r < 1 || r > 1'000'000)
        throw ValidationError(m.source() + ": query.r must lie in [1, 1000000], got " + std::to_string(r));
    return static_cast<int>(r);
}

LatticeVector checked_vector(const Manifest& m, const IntegerLattice& L, const std::string& section,
                             const std::string& key)
{
    LatticeVector v = m.get_vector(section, key);
    if (v.size() != L.rank())
        throw ValidationError(m.source() + ": " + section + "." + key + " has " + std::to_string(v.size()) +
                              " coefficients, the lattice has rank " + std::to_string(L.rank()));
    return v;
}

SpinCStructure spin_of(const Manifest& m, const IntegerLattice& L)
{
    return SpinCStructure(L, checked_vector(m, L, "spin", "C"));
}

// p1 from [bundle] p1 directly, or from c1 and c2.
std::int64_t p1_of(const Manifest& m, const IntegerLattice& L, const LatticeVector& c1)
{
    const auto p1 = m.find_int("bundle", "p1");
    const auto c2 = m.find_int("bundle", "c2");
    if (p1 && c2 && *p1 != BundleTopology{c1, *c2}.p1(L))
        throw ValidationError(m.source() + ": bundle.p1 = " + std::to_string(*p1) + " contradicts c1^2 - 4 c2 = " +
                              std::to_string(BundleTopology{c1, *c2}.p1(L)));
    if (p1)
        return *p1;
    if (c2)
        return BundleTopology{c1, *c2}.p1(L);
    throw ValidationError(m.source() + ": [bundle] needs p1 or c2");
}

WallQuery query_of(const Manifest& m, const Flags& flags)
{
    const IntegerLattice L = m.lattice();
    const LatticeVector c1 = checked_vector(m, L, "bundle", "c1");
    const std::int64_t p1 = p1_of(m, L, c1);
    const std::int64_t bound = flags.bound ? *flags.bound : m.get_int("query", "bound");
    return WallQuery(L, c1, spin_of(m, L), p1, r_of(m, flags), bound, m.find_int("query", "index"));
}

Json query_json(const WallQuery& q)
{
    return Json{{"rank", q.lattice().rank()},
                {"signature", to_json(q.signature())},
                {"c1", to_json(q.c1())},
                {"C", to_json(q.C())},
                {"p1", q.p1()},
                {"c2", q.c2()},
                {"r", q.r()},
                {"I", q.index()},
                {"dirac_threshold", q.dirac_threshold()},
                {"very_important_case", q.is_very_important_case()}};
}

SurfaceInvariants surface_of(const Manifest& m)
{
    SurfaceInvariants s;
    s.K_square = m.get_int("surface", "K2");
    s.p_g = m.get_int("surface", "pg");
    s.q = m.get_int("surface", "q");
    s.c2_top = m.find_int("surface", "c2");
    return s;
}

// "0:section, 1:free, 3/2:section"
std::vector<SubbundleCandidate> candidates_of(const Manifest& m)
{
    std::vector<SubbundleCandidate> out;
    std::istringstream in(m.get_string("pairs", "candidates"));
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ValidationError(m.source() + ": candidate '" + item + "' is not 'deg:section' or 'deg:free'");
        std::string kind = item.substr(colon + 1);
        std::erase_if(kind, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (kind != "section" && kind != "free")
            throw ValidationError(m.source() + ": candidate kind must be 'section' or 'free', got '" + kind + "'");
        out.push_back({Rational::parse(item.substr(0, colon)), kind == "section"});
    }
    if (out.empty())
        throw ValidationError(m.source() + ": pairs.candidates is empty");
    return out;
}

// ---------------------------------------------------------------------------
// Commands

Json cmd_lattice_info(const Manifest& m)
{
    const IntegerLattice L = m.lattice();
    Json out = lattice_info_json(L);
    if (m.has("spin", "C")) {
        const LatticeVector C = checked_vector(m, L, "spin", "C");
        out["C"] = to_json(C);
        out["C_characteristic"] = L.is_characteristic(C);
        out["C_square"] = L.square(C);
    }
    return out;
}

Json cmd_chi_line(const Manifest& m, const Flags& flags)
{
    const IntegerLattice L = m.lattice();
    const SpinCStructure C = spin_of(m, L);
    const LatticeVector delta = checked_vector(m, L, "bundle", "delta");
    const DiracIndex chi = chi_line(L, C.c(), delta, index_of(m, L));
    Json out{{"delta", to_json(delta)}, {"chi", to_json(chi)}};
    if (flags.r || m.has("query", "r"))
        out["vcodim_jumping"] = to_json(vcodim_jumping(r_of(m, flags), chi.value));
    return out;
}

Json cmd_chi_rank2(const Manifest& m, const Flags& flags)
{
    const IntegerLattice L = m.lattice();
    const SpinCStructure C = spin_of(m, L);
    const LatticeVector c1 = checked_vector(m, L, "bundle", "c1");
    const std::int64_t p1 = p1_of(m, L, c1);
    const std::int64_t diff = L.square(c1) - p1;
    if (diff % 4 != 0)
        throw ValidationError(m.source() + ": p1 is not c1^2 - 4 c2 for an integer c2");
    const BundleTopology E{c1, diff / 4};
    const std::int64_t I = index_of(m, L);
    const DiracIndex chi = chi_rank2(L, C.c(), E, I);
    Json out{{"c1", to_json(c1)}, {"c2", E.c2}, {"p1", p1}, {"chi", to_json(chi)}};
    if (m.has("bundle", "delta")) {
        const LatticeVector delta = checked_vector(m, L, "bundle", "delta");
        const Rational a = chi_line(L, C.c(), delta, I).value;
        const Rational b = chi_line(L, C.c(), c1 - delta, I).value;
        out["splitting"] = Json{{"delta", to_json(delta)},
                                {"chi_delta", to_json(a)},
                                {"chi_complement", to_json(b)},
                                {"additive", a + b == chi.value}};
    }
    if (flags.r || m.has("query", "r"))
        out["vcodim_jumping"] = to_json(vcodim_jumping(r_of(m, flags), chi.value));
    return out;
}

Json cmd_vdim(const Manifest& m, const Flags& flags)
{
    std::int64_t p1 = 0;
    int b_plus = 0;
    if (m.has_section("lattice")) {
        const IntegerLattice L = m.lattice();
        p1 = m.has("bundle", "c1") ? p1_of(m, L, checked_vector(m, L, "bundle", "c1")) : m.get_int("bundle", "p1");
        b_plus = L.signature().b_plus;
    } else {
        p1 = m.get_int("bundle", "p1");
    }
    if (const auto bp = m.find_int("query", "b_plus"))
        b_plus = static_cast<int>(*bp);
    const InstantonDimension d = vdim_instanton(p1, b_plus);
    Json out{{"p1", p1}, {"b_plus", b_plus}, {"instanton", to_json(d)}};
    if ((flags.r || m.has("query", "r")) && m.has_section("spin")) {
        const IntegerLattice L = m.lattice();
        const LatticeVector c1 = checked_vector(m, L, "bundle", "c1");
        const BundleTopology E{c1, (L.square(c1) - p1) / 4};
        const Rational chi = chi_rank2(L, spin_of(m, L).c(), E, index_of(m, L)).value;
        const int r = r_of(m, flags);
        const JumpingDimension j = jumping_vdim(p1, b_plus, r, chi);
        out["jumping"] = Json{{"r", r}, {"chi", to_json(chi)}, {"vdim", to_json(j.vdim)}};
        out["jumping"]["half"] = j.half ? Json(*j.half) : Json(nullptr);
    }
    return out;
}

Json cmd_walls(const Manifest& m, const Flags& flags)
{
    const WallQuery q = query_of(m, flags);
    Json out{{"query", query_json(q)}};
    const Json body = to_json(enumerate_walls(q, enumeration_options(flags)));
    for (const auto& [k, v] : body.items())
        out[k] = v;
    return out;
}

Json cmd_certify(const Manifest& m, const Flags& flags)
{
    const WallQuery q = query_of(m, flags);
    Json out{{"query", query_json(q)}};
    const Json body = to_json(emptiness_certificate(q, enumeration_options(flags)));
    for (const auto& [k, v] : body.items())
        out[k] = v;
    return out;
}

Json cmd_surface_check(const Manifest& m, int& code)
{
    const SurfaceReport report = surface_consistency(surface_of(m));
    if (!report.consistent())
        code = exit_validation;
    return to_json(report);
}

Json cmd_surface_threshold(const Manifest& m, const Flags& flags)
{
    const SurfaceInvariants s = surface_of(m);
    const SurfaceReport report = surface_consistency(s);
    report.require_consistent();
    const int r = r_of(m, flags);
    return Json{{"r", r},
                {"K2", s.K_square},
                {"I", to_json(report.index)},
                {"threshold", spin_invariance_threshold(s, r)},
                {"eight_r", 8 * static_cast<std::int64_t>(r)},
                {"minus_I", to_json(-report.index)}};
}

Json cmd_pairs_chain(const Manifest& m)
{
    const Rational degE = m.get_rational("pairs", "degE");
    Json out = to_json(flip_chain(degE));
    const ClosedInterval range = nonempty_range(degE);
    out["nonempty_range"] = range.empty ? Json(nullptr) : Json::array({to_json(range.lo), to_json(range.hi)});
    return out;
}

Json cmd_pairs_stable(const Manifest& m)
{
    const Rational degE = m.get_rational("pairs", "degE");
    Json out{{"degE", to_json(degE)}};
    const Rational sigma = m.get_rational("pairs", "sigma");
    if (m.has("pairs", "tau") || m.has("pairs", "vol"))
        out["sigma_from_tau"] =
            sigma_from_tau(m.get_double("pairs", "tau"), m.get_double("pairs", "vol"), degE.to_double());
    const auto candidates = candidates_of(m);
    Json verdicts = Json::array();
    for (const auto& c : candidates)
        verdicts.push_back(Json{{"deg_L", to_json(c.deg_L)},
                                {"section", c.has_section},
                                {"stable", is_sigma_stable(c.deg_L, c.has_section, degE, sigma)}});
    out["sigma"] = to_json(sigma);
    out["candidates"] = verdicts;
    out["stable"] = is_pair_stable(candidates, degE, sigma);
    const FlipChain chain = flip_chain(degE);
    const auto chamber = chain.chamber_of(sigma);
    out["chamber"] = chamber ? Json(*chamber) : Json(nullptr);
    return out;
}

Json demo_cp2()
{
    // CP^2: b+ = 1, c1 = 0, c2 = 2.
    const IntegerLattice L = unit_lattice(1);
    const BundleTopology E{LatticeVector{0}, 2};
    const InstantonDimension d = vdim_instanton(L, E, L.signature().b_plus);
    Json out{{"c1", 0}, {"c2", E.c2}, {"p1", E.p1(L)}, {"b_plus", 1}, {"vdim", d.vdim}};
    out["degree"] = d.degree ? Json(*d.degree) : Json(nullptr);
    return out;
}

Json demo_emptiness_sweep(const Flags& flags)
{
    const EnumerationOptions opts = enumeration_options(flags);
    const std::int64_t bound = flags.bound.value_or(6);
    Json rows = Json::array();
    bool all_valid = true;
    for (int n = 2; n <= 9; ++n) {
        std::vector<IntegerLattice> parts{unit_lattice(1)};
        for (int i = 0; i < n; ++i)
            parts.push_back(unit_lattice(-1));
        const IntegerLattice L = direct_sum(parts);
        LatticeVector K(L.rank());
        K[0] = -3;
        for (std::size_t i = 1; i < L.rank(); ++i)
            K[i] = 1;
        const std::int64_t I = L.signature().index;
        const std::int64_t r0 = (-I) / 8 + 1;
        for (std::int64_t r = std::max<std::int64_t>(1, r0); r < r0 + 2; ++r) {
            const WallQuery q = WallQuery::from_c2(L, K, SpinCStructure(L, -K), 2, static_cast<int>(r), bound);
            const EmptinessCertificate c = emptiness_certificate(q, opts);
            const bool empty = c.box_search && c.box_search->walls.empty();
            all_valid = all_valid && c.status == EmptinessCertificate::Status::valid && empty;
            rows.push_back(Json{{"n", n},
                                {"I", I},
                                {"r", r},
                                {"p1", q.p1()},
                                {"certificate", to_string(c.status)},
                                {"box_search", empty ? "empty" : "nonempty"},
                                {"nodes_visited", c.box_search->nodes_visited}});
        }
    }
    return Json{{"bound", bound}, {"cases", rows}, {"all_valid", all_valid}};
}

Json error_json(const char* kind, const std::string& message)
{
    return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact arithmetic for Spin^C wall structures on 4-manifolds", "spinwalls"};
    app.require_subcommand(1);
    Flags flags;
    std::string manifest_path;
    std::optional<std::string> max_box_text;

    auto add_common = [&](CLI::App* sub, bool needs_manifest) {
        if (needs_manifest)
            sub->add_option("manifest", manifest_path, "Manifest file")->required();
        sub->add_flag("--pretty", flags.pretty, "Indent the JSON output");
        sub->add_option("--bound", flags.bound, "Override query.bound")->check(CLI::NonNegativeNumber);
        sub->add_option("--max-box", max_box_text, "Safety cap on search nodes");
        sub->add_option("--workers", flags.workers, "Wall enumeration threads")->check(CLI::Range(1u, 256u));
        sub->add_option("--r", flags.r, "Override query.r")->check(CLI::Range(1, 1'000'000));
    };

    std::function<Json(int&)> action;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, bool needs_manifest,
                    std::function<Json(int&)> fn) {
        CLI::App* sub = parent->add_subcommand(name, help);
        add_common(sub, needs_manifest);
        sub->callback([&action, fn = std::move(fn)] { action = fn; });
        return sub;
    };
    auto load = [&] { return Manifest::load(manifest_path); };

    CLI::App* lattice = app.add_subcommand("lattice", "Lattice invariants")->require_subcommand(1);
    leaf(lattice, "info", "Rank, signature, parity, determinant", true,
         [&](int&) { return cmd_lattice_info(load()); });

    CLI::App* index = app.add_subcommand("index", "Dirac indices and dimensions")->require_subcommand(1);
    leaf(index, "chi-line", "chi_C of a line bundle", true, [&](int&) { return cmd_chi_line(load(), flags); });
    leaf(index, "chi-rank2", "chi_C of a rank-2 bundle", true, [&](int&) { return cmd_chi_rank2(load(), flags); });
    leaf(index, "vdim", "Instanton and jumping dimensions", true, [&](int&) { return cmd_vdim(load(), flags); });

    CLI::App* walls = app.add_subcommand("walls", "Wall classes")->require_subcommand(1);
    leaf(walls, "enumerate", "Every wall in the coefficient box", true,
         [&](int&) { return cmd_walls(load(), flags); });

    leaf(&app, "certify", "Emptiness certificate for c1 = -C", true,
         [&](int&) { return cmd_certify(load(), flags); });

    CLI::App* surface = app.add_subcommand("surface", "Surface numerology")->require_subcommand(1);
    leaf(surface, "check", "Noether and Betti consistency", true,
         [&](int& code) { return cmd_surface_check(load(), code); });
    leaf(surface, "threshold", "Spin-invariance threshold", true,
         [&](int&) { return cmd_surface_threshold(load(), flags); });

    CLI::App* pairs = app.add_subcommand("pairs", "Stable pairs")->require_subcommand(1);
    leaf(pairs, "chain", "sigma-chambers and critical values", true, [&](int&) { return cmd_pairs_chain(load()); });
    leaf(pairs, "stable", "Stability of a pair against candidates", true,
         [&](int&) { return cmd_pairs_stable(load()); });

    CLI::App* demo = app.add_subcommand("demo", "Bundled worked examples")->require_subcommand(1);
    leaf(demo, "barlow", "Full numerical chain on the Barlow surface", false,
         [&](int&) { return to_json(barlow_demo(enumeration_options(flags))); });
    leaf(demo, "cp2", "Instanton dimension on CP^2", false, [&](int&) { return demo_cp2(); });
    leaf(demo, "emptiness-sweep", "Emptiness over <1> + n<-1>, n = 2..9", false,
         [&](int&) { return demo_emptiness_sweep(flags); });

    auto emit = [&](const Json& j) { out << (flags.pretty ? j.dump(2) : j.dump()) << '\n'; };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        emit(error_json("usage", e.what()));
        err << "spinwalls: " << e.what() << '\n';
        return exit_validation;
    }

    try {
        if (max_box_text)
            flags.max_box = parse_cap(*max_box_text, "--max-box");
        int code = exit_ok;
        const Json result = action(code);
        emit(result);
        return code;
    } catch (const FormulationMismatch& e) {
        emit(error_json("formulation_mismatch", e.what()));
        err << "spinwalls: internal formulation disagreement: " << e.what() << '\n';
        return exit_mismatch;
    } catch (const ValidationError& e) {
        emit(error_json("validation", e.what()));
        err << "spinwalls: " << e.what() << '\n';
        return exit_validation;
    } catch (const ArithmeticOverflow& e) {
        emit(error_json("overflow", e.what()));
        err << "spinwalls: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        emit(error_json("internal", e.what()));
        err << "spinwalls: " << e.what() << '\n';
        return exit_internal;
    }
}

} // namespace spinwalls::cli
