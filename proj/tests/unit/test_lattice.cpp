#include "oracles.hpp"

#include "spinwalls/errors.hpp"
#include "spinwalls/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spinwalls;

namespace {

IntegerLattice barlow() { return parse_lattice_spec("1,-1x8"); }

std::vector<IntegerLattice> standard_lattices()
{
    return {parse_lattice_spec("1"),        parse_lattice_spec("-1"),         parse_lattice_spec("1,-1"),
            parse_lattice_spec("1,-1x8"),   parse_lattice_spec("1,-1x9"),     parse_lattice_spec("H"),
            parse_lattice_spec("E8(-1)"),   parse_lattice_spec("E8(+1)"),     parse_lattice_spec("E8(-1) + Hx3"),
            parse_lattice_spec("Hx2,1x3"),  parse_lattice_spec("E8(-1)x2,Hx3")};
}

LatticeVector lv(const oracle::Vec& v) { return LatticeVector(v); }

} // namespace

TEST(IntegerLattice, RejectsMalformedGram)
{
    EXPECT_THROW(IntegerLattice({{1, 2}, {3, 1}}), ValidationError);
    EXPECT_THROW(IntegerLattice({{1, 0}}), ValidationError);
    EXPECT_THROW(IntegerLattice({{1, 1}, {1, 1}}), ValidationError);
    EXPECT_THROW(IntegerLattice(std::vector<std::vector<std::int64_t>>{}), ValidationError);
}

TEST(IntegerLattice, DegenerateFormsAreNotUnimodularButNondegenerateOnesPass)
{
    const IntegerLattice twice({{2, 0}, {0, -1}});
    EXPECT_EQ(twice.determinant(), -2);
    EXPECT_FALSE(twice.is_unimodular());
    EXPECT_TRUE(barlow().is_unimodular());
}

TEST(IntegerLattice, PairingExamples)
{
    const IntegerLattice L = parse_lattice_spec("1,-1");
    EXPECT_EQ(L.pairing({1, 0}, {0, 1}), 0);
    const LatticeVector K{-3, 1, 1, 1, 1, 1, 1, 1, 1};
    EXPECT_EQ(barlow().square(K), 1);

    // Every simple root of E8(-1) has square -2, and so does the highest root
    // expressed in the simple-root basis.
    const IntegerLattice E = e8_lattice(-1);
    for (std::size_t i = 0; i < 8; ++i)
        EXPECT_EQ(E.square(LatticeVector::basis(8, i)), -2);
    const LatticeVector highest{2, 3, 4, 6, 5, 4, 3, 2};
    EXPECT_EQ(E.square(highest), -2);
    EXPECT_EQ(oracle::pairing(oracle::e8(-1), oracle::coeffs(highest), oracle::coeffs(highest)), -2);
}

TEST(IntegerLattice, RejectsCrossLatticeVectors)
{
    const IntegerLattice L = parse_lattice_spec("1,-1");
    EXPECT_THROW(L.pairing({1, 0, 0}, {0, 1}), ValidationError);
    EXPECT_THROW(L.check(LatticeVector{1}), ValidationError);
    EXPECT_THROW(LatticeVector({1, 2}) + LatticeVector({1}), ValidationError);
}

TEST(IntegerLattice, CharacteristicExamples)
{
    EXPECT_TRUE(parse_lattice_spec("1").is_characteristic({1}));
    EXPECT_TRUE(e8_lattice(-1).is_characteristic(LatticeVector(8)));
    EXPECT_FALSE(parse_lattice_spec("1,-1").is_characteristic({1, 0}));
    EXPECT_TRUE(parse_lattice_spec("1,-1").is_characteristic({1, -3}));
    EXPECT_THROW(SpinCStructure(parse_lattice_spec("1,-1"), {1, 0}), ValidationError);
}

TEST(IntegerLattice, SignatureExamples)
{
    EXPECT_EQ(barlow().signature(), (Signature{1, 8, -7}));
    EXPECT_EQ(parse_lattice_spec("1").signature(), (Signature{1, 0, 1}));
    EXPECT_EQ(e8_lattice(-1).signature(), (Signature{0, 8, -8}));
    EXPECT_EQ(hyperbolic_plane().signature(), (Signature{1, 1, 0}));
}

TEST(IntegerLattice, SignatureNeedsPivotSwapOnZeroDiagonal)
{
    // All diagonal entries vanish; reduction must combine basis vectors.
    const IntegerLattice L({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    const auto [pos, neg] = oracle::eigen_signs(L.gram_rows());
    EXPECT_EQ(L.signature().b_plus, pos);
    EXPECT_EQ(L.signature().b_minus, neg);
}

TEST(IntegerLattice, SignatureMatchesEigenvalueOracle)
{
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 6;
        oracle::Gram g(n, oracle::Vec(n, 0));
        std::uniform_int_distribution<std::int64_t> dist(-4, 4);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                g[i][j] = g[j][i] = dist(rng);
        try {
            const IntegerLattice L(g);
            const auto [pos, neg] = oracle::eigen_signs(g);
            EXPECT_EQ(L.signature().b_plus, pos);
            EXPECT_EQ(L.signature().b_minus, neg);
            ++checked;
        } catch (const ValidationError&) {
            // Degenerate sample.
        }
    }
    EXPECT_GT(checked, 200);
}

TEST(LatticeSpec, Examples)
{
    const IntegerLattice a = parse_lattice_spec("1,-1x8");
    EXPECT_EQ(a.rank(), 9u);
    EXPECT_EQ(a.signature().index, -7);
    const IntegerLattice h = parse_lattice_spec("H");
    EXPECT_EQ(h.rank(), 2u);
    EXPECT_EQ(h.signature().index, 0);
    const IntegerLattice k3 = parse_lattice_spec("E8(-1) + Hx3");
    EXPECT_EQ(k3.rank(), 14u);
    EXPECT_EQ(k3.signature().index, -8);
}

TEST(LatticeSpec, GramBlockAndErrors)
{
    const IntegerLattice g = parse_lattice_spec("gram:[[2,1],[1,-1]], 1");
    EXPECT_EQ(g.rank(), 3u);
    EXPECT_EQ(g.gram(0, 1), 1);
    EXPECT_EQ(g.gram(2, 2), 1);
    EXPECT_THROW(parse_lattice_spec(""), ValidationError);
    EXPECT_THROW(parse_lattice_spec("E7"), ValidationError);
    EXPECT_THROW(parse_lattice_spec("1x0"), ValidationError);
    EXPECT_THROW(parse_lattice_spec("gram:[[1,2],[3,4]]"), ValidationError);
    EXPECT_THROW(parse_lattice_spec("gram:[[1,0],[0,1]"), ValidationError);
    EXPECT_THROW(parse_lattice_spec("1,,-1"), ValidationError);
}

TEST(LatticeSpec, E8MatchesOracleGram)
{
    EXPECT_EQ(e8_lattice(-1).gram_rows(), oracle::e8(-1));
    EXPECT_EQ(e8_lattice(1).gram_rows(), oracle::e8(1));
    EXPECT_EQ(e8_lattice(1).determinant(), 1);
    EXPECT_TRUE(e8_lattice(-1).is_even());
}

TEST(SpanRank, Examples)
{
    const IntegerLattice L = barlow();
    std::vector<LatticeVector> five;
    for (std::size_t i = 0; i < 5; ++i)
        five.push_back(LatticeVector::basis(9, i) + LatticeVector::basis(9, 8));
    EXPECT_LE(span_rank(L, five), 5u);
    EXPECT_LT(span_rank(L, five), L.rank());
    EXPECT_EQ(span_rank(L, std::vector<LatticeVector>{}), 0u);
    std::vector<LatticeVector> basis;
    for (std::size_t i = 0; i < 9; ++i)
        basis.push_back(LatticeVector::basis(9, i));
    EXPECT_EQ(span_rank(L, basis), 9u);
    // Dependent list: v, 2v, v + w.
    const LatticeVector v{1, 2, 0, 0, 0, 0, 0, 0, 3}, w{0, 1, 1, 0, 0, 0, 0, 0, 0};
    EXPECT_EQ(span_rank(L, std::vector<LatticeVector>{v, 2 * v, v + w}), 2u);
}

TEST(HermiteNormalForm, ReducedShape)
{
    const auto h = hermite_normal_form({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    ASSERT_EQ(h.size(), 3u);
    // Determinant magnitude of the input is 144; HNF preserves it.
    EXPECT_EQ(h[0][0] * h[1][1] * h[2][2], 144);
    for (std::size_t i = 0; i < h.size(); ++i) {
        std::size_t p = 0;
        while (h[i][p] == 0)
            ++p;
        EXPECT_GT(h[i][p], 0);
        for (std::size_t k = 0; k < i; ++k) {
            EXPECT_GE(h[k][p], 0);
            EXPECT_LT(h[k][p], h[i][p]);
        }
    }
}

// ---------------------------------------------------------------------------
// Properties

TEST(LatticeProperties, PairingSymmetricAndMatchesOracle)
{
    std::mt19937_64 rng(1);
    const auto lattices = standard_lattices();
    for (int i = 0; i < 10000; ++i) {
        const IntegerLattice& L = lattices[i % lattices.size()];
        const auto u = oracle::random_vec(rng, L.rank(), -20, 20);
        const auto v = oracle::random_vec(rng, L.rank(), -20, 20);
        ASSERT_EQ(L.pairing(lv(u), lv(v)), L.pairing(lv(v), lv(u)));
        ASSERT_EQ(L.pairing(lv(u), lv(v)), oracle::pairing(L.gram_rows(), u, v));
    }
}

TEST(LatticeProperties, CharacteristicVectorsFormACosetOfTwoL)
{
    std::mt19937_64 rng(2);
    const auto lattices = standard_lattices();
    for (int i = 0; i < 1000; ++i) {
        const IntegerLattice& L = lattices[i % lattices.size()];
        const auto v = lv(oracle::random_vec(rng, L.rank(), -5, 5));
        const auto w = lv(oracle::random_vec(rng, L.rank(), -5, 5));
        ASSERT_EQ(L.is_characteristic(v), L.is_characteristic(v + 2 * w));
        // Oracle: v.x = x.x (mod 2) for every x in a random sample.
        bool all = true;
        for (std::size_t k = 0; k < L.rank(); ++k) {
            const auto x = oracle::random_vec(rng, L.rank(), -3, 3);
            const auto g = L.gram_rows();
            if ((oracle::pairing(g, oracle::coeffs(v), x) - oracle::pairing(g, x, x)) % 2 != 0)
                all = false;
        }
        if (L.is_characteristic(v)) {
            ASSERT_TRUE(all);
        }
    }
}

TEST(LatticeProperties, VanDerBlijOnUnimodularLattices)
{
    std::mt19937_64 rng(3);
    for (const auto& L : standard_lattices()) {
        if (!L.is_unimodular())
            continue;
        // Solve G v = diag(G) over GF(2); G is invertible mod 2 when unimodular.
        const std::size_t n = L.rank();
        std::vector<std::vector<int>> m(n, std::vector<int>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] = static_cast<int>(((L.gram(i, j) % 2) + 2) % 2);
            m[i][n] = static_cast<int>(((L.gram(i, i) % 2) + 2) % 2);
        }
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t p = col;
            while (p < n && m[p][col] == 0)
                ++p;
            ASSERT_LT(p, n);
            std::swap(m[p], m[col]);
            for (std::size_t i = 0; i < n; ++i)
                if (i != col && m[i][col])
                    for (std::size_t j = col; j <= n; ++j)
                        m[i][j] ^= m[col][j];
        }
        LatticeVector base(n);
        for (std::size_t i = 0; i < n; ++i)
            base[i] = m[i][n];
        ASSERT_TRUE(L.is_characteristic(base));
        for (int k = 0; k < 50; ++k) {
            const auto w = lv(oracle::random_vec(rng, L.rank(), -4, 4));
            const LatticeVector c = base + 2 * w;
            const std::int64_t diff = L.square(c) - L.signature().index;
            ASSERT_EQ(((diff % 8) + 8) % 8, 0) << c.str();
        }
    }
}

TEST(LatticeProperties, SpanRankBoundsAndRowOperationInvariance)
{
    std::mt19937_64 rng(4);
    const IntegerLattice L = barlow();
    std::uniform_int_distribution<int> count(0, 12);
    std::uniform_int_distribution<std::int64_t> mult(-3, 3);
    for (int t = 0; t < 300; ++t) {
        std::vector<LatticeVector> vs;
        const int m = count(rng);
        for (int i = 0; i < m; ++i)
            vs.push_back(lv(oracle::random_vec(rng, 9, -2, 2)));
        const std::size_t r = span_rank(L, vs);
        ASSERT_LE(r, std::min<std::size_t>(vs.size(), 9));
        if (vs.size() >= 2) {
            auto ops = vs;
            std::swap(ops[0], ops[1]);
            ops[0] = ops[0] + mult(rng) * ops[1];
            ops[1] = -ops[1];
            ASSERT_EQ(span_rank(L, ops), r);
        }
    }
}

TEST(LatticeProperties, SignatureIsAdditive)
{
    const auto lattices = standard_lattices();
    for (const auto& A : lattices)
        for (const auto& B : lattices) {
            if (A.rank() + B.rank() > 24)
                continue;
            const Signature s = direct_sum(A, B).signature();
            EXPECT_EQ(s.b_plus, A.signature().b_plus + B.signature().b_plus);
            EXPECT_EQ(s.b_minus, A.signature().b_minus + B.signature().b_minus);
            EXPECT_EQ(s.index, A.signature().index + B.signature().index);
        }
}
