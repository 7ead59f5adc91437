#include <random>
#include <set>

#include "doctest.h"
#include "ferrers/codes.hpp"
#include "oracles.hpp"

using namespace ferrers;

namespace {

FerrersDiagram D(std::vector<int> c) { return FerrersDiagram(std::move(c)); }

// Rank over a prime field by plain modular elimination, independent of the field tables.
int rank_mod_p(std::vector<std::vector<int>> m, int p) {
    int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0, r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] % p) piv = i;
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        int inv = 1;
        while (m[r][c] * inv % p != 1) ++inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            int f = m[i][c] * inv % p;
            for (int j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

// Minimum rank over every nonzero coefficient vector, prime fields only.
int oracle_distance(const MatrixCode& c) {
    int p = c.F().q(), k = c.k();
    long long total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    int best = kInfiniteDistance;
    for (long long x = 1; x < total; ++x) {
        std::vector<std::vector<int>> m(c.rows, std::vector<int>(c.cols, 0));
        long long y = x;
        for (int t = 0; t < k; ++t) {
            int coef = static_cast<int>(y % p);
            y /= p;
            for (int i = 0; i < c.rows; ++i)
                for (int j = 0; j < c.cols; ++j) m[i][j] = (m[i][j] + coef * c.basis[t].at(i, j)) % p;
        }
        best = std::min(best, rank_mod_p(m, p));
    }
    return best;
}

// All codewords, for small codes.
std::vector<Matrix> codewords(const MatrixCode& c) {
    int q = c.F().q(), k = c.k();
    long long total = 1;
    for (int i = 0; i < k; ++i) total *= q;
    std::vector<Matrix> out;
    for (long long x = 0; x < total; ++x) {
        std::vector<int> coeffs(k);
        long long y = x;
        for (int t = 0; t < k; ++t) {
            coeffs[t] = static_cast<int>(y % q);
            y /= q;
        }
        out.push_back(k ? linear_combination(c.F(), c.basis, coeffs) : Matrix(c.rows, c.cols));
    }
    return out;
}

}  // namespace

TEST_CASE("minimum rank distance basics") {
    auto F2 = field_of_order(2);
    auto id = make_code(F2, square(3), 3, 3, {identity(3)});
    CHECK(min_rank_distance(id) == 3);
    auto zero = zero_code(F2, square(3), 3, 3);
    CHECK(min_rank_distance(zero) == kInfiniteDistance);
    CHECK_FALSE(is_mfd(zero, 2));
    Matrix e(3, 3);
    e.at(2, 0) = 1;
    auto with_unit = make_code(F2, square(3), 3, 3, {identity(3), e});
    CHECK(min_rank_distance(with_unit) == 1);
    auto g = gabidulin_mrd(4, 4, 3, 2);
    CHECK(g.k() == 8);
    CHECK(min_rank_distance(g) == 3);
    CHECK(oracle_distance(g) == 3);
    CHECK_THROWS_AS(make_code(F2, D({2, 1}), 2, 2, {identity(2)}), DomainError);
}

TEST_CASE("enumeration guard") {
    auto big = gabidulin_mrd(5, 5, 1, 2);  // full 25-dimensional space
    CHECK(min_rank_distance(big) == 1);    // rank-one basis element short-circuits
    auto g = gabidulin_mrd(5, 5, 2, 2);    // k = 20 is within the guard
    CHECK(g.k() == 20);
    auto F3 = field_of_order(3);
    auto h = gabidulin_mrd(4, 4, 2, F3);
    auto sub = make_code(F3, square(4), 4, 4, h.basis);
    CHECK(sub.k() == 12);
    auto g6 = gabidulin_mrd(6, 6, 2, 2);
    CHECK(g6.k() == 30);
    CHECK_THROWS_AS(min_rank_distance(g6), ResourceError);
}

TEST_CASE("Gabidulin codes are MRD") {
    for (int q : {2, 3})
        for (int n = 1; n <= 4; ++n)
            for (int d = 1; d <= n; ++d) {
                auto c = gabidulin_mrd(n, n, d, q);
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(d);
                CHECK(c.k() == n * (n - d + 1));
                CHECK(is_mfd(c, d));
                CHECK(min_rank_distance(c) == d);
                if (c.k() <= 9) CHECK(oracle_distance(c) == d);
            }
    auto c333 = gabidulin_mrd(3, 3, 3, 2);
    CHECK(c333.k() == 3);
    for (const auto& M : codewords(c333))
        if (!M.is_zero()) CHECK(rank(c333.F(), M) == 3);
    CHECK(gabidulin_mrd(4, 3, 3, 2).k() == 4);
    CHECK(gabidulin_mrd(2, 2, 1, 2).k() == 4);
    for (auto [m, n] : std::vector<std::pair<int, int>>{{3, 5}, {5, 3}, {2, 4}, {4, 2}}) {
        auto c = gabidulin_mrd(m, n, 2, 2);
        CHECK(c.rows == m);
        CHECK(c.cols == n);
        CHECK(c.k() == std::max(m, n) * (std::min(m, n) - 1));
        CHECK(oracle_distance(c) == 2);
    }
    CHECK(min_rank_distance(gabidulin_mrd(3, 3, 2, field_of_order(4))) == 2);
    CHECK_THROWS_AS(gabidulin_mrd(3, 3, 4, 2), DomainError);
}

TEST_CASE("singleton-type bound on subcodes") {
    std::mt19937 rng(17);
    for (int t = 0; t < 40; ++t) {
        int n = 3 + static_cast<int>(rng() % 2);
        int d = 1 + static_cast<int>(rng() % n);
        auto c = gabidulin_mrd(n, n, d, 2);
        // shorten at random removable points
        int steps = static_cast<int>(rng() % 5);
        for (int s = 0; s < steps && !c.support.empty(); ++s) {
            auto rem = removable_points(c.support);
            c = shorten(c, rem[rng() % rem.size()]);
        }
        int dist = min_rank_distance(c);
        CHECK(dist >= d);
        if (dist != kInfiniteDistance)
            for (int e = 1; e <= std::min(dist, c.support.order()); ++e) CHECK(c.k() <= nu_min_value(c.support, e));
    }
}

TEST_CASE("shorten and include") {
    auto c = gabidulin_mrd(3, 3, 2, 2);
    CHECK(c.k() == 6);
    auto s = shorten(c, Point{3, 3});
    CHECK(s.support == D({3, 3, 2}));
    CHECK(s.k() == 5);
    CHECK(nu_min_value(D({3, 3, 2}), 2) == 5);
    CHECK(is_mfd(s, 2));
    for (const auto& M : s.basis) CHECK(M.at(2, 2) == 0);

    Matrix e(3, 3);
    e.at(0, 0) = 1;
    auto u = make_code(field_of_order(2), square(3), 3, 3, {e});
    CHECK(shorten(u, Point{3, 3}).k() == 1);
    CHECK_THROWS_AS(shorten(c, Point{2, 2}), DomainError);

    auto m3 = gabidulin_mrd(3, 3, 3, 2);
    auto inc = include(m3, g_family(4));
    CHECK(inc.support == D({4, 3, 3, 1}));
    CHECK(inc.rows == 4);
    CHECK(inc.cols == 4);
    CHECK(inc.k() == 3);
    CHECK(min_rank_distance(inc) == 3);
    CHECK(nu_min_value(g_family(4), 3) == 4);
    CHECK_FALSE(is_mfd(inc, 3));
    CHECK_THROWS_AS(include(m3, D({2, 2, 2})), DomainError);
}

TEST_CASE("reduce along a path") {
    auto c = gabidulin_mrd(3, 3, 3, 2);
    // nu_min((3,3,2),3) = 2 and nu_min((3,2,2),3) = 1, so both steps are shortenings
    CHECK(nu_profile(D({3, 3, 2}), 3) == std::vector<int>{2, 3, 2});
    CHECK(nu_profile(D({3, 2, 2}), 3) == std::vector<int>{1, 2, 2});
    auto r1 = reduce_along_path(c, {square(3), D({3, 3, 2})}, 3, true);
    CHECK(r1.k() == 2);
    CHECK(is_mfd(r1, 3));
    auto r2 = reduce_along_path(c, {square(3), D({3, 3, 2}), D({3, 2, 2})}, 3, true);
    CHECK(r2.k() == 1);
    CHECK(is_mfd(r2, 3));
    auto same = reduce_along_path(c, {square(3)}, 3);
    CHECK(same.basis == c.basis);
    // the reverse edge is not a reduction
    CHECK_THROWS_AS(reduce_along_path(r1, {D({3, 3, 2}), square(3)}, 3), DomainError);
    CHECK_THROWS_AS(reduce_along_path(c, {D({3, 3, 2})}, 3), DomainError);

    // every edge reachable from the full square is a shortening; smaller sources reach inclusions
    auto g = build_digraph(4, 3, false);
    int includes = 0, shortens = 0;
    for (const auto& src : {gabidulin_mrd(4, 4, 3, 2), include(gabidulin_mrd(3, 3, 3, 2), square(3)),
                            gn_construction(4, 2)}) {
        for (const auto& path : deterministic_walks(g, src.support, 30, 1)) {
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                bool inc = path[i + 1].size() > path[i].size();
                if (src.support == square(4)) CHECK_FALSE(inc);
                includes += inc;
                shortens += !inc;
            }
            auto r = reduce_along_path(src, path, 3, true);
            CHECK(r.support == path.back());
            CHECK(r.k() == nu_min_value(path.back(), 3));
        }
    }
    CHECK(includes > 0);
    CHECK(shortens > 0);
    auto src = gabidulin_mrd(4, 4, 3, 2);
    // shortest paths from the source reach every vertex it dominates
    for (const auto& X : g.vertices) {
        auto path = path_from_irreducible(g, X);
        if (path.front() != square(4)) continue;
        CHECK(reduce_along_path(src, path, 3).k() == nu_min_value(X, 3));
    }
}

TEST_CASE("G_n construction") {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {5, 2}, {4, 3}, {5, 3}}) {
        auto c = gn_construction(n, q);
        CAPTURE(n);
        CAPTURE(q);
        CHECK(c.support == g_family(n));
        CHECK(c.k() == (n - 2) * (n - 2));
        CHECK(nu_min_value(g_family(n), 3) == (n - 2) * (n - 2));
        CHECK(is_mfd(c, 3));
        if (c.k() <= 9) CHECK(oracle_distance(c) == 3);
    }
    // rank is 2 + rank of the central block whenever the corner entry is nonzero
    for (int q : {2, 3}) {
        auto c = gn_construction(4, q);
        const Field& F = c.F();
        int checked = 0;
        for (const auto& M : codewords(c)) {
            if (M.at(0, 3) == 0) continue;
            CHECK(M.at(3, 0) == M.at(0, 3));
            Matrix B(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) B.at(i, j) = M.at(i + 1, j + 1);
            CHECK(rank(F, M) == 2 + rank(F, B));
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("puncturing on a row") {
    for (int q : {2, 3}) {
        auto c = gabidulin_mrd(4, 3, 3, q);
        CHECK(c.k() == 4);
        for (int row = 1; row <= 4; ++row) {
            auto p = puncture_row(c, row);
            CHECK(p.rows == 3);
            CHECK(p.support == square(3));
            CHECK(p.k() == 4);
            CHECK(min_rank_distance(p) == 2);
        }
    }
    auto s = make_code(field_of_order(2), rectangle(2, 3), 3, 3, {pad(identity(2), 3, 3)});
    auto p = puncture_row(s, 3);
    CHECK(p.k() == 1);
    CHECK(p.support == rectangle(2, 3));
    CHECK(p.rows == 2);
    CHECK_THROWS_AS(puncture_row(s, 4), DomainError);
}

TEST_CASE("information set matrices") {
    auto sq = gabidulin_mrd(4, 4, 3, 2);
    CHECK(information_set_matrices(sq, 3).empty());
    for (int q : {2, 3}) {
        auto g = gn_construction(4, q);
        auto info = information_set_matrices(g, 3);
        REQUIRE(info.size() == 2);
        REQUIRE(info.count(Point{1, 4}));
        REQUIRE(info.count(Point{4, 1}));
        const auto& X = info.at(Point{1, 4});
        const auto& Y = info.at(Point{4, 1});
        CHECK(X.at(0, 3) == 1);
        CHECK(Y.at(3, 0) == 1);
        CHECK(in_span(g.F(), X, g.basis));
        CHECK(in_span(g.F(), Y, g.basis));
        // zero on the rest of the solving set: columns >= 3 for X, rows >= 3 for Y
        for (int i = 1; i <= 4; ++i)
            for (int j = 3; j <= 4; ++j)
                if (g.support.contains(Point{i, j}) && Point{i, j} != Point{1, 4}) CHECK(X.at(i - 1, j - 1) == 0);
        for (int i = 3; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                if (g.support.contains(Point{i, j}) && Point{i, j} != Point{4, 1}) CHECK(Y.at(i - 1, j - 1) == 0);
    }
    // a non-MFD code has no information set of the right size
    auto inc = include(gabidulin_mrd(3, 3, 3, 2), g_family(4));
    CHECK_THROWS_AS(information_set_matrices(inc, 3), InvariantError);
}

TEST_CASE("E-code assembly and decomposition") {
    // at d = 2 every extension to the full space works
    auto r = punct_inclusion_search(3, 2, 2);
    REQUIRE(r.found);
    CHECK(r.stage == SearchStage::GabidulinVariants);
    CHECK(r.e_code.support == e_family(2, 2, 1));
    CHECK(r.e_code.k() == 4);
    CHECK(r.e_code_mfd);
    CHECK(r.decomposition_ok);
    for (auto [n, d, q] : std::vector<std::tuple<int, int, int>>{{4, 2, 2}, {3, 2, 3}, {5, 2, 2}}) {
        auto w = punct_inclusion_search(n, d, q);
        CAPTURE(n);
        REQUIRE(w.found);
        CHECK(w.extension.size() == static_cast<std::size_t>(d - 1));
        CHECK(w.e_code.k() == n * (n - d) + d - 1);
        CHECK(w.e_code.k() == nu_min_value(e_family(n - 1, d, 1), d));
        CHECK(w.e_code_mfd);
        CHECK(w.decomposition_ok);
        auto dec = decompose_e_code(w.e_code, d);
        CHECK(dec.c0.k() == n * (n - d));
        CHECK(dec.c0_mrd);
        CHECK(dec.extension_mrd);
    }
}

TEST_CASE("Gabidulin stage alone finds no witness at (4,3,2)") {
    PunctSearchOptions opt;
    opt.all_mrd = false;
    auto r = punct_inclusion_search(4, 3, 2, opt);
    CHECK_FALSE(r.found);
    CHECK(r.variants_examined == 15);
    CHECK(r.tuples_examined > 0);
    CHECK_FALSE(r.all_mrd_run);
    CHECK_THROWS_AS(punct_inclusion_search(5, 3, 2), ResourceError);
    CHECK_THROWS_AS(punct_inclusion_search(3, 3, 2), DomainError);
}
