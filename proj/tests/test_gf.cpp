#include <random>

#include "doctest.h"
#include "ferrers/gf.hpp"

using namespace ferrers;

namespace {

// Determinant over a prime field by cofactor expansion, entries as integers mod p.
long long det_mod(const std::vector<std::vector<int>>& m, int p) {
    int n = static_cast<int>(m.size());
    if (n == 1) return m[0][0] % p;
    long long s = 0;
    for (int c = 0; c < n; ++c) {
        std::vector<std::vector<int>> minor;
        for (int r = 1; r < n; ++r) {
            std::vector<int> row;
            for (int j = 0; j < n; ++j)
                if (j != c) row.push_back(m[r][j]);
            minor.push_back(row);
        }
        long long term = m[0][c] * det_mod(minor, p) % p;
        s = ((c % 2 == 0 ? s + term : s - term) % p + p) % p;
    }
    return s;
}

// Largest r with a nonzero r x r minor.
int rank_by_minors(const Matrix& M, int p) {
    int best = 0;
    for (int rmask = 1; rmask < (1 << M.rows); ++rmask)
        for (int cmask = 1; cmask < (1 << M.cols); ++cmask) {
            int r = __builtin_popcount(rmask);
            if (r != __builtin_popcount(cmask) || r <= best) continue;
            std::vector<std::vector<int>> sub;
            for (int i = 0; i < M.rows; ++i) {
                if (!(rmask >> i & 1)) continue;
                std::vector<int> row;
                for (int j = 0; j < M.cols; ++j)
                    if (cmask >> j & 1) row.push_back(M.at(i, j));
                sub.push_back(row);
            }
            if (det_mod(sub, p) != 0) best = r;
        }
    return best;
}

Matrix random_matrix(std::mt19937& rng, int r, int c, int q) {
    Matrix M(r, c);
    for (auto& v : M.a) v = static_cast<int>(rng() % q);
    return M;
}

}  // namespace

TEST_CASE("field axioms hold exhaustively") {
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}, {2, 4}}) {
        Field F(p, m);
        int q = F.q();
        CAPTURE(q);
        for (int a = 0; a < q; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1) == a);
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
            if (a != 0) CHECK(F.exp(F.log(a)) == a);
            for (int b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                for (int c = 0; c < q; ++c) {
                    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
        // additive group has exponent p
        for (int a = 0; a < q; ++a) {
            int s = 0;
            for (int i = 0; i < p; ++i) s = F.add(s, a);
            CHECK(s == 0);
        }
    }
}

TEST_CASE("moduli are the smallest irreducibles") {
    CHECK(Field(2, 2).modulus() == std::vector<int>{1, 1, 1});
    CHECK(Field(2, 3).modulus() == std::vector<int>{1, 1, 0, 1});
    CHECK(Field(2, 4).modulus() == std::vector<int>{1, 1, 0, 0, 1});
    CHECK(Field(3, 2).modulus() == std::vector<int>{1, 0, 1});
    CHECK(Field(2, 9).q() == 512);
    CHECK_THROWS_AS(Field(2, 10), ResourceError);
    CHECK_THROWS_AS(Field(4, 1), DomainError);
}

TEST_CASE("rank basics and minor oracle") {
    Field F2(2, 1), F3(3, 1);
    for (int n = 1; n <= 6; ++n) CHECK(rank(F2, identity(n)) == n);
    CHECK(rank(F3, Matrix(3, 4)) == 0);
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
        auto M = random_matrix(rng, r, c, 3);
        CHECK(rank(F3, M) == rank_by_minors(M, 3));
    }
    // sparse samples hit low ranks too
    for (int t = 0; t < 200; ++t) {
        Matrix M(4, 4);
        for (auto& v : M.a) v = rng() % 4 == 0 ? static_cast<int>(1 + rng() % 2) : 0;
        CHECK(rank(F3, M) == rank_by_minors(M, 3));
    }
}

TEST_CASE("rank properties on random samples") {
    std::mt19937 rng(11);
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        Field F(p, m);
        for (int t = 0; t < 100; ++t) {
            auto A = random_matrix(rng, 4, 5, F.q());
            auto B = random_matrix(rng, 4, 5, F.q());
            int ra = rank(F, A);
            CHECK(ra == rank(F, transpose(A)));
            CHECK(ra <= 4);
            CHECK(rank(F, add(F, A, B)) <= ra + rank(F, B));
            int s = 1 + static_cast<int>(rng() % (F.q() - 1));
            CHECK(rank(F, scale(F, s, A)) == ra);
        }
    }
}

TEST_CASE("row reduction and span membership") {
    Field F2(2, 1);
    Matrix e11(2, 2), e12(2, 2), e21(2, 2);
    e11.at(0, 0) = 1;
    e12.at(0, 1) = 1;
    e21.at(1, 0) = 1;
    CHECK(in_span(F2, Matrix(2, 2), {e11}));
    CHECK(in_span(F2, Matrix(2, 2), {}));
    CHECK(in_span(F2, e21, {e21}));
    CHECK_FALSE(in_span(F2, e21, {e11, e12}));
    CHECK(in_span(F2, add(F2, e11, e12), {e11, e12}));
    CHECK_THROWS_AS(in_span(F2, Matrix(3, 2), {e11}), DomainError);
    CHECK_THROWS_AS(row_reduce(F2, {e11, Matrix(3, 2)}), DomainError);

    // pivots strictly increase in a custom coordinate order
    Field F3(3, 1);
    std::mt19937 rng(3);
    std::vector<Matrix> basis;
    for (int i = 0; i < 5; ++i) basis.push_back(random_matrix(rng, 3, 3, 3));
    basis.push_back(add(F3, basis[0], basis[1]));
    std::vector<int> order{8, 7, 6, 5, 4, 3, 2, 1, 0};
    auto red = row_reduce(F3, basis, order);
    CHECK(red.size() == 5);
    int last = -1;
    for (const auto& M : red) {
        int piv = -1;
        for (int t = 0; t < 9; ++t)
            if (M.a[order[t]] != 0) {
                piv = t;
                break;
            }
        CHECK(piv > last);
        CHECK(M.a[order[piv]] == 1);
        for (const auto& N : red)
            if (&N != &M) CHECK(N.a[order[piv]] == 0);
        last = piv;
    }
    for (const auto& M : basis) CHECK(in_span(F3, M, red));
}

TEST_CASE("extension embedding conventions") {
    auto F2 = std::make_shared<const Field>(2, 1);
    ExtensionField E4(F2, 2);
    int omega = E4.basis_element(1);
    auto M = vector_to_matrix(E4, {omega});
    CHECK(M.rows == 2);
    CHECK(M.cols == 1);
    CHECK(M.at(0, 0) == 0);
    CHECK(M.at(1, 0) == 1);
    // omega^2 = omega + 1 under the modulus x^2 + x + 1
    CHECK(E4.mul(omega, omega) == E4.add(omega, 1));

    ExtensionField E8(F2, 3);
    std::mt19937 rng(5);
    for (int t = 0; t < 50; ++t) {
        auto A = random_matrix(rng, 3, 4, 2);
        CHECK(vector_to_matrix(E8, matrix_to_vector(E8, A)) == A);
    }
    // scalar multiples of a vector over GF(8) keep the GF(2) rank of the expansion
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            for (int c = 0; c < 8; ++c) {
                std::vector<int> v{a, b, c};
                int r = rank(*F2, vector_to_matrix(E8, v));
                for (int s = 1; s < 8; ++s) {
                    std::vector<int> w{E8.mul(s, a), E8.mul(s, b), E8.mul(s, c)};
                    CHECK(rank(*F2, vector_to_matrix(E8, w)) == r);
                }
            }
    CHECK_THROWS_AS(ExtensionField(F2, 21), ResourceError);
}

TEST_CASE("extension arithmetic and Frobenius") {
    for (auto [p, m, n] : std::vector<std::tuple<int, int, int>>{
             {2, 1, 2}, {2, 1, 3}, {2, 1, 9}, {3, 1, 2}, {3, 1, 5}, {2, 2, 2}, {2, 2, 4}, {5, 1, 3}, {2, 3, 3}, {3, 2, 2}}) {
        auto F = std::make_shared<const Field>(p, m);
        ExtensionField E(F, n);
        int Q = static_cast<int>(E.order());
        CAPTURE(Q);
        std::vector<int> seen(Q, 0);
        for (int a = 0; a < Q; ++a) {
            int fa = E.frobenius(a);
            seen[fa]++;
            if (a != 0) CHECK(E.mul(a, E.inv(a)) == 1);
            for (int b = 0; b < Q; b += (Q > 64 ? 7 : 1)) {
                CHECK(E.frobenius(E.add(a, b)) == E.add(fa, E.frobenius(b)));
                CHECK(E.frobenius(E.mul(a, b)) == E.mul(fa, E.frobenius(b)));
            }
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
        for (int a = 0; a < F->q(); ++a) CHECK(E.frobenius(E.embed(a)) == E.embed(a));
        // the fixed field is exactly the base field
        int fixed = 0;
        for (int a = 0; a < Q; ++a) fixed += E.frobenius(a) == a;
        CHECK(fixed == F->q());
        // embedded base multiplication agrees with the base field
        for (int a = 0; a < F->q(); ++a)
            for (int b = 0; b < F->q(); ++b) CHECK(E.mul(E.embed(a), E.embed(b)) == E.embed(F->mul(a, b)));
    }
}
