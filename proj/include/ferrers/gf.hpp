#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ferrers/errors.hpp"

namespace ferrers {

inline constexpr int kMaxFieldOrder = 512;
inline constexpr long long kMaxExtensionOrder = 1LL << 20;

namespace detail {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int i = 2; i * i <= p; ++i)
        if (p % i == 0) return false;
    return true;
}

// Polynomials over a base ring given by element-wise callbacks; coefficients low to high.
template <class Ops>
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, const Ops& ops) {
    int dm = static_cast<int>(m.size()) - 1;
    int lead_inv = ops.inv(m.back());
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        if (a[i] == 0) continue;
        int f = ops.mul(a[i], lead_inv);
        for (int j = 0; j <= dm; ++j) a[i - dm + j] = ops.sub(a[i - dm + j], ops.mul(f, m[j]));
    }
    a.resize(std::max(dm, 0));
    return a;
}

template <class Ops>
std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& m,
                             const Ops& ops) {
    std::vector<int> c(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = ops.add(c[i + j], ops.mul(a[i], b[j]));
    }
    return poly_mod(c, m, ops);
}

// Monic polynomial of degree n from its lower coefficients encoded in base q.
inline std::vector<int> monic_from_code(long long code, int n, int q) {
    std::vector<int> f(n + 1);
    for (int i = 0; i < n; ++i) {
        f[i] = static_cast<int>(code % q);
        code /= q;
    }
    f[n] = 1;
    return f;
}

// Lexicographically smallest monic irreducible of degree n: smallest base-q code of the
// lower coefficients, irreducibility by trial division with every monic of degree <= n/2.
template <class Ops>
std::vector<int> smallest_irreducible(int n, int q, const Ops& ops) {
    if (n == 1) return {0, 1};
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= q;
    for (long long code = 0; code < total; ++code) {
        auto f = monic_from_code(code, n, q);
        if (f[0] == 0) continue;
        bool irreducible = true;
        for (int dg = 1; dg <= n / 2 && irreducible; ++dg) {
            long long count = 1;
            for (int i = 0; i < dg; ++i) count *= q;
            for (long long gc = 0; gc < count && irreducible; ++gc) {
                auto g = monic_from_code(gc, dg, q);
                auto r = poly_mod(f, g, ops);
                if (std::all_of(r.begin(), r.end(), [](int v) { return v == 0; })) irreducible = false;
            }
        }
        if (irreducible) return f;
    }
    throw InvariantError("no irreducible polynomial found");
}

}  // namespace detail

// GF(p^m) with q <= 512. Element e encodes the polynomial sum digit_i(e) * alpha^i in base p.
class Field {
public:
    Field(int p, int m) : p_(p), m_(m) {
        require(detail::is_prime(p), "field characteristic must be prime");
        require(m >= 1, "extension degree must be positive");
        long long q = 1;
        for (int i = 0; i < m; ++i) {
            q *= p;
            if (q > kMaxFieldOrder) throw ResourceError("field order above " + std::to_string(kMaxFieldOrder));
        }
        q_ = static_cast<int>(q);
        struct PrimeOps {
            int p;
            int add(int a, int b) const { return (a + b) % p; }
            int sub(int a, int b) const { return (a - b + p) % p; }
            int mul(int a, int b) const { return a * b % p; }
            int inv(int a) const {
                for (int x = 1; x < p; ++x)
                    if (a * x % p == 1) return x;
                throw InvariantError("zero has no inverse");
            }
        } ops{p};
        modulus_ = detail::smallest_irreducible(m, p, ops);
        add_.assign(q_ * q_, 0);
        mul_.assign(q_ * q_, 0);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) {
                auto da = digits(a), db = digits(b);
                std::vector<int> s(m_);
                for (int i = 0; i < m_; ++i) s[i] = (da[i] + db[i]) % p_;
                add_[a * q_ + b] = undigits(s);
                mul_[a * q_ + b] = undigits(detail::poly_mulmod(da, db, modulus_, ops));
            }
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) {
                if (add(a, b) == 0) neg_[a] = b;
                if (mul(a, b) == 1) inv_[a] = b;
            }
        build_log_tables();
    }

    int p() const { return p_; }
    int m() const { return m_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int inv(int a) const {
        require(a != 0, "zero has no inverse");
        return inv_[a];
    }
    int div(int a, int b) const { return mul(a, inv(b)); }
    int exp(int i) const { return exp_[((i % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }
    int log(int a) const {
        require(a != 0, "log of zero");
        return log_[a];
    }
    int primitive() const { return exp_[q_ == 2 ? 0 : 1]; }

private:
    std::vector<int> digits(int a) const {
        std::vector<int> d(m_);
        for (int i = 0; i < m_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }
    int undigits(const std::vector<int>& d) const {
        int a = 0;
        for (int i = m_ - 1; i >= 0; --i) a = a * p_ + (i < static_cast<int>(d.size()) ? d[i] : 0);
        return a;
    }
    void build_log_tables() {
        exp_.assign(q_, 0);
        log_.assign(q_, 0);
        for (int g = 1; g < q_; ++g) {
            int x = 1, order = 0;
            do {
                x = mul(x, g);
                ++order;
            } while (x != 1);
            if (order != q_ - 1) continue;
            x = 1;
            for (int i = 0; i < q_ - 1; ++i) {
                exp_[i] = x;
                log_[x] = i;
                x = mul(x, g);
            }
            return;
        }
        throw InvariantError("no primitive element");
    }

    int p_, m_, q_;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_, exp_, log_;
};

// GF(q^n) over a base Field. Element e encodes sum digit_i(e) * omega^i in base q,
// so its coordinates in the polynomial basis 1, omega, ..., omega^{n-1} are its digits.
class ExtensionField {
public:
    ExtensionField(std::shared_ptr<const Field> base, int n, bool force = false) : base_(std::move(base)), n_(n) {
        require(n >= 1, "extension degree must be positive");
        int q = base_->q();
        long long Q = 1;
        for (int i = 0; i < n; ++i) {
            Q *= q;
            if (Q > kMaxExtensionOrder && !force) throw ResourceError("extension order above 2^20");
        }
        order_ = Q;
        const Field& F = *base_;
        modulus_ = detail::smallest_irreducible(n, q, F);
        exp_.assign(static_cast<std::size_t>(Q), 0);
        log_.assign(static_cast<std::size_t>(Q), 0);
        // find a primitive element by walking powers of candidates in index order
        for (long long g = 1; g < Q; ++g) {
            auto gd = coordinates(static_cast<int>(g));
            std::vector<int> x(n, 0);
            x[0] = 1;
            long long ord = 0;
            std::vector<int> one = x;
            do {
                x = detail::poly_mulmod(x, gd, modulus_, F);
                ++ord;
            } while (x != one && ord < Q);
            if (ord != Q - 1) continue;
            x = one;
            for (long long i = 0; i < Q - 1; ++i) {
                int e = from_coordinates(x);
                exp_[i] = e;
                log_[e] = static_cast<int>(i);
                x = detail::poly_mulmod(x, gd, modulus_, F);
            }
            return;
        }
        throw InvariantError("no primitive element in the extension");
    }

    const Field& base() const { return *base_; }
    std::shared_ptr<const Field> base_ptr() const { return base_; }
    int degree() const { return n_; }
    long long order() const { return order_; }
    const std::vector<int>& modulus() const { return modulus_; }

    std::vector<int> coordinates(int e) const {
        std::vector<int> c(n_);
        int q = base_->q();
        for (int i = 0; i < n_; ++i) {
            c[i] = e % q;
            e /= q;
        }
        return c;
    }

    int from_coordinates(const std::vector<int>& c) const {
        require(static_cast<int>(c.size()) == n_, "coordinate vector has the wrong length");
        int q = base_->q();
        long long e = 0;
        for (int i = n_ - 1; i >= 0; --i) e = e * q + c[i];
        return static_cast<int>(e);
    }

    int add(int a, int b) const {
        auto ca = coordinates(a), cb = coordinates(b);
        for (int i = 0; i < n_; ++i) ca[i] = base_->add(ca[i], cb[i]);
        return from_coordinates(ca);
    }
    int mul(int a, int b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(static_cast<long long>(log_[a]) + log_[b]) % (order_ - 1)];
    }
    int pow(int a, long long e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        long long r = (static_cast<long long>(log_[a]) * (e % (order_ - 1))) % (order_ - 1);
        return exp_[r];
    }
    int inv(int a) const {
        require(a != 0, "zero has no inverse");
        return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
    }
    // x -> x^q, the generator of the Galois group over the base field
    int frobenius(int a) const { return pow(a, base_->q()); }
    // omega^i, the i-th polynomial basis element
    int basis_element(int i) const {
        std::vector<int> c(n_, 0);
        c[i] = 1;
        return from_coordinates(c);
    }
    // embeds a base-field element as a constant
    int embed(int a) const {
        std::vector<int> c(n_, 0);
        c[0] = a;
        return from_coordinates(c);
    }

private:
    std::shared_ptr<const Field> base_;
    int n_;
    long long order_ = 0;
    std::vector<int> modulus_;
    std::vector<int> exp_, log_;
};

inline ExtensionField extension_embed(const Field& F, int n, bool force = false) {
    return ExtensionField(std::make_shared<const Field>(F), n, force);
}

// Dense matrix over a Field, 0-based, row-major entries.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
    int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    int at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
    }
    auto operator<=>(const Matrix&) const = default;
};

inline Matrix identity(int n) {
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) M.at(i, i) = 1;
    return M;
}

inline Matrix transpose(const Matrix& M) {
    Matrix T(M.cols, M.rows);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) T.at(j, i) = M.at(i, j);
    return T;
}

inline Matrix add(const Field& F, const Matrix& X, const Matrix& Y) {
    require(X.rows == Y.rows && X.cols == Y.cols, "shape mismatch");
    Matrix Z(X.rows, X.cols);
    for (std::size_t i = 0; i < X.a.size(); ++i) Z.a[i] = F.add(X.a[i], Y.a[i]);
    return Z;
}

inline Matrix scale(const Field& F, int s, const Matrix& X) {
    Matrix Z(X.rows, X.cols);
    for (std::size_t i = 0; i < X.a.size(); ++i) Z.a[i] = F.mul(s, X.a[i]);
    return Z;
}

// In-place elimination on a scratch buffer; returns the pivot count.
inline int rank_in_place(const Field& F, std::vector<int>& a, int rows, int cols) {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i * cols + c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        int inv = F.inv(a[r * cols + c]);
        for (int i = r + 1; i < rows; ++i) {
            int v = a[i * cols + c];
            if (v == 0) continue;
            int f = F.mul(v, inv);
            for (int j = c; j < cols; ++j) a[i * cols + j] = F.sub(a[i * cols + j], F.mul(f, a[r * cols + j]));
        }
        ++r;
    }
    return r;
}

inline int rank(const Field& F, const Matrix& M) {
    std::vector<int> a = M.a;
    return rank_in_place(F, a, M.rows, M.cols);
}

// Reduced echelon basis of span(basis) with pivots increasing along `order`
// (a permutation of the rows*cols entry positions; empty means row-major).
inline std::vector<Matrix> row_reduce(const Field& F, const std::vector<Matrix>& basis, std::vector<int> order = {}) {
    if (basis.empty()) return {};
    int R = basis[0].rows, C = basis[0].cols;
    for (const auto& M : basis) require(M.rows == R && M.cols == C, "basis matrices must share one shape");
    int N = R * C;
    if (order.empty()) {
        order.resize(N);
        for (int i = 0; i < N; ++i) order[i] = i;
    }
    require(static_cast<int>(order.size()) == N, "coordinate order must cover every entry");
    std::vector<std::vector<int>> rows;
    for (const auto& M : basis) {
        std::vector<int> v(N);
        for (int i = 0; i < N; ++i) v[i] = M.a[order[i]];
        rows.push_back(std::move(v));
    }
    int r = 0;
    int m = static_cast<int>(rows.size());
    for (int c = 0; c < N && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[r]);
        int inv = F.inv(rows[r][c]);
        for (int j = 0; j < N; ++j) rows[r][j] = F.mul(rows[r][j], inv);
        for (int i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            int f = rows[i][c];
            for (int j = 0; j < N; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        ++r;
    }
    std::vector<Matrix> out;
    for (int i = 0; i < r; ++i) {
        Matrix M(R, C);
        for (int j = 0; j < N; ++j) M.a[order[j]] = rows[i][j];
        out.push_back(std::move(M));
    }
    return out;
}

inline bool in_span(const Field& F, const Matrix& M, const std::vector<Matrix>& basis) {
    if (!basis.empty()) require(M.rows == basis[0].rows && M.cols == basis[0].cols, "shape mismatch");
    if (M.is_zero()) return true;
    if (basis.empty()) return false;
    auto reduced = row_reduce(F, basis);
    auto extended = reduced;
    extended.push_back(M);
    return row_reduce(F, extended).size() == reduced.size();
}

// Inverse of a square matrix; throws when singular.
inline Matrix inverse(const Field& F, const Matrix& M) {
    require(M.rows == M.cols, "inverse needs a square matrix");
    int n = M.rows;
    Matrix A(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A.at(i, j) = M.at(i, j);
        A.at(i, n + i) = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (A.at(i, c) != 0) {
                piv = i;
                break;
            }
        require(piv >= 0, "matrix is singular");
        for (int j = 0; j < 2 * n; ++j) std::swap(A.at(piv, j), A.at(c, j));
        int inv = F.inv(A.at(c, c));
        for (int j = 0; j < 2 * n; ++j) A.at(c, j) = F.mul(A.at(c, j), inv);
        for (int i = 0; i < n; ++i) {
            if (i == c || A.at(i, c) == 0) continue;
            int f = A.at(i, c);
            for (int j = 0; j < 2 * n; ++j) A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(c, j)));
        }
    }
    Matrix R(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.at(i, j) = A.at(i, n + j);
    return R;
}

inline Matrix multiply(const Field& F, const Matrix& X, const Matrix& Y) {
    require(X.cols == Y.rows, "shape mismatch");
    Matrix Z(X.rows, Y.cols);
    for (int i = 0; i < X.rows; ++i)
        for (int t = 0; t < X.cols; ++t) {
            int x = X.at(i, t);
            if (x == 0) continue;
            for (int j = 0; j < Y.cols; ++j) Z.at(i, j) = F.add(Z.at(i, j), F.mul(x, Y.at(t, j)));
        }
    return Z;
}

// GF(q) for a prime power q.
inline std::shared_ptr<const Field> field_of_order(int q) {
    require(q >= 2, "field order must be at least 2");
    int p = 2;
    while (q % p != 0) ++p;
    int m = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++m;
    }
    require(r == 1, "field order must be a prime power");
    return std::make_shared<const Field>(p, m);
}

// Expands a vector over GF(q^n) to an n x len matrix over GF(q): column j holds the coordinates of v_j.
inline Matrix vector_to_matrix(const ExtensionField& E, const std::vector<int>& v) {
    Matrix M(E.degree(), static_cast<int>(v.size()));
    for (int j = 0; j < M.cols; ++j) {
        auto c = E.coordinates(v[j]);
        for (int i = 0; i < M.rows; ++i) M.at(i, j) = c[i];
    }
    return M;
}

inline std::vector<int> matrix_to_vector(const ExtensionField& E, const Matrix& M) {
    require(M.rows == E.degree(), "matrix must have one row per extension coordinate");
    std::vector<int> v(M.cols);
    for (int j = 0; j < M.cols; ++j) {
        std::vector<int> c(M.rows);
        for (int i = 0; i < M.rows; ++i) c[i] = M.at(i, j);
        v[j] = E.from_coordinates(c);
    }
    return v;
}

}  // namespace ferrers
