#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "ferrers/diagram.hpp"
#include "ferrers/errors.hpp"
#include "ferrers/parallel.hpp"

namespace ferrers {

using Rational = boost::multiprecision::cpp_rational;
using RationalPoint = std::vector<Rational>;
using LatticePoint = std::vector<int>;

// <coeffs, x> >= rhs for inequalities, <coeffs, x> = rhs for equalities.
struct Constraint {
    std::vector<Rational> coeffs;
    Rational rhs;
};

struct Interval {
    Rational lo;
    Rational hi;
};

struct RationalPolytope {
    int dim = 0;
    std::vector<Constraint> inequalities;
    std::vector<Constraint> equalities;
    std::vector<Interval> box;
    std::vector<std::string> names;

    template <class T>
    bool contains(const std::vector<T>& x) const {
        require(static_cast<int>(x.size()) == dim, "point dimension mismatch");
        auto eval = [&](const Constraint& c) {
            Rational s = 0;
            for (int i = 0; i < dim; ++i)
                if (c.coeffs[i] != 0) s += c.coeffs[i] * Rational(x[i]);
            return s;
        };
        for (const auto& c : equalities)
            if (eval(c) != c.rhs) return false;
        for (const auto& c : inequalities)
            if (eval(c) < c.rhs) return false;
        return true;
    }
};

// A finite union of polytopes; used when a = b = d-1, where the set is not convex.
struct PolytopeUnion {
    std::vector<RationalPolytope> parts;

    template <class T>
    bool contains(const std::vector<T>& x) const {
        return std::any_of(parts.begin(), parts.end(), [&](const RationalPolytope& p) { return p.contains(x); });
    }
};

using PolytopeSet = std::variant<RationalPolytope, PolytopeUnion>;

namespace detail {

inline Constraint row(int dim, std::vector<std::pair<int, int>> terms, int rhs) {
    Constraint c{std::vector<Rational>(dim, Rational(0)), Rational(rhs)};
    for (auto [i, a] : terms) c.coeffs[i] += a;
    return c;
}

inline std::vector<std::string> coordinate_names(int k, bool with_z) {
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= k; ++i) names.push_back("y" + std::to_string(i));
    if (with_z) names.push_back("z");
    return names;
}

// Shared rows: chains, non-negativity and the j-rows without their z or Delta part.
// The j-row reads j*shift + sum_{i=0}^{j-2} x_{d-2-i} - sum_{i=1}^{j} y_i >= -j(d-1-j).
inline void add_common_rows(RationalPolytope& p, int d, int z_index, int delta) {
    int k = d - 2;
    int dim = p.dim;
    auto X = [](int i) { return i - 1; };
    auto Y = [k](int i) { return k + i - 1; };
    for (int j = 1; j < k; ++j) p.inequalities.push_back(row(dim, {{X(j), 1}, {X(j + 1), -1}}, 0));
    for (int j = 1; j < k; ++j) p.inequalities.push_back(row(dim, {{Y(j), 1}, {Y(j + 1), -1}}, 0));
    for (int j = 1; j <= k; ++j) p.inequalities.push_back(row(dim, {{X(j), 1}}, 0));
    for (int j = 1; j <= k; ++j) p.inequalities.push_back(row(dim, {{Y(j), 1}}, 0));
    for (int j = 1; j <= k; ++j) {
        std::vector<std::pair<int, int>> terms;
        for (int i = 0; i <= j - 2; ++i) terms.push_back({X(d - 2 - i), 1});
        for (int i = 1; i <= j; ++i) terms.push_back({Y(i), -1});
        if (z_index >= 0) terms.push_back({z_index, j});
        p.inequalities.push_back(row(dim, terms, -j * (delta + d - 1 - j)));
    }
    std::vector<std::pair<int, int>> eq;
    for (int i = 1; i <= k; ++i) eq.push_back({Y(i), 1});
    for (int i = 1; i <= k; ++i) eq.push_back({X(i), -1});
    if (z_index >= 0) eq.push_back({z_index, -(d - 1)});
    p.equalities.push_back(row(dim, eq, delta * (d - 1)));
    for (int i = 0; i < 2 * k; ++i) p.box.push_back({Rational(0), Rational(2 * d - 4)});
}

}  // namespace detail

// Polytope of (x_1..x_{d-2}, y_1..y_{d-2}) for a pair with a = c_{d-1}(D), b = r_{d-1}(D).
inline PolytopeSet build_Pd_ab(int d, int a, int b) {
    require(d >= 3, "need d >= 3");
    require(std::min(a, b) >= d - 1, "need min(a,b) >= d-1");
    int k = d - 2;
    RationalPolytope base;
    base.dim = 2 * k;
    base.names = detail::coordinate_names(k, false);
    detail::add_common_rows(base, d, -1, b - a);
    if (a >= d || b >= d) return base;
    PolytopeUnion u;
    for (int j = 1; j <= k; ++j) {
        RationalPolytope part = base;
        std::vector<std::pair<int, int>> terms;
        for (int i = 0; i <= j - 2; ++i) terms.push_back({d - 2 - i - 1, 1});
        for (int i = 1; i <= j; ++i) terms.push_back({k + i - 1, -1});
        part.equalities.push_back(detail::row(base.dim, terms, -j * (d - 1 - j)));
        u.parts.push_back(std::move(part));
    }
    return u;
}

// Polytope of (x, y, z) whose integer points are the irreducible pairs of a fixed min(a,b).
inline RationalPolytope build_Pd(int d) {
    require(d >= 3, "need d >= 3");
    int k = d - 2;
    RationalPolytope p;
    p.dim = 2 * k + 1;
    p.names = detail::coordinate_names(k, true);
    detail::add_common_rows(p, d, 2 * k, 0);
    p.box.push_back({Rational(-(d - 2)), Rational(d - 2)});
    return p;
}

// Integer sweep.

inline constexpr long long kSweepNodeGuard = 1000000000LL;

namespace detail {

struct IntRow {
    std::vector<std::pair<int, long long>> terms;
    long long rhs = 0;
};

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

inline long long to_ll(const boost::multiprecision::cpp_int& v) {
    require(boost::multiprecision::abs(v) < (boost::multiprecision::cpp_int(1) << 40), "coefficient too large");
    return v.convert_to<long long>();
}

inline long long rational_floor(const Rational& r) {
    return floor_div(to_ll(boost::multiprecision::numerator(r)), to_ll(boost::multiprecision::denominator(r)));
}

inline long long rational_ceil(const Rational& r) { return -rational_floor(-r); }

// Scales a rational row to integers; an equality becomes two opposite rows.
inline std::vector<IntRow> integer_rows(const RationalPolytope& p) {
    std::vector<IntRow> out;
    auto convert = [&](const Constraint& c, int sign) {
        boost::multiprecision::cpp_int l = boost::multiprecision::denominator(c.rhs);
        for (const auto& a : c.coeffs) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(a));
        IntRow r;
        for (int i = 0; i < p.dim; ++i)
            if (c.coeffs[i] != 0) {
                Rational s = c.coeffs[i] * Rational(l) * sign;
                r.terms.push_back({i, to_ll(boost::multiprecision::numerator(s))});
            }
        Rational s = c.rhs * Rational(l) * sign;
        r.rhs = to_ll(boost::multiprecision::numerator(s));
        out.push_back(std::move(r));
    };
    for (const auto& c : p.inequalities) convert(c, 1);
    for (const auto& c : p.equalities) {
        convert(c, 1);
        convert(c, -1);
    }
    return out;
}

struct Sweep {
    int dim = 0;
    std::vector<IntRow> rows;
    std::vector<int> order;
    std::atomic<long long>* nodes = nullptr;
    long long node_limit = kSweepNodeGuard;

    // Single-row bound tightening to a fixpoint; false when some row cannot be met.
    bool propagate(std::vector<long long>& lo, std::vector<long long>& hi) const {
        for (int pass = 0; pass < 64; ++pass) {
            bool changed = false;
            for (const auto& r : rows) {
                long long maxsum = 0;
                for (auto [i, a] : r.terms) maxsum += a > 0 ? a * hi[i] : a * lo[i];
                if (maxsum < r.rhs) return false;
                for (auto [i, a] : r.terms) {
                    long long others = maxsum - (a > 0 ? a * hi[i] : a * lo[i]);
                    long long need = r.rhs - others;
                    if (a > 0) {
                        long long b = ceil_div(need, a);
                        if (b > lo[i]) {
                            lo[i] = b;
                            changed = true;
                        }
                    } else {
                        long long b = floor_div(need, a);
                        if (b < hi[i]) {
                            hi[i] = b;
                            changed = true;
                        }
                    }
                    if (lo[i] > hi[i]) return false;
                }
            }
            if (!changed) return true;
        }
        return true;
    }

    void run(std::size_t depth, std::vector<long long> lo, std::vector<long long> hi,
             std::vector<LatticePoint>& out) const {
        if (++*nodes > node_limit)
            throw ResourceError("integer sweep exceeded " + std::to_string(node_limit) + " nodes; lower parameters");
        if (!propagate(lo, hi)) return;
        if (depth == order.size()) {
            LatticePoint pt(dim);
            for (int i = 0; i < dim; ++i) pt[i] = static_cast<int>(lo[i]);
            out.push_back(std::move(pt));
            return;
        }
        int c = order[depth];
        for (long long v = lo[c]; v <= hi[c]; ++v) {
            auto l2 = lo, h2 = hi;
            l2[c] = h2[c] = v;
            run(depth + 1, std::move(l2), std::move(h2), out);
        }
    }
};

}  // namespace detail

// All integer points, sorted lexicographically. The sweep fixes coordinates in
// the given order (default: natural) and tightens bounds row by row at every node.
inline std::vector<LatticePoint> integer_points(const RationalPolytope& p, std::vector<int> order = {},
                                                bool force = false) {
    require(static_cast<int>(p.box.size()) == p.dim, "integer sweep needs a bounding box");
    if (order.empty()) {
        order.resize(p.dim);
        std::iota(order.begin(), order.end(), 0);
    }
    require(static_cast<int>(order.size()) == p.dim, "sweep order must list every coordinate");
    detail::Sweep sweep;
    sweep.dim = p.dim;
    sweep.rows = detail::integer_rows(p);
    sweep.order = order;
    std::atomic<long long> nodes{0};
    sweep.nodes = &nodes;
    if (force) sweep.node_limit = std::numeric_limits<long long>::max();
    std::vector<long long> lo(p.dim), hi(p.dim);
    for (int i = 0; i < p.dim; ++i) {
        lo[i] = detail::rational_ceil(p.box[i].lo);
        hi[i] = detail::rational_floor(p.box[i].hi);
    }
    std::vector<LatticePoint> out;
    if (p.dim == 0) {
        if (sweep.propagate(lo, hi)) out.push_back({});
        return out;
    }
    if (!sweep.propagate(lo, hi)) return out;
    int first = order[0];
    std::size_t span = static_cast<std::size_t>(hi[first] - lo[first] + 1);
    auto parts = parallel_map(span, [&](std::size_t i) {
        std::vector<LatticePoint> local;
        auto l2 = lo, h2 = hi;
        l2[first] = h2[first] = lo[first] + static_cast<long long>(i);
        sweep.run(1, l2, h2, local);
        return local;
    });
    for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<LatticePoint> integer_points(const PolytopeSet& s, bool force = false) {
    if (auto p = std::get_if<RationalPolytope>(&s)) return integer_points(*p, {}, force);
    std::set<LatticePoint> all;
    for (const auto& part : std::get<PolytopeUnion>(s).parts)
        for (auto& pt : integer_points(part, {}, force)) all.insert(pt);
    return {all.begin(), all.end()};
}

// Sweep order for the P_d family: z first, then x and y; it prunes best in practice.
inline std::vector<int> pd_sweep_order(int d) {
    int dim = 2 * (d - 2) + 1;
    std::vector<int> order{dim - 1};
    for (int i = 0; i < dim - 1; ++i) order.push_back(i);
    return order;
}

inline std::vector<LatticePoint> pd_integer_points(int d, bool force = false) {
    return integer_points(build_Pd(d), pd_sweep_order(d), force);
}

// Counts by z = Delta from -(d-2) to d-2.
inline std::vector<long long> delta_split(int d, const std::vector<LatticePoint>& points) {
    std::vector<long long> counts(2 * d - 3, 0);
    for (const auto& pt : points) counts[pt.back() + d - 2] += 1;
    return counts;
}

// Vertex enumeration by basic solutions.

inline constexpr long long kVertexSubsetGuard = 20000;

namespace detail {

// Solves M x = rhs exactly; nullopt unless the solution is unique.
inline std::optional<RationalPoint> solve_unique(std::vector<std::vector<Rational>> M, std::vector<Rational> rhs,
                                                 int dim) {
    int rows = static_cast<int>(M.size());
    int r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < dim && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (M[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[r]);
        std::swap(rhs[piv], rhs[r]);
        Rational inv = 1 / M[r][c];
        for (int j = c; j < dim; ++j) M[r][j] *= inv;
        rhs[r] *= inv;
        for (int i = 0; i < rows; ++i)
            if (i != r && M[i][c] != 0) {
                Rational f = M[i][c];
                for (int j = c; j < dim; ++j) M[i][j] -= f * M[r][j];
                rhs[i] -= f * rhs[r];
            }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    if (r < dim) return std::nullopt;
    RationalPoint x(dim);
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
    return x;
}

inline int rank_of(std::vector<std::vector<Rational>> M, int cols) {
    int rows = static_cast<int>(M.size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (M[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[r]);
        for (int i = r + 1; i < rows; ++i)
            if (M[i][c] != 0) {
                Rational f = M[i][c] / M[r][c];
                for (int j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
            }
        ++r;
    }
    return r;
}

}  // namespace detail

// Vertices as feasible basic solutions, deduplicated and sorted.
inline std::vector<RationalPoint> vertices_generic(const RationalPolytope& p, bool force = false) {
    std::vector<std::vector<Rational>> eq;
    for (const auto& c : p.equalities) eq.push_back(c.coeffs);
    int r_eq = detail::rank_of(eq, p.dim);
    int s = p.dim - r_eq;
    int m = static_cast<int>(p.inequalities.size());
    require(s <= m, "not enough inequalities to pin a vertex");
    long double combos = 1;
    for (int i = 0; i < s; ++i) combos = combos * (m - i) / (i + 1);
    if (combos > kVertexSubsetGuard && !force)
        throw ResourceError("vertex enumeration needs C(" + std::to_string(m) + "," + std::to_string(s) +
                            ") basic systems, above the guard; use the closed-form vertices");
    std::set<RationalPoint> found;
    std::vector<int> pick(s);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        std::vector<std::vector<Rational>> M;
        std::vector<Rational> rhs;
        for (const auto& c : p.equalities) {
            M.push_back(c.coeffs);
            rhs.push_back(c.rhs);
        }
        for (int i : pick) {
            M.push_back(p.inequalities[i].coeffs);
            rhs.push_back(p.inequalities[i].rhs);
        }
        if (auto x = detail::solve_unique(M, rhs, p.dim); x && p.contains(*x)) found.insert(*x);
        int i = s - 1;
        while (i >= 0 && pick[i] == m - s + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    return {found.begin(), found.end()};
}

// Structured matrices A_k (tridiagonal 2,-1), B_k = (k+1) A_k^{-1}, b_k.
struct StructuredMatrices {
    int k = 0;
    std::vector<std::vector<long long>> A;
    std::vector<std::vector<long long>> B;
    std::vector<long long> b;
};

inline StructuredMatrices structured_matrices(int k) {
    require(k >= 1, "need k >= 1");
    StructuredMatrices s;
    s.k = k;
    s.A.assign(k, std::vector<long long>(k, 0));
    s.B.assign(k, std::vector<long long>(k, 0));
    s.b.resize(k);
    for (int i = 1; i <= k; ++i) {
        s.A[i - 1][i - 1] = 2;
        if (i > 1) s.A[i - 1][i - 2] = -1;
        if (i < k) s.A[i - 1][i] = -1;
        for (int j = 1; j <= k; ++j) s.B[i - 1][j - 1] = std::min(i, j) * (k + 1 - std::max(i, j));
        s.b[i - 1] = i * (k + 1 - i);
    }
    return s;
}

namespace detail {

inline std::vector<std::vector<long long>> matmul(const std::vector<std::vector<long long>>& X,
                                                  const std::vector<std::vector<long long>>& Y) {
    std::size_t n = X.size(), m = Y[0].size(), t = Y.size();
    std::vector<std::vector<long long>> Z(n, std::vector<long long>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < t; ++l)
            for (std::size_t j = 0; j < m; ++j) Z[i][j] += X[i][l] * Y[l][j];
    return Z;
}

inline Rational determinant(std::vector<std::vector<Rational>> M) {
    int n = static_cast<int>(M.size());
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && M[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(M[piv], M[c]);
            det = -det;
        }
        det *= M[c][c];
        for (int i = c + 1; i < n; ++i) {
            Rational f = M[i][c] / M[c][c];
            for (int j = c; j < n; ++j) M[i][j] -= f * M[c][j];
        }
    }
    return det;
}

}  // namespace detail

// Checks det A_k = k+1, B A = (k+1) I = A B, B (2..2) = (k+1) b, A b = (2..2), (1..k) A = (0..0,k+1).
inline bool structured_matrix_checks(int k) {
    auto s = structured_matrices(k);
    std::vector<std::vector<Rational>> Ar(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) Ar[i][j] = s.A[i][j];
    if (detail::determinant(Ar) != k + 1) return false;
    auto BA = detail::matmul(s.B, s.A);
    auto AB = detail::matmul(s.A, s.B);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            long long want = i == j ? k + 1 : 0;
            if (BA[i][j] != want || AB[i][j] != want) return false;
        }
    for (int i = 0; i < k; ++i) {
        long long b2 = 0, ab = 0;
        for (int j = 0; j < k; ++j) {
            b2 += s.B[i][j] * 2;
            ab += s.A[i][j] * s.b[j];
        }
        if (b2 != (k + 1) * s.b[i] || ab != 2) return false;
    }
    for (int j = 0; j < k; ++j) {
        long long v = 0;
        for (int i = 0; i < k; ++i) v += (i + 1) * s.A[i][j];
        if (v != (j == k - 1 ? k + 1 : 0)) return false;
    }
    return true;
}

// Closed-form vertices via the tau map over covers X u Y = [k], then E_1 and U.
inline std::vector<LatticePoint> vertices_closed_form(int d) {
    require(d >= 3, "need d >= 3");
    require(d <= 20, "closed-form vertices limited to d <= 20");
    int k = d - 2;
    long long total = 1;
    for (int i = 0; i < k; ++i) total *= 3;
    std::vector<LatticePoint> out;
    out.reserve(static_cast<std::size_t>(total));
    // state 0: i in both X and Y; 1: i only in Y; 2: i only in X
    std::vector<int> state(k, 0);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < k; ++i) {
            state[i] = static_cast<int>(c % 3);
            c /= 3;
        }
        std::vector<long long> x(k, 0), y(k, 0);
        for (int i = 0; i < k; ++i) {
            if (state[i] == 0) continue;
            int left = 0, right = 0;
            for (int l = i - 1; l >= 0 && state[l] == 0; --l) ++left;
            for (int r = i + 1; r < k && state[r] == 0; ++r) ++right;
            int t = 2 + left + right;
            if (state[i] == 1)
                x[i] = t;
            else
                y[i] = t;
        }
        long long num = 0;
        for (int i = 1; i <= k; ++i) num += i * (y[k - i] - x[i - 1]);
        ensure(num % (k + 1) == 0, "E_1 image is not integral");
        long long z = num / (k + 1);
        LatticePoint pt(2 * k + 1);
        for (int i = 0; i < k; ++i) {
            long long sx = 0, sy = 0;
            for (int j = i; j < k; ++j) sx += x[j];
            for (int j = 0; j < k - i; ++j) sy += y[j];
            pt[i] = static_cast<int>(sx);
            pt[k + i] = static_cast<int>(sy);
        }
        pt[2 * k] = static_cast<int>(z);
        out.push_back(std::move(pt));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<RationalPoint> to_rational(const std::vector<LatticePoint>& pts) {
    std::vector<RationalPoint> out;
    for (const auto& p : pts) {
        RationalPoint r;
        for (int v : p) r.push_back(Rational(v));
        out.push_back(std::move(r));
    }
    return out;
}

// Face lattice from vertices and the H-representation.

using VertexSet = boost::dynamic_bitset<>;

struct FaceLattice {
    int dim = 0;
    std::vector<VertexSet> facets;
    std::vector<VertexSet> faces;
    std::vector<int> face_dims;
    std::vector<long long> f_vector;
};

inline constexpr std::size_t kFaceGuard = 200000;

inline FaceLattice face_lattice(const RationalPolytope& p, const std::vector<RationalPoint>& vertices,
                                bool force = false) {
    std::size_t nv = vertices.size();
    require(nv > 0, "face lattice needs at least one vertex");
    for (const auto& v : vertices) require(p.contains(v), "vertex outside the polytope");
    VertexSet all(nv);
    all.set();
    std::set<VertexSet> tight_sets;
    for (const auto& c : p.inequalities) {
        VertexSet s(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            Rational val = 0;
            for (int i = 0; i < p.dim; ++i)
                if (c.coeffs[i] != 0) val += c.coeffs[i] * vertices[v][i];
            if (val == c.rhs) s.set(v);
        }
        if (s.any() && s != all) tight_sets.insert(s);
    }
    FaceLattice L;
    for (const auto& s : tight_sets) {
        bool maximal = true;
        for (const auto& t : tight_sets)
            if (t != s && s.is_subset_of(t)) {
                maximal = false;
                break;
            }
        if (maximal) L.facets.push_back(s);
    }
    std::set<VertexSet> faces(L.facets.begin(), L.facets.end());
    std::vector<VertexSet> frontier(L.facets.begin(), L.facets.end());
    while (!frontier.empty()) {
        std::vector<VertexSet> next;
        for (const auto& f : frontier)
            for (const auto& g : L.facets) {
                VertexSet h = f & g;
                if (h.none() || faces.count(h)) continue;
                faces.insert(h);
                next.push_back(h);
                if (faces.size() > kFaceGuard && !force) throw ResourceError("face enumeration above the guard");
            }
        frontier = std::move(next);
    }
    faces.insert(all);
    L.faces.assign(faces.begin(), faces.end());
    std::stable_sort(L.faces.begin(), L.faces.end(),
                     [](const VertexSet& a, const VertexSet& b) { return a.count() < b.count(); });
    L.face_dims.assign(L.faces.size(), 0);
    for (std::size_t i = 0; i < L.faces.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (L.faces[j].count() < L.faces[i].count() && L.faces[j].is_subset_of(L.faces[i]))
                L.face_dims[i] = std::max(L.face_dims[i], L.face_dims[j] + 1);
    L.dim = L.face_dims.back();
    L.f_vector.assign(L.dim + 1, 0);
    for (int fd : L.face_dims) L.f_vector[fd] += 1;
    return L;
}

inline std::vector<long long> f_vector(const RationalPolytope& p, const std::vector<RationalPoint>& vertices,
                                       bool force = false) {
    return face_lattice(p, vertices, force).f_vector;
}

inline std::vector<long long> f_vector(const RationalPolytope& p, bool force = false) {
    return f_vector(p, vertices_generic(p, force), force);
}

// Coefficients of (3 + 3t + t^2)^{d-2}, lowest degree first.
inline std::vector<long long> product_of_triangles_fvector(int d) {
    require(d >= 2, "need d >= 2");
    std::vector<long long> poly{1};
    for (int i = 0; i < d - 2; ++i) {
        std::vector<long long> next(poly.size() + 2, 0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += 3 * poly[j];
            next[j + 1] += 3 * poly[j];
            next[j + 2] += poly[j];
        }
        poly = std::move(next);
    }
    return poly;
}

// Vertex-facet incidence of a product of k triangles: facet (i,e) holds vertices with v_i != e.
inline std::vector<VertexSet> triangle_product_facets(int k) {
    std::size_t nv = 1;
    for (int i = 0; i < k; ++i) nv *= 3;
    std::vector<VertexSet> facets;
    for (int i = 0; i < k; ++i)
        for (int e = 0; e < 3; ++e) {
            VertexSet s(nv);
            for (std::size_t v = 0; v < nv; ++v) {
                std::size_t c = v;
                for (int t = 0; t < i; ++t) c /= 3;
                if (static_cast<int>(c % 3) != e) s.set(v);
            }
            facets.push_back(s);
        }
    return facets;
}

// Isomorphism of vertex-facet bipartite graphs by backtracking over facet bijections.
inline bool incidence_isomorphic(const std::vector<VertexSet>& f1, const std::vector<VertexSet>& f2) {
    if (f1.size() != f2.size() || f1.empty()) return f1.size() == f2.size();
    std::size_t nv = f1[0].size();
    if (f2[0].size() != nv) return false;
    std::size_t m = f1.size();
    std::vector<int> sigma(m, -1);
    std::vector<bool> used(m, false);
    auto signatures = [&](const std::vector<VertexSet>& fs, const std::vector<int>* map) {
        std::vector<VertexSet> sig(nv, VertexSet(m));
        for (std::size_t f = 0; f < m; ++f)
            for (std::size_t v = 0; v < nv; ++v)
                if (fs[f].test(v)) sig[v].set(map ? (*map)[f] : f);
        std::sort(sig.begin(), sig.end());
        return sig;
    };
    auto target = signatures(f2, nullptr);
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == m) return signatures(f1, &sigma) == target;
        for (std::size_t c = 0; c < m; ++c) {
            if (used[c] || f1[i].count() != f2[c].count()) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = (f1[i] & f1[j]).count() == (f2[c] & f2[sigma[j]]).count();
            if (!ok) continue;
            used[c] = true;
            sigma[i] = static_cast<int>(c);
            if (self(self, i + 1)) return true;
            used[c] = false;
        }
        sigma[i] = -1;
        return false;
    };
    return rec(rec, 0);
}

// Psi: integer points of P_d and irreducible pairs with min(a,b) = mu.

inline FerrersDiagram psi(int d, int mu, const LatticePoint& pt) {
    require(d >= 3 && mu >= d, "psi needs 3 <= d <= mu");
    require(static_cast<int>(pt.size()) == 2 * d - 3, "point dimension must be 2d-3");
    require(build_Pd(d).contains(pt), "point is not in the polytope");
    int k = d - 2;
    int z = pt[2 * k];
    StandardForm sf;
    sf.a = z >= 0 ? mu : mu - z;
    sf.b = sf.a + z;
    sf.x_cols.assign(pt.begin(), pt.begin() + k);
    sf.y_cols.assign(pt.begin() + k, pt.begin() + 2 * k);
    return compose(sf, d);
}

inline LatticePoint psi_inverse(const FerrersDiagram& D, int d) {
    require(d >= 3, "psi needs d >= 3");
    auto sf = standard_form(D, d);
    require(sf.has_value(), "diagram is not in standard form");
    LatticePoint pt(sf->x_cols.begin(), sf->x_cols.end());
    pt.insert(pt.end(), sf->y_cols.begin(), sf->y_cols.end());
    pt.push_back(sf->b - sf->a);
    return pt;
}

// Chess score sequences against the Delta = -(d-2) slice.
struct ChessReport {
    long long polytope_points = 0;
    long long score_sequences = 0;
    bool bijection = false;
};

inline ChessReport chess_bijection_check(int d) {
    require(d >= 3, "need d >= 3");
    int k = d - 2;
    auto pts = integer_points(build_Pd_ab(d, 2 * d - 2, d));
    // p_1..p_{d-1} with p_1 = p_{d-1} = 0, p >= 0 and 2p_j - p_{j+1} - p_{j-1} <= 2
    RationalPolytope sys;
    sys.dim = d - 1;
    for (int j = 0; j < d - 1; ++j) {
        sys.inequalities.push_back(detail::row(d - 1, {{j, 1}}, 0));
        sys.box.push_back({Rational(0), Rational((d - 1) * (d - 1))});
    }
    sys.equalities.push_back(detail::row(d - 1, {{0, 1}}, 0));
    sys.equalities.push_back(detail::row(d - 1, {{d - 2, 1}}, 0));
    for (int j = 1; j < d - 2; ++j) sys.inequalities.push_back(detail::row(d - 1, {{j, -2}, {j + 1, 1}, {j - 1, 1}}, -2));
    auto seqs = integer_points(sys);
    ChessReport r;
    r.polytope_points = static_cast<long long>(pts.size());
    r.score_sequences = static_cast<long long>(seqs.size());
    std::set<LatticePoint> image;
    bool ok = true;
    for (const auto& pt : pts) {
        for (int i = 0; i < k; ++i) ok = ok && pt[k + i] == 0;
        LatticePoint p(d - 1);
        for (int j = 1; j <= d - 1; ++j) {
            int s = 0;
            for (int i = 2; i <= j; ++i) s += pt[d - i - 1];
            p[j - 1] = s - j * (j - 1);
        }
        image.insert(p);
    }
    r.bijection = ok && image.size() == pts.size() && image == std::set<LatticePoint>(seqs.begin(), seqs.end());
    return r;
}

}  // namespace ferrers
