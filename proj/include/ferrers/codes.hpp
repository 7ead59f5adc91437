#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <vector>

#include "ferrers/diagram.hpp"
#include "ferrers/errors.hpp"
#include "ferrers/gf.hpp"
#include "ferrers/parallel.hpp"
#include "ferrers/young_digraph.hpp"

namespace ferrers {

inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();
inline constexpr long long kMaxCodewords = 1LL << 24;

// Linear space of matrices supported on a Ferrers diagram, kept as a reduced basis.
// Matrix entry (i-1, j-1) holds diagram point (i, j).
struct MatrixCode {
    std::shared_ptr<const Field> field;
    FerrersDiagram support;
    int rows = 0;
    int cols = 0;
    std::vector<Matrix> basis;

    int k() const { return static_cast<int>(basis.size()); }
    const Field& F() const { return *field; }
};

inline bool supported_on(const Matrix& M, const FerrersDiagram& D) {
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j)
            if (M.at(i, j) != 0 && !D.contains(Point{i + 1, j + 1})) return false;
    return true;
}

inline MatrixCode make_code(std::shared_ptr<const Field> field, FerrersDiagram support, int rows, int cols,
                            const std::vector<Matrix>& generators) {
    require(support.num_rows() <= rows && support.num_columns() <= cols, "support does not fit the ambient shape");
    for (const auto& M : generators) {
        require(M.rows == rows && M.cols == cols, "generator has the wrong shape");
        require(supported_on(M, support), "generator is not supported on the diagram");
    }
    MatrixCode c;
    c.field = std::move(field);
    c.support = std::move(support);
    c.rows = rows;
    c.cols = cols;
    c.basis = row_reduce(*c.field, generators);
    return c;
}

inline Matrix pad(const Matrix& M, int rows, int cols) {
    require(rows >= M.rows && cols >= M.cols, "padding cannot shrink a matrix");
    Matrix P(rows, cols);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) P.at(i, j) = M.at(i, j);
    return P;
}

inline Matrix linear_combination(const Field& F, const std::vector<Matrix>& basis, const std::vector<int>& coeffs) {
    Matrix S(basis.at(0).rows, basis.at(0).cols);
    for (std::size_t r = 0; r < basis.size(); ++r) {
        if (coeffs[r] == 0) continue;
        for (std::size_t e = 0; e < S.a.size(); ++e) S.a[e] = F.add(S.a[e], F.mul(coeffs[r], basis[r].a[e]));
    }
    return S;
}

namespace detail {

inline long long codeword_count(int q, int k) {
    long long n = 1;
    for (int i = 0; i < k; ++i) {
        n *= q;
        if (n > (1LL << 40)) return n;
    }
    return n;
}

// Minimum rank over nonzero codewords whose first nonzero coefficient is 1.
// Stops as soon as a rank below max(stop_below, 2) is seen.
inline int enumerate_min_rank(const MatrixCode& code, int stop_below) {
    const Field& F = code.F();
    int q = F.q(), k = code.k();
    int stop = std::max(stop_below, 2);
    std::size_t E = static_cast<std::size_t>(code.rows) * code.cols;
    struct Task {
        int lead;
        std::vector<int> prefix;
    };
    std::vector<Task> tasks;
    for (int t = 0; t < k; ++t) {
        int s = std::min(2, k - 1 - t);
        long long count = codeword_count(q, s);
        for (long long c = 0; c < count; ++c) {
            std::vector<int> pre(s);
            long long x = c;
            for (int i = s - 1; i >= 0; --i) {
                pre[i] = static_cast<int>(x % q);
                x /= q;
            }
            tasks.push_back({t, pre});
        }
    }
    std::atomic<int> best{kInfiniteDistance};
    auto run = [&](std::size_t ti) -> int {
        if (best.load() < stop) return kInfiniteDistance;
        const Task& task = tasks[ti];
        std::vector<int> cur = code.basis[task.lead].a;
        int first_free = task.lead + 1 + static_cast<int>(task.prefix.size());
        for (std::size_t i = 0; i < task.prefix.size(); ++i) {
            int c = task.prefix[i];
            if (c == 0) continue;
            const auto& b = code.basis[task.lead + 1 + i].a;
            for (std::size_t e = 0; e < E; ++e) cur[e] = F.add(cur[e], F.mul(c, b[e]));
        }
        int nfree = k - first_free;
        std::vector<int> digits(nfree, 0);
        std::vector<int> scratch(E);
        int local = kInfiniteDistance;
        long long step = 0;
        while (true) {
            scratch = cur;
            int r = rank_in_place(F, scratch, code.rows, code.cols);
            if (r < local) {
                local = r;
                int prev = best.load();
                while (r < prev && !best.compare_exchange_weak(prev, r)) {
                }
                if (r < stop) return local;
            }
            if ((++step & 0xFFF) == 0 && best.load() < stop) return local;
            int i = nfree - 1;
            for (; i >= 0; --i) {
                int old = digits[i];
                int nxt = old + 1 == q ? 0 : old + 1;
                digits[i] = nxt;
                int delta = F.sub(nxt, old);
                const auto& b = code.basis[first_free + i].a;
                for (std::size_t e = 0; e < E; ++e) cur[e] = F.add(cur[e], F.mul(delta, b[e]));
                if (nxt != 0) break;
            }
            if (i < 0) break;
        }
        return local;
    };
    auto results = parallel_map(tasks.size(), run);
    int m = kInfiniteDistance;
    for (int r : results) m = std::min(m, r);
    return m;
}

inline void codeword_guard(const MatrixCode& code, bool force) {
    if (force) return;
    if (codeword_count(code.F().q(), code.k()) > kMaxCodewords)
        throw ResourceError("q^k = " + std::to_string(code.F().q()) + "^" + std::to_string(code.k()) +
                            " codewords exceeds the 2^24 enumeration guard; lower the parameters");
}

}  // namespace detail

// Exact minimum rank over all nonzero codewords; kInfiniteDistance for the zero code.
inline int min_rank_distance(const MatrixCode& code, bool force = false) {
    if (code.k() == 0) return kInfiniteDistance;
    for (const auto& M : code.basis)
        if (rank(code.F(), M) == 1) return 1;
    detail::codeword_guard(code, force);
    return detail::enumerate_min_rank(code, 0);
}

// True when every nonzero codeword has rank >= d; stops at the first counterexample.
inline bool distance_at_least(const MatrixCode& code, int d, bool force = false) {
    if (code.k() == 0 || d <= 1) return true;
    for (const auto& M : code.basis)
        if (rank(code.F(), M) < d) return false;
    detail::codeword_guard(code, force);
    return detail::enumerate_min_rank(code, d) >= d;
}

inline bool is_mfd(const MatrixCode& code, int d, bool force = false) {
    if (code.k() != nu_min_value(code.support, d)) return false;
    return distance_at_least(code, d, force);
}

struct CodeReport {
    int k = 0;
    int nu_min = 0;
    int distance = 0;
    bool is_mfd = false;
    double seconds = 0;
};

inline CodeReport verify_code(const MatrixCode& code, int d, bool force = false) {
    auto t0 = std::chrono::steady_clock::now();
    CodeReport r;
    r.k = code.k();
    r.nu_min = nu_min_value(code.support, d);
    r.distance = min_rank_distance(code, force);
    r.is_mfd = r.k == r.nu_min && r.distance >= d;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline MatrixCode zero_code(std::shared_ptr<const Field> field, FerrersDiagram support, int rows, int cols) {
    return make_code(std::move(field), std::move(support), rows, cols, {});
}

// Linearized-polynomial evaluation code on m x n matrices: the maps beta * x^{q^i}, i < min(m,n)-d+1,
// evaluated at the polynomial basis 1, w, ..., w^{min-1} of GF(q^max) and expanded over GF(q).
inline MatrixCode gabidulin_mrd(int m, int n, int d, std::shared_ptr<const Field> field, bool force = false) {
    require(m >= 1 && n >= 1, "matrix shape must be positive");
    require(d >= 1 && d <= std::min(m, n), "need 1 <= d <= min(m, n)");
    int N = std::max(m, n), M = std::min(m, n);
    ExtensionField E(field, N, force);
    std::vector<int> points(M);
    for (int j = 0; j < M; ++j) points[j] = E.basis_element(j);
    std::vector<Matrix> gens;
    std::vector<int> twisted = points;  // g_j^{q^i}
    for (int i = 0; i < M - d + 1; ++i) {
        for (int t = 0; t < N; ++t) {
            int beta = E.basis_element(t);
            std::vector<int> v(M);
            for (int j = 0; j < M; ++j) v[j] = E.mul(beta, twisted[j]);
            Matrix X = vector_to_matrix(E, v);
            gens.push_back(m >= n ? X : transpose(X));
        }
        for (auto& g : twisted) g = E.frobenius(g);
    }
    auto code = make_code(field, rectangle(m, n), m, n, gens);
    ensure(code.k() == N * (M - d + 1), "Gabidulin generators are dependent");
    return code;
}

inline MatrixCode gabidulin_mrd(int m, int n, int d, int q, bool force = false) {
    return gabidulin_mrd(m, n, d, field_of_order(q), force);
}

// {M in C : M_P = 0} on the diagram without P.
inline MatrixCode shorten(const MatrixCode& code, Point P) {
    auto rem = removable_points(code.support);
    require(std::find(rem.begin(), rem.end(), P) != rem.end(), "point is not removable from the support");
    const Field& F = code.F();
    std::size_t e = static_cast<std::size_t>(P.row - 1) * code.cols + (P.col - 1);
    std::vector<Matrix> gens = code.basis;
    int piv = -1;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].a[e] != 0) {
            piv = static_cast<int>(i);
            break;
        }
    if (piv >= 0) {
        int inv = F.inv(gens[piv].a[e]);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (static_cast<int>(i) == piv || gens[i].a[e] == 0) continue;
            int f = F.mul(gens[i].a[e], inv);
            for (std::size_t t = 0; t < gens[i].a.size(); ++t)
                gens[i].a[t] = F.sub(gens[i].a[t], F.mul(f, gens[piv].a[t]));
        }
        gens.erase(gens.begin() + piv);
    }
    return make_code(code.field, remove_point(code.support, P), code.rows, code.cols, gens);
}

// The same codewords viewed on a larger diagram.
inline MatrixCode include(const MatrixCode& code, const FerrersDiagram& bigger) {
    require(bigger.contains(code.support), "target diagram must contain the support");
    int rows = std::max(code.rows, bigger.num_rows());
    int cols = std::max(code.cols, bigger.num_columns());
    std::vector<Matrix> gens;
    for (const auto& M : code.basis) gens.push_back(pad(M, rows, cols));
    return make_code(code.field, bigger, rows, cols, gens);
}

// Transfers an MFD code along a directed path of the d-Young digraph, asserting
// dimension nu_min after every step and the distance at the end.
inline MatrixCode reduce_along_path(const MatrixCode& code, const std::vector<FerrersDiagram>& path, int d,
                                    bool verify_each_step = false, bool force = false) {
    require(!path.empty(), "path must be nonempty");
    require(code.support == path.front(), "code support must equal the path start");
    require(code.k() == nu_min_value(path.front(), d), "code must be MFD on the path start");
    MatrixCode cur = code;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const auto& from = path[i];
        const auto& to = path[i + 1];
        require(reduction_direction(from, to, d) == Orientation::FirstToSecond,
                "path edge " + diagram_label(from) + " -> " + diagram_label(to) + " is not a reduction");
        if (to.size() > from.size()) {
            cur = include(cur, to);
        } else {
            Point P{0, 0};
            for (Point p : removable_points(from))
                if (remove_point(from, p) == to) P = p;
            cur = shorten(cur, P);
        }
        ensure(cur.k() == nu_min_value(to, d), "dimension left nu_min after reducing to " + diagram_label(to));
        if (verify_each_step)
            ensure(distance_at_least(cur, d, force), "distance dropped below d on " + diagram_label(to));
    }
    ensure(distance_at_least(cur, d, force), "reduced code is not MFD on " + diagram_label(path.back()));
    return cur;
}

// MFD code on G_n for d = 3: an (n-1)^2 MRD block plus one matrix with corner ones
// and a central block outside the punctured MRD code.
inline MatrixCode gn_construction(int n, std::shared_ptr<const Field> field, bool verify = true, bool force = false) {
    require(n >= 3, "need n >= 3");
    const Field& F = *field;
    std::vector<Matrix> c0;
    if (n > 3)
        for (const auto& M : gabidulin_mrd(n - 1, n - 1, 3, field, force).basis) c0.push_back(pad(M, n, n));
    std::vector<Matrix> c0p;
    for (const auto& M : c0) {
        Matrix B(n - 2, n - 2);
        for (int i = 0; i < n - 2; ++i)
            for (int j = 0; j < n - 2; ++j) B.at(i, j) = M.at(i + 1, j + 1);
        c0p.push_back(B);
    }
    ensure(row_reduce(F, c0p).size() == c0.size(), "erasing a row and column lost dimension");
    std::optional<Matrix> Ap;
    for (int e = 0; e < (n - 2) * (n - 2) && !Ap; ++e) {
        Matrix U(n - 2, n - 2);
        U.a[e] = 1;
        if (!in_span(F, U, c0p)) Ap = U;
    }
    if (!Ap) throw InvariantError("no unit matrix outside the punctured MRD code");
    Matrix A(n, n);
    A.at(0, n - 1) = 1;
    A.at(n - 1, 0) = 1;
    for (int i = 0; i < n - 2; ++i)
        for (int j = 0; j < n - 2; ++j) A.at(i + 1, j + 1) = Ap->at(i, j);
    c0.push_back(A);
    auto code = make_code(field, g_family(n), n, n, c0);
    ensure(code.k() == (n - 2) * (n - 2), "G_n code has the wrong dimension");
    if (verify) ensure(distance_at_least(code, 3, force), "G_n code has distance below 3");
    return code;
}

inline MatrixCode gn_construction(int n, int q, bool verify = true, bool force = false) {
    return gn_construction(n, field_of_order(q), verify, force);
}

// Deletes one row (1-based) from every codeword.
inline MatrixCode puncture_row(const MatrixCode& code, int row) {
    require(row >= 1 && row <= code.rows, "row outside the ambient shape");
    auto lens = code.support.rows();
    if (row <= static_cast<int>(lens.size())) lens.erase(lens.begin() + (row - 1));
    FerrersDiagram support = transpose(FerrersDiagram(lens));
    std::vector<Matrix> gens;
    for (const auto& M : code.basis) {
        Matrix P(code.rows - 1, code.cols);
        for (int i = 0, r = 0; i < code.rows; ++i) {
            if (i == row - 1) continue;
            for (int j = 0; j < code.cols; ++j) P.at(r, j) = M.at(i, j);
            ++r;
        }
        gens.push_back(P);
    }
    return make_code(code.field, support, code.rows - 1, code.cols, gens);
}

// Codewords equal to 1 at each target point and 0 on the rest of the information set Z.
inline std::map<Point, Matrix> solve_on_information_set(const MatrixCode& code, const std::vector<Point>& Z,
                                                        const std::vector<Point>& targets) {
    const Field& F = code.F();
    int k = code.k();
    if (targets.empty()) return {};
    if (static_cast<int>(Z.size()) != k)
        throw InvariantError("information set size " + std::to_string(Z.size()) + " differs from dimension " +
                             std::to_string(k));
    Matrix P(k, k);
    for (int r = 0; r < k; ++r)
        for (int z = 0; z < k; ++z) P.at(r, z) = code.basis[r].at(Z[z].row - 1, Z[z].col - 1);
    if (rank(F, P) != k) throw InvariantError("projection onto the information set is not injective");
    Matrix Pinv = inverse(F, P);
    std::map<Point, Matrix> out;
    for (Point t : targets) {
        int z = static_cast<int>(std::find(Z.begin(), Z.end(), t) - Z.begin());
        ensure(z < k, "target outside the information set");
        std::vector<int> coeffs(k);
        for (int r = 0; r < k; ++r) coeffs[r] = Pinv.at(z, r);
        out.emplace(t, linear_combination(F, code.basis, coeffs));
    }
    return out;
}

// For an MFD code on a pair in standard form: one codeword per point of X^T (solved on the
// columns >= d) and per point of Y (solved on the rows >= d).
inline std::map<Point, Matrix> information_set_matrices(const MatrixCode& code, int d) {
    require(d >= 2, "need d >= 2");
    auto sf = standard_form(code.support, d);
    require(sf.has_value(), "support has no standard form");
    std::vector<Point> xt, y, zc, zr;
    const auto& D = code.support;
    for (int j = 1; j <= D.num_columns(); ++j)
        for (int i = 1; i <= D.column(j); ++i) {
            if (j > sf->b) xt.push_back({i, j});
            if (i > sf->a) y.push_back({i, j});
            if (j >= d) zc.push_back({i, j});
            if (i >= d) zr.push_back({i, j});
        }
    auto out = solve_on_information_set(code, zc, xt);
    for (auto& [p, M] : solve_on_information_set(code, zr, y)) out.emplace(p, std::move(M));
    return out;
}

// C intersected with the matrices vanishing outside `keep`.
inline MatrixCode restrict_to(const MatrixCode& code, const FerrersDiagram& keep) {
    require(code.support.contains(keep), "restriction must be to a subdiagram");
    std::vector<int> order;
    for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < code.rows; ++i)
            for (int j = 0; j < code.cols; ++j) {
                bool inside = keep.contains(Point{i + 1, j + 1});
                if (inside == (pass == 1)) order.push_back(i * code.cols + j);
            }
    std::vector<Matrix> gens;
    for (const auto& M : row_reduce(code.F(), code.basis, order))
        if (supported_on(M, keep)) gens.push_back(M);
    return make_code(code.field, keep, code.rows, code.cols, gens);
}

// E_{n-1,d,1} code from an n x (n-1) code C and extension matrices A^(l) of size (n-1) x (n-1):
// B^(l) has a 1 at (1, n-1+l) and A^(l) in rows 2..n.
inline MatrixCode assemble_e_code(const MatrixCode& C, const std::vector<Matrix>& A, int d) {
    int n = C.rows;
    require(C.cols == n - 1, "base code must be n x (n-1)");
    require(static_cast<int>(A.size()) == d - 1, "need d-1 extension matrices");
    int cols = n - 1 + d - 1;
    std::vector<Matrix> gens;
    for (const auto& M : C.basis) gens.push_back(pad(M, n, cols));
    for (int l = 1; l <= d - 1; ++l) {
        const Matrix& Al = A[l - 1];
        require(Al.rows == n - 1 && Al.cols == n - 1, "extension matrix must be (n-1) x (n-1)");
        Matrix B(n, cols);
        B.at(0, n - 2 + l) = 1;
        for (int i = 1; i < n; ++i)
            for (int j = 0; j < n - 1; ++j) B.at(i, j) = Al.at(i - 1, j);
        gens.push_back(B);
    }
    return make_code(C.field, e_family(n - 1, d, 1), n, cols, gens);
}

struct Decomposition {
    MatrixCode c0;                 // C intersected with the n x (n-1) block
    std::vector<Matrix> extension;  // A^(l) read off the information-set matrices
    bool c0_mrd = false;
    bool extension_mrd = false;
};

// Reverse direction: an MFD code on E_{n-1,d,1} yields an MRD C0 whose row-1 puncturing
// extends to an (n-1) x (n-1) MRD code of distance d-1.
inline Decomposition decompose_e_code(const MatrixCode& E, int d, bool force = false) {
    int n = E.rows;
    Decomposition r;
    r.c0 = restrict_to(E, rectangle(n, n - 1));
    {
        std::vector<Matrix> cropped;
        for (const auto& M : r.c0.basis) {
            Matrix X(n, n - 1);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n - 1; ++j) X.at(i, j) = M.at(i, j);
            cropped.push_back(X);
        }
        r.c0 = make_code(E.field, rectangle(n, n - 1), n, n - 1, cropped);
    }
    r.c0_mrd = is_mfd(r.c0, d, force);
    // columns >= d form an information set of any MFD code on E_{n-1,d,1} since nu_{d-1} = nu_min
    std::vector<Point> Z, targets;
    for (int j = d; j <= E.support.num_columns(); ++j)
        for (int i = 1; i <= E.support.column(j); ++i) Z.push_back({i, j});
    for (int l = 1; l <= d - 1; ++l) targets.push_back({1, n - 1 + l});
    auto info = solve_on_information_set(E, Z, targets);
    std::vector<Matrix> gens;
    for (const auto& M : puncture_row(r.c0, 1).basis) gens.push_back(M);
    for (int l = 1; l <= d - 1; ++l) {
        auto it = info.find(Point{1, n - 1 + l});
        ensure(it != info.end(), "missing information-set matrix");
        Matrix Al(n - 1, n - 1);
        for (int i = 1; i < n; ++i)
            for (int j = 0; j < n - 1; ++j) Al.at(i - 1, j) = it->second.at(i, j);
        r.extension.push_back(Al);
        gens.push_back(Al);
    }
    auto ext = make_code(E.field, square(n - 1), n - 1, n - 1, gens);
    r.extension_mrd = is_mfd(ext, d - 1, force);
    return r;
}

enum class SearchStage { None, GabidulinVariants, AllMrdCodes };

inline const char* stage_name(SearchStage s) {
    switch (s) {
        case SearchStage::None: return "none";
        case SearchStage::GabidulinVariants: return "gabidulin_variants";
        case SearchStage::AllMrdCodes: return "all_mrd_codes";
    }
    return "unknown";
}

struct PunctSearchOptions {
    bool iterate_variants = true;  // try every punctured row functional of the Gabidulin code
    bool all_mrd = true;           // then every MRD base code, enumerated by reduced basis
    bool force = false;
};

struct PunctSearchResult {
    bool found = false;
    int n = 0, d = 0, q = 0;
    SearchStage stage = SearchStage::None;
    std::vector<int> hyperplane_normal;  // punctured row functional of the Gabidulin stage
    MatrixCode base;                      // MRD code whose first row is punctured
    std::vector<Matrix> extension;
    MatrixCode e_code;
    bool extension_mrd = false;
    bool e_code_mfd = false;
    bool decomposition_ok = false;
    // Gabidulin stage
    long long variants_examined = 0;
    long long tuples_examined = 0;
    // all-MRD stage: every MRD base code is examined, so the counts are exact
    bool all_mrd_run = false;
    long long mrd_codes = 0;
    long long mrd_codes_extendable = 0;
    double seconds = 0;
};

namespace detail {

// Nonzero vectors of F^n with first nonzero entry 1; e_1 first, then index order.
inline std::vector<std::vector<int>> projective_points(int n, int q) {
    std::vector<std::vector<int>> out;
    long long total = codeword_count(q, n);
    for (long long c = 1; c < total; ++c) {
        std::vector<int> v(n);
        long long x = c;
        for (int i = n - 1; i >= 0; --i) {
            v[i] = static_cast<int>(x % q);
            x /= q;
        }
        auto it = std::find_if(v.begin(), v.end(), [](int t) { return t != 0; });
        if (*it == 1) out.push_back(v);
    }
    std::stable_partition(out.begin(), out.end(), [](const std::vector<int>& v) {
        return v[0] == 1 && std::all_of(v.begin() + 1, v.end(), [](int t) { return t == 0; });
    });
    return out;
}

// Invertible P whose rows 2..n span the kernel of the functional u, so puncturing row 1 of P*X
// deletes the component of X selected by u.
inline Matrix hyperplane_transform(const Field& F, const std::vector<int>& u) {
    int n = static_cast<int>(u.size());
    int p = static_cast<int>(std::find_if(u.begin(), u.end(), [](int t) { return t != 0; }) - u.begin());
    Matrix P(n, n);
    P.at(0, p) = 1;
    int r = 1;
    for (int j = 0; j < n; ++j) {
        if (j == p) continue;
        P.at(r, j) = 1;
        P.at(r, p) = F.neg(F.div(u[j], u[p]));
        ++r;
    }
    return P;
}

// Matrices of one shape encoded as base-q integers, entry 0 (row-major) most significant,
// so deleting row 1 is a reduction modulo q^{(rows-1)cols}.
struct EncodedSpace {
    const Field* F = nullptr;
    int rows = 0, cols = 0, N = 0, q = 0;
    long long size = 0;
    std::vector<std::uint8_t> rank_of;

    EncodedSpace(const Field& field, int r, int c) : F(&field), rows(r), cols(c), N(r * c), q(field.q()) {
        size = codeword_count(q, N);
        if (size > (1LL << 22)) throw ResourceError("matrix space too large to tabulate ranks");
        rank_of.resize(static_cast<std::size_t>(size));
        std::vector<int> buf(N);
        for (long long x = 0; x < size; ++x) {
            decode_into(x, buf);
            rank_of[x] = static_cast<std::uint8_t>(rank_in_place(*F, buf, rows, cols));
        }
    }
    void decode_into(long long x, std::vector<int>& buf) const {
        for (int e = N - 1; e >= 0; --e) {
            buf[e] = static_cast<int>(x % q);
            x /= q;
        }
    }
    Matrix decode(long long x) const {
        Matrix M(rows, cols);
        decode_into(x, M.a);
        return M;
    }
    int digit(long long x, int e) const {
        if (q == 2) return static_cast<int>((x >> (N - 1 - e)) & 1);
        for (int i = N - 1; i > e; --i) x /= q;
        return static_cast<int>(x % q);
    }
    long long add(long long x, long long y) const {
        if (q == 2) return x ^ y;
        long long r = 0, place = 1;
        for (int e = 0; e < N; ++e) {
            r += place * F->add(static_cast<int>(x % q), static_cast<int>(y % q));
            x /= q;
            y /= q;
            place *= q;
        }
        return r;
    }
    long long scale(int s, long long x) const {
        if (s == 1) return x;
        long long r = 0, place = 1;
        for (int e = 0; e < N; ++e) {
            r += place * F->mul(s, static_cast<int>(x % q));
            x /= q;
            place *= q;
        }
        return r;
    }
    // all elements of span(span_elems, v), given span_elems closed under linear combination
    void extend_span(std::vector<long long>& span, long long v) const {
        std::size_t m = span.size();
        for (int lambda = 1; lambda < q; ++lambda) {
            long long lv = scale(lambda, v);
            for (std::size_t i = 0; i < m; ++i) span.push_back(add(span[i], lv));
        }
    }
};

// First (d-1)-subspace W with every element of W + P outside the rank < d-1 set, where P is the
// punctured code; `bad` already marks R + P. Returns the chosen generators or empty.
inline std::vector<long long> find_extension(const EncodedSpace& S, const std::vector<char>& bad, int need) {
    std::vector<long long> good;
    for (long long x = 0; x < S.size; ++x)
        if (!bad[x]) good.push_back(x);
    std::vector<long long> chosen, span{0};
    auto dfs = [&](auto&& self, std::size_t from) -> bool {
        if (static_cast<int>(chosen.size()) == need) return true;
        for (std::size_t i = from; i < good.size(); ++i) {
            long long v = good[i];
            bool ok = true;
            for (long long w : span)
                if (bad[S.add(w, v)]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::size_t m = span.size();
            S.extend_span(span, v);
            chosen.push_back(v);
            if (self(self, i + 1)) return true;
            chosen.pop_back();
            span.resize(m);
        }
        return false;
    };
    if (dfs(dfs, 0)) return chosen;
    return {};
}

}  // namespace detail

// Searches for d-1 matrices extending the row-1 puncturing of an n x (n-1) MRD code of distance d
// to an (n-1) x (n-1) MRD code of distance d-1.
// Stage 1 uses the Gabidulin code under every punctured row functional (a hyperplane of F^n);
// extensions are increasing tuples of canonical coset representatives modulo the punctured code,
// which covers every candidate subspace. Stage 2 enumerates every MRD base code once through its
// reduced basis and tests each for an extension; it reports exact counts.
inline PunctSearchResult punct_inclusion_search(int n, int d, std::shared_ptr<const Field> field,
                                                PunctSearchOptions opt = {}) {
    require(d > 1 && d < n, "need 1 < d < n");
    const Field& F = *field;
    int q = F.q();
    if (!opt.force && detail::codeword_count(q, (n - 1) * (n - 1) * (d - 1)) > (1LL << 24))
        throw ResourceError("extension search space exceeds the guard; lower n or d");
    auto t0 = std::chrono::steady_clock::now();
    PunctSearchResult res;
    res.n = n;
    res.d = d;
    res.q = q;
    int k = n * (n - d);
    int target = (n - 1) * (n - d + 1);
    int N = (n - 1) * (n - 1);

    // stage 1
    auto gab = gabidulin_mrd(n, n - 1, d, field, opt.force);
    auto variants = detail::projective_points(n, q);
    if (!opt.iterate_variants) variants.resize(1);
    std::atomic<long long> tuples{0};
    for (const auto& u : variants) {
        ++res.variants_examined;
        Matrix P = detail::hyperplane_transform(F, u);
        std::vector<Matrix> tb;
        for (const auto& M : gab.basis) tb.push_back(multiply(F, P, M));
        auto base = make_code(field, rectangle(n, n - 1), n, n - 1, tb);
        auto pc = puncture_row(base, 1);
        ensure(pc.k() == k, "puncturing an MRD code lost dimension");
        // canonical representatives vanish on the pivot coordinates of the reduced punctured basis
        std::vector<int> free_coords;
        {
            std::vector<bool> pivot(N, false);
            for (const auto& M : pc.basis)
                for (int e = 0; e < N; ++e)
                    if (M.a[e] != 0) {
                        pivot[e] = true;
                        break;
                    }
            for (int e = 0; e < N; ++e)
                if (!pivot[e]) free_coords.push_back(e);
        }
        int f = static_cast<int>(free_coords.size());
        long long reps = detail::codeword_count(q, f) - 1;
        auto rep = [&](long long idx) {
            Matrix R(n - 1, n - 1);
            long long x = idx + 1;
            for (int i = f - 1; i >= 0; --i) {
                R.a[free_coords[i]] = static_cast<int>(x % q);
                x /= q;
            }
            return R;
        };
        // every new codeword X + sum l_i A_i with l_last = 1 must have rank >= d-1
        auto extension_ok = [&](const std::vector<Matrix>& A) {
            if (rank(F, A.back()) < d - 1) return false;
            std::vector<Matrix> gens = pc.basis;
            for (std::size_t i = 0; i + 1 < A.size(); ++i) gens.push_back(A[i]);
            MatrixCode shift = make_code(field, square(n - 1), n - 1, n - 1, gens);
            if (shift.k() != static_cast<int>(gens.size())) return false;
            int m = shift.k();
            long long total = detail::codeword_count(q, m);
            std::vector<int> coeffs(m, 0);
            std::vector<int> cur = A.back().a, scratch;
            for (long long c = 0; c < total; ++c) {
                if (c > 0) {
                    for (int i = m - 1; i >= 0; --i) {
                        int old = coeffs[i];
                        int nxt = old + 1 == q ? 0 : old + 1;
                        coeffs[i] = nxt;
                        int delta = F.sub(nxt, old);
                        for (int e = 0; e < N; ++e) cur[e] = F.add(cur[e], F.mul(delta, shift.basis[i].a[e]));
                        if (nxt != 0) break;
                    }
                }
                scratch = cur;
                if (rank_in_place(F, scratch, n - 1, n - 1) < d - 1) return false;
            }
            return true;
        };
        std::atomic<long long> first_found{std::numeric_limits<long long>::max()};
        auto search_from = [&](std::size_t top) -> std::vector<Matrix> {
            if (static_cast<long long>(top) > first_found.load()) return {};
            std::vector<Matrix> chosen{rep(static_cast<long long>(top))};
            tuples++;
            if (!extension_ok(chosen)) return {};
            std::vector<Matrix> found;
            auto dfs = [&](auto&& self, long long next) -> bool {
                if (static_cast<int>(chosen.size()) == d - 1) {
                    found = chosen;
                    return true;
                }
                for (long long idx = next; idx < reps; ++idx) {
                    chosen.push_back(rep(idx));
                    tuples++;
                    if (extension_ok(chosen) && self(self, idx + 1)) return true;
                    chosen.pop_back();
                }
                return false;
            };
            if (dfs(dfs, static_cast<long long>(top) + 1)) {
                long long prev = first_found.load();
                while (static_cast<long long>(top) < prev && !first_found.compare_exchange_weak(prev, top)) {
                }
                return found;
            }
            return {};
        };
        auto results = parallel_map(static_cast<std::size_t>(reps), search_from);
        for (auto& r : results) {
            if (r.empty()) continue;
            res.found = true;
            res.stage = SearchStage::GabidulinVariants;
            res.hyperplane_normal = u;
            res.base = base;
            res.extension = r;
            break;
        }
        if (res.found) break;
    }
    res.tuples_examined = tuples.load();

    // stage 2
    if (!res.found && opt.all_mrd) {
        res.all_mrd_run = true;
        detail::EncodedSpace big(F, n, n - 1), small(F, n - 1, n - 1);
        long long mod = small.size;
        std::vector<long long> low_rank;
        for (long long x = 0; x < small.size; ++x)
            if (small.rank_of[x] < d - 1) low_rank.push_back(x);
        int NB = n * (n - 1);
        std::vector<long long> basis, span{0};
        std::vector<int> pivots;
        std::vector<char> bad(static_cast<std::size_t>(mod));
        long long nodes = 0;
        const long long node_budget = 2000000000LL;
        auto test_code = [&] {
            ++res.mrd_codes;
            std::fill(bad.begin(), bad.end(), 0);
            for (long long c : span) {
                long long pc = c % mod;
                for (long long r : low_rank) bad[small.add(r, pc)] = 1;
            }
            auto ext = detail::find_extension(small, bad, d - 1);
            if (ext.empty()) return;
            ++res.mrd_codes_extendable;
            if (res.found) return;
            res.found = true;
            res.stage = SearchStage::AllMrdCodes;
            std::vector<Matrix> gens;
            for (long long b : basis) gens.push_back(big.decode(b));
            res.base = make_code(field, rectangle(n, n - 1), n, n - 1, gens);
            for (long long a : ext) res.extension.push_back(small.decode(a));
        };
        // reduced bases: pivot digit 1, zeros at the other pivots, pivots increasing
        auto rec = [&](auto&& self, int last_pivot) -> void {
            if (static_cast<int>(basis.size()) == k) {
                test_code();
                return;
            }
            for (int p = last_pivot + 1; p < NB; ++p) {
                bool clear = true;
                for (long long b : basis)
                    if (big.digit(b, p) != 0) clear = false;
                if (!clear) continue;
                long long tail = detail::codeword_count(q, NB - 1 - p);
                for (long long low = 0; low < tail; ++low) {
                    long long v = tail + low;  // digit 1 at position p
                    bool ok = true;
                    for (int pv : pivots)
                        if (pv > p && big.digit(v, pv) != 0) ok = false;
                    if (!ok) continue;
                    if (++nodes > node_budget && !opt.force)
                        throw ResourceError("MRD code enumeration exceeds the node budget; lower n");
                    for (long long s : span)
                        if (big.rank_of[big.add(s, v)] < d) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    std::size_t m = span.size();
                    big.extend_span(span, v);
                    basis.push_back(v);
                    pivots.push_back(p);
                    self(self, p);
                    pivots.pop_back();
                    basis.pop_back();
                    span.resize(m);
                }
            }
        };
        rec(rec, -1);
    }

    if (res.found) {
        std::vector<Matrix> gens = puncture_row(res.base, 1).basis;
        for (const auto& A : res.extension) gens.push_back(A);
        auto ext = make_code(field, square(n - 1), n - 1, n - 1, gens);
        res.extension_mrd = ext.k() == target && is_mfd(ext, d - 1, opt.force);
        ensure(res.extension_mrd, "reported extension is not MRD");
        res.e_code = assemble_e_code(res.base, res.extension, d);
        res.e_code_mfd = res.e_code.k() == k + d - 1 && is_mfd(res.e_code, d, opt.force);
        if (res.e_code_mfd) {
            auto dec = decompose_e_code(res.e_code, d, opt.force);
            res.decomposition_ok = dec.c0_mrd && dec.extension_mrd;
        }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline PunctSearchResult punct_inclusion_search(int n, int d, int q, PunctSearchOptions opt = {}) {
    return punct_inclusion_search(n, d, field_of_order(q), opt);
}

}  // namespace ferrers
