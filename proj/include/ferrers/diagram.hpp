#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ferrers/errors.hpp"

namespace ferrers {

// A cell of a diagram, 1-based, row first. The default ordering is row-major.
struct Point {
    int row = 0;
    int col = 0;
    auto operator<=>(const Point&) const = default;
};

// Ferrers diagram stored as non-increasing column heights without trailing zeros.
class FerrersDiagram {
public:
    FerrersDiagram() = default;

    explicit FerrersDiagram(std::vector<int> columns) : cols_(std::move(columns)) {
        for (std::size_t i = 0; i < cols_.size(); ++i) {
            require(cols_[i] >= 0, "column heights must be non-negative");
            require(i == 0 || cols_[i] <= cols_[i - 1], "column heights must be non-increasing");
        }
        while (!cols_.empty() && cols_.back() == 0) cols_.pop_back();
    }

    // Parses "5,4,4,1,1"; the empty string and "-" denote the empty diagram.
    static FerrersDiagram parse(std::string_view text) {
        std::vector<int> cols;
        if (text.empty() || text == "-") return FerrersDiagram();
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t next = text.find(',', pos);
            if (next == std::string_view::npos) next = text.size();
            std::string item(text.substr(pos, next - pos));
            item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                       item.end());
            require(!item.empty(), "empty entry in diagram text");
            require(std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }),
                    "diagram entries must be non-negative integers: '" + item + "'");
            require(item.size() < 9, "diagram entry too large: '" + item + "'");
            cols.push_back(std::stoi(item));
            pos = next + 1;
        }
        return FerrersDiagram(std::move(cols));
    }

    const std::vector<int>& columns() const { return cols_; }
    int num_columns() const { return static_cast<int>(cols_.size()); }
    bool empty() const { return cols_.empty(); }

    // Height of column j (1-based); zero beyond the last column.
    int column(int j) const { return j >= 1 && j <= num_columns() ? cols_[j - 1] : 0; }

    // Length of row i (1-based).
    int row(int i) const {
        int r = 0;
        while (r < num_columns() && cols_[r] >= i) ++r;
        return r;
    }

    int num_rows() const { return empty() ? 0 : cols_.front(); }

    std::vector<int> rows() const {
        std::vector<int> r(num_rows());
        for (int i = 1; i <= num_rows(); ++i) r[i - 1] = row(i);
        return r;
    }

    int size() const {
        int s = 0;
        for (int c : cols_) s += c;
        return s;
    }

    // Proper order: the smallest n with the diagram inside [n]x[n].
    int order() const { return std::max(num_rows(), num_columns()); }

    bool contains(Point p) const { return p.row >= 1 && p.col >= 1 && column(p.col) >= p.row; }

    bool contains(const FerrersDiagram& other) const {
        if (other.num_columns() > num_columns()) return false;
        for (int j = 1; j <= other.num_columns(); ++j)
            if (other.column(j) > column(j)) return false;
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < cols_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(cols_[i]);
        }
        return s;
    }

    // Packs the heights into 4-bit nibbles; valid for order at most 15.
    std::uint64_t key() const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < cols_.size(); ++i) k |= static_cast<std::uint64_t>(cols_[i]) << (4 * i);
        return k;
    }

    auto operator<=>(const FerrersDiagram&) const = default;

private:
    std::vector<int> cols_;
};

inline FerrersDiagram transpose(const FerrersDiagram& D) { return FerrersDiagram(D.rows()); }

// Points left after deleting the first j columns and the first d-1-j rows.
inline int nu(const FerrersDiagram& D, int d, int j) {
    require(d >= 1, "d must be positive");
    require(j >= 0 && j <= d - 1, "j must lie in [0, d-1]");
    int s = 0;
    for (int i = j + 1; i <= D.num_columns(); ++i) s += std::max(0, D.column(i) - (d - 1 - j));
    return s;
}

inline std::vector<int> nu_profile(const FerrersDiagram& D, int d) {
    std::vector<int> v(d);
    for (int j = 0; j < d; ++j) v[j] = nu(D, d, j);
    return v;
}

struct NuMin {
    int value = 0;
    std::vector<int> argmin;
};

inline NuMin nu_min(const FerrersDiagram& D, int d) {
    auto v = nu_profile(D, d);
    NuMin r;
    r.value = *std::min_element(v.begin(), v.end());
    for (int j = 0; j < d; ++j)
        if (v[j] == r.value) r.argmin.push_back(j);
    return r;
}

inline int nu_min_value(const FerrersDiagram& D, int d) {
    int best = nu(D, d, 0);
    for (int j = 1; j < d; ++j) best = std::min(best, nu(D, d, j));
    return best;
}

// Corners (c_j, j) with c_j > c_{j+1}, in row-major order.
inline std::vector<Point> removable_points(const FerrersDiagram& D) {
    std::vector<Point> pts;
    for (int j = 1; j <= D.num_columns(); ++j)
        if (D.column(j) > D.column(j + 1)) pts.push_back({D.column(j), j});
    std::sort(pts.begin(), pts.end());
    return pts;
}

// Cells (c_j + 1, j) that keep the diagram Ferrers when added, in row-major order.
inline std::vector<Point> addible_points(const FerrersDiagram& D) {
    std::vector<Point> pts;
    for (int j = 1; j <= D.num_columns() + 1; ++j)
        if (j == 1 || D.column(j - 1) > D.column(j)) pts.push_back({D.column(j) + 1, j});
    std::sort(pts.begin(), pts.end());
    return pts;
}

inline FerrersDiagram add_point(const FerrersDiagram& D, Point p) {
    auto cols = D.columns();
    require(p.col >= 1 && p.col <= D.num_columns() + 1, "point is not addible");
    if (p.col == D.num_columns() + 1) cols.push_back(0);
    require(cols[p.col - 1] + 1 == p.row && (p.col == 1 || cols[p.col - 2] >= p.row), "point is not addible");
    cols[p.col - 1] += 1;
    return FerrersDiagram(std::move(cols));
}

inline FerrersDiagram remove_point(const FerrersDiagram& D, Point p) {
    require(p.col >= 1 && p.col <= D.num_columns() && D.column(p.col) == p.row && D.column(p.col + 1) < p.row,
            "point is not removable");
    auto cols = D.columns();
    cols[p.col - 1] -= 1;
    return FerrersDiagram(std::move(cols));
}

// D = ([a]x[b]) disjoint-union X^T disjoint-union Y, with X and Y given by their first d-2 column heights.
struct StandardForm {
    int a = 0;
    int b = 0;
    std::vector<int> x_cols;
    std::vector<int> y_cols;
    bool operator==(const StandardForm&) const = default;
};

// Empty optional when the part of D in rows and columns >= d-1 is not a rectangle anchored at (d-1,d-1).
inline std::optional<StandardForm> standard_form(const FerrersDiagram& D, int d) {
    require(d >= 2, "standard form needs d >= 2");
    if (!D.contains(Point{d - 1, d - 1})) return std::nullopt;
    StandardForm sf;
    sf.a = D.column(d - 1);
    sf.b = D.row(d - 1);
    for (int j = d - 1; j <= sf.b; ++j)
        if (D.column(j) != sf.a) return std::nullopt;
    for (int i = 1; i <= d - 2; ++i) {
        sf.y_cols.push_back(D.column(i) - sf.a);
        sf.x_cols.push_back(D.row(i) - sf.b);
    }
    return sf;
}

inline FerrersDiagram compose(const StandardForm& sf, int d) {
    require(d >= 2 && sf.a >= d - 1 && sf.b >= d - 1, "standard form parameters out of range");
    require(static_cast<int>(sf.x_cols.size()) == d - 2 && static_cast<int>(sf.y_cols.size()) == d - 2,
            "standard form needs d-2 columns for X and Y");
    std::vector<int> cols;
    for (int i = 0; i < d - 2; ++i) cols.push_back(sf.a + sf.y_cols[i]);
    for (int j = d - 1; j <= sf.b; ++j) cols.push_back(sf.a);
    int widest = sf.x_cols.empty() ? 0 : *std::max_element(sf.x_cols.begin(), sf.x_cols.end());
    for (int l = 1; l <= widest; ++l) {
        int h = 0;
        for (int x : sf.x_cols)
            if (x >= l) ++h;
        cols.push_back(h);
    }
    return FerrersDiagram(std::move(cols));
}

// Named families.

// [a]x[b]: a rows and b columns.
inline FerrersDiagram rectangle(int a, int b) {
    require(a >= 0 && b >= 0, "rectangle sides must be non-negative");
    return FerrersDiagram(std::vector<int>(a == 0 ? 0 : b, a));
}

inline FerrersDiagram square(int n) { return rectangle(n, n); }

inline FerrersDiagram triangle(int n) {
    require(n >= 0, "triangle size must be non-negative");
    std::vector<int> cols;
    for (int i = n; i >= 1; --i) cols.push_back(i);
    return FerrersDiagram(std::move(cols));
}

// (n, n-1, ..., n-1, 1) with n-2 middle columns.
inline FerrersDiagram g_family(int n) {
    require(n >= 3, "G_n needs n >= 3");
    std::vector<int> cols{n};
    cols.insert(cols.end(), n - 2, n - 1);
    cols.push_back(1);
    return FerrersDiagram(std::move(cols));
}

// (k+r repeated k times, r repeated d-1 times).
inline FerrersDiagram e_family(int k, int d, int r) {
    require(k >= 1 && d >= 1 && r >= 0, "E_{k,d,r} needs k, d >= 1 and r >= 0");
    std::vector<int> cols(k, k + r);
    cols.insert(cols.end(), d - 1, r);
    return FerrersDiagram(std::move(cols));
}

// (k+d-1 repeated r times, k repeated k times); the transpose of E_{k,d,r}.
inline FerrersDiagram f_family(int k, int d, int r) {
    require(k >= 1 && d >= 1 && r >= 0, "F_{k,d,r} needs k, d >= 1 and r >= 0");
    std::vector<int> cols(r, k + d - 1);
    cols.insert(cols.end(), k, k);
    return FerrersDiagram(std::move(cols));
}

inline FerrersDiagram e_family(int n) {
    require(n >= 4, "E_n needs n >= 4");
    return e_family(n - 2, 3, 1);
}

inline FerrersDiagram f_family(int n) {
    require(n >= 4, "F_n needs n >= 4");
    return f_family(n - 2, 3, 1);
}

// Sink L_{n,d,j} of the order-n digraph: c_i = n for i <= d-j-1 and c_i = j for d-j <= i <= n.
inline FerrersDiagram sink_family(int n, int d, int j) {
    require(d >= 1 && d <= n, "sink family needs 1 <= d <= n");
    require(j >= 0 && j <= d - 1, "sink family needs 0 <= j <= d-1");
    std::vector<int> cols;
    for (int i = 1; i <= n; ++i) cols.push_back(i <= d - j - 1 ? n : j);
    return FerrersDiagram(std::move(cols));
}

// Colexicographic comparison of column sequences padded with zeros.
inline bool colex_less(const FerrersDiagram& x, const FerrersDiagram& y) {
    int m = std::max(x.num_columns(), y.num_columns());
    for (int j = m; j >= 1; --j)
        if (x.column(j) != y.column(j)) return x.column(j) < y.column(j);
    return false;
}

// All diagrams inside [n]x[n], in colex order.
inline std::vector<FerrersDiagram> diagrams_of_order(int n) {
    require(n >= 0, "order must be non-negative");
    std::vector<FerrersDiagram> out;
    std::vector<int> cols(n, 0);
    auto rec = [&](auto&& self, int pos, int cap) -> void {
        if (pos == n) {
            out.emplace_back(cols);
            return;
        }
        for (int h = 0; h <= cap; ++h) {
            cols[pos] = h;
            self(self, pos + 1, h);
        }
        cols[pos] = 0;
    };
    rec(rec, 0, n);
    std::sort(out.begin(), out.end(), colex_less);
    return out;
}

}  // namespace ferrers
