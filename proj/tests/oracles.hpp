#pragma once

// Independent brute-force oracles built on explicit cell sets.

#include <set>
#include <utility>
#include <vector>

#include "ferrers/diagram.hpp"

namespace oracle {

using Cells = std::set<std::pair<int, int>>;

inline Cells cells(const ferrers::FerrersDiagram& D) {
    Cells s;
    for (int j = 1; j <= D.num_columns(); ++j)
        for (int i = 1; i <= D.column(j); ++i) s.insert({i, j});
    return s;
}

// Down-left closed: every cell's upper and left neighbours are present.
inline bool is_ferrers(const Cells& s) {
    for (auto [i, j] : s) {
        if (i < 1 || j < 1) return false;
        if (i > 1 && !s.count({i - 1, j})) return false;
        if (j > 1 && !s.count({i, j - 1})) return false;
    }
    return true;
}

inline ferrers::FerrersDiagram from_cells(const Cells& s) {
    std::vector<int> cols;
    for (auto [i, j] : s) {
        if (static_cast<int>(cols.size()) < j) cols.resize(j, 0);
        cols[j - 1] = std::max(cols[j - 1], i);
    }
    return ferrers::FerrersDiagram(cols);
}

// |D intersected with {d-j..n} x {j+1..n}|, with n large enough to hold D.
inline int nu_by_intersection(const ferrers::FerrersDiagram& D, int d, int j) {
    int count = 0;
    for (auto [r, c] : cells(D))
        if (r >= d - j && c >= j + 1) ++count;
    return count;
}

inline int nu_min(const ferrers::FerrersDiagram& D, int d) {
    int best = nu_by_intersection(D, d, 0);
    for (int j = 1; j < d; ++j) best = std::min(best, nu_by_intersection(D, d, j));
    return best;
}

inline std::vector<ferrers::Point> removable(const ferrers::FerrersDiagram& D) {
    std::vector<ferrers::Point> out;
    auto s = cells(D);
    for (auto p : s) {
        auto t = s;
        t.erase(p);
        if (is_ferrers(t)) out.push_back({p.first, p.second});
    }
    return out;
}

inline std::vector<ferrers::Point> addible(const ferrers::FerrersDiagram& D) {
    std::vector<ferrers::Point> out;
    auto s = cells(D);
    int lim = D.order() + 2;
    for (int i = 1; i <= lim; ++i)
        for (int j = 1; j <= lim; ++j) {
            if (s.count({i, j})) continue;
            auto t = s;
            t.insert({i, j});
            if (is_ferrers(t)) out.push_back({i, j});
        }
    return out;
}

inline ferrers::FerrersDiagram transpose(const ferrers::FerrersDiagram& D) {
    Cells t;
    for (auto [i, j] : cells(D)) t.insert({j, i});
    return from_cells(t);
}

}  // namespace oracle
