#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ferrers/diagram.hpp"
#include "ferrers/young_digraph.hpp"

namespace ferrers {

enum class Method { Local, Classified, Digraph };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Local: return "local";
        case Method::Classified: return "classified";
        case Method::Digraph: return "digraph";
    }
    return "unknown";
}

struct IrreducibilityVerdict {
    bool irreducible = false;
    Method method = Method::Local;
    std::optional<Point> witness;
    std::optional<StandardForm> standard_form;
};

// Every addible point keeps nu_min and every removable point lowers it by one.
// Reports the first violating point, addible points first, each in row-major order.
inline IrreducibilityVerdict is_irreducible_local(const FerrersDiagram& D, int d) {
    require(d >= 1, "d must be positive");
    IrreducibilityVerdict v;
    v.method = Method::Local;
    if (d >= 2) v.standard_form = standard_form(D, d);
    int base = nu_min_value(D, d);
    for (Point p : addible_points(D))
        if (nu_min_value(add_point(D, p), d) != base) {
            v.witness = p;
            return v;
        }
    for (Point p : removable_points(D))
        if (nu_min_value(remove_point(D, p), d) != base - 1) {
            v.witness = p;
            return v;
        }
    v.irreducible = true;
    return v;
}

// Inequality form of the classification for a pair already in standard form.
inline bool classification_inequalities(const StandardForm& sf, int d) {
    int delta = sf.b - sf.a;
    int sx = 0, sy = 0;
    for (int i = 0; i < d - 2; ++i) {
        sx += sf.x_cols[i];
        sy += sf.y_cols[i];
    }
    if (sy - sx != delta * (d - 1)) return false;
    bool tight = false;
    int px = 0, py = 0;
    for (int j = 1; j <= d - 2; ++j) {
        // c_{d-j}(X) with c_{d-1}(X) = 0
        if (j >= 2) px += sf.x_cols[d - j - 1];
        py += sf.y_cols[j - 1];
        int slack = j * (delta + d - 1 - j) + px - py;
        if (slack < 0) return false;
        if (slack == 0) tight = true;
    }
    if (sf.a == d - 1 && sf.b == d - 1) return tight;
    return true;
}

// Closed-form classification; nullopt when (d-1,d-1) is not in D.
inline std::optional<IrreducibilityVerdict> is_irreducible_classified(const FerrersDiagram& D, int d) {
    require(d >= 2, "classification needs d >= 2");
    if (!D.contains(Point{d - 1, d - 1})) return std::nullopt;
    IrreducibilityVerdict v;
    v.method = Method::Classified;
    v.standard_form = standard_form(D, d);
    if (!v.standard_form) return v;
    const auto& sf = *v.standard_form;
    auto nus = nu_profile(D, d);
    bool ok = nus[0] == nus[d - 1];
    bool tight = false;
    for (int j = 1; j <= d - 2; ++j) {
        if (nus[j] < nus[0]) ok = false;
        if (nus[j] == nus[0]) tight = true;
    }
    if (sf.a == d - 1 && sf.b == d - 1 && !tight) ok = false;
    ensure(ok == classification_inequalities(sf, d),
           "classification statements disagree on " + D.to_string() + " d=" + std::to_string(d));
    v.irreducible = ok;
    return v;
}

// Nonempty irreducible diagrams of proper order <= max_order, in colex order.
// Only diagrams containing T_d are tested since every nonempty irreducible contains it.
inline std::vector<FerrersDiagram> enumerate_irreducible(int d, int max_order, bool force = false) {
    require(d >= 1 && max_order >= 0, "need d >= 1 and max_order >= 0");
    if (max_order > kMaxOrder || (max_order > kMaxUnrestrictedOrder && !force))
        throw ResourceError("max_order " + std::to_string(max_order) + " exceeds the enumeration guard");
    std::vector<FerrersDiagram> out;
    for (const auto& D : diagrams_containing_triangle(max_order, d))
        if (!D.empty() && is_irreducible_local(D, d).irreducible) out.push_back(D);
    return out;
}

// The d = 3 irreducibles are exactly A_n, G_n (n >= 3) and E_n, F_n (n >= 4).
inline std::vector<FerrersDiagram> d3_family_members(int max_n) {
    std::vector<FerrersDiagram> expected;
    for (int n = 3; n <= max_n; ++n) {
        expected.push_back(square(n));
        expected.push_back(g_family(n));
        if (n >= 4) {
            expected.push_back(e_family(n));
            expected.push_back(f_family(n));
        }
    }
    std::sort(expected.begin(), expected.end(), colex_less);
    return expected;
}

inline bool d3_families_check(int max_n) {
    require(max_n >= 3, "need max_n >= 3");
    return enumerate_irreducible(3, max_n) == d3_family_members(max_n);
}

}  // namespace ferrers
