#pragma once

#include <map>
#include <vector>

#include "ferrers/diagram.hpp"
#include "ferrers/polytope.hpp"

// Published reference values used by the CLI table checks and the acceptance run.
namespace ferrers::reference {

// |P_d(Z)| for d = 3..8.
inline const std::map<int, long long> point_counts{{3, 4}, {4, 22}, {5, 155}, {6, 1301}, {7, 12330}, {8, 127275}};

// Integer points of P_d split by z = -(d-2)..(d-2).
inline const std::map<int, std::vector<long long>> delta_splits{
    {3, {1, 2, 1}},
    {4, {2, 5, 8, 5, 2}},
    {5, {5, 17, 34, 43, 34, 17, 5}},
    {6, {16, 66, 159, 257, 305, 257, 159, 66, 16}},
};

inline const std::map<int, std::vector<long long>> f_vectors{
    {3, {3, 3, 1}},
    {4, {9, 18, 15, 6, 1}},
    {5, {27, 81, 108, 81, 36, 9, 1}},
};

// Vertices (x_1..x_k, y_1..y_k, z).
inline const std::map<int, std::vector<LatticePoint>> vertices{
    {3, {{0, 0, 0}, {0, 2, 1}, {2, 0, -1}}},
    {4,
     {{0, 0, 0, 0, 0}, {3, 0, 0, 0, -1}, {3, 3, 0, 0, -2}, {0, 0, 3, 3, 2}, {0, 0, 3, 0, 1}, {4, 2, 0, 0, -2},
      {2, 0, 2, 0, 0}, {2, 2, 2, 2, 0}, {0, 0, 4, 2, 2}}},
};

// Sources of the unrestricted order-n digraph, keyed by (n, d), as column heights.
inline const std::map<std::pair<int, int>, std::vector<std::vector<int>>> sources{
    {{3, 3}, {{}, {3, 3, 3}, {3, 2, 1}}},
    {{4, 4}, {{}, {4, 4, 4, 4}, {4, 4, 2, 2}, {4, 3, 2, 1}}},
    {{5, 5}, {{}, {5, 5, 5, 5, 5}, {5, 5, 5, 3, 3}, {5, 5, 4, 2, 2}, {5, 5, 3, 3, 2}, {5, 4, 3, 2, 1}}},
    {{4, 3}, {{}, {3, 3, 3}, {4, 4, 4, 4}, {3, 2, 1}, {4, 3, 3, 1}, {3, 3, 1, 1}, {4, 2, 2}}},
};

}  // namespace ferrers::reference
