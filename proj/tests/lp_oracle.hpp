#pragma once

// Test-only oracle for the three-variable welfare program
//
//   max (b1 + b2)/2 + 2b/3
//   s.t. b1/2 + b/3 >= v1,  b2/2 + b/3 >= v2,
//        b1, b2, b >= 0,    b1 + b2 + b <= 1
//
// solved by exact vertex enumeration: every basic solution of three active
// constraints is checked for feasibility and the best objective wins. Kept
// independent of the closed form it cross-checks.

#include <array>
#include <optional>
#include <vector>

#include "coopetition/rational.hpp"

namespace coopetition::testing {

struct OracleRow {
    std::array<Rat, 3> a;
    Rat c;  // a . x <= c
};

inline std::optional<Rat> lp_vertex_oracle(const Rat& v1, const Rat& v2) {
    const Rat half = rat(1, 2), third = rat(1, 3);
    std::vector<OracleRow> rows = {
        {{-half, Rat(0), -third}, -v1},    // participation of player 1
        {{Rat(0), -half, -third}, -v2},    // participation of player 2
        {{Rat(-1), Rat(0), Rat(0)}, Rat(0)},
        {{Rat(0), Rat(-1), Rat(0)}, Rat(0)},
        {{Rat(0), Rat(0), Rat(-1)}, Rat(0)},
        {{Rat(1), Rat(1), Rat(1)}, Rat(1)},
    };

    auto det3 = [](const std::array<Rat, 3>& r0, const std::array<Rat, 3>& r1,
                   const std::array<Rat, 3>& r2) -> Rat {
        return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) -
               r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
               r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
    };

    std::optional<Rat> best;
    const int n = static_cast<int>(rows.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const Rat det = det3(rows[i].a, rows[j].a, rows[k].a);
                if (det == 0) continue;
                // Cramer's rule for the three active constraints
                std::array<Rat, 3> x;
                for (int col = 0; col < 3; ++col) {
                    std::array<Rat, 3> ci = rows[i].a, cj = rows[j].a, ck = rows[k].a;
                    ci[col] = rows[i].c;
                    cj[col] = rows[j].c;
                    ck[col] = rows[k].c;
                    x[col] = det3(ci, cj, ck) / det;
                }
                bool feasible = true;
                for (const OracleRow& row : rows) {
                    if (row.a[0] * x[0] + row.a[1] * x[1] + row.a[2] * x[2] > row.c) {
                        feasible = false;
                        break;
                    }
                }
                if (!feasible) continue;
                const Rat objective = (x[0] + x[1]) / 2 + 2 * x[2] / 3;
                if (!best || objective > *best) best = objective;
            }
        }
    }
    return best;
}

}  // namespace coopetition::testing
