#pragma once

#include <cstddef>
#include <vector>

namespace pointfw {

// max c'x  s.t.  A x <= b,  x >= 0, with b >= 0 so the origin is feasible.
// Dense tableau, Bland's rule. Small problems only.
struct LinearProgram {
  std::vector<double> objective;          // c, length n
  std::vector<std::vector<double>> rows;  // A, m rows of length n
  std::vector<double> rhs;                // b, length m
};

struct LpSolution {
  std::vector<double> x;
  double value = 0.0;
  bool bounded = true;
};

LpSolution solve_lp(const LinearProgram& lp);

// Maximizes sign * sum_v a_v d_v over monotone coefficients
// 0 <= a_0 <= a_1 <= ... <= a_V <= 1 with increments a_v - a_{v-1} <= alpha / V.
// V = d.size() - 1 >= 1.
std::vector<double> bernstein_lp_oracle(const std::vector<double>& d, double alpha, int sign);

}  // namespace pointfw
