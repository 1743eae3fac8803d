#include "pointfw/simplex.hpp"

#include <cmath>
#include <limits>

#include "pointfw/error.hpp"

namespace pointfw {

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  if (lp.rhs.size() != m) throw Error(ErrorCode::InvalidArgument, "lp rhs size");
  constexpr double eps = 1e-12;

  // Tableau columns: n structural, m slack, rhs. Row m is the reduced cost row.
  const std::size_t width = n + m + 1;
  std::vector<double> t((m + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return t[r * width + c]; };
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.rows[r].size() != n) throw Error(ErrorCode::InvalidArgument, "lp row size");
    if (lp.rhs[r] < 0.0) throw Error(ErrorCode::InvalidArgument, "lp rhs must be nonnegative");
    for (std::size_t c = 0; c < n; ++c) at(r, c) = lp.rows[r][c];
    at(r, n + r) = 1.0;
    at(r, width - 1) = lp.rhs[r];
    basis[r] = n + r;
  }
  for (std::size_t c = 0; c < n; ++c) at(m, c) = -lp.objective[c];

  LpSolution sol;
  for (std::size_t iter = 0; iter < 50 * (n + m) + 100; ++iter) {
    // Bland: lowest-index column with negative reduced cost.
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width; ++c) {
      if (at(m, c) < -eps) {
        enter = c;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = at(r, enter);
      if (a > eps) {
        const double ratio = at(r, width - 1) / a;
        if (ratio < best - eps || (ratio <= best + eps && leave < m && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave == m) {
      sol.bounded = false;
      return sol;
    }
    const double pivot = at(leave, enter);
    for (std::size_t c = 0; c < width; ++c) at(leave, c) /= pivot;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) at(r, c) -= f * at(leave, c);
    }
    basis[leave] = enter;
  }

  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) sol.x[basis[r]] = at(r, width - 1);
  }
  sol.value = 0.0;
  for (std::size_t c = 0; c < n; ++c) sol.value += lp.objective[c] * sol.x[c];
  return sol;
}

std::vector<double> bernstein_lp_oracle(const std::vector<double>& d, double alpha, int sign) {
  if (d.size() < 2) throw Error(ErrorCode::InvalidArgument, "Bernstein order must be >= 1");
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "Lipschitz bound must be positive");
  const std::size_t n = d.size();
  const double order = static_cast<double>(n - 1);
  LinearProgram lp;
  lp.objective.resize(n);
  for (std::size_t v = 0; v < n; ++v) lp.objective[v] = sign >= 0 ? d[v] : -d[v];
  for (std::size_t v = 1; v < n; ++v) {
    std::vector<double> mono(n, 0.0);  // a_{v-1} - a_v <= 0
    mono[v - 1] = 1.0;
    mono[v] = -1.0;
    lp.rows.push_back(mono);
    lp.rhs.push_back(0.0);
    std::vector<double> lip(n, 0.0);  // a_v - a_{v-1} <= alpha / V
    lip[v] = 1.0;
    lip[v - 1] = -1.0;
    lp.rows.push_back(std::move(lip));
    lp.rhs.push_back(alpha / order);
  }
  std::vector<double> top(n, 0.0);
  top[n - 1] = 1.0;
  lp.rows.push_back(std::move(top));
  lp.rhs.push_back(1.0);
  auto sol = solve_lp(lp);
  // Pivoting noise can leave tiny violations of the chain.
  for (std::size_t v = 0; v < n; ++v) {
    double a = std::max(sol.x[v], v > 0 ? sol.x[v - 1] : 0.0);
    if (v > 0) a = std::min(a, sol.x[v - 1] + alpha / order);
    sol.x[v] = std::min(a, 1.0);
  }
  return sol.x;
}

}  // namespace pointfw
