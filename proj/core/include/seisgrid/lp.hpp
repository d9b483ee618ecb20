#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace seisgrid::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// minimize c'x  subject to  A x = b,  lower <= x <= upper.
/// Bounds may be infinite; A is dense row-major (rows x cols).
struct Problem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> lower;
  std::vector<double> upper;

  Problem() = default;
  Problem(std::size_t m, std::size_t n)
      : rows(m), cols(n), a(m * n, 0.0), b(m, 0.0), c(n, 0.0), lower(n, 0.0), upper(n, kInf) {}

  double& at(std::size_t r, std::size_t j) { return a[r * cols + j]; }
  double at(std::size_t r, std::size_t j) const { return a[r * cols + j]; }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

const char* status_name(Status s);

struct Options {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-10;
  /// 0 selects a cap proportional to the problem size.
  std::size_t max_iterations = 0;
  /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
  std::size_t degenerate_switch = 50;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Two-phase bounded-variable primal simplex on a dense tableau. Intended
/// for the small per-island dispatch problems (a few hundred columns).
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace seisgrid::lp
