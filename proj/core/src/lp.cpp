#include "seisgrid/lp.hpp"

#include <algorithm>
#include <cmath>

namespace seisgrid::lp {

const char* status_name(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration limit";
  }
  return "unknown";
}

namespace {

enum class Place : std::uint8_t { Basic, AtLower, AtUpper, Free };

class Tableau {
 public:
  Tableau(const Problem& p, const Options& o) : opt_(o), m_(p.rows), n_(p.cols), cols_(n_ + m_) {
    t_.assign(m_ * cols_, 0.0);
    x_.assign(cols_, 0.0);
    lo_.assign(cols_, 0.0);
    up_.assign(cols_, kInf);
    place_.assign(cols_, Place::AtLower);
    basis_.resize(m_);
    sign_.resize(m_);
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = p.lower[j];
      up_[j] = p.upper[j];
      if (std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
        place_[j] = Place::AtLower;
      } else if (std::isfinite(up_[j])) {
        x_[j] = up_[j];
        place_[j] = Place::AtUpper;
      } else {
        x_[j] = 0.0;
        place_[j] = Place::Free;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      double r = p.b[i];
      for (std::size_t j = 0; j < n_; ++j) r -= p.at(i, j) * x_[j];
      sign_[i] = r >= 0.0 ? 1.0 : -1.0;
      for (std::size_t j = 0; j < n_; ++j) cell(i, j) = sign_[i] * p.at(i, j);
      cell(i, n_ + i) = 1.0;
      basis_[i] = n_ + i;
      place_[n_ + i] = Place::Basic;
      x_[n_ + i] = std::abs(r);
      rhs_.push_back(sign_[i] * p.b[i]);
    }
  }

  /// Runs simplex iterations for the given column costs (size cols_).
  Status optimize(const std::vector<double>& cost, std::size_t& iterations, std::size_t cap) {
    std::vector<double> reduced(cols_);
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (iterations >= cap) return Status::IterationLimit;
      for (std::size_t j = 0; j < cols_; ++j) reduced[j] = cost[j];
      for (std::size_t i = 0; i < m_; ++i) {
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        const double* row = &t_[i * cols_];
        for (std::size_t j = 0; j < cols_; ++j) reduced[j] -= cb * row[j];
      }

      std::size_t enter = cols_;
      double dir = 0.0;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (place_[j] == Place::Basic || lo_[j] == up_[j]) continue;
        const double d = reduced[j];
        double cand_dir = 0.0;
        if (place_[j] == Place::AtLower && d < -opt_.optimality_tol) cand_dir = 1.0;
        else if (place_[j] == Place::AtUpper && d > opt_.optimality_tol) cand_dir = -1.0;
        else if (place_[j] == Place::Free && std::abs(d) > opt_.optimality_tol) cand_dir = d < 0.0 ? 1.0 : -1.0;
        if (cand_dir == 0.0) continue;
        if (bland) {
          enter = j;
          dir = cand_dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          enter = j;
          dir = cand_dir;
        }
      }
      if (enter == cols_) return Status::Optimal;

      // Ratio test.
      double step = (std::isfinite(lo_[enter]) && std::isfinite(up_[enter])) ? up_[enter] - lo_[enter]
                                                                              : kInf;
      std::size_t leave_row = m_;
      double leave_alpha = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = dir * cell(i, enter);
        if (std::abs(alpha) <= opt_.pivot_tol) continue;
        const std::size_t k = basis_[i];
        double ratio;
        if (alpha > 0.0) {
          if (!std::isfinite(lo_[k])) continue;
          ratio = (x_[k] - lo_[k]) / alpha;
        } else {
          if (!std::isfinite(up_[k])) continue;
          ratio = (up_[k] - x_[k]) / -alpha;
        }
        ratio = std::max(ratio, 0.0);
        bool take = false;
        if (ratio < step - 1e-12) {
          take = true;
        } else if (leave_row != m_ && ratio <= step + 1e-12) {
          take = bland ? k < basis_[leave_row] : std::abs(alpha) > std::abs(leave_alpha);
        }
        if (take) {
          step = ratio;
          leave_row = i;
          leave_alpha = alpha;
        }
      }
      if (!std::isfinite(step)) return Status::Unbounded;
      ++iterations;

      for (std::size_t i = 0; i < m_; ++i) x_[basis_[i]] -= step * dir * cell(i, enter);
      x_[enter] += step * dir;

      if (step <= 1e-12) {
        if (++degenerate_run > opt_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      if (leave_row == m_) {
        // Bound flip of the entering variable.
        place_[enter] = dir > 0.0 ? Place::AtUpper : Place::AtLower;
        x_[enter] = dir > 0.0 ? up_[enter] : lo_[enter];
        continue;
      }

      const std::size_t leaving = basis_[leave_row];
      if (leave_alpha > 0.0) {
        x_[leaving] = lo_[leaving];
        place_[leaving] = Place::AtLower;
      } else {
        x_[leaving] = up_[leaving];
        place_[leaving] = Place::AtUpper;
      }
      pivot(leave_row, enter);
      basis_[leave_row] = enter;
      place_[enter] = Place::Basic;
    }
  }

  double artificial_sum() const {
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) s += std::abs(x_[n_ + i]);
    return s;
  }

  /// Phase 2: artificials are pinned to zero and never re-enter.
  void fix_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      up_[n_ + i] = 0.0;
      if (place_[n_ + i] != Place::Basic) {
        x_[n_ + i] = 0.0;
        place_[n_ + i] = Place::AtLower;
      }
    }
  }

  /// Recomputes basic values from the nonbasic ones to remove drift.
  void refresh_basics() {
    for (std::size_t i = 0; i < m_; ++i) {
      double v = 0.0;
      for (std::size_t r = 0; r < m_; ++r) v += cell(i, n_ + r) * rhs_[r];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (place_[j] != Place::Basic && x_[j] != 0.0) v -= cell(i, j) * x_[j];
      }
      x_[basis_[i]] = v;
    }
  }

  const std::vector<double>& values() const { return x_; }
  std::size_t cols() const { return cols_; }

 private:
  double& cell(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }
  double cell(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }

  void pivot(std::size_t r, std::size_t e) {
    double* prow = &t_[r * cols_];
    const double inv = 1.0 / prow[e];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[e] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[i * cols_];
      const double f = row[e];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[e] = 0.0;
    }
  }

  Options opt_;
  std::size_t m_;
  std::size_t n_;
  std::size_t cols_;
  std::vector<double> t_;
  std::vector<double> x_;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<Place> place_;
  std::vector<std::size_t> basis_;
  std::vector<double> sign_;
  std::vector<double> rhs_;
};

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  Solution out;
  const auto m = problem.rows;
  const auto n = problem.cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (problem.lower[j] > problem.upper[j] + options.feasibility_tol) return out;
  }

  Tableau tab(problem, options);
  const std::size_t cap =
      options.max_iterations ? options.max_iterations : 20 * (m + n) + 1000;

  double b_norm = 0.0;
  for (double v : problem.b) b_norm = std::max(b_norm, std::abs(v));

  std::vector<double> cost(tab.cols(), 0.0);
  for (std::size_t i = 0; i < m; ++i) cost[n + i] = 1.0;
  auto status = tab.optimize(cost, out.iterations, cap);
  if (status == Status::IterationLimit) {
    out.status = status;
    return out;
  }
  if (tab.artificial_sum() > options.feasibility_tol * (1.0 + b_norm) * static_cast<double>(m + 1)) {
    out.status = Status::Infeasible;
    return out;
  }

  tab.fix_artificials();
  std::fill(cost.begin(), cost.end(), 0.0);
  std::copy(problem.c.begin(), problem.c.end(), cost.begin());
  status = tab.optimize(cost, out.iterations, cap);
  out.status = status;
  if (status != Status::Optimal) return out;

  tab.refresh_basics();
  out.x.assign(tab.values().begin(), tab.values().begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t j = 0; j < n; ++j) out.objective += problem.c[j] * out.x[j];
  return out;
}

}  // namespace seisgrid::lp
