#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ppr {

/// Dense two-phase simplex for small exact-feasibility problems
/// {A x = b, x >= 0}.  Dantzig pricing with a Bland fallback against
/// cycling; on infeasibility the Farkas direction is read off the final
/// phase-1 basis.
class SimplexSolver {
public:
  struct Feasibility {
    bool feasible;
    std::vector<double> x;       // primal solution when feasible
    std::vector<double> farkas;  // y with y.A >= 0 (component-wise) and y.b < 0 otherwise
  };

  struct Optimum {
    bool feasible;
    double value;
    std::vector<double> x;
  };

  SimplexSolver(std::vector<std::vector<double>> a, std::vector<double> b, double tol = 1e-9)
      : a_(std::move(a)), b_(std::move(b)), tol_(tol) {
    m_ = static_cast<int>(a_.size());
    n_ = m_ ? static_cast<int>(a_[0].size()) : 0;
    if (static_cast<int>(b_.size()) != m_) throw std::invalid_argument("rhs arity mismatch");
  }

  Feasibility feasible() {
    build();
    bool ok = phase1();
    Feasibility out;
    out.feasible = ok;
    if (ok)
      out.x = primal();
    else
      out.farkas = farkas_direction();
    return out;
  }

  Optimum maximize(const std::vector<double>& c) {
    if (static_cast<int>(c.size()) != n_) throw std::invalid_argument("objective arity mismatch");
    build();
    if (!phase1()) return {false, 0.0, {}};
    phase2(c);
    auto x = primal();
    double v = 0;
    for (int j = 0; j < n_; ++j) v += c[j] * x[j];
    return {true, v, std::move(x)};
  }

private:
  void build() {
    row_sign_.assign(m_, 1.0);
    t_.assign(m_, std::vector<double>(n_ + m_ + 1, 0.0));
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      double s = b_[i] < 0 ? -1.0 : 1.0;
      row_sign_[i] = s;
      for (int j = 0; j < n_; ++j) t_[i][j] = s * a_[i][j];
      t_[i][n_ + i] = 1.0;
      t_[i][n_ + m_] = s * b_[i];
      basis_[i] = n_ + i;
    }
    // phase-1 reduced costs: c_j - sum_i T[i][j] with c = (0...0,1...1)
    obj_.assign(n_ + m_ + 1, 0.0);
    for (int j = 0; j < n_ + m_; ++j) {
      double s = 0;
      for (int i = 0; i < m_; ++i) s += t_[i][j];
      obj_[j] = (j >= n_ ? 1.0 : 0.0) - s;
    }
    double z = 0;
    for (int i = 0; i < m_; ++i) z += t_[i][n_ + m_];
    obj_[n_ + m_] = -z;  // negative of the phase-1 objective value
  }

  // Returns true when the artificial objective reaches (near) zero.
  bool phase1() {
    iterate(/*allow_artificial=*/false);
    return -obj_[n_ + m_] <= tol_;
  }

  void phase2(const std::vector<double>& c) {
    // pivot out artificials left basic at zero; an all-zero structural row is
    // redundant and stays inert
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (std::abs(t_[i][j]) > tol_) {
          pivot(i, j);
          break;
        }
      }
    }
    // new objective: minimize -c.x; artificial columns stay priced out
    for (int j = 0; j < n_ + m_; ++j) {
      double cj = j < n_ ? -c[j] : 0.0;
      double s = 0;
      for (int i = 0; i < m_; ++i) {
        int bi = basis_[i];
        double cb = bi < n_ ? -c[bi] : 0.0;
        s += cb * t_[i][j];
      }
      obj_[j] = cj - s;
    }
    double z = 0;
    for (int i = 0; i < m_; ++i) {
      int bi = basis_[i];
      double cb = bi < n_ ? -c[bi] : 0.0;
      z += cb * t_[i][n_ + m_];
    }
    obj_[n_ + m_] = -z;
    iterate(/*allow_artificial=*/false);
  }

  void iterate(bool allow_artificial) {
    const int dantzig_limit = 5000, hard_limit = 200000;
    for (int iter = 0;; ++iter) {
      if (iter > hard_limit) throw std::runtime_error("simplex iteration limit exceeded");
      bool bland = iter > dantzig_limit;
      int enter = -1;
      double best = -tol_;
      int cols = allow_artificial ? n_ + m_ : n_;
      for (int j = 0; j < cols; ++j) {
        if (!allow_artificial && j >= n_) break;
        if (obj_[j] < best) {
          enter = j;
          if (bland) break;
          best = obj_[j];
        }
      }
      if (enter < 0) return;  // optimal
      int leave = -1;
      double best_ratio = 0;
      for (int i = 0; i < m_; ++i) {
        double aij = t_[i][enter];
        if (aij > tol_) {
          double ratio = t_[i][n_ + m_] / aij;
          if (leave < 0 || ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) throw std::runtime_error("simplex detected an unbounded direction");
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    double piv = t_[row][col];
    for (double& v : t_[row]) v /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      double f = t_[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_ + m_; ++j) t_[i][j] -= f * t_[row][j];
    }
    double f = obj_[col];
    if (f != 0.0)
      for (int j = 0; j <= n_ + m_; ++j) obj_[j] -= f * t_[row][j];
    basis_[row] = col;
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][n_ + m_];
    return x;
  }

  // Farkas direction in the original row order and signs: f.A >= 0, f.b < 0.
  std::vector<double> farkas_direction() const {
    std::vector<double> f(m_);
    for (int i = 0; i < m_; ++i) {
      double yi = 1.0 - obj_[n_ + i];  // dual of the flipped system
      f[i] = -row_sign_[i] * yi;
    }
    return f;
  }

  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  double tol_;
  int m_ = 0, n_ = 0;
  std::vector<std::vector<double>> t_;
  std::vector<double> obj_;
  std::vector<double> row_sign_;
  std::vector<int> basis_;
};

}  // namespace ppr
