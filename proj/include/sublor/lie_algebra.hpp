#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <tuple>
#include <vector>

#include "sublor/types.hpp"

namespace sublor {

/// One reported defect of a structure-constant table.
struct AlgebraViolation {
  enum class Kind { Antisymmetry, Jacobi } kind;
  int i, j, k, l;  // l unused for antisymmetry
  double residual;

  std::string describe() const {
    char buf[128];
    if (kind == Kind::Antisymmetry)
      std::snprintf(buf, sizeof buf, "antisymmetry c[%d][%d][%d] residual %.3e",
                    k + 1, i + 1, j + 1, residual);
    else
      std::snprintf(buf, sizeof buf, "jacobi (i,j,k,l)=(%d,%d,%d,%d) residual %.3e",
                    i + 1, j + 1, k + 1, l + 1, residual);
    return buf;
  }
};

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c[k](i,j) e_k.  Also carries the Lie-Poisson
/// structure on g*: {h_i, h_j}(h) = <h, [e_i, e_j]>.
class LieAlgebra {
public:
  /// Entries are (i, j, k, value), zero-based, meaning [e_i,e_j] has
  /// e_k-coefficient value.  The antisymmetric completion is applied;
  /// conflicting duplicate entries are an input error.
  LieAlgebra(int dim,
             const std::vector<std::tuple<int, int, int, double>>& brackets,
             std::vector<std::string> labels = {})
      : dim_(dim), labels_(std::move(labels)) {
    require(dim >= 1 && dim <= 16, "algebra dimension must be in [1,16]");
    c_.assign(dim, Eigen::MatrixXd::Zero(dim, dim));
    std::vector<Eigen::MatrixXd> seen(dim, Eigen::MatrixXd::Zero(dim, dim));
    for (auto& [i, j, k, v] : brackets) {
      require(i >= 0 && i < dim && j >= 0 && j < dim && k >= 0 && k < dim,
              "bracket entry index out of range");
      require(i != j || v == 0.0, "[e_i,e_i] must vanish");
      if (seen[k](i, j) != 0.0 && c_[k](i, j) != v)
        throw InputError("conflicting structure constant at (" +
                         std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         "," + std::to_string(k + 1) + ")");
      c_[k](i, j) = v;
      c_[k](j, i) = -v;
      seen[k](i, j) = seen[k](j, i) = 1.0;
    }
    if (labels_.empty())
      for (int i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i + 1));
    require(static_cast<int>(labels_.size()) == dim, "label count must equal dim");
  }

  /// Raw table, no completion; lets tests exercise validate() on broken input.
  static LieAlgebra from_raw(int dim, std::vector<Eigen::MatrixXd> c) {
    LieAlgebra a(dim, {});
    require(static_cast<int>(c.size()) == dim, "need dim matrices");
    for (auto& m : c)
      require(m.rows() == dim && m.cols() == dim, "each table must be dim x dim");
    a.c_ = std::move(c);
    return a;
  }

  static LieAlgebra abelian(int dim) { return LieAlgebra(dim, {}); }

  /// Heisenberg algebra with [e1,e2] = e3.
  static LieAlgebra heisenberg() {
    return LieAlgebra(3, {{0, 1, 2, 1.0}}, {"e1", "e2", "e3"});
  }

  /// Free Carnot algebra of rank 2 and step 4: X3=[X1,X2], X4=[X1,X3],
  /// X5=[X2,X3], X6=[X1,X4], X7=[X1,X5]=[X2,X4], X8=[X2,X5].
  static LieAlgebra carnot_r2s4() {
    return LieAlgebra(8,
                      {{0, 1, 2, 1.0},
                       {0, 2, 3, 1.0},
                       {1, 2, 4, 1.0},
                       {0, 3, 5, 1.0},
                       {0, 4, 6, 1.0},
                       {1, 3, 6, 1.0},
                       {1, 4, 7, 1.0}},
                      {"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8"});
  }

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double structure_constant(int k, int i, int j) const { return c_[k](i, j); }

  /// [u, v] from the structure constants.
  Vec bracket(const Vec& u, const Vec& v) const {
    require(u.size() == dim_ && v.size() == dim_, "bracket: dimension mismatch");
    Vec w = Vec::Zero(dim_);
    for (int k = 0; k < dim_; ++k) w[k] = u.dot(c_[k] * v);
    return w;
  }

  /// Right-hand side of the conjugate subsystem for constant control u:
  /// dh_i/dt = {H_u, h_i} = sum_j u_j <h, [e_j, e_i]>.
  Covec poisson_rhs(const Covec& h, const Vec& u) const {
    require(h.size() == dim_ && u.size() == dim_, "poisson_rhs: dimension mismatch");
    Covec hdot = Covec::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
      double s = 0.0;
      for (int j = 0; j < dim_; ++j) {
        if (u[j] == 0.0) continue;
        double pij = 0.0;  // {h_j, h_i}(h) = sum_k c[k](j,i) h_k
        for (int k = 0; k < dim_; ++k) pij += c_[k](j, i) * h[k];
        s += u[j] * pij;
      }
      hdot[i] = s;
    }
    return hdot;
  }

  /// Empty iff antisymmetry holds exactly as stored and the Jacobi identity
  /// holds within jacobi_tol per entry.
  std::vector<AlgebraViolation> validate(double jacobi_tol = 1e-12) const {
    std::vector<AlgebraViolation> out;
    for (int k = 0; k < dim_; ++k)
      for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j) {
          double r = c_[k](i, j) + c_[k](j, i);
          if (r != 0.0)
            out.push_back({AlgebraViolation::Kind::Antisymmetry, i, j, k, 0, r});
        }
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int k = j + 1; k < dim_; ++k)
          for (int l = 0; l < dim_; ++l) {
            double s = 0.0;
            for (int m = 0; m < dim_; ++m)
              s += c_[m](i, j) * c_[l](m, k) + c_[m](j, k) * c_[l](m, i) +
                   c_[m](k, i) * c_[l](m, j);
            if (std::abs(s) > jacobi_tol)
              out.push_back({AlgebraViolation::Kind::Jacobi, i, j, k, l, s});
          }
    return out;
  }

  /// Smallest s with g^(s+1) = [g, g^(s)] = 0 (lower central series).
  /// Throws if the algebra is not nilpotent within max_step.
  int nilpotency_step(int max_step = 8) const {
    Eigen::MatrixXd layer = Eigen::MatrixXd::Identity(dim_, dim_);  // columns span g^(1)
    for (int s = 1; s <= max_step; ++s) {
      std::vector<Vec> next;
      for (int i = 0; i < dim_; ++i)
        for (int col = 0; col < layer.cols(); ++col) {
          Vec b = bracket(Vec::Unit(dim_, i), layer.col(col));
          if (b.norm() > 1e-13) next.push_back(b);
        }
      if (next.empty()) return s;
      Eigen::MatrixXd m(dim_, static_cast<int>(next.size()));
      for (int c = 0; c < m.cols(); ++c) m.col(c) = next[c];
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
      qr.setThreshold(1e-12);
      int rank = static_cast<int>(qr.rank());
      Eigen::MatrixXd q = qr.householderQ();
      layer = q.leftCols(rank);
    }
    throw InputError("algebra is not nilpotent within step " + std::to_string(max_step));
  }

private:
  int dim_;
  std::vector<Eigen::MatrixXd> c_;  // c_[k](i,j): e_k-coefficient of [e_i,e_j]
  std::vector<std::string> labels_;
};

}  // namespace sublor
