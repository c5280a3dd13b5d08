#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "sublor/types.hpp"

namespace sublor {

constexpr double kMembershipTol = 1e-9;

struct DualCone;

/// Closed convex salient cone in g.  Three representations cover every cone
/// in scope:
///   LorentzQuadratic   c0 u_{i0}^2 >= sum c_m u_{im}^2, u_{i0} >= 0,
///                      u_j = 0 off the index list;
///   PolyhedralGenerators  nonnegative span of finitely many generators;
///   HalfplaneSector    two boundary rays of a sector in a 2-plane.
struct Cone {
  enum class Kind { LorentzQuadratic, PolyhedralGenerators, HalfplaneSector };

  Kind kind;
  int ambient = 0;
  std::vector<int> indices;     // Lorentz: [i0, i1..ir], zero-based
  Vec weights;                  // Lorentz: c0..cr, all positive
  std::vector<Vec> generators;  // Polyhedral
  Vec ray1, ray2;               // Sector

  static Cone lorentz(int ambient, std::vector<int> idx, Vec w) {
    require(idx.size() >= 1 && idx.size() == static_cast<size_t>(w.size()),
            "lorentz cone: need one weight per index");
    for (int i : idx) require(i >= 0 && i < ambient, "lorentz cone: index out of range");
    for (int i = 0; i < w.size(); ++i) require(w[i] > 0, "lorentz cone: weights must be positive");
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "lorentz cone: duplicate index");
    Cone c;
    c.kind = Kind::LorentzQuadratic;
    c.ambient = ambient;
    c.indices = std::move(idx);
    c.weights = std::move(w);
    return c;
  }

  static Cone polyhedral(std::vector<Vec> gens) {
    require(!gens.empty(), "polyhedral cone: need at least one generator");
    Cone c;
    c.kind = Kind::PolyhedralGenerators;
    c.ambient = static_cast<int>(gens[0].size());
    for (auto& g : gens)
      require(g.size() == c.ambient, "polyhedral cone: generator dimension mismatch");
    c.generators = std::move(gens);
    return c;
  }

  static Cone sector(Vec d1, Vec d2) {
    require(d1.size() == d2.size(), "sector: ray dimension mismatch");
    require(d1.norm() > 0 && d2.norm() > 0, "sector: rays must be nonzero");
    Cone c;
    c.kind = Kind::HalfplaneSector;
    c.ambient = static_cast<int>(d1.size());
    c.ray1 = std::move(d1);
    c.ray2 = std::move(d2);
    return c;
  }

  /// Classification relative to the affine hull of the cone, with a band of
  /// width tol in the normalized defining inequalities.  u = 0 classifies as
  /// RelativeBoundary.
  Region classify(const Vec& u, double tol = kMembershipTol) const {
    require(u.size() == ambient, "classify: dimension mismatch");
    double nu = u.norm();
    if (nu == 0.0) return Region::RelativeBoundary;
    switch (kind) {
      case Kind::LorentzQuadratic: {
        double off2 = u.squaredNorm();
        Vec ul(indices.size());
        for (size_t m = 0; m < indices.size(); ++m) ul[m] = u[indices[m]];
        off2 -= ul.squaredNorm();
        if (std::sqrt(std::max(off2, 0.0)) > tol * nu) return Region::Outside;
        double nl = ul.norm();
        if (nl <= tol * nu) return Region::RelativeBoundary;  // listed part ~ 0
        double q = weights[0] * ul[0] * ul[0];
        for (int m = 1; m < ul.size(); ++m) q -= weights[m] * ul[m] * ul[m];
        double qn = q / (nl * nl);
        double u0n = ul[0] / nl;
        if (u0n < -tol || qn < -tol) return Region::Outside;
        if (indices.size() == 1)  // single ray: interior = positive axis
          return u0n > tol ? Region::RelativeInterior : Region::RelativeBoundary;
        return (qn <= tol || u0n <= tol) ? Region::RelativeBoundary
                                         : Region::RelativeInterior;
      }
      case Kind::PolyhedralGenerators:
      case Kind::HalfplaneSector: {
        ensure_facets();
        if ((u - span_projector_ * u).norm() > tol * nu) return Region::Outside;
        if (span_dim_ == 1) {
          if (line_) return Region::RelativeInterior;
          double t = ray_dir_.dot(u);
          if (t < -tol * nu) return Region::Outside;
          return t > tol * nu ? Region::RelativeInterior : Region::RelativeBoundary;
        }
        if (facets_.empty()) return Region::RelativeInterior;  // cone equals its span
        bool boundary = false;
        for (const auto& f : facets_) {
          double v = f.dot(u) / nu;
          if (v < -tol) return Region::Outside;
          if (v <= tol) boundary = true;
        }
        return boundary ? Region::RelativeBoundary : Region::RelativeInterior;
      }
    }
    return Region::Outside;
  }

  bool contains(const Vec& u, double tol = kMembershipTol) const {
    return classify(u, tol) != Region::Outside;
  }

  /// Basis of span C (the distribution the cone generates).
  std::vector<Vec> span_basis() const {
    switch (kind) {
      case Kind::LorentzQuadratic: {
        std::vector<Vec> b;
        for (int i : indices) b.push_back(Vec::Unit(ambient, i));
        return b;
      }
      case Kind::PolyhedralGenerators: {
        // pick a maximal independent subset of the generators themselves
        std::vector<Vec> b;
        Eigen::MatrixXd m(ambient, 0);
        for (const auto& g : generators) {
          Eigen::MatrixXd trial(ambient, m.cols() + 1);
          trial << m, g;
          Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(trial);
          qr.setThreshold(1e-12);
          if (qr.rank() == trial.cols()) {
            m = trial;
            b.push_back(g);
          }
        }
        return b;
      }
      case Kind::HalfplaneSector: {
        if (parallel_rays()) return {ray1};
        return {ray1, ray2};
      }
    }
    return {};
  }

  /// True iff C contains no line.
  bool is_salient() const {
    switch (kind) {
      case Kind::LorentzQuadratic:
        return true;  // positive weights force u0 = 0 => u = 0 on the mirror
      case Kind::HalfplaneSector: {
        double c = ray1.normalized().dot(ray2.normalized());
        return !(std::abs(c + 1.0) < 1e-12);  // antiparallel rays give a line
      }
      case Kind::PolyhedralGenerators: {
        ensure_facets();
        if (line_) return false;
        if (span_dim_ == 1) return true;
        // a closed finitely generated cone contains a line iff -g_j lies in
        // the cone for some generator g_j
        for (const auto& g : generators) {
          if (g.norm() < 1e-14) continue;
          if (classify(-g, 1e-10) != Region::Outside) return false;
        }
        return true;
      }
    }
    return true;
  }

  DualCone dual() const;

  /// Random point of ri C (unnormalized).  For property tests and axiom checks.
  Vec sample_ri(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> un(0.0, 1.0);
    switch (kind) {
      case Kind::LorentzQuadratic: {
        Vec u = Vec::Zero(ambient);
        int r = static_cast<int>(indices.size()) - 1;
        double u0 = 0.2 + un(rng);
        u[indices[0]] = u0;
        if (r >= 1) {
          Vec d(r);
          std::normal_distribution<double> nd;
          for (int m = 0; m < r; ++m) d[m] = nd(rng);
          if (d.norm() > 0) d.normalize();
          double rho = 0.9 * un(rng);
          for (int m = 1; m <= r; ++m)
            u[indices[m]] = rho * u0 * d[m - 1] * std::sqrt(weights[0] / weights[m]);
        }
        return u;
      }
      case Kind::PolyhedralGenerators: {
        Vec u = Vec::Zero(ambient);
        for (const auto& g : generators) u += (0.1 + un(rng)) * g;
        return u;
      }
      case Kind::HalfplaneSector:
        return (0.1 + un(rng)) * ray1 + (0.1 + un(rng)) * ray2;
    }
    return Vec::Zero(ambient);
  }

  /// Random nonzero point of rb C.
  Vec sample_rb(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> un(0.0, 1.0);
    switch (kind) {
      case Kind::LorentzQuadratic: {
        Vec u = Vec::Zero(ambient);
        int r = static_cast<int>(indices.size()) - 1;
        double u0 = 0.2 + un(rng);
        u[indices[0]] = u0;
        if (r >= 1) {
          Vec d(r);
          std::normal_distribution<double> nd;
          for (int m = 0; m < r; ++m) d[m] = nd(rng);
          d.normalize();
          for (int m = 1; m <= r; ++m)
            u[indices[m]] = u0 * d[m - 1] * std::sqrt(weights[0] / weights[m]);
        }
        return u;
      }
      case Kind::PolyhedralGenerators: {
        ensure_facets();
        if (span_dim_ == 1) return (0.1 + un(rng)) * ray_dir_;
        if (facets_.empty()) return (0.1 + un(rng)) * generators[0];
        // positive combination of the generators lying on one facet
        size_t f = rng() % facets_.size();
        Vec u = Vec::Zero(ambient);
        for (const auto& g : generators)
          if (std::abs(facets_[f].dot(g)) < 1e-10 * std::max(1.0, g.norm()))
            u += (0.1 + un(rng)) * g;
        if (u.norm() > 0) return u;
        return (0.1 + un(rng)) * generators[0];
      }
      case Kind::HalfplaneSector:
        return (0.1 + un(rng)) * (rng() % 2 ? ray1 : ray2);
    }
    return Vec::Zero(ambient);
  }

  bool parallel_rays() const {
    if (kind != Kind::HalfplaneSector) return false;
    double c = ray1.normalized().dot(ray2.normalized());
    return std::abs(std::abs(c) - 1.0) < 1e-12;
  }

  /// Generators viewed uniformly (sector rays count as generators).
  std::vector<Vec> generator_list() const {
    switch (kind) {
      case Kind::LorentzQuadratic: {
        std::vector<Vec> g;
        int r = static_cast<int>(indices.size()) - 1;
        if (r == 0) {
          g.push_back(Vec::Unit(ambient, indices[0]));
          return g;
        }
        // boundary rays along the listed axes (not exhaustive for r >= 2)
        for (int m = 1; m <= r; ++m)
          for (double s : {1.0, -1.0}) {
            Vec u = Vec::Zero(ambient);
            u[indices[0]] = 1.0;
            u[indices[m]] = s * std::sqrt(weights[0] / weights[m]);
            g.push_back(u);
          }
        return g;
      }
      case Kind::PolyhedralGenerators:
        return generators;
      case Kind::HalfplaneSector:
        return {ray1, ray2};
    }
    return {};
  }

private:
  // Facet functionals f with <f, u> >= 0 on C, found by enumerating
  // (d-1)-subsets of generators; complete at desk scale.
  mutable bool facets_ready_ = false;
  mutable std::vector<Vec> facets_;
  mutable Eigen::MatrixXd span_projector_;
  mutable int span_dim_ = 0;
  mutable bool line_ = false;  // generators span their line (1-d, both ways)
  mutable Vec ray_dir_;

  void ensure_facets() const {
    if (facets_ready_) return;
    facets_ready_ = true;
    std::vector<Vec> gens = generator_list();
    std::vector<Vec> g;
    for (auto& v : gens)
      if (v.norm() > 1e-14) g.push_back(v);
    require(!g.empty(), "cone has no nonzero generators");

    Eigen::MatrixXd m(ambient, static_cast<int>(g.size()));
    for (size_t i = 0; i < g.size(); ++i) m.col(static_cast<int>(i)) = g[i];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-12);
    span_dim_ = static_cast<int>(qr.rank());
    Eigen::MatrixXd q = Eigen::MatrixXd(qr.householderQ()).leftCols(span_dim_);
    span_projector_ = q * q.transpose();

    if (span_dim_ == 1) {
      ray_dir_ = g[0].normalized();
      line_ = false;
      for (const auto& v : g)
        if (ray_dir_.dot(v) < -1e-12 * v.norm()) line_ = true;
      return;
    }

    // enumerate index subsets of size span_dim_-1
    int n = static_cast<int>(g.size());
    int d = span_dim_;
    std::vector<int> idx(d - 1);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == d - 1) {
        Eigen::MatrixXd sub(ambient, d - 1);
        for (int t = 0; t < d - 1; ++t) sub.col(t) = g[idx[t]];
        // normal within span C orthogonal to the subset
        Eigen::MatrixXd sys(ambient, d - 1 + (ambient - d));
        sys.leftCols(d - 1) = sub;
        // kernel of [sub | span-complement]^T restricted to span:
        Eigen::MatrixXd a(d - 1, ambient);
        a = sub.transpose();
        Eigen::MatrixXd proj_a = a * span_projector_;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj_a, Eigen::ComputeFullV);
        // candidate normals: right singular vectors with ~zero singular value
        // that lie in span C
        for (int c = 0; c < svd.matrixV().cols(); ++c) {
          double sv = c < svd.singularValues().size() ? svd.singularValues()[c] : 0.0;
          if (sv > 1e-10) continue;
          Vec cand = svd.matrixV().col(c);
          cand = span_projector_ * cand;
          if (cand.norm() < 1e-10) continue;
          cand.normalize();
          int pos = 0, neg = 0;
          for (const auto& v : g) {
            double s = cand.dot(v) / v.norm();
            if (s > 1e-11) ++pos;
            if (s < -1e-11) ++neg;
          }
          Vec f;
          if (neg == 0 && pos > 0)
            f = cand;
          else if (pos == 0 && neg > 0)
            f = -cand;
          else
            continue;
          bool dup = false;
          for (const auto& e : facets_)
            if ((e - f).norm() < 1e-9) dup = true;
          if (!dup) facets_.push_back(f);
        }
        return;
      }
      for (int i = start; i <= n - (d - 1 - depth); ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
  }

  friend struct DualCone;
};

/// Negative dual cone C^v = { p : <p,u> <= 0 for all u in C }, with the
/// closed-form representation induced by the primal variant.
struct DualCone {
  enum class Kind { LorentzQuadratic, HalfspaceIntersection, Sector };

  Kind kind;
  int ambient = 0;
  // LorentzQuadratic: q(p) = w0 p_{i0}^2 - sum w_m p_{im}^2 >= 0, p_{i0} <= 0,
  // coordinates off the list are free (cylinder over the pointed dual).
  std::vector<int> indices;
  Vec weights;  // reciprocal primal weights
  // HalfspaceIntersection: rows r with <p, r> <= 0.
  std::vector<Vec> rows;
  // Sector (2-d ambient only)
  Vec ray1, ray2;

  Region classify(const Covec& p, double tol = kMembershipTol) const {
    require(p.size() == ambient, "dual classify: dimension mismatch");
    double np = p.norm();
    if (np == 0.0) return Region::RelativeBoundary;
    switch (kind) {
      case Kind::LorentzQuadratic: {
        Vec pl(indices.size());
        for (size_t m = 0; m < indices.size(); ++m) pl[m] = p[indices[m]];
        double nl = pl.norm();
        if (nl <= tol * np) return Region::RelativeBoundary;  // annihilates span C
        double q = weights[0] * pl[0] * pl[0];
        for (int m = 1; m < pl.size(); ++m) q -= weights[m] * pl[m] * pl[m];
        double qn = q / (nl * nl);
        double p0n = -pl[0] / nl;  // want p0 <= 0
        if (p0n < -tol || qn < -tol) return Region::Outside;
        if (indices.size() == 1)
          return p0n > tol ? Region::RelativeInterior : Region::RelativeBoundary;
        return (qn <= tol || p0n <= tol) ? Region::RelativeBoundary
                                         : Region::RelativeInterior;
      }
      case Kind::HalfspaceIntersection: {
        bool boundary = false;
        for (const auto& r : rows) {
          double v = p.dot(r) / (np * r.norm());
          if (v > tol) return Region::Outside;
          if (v >= -tol) boundary = true;
        }
        return boundary ? Region::RelativeBoundary : Region::RelativeInterior;
      }
      case Kind::Sector: {
        Eigen::Matrix2d m;
        m << ray1[0], ray2[0], ray1[1], ray2[1];
        Eigen::Vector2d st = m.colPivHouseholderQr().solve(Eigen::Vector2d(p[0], p[1]));
        double s = st[0] / np, t = st[1] / np;
        if (s < -tol || t < -tol) return Region::Outside;
        return (s <= tol || t <= tol) ? Region::RelativeBoundary
                                      : Region::RelativeInterior;
      }
    }
    return Region::Outside;
  }

  bool contains(const Covec& p, double tol = kMembershipTol) const {
    return classify(p, tol) != Region::Outside;
  }

  /// Deterministic sample grid on rb C^v (zero on any free coordinates);
  /// used by boundary searches and lemma checks.
  std::vector<Covec> boundary_grid(int resolution) const {
    std::vector<Covec> out;
    switch (kind) {
      case Kind::LorentzQuadratic: {
        int r = static_cast<int>(indices.size()) - 1;
        if (r == 0) {
          // dual of a halfline is a halfspace; its boundary is the hyperplane
          // p_{i0} = 0, spanned by the remaining coordinate directions
          for (int c = 0; c < ambient; ++c) {
            if (c == indices[0]) continue;
            out.push_back(Covec::Unit(ambient, c));
            out.push_back(-Covec::Unit(ambient, c));
          }
          if (out.empty()) out.push_back(Covec::Zero(ambient));
          return out;
        }
        if (r == 1) {
          for (double s : {1.0, -1.0})
            for (int k = 1; k <= std::max(1, resolution / 8); ++k) {
              Covec p = Covec::Zero(ambient);
              double mag = static_cast<double>(k);
              p[indices[0]] = -std::sqrt(1.0 / weights[0]) * mag;
              p[indices[1]] = s * std::sqrt(1.0 / weights[1]) * mag;
              out.push_back(p);
            }
          return out;
        }
        // r >= 2: ring of directions
        int nphi = std::max(8, resolution);
        std::mt19937_64 rng(12345);
        std::normal_distribution<double> nd;
        for (int t = 0; t < nphi; ++t) {
          Vec d(r);
          for (int m = 0; m < r; ++m) d[m] = nd(rng);
          if (d.norm() == 0) continue;
          d.normalize();
          Covec p = Covec::Zero(ambient);
          p[indices[0]] = -std::sqrt(1.0 / weights[0]);
          for (int m = 1; m <= r; ++m)
            p[indices[m]] = d[m - 1] * std::sqrt(1.0 / weights[m]);
          out.push_back(p);
        }
        return out;
      }
      case Kind::HalfspaceIntersection: {
        // points with one row active: p = -sum_j lam_j r_j projected onto
        // the active row's orthogonal complement, kept if still feasible
        int per = std::max(4, resolution / std::max<int>(1, rows.size()));
        std::mt19937_64 rng(98765);
        std::uniform_real_distribution<double> un(0.0, 1.0);
        for (size_t i = 0; i < rows.size(); ++i) {
          Vec ri = rows[i].normalized();
          for (int k = 0; k < per; ++k) {
            Covec p = Covec::Zero(ambient);
            for (size_t j = 0; j < rows.size(); ++j)
              if (j != i) p -= (0.2 + un(rng)) * rows[j].normalized();
            p -= ri * ri.dot(p);
            if (p.norm() > 1e-12 && classify(p, 1e-9) == Region::RelativeBoundary)
              out.push_back(p);
          }
          // tangent directions of the face, for degenerate row sets
          for (int c = 0; c < ambient; ++c) {
            Vec e = Vec::Unit(ambient, c);
            e -= ri * ri.dot(e);
            if (e.norm() < 1e-9) continue;
            e.normalize();
            for (double s : {1.0, -1.0})
              if (classify(s * e, 1e-9) == Region::RelativeBoundary)
                out.push_back(s * e);
          }
        }
        return out;
      }
      case Kind::Sector: {
        out.push_back(ray1);
        out.push_back(ray2);
        return out;
      }
    }
    return out;
  }

  Covec sample_ri(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> un(0.0, 1.0);
    switch (kind) {
      case Kind::LorentzQuadratic: {
        Covec p = Covec::Zero(ambient);
        int r = static_cast<int>(indices.size()) - 1;
        double mag = 0.2 + un(rng);
        p[indices[0]] = -mag * std::sqrt(1.0 / weights[0]);
        if (r >= 1) {
          Vec d(r);
          std::normal_distribution<double> nd;
          for (int m = 0; m < r; ++m) d[m] = nd(rng);
          if (d.norm() > 0) d.normalize();
          double rho = 0.9 * un(rng);
          for (int m = 1; m <= r; ++m)
            p[indices[m]] = rho * mag * d[m - 1] * std::sqrt(1.0 / weights[m]);
        }
        return p;
      }
      case Kind::HalfspaceIntersection: {
        Covec p = Covec::Zero(ambient);
        for (const auto& r : rows) p -= (0.1 + un(rng)) * r.normalized();
        return p;
      }
      case Kind::Sector:
        return (0.1 + un(rng)) * ray1 + (0.1 + un(rng)) * ray2;
    }
    return Covec::Zero(ambient);
  }

  Covec sample_rb(std::mt19937_64& rng) const {
    auto grid = boundary_grid(64);
    require(!grid.empty(), "dual cone has no boundary sample");
    std::uniform_real_distribution<double> un(0.0, 1.0);
    Covec p = grid[rng() % grid.size()];
    return (0.2 + un(rng)) * p;
  }
};

inline DualCone Cone::dual() const {
  DualCone d;
  d.ambient = ambient;
  switch (kind) {
    case Kind::LorentzQuadratic: {
      d.kind = DualCone::Kind::LorentzQuadratic;
      d.indices = indices;
      d.weights = weights.cwiseInverse();
      return d;
    }
    case Kind::PolyhedralGenerators: {
      d.kind = DualCone::Kind::HalfspaceIntersection;
      for (const auto& g : generators)
        if (g.norm() > 1e-14) d.rows.push_back(g);
      return d;
    }
    case Kind::HalfplaneSector: {
      if (ambient == 2 && !parallel_rays()) {
        d.kind = DualCone::Kind::Sector;
        auto perp = [](const Vec& v) {
          Vec w(2);
          w << -v[1], v[0];
          return w;
        };
        Vec r1 = perp(ray2);
        if (r1.dot(ray1) > 0) r1 = -r1;
        Vec r2 = perp(ray1);
        if (r2.dot(ray2) > 0) r2 = -r2;
        d.ray1 = r1.normalized();
        d.ray2 = r2.normalized();
        return d;
      }
      d.kind = DualCone::Kind::HalfspaceIntersection;
      d.rows = {ray1, ray2};
      return d;
    }
  }
  return d;
}

}  // namespace sublor
