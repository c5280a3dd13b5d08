#include "sublor/lie_algebra.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sublor;

namespace {

Vec unit(int n, int i) { return Vec::Unit(n, i); }

Vec random_vec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = nd(rng);
  return v;
}

}  // namespace

TEST(LieAlgebra, HeisenbergBracket) {
  auto a = LieAlgebra::heisenberg();
  Vec e3 = a.bracket(unit(3, 0), unit(3, 1));
  EXPECT_NEAR((e3 - unit(3, 2)).norm(), 0.0, 0.0);
}

TEST(LieAlgebra, BracketOfVectorWithItselfVanishes) {
  auto a = LieAlgebra::carnot_r2s4();
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    Vec u = random_vec(8, rng);
    EXPECT_LT(a.bracket(u, u).norm(), 1e-14);
  }
}

TEST(LieAlgebra, CarnotDefiningRelations) {
  auto a = LieAlgebra::carnot_r2s4();
  EXPECT_NEAR((a.bracket(unit(8, 0), unit(8, 2)) - unit(8, 3)).norm(), 0.0, 0.0);  // X4=[X1,X3]
  EXPECT_NEAR((a.bracket(unit(8, 1), unit(8, 2)) - unit(8, 4)).norm(), 0.0, 0.0);  // X5=[X2,X3]
  EXPECT_NEAR((a.bracket(unit(8, 0), unit(8, 4)) - unit(8, 6)).norm(), 0.0, 0.0);  // X7=[X1,X5]
  EXPECT_NEAR((a.bracket(unit(8, 1), unit(8, 3)) - unit(8, 6)).norm(), 0.0, 0.0);  // X7=[X2,X4]
}

TEST(LieAlgebra, PoissonRhsHeisenberg) {
  // conjugate subsystem: dh1 = -h3 u2, dh2 = h3 u1, dh3 = 0
  auto a = LieAlgebra::heisenberg();
  Covec h(3);
  h << 0.3, -1.2, 2.5;
  Vec u(3);
  u << 0.7, -0.4, 0.0;
  Covec hdot = a.poisson_rhs(h, u);
  EXPECT_NEAR(hdot[0], -h[2] * u[1], 1e-15);
  EXPECT_NEAR(hdot[1], h[2] * u[0], 1e-15);
  EXPECT_NEAR(hdot[2], 0.0, 0.0);
}

TEST(LieAlgebra, PoissonRhsCarnotPrintedSystem) {
  auto a = LieAlgebra::carnot_r2s4();
  std::mt19937_64 rng(11);
  Covec h = random_vec(8, rng);
  for (int basis = 0; basis < 2; ++basis) {
    Vec u = Vec::Zero(8);
    u[basis] = 1.0;
    Covec d = a.poisson_rhs(h, u);
    if (basis == 0) {  // u = X1
      EXPECT_NEAR(d[0], 0.0, 1e-15);
      EXPECT_NEAR(d[1], h[2], 1e-15);
      EXPECT_NEAR(d[2], h[3], 1e-15);
      EXPECT_NEAR(d[3], h[5], 1e-15);
      EXPECT_NEAR(d[4], h[6], 1e-15);
    } else {  // u = X2
      EXPECT_NEAR(d[0], -h[2], 1e-15);
      EXPECT_NEAR(d[1], 0.0, 1e-15);
      EXPECT_NEAR(d[2], h[4], 1e-15);
      EXPECT_NEAR(d[3], h[6], 1e-15);
      EXPECT_NEAR(d[4], h[7], 1e-15);
    }
    EXPECT_NEAR(d[5], 0.0, 0.0);
    EXPECT_NEAR(d[6], 0.0, 0.0);
    EXPECT_NEAR(d[7], 0.0, 0.0);
  }
}

TEST(LieAlgebra, PoissonRhsAbelianIsZero) {
  auto a = LieAlgebra::abelian(5);
  std::mt19937_64 rng(3);
  EXPECT_LT(a.poisson_rhs(random_vec(5, rng), random_vec(5, rng)).norm(), 1e-15);
}

TEST(LieAlgebra, PoissonRhsBilinearInControl) {
  auto a = LieAlgebra::carnot_r2s4();
  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    Covec h = random_vec(8, rng);
    Vec u = random_vec(8, rng), v = random_vec(8, rng);
    double al = 0.37, be = -1.9;
    Covec lhs = a.poisson_rhs(h, al * u + be * v);
    Covec rhs = al * a.poisson_rhs(h, u) + be * a.poisson_rhs(h, v);
    EXPECT_LT((lhs - rhs).norm(), 1e-12 * (1 + rhs.norm()));
  }
}

TEST(LieAlgebra, HamiltonianConservedDirection) {
  // <poisson_rhs(h,u), u> = <h,[u,u]> = 0
  auto a = LieAlgebra::carnot_r2s4();
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    Covec h = random_vec(8, rng);
    Vec u = random_vec(8, rng);
    EXPECT_LT(std::abs(a.poisson_rhs(h, u).dot(u)), 1e-12 * h.norm() * u.squaredNorm());
  }
}

TEST(LieAlgebra, JacobiPropertyRandomTriples) {
  for (auto alg : {LieAlgebra::heisenberg(), LieAlgebra::carnot_r2s4()}) {
    std::mt19937_64 rng(29);
    int n = alg.dim();
    for (int t = 0; t < 40; ++t) {
      Vec u = random_vec(n, rng), v = random_vec(n, rng), w = random_vec(n, rng);
      Vec s = alg.bracket(u, alg.bracket(v, w)) + alg.bracket(v, alg.bracket(w, u)) +
              alg.bracket(w, alg.bracket(u, v));
      EXPECT_LT(s.norm(), 1e-10);
    }
  }
}

TEST(LieAlgebra, ValidateBuiltins) {
  EXPECT_TRUE(LieAlgebra::heisenberg().validate().empty());
  EXPECT_TRUE(LieAlgebra::carnot_r2s4().validate().empty());
  EXPECT_TRUE(LieAlgebra::abelian(4).validate().empty());
}

TEST(LieAlgebra, ValidateDetectsAntisymmetryBreak) {
  std::vector<Eigen::MatrixXd> c(3, Eigen::MatrixXd::Zero(3, 3));
  c[2](0, 1) = 1.0;  // c[3][1][2] = 1 but c[3][2][1] left at 0
  auto a = LieAlgebra::from_raw(3, c);
  auto v = a.validate();
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, AlgebraViolation::Kind::Antisymmetry);
  EXPECT_EQ(v[0].i, 0);
  EXPECT_EQ(v[0].j, 1);
  EXPECT_EQ(v[0].k, 2);
}

TEST(LieAlgebra, ValidateDetectsJacobiBreak) {
  // [e1,e2]=e3, [e1,e3]=e2 with [e2,e3]=0 violates Jacobi
  auto a = LieAlgebra(3, {{0, 1, 2, 1.0}, {0, 2, 1, 1.0}});
  auto v = a.validate();
  bool jacobi = false;
  for (auto& x : v) jacobi |= x.kind == AlgebraViolation::Kind::Jacobi;
  EXPECT_TRUE(jacobi);
}

TEST(LieAlgebra, DimensionMismatchThrows) {
  auto a = LieAlgebra::heisenberg();
  EXPECT_THROW(a.bracket(Vec::Zero(2), Vec::Zero(3)), InputError);
  EXPECT_THROW(a.poisson_rhs(Vec::Zero(3), Vec::Zero(4)), InputError);
}

TEST(LieAlgebra, NilpotencySteps) {
  EXPECT_EQ(LieAlgebra::abelian(3).nilpotency_step(), 1);
  EXPECT_EQ(LieAlgebra::heisenberg().nilpotency_step(), 2);
  EXPECT_EQ(LieAlgebra::carnot_r2s4().nilpotency_step(), 4);
  auto sl2ish = LieAlgebra(2, {{0, 1, 0, 1.0}});  // [e1,e2]=e1, not nilpotent
  EXPECT_THROW(sl2ish.nilpotency_step(), InputError);
}
