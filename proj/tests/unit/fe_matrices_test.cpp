#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thermoflow/fe_matrices.hpp"

using namespace thermoflow;

TEST(FeMatrices, MassMatrixIntegratesConstants) {
  const auto d = tf_test::unit_disc(2);
  const SparseMatrix mp = mass_matrix(*d.pressure);
  const Vector one = Vector::Ones(mp.rows());
  EXPECT_NEAR(one.dot(mp * one), 1.0, 1e-14);
  EXPECT_NEAR(lumped_mass(*d.pressure).sum(), 1.0, 1e-14);
  EXPECT_NEAR((mp * one - lumped_mass(*d.pressure)).norm(), 0.0, 1e-14);
  const SparseMatrix mu = mass_matrix(*d.velocity);
  const Vector ones = Vector::Ones(mu.rows());
  EXPECT_NEAR(ones.dot(mu * ones), 2.0, 1e-13);  // |(1,1)|^2 over the unit square
}

TEST(FeMatrices, LaplacianAnnihilatesConstantsAndIsSymmetric) {
  const auto d = tf_test::unit_disc(2);
  for (const auto& s : {d.pressure, d.velocity}) {
    const SparseMatrix k = laplace_matrix(*s);
    EXPECT_NEAR((k * Vector::Ones(k.rows())).norm(), 0.0, 1e-12);
    EXPECT_NEAR((SparseMatrix(k.transpose()) - k).norm(), 0.0, 1e-12);
  }
  // u = x: int |grad u|^2 = 1
  const DiscreteField x = interpolate(d.pressure, ScalarFunction([](const Vec2& p) { return p.x(); }));
  EXPECT_NEAR(x.coeffs().dot(laplace_matrix(*d.pressure) * x.coeffs()), 1.0, 1e-13);
}

TEST(FeMatrices, DivergenceMatrixOfLinearField) {
  const auto d = tf_test::unit_disc(2);
  // u = (x, 0): div u = 1, so row i equals int q_i = lumped mass
  const DiscreteField u = interpolate(d.velocity, VectorFunction([](const Vec2& p) { return Vec2(p.x(), 0.0); }));
  const Vector r = divergence_matrix(*d.velocity, *d.pressure) * u.coeffs();
  EXPECT_NEAR((r - lumped_mass(*d.pressure)).norm(), 0.0, 1e-13);
}

TEST(FeMatrices, ConstrainTripletsGivesIdentityRowsAndColumns) {
  std::vector<Triplet> t = {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}, {1, 2, -1.0}, {2, 1, -1.0}, {2, 2, 2.0}};
  constrain_triplets(t, {0, 1, 0});
  SparseMatrix m(3, 3);
  m.setFromTriplets(t.begin(), t.end());
  Eigen::MatrixXd dense(m);
  Eigen::MatrixXd expected(3, 3);
  expected << 2, 0, 0, 0, 1, 0, 0, 0, 2;
  EXPECT_NEAR((dense - expected).norm(), 0.0, 0.0);
}
