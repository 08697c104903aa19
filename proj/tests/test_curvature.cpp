#include <gtest/gtest.h>

#include "hermlab/catalog.hpp"
#include "hermlab/curvature.hpp"
#include "support.hpp"

using namespace hermlab;

namespace {

CurvatureBundle at(const MetricSpec& spec, const Point& z) { return compute_curvature(evaluate_jet(spec, z)); }

Point origin(int n) { return Point(n, cplx(0)); }

Point e1(int n, double x = 1.0) {
  Point z(n, cplx(0));
  z[0] = x;
  return z;
}

TEST(Inverse, FubiniStudyInnerProducts) {
  // h at (1,1), n = 2 is [[2,-1],[-1,2]]/9 with inverse [[6,3],[3,6]]
  const MetricSpec fs = make_metric("fubini_study", 2);
  const HermitianMatrixPair g(evaluate_jet(fs, {cplx(1), cplx(1)}).h);
  EXPECT_NEAR(std::abs(inner_product(Form::dz(2, 0), Form::dz(2, 1), g) - 3.0), 0.0, 1e-13);
  EXPECT_NEAR(norm_squared(Form::dz(2, 0), g), 6.0, 1e-13);
  const HermitianMatrixPair g10(evaluate_jet(fs, {cplx(1), cplx(0)}).h);
  EXPECT_NEAR(std::abs(inner_product(Form::dz(2, 0), Form::dz(2, 1), g10)), 0.0, 1e-14);
}

TEST(Inverse, NeumannSeries) {
  const double eps = 1e-3;
  const Eigen::MatrixXcd A = hermlab::testing::random_metric(3, 5) - 1.5 * Eigen::MatrixXcd::Identity(3, 3);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(3, 3);
  const HermitianMatrixPair g(I + eps * A);
  const Eigen::MatrixXcd series = I - eps * A + eps * eps * A * A;
  EXPECT_LT((g.h_inv().transpose() - series).cwiseAbs().maxCoeff(), 10 * eps * eps * eps);
}

TEST(Christoffel, Example31) {
  // Gamma_{ij}^k = c zbar_i delta_j^k
  const double c = 0.8;
  const MetricSpec ex = make_metric("example31", 3, {{"c", c}});
  const Point z{cplx(0.3, -0.2), cplx(0.1, 0.4), cplx(-0.5, 0.1)};
  const CurvatureBundle b = at(ex, z);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        EXPECT_NEAR(std::abs(b.Gamma(i, j, k) - (j == k ? c * std::conj(z[i]) : cplx(0))), 0.0, 1e-14);
}

TEST(Christoffel, FubiniStudyOrigin) { EXPECT_EQ(at(make_metric("fubini_study", 3), origin(3)).Gamma.max_abs(), 0.0); }

TEST(Torsion, KahlerMetricsAreTorsionFree) {
  for (const char* id : {"flat", "fubini_study", "bergman"})
    for (const auto& z : sample_points(make_metric(id, 3), 5, 8)) {
      const CurvatureBundle b = at(make_metric(id, 3), z);
      EXPECT_LT(b.T_low.max_abs(), 1e-14) << id;
      for (const auto& t : b.tau) EXPECT_LT(std::abs(t), 1e-14) << id;
    }
}

TEST(Torsion, Example31TauIsMultipleOfDf) {
  // tau = (n-1) del f, f = c|z|^2
  for (int n : {2, 3, 4}) {
    const CurvatureBundle b = at(make_metric("example31", n, {{"c", 1.0}}), e1(n));
    EXPECT_NEAR(std::abs(b.tau[0] - cplx(n - 1.0)), 0.0, 1e-13);
    for (int i = 1; i < n; ++i) EXPECT_LT(std::abs(b.tau[i]), 1e-14);
  }
}

TEST(Torsion, LckRelationOnExamples) {
  for (const char* id : {"example31", "example32", "example33"})
    for (int n : {2, 3}) {
      const MetricSpec spec = make_metric(id, n);
      for (const auto& z : sample_points(spec, 6, 4)) {
        const MetricJet jet = evaluate_jet(spec, z);
        const CurvatureBundle b = compute_curvature(jet);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              const cplx lhs = (n - 1.0) * b.T_low(i, j, k);
              const cplx rhs = jet.h(j, k) * b.tau[i] - jet.h(i, k) * b.tau[j];
              EXPECT_LT(std::abs(lhs - rhs), 1e-12) << id;
            }
      }
    }
}

TEST(Curvature, Example31ClosedForm) {
  // R = -c e^{c|z|^2} delta_ij delta_kl
  const double c = -0.6;
  const MetricSpec ex = make_metric("example31", 3, {{"c", c}});
  for (const auto& z : sample_points(ex, 5, 2)) {
    const CurvatureBundle b = at(ex, z);
    const double v = -c * std::exp(c * norm2(z));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            EXPECT_NEAR(std::abs(b.R(i, j, k, l) - ((i == j && k == l) ? v : 0.0)), 0.0, 1e-13);
  }
}

TEST(Curvature, Example32ClosedForm) {
  // R~ = e^f (h_{i lbar} h_{k jbar} - h_{i jbar} h_{k lbar}) with h Fubini-Study, f = 2 log(1+|z|^2)
  const MetricSpec ex = make_metric("example32", 3), fs = make_metric("fubini_study", 3);
  for (const auto& z : sample_points(ex, 5, 12)) {
    const CurvatureBundle b = at(ex, z);
    const Eigen::MatrixXcd h = evaluate_jet(fs, z).h;
    const double ef = std::pow(1.0 + norm2(z), 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            EXPECT_NEAR(std::abs(b.R(i, j, k, l) - ef * (h(i, l) * h(k, j) - h(i, j) * h(k, l))), 0.0, 1e-12);
  }
}

TEST(Curvature, FlatIsZero) {
  const CurvatureBundle b = at(make_metric("flat", 3), {cplx(1), cplx(0), cplx(0)});
  EXPECT_EQ(b.R.max_abs(), 0.0);
  EXPECT_EQ(b.s, 0.0);
  EXPECT_EQ(b.s_hat, 0.0);
  for (const auto& r : b.rho) EXPECT_EQ(r.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Ricci, FubiniStudyOrigin) {
  const CurvatureBundle b = at(make_metric("fubini_study", 2), origin(2));
  for (const auto& r : b.rho) EXPECT_LT((r - 3.0 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Ricci, Example31Origin) {
  // rho1 = rho2 = -c n I, rho3 = rho4 = -c I; s = -c n^2, s_hat = -c n
  const double c = 1.3;
  for (int n : {2, 3}) {
    const CurvatureBundle b = at(make_metric("example31", n, {{"c", c}}), origin(n));
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    EXPECT_LT((b.rho[0] + c * n * I).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((b.rho[1] + c * n * I).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((b.rho[2] + c * I).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((b.rho[3] + c * I).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(b.s, -c * n * n, 1e-13);
    EXPECT_NEAR(b.s_hat, -c * n, 1e-13);
  }
}

TEST(Scalar, SpaceForms) {
  for (int n : {2, 3, 4}) {
    for (const auto& z : sample_points(make_metric("fubini_study", n), 5, 30 + n)) {
      const CurvatureBundle b = at(make_metric("fubini_study", n), z);
      EXPECT_NEAR(b.s, n * (n + 1.0), 1e-11);
      EXPECT_NEAR(b.s_hat, n * (n + 1.0), 1e-11);
      EXPECT_LT(std::abs(b.s_imag), 1e-12);
    }
    for (const auto& z : sample_points(make_metric("bergman", n), 5, 40 + n)) {
      const CurvatureBundle b = at(make_metric("bergman", n), z);
      EXPECT_NEAR(b.s, -n * (n + 1.0), 1e-9);
      EXPECT_NEAR(b.s_hat, -n * (n + 1.0), 1e-9);
    }
  }
}

TEST(Holomorphic, SectionalCurvatureOnCatalog) {
  const auto dirs = sample_directions(3, 30, 77);
  for (const auto& [id, expect] : std::vector<std::pair<std::string, double>>{{"fubini_study", 2.0}, {"bergman", -2.0}}) {
    const MetricSpec spec = make_metric(id, 3);
    const auto pts = sample_points(spec, 30, 78);
    for (std::size_t m = 0; m < pts.size(); ++m) {
      const MetricJet jet = evaluate_jet(spec, pts[m]);
      EXPECT_NEAR(holomorphic_sectional_curvature(compute_curvature(jet).R, jet.h, dirs[m]), expect, 1e-10);
    }
  }
  const MetricSpec ex = make_metric("example31", 2, {{"c", 1.0}});
  for (const auto& z : sample_points(ex, 10, 5)) {
    const MetricJet jet = evaluate_jet(ex, z);
    const double H = holomorphic_sectional_curvature(compute_curvature(jet).R, jet.h, std::vector<cplx>{cplx(0.3, 1), cplx(-2, 0.5)});
    EXPECT_NEAR(H, -std::exp(-norm2(z)), 1e-13);
  }
}

TEST(Holomorphic, HomogeneousAndRejectsZero) {
  const MetricSpec ex = make_metric("example32", 2);
  const MetricJet jet = evaluate_jet(ex, {cplx(0.4, 0.1), cplx(0.2, 0)});
  const CurvatureBundle b = compute_curvature(jet);
  const double a = holomorphic_sectional_curvature(b.R, jet.h, std::vector<cplx>{cplx(1, 2), cplx(3, -1)});
  const double s = holomorphic_sectional_curvature(b.R, jet.h, std::vector<cplx>{cplx(1, 2) * cplx(0, 5), cplx(3, -1) * cplx(0, 5)});
  EXPECT_NEAR(a, s, 1e-13);
  EXPECT_THROW(holomorphic_sectional_curvature(b.R, jet.h, std::vector<cplx>{cplx(0), cplx(0)}), ConfigError);
}

TEST(Symmetrized, VanishesWithNonzeroCurvature) {
  for (const char* id : {"example32", "example33"})
    for (int n : {2, 3}) {
      const MetricSpec spec = make_metric(id, n);
      for (const auto& z : sample_points(spec, 30, 9)) {
        const CurvatureBundle b = at(spec, z);
        EXPECT_LT(b.K.max_abs(), 1e-12) << id;
        EXPECT_GT(b.R.max_abs(), 0.5) << id;
      }
    }
}

TEST(Symmetrized, KahlerReducesToHalfSum) {
  const MetricSpec fs = make_metric("fubini_study", 3);
  const CurvatureBundle b = at(fs, {cplx(0.2, 0.3), cplx(-0.4, 0), cplx(0.1, 0.1)});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          EXPECT_NEAR(std::abs(b.K(i, j, k, l) - 0.5 * (b.R(i, j, k, l) + b.R(k, j, i, l))), 0.0, 1e-13);
}

TEST(ConstantH, Verdicts) {
  const ConstantHTest t31 =
      pointwise_constant_H_test(at(make_metric("example31", 2, {{"c", 1.5}}), e1(2)),
                                evaluate_jet(make_metric("example31", 2, {{"c", 1.5}}), e1(2)).h, 1e-10);
  EXPECT_TRUE(t31.is_constant);
  EXPECT_NEAR(t31.c, -1.5 * std::exp(-1.5), 1e-13);
  EXPECT_LT(t31.spread(), 1e-12);

  const MetricSpec ex32 = make_metric("example32", 3);
  const Point z{cplx(0.5, 0.1), cplx(0.3, 0), cplx(0, -0.2)};
  const ConstantHTest t32 = pointwise_constant_H_test(at(ex32, z), evaluate_jet(ex32, z).h, 1e-10);
  EXPECT_TRUE(t32.is_constant);
  EXPECT_NEAR(t32.c, 0.0, 1e-12);

  const MetricSpec rp = make_metric("random_poly", 3, {{"seed", 2}});
  const Point w{cplx(0.3, 0.2), cplx(-0.2, 0.3), cplx(0.1, -0.4)};
  const double tol = 1e-6;
  const ConstantHTest tr = pointwise_constant_H_test(at(rp, w), evaluate_jet(rp, w).h, tol);
  EXPECT_FALSE(tr.is_constant);
  EXPECT_GT(tr.spread(), 10 * tol);

  // a product of space forms is Kahler but not a space form
  const MetricSpec pr = make_metric("product(fubini_study,flat)", 3);
  const ConstantHTest tp = pointwise_constant_H_test(at(pr, origin(3)), evaluate_jet(pr, origin(3)).h, 1e-8);
  EXPECT_FALSE(tp.is_constant);
  EXPECT_GT(tp.spread(), 0.1);
}

TEST(Commutation, TorsionDerivativeRelations) {
  for (const char* id : {"example31", "example32", "example33", "random_poly"})
    for (int n : {2, 3}) {
      const MetricSpec spec = make_metric(id, n);
      const double tol = spec.has_analytic_jet() ? 1e-11 : 1e-7;
      for (const auto& z : sample_points(spec, 5, 6)) {
        const CurvatureBundle b = at(spec, z);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) {
                const cplx R = b.R(i, j, k, l);
                EXPECT_LT(std::abs(R - b.R(k, j, i, l) + b.nablaT_bar(i, j, k, l)), tol) << id;
                EXPECT_LT(std::abs(R - b.R(i, l, k, j) + b.nablaT_hol(i, j, l, k)), tol) << id;
                EXPECT_LT(std::abs(R - b.R(k, l, i, j) + b.nablaT_bar(i, j, k, l) + b.nablaT_hol(k, j, l, i)), tol)
                    << id;
              }
      }
    }
}

TEST(TorsionSquare, LambdaContractionTwoPaths) {
  for (const char* id : {"example31", "random_poly"}) {
    const MetricSpec spec = make_metric(id, 3);
    for (const auto& z : sample_points(spec, 4, 3)) {
      const MetricJet jet = evaluate_jet(spec, z);
      const HermitianMatrixPair g(jet.h);
      const CurvatureBundle b = compute_curvature(jet);
      const Form lam = lambda_contract(b.xi_sq, g);
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          EXPECT_LT(std::abs(lam.at(1u << k, 1u << l) - kI * b.xi_lambda(k, l)), 1e-10);
      if (std::string(id) == "example31") EXPECT_GT(b.xi_lambda.cwiseAbs().maxCoeff(), 0.0);
    }
  }
  EXPECT_EQ(at(make_metric("fubini_study", 3), e1(3, 0.4)).xi_sq.max_abs(), 0.0);
}

TEST(Conformal, LawsMatchDirectPipeline) {
  auto check = [](const MetricSpec& base, const std::function<ScalarJet(const Point&)>& f, const MetricSpec* direct) {
    for (const auto& z : sample_points(base, 6, 14)) {
      const MetricJet bj = evaluate_jet(base, z);
      const ScalarJet fj = f(z);
      const ConformalCurvature law = conformal_transform(bj, compute_curvature(bj), fj);
      const CurvatureBundle d = compute_curvature(direct ? evaluate_jet(*direct, z) : conformal_jet(bj, fj));
      const double scale = 1.0 + d.R.max_abs();
      EXPECT_LT(max_abs_diff(law.R, d.R) / scale, 1e-12);
      EXPECT_LT((law.rho1 - d.rho[0]).cwiseAbs().maxCoeff() / scale, 1e-12);
      EXPECT_LT((law.rho2 - d.rho[1]).cwiseAbs().maxCoeff() / scale, 1e-12);
      EXPECT_LT((law.rho3 - d.rho[2]).cwiseAbs().maxCoeff() / scale, 1e-12);
      EXPECT_NEAR(law.scalar_gap, d.s - d.s_hat, 1e-11 * scale);
    }
  };
  for (const char* id : {"example31", "example32", "example33"}) {
    const MetricSpec ex = make_metric(id, 3);
    const auto dec = conformal_decomposition(ex);
    ASSERT_TRUE(dec);
    check(dec->base, dec->factor, &ex);
  }
  check(make_metric("random_poly", 3), generic_conformal_factor, nullptr);
  check(make_metric("bergman", 2), generic_conformal_factor, nullptr);
}

TEST(Conformal, ConstantFactorScales) {
  const MetricSpec ex = make_metric("example32", 2);
  const Point z{cplx(0.2, 0.1), cplx(-0.3, 0.2)};
  const MetricJet j = evaluate_jet(ex, z);
  const CurvatureBundle b = compute_curvature(j);
  ScalarJet f = ScalarJet::zero(2);
  f.value = 0.7;
  const ConformalCurvature c = conformal_transform(j, b, f);
  EXPECT_LT(max_abs_diff(c.R, [&] {
              Tensor4 t = b.R;
              for (auto& v : t.data()) v *= std::exp(0.7);
              return t;
            }()),
            1e-13);
  EXPECT_NEAR(c.scalar_gap, std::exp(-0.7) * (b.s - b.s_hat), 1e-13);
}

TEST(Lee, GatingResiduals) {
  for (int n : {2, 3, 4}) {
    for (const char* id : {"flat", "fubini_study", "example31", "example32", "example33"}) {
      const MetricSpec spec = make_metric(id, n);
      for (const auto& z : sample_points(spec, 4, 2)) {
        const MetricJet j = evaluate_jet(spec, z);
        EXPECT_LT(lee_form(j, compute_curvature(j)).residual, 1e-13) << id;
      }
    }
  }
  for (int n : {3, 4}) {
    const MetricSpec rp = make_metric("random_poly", n);
    for (const auto& z : sample_points(rp, 10, 2)) {
      const MetricJet j = evaluate_jet(rp, z);
      EXPECT_GT(lee_form(j, compute_curvature(j)).residual, 1e-2);
    }
  }
}

}  // namespace
