#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "treespan/errors.hpp"
#include "treespan/instance_lab.hpp"
#include "treespan/walk_simulator.hpp"

using namespace treespan;

namespace {

std::vector<double> sorted_abs_phases(const Eigen::MatrixXd& u) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(u, false);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < u.rows(); ++k) out.push_back(std::abs(std::arg(es.eigenvalues()[k])));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Walk, VectorsAreUnitAndOutOfRangeThrows) {
  NormalizedProgram np = normalized_skeleton(RootedTree::star(3), 2);
  for (int i = 0; i < static_cast<int>(np.I().size()); ++i) EXPECT_NEAR(build_a_vector(np, i).norm(), 1.0, 1e-14);
  for (int j = 0; j < static_cast<int>(np.J().size()); ++j) EXPECT_NEAR(build_b_vector(np, j).norm(), 1.0, 1e-14);
  EXPECT_THROW(build_a_vector(np, static_cast<int>(np.I().size())), std::out_of_range);
  EXPECT_THROW(build_b_vector(np, -1), std::out_of_range);
}

TEST(Walk, SkeletonHasNoRealVertices) {
  NormalizedProgram np = normalized_skeleton(RootedTree::path(3), 3);
  for (int j = 0; j < static_cast<int>(np.J().size()); ++j) {
    ColumnKind k = np.kind(j);
    EXPECT_TRUE(k == ColumnKind::Dummy || k == ColumnKind::Target || k == ColumnKind::Gamma ||
                (k == ColumnKind::Free && np.J()[j].k1 == 0 && np.J()[j].k2 == 0))
        << j;
  }
}

TEST(Walk, FactorizationIdentity) {
  for (RootedTree t : {RootedTree::path(2), RootedTree::path(3), RootedTree::star(3), binary7()}) {
    for (int n : {2, 3}) {
      NormalizedProgram np = normalized_skeleton(t, n);
      WalkFactorization wf = assemble(np);
      EXPECT_LT(wf.orthonormal_A_dev, 1e-12);
      EXPECT_LT(wf.orthonormal_B_dev, 1e-12);
      EXPECT_LT(wf.identity_dev, 1e-12);
      // independent dense recomputation of A^T B
      Eigen::MatrixXd a(wf.A), b(wf.B);
      Eigen::MatrixXd diff = a.transpose() * b - np.dense_V() / std::sqrt(4.0 * n);
      EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Walk, ReducedSpectrumMatchesDenseEigenvalues) {
  for (RootedTree t : {RootedTree::path(2), RootedTree::path(3), RootedTree::star(2)}) {
    for (int n : {1, 2}) {
      WalkFactorization wf = assemble(normalized_skeleton(t, n));
      if (wf.dim > 1200) continue;
      WalkSpectrum ws = walk_spectrum(wf);
      EXPECT_TRUE(ws.counts_match()) << "n " << n;
      EXPECT_LT(ws.max_phase_error, 1e-8);
      Eigen::MatrixXd u = walk_operator(wf);
      EXPECT_LT((u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-12);
      std::vector<double> dense = sorted_abs_phases(u);
      std::vector<double> reduced;
      for (double p : ws.phases) reduced.push_back(std::abs(p));
      reduced.resize(static_cast<std::size_t>(ws.dim), 0.0);  // identity off S
      std::sort(reduced.begin(), reduced.end());
      ASSERT_EQ(dense.size(), reduced.size());
      for (std::size_t k = 0; k < dense.size(); ++k) EXPECT_NEAR(dense[k], reduced[k], 1e-7) << k;
      DenseSpectrumCheck dc = dense_spectrum_check(wf, ws);
      EXPECT_EQ(dc.mult_plus, ws.mult_plus);
      EXPECT_EQ(dc.mult_minus, ws.mult_minus);
    }
  }
}

TEST(Walk, PhasesFollowSingularValues) {
  WalkFactorization wf = assemble(normalized_skeleton(RootedTree::star(3), 3));
  WalkSpectrum ws = walk_spectrum(wf);
  // each sigma in (0,1) contributes the pair +-2 arccos(sigma)
  for (double s : ws.singular_values) {
    if (s < 1e-9 || s > 1 - 1e-9) continue;
    double want = 2 * std::acos(s);
    bool found = std::any_of(ws.phases.begin(), ws.phases.end(), [&](double p) { return std::abs(std::abs(p) - want) < 1e-8; });
    EXPECT_TRUE(found) << s;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(wf.D)};
  for (int k = 0; k < static_cast<int>(ws.singular_values.size()); ++k)
    EXPECT_NEAR(ws.singular_values[k], svd.singularValues()[k], 1e-12);
}

TEST(Walk, DenseOperatorGuard) {
  WalkFactorization wf = assemble(normalized_skeleton(binary7(), 3));
  ASSERT_GT(wf.dim, kMaxDenseWalk);
  EXPECT_THROW(walk_operator(wf), InstanceTooLarge);
}

TEST(Walk, GapDoesNotShrinkWithN) {
  for (RootedTree t : {RootedTree::path(2), RootedTree::path(3), RootedTree::star(3)}) {
    double g2 = walk_spectrum(assemble(normalized_skeleton(t, 2))).gap;
    for (int n : {3, 4}) EXPECT_NEAR(walk_spectrum(assemble(normalized_skeleton(t, n))).gap, g2, 1e-8);
    EXPECT_GT(g2, 0.5);
  }
  EXPECT_NEAR(walk_spectrum(assemble(normalized_skeleton(RootedTree::path(2), 2))).gap, M_PI / 2, 1e-8);
}

TEST(Walk, DeltaBlockStructure) {
  NormalizedProgram np = normalized_skeleton(RootedTree::star(2), 3);
  DeltaSpectrum d = delta_spectrum(np);
  EXPECT_LT(d.form_residual, 1e-12);
  Eigen::MatrixXd v = np.dense_V();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v * v.transpose() / 12.0);
  // every eigenvalue of V V^T / 4n is one of the reported distinct values
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double e = es.eigenvalues()[k];
    bool hit = std::any_of(d.distinct.begin(), d.distinct.end(), [&](double x) { return std::abs(x - e) < 1e-9; });
    EXPECT_TRUE(hit) << e;
  }
  EXPECT_GT(d.smallest_nonzero, 0.0);
}

TEST(Walk, SpectralReportIsIndependentOfN) {
  SpectralReport rep = spectral_report(RootedTree::path(3), {2, 3, 4});
  EXPECT_LT(rep.fit_residual, 1e-10);
  EXPECT_TRUE(rep.distinct_sizes_match);
  EXPECT_LT(rep.distinct_deviation, 1e-8);
  EXPECT_LT(rep.theory_deviation, 1e-8);
  EXPECT_LT(rep.max_identity_dev, 1e-12);
  for (const auto& w : rep.walk) EXPECT_TRUE(w.counts_match());
  EXPECT_THROW(spectral_report(RootedTree::path(3), {2}), std::invalid_argument);
}

TEST(PhaseEstimation, DecisionsAndIndependentWeights) {
  PhaseEstimator pe;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    RootedTree t = seed % 2 ? RootedTree::path(2) : RootedTree::path(3);
    int n = t.size() + 1;
    PromiseInstance inst = seed % 3 == 0 ? gen_negative(t, n, seed) : gen_positive(t, n, seed);
    TreeProgram tp = build_tree_program(t, inst.colored());
    NormalizedProgram np = build_normalized_program(tp, default_w1(t), 11.0, n);
    SpanProgram sp = np.as_span_program();
    EvalResult direct = evaluate(sp, np.lift(tp.availability()));
    double wb = std::sqrt(std::max(direct.wsize, 1.0) * default_w1(t));
    PhaseEstimationRun run = pe.run(np, tp.availability(), wb, seed);
    EXPECT_EQ(run.accept, direct.accepted) << "seed " << seed;
    EXPECT_TRUE(run.variants_agree);
    EXPECT_EQ(run.samples.size(), 5u);

    const auto& c = pe.cached(np);
    EXPECT_LT(c.kernel_dev, 1e-8);
    EXPECT_LT((c.lambda - oracle::kernel_projector(np.dense_V())).cwiseAbs().maxCoeff(), 1e-9);
    auto avail = np.available_columns(tp.availability());
    Eigen::VectorXd rx(static_cast<Eigen::Index>(avail.size()));
    for (std::size_t j = 0; j < avail.size(); ++j) rx[j] = avail[j] ? 1.0 : -1.0;
    Eigen::MatrixXd u = (2.0 * c.lambda - Eigen::MatrixXd::Identity(rx.size(), rx.size())) * rx.asDiagonal();
    EXPECT_NEAR(run.acceptance_probability, oracle::phase_weight_near_zero(u, np.tau_index(), run.precision), 1e-8);
  }
}

TEST(PhaseEstimation, CacheIsKeyedBySkeleton) {
  PhaseEstimator pe;
  NormalizedProgram a = normalized_skeleton(RootedTree::path(2), 2);
  NormalizedProgram b = normalized_skeleton(RootedTree::path(2), 2);
  EXPECT_EQ(&pe.cached(a), &pe.cached(b));
  NormalizedProgram c = normalized_skeleton(RootedTree::path(2), 3);
  EXPECT_NE(&pe.cached(a), &pe.cached(c));
  PhaseEstimationRun r1 = pe.run(a, {}, 1.0, 9), r2 = pe.run(a, {}, 1.0, 9);
  EXPECT_EQ(r1.samples, r2.samples);
  EXPECT_THROW(pe.run(a, {}, 0.0, 9), std::invalid_argument);
}
