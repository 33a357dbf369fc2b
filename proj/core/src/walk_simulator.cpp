#include "treespan/walk_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "treespan/errors.hpp"
#include "treespan/random.hpp"

namespace treespan {

using Eigen::MatrixXd;
using Eigen::SparseMatrix;
using Eigen::SparseVector;
using Eigen::VectorXd;
using Trip = Eigen::Triplet<double>;

constexpr double kPi = std::numbers::pi;

NormalizedProgram normalized_skeleton(const RootedTree& tree, int n, double C) {
  ColoredGraph empty(InputGraph(0), Coloring{}, tree);
  TreeProgram tp = build_tree_program(tree, empty);
  return build_normalized_program(tp, default_w1(tree), C, n);
}

SparseVector<double> build_a_vector(const NormalizedProgram& np, int i) {
  if (i < 0 || i >= static_cast<int>(np.I().size())) throw std::out_of_range("index outside I");
  const auto [x, k, f] = np.I()[i];
  const int n = np.n();
  const double c = 1.0 / std::sqrt(4.0 * n);
  SparseVector<double> a(static_cast<Eigen::Index>(np.J().size()));
  bool sentinel_origin = x < 0 && k == 0;
  for (int y : np.tree().flow_neighbors(x, f)) {
    for (int kp = 0; kp < n; ++kp) {
      if (sentinel_origin && y < 0 && kp == 0) {
        // the (s,0,t,0)/(t,0,s,0) pair carries the alpha split
        double alpha = np.alpha();
        double s = 1.0 / std::sqrt(2.0 * n);
        a.coeffRef(np.tau_index()) += s / alpha;
        a.coeffRef(np.gamma_index()) += s * std::sqrt(1.0 - 1.0 / (alpha * alpha));
        continue;
      }
      a.coeffRef(np.j_index(x, k, y, kp)) += c;
      a.coeffRef(np.j_index(y, kp, x, k)) += c;
    }
  }
  return a;
}

SparseVector<double> build_b_vector(const NormalizedProgram& np, int j) {
  if (j < 0 || j >= static_cast<int>(np.J().size())) throw std::out_of_range("index outside J");
  const auto [x1, k1, x2, k2] = np.J()[j];
  auto shared = np.tree().shared_leaves(x1, x2);
  double c = 1.0 / std::sqrt(2.0 * static_cast<double>(shared.size()));
  SparseVector<double> b(static_cast<Eigen::Index>(np.I().size()));
  for (int f : shared) {
    b.coeffRef(np.i_index(x1, k1, f)) += c;
    b.coeffRef(np.i_index(x2, k2, f)) -= c;
  }
  return b;
}

namespace {

struct Worst {
  double value = 0.0;
  long row = -1, col = -1;
  void see(double v, long r, long c) {
    if (std::abs(v) > value) {
      value = std::abs(v);
      row = r;
      col = c;
    }
  }
};

// max |M - s·I| over all entries, scanning stored entries and the diagonal
Worst deviation_from_identity(const SparseMatrix<double>& m, double s = 1.0) {
  Worst w;
  std::vector<char> diag_seen(m.cols(), 0);
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix<double>::InnerIterator it(m, c); it; ++it) {
      double target = it.row() == it.col() ? s : 0.0;
      if (it.row() == it.col()) diag_seen[c] = 1;
      w.see(it.value() - target, it.row(), it.col());
    }
  for (int c = 0; c < std::min(m.rows(), m.cols()); ++c)
    if (!diag_seen[c]) w.see(s, c, c);
  return w;
}

Worst deviation(const SparseMatrix<double>& a, const SparseMatrix<double>& b) {
  SparseMatrix<double> d = a - b;
  Worst w;
  for (int c = 0; c < d.outerSize(); ++c)
    for (SparseMatrix<double>::InnerIterator it(d, c); it; ++it) w.see(it.value(), it.row(), it.col());
  return w;
}

std::string where(const char* what, const Worst& w) {
  std::ostringstream os;
  os << what << ": largest deviation " << w.value << " at (" << w.row << "," << w.col << ")";
  return os.str();
}

}  // namespace

WalkFactorization assemble(const NormalizedProgram& np) {
  WalkFactorization wf;
  wf.n = np.n();
  const long nI = static_cast<long>(np.I().size());
  const long nJ = static_cast<long>(np.J().size());
  wf.dim = nI * nJ;
  if (wf.dim > std::numeric_limits<int>::max()) throw InstanceTooLarge("factorization dimension overflow");

  std::vector<Trip> ta, tb;
  for (long i = 0; i < nI; ++i) {
    SparseVector<double> a = build_a_vector(np, static_cast<int>(i));
    for (SparseVector<double>::InnerIterator it(a); it; ++it)
      ta.emplace_back(static_cast<int>(i * nJ + it.index()), static_cast<int>(i), it.value());
  }
  for (long j = 0; j < nJ; ++j) {
    SparseVector<double> b = build_b_vector(np, static_cast<int>(j));
    for (SparseVector<double>::InnerIterator it(b); it; ++it)
      tb.emplace_back(static_cast<int>(it.index() * nJ + j), static_cast<int>(j), it.value());
  }
  wf.A.resize(wf.dim, nI);
  wf.A.setFromTriplets(ta.begin(), ta.end());
  wf.B.resize(wf.dim, nJ);
  wf.B.setFromTriplets(tb.begin(), tb.end());
  wf.V = np.V();

  SparseMatrix<double> ata = SparseMatrix<double>(wf.A.transpose()) * wf.A;
  SparseMatrix<double> btb = SparseMatrix<double>(wf.B.transpose()) * wf.B;
  wf.D = SparseMatrix<double>(wf.A.transpose()) * wf.B;
  Worst wa = deviation_from_identity(ata);
  Worst wb = deviation_from_identity(btb);
  Worst wd = deviation(wf.D, wf.V * (1.0 / std::sqrt(4.0 * wf.n)));
  wf.orthonormal_A_dev = wa.value;
  wf.orthonormal_B_dev = wb.value;
  wf.identity_dev = wd.value;
  if (wa.value > 1e-12) throw InvariantViolation(where("A^T A = I", wa));
  if (wb.value > 1e-12) throw InvariantViolation(where("B^T B = I", wb));
  if (wd.value > 1e-12) throw InvariantViolation(where("A^T B = V/sqrt(4n)", wd));
  return wf;
}

MatrixXd walk_operator(const WalkFactorization& wf) {
  if (wf.dim > kMaxDenseWalk)
    throw InstanceTooLarge("dense walk operator limited to dimension " + std::to_string(kMaxDenseWalk) +
                           ", got " + std::to_string(wf.dim));
  MatrixXd a(wf.A), b(wf.B);
  const long N = wf.dim;
  MatrixXd ra = 2.0 * a * a.transpose() - MatrixXd::Identity(N, N);
  MatrixXd rb = 2.0 * b * b.transpose() - MatrixXd::Identity(N, N);
  return rb * ra;
}

namespace {

// Real Schur form of an orthogonal matrix, split into its 1x1 and 2x2 blocks.
struct SchurBlocks {
  MatrixXd Z;
  struct Block {
    int start, size;
    double phase;  // >= 0; 2x2 blocks stand for +-phase
  };
  std::vector<Block> blocks;
};

double canonical(double phi) { return phi <= -kPi + 1e-12 ? kPi : phi; }

SchurBlocks schur_blocks(const MatrixXd& u) {
  SchurBlocks out;
  if (u.rows() == 0) return out;
  Eigen::RealSchur<MatrixXd> rs(u);
  const MatrixXd& t = rs.matrixT();
  out.Z = rs.matrixU();
  const int m = static_cast<int>(u.rows());
  for (int p = 0; p < m;) {
    if (p + 1 < m && std::abs(t(p + 1, p)) > 0.0) {
      double a = 0.5 * (t(p, p) + t(p + 1, p + 1));
      double bc = t(p, p + 1) * t(p + 1, p);
      if (bc < 0) {
        out.blocks.push_back({p, 2, std::atan2(std::sqrt(-bc), a)});
      } else {
        // real pair that was not split; treat as two 1x1 blocks
        double h = 0.5 * (t(p, p) - t(p + 1, p + 1));
        double disc = std::sqrt(h * h + bc);
        out.blocks.push_back({p, 1, a + disc >= 0 ? 0.0 : kPi});
        out.blocks.push_back({p + 1, 1, a - disc >= 0 ? 0.0 : kPi});
      }
      p += 2;
    } else {
      out.blocks.push_back({p, 1, t(p, p) >= 0 ? 0.0 : kPi});
      p += 1;
    }
  }
  return out;
}

// Restriction of U(A,B) to S = Col A + Col B in an orthonormal basis
// Y = [A B] P g^{-1/2}. With K = [A B] and D = A^T B, U K = K R_B R_A.
struct ReducedWalk {
  MatrixXd D;      // |I| x |J|
  MatrixXd basis;  // P g^{-1/2}: coefficients of Y in terms of K's columns
  MatrixXd US;     // Y^T U Y
  int nI = 0, nJ = 0;
};

ReducedWalk reduce(const WalkFactorization& wf) {
  ReducedWalk r;
  r.D = MatrixXd(wf.D);
  r.nI = static_cast<int>(r.D.rows());
  r.nJ = static_cast<int>(r.D.cols());
  const int m = r.nI + r.nJ;
  MatrixXd g = MatrixXd::Identity(m, m);
  g.topRightCorner(r.nI, r.nJ) = r.D;
  g.bottomLeftCorner(r.nJ, r.nI) = r.D.transpose();
  MatrixXd ra = MatrixXd::Zero(m, m), rb = MatrixXd::Zero(m, m);
  ra.topLeftCorner(r.nI, r.nI).setIdentity();
  ra.topRightCorner(r.nI, r.nJ) = 2.0 * r.D;
  ra.bottomRightCorner(r.nJ, r.nJ) = -MatrixXd::Identity(r.nJ, r.nJ);
  rb.topLeftCorner(r.nI, r.nI) = -MatrixXd::Identity(r.nI, r.nI);
  rb.bottomLeftCorner(r.nJ, r.nI) = 2.0 * r.D.transpose();
  rb.bottomRightCorner(r.nJ, r.nJ).setIdentity();

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
  std::vector<int> keep;
  for (int k = 0; k < m; ++k)
    if (es.eigenvalues()[k] > 1e-9) keep.push_back(k);
  r.basis.resize(m, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    r.basis.col(c) = es.eigenvectors().col(keep[c]) / std::sqrt(es.eigenvalues()[keep[c]]);
  r.US = r.basis.transpose() * (g * rb * ra) * r.basis;
  return r;
}

std::vector<double> expand_phases(const SchurBlocks& sb) {
  std::vector<double> out;
  for (const auto& b : sb.blocks) {
    if (b.size == 1) {
      out.push_back(b.phase);
    } else {
      out.push_back(b.phase);
      out.push_back(-b.phase);
    }
  }
  for (double& p : out) p = canonical(p);
  std::sort(out.begin(), out.end());
  return out;
}

double gap_of(const std::vector<double>& phases, bool has_complement, double tol) {
  double g = has_complement ? kPi : kPi;
  for (double p : phases)
    if (kPi - std::abs(p) > tol) g = std::min(g, kPi - std::abs(p));
  return g;
}

}  // namespace

WalkSpectrum walk_spectrum(const WalkFactorization& wf, double phase_tol) {
  WalkSpectrum ws;
  ReducedWalk r = reduce(wf);
  ws.dim = wf.dim;
  ws.dim_S = static_cast<int>(r.basis.cols());
  ws.dim_A_cap_B = r.nI + r.nJ - ws.dim_S;

  Eigen::JacobiSVD<MatrixXd> svd(r.D);
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    double s = svd.singularValues()[k];
    ws.singular_values.push_back(s);
    if (s > 1e-9) ++ws.rank_D;
    if (std::abs(1.0 - s) <= 1e-9) ++ws.n_one;
    else if (s > 1e-9) ++ws.n_pairs;
  }

  SchurBlocks sb = schur_blocks(r.US);
  ws.phases = expand_phases(sb);
  const long complement = ws.dim - ws.dim_S;
  ws.mult_plus = complement;
  for (double p : ws.phases) {
    if (std::abs(p) <= phase_tol) ++ws.mult_plus;
    else if (kPi - std::abs(p) <= phase_tol) ++ws.mult_minus;
    else ++ws.mult_pairs;
  }
  ws.pred_plus = 2L * ws.n_one + ws.dim - r.nI - r.nJ;
  ws.pred_minus = static_cast<long>(r.nI) + r.nJ - 2L * ws.rank_D;
  ws.pred_pairs = 2L * ws.n_pairs;

  std::vector<double> predicted;
  for (int k = 0; k < ws.n_one; ++k) predicted.push_back(0.0);
  for (long k = 0; k < ws.pred_minus; ++k) predicted.push_back(kPi);
  for (double s : ws.singular_values)
    if (s > 1e-9 && std::abs(1.0 - s) > 1e-9) {
      double th = std::acos(std::min(1.0, s));
      predicted.push_back(2 * th);
      predicted.push_back(-2 * th);
    }
  std::sort(predicted.begin(), predicted.end());
  if (predicted.size() != ws.phases.size()) {
    ws.max_phase_error = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t k = 0; k < predicted.size(); ++k)
      ws.max_phase_error = std::max(ws.max_phase_error, std::abs(predicted[k] - ws.phases[k]));
  }
  ws.gap = gap_of(ws.phases, complement > 0, phase_tol);
  return ws;
}

DenseSpectrumCheck dense_spectrum_check(const WalkFactorization& wf, const WalkSpectrum& reduced,
                                        double phase_tol) {
  DenseSpectrumCheck out;
  MatrixXd u = walk_operator(wf);
  const long N = wf.dim;
  out.unitarity_dev = (u * u.transpose() - MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff();
  std::vector<double> phases = expand_phases(schur_blocks(u));
  for (double p : phases) {
    if (std::abs(p) <= phase_tol) ++out.mult_plus;
    else if (kPi - std::abs(p) <= phase_tol) ++out.mult_minus;
  }
  std::vector<double> expect = reduced.phases;
  for (long k = 0; k < N - reduced.dim_S; ++k) expect.push_back(0.0);
  std::sort(expect.begin(), expect.end());
  if (expect.size() != phases.size()) {
    out.max_phase_error = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t k = 0; k < phases.size(); ++k)
      out.max_phase_error = std::max(out.max_phase_error, std::abs(phases[k] - expect[k]));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> distinct_values(const VectorXd& ev, double tol) {
  std::vector<double> v(ev.data(), ev.data() + ev.size());
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tol * std::max(1.0, std::abs(x))) out.push_back(x);
  return out;
}

// I is ordered (slot, k, leaf); regroup as ((slot, leaf), k).
std::vector<int> grouped_order(const NormalizedProgram& np, int& groups) {
  const RootedTree& t = np.tree();
  std::vector<int> perm;
  groups = 0;
  for (int s = 0; s < t.num_slots(); ++s) {
    int x = t.node_at_slot(s);
    for (int f : t.subtree_leaves(x)) {
      ++groups;
      for (int k = 0; k < np.n(); ++k) perm.push_back(np.i_index(x, k, f));
    }
  }
  return perm;
}

double set_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace

DeltaSpectrum delta_spectrum(const NormalizedProgram& np, double cluster_tol) {
  DeltaSpectrum out;
  const int n = np.n();
  out.n = n;
  MatrixXd v = np.dense_V();
  MatrixXd delta = v * v.transpose() / (4.0 * n);
  int groups = 0;
  std::vector<int> perm = grouped_order(np, groups);
  const int m = static_cast<int>(perm.size());
  out.delta.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.delta(a, b) = delta(perm[a], perm[b]);

  out.diag_part = MatrixXd::Zero(groups, groups);
  out.off_part = MatrixXd::Zero(groups, groups);
  for (int g1 = 0; g1 < groups; ++g1)
    for (int g2 = 0; g2 < groups; ++g2) {
      auto blk = out.delta.block(g1 * n, g2 * n, n, n);
      double dsum = blk.diagonal().sum();
      out.diag_part(g1, g2) = dsum / n;
      if (n > 1) out.off_part(g1, g2) = (blk.sum() - dsum) / (static_cast<double>(n) * (n - 1));
      for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = 0; k2 < n; ++k2) {
          double expect = k1 == k2 ? out.diag_part(g1, g2) : out.off_part(g1, g2);
          out.form_residual = std::max(out.form_residual, std::abs(blk(k1, k2) - expect));
        }
    }

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(out.delta, Eigen::EigenvaluesOnly);
  out.distinct = distinct_values(es.eigenvalues(), cluster_tol);
  out.smallest_nonzero = 0.0;
  for (double x : out.distinct)
    if (x > 1e-9) {
      out.smallest_nonzero = x;
      break;
    }
  return out;
}

SpectralReport spectral_report(const RootedTree& tree, const std::vector<int>& n_list, double C) {
  if (n_list.size() < 2) throw std::invalid_argument("spectral_report needs at least two block sizes");
  for (int n : n_list)
    if (n < 2) throw std::invalid_argument("spectral_report needs block sizes >= 2");
  SpectralReport rep;
  rep.n_list = n_list;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (int n : n_list) {
    NormalizedProgram np = normalized_skeleton(tree, n, C);
    WalkFactorization wf = assemble(np);
    rep.max_identity_dev = std::max({rep.max_identity_dev, wf.identity_dev, wf.orthonormal_A_dev,
                                     wf.orthonormal_B_dev});
    rep.walk.push_back(walk_spectrum(wf));
    rep.delta.push_back(delta_spectrum(np));
    rep.min_gap = std::min(rep.min_gap, rep.walk.back().gap);
  }

  // Delta_n = A ⊗ I + (1/n) B ⊗ E: the per-block diagonal mean is A + B/n.
  const double n1 = n_list[0], n2 = n_list[1];
  const MatrixXd& d1 = rep.delta[0].diag_part;
  const MatrixXd& d2 = rep.delta[1].diag_part;
  rep.B_struct = (d1 - d2) / (1.0 / n1 - 1.0 / n2);
  rep.A_struct = d1 - rep.B_struct / n1;
  const int groups = static_cast<int>(rep.A_struct.rows());
  for (std::size_t q = 0; q < n_list.size(); ++q) {
    const int n = n_list[q];
    const MatrixXd& dl = rep.delta[q].delta;
    for (int g1 = 0; g1 < groups; ++g1)
      for (int g2 = 0; g2 < groups; ++g2)
        for (int k1 = 0; k1 < n; ++k1)
          for (int k2 = 0; k2 < n; ++k2) {
            double expect = (k1 == k2 ? rep.A_struct(g1, g2) : 0.0) + rep.B_struct(g1, g2) / n;
            rep.fit_residual = std::max(rep.fit_residual, std::abs(dl(g1 * n + k1, g2 * n + k2) - expect));
          }
  }

  Eigen::SelfAdjointEigenSolver<MatrixXd> ea(rep.A_struct, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<MatrixXd> eab(rep.A_struct + rep.B_struct, Eigen::EigenvaluesOnly);
  VectorXd both(ea.eigenvalues().size() + eab.eigenvalues().size());
  both << ea.eigenvalues(), eab.eigenvalues();
  std::vector<double> theory = distinct_values(both, 1e-9);
  for (std::size_t q = 0; q < n_list.size(); ++q) {
    if (rep.delta[q].distinct.size() != rep.delta[0].distinct.size()) rep.distinct_sizes_match = false;
    rep.distinct_deviation =
        std::max(rep.distinct_deviation, set_distance(rep.delta[q].distinct, rep.delta[0].distinct));
    rep.theory_deviation = std::max(rep.theory_deviation, set_distance(rep.delta[q].distinct, theory));
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> tree_key(const RootedTree& t) {
  std::vector<int> key{t.size(), t.root()};
  for (auto [a, b] : t.edges()) {
    key.push_back(a);
    key.push_back(b);
  }
  return key;
}

double weight_near_zero(const SchurBlocks& sb, int start_index, double precision) {
  double p = 0.0;
  for (const auto& b : sb.blocks)
    if (b.phase <= precision)
      for (int c = b.start; c < b.start + b.size; ++c) p += sb.Z(start_index, c) * sb.Z(start_index, c);
  return std::min(1.0, p);
}

}  // namespace

const PhaseEstimator::Cached& PhaseEstimator::cached(const NormalizedProgram& np) {
  auto key = std::make_tuple(tree_key(np.tree()), np.n(), np.alpha());
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;

  auto c = std::make_unique<Cached>();
  MatrixXd v = np.dense_V();
  const int nJ = static_cast<int>(v.cols());
  MatrixXd range = linalg::range_basis(v.transpose(), 1e-9);  // row space of V
  c->lambda = MatrixXd::Identity(nJ, nJ) - range * range.transpose();

  WalkFactorization wf = assemble(np);
  ReducedWalk r = reduce(wf);
  SchurBlocks sb = schur_blocks(r.US);
  double gap = gap_of(expand_phases(sb), true, 1e-7);
  c->gap = gap;
  // B e_j in the basis of S: Y^T K [0; e_j] = basis^T G [0; e_j] = basis^T [D; I]
  MatrixXd dk(r.nI + r.nJ, r.nJ);
  dk.topRows(r.nI) = r.D;
  dk.bottomRows(r.nJ) = MatrixXd::Identity(r.nJ, r.nJ);
  MatrixXd yb = r.basis.transpose() * dk;
  MatrixXd proj = MatrixXd::Zero(yb.cols(), yb.cols());
  std::vector<int> cols;
  for (const auto& b : sb.blocks)
    if (kPi - b.phase <= gap / 3.0)
      for (int k = b.start; k < b.start + b.size; ++k) cols.push_back(k);
  MatrixXd zm(sb.Z.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) zm.col(k) = sb.Z.col(cols[k]);
  MatrixXd w = yb.transpose() * zm;
  c->lambda_eff = w * w.transpose();
  c->kernel_dev = (c->lambda - c->lambda_eff).cwiseAbs().maxCoeff();
  auto& slot = cache_[key];
  slot = std::move(c);
  return *slot;
}

PhaseEstimationRun PhaseEstimator::run(const NormalizedProgram& np, const Availability& x, double w_bound,
                                       std::uint64_t seed) {
  if (!(w_bound > 0)) throw std::invalid_argument("witness-size bound must be positive");
  const Cached& c = cached(np);
  PhaseEstimationRun run;
  run.w_bound = w_bound;
  run.precision = 1.0 / (10.0 * np.C() * w_bound);
  run.seed = seed;

  std::vector<bool> avail = np.available_columns(x);
  const int nJ = static_cast<int>(avail.size());
  VectorXd rx(nJ);
  for (int j = 0; j < nJ; ++j) rx[j] = avail[j] ? 1.0 : -1.0;
  const int start = np.tau_index();
  auto probability = [&](const MatrixXd& proj) {
    MatrixXd u = (2.0 * proj - MatrixXd::Identity(nJ, nJ)) * rx.asDiagonal();
    return weight_near_zero(schur_blocks(u), start, run.precision);
  };
  run.acceptance_probability = probability(c.lambda);
  run.acceptance_probability_effective = probability(c.lambda_eff);
  run.accept = run.acceptance_probability >= 0.5;
  run.accept_effective = run.acceptance_probability_effective >= 0.5;
  run.variants_agree = run.accept == run.accept_effective;

  CounterRng rng(seed);
  int yes = 0;
  for (int k = 0; k < repetitions_; ++k) {
    bool s = rng.bernoulli(run.acceptance_probability);
    run.samples.push_back(s);
    yes += s;
  }
  run.majority = 2 * yes > repetitions_;
  return run;
}

PhaseEstimationRun phase_estimation_evaluate(const NormalizedProgram& np, const Availability& x,
                                             double w_bound, std::uint64_t seed) {
  PhaseEstimator pe;
  return pe.run(np, x, w_bound, seed);
}

}  // namespace treespan
