#include "treespan/span_program.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "treespan/errors.hpp"

namespace treespan {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace linalg {

namespace {
int count_above(const VectorXd& s, double rel_cutoff, double scale = 0.0) {
  if (s.size() == 0) return 0;
  double smax = scale > 0.0 ? scale : s.maxCoeff();
  if (!(smax > 1e-300)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_cutoff * smax) ++r;
  return r;
}
}  // namespace

MatrixXd range_basis(const MatrixXd& m, double rel_cutoff) {
  if (m.cols() == 0 || m.rows() == 0) return MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeThinU);
  int r = count_above(svd.singularValues(), rel_cutoff);
  return svd.matrixU().leftCols(r);
}

MatrixXd complement_basis(const MatrixXd& m, double rel_cutoff) {
  if (m.cols() == 0) return MatrixXd::Identity(m.rows(), m.rows());
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullU);
  int r = count_above(svd.singularValues(), rel_cutoff);
  return svd.matrixU().rightCols(m.rows() - r);
}

VectorXd pinv_solve(const MatrixXd& m, const VectorXd& b, double rel_cutoff, double scale) {
  if (m.cols() == 0) return VectorXd(0);
  if (m.rows() == 0) return VectorXd::Zero(m.cols());
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& s = svd.singularValues();
  int r = count_above(s, rel_cutoff, scale);
  VectorXd coef = svd.matrixU().leftCols(r).transpose() * b;
  for (int i = 0; i < r; ++i) coef[i] /= s[i];
  return svd.matrixV().leftCols(r) * coef;
}

int rank(const MatrixXd& m, double rel_cutoff) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return count_above(svd.singularValues(), rel_cutoff);
}

}  // namespace linalg

SpanProgram::SpanProgram(VectorXd target, MatrixXd inputs, std::vector<InputLabel> labels,
                         int num_variables)
    : target_(std::move(target)),
      inputs_(std::move(inputs)),
      labels_(std::move(labels)),
      num_variables_(num_variables) {
  if (inputs_.rows() != target_.size() && inputs_.cols() > 0)
    throw std::invalid_argument("input vectors and target differ in dimension");
  if (inputs_.cols() == 0) inputs_.resize(target_.size(), 0);
  if (static_cast<Eigen::Index>(labels_.size()) != inputs_.cols())
    throw std::invalid_argument("one label per input vector required");
  for (const auto& l : labels_)
    if (l.variable >= num_variables_)
      throw std::invalid_argument("label refers to variable " + std::to_string(l.variable) +
                                  " beyond " + std::to_string(num_variables_));
}

void SpanProgram::check_input(const Availability& x) const {
  if (static_cast<int>(x.size()) != num_variables_)
    throw std::invalid_argument("availability has " + std::to_string(x.size()) +
                                " bits, program has " + std::to_string(num_variables_) +
                                " variables");
}

std::vector<int> SpanProgram::free_indices() const {
  std::vector<int> out;
  for (int j = 0; j < num_inputs(); ++j)
    if (labels_[j].is_free()) out.push_back(j);
  return out;
}

std::vector<int> SpanProgram::labeled_indices(int variable, bool value) const {
  std::vector<int> out;
  for (int j = 0; j < num_inputs(); ++j)
    if (labels_[j].variable == variable && labels_[j].value == value) out.push_back(j);
  return out;
}

bool SpanProgram::is_available(int j, const Availability& x) const {
  const auto& l = labels_[j];
  return l.is_free() || x[l.variable] == l.value;
}

std::vector<int> SpanProgram::available_indices(const Availability& x) const {
  check_input(x);
  std::vector<int> out;
  for (int j = 0; j < num_inputs(); ++j)
    if (is_available(j, x)) out.push_back(j);
  return out;
}

std::vector<int> SpanProgram::available_labeled(const Availability& x) const {
  check_input(x);
  std::vector<int> out;
  for (int j = 0; j < num_inputs(); ++j)
    if (!labels_[j].is_free() && is_available(j, x)) out.push_back(j);
  return out;
}

SpanProgram SpanProgram::scaled_target(double lambda) const {
  return SpanProgram(target_ * lambda, inputs_, labels_, num_variables_);
}

namespace {

MatrixXd columns(const MatrixXd& a, const std::vector<int>& idx) {
  MatrixXd out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(k) = a.col(idx[k]);
  return out;
}

struct Decision {
  bool accepted;
  bool borderline;
  double residual;
  double tolerance;
};

Decision decide(const SpanProgram& p, const Availability& x, const NumericPolicy& policy) {
  const VectorXd& tau = p.target();
  double tol = policy.residual_tol * tau.norm();
  if (tau.norm() == 0.0) return {true, false, 0.0, 0.0};
  MatrixXd q = linalg::range_basis(columns(p.inputs(), p.available_indices(x)), policy.sv_cutoff);
  double res = (tau - q * (q.transpose() * tau)).norm();
  bool border = res > tol / 10.0 && res < tol * 10.0;
  return {res <= tol, border, res, tol};
}

}  // namespace

Witness min_positive_witness(const SpanProgram& p, const Availability& x, const NumericPolicy& policy) {
  Decision d = decide(p, x, policy);
  if (!d.accepted)
    throw InfeasibleWitness("positive witness requested for a rejected input (residual " +
                            std::to_string(d.residual) + ")");
  std::vector<int> fidx, lidx;
  for (int j : p.available_indices(x)) (p.labels()[j].is_free() ? fidx : lidx).push_back(j);
  MatrixXd af = columns(p.inputs(), fidx);
  MatrixXd al = columns(p.inputs(), lidx);
  const VectorXd& tau = p.target();

  // Eliminate the unpenalized free block: project onto col(A_F)^perp, then
  // the labeled coefficients are the minimum-norm solution there.
  MatrixXd qf = linalg::range_basis(af, policy.sv_cutoff);
  MatrixXd m = al - qf * (qf.transpose() * al);
  VectorXd rhs = tau - qf * (qf.transpose() * tau);
  // m can be pure rounding noise when the free block already covers tau, so
  // measure its cutoff against the unprojected labeled block
  VectorXd wl = linalg::pinv_solve(m, rhs, policy.sv_cutoff, al.norm());
  VectorXd wf = linalg::pinv_solve(af, tau - al * wl, policy.sv_cutoff);

  Witness out;
  out.w = VectorXd::Zero(p.num_inputs());
  for (std::size_t k = 0; k < fidx.size(); ++k) out.w[fidx[k]] = wf[k];
  for (std::size_t k = 0; k < lidx.size(); ++k) out.w[lidx[k]] = wl[k];
  out.size = wl.squaredNorm();
  return out;
}

Witness min_negative_witness(const SpanProgram& p, const Availability& x, const NumericPolicy& policy) {
  Decision d = decide(p, x, policy);
  if (d.accepted) throw InfeasibleWitness("negative witness requested for an accepted input");
  const VectorXd& tau = p.target();
  MatrixXd n = linalg::complement_basis(columns(p.inputs(), p.available_indices(x)), policy.sv_cutoff);
  VectorXd c = n.transpose() * tau;
  Witness out;
  if (p.num_inputs() == 0) {
    out.w = tau / tau.squaredNorm();
    out.size = 0.0;
    return out;
  }
  MatrixXd g = p.inputs().transpose() * n;  // m x r
  Eigen::JacobiSVD<MatrixXd> svd(g, Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  const MatrixXd& v = svd.matrixV();
  VectorXd cp = v.transpose() * c;
  // cutoff against the input scale: g is numerically zero when every input
  // lies in the available span
  double smax = p.inputs().norm();
  double cnorm = c.norm();

  // Directions of G^T G with zero eigenvalue: those beyond min(m, r) and
  // those with negligible singular value.
  VectorXd y = VectorXd::Zero(c.size());
  double zero_mass = 0.0;
  for (Eigen::Index k = 0; k < cp.size(); ++k) {
    bool zero = k >= s.size() || !(s[k] > policy.sv_cutoff * smax);
    if (zero && std::abs(cp[k]) > 1e-9 * cnorm) {
      y += cp[k] * v.col(k);
      zero_mass += cp[k] * cp[k];
    }
  }
  if (zero_mass > 0.0) {
    y /= zero_mass;
    out.w = n * y;
    out.size = (g * y).squaredNorm();
    return out;
  }
  double denom = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s[k] > policy.sv_cutoff * smax) denom += cp[k] * cp[k] / (s[k] * s[k]);
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s[k] > policy.sv_cutoff * smax) y += (cp[k] / (s[k] * s[k]) / denom) * v.col(k);
  out.w = n * y;
  out.size = 1.0 / denom;
  return out;
}

EvalResult evaluate(const SpanProgram& p, const Availability& x, const NumericPolicy& policy) {
  Decision d = decide(p, x, policy);
  EvalResult r;
  r.accepted = d.accepted;
  r.borderline = d.borderline;
  r.residual = d.residual;
  r.tolerance = d.tolerance;
  if (d.accepted) {
    if (p.target().norm() == 0.0) {
      r.positive = Witness{VectorXd::Zero(p.num_inputs()), 0.0};
    } else {
      r.positive = min_positive_witness(p, x, policy);
    }
    r.wsize = r.positive->size;
  } else {
    r.negative = min_negative_witness(p, x, policy);
    r.wsize = r.negative->size;
  }
  return r;
}

double positive_residual(const SpanProgram& p, const Availability& x, const VectorXd& w) {
  VectorXd masked = VectorXd::Zero(p.num_inputs());
  for (int j : p.available_indices(x)) masked[j] = w[j];
  return (p.inputs() * masked - p.target()).norm();
}

double positive_size(const SpanProgram& p, const Availability& x, const VectorXd& w) {
  double s = 0.0;
  for (int j : p.available_labeled(x)) s += w[j] * w[j];
  return s;
}

NegativeCheck check_negative(const SpanProgram& p, const Availability& x, const VectorXd& w) {
  NegativeCheck c;
  c.tau_overlap = p.target().dot(w);
  VectorXd aw = p.inputs().transpose() * w;
  for (int j : p.available_indices(x)) c.max_available = std::max(c.max_available, std::abs(aw[j]));
  c.size = aw.squaredNorm();
  return c;
}

}  // namespace treespan
