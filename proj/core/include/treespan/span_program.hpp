#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace treespan {

/// One bit per input variable.
using Availability = std::vector<bool>;

/// Label of an input vector: free, or available when variable `variable`
/// takes value `value`.
struct InputLabel {
  int variable = -1;  // -1 means free
  bool value = true;
  bool is_free() const { return variable < 0; }
};

struct NumericPolicy {
  /// Singular values below this fraction of the largest are treated as zero.
  double sv_cutoff = 1e-9;
  /// Acceptance residual tolerance, relative to the target norm.
  double residual_tol = 1e-8;
};

/// Real span program: target tau, input vectors as the columns of `inputs`,
/// each column labeled free or by (variable, value).
class SpanProgram {
 public:
  SpanProgram() = default;
  SpanProgram(Eigen::VectorXd target, Eigen::MatrixXd inputs, std::vector<InputLabel> labels,
              int num_variables);

  int dimension() const { return static_cast<int>(target_.size()); }
  int num_inputs() const { return static_cast<int>(inputs_.cols()); }
  int num_variables() const { return num_variables_; }
  const Eigen::VectorXd& target() const { return target_; }
  const Eigen::MatrixXd& inputs() const { return inputs_; }
  const std::vector<InputLabel>& labels() const { return labels_; }

  std::vector<int> free_indices() const;
  /// I_{i,b}.
  std::vector<int> labeled_indices(int variable, bool value) const;
  /// I(x): free plus labeled indices whose label matches x.
  std::vector<int> available_indices(const Availability& x) const;
  /// Labeled (non-free) available indices.
  std::vector<int> available_labeled(const Availability& x) const;
  bool is_available(int j, const Availability& x) const;

  /// Same program with the target multiplied by `lambda`.
  SpanProgram scaled_target(double lambda) const;

 private:
  void check_input(const Availability& x) const;

  Eigen::VectorXd target_;
  Eigen::MatrixXd inputs_;
  std::vector<InputLabel> labels_;
  int num_variables_ = 0;
};

struct Witness {
  /// Positive: coefficients over inputs (length m, zero off I(x)).
  /// Negative: dual vector in the ambient space (length d).
  Eigen::VectorXd w;
  double size = 0.0;
};

struct EvalResult {
  bool accepted = false;
  /// Residual within a factor 10 of the tolerance either way.
  bool borderline = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::optional<Witness> positive;
  std::optional<Witness> negative;
  /// Size of whichever witness is present.
  double wsize = 0.0;
};

/// Decides acceptance from the least-squares residual of tau against the
/// available columns and attaches the minimum witness for that side.
EvalResult evaluate(const SpanProgram& p, const Availability& x, const NumericPolicy& policy = {});

/// Minimum ||labeled part of w||^2 subject to A Pi(x) w = tau. Free
/// coordinates are unpenalized. Throws InfeasibleWitness when rejected.
Witness min_positive_witness(const SpanProgram& p, const Availability& x,
                             const NumericPolicy& policy = {});

/// Minimum ||A^T w'||^2 subject to <tau|w'> = 1 and w' orthogonal to every
/// available input. Throws InfeasibleWitness when accepted.
Witness min_negative_witness(const SpanProgram& p, const Availability& x,
                             const NumericPolicy& policy = {});

/// Residual ||tau - A Pi(x) w|| of a positive witness (w over all inputs).
double positive_residual(const SpanProgram& p, const Availability& x, const Eigen::VectorXd& w);
/// Labeled-part size of a positive witness.
double positive_size(const SpanProgram& p, const Availability& x, const Eigen::VectorXd& w);

struct NegativeCheck {
  double tau_overlap = 0.0;       // <tau|w'>
  double max_available = 0.0;     // max |<v_j|w'>| over available j
  double size = 0.0;              // ||A^T w'||^2
};
NegativeCheck check_negative(const SpanProgram& p, const Availability& x, const Eigen::VectorXd& w);

namespace linalg {

/// Orthonormal basis of the column space of M (cutoff relative to sigma_max).
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m, double rel_cutoff);
/// Orthonormal basis of the orthogonal complement of col(M) in R^rows.
Eigen::MatrixXd complement_basis(const Eigen::MatrixXd& m, double rel_cutoff);
/// Moore-Penrose pseudo-inverse applied to b. Singular values at or below
/// rel_cutoff * scale are dropped; scale 0 means sigma_max of m.
Eigen::VectorXd pinv_solve(const Eigen::MatrixXd& m, const Eigen::VectorXd& b, double rel_cutoff,
                           double scale = 0.0);
/// Numerical rank.
int rank(const Eigen::MatrixXd& m, double rel_cutoff);

}  // namespace linalg

}  // namespace treespan
