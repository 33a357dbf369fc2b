#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "treespan/span_program.hpp"
#include "treespan/tree_program.hpp"

namespace treespan {

/// Largest dimension for which walk_operator builds U(A,B) densely.
inline constexpr long kMaxDenseWalk = 4000;

/// Normalized program for `tree` padded to n with every vertex a dummy. V
/// depends only on (tree, n, alpha), so this is enough for spectral work.
NormalizedProgram normalized_skeleton(const RootedTree& tree, int n, double C = 11.0);

/// a_i over J. Throws std::out_of_range for i outside I.
Eigen::SparseVector<double> build_a_vector(const NormalizedProgram& np, int i);
/// b_j over I. Throws std::out_of_range for j outside J.
Eigen::SparseVector<double> build_b_vector(const NormalizedProgram& np, int j);

/// Isometries A (columns e_i ⊗ a_i) and B (columns b_j ⊗ e_j) on the
/// |I|·|J|-dimensional space, row index i·|J| + j.
struct WalkFactorization {
  int n = 0;
  long dim = 0;  // |I|·|J|
  Eigen::SparseMatrix<double> A, B, V;
  /// D = A^T B (|I| x |J|).
  Eigen::SparseMatrix<double> D;
  double orthonormal_A_dev = 0.0;  // max |A^T A - I|
  double orthonormal_B_dev = 0.0;  // max |B^T B - I|
  double identity_dev = 0.0;       // max |A^T B - V / sqrt(4n)|
};

/// Builds A and B and verifies the three identities to 1e-12; throws
/// InvariantViolation naming the largest deviating entry otherwise.
WalkFactorization assemble(const NormalizedProgram& np);

/// Dense U(A,B) = (2BB^T - I)(2AA^T - I). Throws InstanceTooLarge beyond
/// kMaxDenseWalk.
Eigen::MatrixXd walk_operator(const WalkFactorization& wf);

/// Spectrum of U(A,B) computed on S = Col A + Col B (U is the identity on
/// the complement), compared with what the singular values of D predict.
struct WalkSpectrum {
  std::vector<double> singular_values;  // of D, descending
  std::vector<double> phases;           // eigenphases on S, in (-pi, pi]
  long dim = 0;                         // full space
  int dim_S = 0;
  int n_one = 0;        // singular values equal to 1
  int rank_D = 0;       // nonzero singular values
  int n_pairs = 0;      // singular values in (0,1)
  int dim_A_cap_B = 0;  // |I| + |J| - rank(K^T K)
  // multiplicities on the full space, measured from the phases
  long mult_plus = 0, mult_minus = 0, mult_pairs = 0;
  // and predicted from the singular values
  long pred_plus = 0, pred_minus = 0, pred_pairs = 0;
  /// Largest distance between sorted measured and predicted phases.
  double max_phase_error = 0.0;
  /// Smallest pi - |phase| over phases not at pi.
  double gap = 0.0;
  bool counts_match() const {
    return mult_plus == pred_plus && mult_minus == pred_minus && mult_pairs == pred_pairs;
  }
};

/// `phase_tol` decides which measured phases count as 0 or pi.
WalkSpectrum walk_spectrum(const WalkFactorization& wf, double phase_tol = 1e-7);

/// Full-space multiplicities straight from the dense operator (small cases).
struct DenseSpectrumCheck {
  double unitarity_dev = 0.0;
  long mult_plus = 0, mult_minus = 0;
  double max_phase_error = 0.0;  // against the reduced computation
};
DenseSpectrumCheck dense_spectrum_check(const WalkFactorization& wf, const WalkSpectrum& reduced,
                                        double phase_tol = 1e-7);

/// Delta = V V^T / (4n) reordered as (x,f) ⊗ k, with its block structure.
struct DeltaSpectrum {
  int n = 0;
  Eigen::MatrixXd delta;      // in (x,f)⊗k order
  Eigen::MatrixXd diag_part;  // per (x,f) block: mean diagonal entry
  Eigen::MatrixXd off_part;   // per (x,f) block: mean off-diagonal entry (0 if n = 1)
  double form_residual = 0.0; // max deviation from a·I + c·E inside each block
  std::vector<double> distinct;  // distinct eigenvalues, ascending
  double smallest_nonzero = 0.0;
};
DeltaSpectrum delta_spectrum(const NormalizedProgram& np, double cluster_tol = 1e-9);

/// Checks that the Delta spectrum and gap stay fixed across block sizes.
struct SpectralReport {
  std::vector<int> n_list;
  std::vector<WalkSpectrum> walk;    // per n
  std::vector<DeltaSpectrum> delta;  // per n
  Eigen::MatrixXd A_struct, B_struct;  // fitted from the first two n
  double fit_residual = 0.0;           // worst |Delta_n - (A⊗I + B⊗E/n)| over n
  double distinct_deviation = 0.0;     // worst mismatch of distinct sets vs the first n
  bool distinct_sizes_match = true;
  double theory_deviation = 0.0;       // distinct sets vs eig(A) ∪ eig(A+B)
  double min_gap = 0.0;
  double max_identity_dev = 0.0;
};
/// Requires at least two n values, all >= 2.
SpectralReport spectral_report(const RootedTree& tree, const std::vector<int>& n_list, double C = 11.0);

// ---------------------------------------------------------------------------
// Circuit factors.

/// Seven registers x, k, f, x', k', y, k'' of sizes (K+2, n, L, K+2, n, K+2, n).
/// Tree-node registers hold slots (s = K, t = K+1); the f register holds a
/// leaf position. Register 0 is the most significant.
struct RegisterLayout {
  std::array<int, 7> dims{};
  std::array<long, 7> stride{};
  long total = 0;
  explicit RegisterLayout(const NormalizedProgram& np);
  long index(const std::array<int, 7>& v) const;
  std::array<int, 7> decode(long idx) const;
};

struct CircuitFactor {
  std::string name;
  Eigen::SparseMatrix<double> op;
};

/// U_A = Q · U_A4 · U_A3 · U_A2 · U_A1, factors listed right to left.
std::vector<CircuitFactor> compose_UA(const NormalizedProgram& np);
/// U_B = U_B2 · U_B1, factors listed right to left.
std::vector<CircuitFactor> compose_UB(const NormalizedProgram& np);
/// Product of the factors (applied first to last).
Eigen::SparseMatrix<double> circuit_product(const std::vector<CircuitFactor>& factors);

struct CircuitCheck {
  std::vector<std::pair<std::string, double>> orthogonality;  // max |F^T F - I| per factor
  double ua_column_dev = 0.0;    // max |U_A (e_i ⊗ 0) - e_i ⊗ a_i|
  double ub_column_dev = 0.0;    // max |U_B (0 ⊗ e_j) - b_j ⊗ e_j|
  double q_outside_dev = 0.0;    // Q minus identity off the special plane
  double ub2_zero_dev = 0.0;     // U_B2 on the zero register vs (e_{x1k1} - e_{x2k2})/sqrt 2
  double max_orthogonality() const;
};
CircuitCheck verify_circuits(const NormalizedProgram& np);

// ---------------------------------------------------------------------------
// Phase estimation, simulated through the spectral decomposition.

struct PhaseEstimationRun {
  double precision = 0.0;   // 1 / (10 C W)
  double error_rate = 0.1;
  double w_bound = 0.0;
  double acceptance_probability = 0.0;            // exact kernel reflection
  double acceptance_probability_effective = 0.0;  // reflection via U(A,B)
  bool accept = false;            // probability >= 1/2
  bool accept_effective = false;
  bool variants_agree = false;
  std::uint64_t seed = 0;
  std::vector<bool> samples;      // independent simulated runs
  bool majority = false;          // majority vote of the samples
};

/// Caches the input-independent spectral data per (tree, n, alpha).
class PhaseEstimator {
 public:
  explicit PhaseEstimator(int repetitions = 5) : repetitions_(repetitions) {}

  /// `x` is the availability of the original program (one bit per candidate).
  PhaseEstimationRun run(const NormalizedProgram& np, const Availability& x, double w_bound,
                         std::uint64_t seed);

  struct Cached {
    Eigen::MatrixXd lambda;      // projector onto ker V
    Eigen::MatrixXd lambda_eff;  // B^T P_{-1} B
    double gap = 0.0;            // of U(A,B)
    double kernel_dev = 0.0;     // max |lambda - lambda_eff|
  };
  const Cached& cached(const NormalizedProgram& np);

 private:
  int repetitions_;
  std::map<std::tuple<std::vector<int>, int, double>, std::unique_ptr<Cached>> cache_;
};

/// Single-shot convenience wrapper (no cache reuse).
PhaseEstimationRun phase_estimation_evaluate(const NormalizedProgram& np, const Availability& x,
                                             double w_bound, std::uint64_t seed = 0);

}  // namespace treespan
