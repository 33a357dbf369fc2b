// The factors of U_A and U_B as explicit sparse matrices over the
// seven-register layout.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

#include "treespan/errors.hpp"
#include "treespan/walk_simulator.hpp"

namespace treespan {

using Eigen::SparseMatrix;
using Eigen::VectorXd;
using Regs = std::array<int, 7>;
using Column = std::vector<std::pair<long, double>>;

RegisterLayout::RegisterLayout(const NormalizedProgram& np) {
  const int X = np.tree().num_slots();
  const int n = np.n();
  dims = {X, n, np.tree().num_leaves(), X, n, X, n};
  total = 1;
  for (int r = 6; r >= 0; --r) {
    stride[r] = total;
    total *= dims[r];
  }
  if (total > std::numeric_limits<int>::max()) throw InstanceTooLarge("register space too large");
}

long RegisterLayout::index(const Regs& v) const {
  long idx = 0;
  for (int r = 0; r < 7; ++r) {
    if (v[r] < 0 || v[r] >= dims[r]) throw std::out_of_range("register value out of range");
    idx += v[r] * stride[r];
  }
  return idx;
}

Regs RegisterLayout::decode(long idx) const {
  Regs v{};
  for (int r = 0; r < 7; ++r) {
    v[r] = static_cast<int>(idx / stride[r]);
    idx %= stride[r];
  }
  return v;
}

namespace {

// Builds an operator column by column; `fn` returns the image of a basis
// state or nothing for states it fixes.
SparseMatrix<double> build_factor(const RegisterLayout& lay,
                                  const std::function<std::optional<Column>(const Regs&)>& fn) {
  std::vector<Eigen::Triplet<double>> trips;
  for (long c = 0; c < lay.total; ++c) {
    auto col = fn(lay.decode(c));
    if (!col) {
      trips.emplace_back(static_cast<int>(c), static_cast<int>(c), 1.0);
      continue;
    }
    for (auto [r, v] : *col)
      if (v != 0.0) trips.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
  }
  SparseMatrix<double> m(lay.total, lay.total);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

// Column `l` of the Householder reflection sending e_0 to the unit vector v.
VectorXd householder_column(const VectorXd& v, int l) {
  VectorXd u = -v;
  u[0] += 1.0;
  double nn = u.squaredNorm();
  VectorXd e = VectorXd::Zero(v.size());
  e[l] = 1.0;
  if (nn < 1e-30) return e;
  return e - (2.0 * u[l] / nn) * u;
}

// Householder acting on register r only.
Column reflect_register(const RegisterLayout& lay, const Regs& regs, int r, const VectorXd& v) {
  VectorXd col = householder_column(v, regs[r]);
  Column out;
  Regs w = regs;
  for (int q = 0; q < col.size(); ++q) {
    if (col[q] == 0.0) continue;
    w[r] = q;
    out.emplace_back(lay.index(w), col[q]);
  }
  return out;
}

double max_identity_dev(const SparseMatrix<double>& m) {
  double worst = 0.0;
  std::vector<char> seen(m.cols(), 0);
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix<double>::InnerIterator it(m, c); it; ++it) {
      double target = it.row() == it.col() ? 1.0 : 0.0;
      if (it.row() == it.col()) seen[c] = 1;
      worst = std::max(worst, std::abs(it.value() - target));
    }
  for (int c = 0; c < m.cols(); ++c)
    if (!seen[c]) worst = std::max(worst, 1.0);
  return worst;
}

}  // namespace

std::vector<CircuitFactor> compose_UA(const NormalizedProgram& np) {
  RegisterLayout lay(np);
  const RootedTree& t = np.tree();
  const int X = lay.dims[0], n = np.n();
  std::vector<CircuitFactor> out;

  // U_A1: (r4, r5) += (r1, r2)
  out.push_back({"U_A1", build_factor(lay, [&](const Regs& r) -> std::optional<Column> {
                   Regs w = r;
                   w[3] = (r[3] + r[0]) % X;
                   w[4] = (r[4] + r[1]) % n;
                   return Column{{lay.index(w), 1.0}};
                 })});

  // U_A2: r7 from |0> to the uniform superposition
  VectorXd uniform = VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  out.push_back({"U_A2", build_factor(lay, [&](const Regs& r) -> std::optional<Column> {
                   if (n == 1) return std::nullopt;
                   return reflect_register(lay, r, 6, uniform);
                 })});

  // U_A3: r6 from |0> to the uniform superposition over M(x, f), given (r1, r3)
  out.push_back({"U_A3", build_factor(lay, [&](const Regs& r) -> std::optional<Column> {
                   int x = t.node_at_slot(r[0]);
                   int f = t.leaves()[r[2]];
                   if (!std::binary_search(t.subtree_leaves(x).begin(), t.subtree_leaves(x).end(), f))
                     return std::nullopt;
                   VectorXd v = VectorXd::Zero(X);
                   for (int y : t.flow_neighbors(x, f)) v[t.slot(y)] += 1.0 / std::sqrt(2.0);
                   return reflect_register(lay, r, 5, v);
                 })});

  // U_A4: given (r1, r2) = (x, k), |x,k,y,k''> and |y,k'',x,k> on r4..r7 are
  // rotated into their symmetric and antisymmetric combinations
  const double h = 1.0 / std::sqrt(2.0);
  out.push_back({"U_A4", build_factor(lay, [&](const Regs& r) -> std::optional<Column> {
                   Regs p = r, q = r;
                   if (r[3] == r[0] && r[4] == r[1] && r[5] != r[0]) {
                     q[3] = r[5], q[4] = r[6], q[5] = r[0], q[6] = r[1];
                     return Column{{lay.index(p), h}, {lay.index(q), h}};
                   }
                   if (r[5] == r[0] && r[6] == r[1] && r[3] != r[0]) {
                     p[3] = r[0], p[4] = r[1], p[5] = r[3], p[6] = r[4];
                     return Column{{lay.index(p), h}, {lay.index(q), -h}};
                   }
                   return std::nullopt;
                 })});

  // Q: rotation on the plane {|s,0,t,0>, |t,0,s,0>} of r4..r7
  const int S = t.slot(kSource), T = t.slot(kSink);
  const double a = 1.0 / np.alpha(), b = std::sqrt(1.0 - a * a);
  // (1,1)/sqrt2 -> (a, b) and (1,-1)/sqrt2 -> (b, -a)
  const double m00 = h * (a + b), m01 = h * (a - b), m10 = h * (b - a), m11 = h * (b + a);
  out.push_back({"Q", build_factor(lay, [&](const Regs& r) -> std::optional<Column> {
                   bool is_p = r[3] == S && r[4] == 0 && r[5] == T && r[6] == 0;
                   bool is_q = r[3] == T && r[4] == 0 && r[5] == S && r[6] == 0;
                   if (!is_p && !is_q) return std::nullopt;
                   Regs p = r, q = r;
                   p[3] = S, p[5] = T;
                   q[3] = T, q[5] = S;
                   if (is_p) return Column{{lay.index(p), m00}, {lay.index(q), m10}};
                   return Column{{lay.index(p), m01}, {lay.index(q), m11}};
                 })});
  return out;
}

std::vector<CircuitFactor> compose_UB(const NormalizedProgram& np) {
  RegisterLayout lay(np);
  const RootedTree& t = np.tree();
  const int X = lay.dims[0], n = np.n(), L = lay.dims[2];
  std::vector<CircuitFactor> out;

  // U_B1: r3 from |0> to the uniform superposition over shared leaves of (r4, r6)
  out.push_back({"U_B1", build_factor(lay, [&](const Regs& r) -> std::optional<Column> {
                   int x1 = t.node_at_slot(r[3]), x2 = t.node_at_slot(r[5]);
                   if (!t.adjacent(x1, x2)) return std::nullopt;
                   auto shared = t.shared_leaves(x1, x2);
                   VectorXd v = VectorXd::Zero(L);
                   for (int f : shared) v[t.leaf_position(f)] = 1.0 / std::sqrt(static_cast<double>(shared.size()));
                   return reflect_register(lay, r, 2, v);
                 })});

  // U_B2: joint (r1, r2) from |0,0> to (|x1,k1> - |x2,k2>)/sqrt2
  out.push_back({"U_B2", build_factor(lay, [&](const Regs& r) -> std::optional<Column> {
                   int x1 = t.node_at_slot(r[3]), x2 = t.node_at_slot(r[5]);
                   if (!t.adjacent(x1, x2)) return std::nullopt;
                   VectorXd v = VectorXd::Zero(static_cast<long>(X) * n);
                   v[r[3] * n + r[4]] += 1.0 / std::sqrt(2.0);
                   v[r[5] * n + r[6]] -= 1.0 / std::sqrt(2.0);
                   VectorXd col = householder_column(v, r[0] * n + r[1]);
                   Column c;
                   Regs w = r;
                   for (int q = 0; q < col.size(); ++q) {
                     if (col[q] == 0.0) continue;
                     w[0] = q / n;
                     w[1] = q % n;
                     c.emplace_back(lay.index(w), col[q]);
                   }
                   return c;
                 })});
  return out;
}

SparseMatrix<double> circuit_product(const std::vector<CircuitFactor>& factors) {
  if (factors.empty()) throw std::invalid_argument("circuit_product needs at least one factor");
  SparseMatrix<double> p = factors.front().op;
  for (std::size_t k = 1; k < factors.size(); ++k) p = SparseMatrix<double>(factors[k].op * p);
  return p;
}

double CircuitCheck::max_orthogonality() const {
  double m = 0.0;
  for (const auto& [name, dev] : orthogonality) m = std::max(m, dev);
  return m;
}

CircuitCheck verify_circuits(const NormalizedProgram& np) {
  RegisterLayout lay(np);
  const RootedTree& t = np.tree();
  CircuitCheck chk;
  auto ua = compose_UA(np);
  auto ub = compose_UB(np);
  for (const auto* fs : {&ua, &ub})
    for (const auto& f : *fs)
      chk.orthogonality.emplace_back(f.name, max_identity_dev(SparseMatrix<double>(f.op.transpose()) * f.op));

  auto j_regs = [&](const JIndex& j) {
    return std::array<int, 4>{t.slot(j.x1), j.k1, t.slot(j.x2), j.k2};
  };
  auto apply = [](const std::vector<CircuitFactor>& fs, long start, long total) {
    Eigen::SparseVector<double> v(total);
    v.insert(start) = 1.0;
    for (const auto& f : fs) v = f.op * v;
    return v;
  };

  const auto& I = np.I();
  const auto& J = np.J();
  for (std::size_t i = 0; i < I.size(); ++i) {
    Regs r0{t.slot(I[i].x), I[i].k, t.leaf_position(I[i].f), 0, 0, 0, 0};
    Eigen::SparseVector<double> got = apply(ua, lay.index(r0), lay.total);
    Eigen::SparseVector<double> expect(lay.total);
    auto a = build_a_vector(np, static_cast<int>(i));
    for (Eigen::SparseVector<double>::InnerIterator it(a); it; ++it) {
      auto jr = j_regs(J[it.index()]);
      Regs r = r0;
      for (int q = 0; q < 4; ++q) r[3 + q] = jr[q];
      expect.coeffRef(lay.index(r)) += it.value();
    }
    Eigen::SparseVector<double> d = got - expect;
    for (Eigen::SparseVector<double>::InnerIterator it(d); it; ++it)
      chk.ua_column_dev = std::max(chk.ua_column_dev, std::abs(it.value()));
  }

  for (std::size_t j = 0; j < J.size(); ++j) {
    auto jr = j_regs(J[j]);
    Regs r0{0, 0, 0, jr[0], jr[1], jr[2], jr[3]};
    Eigen::SparseVector<double> got = apply(ub, lay.index(r0), lay.total);
    Eigen::SparseVector<double> expect(lay.total);
    auto b = build_b_vector(np, static_cast<int>(j));
    for (Eigen::SparseVector<double>::InnerIterator it(b); it; ++it) {
      const IIndex& ii = I[it.index()];
      Regs r = r0;
      r[0] = t.slot(ii.x), r[1] = ii.k, r[2] = t.leaf_position(ii.f);
      expect.coeffRef(lay.index(r)) += it.value();
    }
    Eigen::SparseVector<double> d = got - expect;
    for (Eigen::SparseVector<double>::InnerIterator it(d); it; ++it)
      chk.ub_column_dev = std::max(chk.ub_column_dev, std::abs(it.value()));

    // U_B2 alone on the zero (r1, r2) register
    Eigen::SparseVector<double> z(lay.total);
    z.insert(lay.index(r0)) = 1.0;
    Eigen::SparseVector<double> img = ub[1].op * z;
    Eigen::SparseVector<double> want(lay.total);
    Regs p = r0, q = r0;
    p[0] = jr[0], p[1] = jr[1];
    q[0] = jr[2], q[1] = jr[3];
    want.coeffRef(lay.index(p)) += 1.0 / std::sqrt(2.0);
    want.coeffRef(lay.index(q)) -= 1.0 / std::sqrt(2.0);
    Eigen::SparseVector<double> dz = img - want;
    for (Eigen::SparseVector<double>::InnerIterator it(dz); it; ++it)
      chk.ub2_zero_dev = std::max(chk.ub2_zero_dev, std::abs(it.value()));
  }

  // Q is the identity on every basis state outside the special plane
  const SparseMatrix<double>& qop = ua.back().op;
  const int S = t.slot(kSource), T = t.slot(kSink);
  auto in_plane = [&](long idx) {
    Regs r = lay.decode(idx);
    return r[4] == 0 && r[6] == 0 && ((r[3] == S && r[5] == T) || (r[3] == T && r[5] == S));
  };
  for (int c = 0; c < qop.outerSize(); ++c) {
    if (in_plane(c)) continue;
    for (SparseMatrix<double>::InnerIterator it(qop, c); it; ++it) {
      double target = it.row() == c ? 1.0 : 0.0;
      chk.q_outside_dev = std::max(chk.q_outside_dev, std::abs(it.value() - target));
    }
  }
  return chk;
}

}  // namespace treespan
