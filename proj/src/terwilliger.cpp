#include "amlab/terwilliger.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <random>

namespace amlab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Orthonormal basis of the column span, rank decided on the Gram spectrum.
MatrixXd orth(const MatrixXd& M, double tol) {
  if (M.cols() == 0) return MatrixXd(M.rows(), 0);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(M.transpose() * M);
  const VectorXd& ev = es.eigenvalues();
  double top = std::max(ev.maxCoeff(), 1.0);
  std::vector<int> keep;
  for (int k = static_cast<int>(ev.size()) - 1; k >= 0; --k) {
    if (ev(k) > tol * top) keep.push_back(k);
  }
  MatrixXd out(M.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.col(c) = M * es.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
  }
  // One re-orthogonalization pass against round-off.
  Eigen::HouseholderQR<MatrixXd> qr(out);
  MatrixXd q = qr.householderQ() * MatrixXd::Identity(out.rows(), out.cols());
  return q;
}

MatrixXd hcat(const std::vector<const MatrixXd*>& parts, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (auto* p : parts) cols += p->cols();
  MatrixXd out(rows, cols);
  Eigen::Index c = 0;
  for (auto* p : parts) {
    out.middleCols(c, p->cols()) = *p;
    c += p->cols();
  }
  return out;
}

// Distance of span(U) from span(V) for orthonormal U, V: ||U - V V^T U||.
double containment_residual(const MatrixXd& U, const MatrixXd& V) {
  if (U.cols() == 0) return 0;
  if (V.cols() == 0) return U.norm();
  return (U - V * (V.transpose() * U)).norm();
}

int shell_of_column(const DenseOperatorSet& ops, const VectorXd& col) {
  int best = 0;
  double best_norm = -1;
  std::vector<double> mass(ops.D() + 1, 0.0);
  for (int y = 0; y < ops.n(); ++y) mass[ops.shell()[y]] += col(y) * col(y);
  for (int i = 0; i <= ops.D(); ++i) {
    if (mass[i] > best_norm) {
      best_norm = mass[i];
      best = i;
    }
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

DenseOperatorSet DenseOperatorSet::build(SchemePtr scheme, VertexId x, const Budget& budget) {
  if (!scheme->addressable()) throw Error(ErrorCode::Budget, scheme->name() + " is too large for dense work");
  const std::uint64_t n = scheme->size();
  if (n > budget.dense_cap) {
    throw Error(ErrorCode::Budget, scheme->name() + " has " + std::to_string(n) + " vertices, above the dense cap of " +
                                       std::to_string(budget.dense_cap));
  }
  if (x >= n) throw Error(ErrorCode::Domain, "base vertex outside the scheme");
  DenseOperatorSet ops;
  ops.scheme_ = scheme;
  ops.base_ = x;
  ops.n_ = static_cast<int>(n);
  const int D = scheme->classes();
  std::vector<Packed> packed(n);
  for (VertexId v = 0; v < n; ++v) packed[v] = scheme->pack_id(v);
  ops.table_.resize(n * n);
  for (std::uint64_t y = 0; y < n; ++y) {
    for (std::uint64_t z = 0; z < n; ++z) {
      ops.table_[y * n + z] = static_cast<std::uint8_t>(scheme->distance_packed(packed[y], packed[z]));
    }
  }
  ops.shell_.resize(n);
  ops.members_.assign(D + 1, {});
  for (int y = 0; y < ops.n_; ++y) {
    ops.shell_[y] = ops.dist(static_cast<int>(x), y);
    ops.members_[ops.shell_[y]].push_back(y);
  }
  const double order = static_cast<double>(n);
  ops.qcoef_.assign(D + 1, std::vector<double>(D + 1));
  for (int j = 0; j <= D; ++j) {
    for (int i = 0; i <= D; ++i) ops.qcoef_[j][i] = scheme->Q()[j][i].get_d() / order;
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (int y = 0; y < ops.n_; ++y) {
    for (int z = 0; z < ops.n_; ++z) {
      if (ops.dist(y, z) == 1) trips.emplace_back(y, z, 1.0);
    }
  }
  ops.A1_.resize(ops.n_, ops.n_);
  ops.A1_.setFromTriplets(trips.begin(), trips.end());
  ops.A1star_.resize(ops.n_);
  for (int y = 0; y < ops.n_; ++y) ops.A1star_(y) = order * ops.qcoef_[D >= 1 ? 1 : 0][ops.shell_[y]];
  return ops;
}

MatrixXd DenseOperatorSet::distance_function(const std::vector<double>& f) const {
  MatrixXd M(n_, n_);
  for (int z = 0; z < n_; ++z) {
    for (int y = 0; y < n_; ++y) M(y, z) = f[dist(y, z)];
  }
  return M;
}

MatrixXd DenseOperatorSet::A(int i) const {
  if (i < 0 || i > D()) throw Error(ErrorCode::Domain, "relation index out of range");
  std::vector<double> f(D() + 1, 0.0);
  f[i] = 1.0;
  return distance_function(f);
}

MatrixXd DenseOperatorSet::E(int j) const {
  if (j < 0 || j > D()) throw Error(ErrorCode::Domain, "idempotent index out of range");
  return distance_function(qcoef_[j]);
}

VectorXd DenseOperatorSet::dual_idempotent(int i) const {
  VectorXd d = VectorXd::Zero(n_);
  for (int y : members_.at(i)) d(y) = 1.0;
  return d;
}

double DenseOperatorSet::dual_eigenvalue(int i) const { return static_cast<double>(n_) * qcoef_[1][i]; }

std::vector<MatrixXd> DenseOperatorSet::apply_all_A(const MatrixXd& M) const {
  const int D1 = D() + 1;
  const Eigen::Index c = M.cols();
  MatrixXd Mt = M.transpose();
  std::vector<MatrixXd> outT(D1, MatrixXd::Zero(c, n_));
  for (int y = 0; y < n_; ++y) {
    const std::uint8_t* row = &table_[static_cast<std::size_t>(y) * n_];
    for (int z = 0; z < n_; ++z) outT[row[z]].col(y) += Mt.col(z);
  }
  std::vector<MatrixXd> out(D1);
  for (int i = 0; i < D1; ++i) out[i] = outT[i].transpose();
  return out;
}

std::vector<MatrixXd> DenseOperatorSet::apply_all_E(const MatrixXd& M) const {
  std::vector<MatrixXd> AM = apply_all_A(M);
  const int D1 = D() + 1;
  std::vector<MatrixXd> out(D1, MatrixXd::Zero(M.rows(), M.cols()));
  for (int j = 0; j < D1; ++j) {
    for (int i = 0; i < D1; ++i) out[j] += qcoef_[j][i] * AM[i];
  }
  return out;
}

VectorXd dense_vector(const DenseOperatorSet& ops, const std::map<VertexId, Rational>& entries) {
  VectorXd v = VectorXd::Zero(ops.n());
  for (const auto& [id, value] : entries) {
    if (id >= static_cast<VertexId>(ops.n())) throw Error(ErrorCode::Domain, "vertex outside the scheme");
    v(static_cast<Eigen::Index>(id)) = value.get_d();
  }
  return v;
}

ModuleSignature signature(const IrreducibleModuleRecord& m) {
  return {m.r, m.dual_r, m.d, m.dual_d, m.thin, m.dual_thin, m.shell_dims, m.eigen_dims};
}

// ---------------------------------------------------------------------------

MatrixXd generate_module(const DenseOperatorSet& ops, const VectorXd& v, double tol) {
  const int D = ops.D();
  const auto& members = ops.shell_members();
  std::vector<std::vector<VectorXd>> basis(D + 1);
  std::deque<std::pair<int, int>> queue;  // (shell, index into basis[shell])

  auto add = [&](VectorXd u, int i) {
    double scale = u.norm();
    if (scale == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
      for (const VectorXd& b : basis[i]) u -= b.dot(u) * b;
    }
    double res = u.norm();
    if (res <= tol * std::max(1.0, scale)) return;
    basis[i].push_back(u / res);
    queue.emplace_back(i, static_cast<int>(basis[i].size()) - 1);
  };
  auto split_add = [&](const VectorXd& w, int lo, int hi) {
    for (int i = std::max(lo, 0); i <= std::min(hi, D); ++i) {
      VectorXd part = VectorXd::Zero(ops.n());
      for (int y : members[i]) part(y) = w(y);
      add(std::move(part), i);
    }
  };

  split_add(v, 0, D);
  std::size_t total = 0;
  while (!queue.empty()) {
    auto [i, k] = queue.front();
    queue.pop_front();
    VectorXd w = ops.A1() * basis[i][k];
    split_add(w, i - 1, i + 1);
    total = 0;
    for (const auto& b : basis) total += b.size();
    if (total > static_cast<std::size_t>(ops.n())) {
      throw Error(ErrorCode::Certificate, "module generation exceeded |X| vectors; tolerance too small");
    }
  }
  total = 0;
  for (const auto& b : basis) total += b.size();
  MatrixXd out(ops.n(), static_cast<Eigen::Index>(total));
  Eigen::Index c = 0;
  for (const auto& shell : basis) {
    for (const VectorXd& b : shell) out.col(c++) = b;
  }
  return out;
}

int commutant_dimension(const DenseOperatorSet& ops, const MatrixXd& basis, double tol) {
  const Eigen::Index m = basis.cols();
  if (m == 0) return 0;
  std::vector<MatrixXd> gens;
  gens.push_back(basis.transpose() * (ops.A1() * basis));
  for (int i = 0; i <= ops.D(); ++i) {
    VectorXd d = ops.dual_idempotent(i);
    gens.push_back(basis.transpose() * d.asDiagonal() * basis);
  }
  const Eigen::Index m2 = m * m;
  MatrixXd gram = MatrixXd::Zero(m2, m2);
  MatrixXd I = MatrixXd::Identity(m, m);
  for (const MatrixXd& G : gens) {
    // vec(G X - X G) = (I (x) G - G^T (x) I) vec(X)
    MatrixXd K(m2, m2);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        K.block(a * m, b * m, m, m) = I(a, b) * G - G(b, a) * I;
      }
    }
    gram += K.transpose() * K;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
  double top = std::max(es.eigenvalues().maxCoeff(), 1.0);
  int nullity = 0;
  for (Eigen::Index k = 0; k < m2; ++k) nullity += es.eigenvalues()(k) <= std::sqrt(tol) * 1e-4 * top;
  return nullity;
}

namespace {

void fill_record(const DenseOperatorSet& ops, IrreducibleModuleRecord& rec) {
  const int D = ops.D();
  rec.shell_dims.assign(D + 1, 0);
  for (Eigen::Index c = 0; c < rec.basis.cols(); ++c) ++rec.shell_dims[shell_of_column(ops, rec.basis.col(c))];
  std::vector<MatrixXd> EB = ops.apply_all_E(rec.basis);
  rec.eigen_dims.assign(D + 1, 0);
  for (int j = 0; j <= D; ++j) {
    double tr = EB[j].squaredNorm();
    double rounded = std::round(tr);
    if (std::abs(tr - rounded) > 1e-6) {
      throw Error(ErrorCode::Certificate, "dim E_" + std::to_string(j) + "W = " + std::to_string(tr) +
                                               " is not an integer; module is not E-invariant");
    }
    rec.eigen_dims[j] = static_cast<int>(rounded);
  }
  auto span = [](const std::vector<int>& dims, int& lo, int& width) {
    lo = -1;
    int hi = -1;
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
      if (dims[i] > 0) {
        if (lo < 0) lo = i;
        hi = i;
      }
    }
    width = hi - lo;
  };
  span(rec.shell_dims, rec.r, rec.d);
  span(rec.eigen_dims, rec.dual_r, rec.dual_d);
  rec.eta = rec.r + rec.dual_r + rec.d - D;
  rec.thin = std::all_of(rec.shell_dims.begin(), rec.shell_dims.end(), [](int k) { return k <= 1; });
  rec.dual_thin = std::all_of(rec.eigen_dims.begin(), rec.eigen_dims.end(), [](int k) { return k <= 1; });
}

}  // namespace

Decomposition decompose_modules(const DenseOperatorSet& ops, const LabOptions& opt) {
  const int D = ops.D();
  const int n = ops.n();
  const auto& members = ops.shell_members();
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Decomposition out;
  out.seed = opt.seed;
  MatrixXd found(n, 0);

  auto random_function = [&]() {
    std::vector<double> alpha(D + 1);
    for (double& a : alpha) a = gauss(rng);
    std::vector<double> f(D + 1, 0.0);
    for (int j = 0; j <= D; ++j) {
      for (int i = 0; i <= D; ++i) f[i] += alpha[j] * ops.idempotent_coefficient(j, i);
    }
    return f;
  };
  auto random_diagonal = [&]() {
    std::vector<double> gamma(D + 1);
    for (double& g : gamma) g = gauss(rng);
    VectorXd d(n);
    for (int y = 0; y < n; ++y) d(y) = gamma[ops.shell()[y]];
    return d;
  };

  for (int r = 0; r <= D; ++r) {
    const std::vector<int>& shell = members[r];
    const int nr = static_cast<int>(shell.size());
    while (true) {
      // Shell-r rows of the modules found so far.
      MatrixXd Fr(nr, found.cols());
      for (int a = 0; a < nr; ++a) Fr.row(a) = found.row(shell[a]);
      MatrixXd proj = MatrixXd::Identity(nr, nr) - Fr * Fr.transpose();
      Eigen::SelfAdjointEigenSolver<MatrixXd> pes(proj);
      std::vector<int> keep;
      for (int k = 0; k < nr; ++k) {
        if (pes.eigenvalues()(k) > 0.5) keep.push_back(k);
      }
      if (keep.empty()) break;
      const int s = static_cast<int>(keep.size());
      MatrixXd S(nr, s);
      for (int c = 0; c < s; ++c) S.col(c) = pes.eigenvectors().col(keep[c]);

      // Random symmetric element of E_r^* T E_r^*, compressed to S.
      MatrixXd Sfull = MatrixXd::Zero(n, s);
      for (int a = 0; a < nr; ++a) Sfull.row(shell[a]) = S.row(a);
      MatrixXd M1 = ops.distance_function(random_function());
      MatrixXd M2 = ops.distance_function(random_function());
      VectorXd d1 = random_diagonal();
      VectorXd d2 = random_diagonal();
      MatrixXd Y1 = M1 * Sfull;
      MatrixXd Y2 = M2 * (d1.asDiagonal() * Y1);
      MatrixXd G = Sfull.transpose() * Y1 + Y1.transpose() * d2.asDiagonal() * Y1 + Y1.transpose() * d1.asDiagonal() * Y2;
      G = 0.5 * (G + G.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<MatrixXd> ges(G);

      bool failed = false;
      for (int c = 0; c < s; ++c) {
        VectorXd local = S * ges.eigenvectors().col(c);
        MatrixXd FrNow(nr, found.cols());
        for (int a = 0; a < nr; ++a) FrNow.row(a) = found.row(shell[a]);
        local -= FrNow * (FrNow.transpose() * local);
        local -= FrNow * (FrNow.transpose() * local);
        double norm = local.norm();
        if (norm < 1e-3) continue;
        VectorXd v = VectorXd::Zero(n);
        for (int a = 0; a < nr; ++a) v(shell[a]) = local(a) / norm;

        MatrixXd B = generate_module(ops, v, opt.tol);
        bool ok = commutant_dimension(ops, B, opt.tol) == 1;
        if (ok && found.cols() > 0) ok = (found.transpose() * B).norm() < 1e-6;
        for (Eigen::Index k = 0; ok && k < B.cols(); ++k) {
          ok = generate_module(ops, B.col(k), opt.tol).cols() == B.cols();
        }
        if (!ok) {
          if (++out.restarts > opt.max_restarts) {
            throw Error(ErrorCode::Certificate,
                        "could not certify an irreducible module at endpoint " + std::to_string(r) + " of " +
                            ops.scheme().name() + " (generated subspace of dimension " + std::to_string(B.cols()) +
                            ") after " + std::to_string(opt.max_restarts) + " restarts");
          }
          failed = true;
          break;
        }
        IrreducibleModuleRecord rec;
        rec.basis = B;
        fill_record(ops, rec);
        out.modules.push_back(std::move(rec));
        MatrixXd grown(n, found.cols() + B.cols());
        grown << found, B;
        found = std::move(grown);
      }
      (void)failed;
    }
  }

  if (found.cols() != n) {
    throw Error(ErrorCode::Certificate, "module dimensions sum to " + std::to_string(found.cols()) + ", expected " +
                                             std::to_string(n));
  }
  for (int j = 0; j <= D; ++j) {
    long total = 0;
    for (const auto& m : out.modules) total += m.eigen_dims[j];
    if (Integer(total) != ops.scheme().multiplicities()[j]) {
      throw Error(ErrorCode::Certificate, "dim E_" + std::to_string(j) + "W summed over modules is " +
                                               std::to_string(total) + ", expected m_" + std::to_string(j));
    }
  }
  std::stable_sort(out.modules.begin(), out.modules.end(),
                   [](const IrreducibleModuleRecord& a, const IrreducibleModuleRecord& b) {
                     return signature(a) < signature(b);
                   });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ModuleBlocks {
  std::vector<MatrixXd> shells;  // orthonormal basis of E_i^* W
  std::vector<MatrixXd> eigen;   // orthonormal basis of E_j W
};

ModuleBlocks module_blocks(const DenseOperatorSet& ops, const IrreducibleModuleRecord& m) {
  const int D = ops.D();
  ModuleBlocks blocks;
  blocks.shells.assign(D + 1, MatrixXd(ops.n(), 0));
  std::vector<std::vector<Eigen::Index>> cols(D + 1);
  for (Eigen::Index c = 0; c < m.basis.cols(); ++c) cols[shell_of_column(ops, m.basis.col(c))].push_back(c);
  for (int i = 0; i <= D; ++i) {
    MatrixXd b(ops.n(), static_cast<Eigen::Index>(cols[i].size()));
    for (std::size_t k = 0; k < cols[i].size(); ++k) b.col(k) = m.basis.col(cols[i][k]);
    blocks.shells[i] = b;
  }
  std::vector<MatrixXd> EB = ops.apply_all_E(m.basis);
  blocks.eigen.resize(D + 1);
  for (int j = 0; j <= D; ++j) blocks.eigen[j] = orth(EB[j], 1e-6);
  return blocks;
}

MatrixXd stack_range(const std::vector<MatrixXd>& blocks, int lo, int hi, Eigen::Index rows) {
  std::vector<const MatrixXd*> parts;
  for (int k = std::max(lo, 0); k <= std::min(hi, static_cast<int>(blocks.size()) - 1); ++k) parts.push_back(&blocks[k]);
  return hcat(parts, rows);
}

void check_interval(const std::vector<int>& dims, const std::string& what, std::size_t index, LabVerdict& v) {
  int lo = -1, hi = -1;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (dims[i] > 0) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  for (int i = lo; i <= hi; ++i) {
    if (dims[i] == 0) {
      v.pass = false;
      v.failures.push_back("module " + std::to_string(index) + ": " + what + " is not an interval");
      return;
    }
  }
}

}  // namespace

LabVerdict verify_tridiagonal(const DenseOperatorSet& ops, const std::vector<IrreducibleModuleRecord>& modules,
                              const LabOptions& opt) {
  LabVerdict v;
  const int D = ops.D();
  const Eigen::Index n = ops.n();
  for (std::size_t idx = 0; idx < modules.size(); ++idx) {
    const auto& m = modules[idx];
    ModuleBlocks blocks = module_blocks(ops, m);
    check_interval(m.shell_dims, "support", idx, v);
    check_interval(m.eigen_dims, "dual support", idx, v);

    for (int i = m.r; i <= m.r + m.d; ++i) {
      MatrixXd Y = ops.A1() * blocks.shells[i];
      MatrixXd target = stack_range(blocks.shells, i - 1, i + 1, n);
      double res = (Y - target * (target.transpose() * Y)).norm() / std::max(1.0, Y.norm());
      v.max_residual = std::max(v.max_residual, res);
      if (i - 1 >= m.r) v.min_required_norm = std::min(v.min_required_norm, (blocks.shells[i - 1].transpose() * Y).norm());
      if (i + 1 <= m.r + m.d) v.min_required_norm = std::min(v.min_required_norm, (blocks.shells[i + 1].transpose() * Y).norm());
    }
    for (int j = m.dual_r; j <= m.dual_r + m.dual_d; ++j) {
      MatrixXd Y = ops.dual_adjacency().asDiagonal() * blocks.eigen[j];
      MatrixXd target = stack_range(blocks.eigen, j - 1, j + 1, n);
      double res = (Y - target * (target.transpose() * Y)).norm() / std::max(1.0, Y.norm());
      v.max_residual = std::max(v.max_residual, res);
      if (j - 1 >= m.dual_r) v.min_required_norm = std::min(v.min_required_norm, (blocks.eigen[j - 1].transpose() * Y).norm());
      if (j + 1 <= m.dual_r + m.dual_d) v.min_required_norm = std::min(v.min_required_norm, (blocks.eigen[j + 1].transpose() * Y).norm());
    }
    (void)D;
  }
  if (v.max_residual > opt.tol) {
    v.pass = false;
    v.failures.push_back("tridiagonal containment residual " + std::to_string(v.max_residual));
  }
  if (v.min_required_norm <= std::sqrt(opt.tol)) {
    v.pass = false;
    v.failures.push_back("an off-diagonal block vanishes inside a support");
  }
  return v;
}

ITTVerdict verify_itt(const DenseOperatorSet& ops, const std::vector<IrreducibleModuleRecord>& modules,
                      const LabOptions& opt) {
  ITTVerdict v;
  const Eigen::Index n = ops.n();
  for (std::size_t idx = 0; idx < modules.size(); ++idx) {
    const auto& m = modules[idx];
    std::vector<int> diag;
    if (m.d != m.dual_d) {
      v.pass = false;
      v.failures.push_back("module " + std::to_string(idx) + ": diameter differs from dual diameter");
      v.diagonal_dims.push_back(diag);
      continue;
    }
    ModuleBlocks blocks = module_blocks(ops, m);
    const int d = m.d;
    auto intersection = [&](const MatrixXd& U1, const MatrixXd& U2, double& top) {
      if (U1.cols() == 0 || U2.cols() == 0) {
        top = 0;
        return 0;
      }
      Eigen::JacobiSVD<MatrixXd> svd(U1.transpose() * U2);
      top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
      int count = 0;
      for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) count += svd.singularValues()(k) > 1.0 - opt.tol;
      return count;
    };
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) {
        if (i > j) continue;
        MatrixXd low_shell = stack_range(blocks.shells, m.r, m.r + i, n);
        MatrixXd high_eigen = stack_range(blocks.eigen, m.dual_r + j, m.dual_r + d, n);
        MatrixXd low_eigen = stack_range(blocks.eigen, m.dual_r, m.dual_r + i, n);
        MatrixXd high_shell = stack_range(blocks.shells, m.r + j, m.r + d, n);
        double c1 = 0, c2 = 0;
        int k1 = intersection(low_shell, high_eigen, c1);
        int k2 = intersection(low_eigen, high_shell, c2);
        if (i == j) {
          diag.push_back(k1);
          continue;
        }
        v.max_cosine = std::max({v.max_cosine, c1, c2});
        if (k1 || k2) {
          v.pass = false;
          v.failures.push_back("module " + std::to_string(idx) + ": W_" + std::to_string(i) + std::to_string(j) +
                               " is nonzero");
        }
      }
    }
    v.diagonal_dims.push_back(diag);
  }
  v.max_residual = v.max_cosine;
  return v;
}

SplitReport split_decomposition(const DenseOperatorSet& ops, const std::vector<IrreducibleModuleRecord>& modules,
                                const LabOptions& opt) {
  const int D = ops.D();
  const int n = ops.n();
  SplitReport rep;
  rep.dims.assign(D + 1, std::vector<int>(D + 1, 0));
  rep.tilde_dims.assign(D + 1, std::vector<int>(D + 1, 0));
  rep.bases.assign(D + 1, std::vector<MatrixXd>(D + 1));
  LabVerdict& v = rep.verdict;

  // V_ij = vectors supported on the ball of radius i fixed by E_0 + ... + E_j.
  std::vector<double> partial(D + 1, 0.0);
  for (int j = 0; j <= D; ++j) {
    for (int i = 0; i <= D; ++i) partial[i] += ops.idempotent_coefficient(j, i);
    std::vector<int> ball;
    for (int i = 0; i <= D; ++i) {
      ball.insert(ball.end(), ops.shell_members()[i].begin(), ops.shell_members()[i].end());
      const int b = static_cast<int>(ball.size());
      MatrixXd G(b, b);
      for (int p = 0; p < b; ++p) {
        for (int q = 0; q < b; ++q) G(p, q) = (p == q ? 1.0 : 0.0) - partial[ops.dist(ball[p], ball[q])];
      }
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(G);
      std::vector<int> null;
      for (int k = 0; k < b; ++k) {
        if (es.eigenvalues()(k) < opt.tol) null.push_back(k);
      }
      MatrixXd basis = MatrixXd::Zero(n, static_cast<Eigen::Index>(null.size()));
      for (std::size_t c = 0; c < null.size(); ++c) {
        for (int p = 0; p < b; ++p) basis(ball[p], c) = es.eigenvectors()(p, null[c]);
      }
      rep.bases[i][j] = basis;
      rep.dims[i][j] = static_cast<int>(null.size());
    }
  }

  std::vector<std::vector<MatrixXd>> tilde(D + 1, std::vector<MatrixXd>(D + 1));
  int total = 0;
  for (int i = 0; i <= D; ++i) {
    for (int j = 0; j <= D; ++j) {
      const MatrixXd& Vij = rep.bases[i][j];
      std::vector<const MatrixXd*> parts;
      if (j > 0) parts.push_back(&rep.bases[i][j - 1]);
      if (i > 0) parts.push_back(&rep.bases[i - 1][j]);
      MatrixXd lower = orth(hcat(parts, n), 1e-10);
      if (Vij.cols() == 0) {
        tilde[i][j] = MatrixXd(n, 0);
      } else {
        MatrixXd rest = Vij - lower * (lower.transpose() * Vij);
        tilde[i][j] = orth(rest, 1e-10);
      }
      rep.tilde_dims[i][j] = static_cast<int>(tilde[i][j].cols());
      total += rep.tilde_dims[i][j];
      if (rep.dims[i][j] != static_cast<int>(lower.cols()) + rep.tilde_dims[i][j]) {
        v.pass = false;
        v.failures.push_back("V_" + std::to_string(i) + "," + std::to_string(j) + " does not contain its predecessors");
      }
      if (i + j < D && (rep.dims[i][j] != 0 || rep.tilde_dims[i][j] != 0)) {
        v.pass = false;
        v.failures.push_back("V_" + std::to_string(i) + "," + std::to_string(j) + " is nonzero below the antidiagonal");
      }
    }
  }
  if (total != n) {
    v.pass = false;
    v.failures.push_back("split pieces have total dimension " + std::to_string(total));
  }

  // Displacement decomposition from the modules.
  rep.displacement_dims.assign(D + 1, 0);
  std::vector<std::vector<const MatrixXd*>> by_eta(D + 1);
  for (const auto& m : modules) {
    if (m.eta < 0 || m.eta > D) {
      v.pass = false;
      v.failures.push_back("displacement out of range");
      continue;
    }
    rep.displacement_dims[m.eta] += m.dim();
    by_eta[m.eta].push_back(&m.basis);
  }
  auto record = [&](double res, const std::string& what) {
    v.max_residual = std::max(v.max_residual, res);
    if (res > opt.tol) {
      v.pass = false;
      v.failures.push_back(what + " residual " + std::to_string(res));
    }
  };
  for (int eta = 0; eta <= D; ++eta) {
    MatrixXd Veta = orth(hcat(by_eta[eta], n), 1e-10);
    std::vector<const MatrixXd*> parts;
    for (int i = 0; i <= D; ++i) {
      int j = D + eta - i;
      if (j >= 0 && j <= D) parts.push_back(&tilde[i][j]);
    }
    MatrixXd U = orth(hcat(parts, n), 1e-10);
    if (U.cols() != Veta.cols()) {
      v.pass = false;
      v.failures.push_back("V_eta for eta = " + std::to_string(eta) + " has dimension " + std::to_string(Veta.cols()) +
                           " but its split pieces span " + std::to_string(U.cols()));
    }
    record(containment_residual(U, Veta), "V_eta reconstruction (eta = " + std::to_string(eta) + ")");
  }

  // Partial-sum identities for V_0.
  MatrixXd V0 = orth(hcat(by_eta[0], n), 1e-10);
  {
    std::vector<const MatrixXd*> anti;
    int anti_dim = 0;
    for (int i = 0; i <= D; ++i) {
      anti.push_back(&rep.bases[i][D - i]);
      anti_dim += rep.dims[i][D - i];
    }
    if (anti_dim != V0.cols()) {
      v.pass = false;
      v.failures.push_back("V_0 is not the direct sum of the antidiagonal V_{i,D-i}");
    }
    record(containment_residual(orth(hcat(anti, n), 1e-10), V0), "antidiagonal sum");
  }
  std::vector<MatrixXd> shellV0(D + 1), eigenV0;
  for (int k = 0; k <= D; ++k) {
    MatrixXd part = V0;
    VectorXd mask = ops.dual_idempotent(k);
    shellV0[k] = mask.asDiagonal() * part;
  }
  eigenV0 = ops.apply_all_E(V0);
  for (int i = 0; i <= D; ++i) {
    std::vector<const MatrixXd*> left, right;
    for (int k = 0; k <= i; ++k) {
      left.push_back(&rep.bases[k][D - k]);
      right.push_back(&shellV0[k]);
    }
    MatrixXd L = orth(hcat(left, n), 1e-10);
    MatrixXd R = orth(hcat(right, n), 1e-10);
    if (L.cols() != R.cols()) {
      v.pass = false;
      v.failures.push_back("shell partial sums of V_0 differ in dimension at i = " + std::to_string(i));
    }
    record(containment_residual(L, R), "shell partial sum i = " + std::to_string(i));
    left.clear();
    right.clear();
    for (int l = 0; l <= i; ++l) {
      left.push_back(&rep.bases[D - l][l]);
      right.push_back(&eigenV0[l]);
    }
    L = orth(hcat(left, n), 1e-10);
    R = orth(hcat(right, n), 1e-10);
    if (L.cols() != R.cols()) {
      v.pass = false;
      v.failures.push_back("eigenspace partial sums of V_0 differ in dimension at j = " + std::to_string(i));
    }
    record(containment_residual(L, R), "eigenspace partial sum j = " + std::to_string(i));
  }
  return rep;
}

// ---------------------------------------------------------------------------

OrthogonalityVerdict module_orthogonality_test(const DenseOperatorSet& ops,
                                               const std::vector<IrreducibleModuleRecord>& modules,
                                               const VectorXd& chi, int t, OrthogonalitySide side,
                                               const SplitReport* split, const LabOptions& opt) {
  const int D = ops.D();
  const int n = ops.n();
  const double tol = 10 * opt.tol;
  OrthogonalityVerdict out;

  // Module side.
  const double chi_scale = std::max(1.0, chi.norm());
  int first = D + 1;
  for (const auto& m : modules) {
    int key = 0;
    bool relevant = false;
    switch (side) {
      case OrthogonalitySide::P: key = m.r; relevant = m.r >= 1; break;
      case OrthogonalitySide::Q: key = m.dual_r; relevant = m.dual_r >= 1; break;
      case OrthogonalitySide::PQ: key = m.r; relevant = m.r >= 1 && m.eta == 0; break;
    }
    if (!relevant) continue;
    if ((m.basis.transpose() * chi).norm() > tol * chi_scale) first = std::min(first, key);
  }
  out.module_level = first - 1 > D ? D : first - 1;

  // Operator side: images of chi under the word list.
  std::vector<VectorXd> images;
  std::vector<std::string> names;
  std::function<void(const VectorXd&, const std::string&, int)> words = [&](const VectorXd& w, const std::string& name,
                                                                             int depth) {
    if (depth == 3) return;
    VectorXd a = ops.A1() * w;
    VectorXd b = ops.dual_adjacency().cwiseProduct(w);
    images.push_back(a);
    names.push_back("A" + name);
    images.push_back(b);
    names.push_back("A*" + name);
    words(a, "A" + name, depth + 1);
    words(b, "A*" + name, depth + 1);
  };
  images.push_back(chi);
  names.push_back("I");
  words(chi, "", 0);
  MatrixXd chiM = chi;
  std::vector<MatrixXd> Achi = ops.apply_all_A(chiM);
  for (int l = 0; l <= D; ++l) {
    images.push_back(Achi[l].col(0));
    names.push_back("A_" + std::to_string(l));
    for (int k = 0; k <= D; ++k) {
      VectorXd ek = ops.dual_idempotent(k).cwiseProduct(Achi[l].col(0));
      images.push_back(ek);
      names.push_back("E*_" + std::to_string(k) + "A_" + std::to_string(l));
    }
  }
  MatrixXd shellChi(n, D + 1);
  for (int k = 0; k <= D; ++k) {
    shellChi.col(k) = ops.dual_idempotent(k).cwiseProduct(chi);
    images.push_back(shellChi.col(k));
    names.push_back("E*_" + std::to_string(k));
  }
  std::vector<MatrixXd> AshellChi = ops.apply_all_A(shellChi);
  for (int l = 0; l <= D; ++l) {
    for (int k = 0; k <= D; ++k) {
      images.push_back(AshellChi[l].col(k));
      names.push_back("A_" + std::to_string(l) + "E*_" + std::to_string(k));
    }
  }

  MatrixXd F(n, static_cast<Eigen::Index>(images.size()));
  for (std::size_t c = 0; c < images.size(); ++c) F.col(c) = images[c];

  std::vector<int> level(images.size(), D);
  const int x = static_cast<int>(ops.base());
  if (side == OrthogonalitySide::P) {
    for (std::size_t c = 0; c < images.size(); ++c) {
      const VectorXd& f = images[c];
      double scale = std::max(1.0, f.norm());
      for (int i = 1; i <= D; ++i) {
        const auto& mem = ops.shell_members()[i];
        double mean = 0;
        for (int y : mem) mean += f(y);
        mean /= static_cast<double>(mem.size());
        double dev = 0;
        for (int y : mem) dev += (f(y) - mean) * (f(y) - mean);
        if (std::sqrt(dev) > tol * scale) {
          level[c] = i - 1;
          break;
        }
      }
    }
  } else if (side == OrthogonalitySide::Q) {
    std::vector<MatrixXd> EF = ops.apply_all_E(F);
    for (int j = 1; j <= D; ++j) {
      VectorXd w(n);
      for (int y = 0; y < n; ++y) w(y) = ops.idempotent_coefficient(j, ops.dist(x, y));
      const double ww = w.squaredNorm();
      for (std::size_t c = 0; c < images.size(); ++c) {
        if (level[c] < j) continue;
        VectorXd u = EF[j].col(c);
        VectorXd res = u - (u.dot(w) / ww) * w;
        if (res.norm() > tol * std::max(1.0, images[c].norm())) level[c] = j - 1;
      }
    }
  } else {
    if (!split) throw Error(ErrorCode::Config, "the displacement-zero test needs the split decomposition");
    const IrreducibleModuleRecord* primary = nullptr;
    for (const auto& m : modules) {
      if (m.r == 0) primary = &m;
    }
    if (!primary) throw Error(ErrorCode::Certificate, "no primary module in the decomposition");
    for (int i = 1; i <= D; ++i) {
      const MatrixXd& Vi = split->bases[i][D - i];
      MatrixXd U = orth(Vi - primary->basis * (primary->basis.transpose() * Vi), 1e-10);
      if (U.cols() == 0) continue;
      MatrixXd proj = U.transpose() * F;
      for (std::size_t c = 0; c < images.size(); ++c) {
        if (level[c] < i) continue;
        if (proj.col(c).norm() > tol * std::max(1.0, images[c].norm())) level[c] = i - 1;
      }
    }
  }
  auto worst = std::min_element(level.begin(), level.end());
  out.operator_level = *worst;
  out.worst_word = names[worst - level.begin()];
  out.module_holds = out.module_level >= t;
  out.operator_holds = out.operator_level >= t;
  out.equivalent = out.module_level == out.operator_level;
  return out;
}

}  // namespace amlab
