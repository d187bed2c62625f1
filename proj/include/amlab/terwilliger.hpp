// Dense Terwilliger-algebra laboratory for small schemes.
//
// Everything here is floating point. Decisions use a relative tolerance and
// are cross-checked against exact integer constraints (total dimension,
// eigenspace multiplicities) so that a bad threshold shows up as an error.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amlab/scheme.hpp"

namespace amlab {

struct LabOptions {
  double tol = 1e-8;
  std::uint64_t seed = 1;
  int max_restarts = 12;
};

/// Operators of T(x). A_i and E_j are materialized on demand from the
/// distance table; A_1 is kept sparse, E_i^* and A_1^* as diagonals.
class DenseOperatorSet {
 public:
  static DenseOperatorSet build(SchemePtr scheme, VertexId x, const Budget& budget = {});

  const Scheme& scheme() const { return *scheme_; }
  const SchemePtr& scheme_ptr() const { return scheme_; }
  VertexId base() const { return base_; }
  int n() const { return n_; }
  int D() const { return scheme_->classes(); }

  int dist(int y, int z) const { return table_[static_cast<std::size_t>(y) * n_ + z]; }
  /// Shell index of every vertex relative to the base vertex.
  const std::vector<int>& shell() const { return shell_; }
  const std::vector<std::vector<int>>& shell_members() const { return members_; }

  Eigen::MatrixXd A(int i) const;
  Eigen::MatrixXd E(int j) const;
  /// Dense matrix with (y,z) entry f[dist(y,z)].
  Eigen::MatrixXd distance_function(const std::vector<double>& f) const;
  const Eigen::SparseMatrix<double>& A1() const { return A1_; }
  Eigen::VectorXd dual_idempotent(int i) const;  // diagonal of E_i^*
  const Eigen::VectorXd& dual_adjacency() const { return A1star_; }  // diagonal of A_1^*
  /// Eigenvalue of A_1^* on E_i^*V, i.e. Q[1][i].
  double dual_eigenvalue(int i) const;
  /// Q[j][i] / |X| as doubles.
  double idempotent_coefficient(int j, int i) const { return qcoef_[j][i]; }

  /// A_i M for every i in one pass over the distance table.
  std::vector<Eigen::MatrixXd> apply_all_A(const Eigen::MatrixXd& M) const;
  /// E_j M for every j.
  std::vector<Eigen::MatrixXd> apply_all_E(const Eigen::MatrixXd& M) const;

 private:
  SchemePtr scheme_;
  VertexId base_ = 0;
  int n_ = 0;
  std::vector<std::uint8_t> table_;
  std::vector<int> shell_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<double>> qcoef_;
  Eigen::SparseMatrix<double> A1_;
  Eigen::VectorXd A1star_;
};

struct IrreducibleModuleRecord {
  Eigen::MatrixXd basis;  // orthonormal columns, shell-homogeneous
  int r = 0, dual_r = 0, d = 0, dual_d = 0, eta = 0;
  bool thin = false, dual_thin = false;
  std::vector<int> shell_dims;  // dim E_i^* W
  std::vector<int> eigen_dims;  // dim E_j W
  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Signature used for isomorphism classing and reproducibility checks.
struct ModuleSignature {
  int r = 0, dual_r = 0, d = 0, dual_d = 0;
  bool thin = false, dual_thin = false;
  std::vector<int> shell_dims, eigen_dims;
  auto operator<=>(const ModuleSignature&) const = default;
};
ModuleSignature signature(const IrreducibleModuleRecord& m);

struct Decomposition {
  std::vector<IrreducibleModuleRecord> modules;
  std::uint64_t seed = 0;
  int restarts = 0;
};

/// Splits V into pairwise orthogonal irreducible T(x)-modules. Throws
/// Certificate when a module cannot be certified irreducible after the
/// allowed restarts, or when the exact dimension checks fail.
Decomposition decompose_modules(const DenseOperatorSet& ops, const LabOptions& opt = {});

/// T-closure of a vector (closure under A_1 and every E_i^*), returned as a
/// shell-homogeneous orthonormal basis.
Eigen::MatrixXd generate_module(const DenseOperatorSet& ops, const Eigen::VectorXd& v, double tol = 1e-8);

/// Dimension of the commutant of T acting on span(basis); 1 for irreducible.
int commutant_dimension(const DenseOperatorSet& ops, const Eigen::MatrixXd& basis, double tol = 1e-8);

struct LabVerdict {
  bool pass = true;
  double max_residual = 0;          // containments that must hold
  double min_required_norm = 1e300; // blocks that must not vanish
  std::vector<std::string> failures;
};

/// A E_i^*W in E_{i-1}^*W + E_i^*W + E_{i+1}^*W and the dual statement, with
/// non-vanishing of the off-diagonal blocks inside the (dual) support and
/// interval supports.
LabVerdict verify_tridiagonal(const DenseOperatorSet& ops, const std::vector<IrreducibleModuleRecord>& modules,
                              const LabOptions& opt = {});

/// W_ij and W_ij^* (i < j) have dimension zero; the verdict residual is the
/// largest principal cosine seen for i < j.
struct ITTVerdict : LabVerdict {
  double max_cosine = 0;
  std::vector<std::vector<int>> diagonal_dims;  // per module: dim W_ii
};
ITTVerdict verify_itt(const DenseOperatorSet& ops, const std::vector<IrreducibleModuleRecord>& modules,
                      const LabOptions& opt = {});

struct SplitReport {
  std::vector<std::vector<int>> dims;        // dim V_ij
  std::vector<std::vector<int>> tilde_dims;  // dim of the complement of V_{i,j-1}+V_{i-1,j} in V_ij
  std::vector<int> displacement_dims;        // dim V_eta from the modules
  std::vector<std::vector<Eigen::MatrixXd>> bases;  // orthonormal basis of V_ij
  LabVerdict verdict;
};

/// Split decomposition compared against the displacement decomposition, with
/// the partial-sum identities for V_0.
SplitReport split_decomposition(const DenseOperatorSet& ops, const std::vector<IrreducibleModuleRecord>& modules,
                                const LabOptions& opt = {});

enum class OrthogonalitySide { P, Q, PQ };

/// Compares the module-level condition against its operator-level
/// counterpart for one vector chi.
/// P:  chi orthogonal to modules with 1 <= r <= t  vs  F chi relative t-codesigns.
/// Q:  chi orthogonal to modules with 1 <= r* <= t vs  F chi relative t-designs.
/// PQ: chi orthogonal to displacement-zero modules with 1 <= r <= t  vs
///     F chi orthogonal to V_{i,D-i} cap (M x^)^perp for 1 <= i <= t.
/// F runs over words of length <= 3 in A_1, A_1^*, plus A_l, A_l E_k^*,
/// E_k^*, E_k^* A_l.
struct OrthogonalityVerdict {
  int module_level = 0;    // largest t for the module condition
  int operator_level = 0;  // largest t for the operator condition
  bool module_holds = false;    // at the requested t
  bool operator_holds = false;  // at the requested t
  bool equivalent = false;      // levels agree
  std::string worst_word;       // word attaining operator_level
};
OrthogonalityVerdict module_orthogonality_test(const DenseOperatorSet& ops,
                                               const std::vector<IrreducibleModuleRecord>& modules,
                                               const Eigen::VectorXd& chi, int t, OrthogonalitySide side,
                                               const SplitReport* split = nullptr, const LabOptions& opt = {});

/// Dense form of a sparse code vector.
Eigen::VectorXd dense_vector(const DenseOperatorSet& ops, const std::map<VertexId, Rational>& entries);

}  // namespace amlab
