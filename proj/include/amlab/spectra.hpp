// Exact distance/dual distributions and code parameters.
//
// Nothing here materializes an |X|-sized object: inner distributions are
// pairwise sums over the support, and every E_j quantity is obtained from
// them through the Q eigenmatrix.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "amlab/scheme.hpp"

namespace amlab {

/// A rational-valued vector on the vertex set, stored sparsely.
class CodeVector {
 public:
  CodeVector(SchemePtr scheme, std::map<VertexId, Rational> entries);

  static CodeVector subset(SchemePtr scheme, const std::vector<VertexId>& members);
  static CodeVector point(SchemePtr scheme, VertexId x);
  /// Materializes every vertex; only sensible for small schemes.
  static CodeVector all_ones(SchemePtr scheme);

  const Scheme& scheme() const { return *scheme_; }
  const SchemePtr& scheme_ptr() const { return scheme_; }
  const std::map<VertexId, Rational>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool is_subset() const { return subset_; }
  Rational value(VertexId id) const;
  std::vector<VertexId> support() const;
  Rational norm_squared() const;

  /// E_k^*(x) chi: chi restricted to the k-th subconstituent of x.
  CodeVector restricted_to_shell(VertexId x, int k) const;

  /// Empty when chi is a code; otherwise the failed clause.
  std::optional<std::string> code_violation() const;
  void require_code() const;

 private:
  SchemePtr scheme_;
  std::map<VertexId, Rational> entries_;
  bool subset_ = true;
};

/// Support in packed form with values grouped into distinct-weight classes,
/// so pairwise loops count integers and multiply rationals only at the end.
struct PackedSupport {
  std::vector<Packed> keys;
  std::vector<std::uint32_t> cls;
  std::vector<Rational> class_value;

  explicit PackedSupport(const CodeVector& chi);
};

struct DistanceDistribution {
  std::vector<Rational> a;  // a_i = <chi, A_i chi>
  std::vector<Rational> b;  // b_j = <chi, E_j chi> = |E_j chi|^2
};

/// Per-base-vertex shell data.
struct BaseProfile {
  VertexId base = 0;
  std::vector<Rational> c;            // c_i = sum of chi over R_i(x)
  std::vector<bool> e;                // e_i = [E_i^* chi != 0]
  std::vector<Rational> square_sum;   // sum of chi(y)^2 over R_i(x)
  std::vector<std::uint64_t> hits;    // support vertices in R_i(x)
};

std::vector<Rational> inner_distribution(const CodeVector& chi, const Budget& budget = {});
/// b_j = |X|^{-1} sum_i Q[j][i] a_i.
std::vector<Rational> dual_norms(const Scheme& scheme, const std::vector<Rational>& a);
DistanceDistribution distance_distribution(const CodeVector& chi, const Budget& budget = {});
BaseProfile base_profile(const CodeVector& chi, VertexId x);

/// <E_j chi, E_j x^> = |X|^{-1} sum_i Q[j][i] c_i for every j.
std::vector<Rational> projection_overlaps(const Scheme& scheme, const BaseProfile& profile);

/// |E_j chi|^2 |E_j x^|^2 - <E_j chi, E_j x^>^2, zero iff the projections are
/// linearly dependent.
std::vector<Rational> design_gram_residuals(const Scheme& scheme, const std::vector<Rational>& b,
                                            const BaseProfile& profile);

/// k_i * sum_{R_i(x)} chi^2 - (sum_{R_i(x)} chi)^2, zero iff chi is constant on
/// R_i(x).
std::vector<Rational> codesign_gram_residuals(const Scheme& scheme, const BaseProfile& profile);

/// Parameter bundle of a code with respect to a base vertex. Distance-side
/// quantities computed from a_i (delta, s, delta_down) are only defined for
/// subset codes.
struct CodeParameters {
  VertexId base = 0;
  int delta_x = 0;
  int s_x = 0;
  int dual_delta = 0;  // delta^*
  int dual_s = 0;      // s^*
  std::optional<int> delta;
  std::optional<int> s;
  std::optional<int> delta_down;       // min{i != 0 : a_{D-i} != 0}
  std::optional<int> dual_delta_down;  // min{j != 0 : b_{D-j} != 0}
  int refined_s_x = 0;                 // |{i != 0 : E_i^* chi not in C A_i x^}|
  int refined_dual_s = 0;              // |{j != 0 : E_j chi not in C E_j x^}|
};

CodeParameters parameters(const CodeVector& chi, VertexId x, const Budget& budget = {});
CodeParameters parameters(const CodeVector& chi, const DistanceDistribution& dist, const BaseProfile& profile);

/// min{i in indices, i != 0 : values[i] != 0}; nullopt if none.
std::optional<int> first_nonzero(const std::vector<Rational>& values);
int count_nonzero(const std::vector<Rational>& values);

}  // namespace amlab
