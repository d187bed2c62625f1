// Relative (co)design levels and brute-force combinatorial oracles.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amlab/spectra.hpp"

namespace amlab {

/// Verdict for one index of a design or codesign test. `dependent` is empty
/// when the index could not be decided within budget.
struct IndexVerdict {
  int index = 0;
  std::optional<bool> dependent;
  Rational residual;  // Gram residual |u|^2 |v|^2 - <u,v>^2
};

struct DesignLevelReport {
  int max_level = 0;
  std::vector<IndexVerdict> per_index;  // indices 1..D (or up to the scan limit)
  std::optional<int> undecided_above;   // set when indices past this one were not decided
};

/// Largest t with E_j chi and E_j x^ linearly dependent for 1 <= j <= t.
DesignLevelReport relative_design_level(const CodeVector& chi, VertexId x, const Budget& budget = {});
DesignLevelReport relative_design_level(const Scheme& scheme, const std::vector<Rational>& b,
                                        const BaseProfile& profile);

/// Largest t with E_i^* chi and A_i x^ linearly dependent for 1 <= i <= t,
/// i.e. chi constant on every R_i(x), i <= t. Exact from the sparse support.
DesignLevelReport relative_codesign_level(const CodeVector& chi, VertexId x);
DesignLevelReport codesign_level_from_profile(const Scheme& scheme, const BaseProfile& profile);

/// Codesign levels of the images A_l chi and A_l E_k^* chi (never
/// materialized), measured by scanning the spheres R_i(x) for i = 1..max_index
/// and evaluating each image by distance counting over the support.
struct ImageCodesignScan {
  int scanned = 0;                                      // shells 1..scanned were fully scanned
  std::vector<DesignLevelReport> whole;                 // [l]: A_l chi
  std::vector<std::vector<DesignLevelReport>> shells;   // [k][l]: A_l E_k^* chi
  std::uint64_t steps = 0;
};
ImageCodesignScan scan_image_codesigns(const CodeVector& chi, VertexId x, int max_index, const Budget& budget);

/// (A_i chi)(z) = sum over y in R_i(z) of chi(y).
Rational evaluate_Ai(const CodeVector& chi, int i, VertexId z);

/// A_i chi as a sparse vector. Expands the support when |supp| * k_i fits the
/// step budget; otherwise evaluates only at `restrict_to`, and throws Budget
/// when no restriction list is given.
CodeVector apply_Ai(const CodeVector& chi, int i, const Budget& budget = {},
                    const std::optional<std::vector<VertexId>>& restrict_to = std::nullopt);

// ---------------------------------------------------------------------------
// Block designs

using Block = std::vector<int>;  // sorted elements of {1..v}

struct BlockMultiset {
  int v = 0;  // ground set {1..v}
  int k = 0;  // block size
  std::map<Block, std::uint64_t> blocks;

  void add(Block block, std::uint64_t multiplicity = 1);
  std::uint64_t total() const;
  std::size_t distinct() const { return blocks.size(); }
};

struct TDesignResult {
  int t = 0;
  bool is_design = false;
  std::optional<std::uint64_t> lambda;
  // When not a design: two t-subsets (first in rank order, then the first that
  // disagrees with it) and their block counts.
  std::optional<std::pair<Block, Block>> witness;
  std::pair<std::uint64_t, std::uint64_t> witness_counts{0, 0};
};

/// Counts, with multiplicity, the blocks through every t-subset of {1..v}.
TDesignResult t_design_check(const BlockMultiset& blocks, int t, const Budget& budget = {});

/// Blocks carried by shell k of a subset code. Hamming: supports of the
/// weight-k words (base vertex must be the zero word). Johnson: the multiset
/// {x cap y : y in Y cap R_k(x)}, relabelled as (D-k)-subsets of {1..D} by
/// position within x.
BlockMultiset shell_design_extract(const CodeVector& Y, VertexId x, int k);

/// Maximum orthogonal-array strength of a subset code in H(D,q).
int oa_strength(const CodeVector& Y, const Budget& budget = {});

/// Semilattice criterion: for every rank-t object u, the incidence sum
/// sum_{u <= y} chi(y) depends only on rank(x meet u).
struct SemilatticeVerdict {
  bool holds = true;
  struct Side {
    std::string object;  // Hamming: word over {0..q-1, '.'}; Johnson: subset
    int meet_rank = 0;
    Rational sum;
  };
  std::optional<std::pair<Side, Side>> witness;
};
SemilatticeVerdict semilattice_design_check(const CodeVector& chi, VertexId x, int t, const Budget& budget = {});

// ---------------------------------------------------------------------------
// Regularity scans

/// Checks that |Y cap R_l(z)| depends only on (l, d(z,Y)) for every z in X
/// with d(z,Y) <= radius. Full scan of X.
struct RegularityScan {
  bool regular = true;
  int covering_radius = 0;
  std::optional<std::string> witness;
};
RegularityScan distance_regularity(const CodeVector& Y, int radius, const Budget& budget = {});

/// Regular in the sense |Y cap R_k(y)| constant over y in Y, for every k.
bool is_regular_code(const CodeVector& Y);

}  // namespace amlab
