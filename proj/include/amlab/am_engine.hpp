// Assmus-Mattson analyses, their corollaries, and the Martin trichotomies.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amlab/design.hpp"
#include "amlab/terwilliger.hpp"

namespace amlab {

enum class Theorem { V1, V2, V3, Cor1, Cor2 };
std::string_view theorem_name(Theorem th);
Theorem parse_theorem(std::string_view text);  // "1", "2", "3", "cor1", "cor2"

// ---------------------------------------------------------------------------
// Module catalog

enum class CatalogSource { ClosedForm, Dense };
enum class CatalogPolicy { Auto, ClosedForm, Dense };

struct ModuleCatalogEntry {
  int r = 0, dual_r = 0, d = 0, eta = 0;
  std::vector<int> support, dual_support;  // W_s, W_s^*
  bool thin = false, dual_thin = false;
  int dimension = 0;
  std::uint64_t multiplicity = 0;  // isomorphic copies found
  CatalogSource source = CatalogSource::ClosedForm;
};

/// Closed form for H(D,2); otherwise a dense decomposition when |X| fits the
/// dense cap. Dense results are cached per (scheme, base vertex). Throws
/// Unavailable when no source applies.
std::vector<ModuleCatalogEntry> module_catalog(const SchemePtr& scheme, VertexId x, CatalogPolicy policy,
                                               const Budget& budget = {}, const LabOptions& lab = {});

// ---------------------------------------------------------------------------
// Reports

struct Inequality {
  std::string name;  // reads "lhs <= rhs"
  long lhs = 0;
  long rhs = 0;
  bool holds() const { return lhs <= rhs; }
};

struct LedgerRow {
  int r = 0;                // endpoint (or dual endpoint) the row is about
  std::string subject;      // e.g. "r = 2" or a module signature
  std::vector<Inequality> terms;
  std::vector<std::string> requirements;  // extra hypotheses, e.g. "thin"
  bool pass = false;
};

enum class Verification { Verified, Unverifiable, Failed };
int exit_status(Verification v);  // 0, 2, 1
std::string_view verification_name(Verification v);

struct ConclusionCheck {
  std::string subject;   // e.g. "A_3 chi" or "E*_8 chi"
  std::string property;  // "relative codesign" / "relative design" / "anchored shell design"
  int required = 0;
  int measured = 0;                // level found (capped at the scan limit)
  std::optional<int> undecided_above;
  bool ok() const { return measured >= required; }
};

struct DesignCheck {
  int shell = 0;
  int t = 0;  // strength checked
  int v = 0, k = 0;
  std::uint64_t blocks = 0, distinct = 0;
  std::optional<TDesignResult> result;  // empty when the check did not fit the budget
  std::string note;
};

struct AMReport {
  Theorem theorem = Theorem::V1;
  VertexId base = 0;
  std::string base_text;
  int t = 0;
  std::optional<int> requested_t;
  bool requested_pass = true;
  bool refined = false;
  CodeParameters parameters;
  std::vector<LedgerRow> ledger;
  std::vector<ConclusionCheck> checks;
  std::vector<DesignCheck> designs;
  std::vector<std::string> notes;
  std::optional<std::string> catalog_source;
  Verification status = Verification::Verified;
};

struct AMOptions {
  bool refine = false;
  bool verify = true;             // cross-check the conclusion by direct computation
  bool designs = true;            // extract and check shell designs where they apply
  std::optional<int> t;           // corollaries: the t to test; otherwise the largest passing
  CatalogPolicy catalog = CatalogPolicy::Auto;
  Budget budget;
  LabOptions lab;
};

AMReport am_v1(const CodeVector& chi, VertexId x, const AMOptions& opt = {});
AMReport am_v2(const CodeVector& chi, VertexId x, const AMOptions& opt = {});
AMReport am_v3(const CodeVector& chi, VertexId x, const AMOptions& opt = {});
AMReport cor1_check(const CodeVector& chi, VertexId x, const AMOptions& opt = {});
AMReport cor2_check(const CodeVector& chi, VertexId x, const AMOptions& opt = {});
AMReport am_check(Theorem th, const CodeVector& chi, VertexId x, const AMOptions& opt = {});

/// Largest t such that every shell k of chi gives, for each rank-t object u
/// below x, an incidence sum independent of u. This is the quantity the
/// metric-and-cometric theorem controls through the semilattice structure.
int anchored_level(const CodeVector& chi, VertexId x, int max_t, const Budget& budget = {});

// ---------------------------------------------------------------------------
// Martin trichotomies

enum class MartinSide { P, Q };
enum class MartinBranch { BipartiteHalf, AntipodalPair, DistanceClause, None, NotApplicable };
std::string_view martin_branch_name(MartinBranch b);

struct MartinOutcome {
  MartinSide side = MartinSide::P;
  int t = 0;
  int delta = 0, dual_delta = 0, s = 0, dual_s = 0;
  bool bipartite_half = false;
  bool antipodal_pair = false;
  bool distance_clause = false;  // P: delta* >= t+1, Q: delta >= t+1
  MartinBranch branch = MartinBranch::None;
  bool applicable = true;
  std::string reason;
  Inequality bound;  // P: delta <= delta*+s*-1, Q: delta* <= delta+s-1
  bool exempt = false;
  std::string exemption;
  std::vector<std::string> notes;
  bool violation() const { return applicable && (branch == MartinBranch::None || (!exempt && !bound.holds())); }
};

/// Y must be a subset code. When t is not given, P uses t = delta - s*
/// and Q uses t = delta* - s (both clamped at 0).
MartinOutcome martin_trichotomy_P(const CodeVector& Y, std::optional<int> t = std::nullopt, const Budget& budget = {});
MartinOutcome martin_trichotomy_Q(const CodeVector& Y, std::optional<int> t = std::nullopt, const Budget& budget = {});

bool is_bipartite_half(const CodeVector& Y);
bool is_antipodal_pair(const CodeVector& Y);

}  // namespace amlab
