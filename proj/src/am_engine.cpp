#include "amlab/am_engine.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace amlab {

std::string_view theorem_name(Theorem th) {
  switch (th) {
    case Theorem::V1: return "V1";
    case Theorem::V2: return "V2";
    case Theorem::V3: return "V3";
    case Theorem::Cor1: return "Cor1";
    case Theorem::Cor2: return "Cor2";
  }
  return "?";
}

Theorem parse_theorem(std::string_view text) {
  if (text == "1" || text == "v1" || text == "V1") return Theorem::V1;
  if (text == "2" || text == "v2" || text == "V2") return Theorem::V2;
  if (text == "3" || text == "v3" || text == "V3") return Theorem::V3;
  if (text == "cor1" || text == "Cor1") return Theorem::Cor1;
  if (text == "cor2" || text == "Cor2") return Theorem::Cor2;
  throw Error(ErrorCode::Config, "unknown version '" + std::string(text) + "' (expected 1, 2, 3, cor1 or cor2)");
}

int exit_status(Verification v) {
  switch (v) {
    case Verification::Verified: return 0;
    case Verification::Unverifiable: return 2;
    case Verification::Failed: return 1;
  }
  return 1;
}

std::string_view verification_name(Verification v) {
  switch (v) {
    case Verification::Verified: return "verified";
    case Verification::Unverifiable: return "certified-unverifiable-within-budget";
    case Verification::Failed: return "failed";
  }
  return "?";
}

std::string_view martin_branch_name(MartinBranch b) {
  switch (b) {
    case MartinBranch::BipartiteHalf: return "bipartite-half";
    case MartinBranch::AntipodalPair: return "antipodal-pair";
    case MartinBranch::DistanceClause: return "distance-clause";
    case MartinBranch::None: return "none";
    case MartinBranch::NotApplicable: return "not-applicable";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

std::mutex catalog_mutex;
std::map<std::string, std::vector<ModuleCatalogEntry>> catalog_cache;

std::vector<int> index_set(const std::vector<int>& dims) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (dims[i] > 0) out.push_back(i);
  }
  return out;
}

std::vector<ModuleCatalogEntry> closed_form_catalog(const Scheme& s) {
  const int D = s.classes();
  std::vector<ModuleCatalogEntry> out;
  for (int r = 0; 2 * r <= D; ++r) {
    ModuleCatalogEntry e;
    e.r = e.dual_r = r;
    e.d = D - 2 * r;
    e.eta = 0;
    for (int i = r; i <= D - r; ++i) e.support.push_back(i);
    e.dual_support = e.support;
    e.thin = e.dual_thin = true;
    e.dimension = e.d + 1;
    Integer mult = binomial(D, r) - binomial(D, r - 1);
    e.multiplicity = mult.get_ui();
    e.source = CatalogSource::ClosedForm;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ModuleCatalogEntry> dense_catalog(const SchemePtr& scheme, VertexId x, const Budget& budget,
                                              const LabOptions& lab) {
  const std::string key = scheme->name() + "@" + std::to_string(x) + "#" + std::to_string(lab.seed);
  {
    std::lock_guard<std::mutex> lock(catalog_mutex);
    auto it = catalog_cache.find(key);
    if (it != catalog_cache.end()) return it->second;
  }
  DenseOperatorSet ops = DenseOperatorSet::build(scheme, x, budget);
  Decomposition dec = decompose_modules(ops, lab);
  std::map<ModuleSignature, ModuleCatalogEntry> grouped;
  for (const auto& m : dec.modules) {
    auto [it, inserted] = grouped.try_emplace(signature(m));
    ModuleCatalogEntry& e = it->second;
    if (inserted) {
      e.r = m.r;
      e.dual_r = m.dual_r;
      e.d = m.d;
      e.eta = m.eta;
      e.support = index_set(m.shell_dims);
      e.dual_support = index_set(m.eigen_dims);
      e.thin = m.thin;
      e.dual_thin = m.dual_thin;
      e.dimension = m.dim();
      e.source = CatalogSource::Dense;
    }
    ++e.multiplicity;
  }
  std::vector<ModuleCatalogEntry> out;
  std::uint64_t total = 0;
  for (auto& kv : grouped) {
    total += kv.second.multiplicity * static_cast<std::uint64_t>(kv.second.dimension);
    out.push_back(std::move(kv.second));
  }
  if (total != scheme->size()) {
    throw Error(ErrorCode::Certificate, "catalog dimensions sum to " + std::to_string(total));
  }
  std::lock_guard<std::mutex> lock(catalog_mutex);
  catalog_cache.emplace(key, out);
  return out;
}

}  // namespace

std::vector<ModuleCatalogEntry> module_catalog(const SchemePtr& scheme, VertexId x, CatalogPolicy policy,
                                               const Budget& budget, const LabOptions& lab) {
  const bool binary_hamming = scheme->family() == Family::Hamming && scheme->alphabet() == 2;
  if (policy == CatalogPolicy::ClosedForm || (policy == CatalogPolicy::Auto && binary_hamming)) {
    if (!binary_hamming) {
      throw Error(ErrorCode::Unavailable, "no closed-form module catalog for " + scheme->name());
    }
    return closed_form_catalog(*scheme);
  }
  const bool fits = scheme->addressable() && scheme->size() <= budget.dense_cap;
  if (!fits) {
    throw Error(ErrorCode::Unavailable, "no module catalog for " + scheme->name() + ": no closed form and |X| = " +
                                            scheme->order().get_str() + " exceeds the dense cap of " +
                                            std::to_string(budget.dense_cap));
  }
  return dense_catalog(scheme, x, budget, lab);
}

// ---------------------------------------------------------------------------

namespace {

template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

// Per shell: largest t <= max_t for which the sums over objects above every
// rank-t object below x agree. Empty shells report max_t.
std::vector<int> anchored_levels(const CodeVector& chi, VertexId x, int max_t, const Budget& budget) {
  const Scheme& s = chi.scheme();
  const int D = s.classes();
  const Packed px = s.pack_id(x);
  const Vertex xv = s.decode(x);
  struct Member {
    std::vector<int> agree;  // positions of x shared with y
    Rational value;
  };
  std::vector<std::vector<Member>> shells(D + 1);
  for (const auto& [id, value] : chi.entries()) {
    Packed py = s.pack_id(id);
    Member m;
    m.value = value;
    for (int pos = 0; pos < D; ++pos) {
      bool same = s.family() == Family::Hamming ? s.digit(py, pos) == s.digit(px, pos)
                                                : ((py >> (xv.symbols[pos] - 1)) & 1) != 0;
      if (same) m.agree.push_back(pos);
    }
    shells[s.distance_packed(px, py)].push_back(std::move(m));
  }
  std::vector<int> level(D + 1, max_t);
  std::uint64_t steps = 0;
  for (int k = 0; k <= D; ++k) {
    if (shells[k].empty()) continue;
    for (int t = 1; t <= max_t; ++t) {
      const std::uint64_t objects = binomial_u64(D, t);
      steps += objects;
      for (const Member& m : shells[k]) steps += binomial_u64(static_cast<int>(m.agree.size()), t);
      if (steps > budget.steps) {
        throw Error(ErrorCode::Budget, "anchored design scan exceeds " + std::to_string(budget.steps) + " steps");
      }
      std::vector<Rational> sums(objects, Rational(0));
      std::vector<int> sub(t);
      for (const Member& m : shells[k]) {
        for_each_combination(static_cast<int>(m.agree.size()), t, [&](const std::vector<int>& idx) {
          std::uint64_t rank = 0;
          for (int j = 0; j < t; ++j) rank += binomial_u64(m.agree[idx[j]], j + 1);
          sums[rank] += m.value;
        });
      }
      bool constant = std::all_of(sums.begin(), sums.end(), [&](const Rational& v) { return v == sums[0]; });
      if (!constant) {
        level[k] = t - 1;
        break;
      }
    }
  }
  return level;
}

struct Prepared {
  DistanceDistribution dist;
  BaseProfile profile;
  CodeParameters params;
};

Prepared prepare(const CodeVector& chi, VertexId x, const AMOptions& opt) {
  chi.require_code();
  if (x >= chi.scheme().size()) throw Error(ErrorCode::Domain, "base vertex outside the scheme");
  Prepared p;
  p.dist = distance_distribution(chi, opt.budget);
  p.profile = base_profile(chi, x);
  p.params = parameters(chi, p.dist, p.profile);
  return p;
}

AMReport start_report(Theorem th, const CodeVector& chi, VertexId x, const Prepared& p, bool refined) {
  AMReport rep;
  rep.theorem = th;
  rep.base = x;
  rep.base_text = chi.scheme().format_id(x);
  rep.parameters = p.params;
  rep.refined = refined;
  return rep;
}

int prefix_t(const std::vector<LedgerRow>& rows, int D) {
  int t = D;
  for (const auto& row : rows) {
    if (!row.pass) t = std::min(t, row.r - 1);
  }
  return std::max(t, 0);
}

void add_level_check(AMReport& rep, std::string subject, std::string property, int required,
                     const DesignLevelReport& level) {
  ConclusionCheck c;
  c.subject = std::move(subject);
  c.property = std::move(property);
  c.required = required;
  c.measured = level.max_level;
  c.undecided_above = level.undecided_above;
  rep.checks.push_back(std::move(c));
}

// Shell designs for Hamming at the zero word and Johnson intersections.
void extract_designs(AMReport& rep, const CodeVector& chi, VertexId x, int t, bool johnson_allowed,
                     const AMOptions& opt) {
  const Scheme& s = chi.scheme();
  const int D = s.classes();
  if (!opt.designs || t <= 0) return;
  if (!chi.is_subset()) {
    rep.notes.push_back("chi is weighted; shell designs are only read for subset codes");
    return;
  }
  if (s.family() == Family::Hamming && x != 0) {
    rep.notes.push_back("Hamming shell designs are read at the zero word; for base " + rep.base_text +
                        " only the (co)design statement is reported");
    return;
  }
  if (s.family() == Family::Johnson && !johnson_allowed) {
    rep.notes.push_back("in Johnson schemes this conclusion is a codesign statement; no block design is extracted");
    return;
  }
  const BaseProfile profile = base_profile(chi, x);
  for (int k = 0; k <= D; ++k) {
    if (!profile.e[k]) continue;
    DesignCheck dc;
    dc.shell = k;
    BlockMultiset bm = shell_design_extract(chi, x, k);
    dc.v = bm.v;
    dc.k = bm.k;
    dc.blocks = bm.total();
    dc.distinct = bm.distinct();
    // Hamming: supports of weight-k words form a t-design whenever the
    // complements do, which needs t <= D-k. Johnson: blocks of size D-k.
    dc.t = s.family() == Family::Hamming ? std::min({t, k, D - k}) : std::min(t, D - k);
    try {
      dc.result = t_design_check(bm, dc.t, opt.budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Budget) throw;
      dc.note = e.what();
    }
    rep.designs.push_back(std::move(dc));
  }
}

void finish(AMReport& rep) {
  bool undecided = false, failed = !rep.requested_pass;
  for (const auto& c : rep.checks) {
    if (c.ok()) continue;
    if (c.undecided_above && c.measured >= *c.undecided_above) undecided = true;
    else failed = true;
  }
  for (const auto& d : rep.designs) {
    if (!d.result) undecided = true;
    else if (!d.result->is_design) failed = true;
  }
  rep.status = failed ? Verification::Failed : undecided ? Verification::Unverifiable : Verification::Verified;
}

void verify_codesign_images(AMReport& rep, const CodeVector& chi, VertexId x, int t, bool with_shells,
                            const AMOptions& opt) {
  if (!opt.verify || t <= 0) return;
  const int D = chi.scheme().classes();
  ImageCodesignScan scan = scan_image_codesigns(chi, x, t, opt.budget);
  for (int l = 0; l <= D; ++l) {
    add_level_check(rep, "A_" + std::to_string(l) + " chi", "relative codesign", t, scan.whole[l]);
  }
  if (with_shells) {
    for (int l = 0; l <= D; ++l) {
      for (int k = 0; k <= D; ++k) {
        const DesignLevelReport& lv = scan.shells[k][l];
        if (lv.max_level >= t) continue;  // only failures are listed individually
        add_level_check(rep, "A_" + std::to_string(l) + " E*_" + std::to_string(k) + " chi", "relative codesign", t, lv);
      }
    }
    rep.notes.push_back("A_l E*_k chi checked for every 0 <= k, l <= D (" + std::to_string((D + 1) * (D + 1)) +
                        " images); only failing pairs are listed");
  }
  if (scan.scanned < t) {
    rep.notes.push_back("spheres R_i(x) scanned only up to i = " + std::to_string(scan.scanned) + " within budget");
  }
}

void verify_shell_designs(AMReport& rep, const CodeVector& chi, VertexId x, int t, const AMOptions& opt) {
  if (!opt.verify || t <= 0) return;
  const int D = chi.scheme().classes();
  const BaseProfile profile = base_profile(chi, x);
  for (int k = 0; k <= D; ++k) {
    if (!profile.e[k]) continue;
    CodeVector part = chi.restricted_to_shell(x, k);
    DesignLevelReport lv = relative_design_level(part, x, opt.budget);
    add_level_check(rep, "E*_" + std::to_string(k) + " chi", "relative design", t, lv);
  }
}

}  // namespace

int anchored_level(const CodeVector& chi, VertexId x, int max_t, const Budget& budget) {
  std::vector<int> lv = anchored_levels(chi, x, max_t, budget);
  return *std::min_element(lv.begin(), lv.end());
}

// ---------------------------------------------------------------------------

AMReport am_v1(const CodeVector& chi, VertexId x, const AMOptions& opt) {
  Prepared p = prepare(chi, x, opt);
  AMReport rep = start_report(Theorem::V1, chi, x, p, opt.refine);
  const int D = chi.scheme().classes();
  const int s = opt.refine ? p.params.refined_dual_s : p.params.dual_s;
  const std::string name = opt.refine ? "s~* <= delta_x - r" : "s* <= delta_x - r";
  for (int r = 1; r <= D; ++r) {
    LedgerRow row;
    row.r = r;
    row.subject = "r = " + std::to_string(r);
    row.terms.push_back({name, s, p.params.delta_x - r});
    row.pass = row.terms.back().holds();
    rep.ledger.push_back(std::move(row));
  }
  rep.t = prefix_t(rep.ledger, D);
  verify_codesign_images(rep, chi, x, rep.t, false, opt);
  extract_designs(rep, chi, x, rep.t, false, opt);
  finish(rep);
  return rep;
}

AMReport am_v2(const CodeVector& chi, VertexId x, const AMOptions& opt) {
  Prepared p = prepare(chi, x, opt);
  AMReport rep = start_report(Theorem::V2, chi, x, p, opt.refine);
  const int D = chi.scheme().classes();
  const int s = opt.refine ? p.params.refined_s_x : p.params.s_x;
  const std::string name = opt.refine ? "s~_x <= delta* - r" : "s_x <= delta* - r";
  for (int r = 1; r <= D; ++r) {
    LedgerRow row;
    row.r = r;
    row.subject = "r = " + std::to_string(r);
    row.terms.push_back({name, s, p.params.dual_delta - r});
    row.pass = row.terms.back().holds();
    rep.ledger.push_back(std::move(row));
  }
  rep.t = prefix_t(rep.ledger, D);
  verify_shell_designs(rep, chi, x, rep.t, opt);
  extract_designs(rep, chi, x, rep.t, true, opt);
  finish(rep);
  return rep;
}

AMReport am_v3(const CodeVector& chi, VertexId x, const AMOptions& opt) {
  Prepared p = prepare(chi, x, opt);
  AMReport rep = start_report(Theorem::V3, chi, x, p, false);
  const int D = chi.scheme().classes();
  for (int r = 1; r <= D; ++r) {
    long dual_count = 0, shell_count = 0;
    for (int j = r; j <= D - r; ++j) {
      dual_count += p.dist.b[j] != 0;
      shell_count += p.profile.e[j];
    }
    LedgerRow row;
    row.r = r;
    row.subject = "r = " + std::to_string(r);
    row.terms.push_back({"|{r <= j <= D-r : E_j chi != 0}| <= delta_x - r", dual_count, p.params.delta_x - r});
    row.terms.push_back({"|{r <= i <= D-r : E*_i chi != 0}| <= delta* - r", shell_count, p.params.dual_delta - r});
    row.pass = row.terms[0].holds() || row.terms[1].holds();
    rep.ledger.push_back(std::move(row));
  }
  rep.t = prefix_t(rep.ledger, D);

  // Thinness of displacement-zero modules: confirmed from a catalog when one
  // is available, otherwise taken as given.
  try {
    auto catalog = module_catalog(chi.scheme_ptr(), 0, opt.catalog, opt.budget, opt.lab);
    bool all_thin = true;
    for (const auto& e : catalog) {
      if (e.eta == 0 && e.r <= rep.t && !e.thin) all_thin = false;
    }
    rep.catalog_source = catalog.empty() || catalog.front().source == CatalogSource::ClosedForm ? "closed-form" : "dense";
    if (all_thin) {
      rep.notes.push_back("displacement-zero modules with endpoint <= t are thin (" + *rep.catalog_source +
                          " catalog at the zero vertex; T(x) has the same structure at every vertex)");
    } else {
      rep.notes.push_back("a displacement-zero module with endpoint <= t is not thin; hypothesis fails");
      rep.requested_pass = false;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unavailable && e.code() != ErrorCode::Budget) throw;
    rep.notes.push_back("displacement-zero thinness taken as given (no catalog: " + std::string(e.what()) + ")");
  }

  if (opt.verify && rep.t > 0) {
    try {
      std::vector<int> levels = anchored_levels(chi, x, rep.t, opt.budget);
      const BaseProfile& prof = p.profile;
      for (int k = 0; k <= D; ++k) {
        if (!prof.e[k]) continue;
        ConclusionCheck c;
        c.subject = "E*_" + std::to_string(k) + " chi";
        c.property = "sums over objects above rank-t objects below x";
        c.required = rep.t;
        c.measured = levels[k];
        rep.checks.push_back(std::move(c));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Budget) throw;
      ConclusionCheck c;
      c.subject = "E*_k chi";
      c.property = "sums over objects above rank-t objects below x";
      c.required = rep.t;
      c.measured = 0;
      c.undecided_above = 0;
      rep.checks.push_back(std::move(c));
      rep.notes.push_back(e.what());
    }
  }
  extract_designs(rep, chi, x, rep.t, true, opt);
  finish(rep);
  return rep;
}

namespace {

AMReport corollary(Theorem th, const CodeVector& chi, VertexId x, const AMOptions& opt) {
  const bool primal = th == Theorem::Cor1;
  std::vector<ModuleCatalogEntry> catalog;
  try {
    catalog = module_catalog(chi.scheme_ptr(), x, opt.catalog, opt.budget, opt.lab);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unavailable && e.code() != ErrorCode::Budget) throw;
    AMOptions fallback = opt;
    fallback.refine = false;
    AMReport rep = primal ? am_v1(chi, x, fallback) : am_v2(chi, x, fallback);
    rep.theorem = th;
    rep.notes.insert(rep.notes.begin(), std::string("module catalog unavailable (") + e.what() +
                                            "); reporting the theorem-level t only");
    if (opt.t) {
      rep.requested_t = opt.t;
      rep.requested_pass = rep.t >= *opt.t;
    }
    finish(rep);
    return rep;
  }

  Prepared p = prepare(chi, x, opt);
  AMReport rep = start_report(th, chi, x, p, false);
  const int D = chi.scheme().classes();
  rep.catalog_source = catalog.front().source == CatalogSource::ClosedForm ? "closed-form" : "dense";
  // chi in M x^ means chi is orthogonal to every module other than the
  // primary one, so every row holds regardless of the counts.
  const bool primary_only = p.params.refined_s_x == 0;
  if (primary_only) rep.notes.push_back("chi lies in the primary module M x^; every module row holds vacuously");

  std::vector<const ModuleCatalogEntry*> rows;
  for (const auto& e : catalog) {
    int key = primal ? e.r : e.dual_r;
    if (key >= 1) rows.push_back(&e);
  }
  std::stable_sort(rows.begin(), rows.end(), [&](auto* a, auto* b) {
    return (primal ? a->r : a->dual_r) < (primal ? b->r : b->dual_r);
  });
  for (const auto* e : rows) {
    LedgerRow row;
    row.r = primal ? e->r : e->dual_r;
    row.subject = "r = " + std::to_string(e->r) + ", r* = " + std::to_string(e->dual_r) + ", d = " +
                  std::to_string(e->d) + " (x" + std::to_string(e->multiplicity) + ")";
    long count = 0;
    if (primal) {
      for (int j : e->dual_support) count += j >= 0 && j <= D && p.dist.b[j] != 0;
      row.terms.push_back({"|{j in W_s* : E_j chi != 0}| <= delta_x - r", count, p.params.delta_x - e->r});
      row.requirements.push_back(e->thin ? "thin" : "NOT thin");
      row.pass = e->thin && (primary_only || row.terms.back().holds());
    } else {
      for (int i : e->support) count += i >= 0 && i <= D && p.profile.e[i];
      row.terms.push_back({"|{i in W_s : E*_i chi != 0}| <= delta* - r*", count, p.params.dual_delta - e->dual_r});
      row.requirements.push_back(e->dual_thin ? "dual thin" : "NOT dual thin");
      row.pass = e->dual_thin && (primary_only || row.terms.back().holds());
    }
    rep.ledger.push_back(std::move(row));
  }
  rep.t = prefix_t(rep.ledger, D);
  for (const auto& row : rep.ledger) {
    if (row.r <= rep.t + 1 && !row.pass && row.requirements.front().rfind("NOT", 0) == 0) {
      rep.notes.push_back("refused at " + row.subject + ": module is not " + (primal ? "thin" : "dual thin"));
      break;
    }
  }
  int check_t = rep.t;
  if (opt.t) {
    rep.requested_t = opt.t;
    rep.requested_pass = rep.t >= *opt.t;
    check_t = std::min(rep.t, *opt.t);
  }
  if (primal) {
    verify_codesign_images(rep, chi, x, check_t, true, opt);
    extract_designs(rep, chi, x, check_t, false, opt);
  } else {
    verify_shell_designs(rep, chi, x, check_t, opt);
    extract_designs(rep, chi, x, check_t, true, opt);
  }
  finish(rep);
  return rep;
}

}  // namespace

AMReport cor1_check(const CodeVector& chi, VertexId x, const AMOptions& opt) {
  return corollary(Theorem::Cor1, chi, x, opt);
}

AMReport cor2_check(const CodeVector& chi, VertexId x, const AMOptions& opt) {
  return corollary(Theorem::Cor2, chi, x, opt);
}

AMReport am_check(Theorem th, const CodeVector& chi, VertexId x, const AMOptions& opt) {
  switch (th) {
    case Theorem::V1: return am_v1(chi, x, opt);
    case Theorem::V2: return am_v2(chi, x, opt);
    case Theorem::V3: return am_v3(chi, x, opt);
    case Theorem::Cor1: return cor1_check(chi, x, opt);
    case Theorem::Cor2: return cor2_check(chi, x, opt);
  }
  throw Error(ErrorCode::Config, "unknown theorem");
}

// ---------------------------------------------------------------------------
// Martin

bool is_bipartite_half(const CodeVector& Y) {
  const Scheme& s = Y.scheme();
  if (s.family() != Family::Hamming || s.alphabet() != 2 || !Y.is_subset()) return false;
  const int D = s.classes();
  if (Y.support_size() != (std::uint64_t{1} << (D - 1))) return false;
  int parity = -1;
  for (VertexId id : Y.support()) {
    int p = std::popcount(s.pack_id(id)) & 1;
    if (parity < 0) parity = p;
    else if (p != parity) return false;
  }
  return true;
}

bool is_antipodal_pair(const CodeVector& Y) {
  const Scheme& s = Y.scheme();
  if (!Y.is_subset() || Y.support_size() != 2) return false;
  auto ids = Y.support();
  const int d = s.distance_packed(s.pack_id(ids[0]), s.pack_id(ids[1]));
  if (s.family() == Family::Hamming) return s.alphabet() == 2 && d == s.classes();
  return s.ground_set() == 2 * s.classes() && d == s.classes();
}

namespace {

MartinOutcome martin(MartinSide side, const CodeVector& Y, std::optional<int> t, const Budget& budget) {
  if (!Y.is_subset()) throw Error(ErrorCode::Domain, "the Martin trichotomies are stated for subset codes");
  Y.require_code();
  const Scheme& s = Y.scheme();
  MartinOutcome out;
  out.side = side;
  DistanceDistribution dist = distance_distribution(Y, budget);
  VertexId base = Y.entries().begin()->first;
  CodeParameters p = parameters(Y, dist, base_profile(Y, base));
  out.delta = *p.delta;
  out.s = *p.s;
  out.dual_delta = p.dual_delta;
  out.dual_s = p.dual_s;
  out.t = t ? *t : std::max(0, side == MartinSide::P ? out.delta - out.dual_s : out.dual_delta - out.s);
  out.notes.push_back(t ? "t supplied by the caller"
                        : (side == MartinSide::P ? "t = delta - s* (every member's codesign level is at least this)"
                                                 : "t = delta* - s (every member's design level is at least this)"));

  const bool hamming = s.family() == Family::Hamming;
  if (side == MartinSide::Q && !hamming) {
    out.applicable = false;
    out.branch = MartinBranch::NotApplicable;
    out.reason = "the hypothesis r*(W) <= r(W) fails in Johnson schemes, where every module has r(W) <= r*(W)";
    return out;
  }
  out.notes.push_back(hamming ? "module hypothesis: every module of a Hamming scheme has r(W) = r*(W)"
                              : "module hypothesis: every module of a Johnson scheme has r(W) <= r*(W)");

  out.bipartite_half = is_bipartite_half(Y);
  out.antipodal_pair = is_antipodal_pair(Y);
  out.distance_clause = side == MartinSide::P ? out.dual_delta >= out.t + 1 : out.delta >= out.t + 1;
  if (out.bipartite_half) out.branch = MartinBranch::BipartiteHalf;
  else if (out.antipodal_pair) out.branch = MartinBranch::AntipodalPair;
  else if (out.distance_clause) out.branch = MartinBranch::DistanceClause;
  else out.branch = MartinBranch::None;
  if (out.bipartite_half && out.distance_clause) {
    out.notes.push_back("the distance clause also holds; the structural branch is reported");
  }

  if (side == MartinSide::P) {
    out.bound = {"delta <= delta* + s* - 1", out.delta, out.dual_delta + out.dual_s - 1};
    if (out.antipodal_pair) {
      out.exempt = true;
      out.exemption = hamming ? "binary repetition code (antipodal pair)" : "complementary pair with N = 2D";
    }
  } else {
    out.bound = {"delta* <= delta + s - 1", out.dual_delta, out.delta + out.s - 1};
    if (out.bipartite_half) {
      out.exempt = true;
      out.exemption = "bipartite half of H(D,2)";
    }
  }
  return out;
}

}  // namespace

MartinOutcome martin_trichotomy_P(const CodeVector& Y, std::optional<int> t, const Budget& budget) {
  return martin(MartinSide::P, Y, t, budget);
}

MartinOutcome martin_trichotomy_Q(const CodeVector& Y, std::optional<int> t, const Budget& budget) {
  return martin(MartinSide::Q, Y, t, budget);
}

}  // namespace amlab
