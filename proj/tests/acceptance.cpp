// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "amlab/am_engine.hpp"
#include "amlab/corpus.hpp"
#include "amlab/terwilliger.hpp"

using namespace amlab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "FAILED: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

SchemePtr scheme(const std::string& text) { return Scheme::build(SchemeSpec::parse(text)); }

std::map<int, std::uint64_t> weights(const CodeVector& code) {
  BaseProfile p = base_profile(code, 0);
  std::map<int, std::uint64_t> out;
  for (std::size_t i = 0; i < p.hits.size(); ++i) {
    if (p.hits[i]) out[static_cast<int>(i)] = p.hits[i];
  }
  return out;
}

// Strength a shell of weight k can carry as a block design.
int shell_strength(int t, int k, int D) { return std::min({t, k, D - k}); }

bool shells_are_designs(const CodeVector& chi, int t, std::ostringstream& log) {
  const int D = chi.scheme().classes();
  BaseProfile p = base_profile(chi, 0);
  bool all = true;
  for (int k = 0; k <= D; ++k) {
    if (!p.hits[k]) continue;
    BlockMultiset bm = shell_design_extract(chi, 0, k);
    TDesignResult r = t_design_check(bm, shell_strength(t, k, D));
    all = all && r.is_design;
    if (!r.is_design) log << " shell " << k << " not a design;";
  }
  return all;
}

// 1 -------------------------------------------------------------------------
void golay_fingerprints(Outcome& o) {
  const std::map<int, std::uint64_t> binary{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
  const std::map<int, std::uint64_t> ternary{{0, 1}, {6, 264}, {9, 440}, {12, 24}};
  auto wb = weights(golay_binary());
  auto wt = weights(golay_ternary());
  o.require(wb == binary, "binary Golay weight distribution");
  o.require(wt == ternary, "ternary Golay weight distribution");
  o.detail << "binary " << wb.size() << " weights, ternary " << wt.size() << " weights match";
}

// 2 -------------------------------------------------------------------------
void classical_recovery(Outcome& o) {
  const CodeVector& g = corpus_code("golay-binary");
  AMOptions opt;
  opt.refine = true;
  opt.designs = false;
  AMReport rep = am_v2(g, 0, opt);
  o.require(rep.t == 5, "refined t = " + std::to_string(rep.t));
  o.require(rep.status == Verification::Verified, "design-level cross-check");
  BlockMultiset octads = shell_design_extract(g, 0, 8);
  TDesignResult r = t_design_check(octads, 5);
  o.require(octads.total() == 759, "759 octads");
  o.require(r.is_design && r.lambda == 1u, "shell 8 is a 5-(24,8,1) design");
  o.detail << "t = " << rep.t << ", shell 8: " << octads.total() << " blocks, lambda = " << r.lambda.value_or(0)
           << " over C(24,5) = " << binomial_u64(24, 5) << " subsets";
}

// 3 -------------------------------------------------------------------------
void coset_designs(Outcome& o) {
  const CodeVector& b4 = corpus_code("golay-binary-coset4");
  AMOptions opt;
  opt.t = 1;
  AMReport c1 = cor1_check(b4, 0, opt);
  o.require(c1.requested_pass && c1.status == Verification::Verified, "cor1 at t = 1 on the weight-4 coset");
  std::ostringstream log;
  o.require(shells_are_designs(b4, 1, log), "binary coset shells:" + log.str());
  opt.t = 2;
  AMReport c2 = cor1_check(b4, 0, opt);
  o.require(!c2.requested_pass, "cor1 at t = 2 must fail on the weight-4 coset");

  const CodeVector& t3 = corpus_code("golay-ternary-coset3");
  AMReport v3 = am_v3(t3, 0);
  o.require(v3.t == 1 && v3.status == Verification::Verified, "V3 t = " + std::to_string(v3.t) + " on the weight-3 coset");
  std::ostringstream log3;
  o.require(shells_are_designs(t3, 1, log3), "ternary coset shells:" + log3.str());
  o.detail << "binary coset delta_x = " << c1.parameters.delta_x << ", cor1 t = " << c1.t << "; ternary coset delta_x = "
           << v3.parameters.delta_x << ", V3 t = " << v3.t;
}

// 4 -------------------------------------------------------------------------
void witt_design_check(Outcome& o) {
  const CodeVector& w = corpus_code("witt-24-8");
  const Scheme& s = w.scheme();
  const VertexId x = w.support().front();
  DistanceDistribution dist = distance_distribution(w);
  CodeParameters p = parameters(w, dist, base_profile(w, x));
  o.require(p.delta == 4, "delta");
  o.require(p.dual_s == 2, "dual degree");
  for (int j : {1, 2, 3, 4, 5, 7}) o.require(dist.b[j] == 0, "b_" + std::to_string(j) + " = 0");
  AMOptions opt;
  opt.verify = false;
  AMReport rep = am_v1(w, x, opt);
  o.require(rep.t == 2, "V1 t = " + std::to_string(rep.t));
  // Sampled (i, l): A_l chi must be constant on R_i(x) for 1 <= i <= t.
  std::mt19937_64 rng(2024);
  int checked = 0;
  std::uint64_t evaluations = 0;
  for (int n = 0; n < 20; ++n) {
    const int i = 1 + static_cast<int>(rng() % rep.t);
    const int l = static_cast<int>(rng() % (s.classes() + 1));
    std::set<Rational> values;
    for (VertexId z : s.sphere(x, i)) {
      values.insert(evaluate_Ai(w, l, z));
      ++evaluations;
    }
    o.require(values.size() == 1, "A_" + std::to_string(l) + " chi not constant on R_" + std::to_string(i) + "(x)");
    ++checked;
  }
  o.detail << "delta = " << *p.delta << ", s* = " << p.dual_s << ", t = " << rep.t << "; " << checked
           << " sampled (i, l) pairs, " << evaluations << " sphere evaluations";
}

// 5 -------------------------------------------------------------------------
void perfect_code(Outcome& o) {
  const CodeVector& v = corpus_code("vasilev-15");
  const Scheme& s = v.scheme();
  std::vector<std::uint8_t> covered(s.size(), 0);
  bool disjoint = true;
  for (VertexId y : v.support()) {
    for (int i = 0; i <= 1; ++i) {
      for (VertexId z : s.sphere(y, i)) {
        if (covered[z]++) disjoint = false;
      }
    }
  }
  const bool partition = disjoint && std::all_of(covered.begin(), covered.end(), [](std::uint8_t c) { return c == 1; });
  o.require(v.support_size() * 16 == s.size(), "sphere-packing equality");
  o.require(partition, "radius-1 spheres partition H(15,2)");
  CodeParameters p = parameters(v, 0);
  o.require(p.delta == 3 && p.dual_s == 1, "delta = 3, s* = 1");
  AMOptions opt;
  AMReport rep = am_v1(v, 0, opt);
  o.require(rep.t == 2 && rep.status == Verification::Verified, "V1 t = " + std::to_string(rep.t));
  std::ostringstream log;
  o.require(shells_are_designs(v, 2, log), "shells:" + log.str());
  o.detail << "|Y| = " << v.support_size() << ", delta = " << p.delta.value_or(-1) << ", s* = " << p.dual_s
           << ", V1 t = " << rep.t << ", all shells 2-designs";
}

// 6 -------------------------------------------------------------------------
void strength_link(Outcome& o) {
  std::mt19937_64 rng(6);
  int nontrivial = 0;
  for (int n = 0; n < 20; ++n) {
    const int q = 2 + static_cast<int>(rng() % 2);
    const int D = 3 + static_cast<int>(rng() % (q == 2 ? 6 : 4));
    CodeVector Y = [&] {
      if (n % 2 == 0) {
        auto s = scheme("H(" + std::to_string(D) + "," + std::to_string(q) + ")");
        const std::uint64_t size = 2 + rng() % (s->size() - 2);
        return random_subset(s, size, rng());
      }
      const int k = D / 2 + static_cast<int>(rng() % (D - D / 2));
      return random_linear(D, q, k, rng());
    }();
    const int strength = oa_strength(Y);
    const int dual_delta = parameters(Y, 0).dual_delta;
    nontrivial += strength > 0;
    o.require(strength == dual_delta - 1, Y.scheme().name() + ": strength " + std::to_string(strength) +
                                              " vs delta* - 1 = " + std::to_string(dual_delta - 1));
  }
  o.detail << "20 codes, " << nontrivial << " with positive strength";
}

// 7 -------------------------------------------------------------------------
void martin_bounds(Outcome& o) {
  std::vector<CodeVector> population;
  for (const auto& e : corpus()) population.push_back(corpus_code(e.name));
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const int q = 2 + static_cast<int>(rng() % 2);
    const int D = 3 + static_cast<int>(rng() % 8);
    const int k = 1 + static_cast<int>(rng() % std::min(D - 1, q == 2 ? 9 : 6));
    population.push_back(random_linear(D, q, k, rng()));
  }
  int cases = 0, exempt = 0, inapplicable = 0;
  std::map<std::string, int> branches;
  for (const auto& Y : population) {
    for (auto side : {MartinSide::P, MartinSide::Q}) {
      MartinOutcome m = side == MartinSide::P ? martin_trichotomy_P(Y) : martin_trichotomy_Q(Y);
      ++cases;
      if (!m.applicable) {
        ++inapplicable;
        continue;
      }
      ++branches[std::string(martin_branch_name(m.branch))];
      exempt += m.exempt;
      o.require(!m.violation(), Y.scheme().name() + " side " + (side == MartinSide::P ? "P" : "Q") + " branch " +
                                    std::string(martin_branch_name(m.branch)) + " bound " + m.bound.name);
    }
  }
  o.detail << cases << " cases (" << inapplicable << " not applicable, " << exempt << " exempt); branches:";
  for (const auto& [b, c] : branches) o.detail << " " << b << "=" << c;
}

// 8 -------------------------------------------------------------------------
void dense_lab(Outcome& o) {
  double worst_tri = 0, worst_split = 0, worst_cos = 0;
  for (const std::string name : {"H(6,2)", "H(4,3)", "J(7,3)", "J(8,4)"}) {
    auto s = scheme(name);
    DenseOperatorSet ops = DenseOperatorSet::build(s, 0);
    LabOptions lo;
    Decomposition dec = decompose_modules(ops, lo);
    std::uint64_t total = 0;
    std::vector<long> eig(s->classes() + 1, 0);
    bool thin = true, shape = true;
    for (const auto& m : dec.modules) {
      total += m.dim();
      for (int j = 0; j <= s->classes(); ++j) eig[j] += m.eigen_dims[j];
      thin = thin && m.thin && m.dual_thin;
      if (s->family() == Family::Hamming && s->alphabet() == 2) shape = shape && m.r == m.dual_r && m.d == 6 - 2 * m.r;
      if (s->family() == Family::Johnson) shape = shape && m.r <= m.dual_r;
    }
    o.require(total == s->size(), name + ": module dimensions sum");
    for (int j = 0; j <= s->classes(); ++j) {
      o.require(eig[j] == static_cast<long>(s->multiplicities()[j].get_si()), name + ": dim E_j W sum");
    }
    o.require(thin, name + ": thin and dual thin");
    o.require(shape, name + ": endpoint/diameter relations");
    LabVerdict tri = verify_tridiagonal(ops, dec.modules, lo);
    o.require(tri.pass && tri.max_residual <= 1e-8, name + ": tridiagonal");
    ITTVerdict itt = verify_itt(ops, dec.modules, lo);
    o.require(itt.pass, name + ": W_ij (i<j) rank zero");
    SplitReport split = split_decomposition(ops, dec.modules, lo);
    bool tilde_zero = true;
    for (int i = 0; i <= s->classes(); ++i) {
      for (int j = 0; i + j < s->classes(); ++j) tilde_zero = tilde_zero && split.tilde_dims[i][j] == 0;
    }
    o.require(tilde_zero, name + ": tilde V_ij = 0 for i + j < D");
    o.require(split.verdict.pass && split.verdict.max_residual <= 1e-8, name + ": displacement reconstruction");
    worst_tri = std::max(worst_tri, tri.max_residual);
    worst_split = std::max(worst_split, split.verdict.max_residual);
    worst_cos = std::max(worst_cos, itt.max_cosine);
  }
  o.detail << "tridiagonal residual " << worst_tri << ", split residual " << worst_split << ", W_ij (i < j) all zero, largest principal cosine "
           << worst_cos << " (a shared direction needs 1 - 1e-8)";
}

// 9 -------------------------------------------------------------------------
struct LabCase {
  std::string scheme;
  DenseOperatorSet ops;
  std::vector<IrreducibleModuleRecord> modules;
};

// Keeps a generated subset away from the two degenerate non-codes: a single
// vertex and the whole vertex set.
CodeVector as_code(const SchemePtr& s, std::vector<VertexId> ids) {
  if (ids.size() == s->size()) ids.pop_back();
  for (VertexId z = 0; ids.size() < 2; ++z) {
    if (!std::binary_search(ids.begin(), ids.end(), z)) {
      ids.push_back(z);
      std::sort(ids.begin(), ids.end());
    }
  }
  return CodeVector::subset(s, ids);
}

CodeVector population_member(const SchemePtr& s, std::mt19937_64& rng, int n) {
  const int D = s->classes();
  switch (n % 3) {
    case 0: return random_subset(s, 2 + rng() % (s->size() - 2), rng());
    case 1: {
      // Union of whole spheres around 0.
      std::vector<VertexId> ids;
      for (int i = 0; i <= D; ++i) {
        if (rng() % 2) {
          auto sp = s->sphere(0, i);
          ids.insert(ids.end(), sp.begin(), sp.end());
        }
      }
      std::sort(ids.begin(), ids.end());
      return as_code(s, ids);
    }
    default: {
      const int q = s->alphabet();
      if (s->family() == Family::Hamming && (q == 2 || q == 3 || q == 5 || q == 7)) {
        return random_linear(D, s->alphabet(), 1 + static_cast<int>(rng() % (D - 1)), rng());
      }
      // Johnson: a random subset together with the sphere it meets most.
      CodeVector base = random_subset(s, 2 + rng() % (s->size() / 2), rng());
      std::vector<VertexId> ids = base.support();
      auto sp = s->sphere(0, static_cast<int>(rng() % (D + 1)));
      ids.insert(ids.end(), sp.begin(), sp.end());
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      return as_code(s, ids);
    }
  }
}

void equivalence_suite(Outcome& o) {
  std::vector<std::string> names = {"H(4,2)", "H(5,2)", "H(6,2)", "H(3,3)", "H(4,3)", "J(6,3)", "J(7,3)", "J(8,4)"};
  std::vector<LabCase> lab;
  LabOptions lo;
  for (const auto& name : names) {
    auto s = scheme(name);
    DenseOperatorSet ops = DenseOperatorSet::build(s, 0);
    auto modules = decompose_modules(ops, lo).modules;
    lab.push_back({name, std::move(ops), std::move(modules)});
  }
  std::mt19937_64 rng(9);
  int discrepancies = 0, positive = 0, semilattice_checks = 0;
  for (int n = 0; n < 50; ++n) {
    LabCase& c = lab[n % lab.size()];
    CodeVector chi = population_member(c.ops.scheme_ptr(), rng, n / static_cast<int>(lab.size()) + n);
    Eigen::VectorXd v = dense_vector(c.ops, chi.entries());
    for (auto side : {OrthogonalitySide::P, OrthogonalitySide::Q}) {
      OrthogonalityVerdict verdict = module_orthogonality_test(c.ops, c.modules, v, 1, side, nullptr, lo);
      positive += verdict.module_level > 0;
      if (!verdict.equivalent) {
        ++discrepancies;
        o.require(false, c.scheme + (side == OrthogonalitySide::P ? " P" : " Q") + ": module level " +
                             std::to_string(verdict.module_level) + " vs operator level " +
                             std::to_string(verdict.operator_level));
      }
    }
    const int level = relative_design_level(chi, 0).max_level;
    for (int t = 1; t <= c.ops.D(); ++t) {
      const bool holds = semilattice_design_check(chi, 0, t).holds;
      ++semilattice_checks;
      if (holds != (level >= t)) {
        ++discrepancies;
        o.require(false, c.scheme + ": design level " + std::to_string(level) + " vs semilattice at t = " +
                             std::to_string(t));
      }
    }
  }
  o.detail << "50 codes, 100 module/operator comparisons (" << positive << " with positive level), "
           << semilattice_checks << " semilattice comparisons, " << discrepancies << " discrepancies";
}

// 10 ------------------------------------------------------------------------
int measured_codesign_level(const CodeVector& chi, VertexId x) {
  const int D = chi.scheme().classes();
  int level = D;
  for (int l = 0; l <= D; ++l) {
    CodeVector image = apply_Ai(chi, l);
    level = std::min(level, relative_codesign_level(image, x).max_level);
  }
  return level;
}

int measured_design_level(const CodeVector& chi, VertexId x) {
  const int D = chi.scheme().classes();
  int level = D;
  BaseProfile p = base_profile(chi, x);
  for (int k = 0; k <= D; ++k) {
    if (!p.hits[k]) continue;
    level = std::min(level, relative_design_level(chi.restricted_to_shell(x, k), x).max_level);
  }
  return level;
}

// Small codes with designs on their shells, moved by a random translation
// (Hamming) or a random relabelling of the ground set (Johnson).
CodeVector structured_code(std::mt19937_64& rng, int n) {
  auto relabel = [&](const std::string& name, const std::vector<std::vector<int>>& blocks) {
    auto s = scheme(name);
    std::vector<int> perm(s->ground_set());
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<VertexId> ids;
    for (const auto& b : blocks) {
      Vertex v;
      for (int e : b) v.symbols.push_back(perm[e - 1]);
      std::sort(v.symbols.begin(), v.symbols.end());
      ids.push_back(s->encode(v));
    }
    std::sort(ids.begin(), ids.end());
    return CodeVector::subset(s, ids);
  };
  auto shifted = [&](const CodeVector& code) {
    const Scheme& s = code.scheme();
    Vertex v{std::vector<int>(s.classes())};
    for (int& a : v.symbols) a = static_cast<int>(rng() % s.alphabet());
    return translate(code, v);
  };
  switch (n % 6) {
    case 0: return shifted(hamming_code(3));
    case 1: {
      // Extended Hamming [8,4,4].
      std::vector<VertexId> ids;
      auto s = scheme("H(8,2)");
      const CodeVector h = hamming_code(3);
      for (VertexId id : h.support()) {
        Vertex w = h.scheme().decode(id);
        int parity = 0;
        for (int a : w.symbols) parity ^= a;
        w.symbols.push_back(parity);
        ids.push_back(s->encode(w));
      }
      std::sort(ids.begin(), ids.end());
      return shifted(CodeVector::subset(s, ids));
    }
    case 2: {
      // Tetracode [4,2,3] over GF(3).
      auto s = scheme("H(4,3)");
      std::vector<VertexId> ids;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) ids.push_back(s->encode(Vertex{{a, b, (a + b) % 3, (a + 2 * b) % 3}}));
      }
      std::sort(ids.begin(), ids.end());
      return shifted(CodeVector::subset(s, ids));
    }
    case 3: {
      std::vector<std::vector<int>> fano;
      for (int i = 0; i < 7; ++i) fano.push_back({i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1});
      return relabel("J(7,3)", fano);
    }
    case 4: {
      // Lines of the affine plane of order 3.
      std::vector<std::vector<int>> lines;
      auto pt = [](int a, int b) { return 3 * a + b + 1; };
      for (int c = 0; c < 3; ++c) lines.push_back({pt(c, 0), pt(c, 1), pt(c, 2)});
      for (int m = 0; m < 3; ++m) {
        for (int c = 0; c < 3; ++c) lines.push_back({pt(0, c), pt(1, (m + c) % 3), pt(2, (2 * m + c) % 3)});
      }
      return relabel("J(9,3)", lines);
    }
    default: return shifted(repetition(5, 3));
  }
}

void soundness_sweep(Outcome& o) {
  const std::vector<std::string> names = {"H(8,2)", "H(10,2)", "H(12,2)", "H(5,3)", "H(7,3)",
                                          "H(6,4)", "J(9,3)",  "J(10,4)", "J(12,5)", "J(14,4)"};
  std::mt19937_64 rng(10);
  AMOptions opt;
  opt.verify = false;
  opt.designs = false;
  opt.budget.dense_cap = 128;  // catalogs only for the small schemes
  int violations = 0;
  std::map<std::string, int> positive;
  for (int n = 0; n < 200; ++n) {
    CodeVector chi = [&] {
      if (n % 5 == 4) return structured_code(rng, n / 5);
      auto s = scheme(names[n % names.size()]);
      const int D = s->classes();
      if (s->family() == Family::Hamming && s->alphabet() <= 3 && n % 2 == 0) {
        return random_linear(D, s->alphabet(), 1 + static_cast<int>(rng() % (D - 1)), rng());
      }
      return population_member(s, rng, n);
    }();
    const Scheme* s = &chi.scheme();
    const int D = s->classes();
    const VertexId x = (n % 4 == 3) ? chi.support().front() : 0;
    const int codesign = measured_codesign_level(chi, x);
    const int design = measured_design_level(chi, x);
    const int anchored = anchored_level(chi, x, D);
    for (bool refine : {false, true}) {
      opt.refine = refine;
      AMReport v1 = am_v1(chi, x, opt);
      AMReport v2 = am_v2(chi, x, opt);
      auto bad = [&](const std::string& what, int t, int measured) {
        ++violations;
        o.require(false, s->name() + " code " + std::to_string(n) + ": " + what + " t = " + std::to_string(t) +
                             " exceeds measured " + std::to_string(measured));
      };
      if (v1.t > codesign) bad(refine ? "V1 refined" : "V1", v1.t, codesign);
      if (v2.t > design) bad(refine ? "V2 refined" : "V2", v2.t, design);
      positive["V1"] += v1.t > 0;
      positive["V2"] += v2.t > 0;
      if (refine) {
        opt.refine = false;
        if (v1.t < am_v1(chi, x, opt).t || v2.t < am_v2(chi, x, opt).t) {
          ++violations;
          o.require(false, s->name() + " code " + std::to_string(n) + ": refinement lowered t");
        }
      }
    }
    AMReport v3 = am_v3(chi, x, opt);
    positive["V3"] += v3.t > 0;
    if (v3.t > anchored) {
      ++violations;
      o.require(false, s->name() + " code " + std::to_string(n) + ": V3 t = " + std::to_string(v3.t) +
                           " exceeds measured " + std::to_string(anchored));
    }
  }
  o.detail << "200 codes, " << violations << " violations; runs with t > 0:";
  for (const auto& [k, c] : positive) o.detail << " " << k << "=" << c;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Golay fingerprints", 5, golay_fingerprints},
      {2, "classical Assmus-Mattson recovery", 10, classical_recovery},
      {3, "coset designs", 30, coset_designs},
      {4, "Witt design", 60, witt_design_check},
      {5, "perfect-code designs", 30, perfect_code},
      {6, "strength link", 60, strength_link},
      {7, "Martin bounds", 300, martin_bounds},
      {8, "dense-lab structure", 300, dense_lab},
      {9, "equivalence suite", 300, equivalence_suite},
      {10, "soundness sweep", 600, soundness_sweep},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.limit_seconds, "runtime over the limit");
    failed += !o.pass;
    std::printf("%s  criterion %2d  %-34s %8.2f s / %4.0f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_seconds, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
