// amlab: command-line front end. Every command prints one JSON document.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"

#include "amlab/am_engine.hpp"
#include "amlab/code_io.hpp"
#include "amlab/corpus.hpp"
#include "amlab/report.hpp"

using namespace amlab;

namespace {

struct Globals {
  unsigned threads = 1;
  std::uint64_t steps = Budget{}.steps;
  std::uint64_t dense_cap = Budget{}.dense_cap;
  std::uint64_t shell_cap = Budget{}.shell_cap;
  std::uint64_t seed = 1;
  std::string out;

  Budget budget() const {
    Budget b;
    b.steps = steps;
    b.dense_cap = dense_cap;
    b.shell_cap = shell_cap;
    b.threads = std::max(1u, threads);
    return b;
  }
  json echo() const {
    return {{"threads", threads}, {"budget", steps}, {"dense_cap", dense_cap}, {"shell_cap", shell_cap}, {"seed", seed}};
  }
};

struct CodeSource {
  std::string scheme;
  std::string file;
  std::string corpus;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--scheme", scheme, "Scheme, e.g. H(24,2) or J(24,8)");
    auto* f = cmd->add_option("--code", file, "Code file");
    auto* c = cmd->add_option("--corpus", corpus, "Built-in corpus entry");
    f->excludes(c);
  }
  CodeVector load() const {
    SchemePtr s = scheme.empty() ? nullptr : Scheme::build(SchemeSpec::parse(scheme));
    if (!corpus.empty()) {
      const CodeVector& code = corpus_code(corpus);
      if (s && !(s->spec() == code.scheme().spec())) {
        throw Error(ErrorCode::Config, "corpus entry " + corpus + " lives in " + code.scheme().name());
      }
      return code;
    }
    if (file.empty()) throw Error(ErrorCode::Config, "give --code <file> or --corpus <entry>");
    return load_code(file, s);
  }
  json echo() const {
    json j;
    if (!scheme.empty()) j["scheme"] = scheme;
    if (!file.empty()) j["code"] = file;
    if (!corpus.empty()) j["corpus"] = corpus;
    return j;
  }
};

// "zero", "auto", "all-members", "sample:N" or a vertex.
std::vector<VertexId> resolve_bases(const std::string& policy, const CodeVector& chi, std::uint64_t seed) {
  const Scheme& s = chi.scheme();
  if (policy.empty() || policy == "zero" || policy == "auto") return {0};
  if (policy == "all-members") return chi.support();
  if (policy.rfind("sample:", 0) == 0) {
    const std::uint64_t n = std::stoull(policy.substr(7));
    std::vector<VertexId> members = chi.support();
    std::mt19937_64 rng(seed);
    std::vector<VertexId> out;
    for (std::uint64_t i = 0; i < n && !members.empty(); ++i) {
      std::size_t pick = rng() % members.size();
      out.push_back(members[pick]);
      members.erase(members.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  return {s.encode(s.parse_vertex(policy))};
}

void emit(const Globals& g, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error(ErrorCode::Config, "cannot write " + g.out);
  f << text;
}

Verification worst(Verification a, Verification b) {
  auto rank = [](Verification v) { return v == Verification::Failed ? 2 : v == Verification::Unverifiable ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assmus-Mattson analyses over Hamming and Johnson schemes"};
  app.require_subcommand(1);
  Globals g;
  if (const char* env = std::getenv("AMLAB_BUDGET")) {
    try {
      g.steps = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "AMLAB_BUDGET must be a positive integer\n";
      return 1;
    }
  }
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.steps, "Enumeration step budget (overrides AMLAB_BUDGET)")->check(CLI::PositiveNumber);
  app.add_option("--dense-cap", g.dense_cap, "Largest |X| for dense operator work")->check(CLI::PositiveNumber);
  app.add_option("--shell-cap", g.shell_cap, "Largest shell enumerated")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Write the report here instead of stdout");

  int exit_code = 0;
  std::function<json()> run;
  json config;

  // scheme info
  auto* scheme_cmd = app.add_subcommand("scheme", "Scheme data");
  scheme_cmd->require_subcommand(1);
  auto* info = scheme_cmd->add_subcommand("info", "Eigenmatrices, valencies and multiplicities");
  std::string info_scheme, family;
  int fam_d = 0, fam_q = 0, fam_n = 0;
  info->add_option("--scheme", info_scheme, "Scheme, e.g. H(4,2)");
  info->add_option("--family", family, "hamming or johnson")->check(CLI::IsMember({"hamming", "johnson"}));
  info->add_option("--d", fam_d, "Number of classes D");
  info->add_option("--q", fam_q, "Alphabet size (Hamming)");
  info->add_option("--n", fam_n, "Ground set size (Johnson)");
  info->add_flag("--json", "Accepted for compatibility; reports are always JSON");
  info->callback([&] {
    run = [&] {
      SchemeSpec spec;
      if (!info_scheme.empty()) spec = SchemeSpec::parse(info_scheme);
      else if (family == "hamming") spec = SchemeSpec::hamming(fam_d, fam_q);
      else if (family == "johnson") spec = SchemeSpec::johnson(fam_n, fam_d);
      else throw Error(ErrorCode::Config, "give --scheme or --family with --d and --q/--n");
      config = {{"command", "scheme info"}, {"scheme", spec.to_string()}};
      return scheme_info(*Scheme::build(spec));
    };
  });

  // code params
  auto* code_cmd = app.add_subcommand("code", "Code parameters");
  code_cmd->require_subcommand(1);
  auto* params = code_cmd->add_subcommand("params", "Distance/dual distributions and the parameter bundle");
  CodeSource params_src;
  std::string params_base;
  params_src.add_options(params);
  params->add_option("--base", params_base, "Base vertex, zero, auto, all-members or sample:N");
  params->callback([&] {
    run = [&] {
      CodeVector chi = params_src.load();
      config = params_src.echo();
      config["command"] = "code params";
      config["base"] = params_base.empty() ? "zero" : params_base;
      DistanceDistribution dist = distance_distribution(chi, g.budget());
      json result;
      result["scheme"] = chi.scheme().name();
      result["size"] = chi.support_size();
      result["is_subset"] = chi.is_subset();
      result["norm_squared"] = to_string(chi.norm_squared());
      result["distribution"] = to_json(dist);
      json per = json::array();
      for (VertexId x : resolve_bases(params_base, chi, g.seed)) {
        per.push_back(to_json(parameters(chi, dist, base_profile(chi, x)), chi.scheme()));
      }
      result["parameters"] = per;
      if (chi.is_subset()) result["regular"] = is_regular_code(chi);
      return result;
    };
  });

  // am check
  auto* am_cmd = app.add_subcommand("am", "Assmus-Mattson analyses");
  am_cmd->require_subcommand(1);
  auto* check = am_cmd->add_subcommand("check", "Certify t and verify the conclusion");
  CodeSource am_src;
  std::string am_version = "1", am_base, am_catalog = "auto";
  bool am_refine = false, am_verify_designs = false, am_no_verify = false;
  std::optional<int> am_t;
  am_src.add_options(check);
  check->add_option("--version", am_version, "1, 2, 3, cor1 or cor2");
  check->add_option("--base", am_base, "Base vertex, zero, all-members or sample:N");
  check->add_flag("--refine", am_refine, "Use the refined dual degree / degree");
  check->add_flag("--verify-designs", am_verify_designs, "Extract and check shell designs");
  check->add_flag("--no-verify", am_no_verify, "Skip the direct cross-checks");
  check->add_option("--t", am_t, "Corollaries: the t to test");
  check->add_option("--catalog", am_catalog, "Module catalog: auto, closed-form or dense")
      ->check(CLI::IsMember({"auto", "closed-form", "dense"}));
  check->callback([&] {
    run = [&] {
      CodeVector chi = am_src.load();
      AMOptions opt;
      opt.refine = am_refine;
      opt.verify = !am_no_verify;
      opt.designs = am_verify_designs;
      opt.t = am_t;
      opt.catalog = am_catalog == "closed-form" ? CatalogPolicy::ClosedForm
                    : am_catalog == "dense"     ? CatalogPolicy::Dense
                                                : CatalogPolicy::Auto;
      opt.budget = g.budget();
      opt.lab.seed = g.seed;
      const Theorem th = parse_theorem(am_version);
      config = am_src.echo();
      config.update({{"command", "am check"}, {"version", am_version}, {"base", am_base.empty() ? "zero" : am_base},
                     {"refine", am_refine}, {"verify_designs", am_verify_designs}, {"verify", !am_no_verify},
                     {"t", am_t ? json(*am_t) : json(nullptr)}, {"catalog", am_catalog}});
      json reports = json::array();
      Verification overall = Verification::Verified;
      for (VertexId x : resolve_bases(am_base, chi, g.seed)) {
        AMReport rep = am_check(th, chi, x, opt);
        overall = worst(overall, rep.status);
        json rj = to_json(rep);
        rj["parameters"] = to_json(rep.parameters, chi.scheme());
        reports.push_back(rj);
      }
      exit_code = exit_status(overall);
      json result{{"scheme", chi.scheme().name()}, {"status", std::string(verification_name(overall))},
                  {"reports", reports}};
      if (am_base == "all-members" && chi.is_subset()) result["regular"] = is_regular_code(chi);
      return result;
    };
  });

  // design verify
  auto* design_cmd = app.add_subcommand("design", "Combinatorial design checks");
  design_cmd->require_subcommand(1);
  auto* dverify = design_cmd->add_subcommand("verify", "t-design check of a shell");
  CodeSource design_src;
  std::string design_base;
  int design_t = 1;
  std::optional<int> design_shell;
  design_src.add_options(dverify);
  dverify->add_option("--t", design_t, "Strength")->required();
  auto* shell_opt = dverify->add_option("--shell", design_shell, "Shell index k; all nonempty shells when omitted");
  dverify->add_flag("--all-shells", "Check every nonempty shell (the default)")->excludes(shell_opt);
  dverify->add_option("--base", design_base, "Base vertex (zero by default)");
  dverify->callback([&] {
    run = [&] {
      CodeVector chi = design_src.load();
      const VertexId x = resolve_bases(design_base, chi, g.seed).front();
      config = design_src.echo();
      config.update({{"command", "design verify"}, {"t", design_t}, {"base", chi.scheme().format_id(x)},
                     {"shell", design_shell ? json(*design_shell) : json(nullptr)}});
      std::vector<int> shells;
      BaseProfile prof = base_profile(chi, x);
      for (int k = 0; k <= chi.scheme().classes(); ++k) {
        if ((design_shell && *design_shell == k) || (!design_shell && prof.e[k])) shells.push_back(k);
      }
      json out = json::array();
      bool all = true;
      for (int k : shells) {
        BlockMultiset bm = shell_design_extract(chi, x, k);
        // A shell of k-subsets cannot carry more than a k-design.
        const int strength = design_shell ? design_t : std::min(design_t, bm.k);
        TDesignResult res = t_design_check(bm, strength, g.budget());
        all = all && res.is_design;
        json r = to_json(res);
        r.update({{"shell", k}, {"v", bm.v}, {"k", bm.k}, {"blocks", bm.total()}, {"distinct", bm.distinct()}});
        out.push_back(r);
      }
      exit_code = all ? 0 : 1;
      return json{{"shells", out}, {"all_designs", all}};
    };
  });

  // bounds martin
  auto* bounds_cmd = app.add_subcommand("bounds", "Distance bounds");
  bounds_cmd->require_subcommand(1);
  auto* martin = bounds_cmd->add_subcommand("martin", "Martin trichotomy and the matching bound");
  CodeSource martin_src;
  std::string side = "P";
  std::optional<int> martin_t;
  martin_src.add_options(martin);
  martin->add_option("--side", side, "P or Q")->check(CLI::IsMember({"P", "Q"}));
  martin->add_option("--t", martin_t, "Level to use instead of the derived one");
  martin->callback([&] {
    run = [&] {
      CodeVector chi = martin_src.load();
      config = martin_src.echo();
      config.update({{"command", "bounds martin"}, {"side", side}, {"t", martin_t ? json(*martin_t) : json(nullptr)}});
      MartinOutcome m = side == "P" ? martin_trichotomy_P(chi, martin_t, g.budget())
                                    : martin_trichotomy_Q(chi, martin_t, g.budget());
      exit_code = m.violation() ? 1 : 0;
      json r = to_json(m);
      r["scheme"] = chi.scheme().name();
      return r;
    };
  });

  // tmod decompose / verify
  auto* tmod = app.add_subcommand("tmod", "Terwilliger-algebra laboratory");
  tmod->require_subcommand(1);
  std::string tmod_scheme, tmod_base;
  auto* decompose = tmod->add_subcommand("decompose", "Irreducible module decomposition");
  decompose->add_option("--scheme", tmod_scheme, "Scheme")->required();
  decompose->add_option("--base", tmod_base, "Base vertex (zero by default)");
  auto lab_setup = [&](const std::string& command) {
    auto scheme = Scheme::build(SchemeSpec::parse(tmod_scheme));
    VertexId x = tmod_base.empty() || tmod_base == "zero" ? 0 : scheme->encode(scheme->parse_vertex(tmod_base));
    config = {{"command", command}, {"scheme", scheme->name()}, {"base", scheme->format_id(x)}};
    return DenseOperatorSet::build(scheme, x, g.budget());
  };
  auto lab_options = [&] {
    LabOptions lo;
    lo.seed = g.seed;
    return lo;
  };
  decompose->callback([&] {
    run = [&] {
      DenseOperatorSet ops = lab_setup("tmod decompose");
      Decomposition dec = decompose_modules(ops, lab_options());
      std::map<ModuleSignature, int> grouped;
      for (const auto& m : dec.modules) ++grouped[signature(m)];
      json classes = json::array();
      for (const auto& [sig, count] : grouped) {
        json c = to_json(sig);
        c["multiplicity"] = count;
        classes.push_back(c);
      }
      std::uint64_t total = 0;
      for (const auto& m : dec.modules) total += m.dim();
      return json{{"modules", dec.modules.size()}, {"total_dimension", total}, {"order", ops.n()},
                  {"restarts", dec.restarts}, {"classes", classes}};
    };
  });
  auto* tverify = tmod->add_subcommand("verify", "Tridiagonal, vanishing-block and split checks");
  CodeSource tv_src;
  std::optional<int> tv_t;
  std::string tv_side = "P";
  std::vector<std::string> tv_checks{"tridiagonal", "itt", "split"};
  tverify->add_option("--scheme", tmod_scheme, "Scheme")->required();
  tverify->add_option("--base", tmod_base, "Base vertex (zero by default)");
  tverify->add_option("--code", tv_src.file, "Code for the orthogonality comparison");
  tverify->add_option("--corpus", tv_src.corpus, "Corpus entry for the orthogonality comparison");
  tverify->add_option("--t", tv_t, "Level for the orthogonality comparison");
  tverify->add_option("--side", tv_side, "P, Q or PQ")->check(CLI::IsMember({"P", "Q", "PQ"}));
  tverify->add_option("--checks", tv_checks, "Comma-separated subset of tridiagonal, itt, split")
      ->delimiter(',')
      ->check(CLI::IsMember({"tridiagonal", "itt", "split"}));
  tverify->callback([&] {
    run = [&] {
      DenseOperatorSet ops = lab_setup("tmod verify");
      LabOptions lo = lab_options();
      Decomposition dec = decompose_modules(ops, lo);
      auto wanted = [&](const char* name) { return std::find(tv_checks.begin(), tv_checks.end(), name) != tv_checks.end(); };
      config["checks"] = tv_checks;
      json result{{"modules", dec.modules.size()}};
      bool pass = true;
      if (wanted("tridiagonal")) {
        LabVerdict tri = verify_tridiagonal(ops, dec.modules, lo);
        result["tridiagonal"] = to_json(tri);
        pass = pass && tri.pass;
      }
      if (wanted("itt")) {
        ITTVerdict itt = verify_itt(ops, dec.modules, lo);
        json itt_j = to_json(static_cast<const LabVerdict&>(itt));
        itt_j["max_cosine"] = itt.max_cosine;
        result["itt"] = itt_j;
        pass = pass && itt.pass;
      }
      // The orthogonality comparison needs the split decomposition as well.
      const bool with_code = !tv_src.file.empty() || !tv_src.corpus.empty();
      SplitReport split;
      if (wanted("split") || with_code) split = split_decomposition(ops, dec.modules, lo);
      if (wanted("split")) {
        result["split"] = to_json(split);
        pass = pass && split.verdict.pass;
      }
      if (with_code) {
        tv_src.scheme = tmod_scheme;
        CodeVector chi = tv_src.load();
        const OrthogonalitySide s = tv_side == "P" ? OrthogonalitySide::P
                                    : tv_side == "Q" ? OrthogonalitySide::Q
                                                     : OrthogonalitySide::PQ;
        OrthogonalityVerdict v = module_orthogonality_test(ops, dec.modules, dense_vector(ops, chi.entries()),
                                                           tv_t.value_or(1), s, &split, lo);
        result["orthogonality"] = to_json(v);
        config.update(tv_src.echo());
        config.update({{"t", tv_t.value_or(1)}, {"side", tv_side}});
        pass = pass && v.equivalent;
      }
      exit_code = pass ? 0 : 1;
      return result;
    };
  });

  // corpus list / emit
  auto* corpus_cmd = app.add_subcommand("corpus", "Built-in codes");
  corpus_cmd->require_subcommand(1);
  auto* list = corpus_cmd->add_subcommand("list", "List entries with their fingerprints");
  list->callback([&] {
    run = [&] {
      config = {{"command", "corpus list"}};
      json out = json::array();
      for (const auto& e : corpus()) out.push_back(to_json(e));
      return out;
    };
  });
  auto* emit_cmd = corpus_cmd->add_subcommand("emit", "Write an entry as a code file");
  std::string emit_name, emit_file;
  emit_cmd->add_option("--name", emit_name, "Entry name")->required();
  emit_cmd->add_option("--out", emit_file, "Code file to write")->required();
  emit_cmd->callback([&] {
    run = [&] {
      const CorpusEntry& e = corpus_entry(emit_name);
      const CodeVector& code = corpus_code(emit_name);
      save_code(emit_file, code, e.name + ": " + e.note);
      config = {{"command", "corpus emit"}, {"name", emit_name}, {"out", emit_file}};
      return json{{"name", e.name}, {"scheme", code.scheme().name()}, {"size", code.support_size()},
                  {"fingerprint_mismatches", check_fingerprint(e.fingerprint, code)}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    json result = run();
    config["globals"] = g.echo();
    emit(g, envelope(config, result));
  } catch (const Error& e) {
    config["globals"] = g.echo();
    json doc = envelope(config, error_json(e));
    std::cout << doc.dump(2) << "\n";
    return e.code() == ErrorCode::Budget ? 2 : 1;
  }
  return exit_code;
}
