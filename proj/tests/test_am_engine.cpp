#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "amlab/am_engine.hpp"
#include "amlab/corpus.hpp"

using namespace amlab;

namespace {

SchemePtr build(const std::string& text) { return Scheme::build(SchemeSpec::parse(text)); }

AMOptions quick() {
  AMOptions opt;
  opt.designs = false;
  return opt;
}

const LedgerRow& row(const AMReport& rep, int r) {
  for (const auto& x : rep.ledger) {
    if (x.r == r) return x;
  }
  throw std::runtime_error("no ledger row");
}

}  // namespace

TEST_CASE("binary Golay: degree-based version") {
  const CodeVector& g = corpus_code("golay-binary");
  AMOptions opt;
  opt.refine = true;
  AMReport refined = am_v2(g, 0, opt);
  CHECK(refined.t == 5);
  CHECK(refined.status == Verification::Verified);
  bool octads = false;
  for (const auto& d : refined.designs) {
    REQUIRE(d.result.has_value());
    CHECK(d.result->is_design);
    if (d.shell == 8) {
      octads = true;
      CHECK(d.t == 5);
      CHECK(d.result->lambda == 1u);
    }
  }
  CHECK(octads);
  opt.refine = false;
  CHECK(am_v2(g, 0, opt).t == 4);
}

TEST_CASE("ternary Golay: degree-based version") {
  AMOptions opt = quick();
  opt.refine = true;
  AMReport rep = am_v2(corpus_code("golay-ternary"), 0, opt);
  CHECK(rep.t == 3);
  CHECK(rep.status == Verification::Verified);
}

TEST_CASE("Witt design at a block") {
  const CodeVector& w = corpus_code("witt-24-8");
  AMReport rep = am_v1(w, w.support().front(), quick());
  CHECK(rep.t == 2);
  CHECK(rep.status == Verification::Verified);
  CHECK(rep.ledger.size() == 8);
  CHECK(row(rep, 2).pass);
  CHECK_FALSE(row(rep, 3).pass);
}

TEST_CASE("Vasil'ev code") {
  AMOptions opt;
  AMReport rep = am_v1(corpus_code("vasilev-15"), 0, opt);
  CHECK(rep.t == 2);
  CHECK(rep.status == Verification::Verified);
  for (const auto& d : rep.designs) CHECK(d.result->is_design);
}

TEST_CASE("clamping at zero still produces a report") {
  auto s = build("H(6,2)");
  CodeVector chi = random_subset(s, 30, 2);
  AMReport rep = am_v1(chi, 0, quick());
  CHECK(rep.t == 0);
  CHECK(rep.ledger.size() == 6);
  CHECK_FALSE(rep.ledger.front().pass);
}

TEST_CASE("metric-and-cometric version") {
  AMReport coset = am_v3(corpus_code("golay-ternary-coset3"), 0, quick());
  CHECK(coset.t == 1);
  CHECK(coset.status == Verification::Verified);
  const LedgerRow& r1 = row(coset, 1);
  CHECK(r1.terms[0].lhs == 2);  // {6, 9} inside [1, 11]
  CHECK(r1.terms[0].rhs == 2);
  CHECK(r1.pass);

  CHECK(am_v3(corpus_code("golay-binary"), 0, quick()).t >= 4);

  // A dense random code occupies every shell and every eigenspace.
  auto s = build("H(8,2)");
  AMReport dense = am_v3(random_subset(s, 120, 9), 0, quick());
  CHECK(dense.t == 0);
  CHECK(row(dense, 1).terms[0].lhs > row(dense, 1).terms[0].rhs);
  CHECK(row(dense, 1).terms[1].lhs > row(dense, 1).terms[1].rhs);
}

TEST_CASE("corollary on the weight-4 coset of the binary Golay code") {
  const CodeVector& coset = corpus_code("golay-binary-coset4");
  AMOptions opt = quick();
  opt.t = 1;
  AMReport one = cor1_check(coset, 0, opt);
  CHECK(one.requested_pass);
  CHECK(one.status == Verification::Verified);
  CHECK(*one.catalog_source == "closed-form");
  const LedgerRow& r1 = row(one, 1);
  CHECK(r1.terms[0].lhs == 3);
  CHECK(r1.terms[0].rhs == 3);
  opt.t = 2;
  AMReport two = cor1_check(coset, 0, opt);
  CHECK_FALSE(two.requested_pass);
  CHECK(two.status == Verification::Failed);
  CHECK_FALSE(row(two, 2).pass);
  CHECK(row(two, 2).terms[0].lhs == 3);
  CHECK(row(two, 2).terms[0].rhs == 2);
}

TEST_CASE("dual corollary on the binary Golay code") {
  AMOptions opt = quick();
  opt.t = 5;
  AMReport rep = cor2_check(corpus_code("golay-binary"), 0, opt);
  CHECK(rep.requested_pass);
  for (int r = 1; r <= 5; ++r) {
    CHECK(row(rep, r).pass);
    CHECK(row(rep, r).terms[0].lhs == 3);
  }
  CHECK(rep.status == Verification::Verified);
}

TEST_CASE("dual corollary with a dense catalog") {
  AMOptions opt = quick();
  opt.t = 1;
  opt.catalog = CatalogPolicy::Dense;
  AMReport rep = cor2_check(repetition(6), 0, opt);
  CHECK(*rep.catalog_source == "dense");
  CHECK(rep.requested_pass);
}

TEST_CASE("primary-module vectors pass the corollaries vacuously") {
  auto s = build("H(12,2)");
  CodeVector sphere = CodeVector::subset(s, s->sphere(0, 6));
  for (int t = 1; t <= 12; t += 5) {
    AMOptions opt = quick();
    opt.verify = false;
    opt.t = t;
    CHECK(cor1_check(sphere, 0, opt).requested_pass);
    CHECK(cor2_check(sphere, 0, opt).requested_pass);
  }
}

TEST_CASE("corollaries never do worse than the theorems") {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 8; ++n) {
    const int D = 4 + static_cast<int>(rng() % 6);
    CodeVector chi = random_linear(D, 2, 1 + static_cast<int>(rng() % (D - 1)), rng());
    AMOptions opt = quick();
    opt.verify = false;
    CHECK(cor1_check(chi, 0, opt).t >= am_v1(chi, 0, opt).t);
    CHECK(cor2_check(chi, 0, opt).t >= am_v2(chi, 0, opt).t);
  }
}

TEST_CASE("catalog unavailable degrades to the theorem") {
  AMOptions opt = quick();
  AMReport rep = cor1_check(corpus_code("golay-ternary"), 0, opt);
  CHECK(rep.t == am_v1(corpus_code("golay-ternary"), 0, opt).t);
  REQUIRE_FALSE(rep.notes.empty());
  CHECK(rep.notes.front().find("unavailable") != std::string::npos);
}

TEST_CASE("ledgers are prefix-monotone and refinement dominates") {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 10; ++n) {
    CodeVector chi = random_linear(8, 3, 2 + static_cast<int>(rng() % 5), rng());
    AMOptions opt = quick();
    opt.verify = false;
    for (Theorem th : {Theorem::V1, Theorem::V2, Theorem::V3}) {
      AMReport rep = am_check(th, chi, 0, opt);
      for (const auto& r : rep.ledger) {
        if (!r.pass) CHECK(rep.t < r.r);
      }
    }
    AMOptions refined = opt;
    refined.refine = true;
    CHECK(am_v1(chi, 0, refined).t >= am_v1(chi, 0, opt).t);
    CHECK(am_v2(chi, 0, refined).t >= am_v2(chi, 0, opt).t);
  }
}

TEST_CASE("budget exhaustion is reported as unverifiable") {
  AMOptions opt = quick();
  opt.refine = true;
  AMReport rep = am_v1(corpus_code("golay-binary"), 0, opt);
  CHECK(rep.t == 5);
  CHECK(rep.status == Verification::Unverifiable);
  CHECK(exit_status(rep.status) == 2);
}

TEST_CASE("parse theorem names") {
  CHECK(parse_theorem("1") == Theorem::V1);
  CHECK(parse_theorem("cor2") == Theorem::Cor2);
  CHECK_THROWS_AS(parse_theorem("4"), Error);
}

TEST_CASE("Martin trichotomy, distance side") {
  MartinOutcome rep = martin_trichotomy_P(repetition(8));
  CHECK(rep.branch == MartinBranch::AntipodalPair);
  CHECK(rep.exempt);
  CHECK_FALSE(rep.violation());
  CHECK_FALSE(rep.bound.holds());  // 8 <= 2 + 1 - 1 fails; the exemption covers it

  MartinOutcome even = martin_trichotomy_P(even_weight(6));
  CHECK(even.branch == MartinBranch::BipartiteHalf);
  CHECK_FALSE(even.violation());

  MartinOutcome pair = martin_trichotomy_P(complementary_pair(4));
  CHECK(pair.antipodal_pair);
  CHECK(pair.exempt);

  std::mt19937_64 rng(5);
  for (int n = 0; n < 10; ++n) {
    const int q = 2 + static_cast<int>(rng() % 2);
    const int D = 4 + static_cast<int>(rng() % 5);
    CodeVector Y = random_linear(D, q, 2 + static_cast<int>(rng() % (D - 3)), rng());
    MartinOutcome m = martin_trichotomy_P(Y);
    CHECK_FALSE(m.violation());
    if (!m.bipartite_half && !m.antipodal_pair) CHECK(m.bound.holds());
  }
}

TEST_CASE("Martin trichotomy, dual side") {
  MartinOutcome even = martin_trichotomy_Q(even_weight(6));
  CHECK(even.branch == MartinBranch::BipartiteHalf);
  CHECK(even.exempt);
  CHECK_FALSE(even.violation());

  MartinOutcome rep = martin_trichotomy_Q(repetition(7));
  CHECK(rep.branch == MartinBranch::AntipodalPair);
  CHECK(rep.dual_delta == 2);
  CHECK(rep.s == 1);
  CHECK(rep.bound.holds());

  MartinOutcome johnson = martin_trichotomy_Q(corpus_code("witt-24-8"));
  CHECK_FALSE(johnson.applicable);
  CHECK(johnson.branch == MartinBranch::NotApplicable);
  CHECK_FALSE(johnson.violation());

  auto s = build("H(4,2)");
  CHECK_THROWS_AS(martin_trichotomy_Q(CodeVector(s, {{0, Rational(2)}, {5, Rational(1)}})), Error);
}
