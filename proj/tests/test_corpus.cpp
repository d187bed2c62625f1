#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "amlab/code_io.hpp"
#include "amlab/corpus.hpp"
#include "amlab/design.hpp"

using namespace amlab;

TEST_CASE("every corpus entry reproduces its fingerprint") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    const CodeVector& code = corpus_code(e.name);
    CHECK(code.scheme().name() == e.scheme);
    CHECK(check_fingerprint(e.fingerprint, code).empty());
  }
}

TEST_CASE("a wrong fingerprint is reported") {
  Fingerprint fp;
  fp.size = 3;
  fp.delta = 5;
  CHECK(check_fingerprint(fp, repetition(4)).size() == 2);
}

TEST_CASE("the Witt design is the octad shell of the binary Golay code") {
  const CodeVector& g = corpus_code("golay-binary");
  const CodeVector& w = corpus_code("witt-24-8");
  BlockMultiset octads = shell_design_extract(g, 0, 8);
  std::set<Block> from_golay;
  for (const auto& [b, m] : octads.blocks) from_golay.insert(b);
  std::set<Block> from_witt;
  for (VertexId id : w.support()) from_witt.insert(w.scheme().decode(id).symbols);
  CHECK(from_golay == from_witt);
  // Pairwise intersections are 0, 2 or 4.
  DistanceDistribution d = distance_distribution(w);
  for (int i = 1; i <= 8; ++i) CHECK((d.a[i] != 0) == (i == 4 || i == 6 || i == 8));
}

TEST_CASE("coset leaders") {
  const CodeVector& g = corpus_code("golay-binary");
  Vertex hole = deep_hole(g, 5);
  CHECK(std::count(hole.symbols.begin(), hole.symbols.end(), 1) == 4);
  Vertex t = deep_hole(corpus_code("golay-ternary"), 4);
  CHECK(std::count_if(t.symbols.begin(), t.symbols.end(), [](int a) { return a != 0; }) == 3);
  CHECK(deep_hole(hamming_code(3), 3).symbols.size() == 7);
}

TEST_CASE("Vasil'ev code is perfect and nonlinear") {
  const CodeVector& v = corpus_code("vasilev-15");
  const Scheme& s = v.scheme();
  CHECK(v.support_size() * 16 == s.size());
  CHECK(v.value(0) == 1);
  bool nonlinear = false;
  auto members = v.support();
  for (std::size_t i = 0; i < members.size() && !nonlinear; i += 37) {
    for (std::size_t j = 0; j < members.size() && !nonlinear; j += 41) {
      Packed sum = s.pack_id(members[i]) ^ s.pack_id(members[j]);
      nonlinear = v.value(s.id_of(sum)) == 0;
    }
  }
  CHECK(nonlinear);
}

TEST_CASE("random generators are deterministic") {
  CHECK(random_linear(9, 3, 4, 77).entries() == random_linear(9, 3, 4, 77).entries());
  CHECK(random_linear(9, 3, 4, 77).support_size() == 81);
  auto s = Scheme::build(SchemeSpec::johnson(10, 4));
  CHECK(random_subset(s, 20, 5).entries() == random_subset(s, 20, 5).entries());
  CHECK_THROWS_AS(random_linear(5, 4, 2, 1), Error);
  CHECK_THROWS_AS(random_subset(s, 1000, 1), Error);
}

TEST_CASE("code files round-trip") {
  for (const char* name : {"golay-ternary", "witt-24-8", "complementary-pair-8-4"}) {
    const CodeVector& code = corpus_code(name);
    std::stringstream buf;
    write_code(buf, code, "round trip");
    CodeVector back = read_code(buf, nullptr);
    CHECK(back.scheme().name() == code.scheme().name());
    CHECK(back.entries() == code.entries());
  }
  auto s = Scheme::build(SchemeSpec::hamming(3, 2));
  CodeVector weighted(s, {{1, Rational(3, 2)}, {6, Rational(-1)}});
  std::stringstream buf;
  write_code(buf, weighted);
  CodeVector back = read_code(buf, s);
  CHECK(back.entries() == weighted.entries());
  CHECK_FALSE(back.is_subset());
}

TEST_CASE("code file parsing") {
  auto s = Scheme::build(SchemeSpec::hamming(3, 2));
  std::istringstream ok("# a comment\n000\n\n  111   # trailing\n1/2\t010\n");
  CodeVector c = read_code(ok, s);
  CHECK(c.support_size() == 3);
  CHECK(c.value(2) == Rational(1, 2));

  auto error_line = [&](const std::string& text, SchemePtr scheme) -> std::string {
    std::istringstream in(text);
    try {
      read_code(in, scheme, "f");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
      return e.what();
    }
    return "";
  };
  CHECK(error_line("000\n0102\n", s).rfind("f:2:", 0) == 0);
  CHECK(error_line("000\n001\n000\n", s).rfind("f:3:", 0) == 0);
  CHECK(error_line("x/y\t000\n", s).rfind("f:1:", 0) == 0);
  CHECK(error_line("000\n", nullptr).rfind("f:1:", 0) == 0);
  CHECK(error_line("# scheme: J(6,3)\n1,2,3\n", s).rfind("f:1:", 0) == 0);
  std::istringstream johnson("# scheme: J(6,3)\n1,2,3\n4,5,6\n");
  CHECK(read_code(johnson, nullptr).scheme().name() == "J(6,3)");
}
