#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "amlab/scheme.hpp"
#include "oracles.hpp"

using namespace amlab;

namespace {

SchemePtr build(const std::string& text) { return Scheme::build(SchemeSpec::parse(text)); }

}  // namespace

TEST_CASE("single-class Hamming scheme") {
  auto s = Scheme::build(SchemeSpec::hamming(1, 2));
  CHECK(s->P() == RationalMatrix{{1, 1}, {1, -1}});
  CHECK(s->Q() == RationalMatrix{{1, 1}, {1, -1}});
}

TEST_CASE("spec parsing") {
  CHECK(SchemeSpec::parse("H(24,2)") == SchemeSpec::hamming(24, 2));
  CHECK(SchemeSpec::parse("hamming:6:3") == SchemeSpec::hamming(6, 3));
  CHECK(SchemeSpec::parse("J(24,8)") == SchemeSpec::johnson(24, 8));
  CHECK(SchemeSpec::parse("johnson:7:3") == SchemeSpec::johnson(7, 3));
  CHECK_THROWS_AS(SchemeSpec::parse("K(3,3)"), Error);
  // Parameter ranges are enforced when the scheme is built.
  CHECK_THROWS_AS(Scheme::build(SchemeSpec::parse("J(5,4)")), Error);  // needs N >= 2D
  CHECK_THROWS_AS(Scheme::build(SchemeSpec::parse("H(0,2)")), Error);
  CHECK_THROWS_AS(Scheme::build(SchemeSpec::parse("H(3,1)")), Error);
}

TEST_CASE("first eigenmatrix against the polynomial sum formulas") {
  for (auto [D, q] : {std::pair{5, 2}, {6, 3}, {4, 4}, {12, 3}}) {
    auto s = Scheme::build(SchemeSpec::hamming(D, q));
    for (int i = 0; i <= D; ++i) {
      for (int j = 0; j <= D; ++j) CHECK(s->P()[i][j].get_d() == doctest::Approx(oracle::krawtchouk(D, q, i, j)));
    }
  }
  for (auto [N, D] : {std::pair{7, 3}, {8, 4}, {12, 5}, {24, 8}}) {
    auto s = Scheme::build(SchemeSpec::johnson(N, D));
    for (int i = 0; i <= D; ++i) {
      for (int j = 0; j <= D; ++j) CHECK(s->P()[i][j].get_d() == doctest::Approx(oracle::eberlein(N, D, i, j)));
    }
  }
}

TEST_CASE("P Q = |X| I and the normalization of Q") {
  for (const char* name : {"H(6,2)", "H(5,3)", "J(9,4)", "J(24,8)", "H(24,2)"}) {
    auto s = build(name);
    const int D = s->classes();
    for (int i = 0; i <= D; ++i) {
      CHECK(s->Q()[0][i] == 1);
      CHECK(s->Q()[i][0] == Rational(s->multiplicities()[i]));
      CHECK(s->P()[i][0] == Rational(s->valencies()[i]));
      for (int j = 0; j <= D; ++j) {
        Rational sum = 0;
        for (int k = 0; k <= D; ++k) sum += s->P()[i][k] * s->Q()[k][j];
        CHECK(sum == (i == j ? Rational(s->order()) : Rational(0)));
      }
    }
  }
}

TEST_CASE("adjacency spectrum matches the first eigenmatrix") {
  for (const char* name : {"H(4,2)", "H(3,3)", "J(7,3)", "J(8,4)"}) {
    auto s = build(name);
    auto E = oracle::projectors(*s);
    REQUIRE(static_cast<int>(E.size()) == s->classes() + 1);
    Eigen::MatrixXi dist = oracle::distance_matrix(*s);
    for (int j = 0; j <= s->classes(); ++j) {
      CHECK(std::lround(E[j].trace()) == s->multiplicities()[j].get_si());
      for (int i = 0; i <= s->classes(); ++i) {
        Eigen::MatrixXd Ai = (dist.array() == i).cast<double>();
        CHECK((Ai * E[j] - s->P()[i][j].get_d() * E[j]).norm() < 1e-8);
      }
    }
  }
}

TEST_CASE("orderings") {
  auto s = build("H(5,2)");
  CHECK(s->metric_ordering() == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(s->cometric_ordering() == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("vertex codec, distances and spheres") {
  for (const char* name : {"H(5,3)", "H(6,2)", "J(8,3)"}) {
    auto s = build(name);
    for (VertexId id = 0; id < s->size(); ++id) {
      CHECK(s->encode(s->decode(id)) == id);
      CHECK(s->id_of(s->pack_id(id)) == id);
      CHECK(s->parse_vertex(s->format_id(id)) == s->decode(id));
    }
    Eigen::MatrixXi dist = oracle::distance_matrix(*s);
    for (VertexId x : {VertexId{0}, s->size() / 2, s->size() - 1}) {
      for (VertexId y = 0; y < s->size(); ++y) {
        CHECK(s->distance_packed(s->pack_id(x), s->pack_id(y)) == dist(x, y));
      }
      for (int i = 0; i <= s->classes(); ++i) {
        auto sp = s->sphere(x, i);
        CHECK(sp.size() == s->valency(i));
        for (VertexId y : sp) CHECK(dist(x, y) == i);
      }
    }
  }
  auto h = build("H(3,2)");
  CHECK(h->format_id(0) == "000");
  CHECK(h->format_id(5) == "101");
  auto j = build("J(6,3)");
  CHECK(j->format_id(0) == "1,2,3");
  CHECK_THROWS_AS(j->parse_vertex("3,2,1"), Error);
  CHECK_THROWS_AS(h->parse_vertex("0120"), Error);
}

TEST_CASE("large schemes keep exact spectra but no vertex access") {
  auto s = build("H(40,3)");
  CHECK_FALSE(s->addressable());
  CHECK(s->order() == Integer("12157665459056928801"));
  CHECK_THROWS_AS(s->size(), Error);
  Integer total = 0;
  for (const auto& m : s->multiplicities()) total += m;
  CHECK(total == s->order());
}
