#include "amlab/corpus.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <set>

namespace amlab {

namespace {

SchemePtr hamming(int D, int q) { return Scheme::build(SchemeSpec::hamming(D, q)); }

// All GF(q) combinations of the rows, q prime.
CodeVector span(SchemePtr scheme, const std::vector<std::vector<int>>& rows) {
  const int q = scheme->alphabet();
  const int D = scheme->classes();
  const int k = static_cast<int>(rows.size());
  std::vector<VertexId> ids;
  std::vector<int> coeff(k, 0);
  while (true) {
    Vertex w{std::vector<int>(D, 0)};
    for (int r = 0; r < k; ++r) {
      if (!coeff[r]) continue;
      for (int p = 0; p < D; ++p) w.symbols[p] = (w.symbols[p] + coeff[r] * rows[r][p]) % q;
    }
    ids.push_back(scheme->encode(w));
    int pos = 0;
    while (pos < k && ++coeff[pos] == q) coeff[pos++] = 0;
    if (pos == k) break;
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return CodeVector::subset(std::move(scheme), ids);
}

int rank_mod(std::vector<std::vector<int>> m, int q) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][c] % q) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    int inv = 1;
    while ((m[rank][c] * inv) % q != 1) ++inv;
    for (int& v : m[rank]) v = (v * inv) % q;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      int f = m[r][c];
      for (int j = 0; j < cols; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % q + q) % q;
    }
    ++rank;
  }
  return rank;
}

int weight(const Vertex& v) {
  return static_cast<int>(std::count_if(v.symbols.begin(), v.symbols.end(), [](int a) { return a != 0; }));
}

}  // namespace

CodeVector golay_binary() {
  const std::vector<int> g = {1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1};  // coefficients of x^0..x^11
  std::vector<std::vector<int>> rows;
  for (int shift = 0; shift < 12; ++shift) {
    std::vector<int> row(24, 0);
    for (int e = 0; e < 12; ++e) row[shift + e] = g[e];
    int parity = 0;
    for (int p = 0; p < 23; ++p) parity ^= row[p];
    row[23] = parity;
    rows.push_back(row);
  }
  return span(hamming(24, 2), rows);
}

CodeVector golay_ternary() {
  const int B[6][6] = {{0, 1, 1, 1, 1, 1}, {1, 0, 1, 2, 2, 1}, {1, 1, 0, 1, 2, 2},
                       {1, 2, 1, 0, 1, 2}, {1, 2, 2, 1, 0, 1}, {1, 1, 2, 2, 1, 0}};
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 6; ++i) {
    std::vector<int> row(12, 0);
    row[i] = 1;
    for (int j = 0; j < 6; ++j) row[6 + j] = B[i][j];
    rows.push_back(row);
  }
  return span(hamming(12, 3), rows);
}

CodeVector translate(const CodeVector& code, const Vertex& v) {
  const Scheme& s = code.scheme();
  if (s.family() != Family::Hamming) throw Error(ErrorCode::Domain, "translation needs a Hamming scheme");
  if (!s.valid(v)) throw Error(ErrorCode::Domain, "translation vector is not a word of " + s.name());
  std::map<VertexId, Rational> out;
  for (const auto& [id, w] : code.entries()) {
    Vertex y = s.decode(id);
    for (int p = 0; p < s.classes(); ++p) y.symbols[p] = (y.symbols[p] + v.symbols[p]) % s.alphabet();
    out.emplace(s.encode(y), w);
  }
  return CodeVector(code.scheme_ptr(), std::move(out));
}

Vertex deep_hole(const CodeVector& code, int max_weight) {
  const Scheme& s = code.scheme();
  if (s.family() != Family::Hamming) throw Error(ErrorCode::Domain, "coset leaders need a Hamming scheme");
  const int D = s.classes();
  const int q = s.alphabet();
  std::vector<Packed> keys;
  for (const auto& [id, w] : code.entries()) keys.push_back(s.pack_id(id));
  auto is_leader = [&](const Vertex& v, int w) {
    Packed pv = s.pack(v);
    for (Packed c : keys) {
      if (s.distance_packed(pv, c) < w) return false;
    }
    return true;
  };
  // Deleting a nonzero coordinate of a coset leader leaves a coset leader, so
  // the leader weights form an interval starting at 0.
  std::optional<Vertex> best = Vertex{std::vector<int>(D, 0)};
  for (int w = 1; w <= max_weight; ++w) {
    std::optional<Vertex> found;
    std::vector<int> pos(w);
    for (int i = 0; i < w; ++i) pos[i] = i;
    while (!found) {
      std::vector<int> vals(w, 1);
      while (true) {
        Vertex v{std::vector<int>(D, 0)};
        for (int i = 0; i < w; ++i) v.symbols[pos[i]] = vals[i];
        if (is_leader(v, w)) {
          found = v;
          break;
        }
        int i = 0;
        while (i < w && ++vals[i] == q) vals[i++] = 1;
        if (i == w) break;
      }
      int i = w - 1;
      while (i >= 0 && pos[i] == D - w + i) --i;
      if (i < 0) break;
      ++pos[i];
      for (int j = i + 1; j < w; ++j) pos[j] = pos[j - 1] + 1;
    }
    if (!found) return *best;
    best = found;
  }
  return *best;
}

CodeVector vasilev15() {
  auto hamming7 = hamming_code(3);
  auto H15 = hamming(15, 2);
  const Scheme& s7 = hamming7.scheme();
  std::vector<VertexId> ids;
  for (VertexId vid : hamming7.support()) {
    Vertex v = s7.decode(vid);
    const int f = v.symbols[0] * v.symbols[1];
    for (std::uint64_t u = 0; u < 128; ++u) {
      Vertex y{std::vector<int>(15, 0)};
      int parity = 0;
      for (int p = 0; p < 7; ++p) {
        int up = static_cast<int>((u >> p) & 1);
        parity ^= up;
        y.symbols[p] = up;
        y.symbols[7 + p] = up ^ v.symbols[p];
      }
      y.symbols[14] = parity ^ f;
      ids.push_back(H15->encode(y));
    }
  }
  return CodeVector::subset(H15, ids);
}

CodeVector witt_design() {
  const CodeVector& golay = corpus_code("golay-binary");
  const Scheme& s = golay.scheme();
  auto J = Scheme::build(SchemeSpec::johnson(24, 8));
  std::vector<VertexId> ids;
  for (VertexId id : golay.support()) {
    Vertex w = s.decode(id);
    if (weight(w) != 8) continue;
    Vertex block;
    for (int p = 0; p < 24; ++p) {
      if (w.symbols[p]) block.symbols.push_back(p + 1);
    }
    ids.push_back(J->encode(block));
  }
  return CodeVector::subset(J, ids);
}

CodeVector repetition(int D, int q) {
  auto s = hamming(D, q);
  std::vector<VertexId> ids;
  for (int a = 0; a < q; ++a) ids.push_back(s->encode(Vertex{std::vector<int>(D, a)}));
  return CodeVector::subset(s, ids);
}

CodeVector even_weight(int D) {
  std::vector<std::vector<int>> rows;
  for (int i = 0; i + 1 < D; ++i) {
    std::vector<int> row(D, 0);
    row[i] = row[D - 1] = 1;
    rows.push_back(row);
  }
  if (rows.empty()) return CodeVector::point(hamming(D, 2), 0);
  return span(hamming(D, 2), rows);
}

CodeVector antipodal_pair(int D) { return repetition(D, 2); }

CodeVector complementary_pair(int D) {
  auto J = Scheme::build(SchemeSpec::johnson(2 * D, D));
  Vertex a, b;
  for (int i = 1; i <= D; ++i) {
    a.symbols.push_back(i);
    b.symbols.push_back(D + i);
  }
  return CodeVector::subset(J, {J->encode(a), J->encode(b)});
}

CodeVector hamming_code(int r) {
  if (r < 2 || r > 4) throw Error(ErrorCode::Config, "hamming_code supports 2 <= r <= 4");
  const int n = (1 << r) - 1;
  // Position p (1-based) has syndrome p; parity bits sit at powers of two.
  std::vector<int> info;
  for (int p = 1; p <= n; ++p) {
    if (p & (p - 1)) info.push_back(p);
  }
  std::vector<std::vector<int>> rows;
  for (int p : info) {
    std::vector<int> row(n, 0);
    row[p - 1] = 1;
    for (int b = 0; b < r; ++b) {
      if ((p >> b) & 1) row[(1 << b) - 1] = 1;
    }
    rows.push_back(row);
  }
  return span(hamming(n, 2), rows);
}

CodeVector random_linear(int D, int q, int k, std::uint64_t seed) {
  if (q != 2 && q != 3 && q != 5 && q != 7) throw Error(ErrorCode::Config, "random_linear needs a prime q <= 7");
  if (k < 1 || k > D) throw Error(ErrorCode::Config, "random_linear needs 1 <= k <= D");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> rows;
  do {
    rows.assign(k, std::vector<int>(D, 0));
    for (auto& row : rows) {
      for (int& v : row) v = static_cast<int>(rng() % q);
    }
  } while (rank_mod(rows, q) < k);
  return span(hamming(D, q), rows);
}

CodeVector random_subset(SchemePtr scheme, std::uint64_t size, std::uint64_t seed) {
  const std::uint64_t n = scheme->size();
  if (size < 1 || size > n) throw Error(ErrorCode::Config, "random_subset size must lie in [1, |X|]");
  std::mt19937_64 rng(seed);
  std::set<VertexId> chosen;
  while (chosen.size() < size) chosen.insert(rng() % n);
  return CodeVector::subset(std::move(scheme), {chosen.begin(), chosen.end()});
}

// ---------------------------------------------------------------------------

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> e;
    {
      Fingerprint fp;
      fp.size = 4096;
      fp.weights = {{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
      fp.delta = 8;
      fp.s = 4;
      fp.dual_delta = 8;
      fp.dual_s = 4;
      fp.dual_support = {0, 8, 12, 16, 24};
      e.push_back({"golay-binary", "H(24,2)", "extended binary Golay code [24,12,8], cyclic generator plus parity", fp,
                   golay_binary});
    }
    {
      Fingerprint fp;
      fp.size = 4096;
      fp.base_delta = 4;
      fp.dual_support = {0, 8, 12, 16, 24};
      e.push_back({"golay-binary-coset4", "H(24,2)",
                   "binary Golay code translated by the first weight-4 coset leader found by search", fp, [] {
                     const CodeVector& g = corpus_code("golay-binary");
                     return translate(g, deep_hole(g, 5));
                   }});
    }
    {
      Fingerprint fp;
      fp.size = 729;
      fp.weights = {{0, 1}, {6, 264}, {9, 440}, {12, 24}};
      fp.delta = 6;
      fp.s = 3;
      fp.dual_delta = 6;
      fp.dual_s = 3;
      fp.dual_support = {0, 6, 9, 12};
      e.push_back({"golay-ternary", "H(12,3)", "extended ternary Golay code [12,6,6], generator [I | B]", fp,
                   golay_ternary});
    }
    {
      Fingerprint fp;
      fp.size = 729;
      fp.base_delta = 3;
      fp.dual_support = {0, 6, 9, 12};
      e.push_back({"golay-ternary-coset3", "H(12,3)",
                   "ternary Golay code translated by the first weight-3 coset leader found by search", fp, [] {
                     const CodeVector& g = corpus_code("golay-ternary");
                     return translate(g, deep_hole(g, 4));
                   }});
    }
    {
      Fingerprint fp;
      fp.size = 2048;
      fp.delta = 3;
      fp.dual_s = 1;
      e.push_back({"vasilev-15", "H(15,2)", "nonlinear perfect code of length 15 (Vasil'ev construction)", fp,
                   vasilev15});
    }
    {
      Fingerprint fp;
      fp.size = 759;
      fp.delta = 4;
      fp.s = 3;
      fp.dual_s = 2;
      fp.dual_zero = {1, 2, 3, 4, 5, 7};
      e.push_back({"witt-24-8", "J(24,8)", "octads of the binary Golay code: the 5-(24,8,1) design", fp, witt_design});
    }
    for (int D : {6, 8}) {
      Fingerprint fp;
      fp.size = 2;
      fp.delta = D;
      fp.s = 1;
      fp.dual_delta = 2;
      e.push_back({"repetition-" + std::to_string(D), "H(" + std::to_string(D) + ",2)",
                   "binary repetition code, an antipodal pair", fp, [D] { return repetition(D); }});
    }
    for (int D : {6, 8}) {
      Fingerprint fp;
      fp.size = std::uint64_t{1} << (D - 1);
      fp.delta = 2;
      fp.dual_s = 1;
      fp.dual_delta = D;
      e.push_back({"even-weight-" + std::to_string(D), "H(" + std::to_string(D) + ",2)",
                   "even-weight code, a bipartite half", fp, [D] { return even_weight(D); }});
    }
    {
      Fingerprint fp;
      fp.size = 2;
      fp.delta = 4;
      fp.s = 1;
      e.push_back({"complementary-pair-8-4", "J(8,4)", "a 4-subset of {1..8} and its complement", fp,
                   [] { return complementary_pair(4); }});
    }
    for (int r : {3, 4}) {
      Fingerprint fp;
      fp.size = std::uint64_t{1} << ((1 << r) - 1 - r);
      fp.delta = 3;
      fp.dual_s = 1;
      fp.dual_delta = 1 << (r - 1);
      e.push_back({"hamming-" + std::to_string((1 << r) - 1), "H(" + std::to_string((1 << r) - 1) + ",2)",
                   "binary Hamming code", fp, [r] { return hamming_code(r); }});
    }
    return e;
  }();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorCode::Config, "unknown corpus entry '" + name + "'");
}

const CodeVector& corpus_code(const std::string& name) {
  static std::recursive_mutex mutex;
  static std::map<std::string, CodeVector> cache;
  std::lock_guard<std::recursive_mutex> lock(mutex);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  CodeVector code = corpus_entry(name).generate();
  return cache.emplace(name, std::move(code)).first->second;
}

std::vector<std::string> check_fingerprint(const Fingerprint& fp, const CodeVector& code) {
  std::vector<std::string> bad;
  auto expect = [&](const char* what, std::optional<long> want, long got) {
    if (want && *want != got) bad.push_back(std::string(what) + ": expected " + std::to_string(*want) + ", got " + std::to_string(got));
  };
  expect("size", fp.size ? std::optional<long>(*fp.size) : std::nullopt, static_cast<long>(code.support_size()));
  BaseProfile zero = base_profile(code, 0);
  for (int i = 0; i <= code.scheme().classes(); ++i) {
    auto it = fp.weights.find(i);
    long want = it == fp.weights.end() ? 0 : static_cast<long>(it->second);
    if (!fp.weights.empty() && static_cast<long>(zero.hits[i]) != want) {
      bad.push_back("shell " + std::to_string(i) + ": expected " + std::to_string(want) + ", got " +
                    std::to_string(zero.hits[i]));
    }
  }
  DistanceDistribution dist = distance_distribution(code);
  CodeParameters p = parameters(code, dist, zero);
  expect("delta", fp.delta, p.delta.value_or(-1));
  expect("s", fp.s, p.s.value_or(-1));
  expect("dual_delta", fp.dual_delta, p.dual_delta);
  expect("dual_s", fp.dual_s, p.dual_s);
  expect("delta_x at 0", fp.base_delta, p.delta_x);
  for (int j : fp.dual_zero) {
    if (dist.b[j] != 0) bad.push_back("b_" + std::to_string(j) + " should vanish");
  }
  if (!fp.dual_support.empty()) {
    std::vector<int> got;
    for (int j = 0; j < static_cast<int>(dist.b.size()); ++j) {
      if (dist.b[j] != 0) got.push_back(j);
    }
    if (got != fp.dual_support) bad.push_back("dual support differs");
  }
  return bad;
}

}  // namespace amlab
