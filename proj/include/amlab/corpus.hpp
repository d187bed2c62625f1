// Named codes and structural generators.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amlab/spectra.hpp"

namespace amlab {

/// Extended binary Golay code [24,12,8] in H(24,2): cyclic code with
/// generator 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11, plus a parity bit.
CodeVector golay_binary();
/// Extended ternary Golay code [12,6,6] in H(12,3), generator [I | B].
CodeVector golay_ternary();

/// y -> y + v (mod q) for every member; Hamming only.
CodeVector translate(const CodeVector& code, const Vertex& v);
/// Smallest word (in weight, then index order) whose distance to the code
/// equals the covering radius, found by scanning words of increasing weight.
/// The covering radius is the first weight with no word closer to the code.
Vertex deep_hole(const CodeVector& code, int max_weight);

/// Vasil'ev perfect code of length 15: (u, u+v, |u| mod 2 + f(v)) over the
/// [7,4] Hamming code, with f(v) = v_0 v_1.
CodeVector vasilev15();
/// Octads of the binary Golay code as vertices of J(24,8).
CodeVector witt_design();

CodeVector repetition(int D, int q = 2);
CodeVector even_weight(int D);
/// {0, 1...1} in H(D,2).
CodeVector antipodal_pair(int D);
/// {1..D} and its complement in J(2D,D).
CodeVector complementary_pair(int D);
/// Binary Hamming code of length 2^r - 1 (r <= 4).
CodeVector hamming_code(int r);
/// Span of k random rows over GF(q), q prime, redrawn until the rank is k.
CodeVector random_linear(int D, int q, int k, std::uint64_t seed);
/// `size` distinct uniformly chosen vertices.
CodeVector random_subset(SchemePtr scheme, std::uint64_t size, std::uint64_t seed);

/// Parameters a corpus code must reproduce exactly.
struct Fingerprint {
  std::optional<std::uint64_t> size;
  std::map<int, std::uint64_t> weights;  // shell counts at the zero vertex
  std::optional<int> delta, s, dual_delta, dual_s;
  std::optional<int> base_delta;         // delta_x at the zero vertex
  std::vector<int> dual_zero;            // j with b_j = 0 required
  std::vector<int> dual_support;         // exact set of j with b_j != 0
};

struct CorpusEntry {
  std::string name;
  std::string scheme;
  std::string note;
  Fingerprint fingerprint;
  std::function<CodeVector()> generate;
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);
/// Generated once and kept; generators are pure.
const CodeVector& corpus_code(const std::string& name);

/// Mismatch descriptions; empty when the code reproduces the fingerprint.
std::vector<std::string> check_fingerprint(const Fingerprint& fp, const CodeVector& code);

}  // namespace amlab
