// Hamming and Johnson association schemes with exact spectral data.
//
// Eigenmatrix convention: P[i][j] is the eigenvalue of A_i on E_j V, and Q is
// fixed by P * Q = |X| * I. With this normalization Q[j][i] is the value the
// primitive idempotent takes on relation i:
//
//   E_j = |X|^{-1} * sum_i Q[j][i] * A_i,
//
// so Q[j][0] = m_j (the rank of E_j) and Q[0][i] = 1.
#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "amlab/common.hpp"

namespace amlab {

enum class Family { Hamming, Johnson };

struct SchemeSpec {
  Family family = Family::Hamming;
  int D = 1;  // number of classes (word length / subset size)
  int q = 2;  // alphabet size, Hamming only
  int N = 2;  // ground set size, Johnson only

  static SchemeSpec hamming(int D, int q) { return {Family::Hamming, D, q, 0}; }
  static SchemeSpec johnson(int N, int D) { return {Family::Johnson, D, 0, N}; }

  /// Accepts "H(24,2)", "J(24,8)", "hamming:24:2" and "johnson:24:8".
  static SchemeSpec parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const SchemeSpec&) const = default;
};

/// Decoded vertex: a length-D word over {0..q-1} (Hamming) or a sorted
/// D-subset of {1..N} (Johnson).
struct Vertex {
  std::vector<int> symbols;
  auto operator<=>(const Vertex&) const = default;
};

/// Canonical index of a vertex: position in lexicographic order of the
/// decoded form. Index 0 is the zero word or the subset {1..D}.
using VertexId = std::uint64_t;

/// Bit-packed vertex used by the inner loops. Hamming stores digit k in bits
/// [k*b, (k+1)*b); Johnson stores element e at bit e-1.
using Packed = std::uint64_t;

class Scheme {
 public:
  static std::shared_ptr<const Scheme> build(const SchemeSpec& spec);

  const SchemeSpec& spec() const { return spec_; }
  Family family() const { return spec_.family; }
  int classes() const { return spec_.D; }
  int alphabet() const { return spec_.q; }
  int ground_set() const { return spec_.N; }
  std::string name() const { return spec_.to_string(); }

  const Integer& order() const { return order_; }
  const std::vector<Integer>& valencies() const { return valencies_; }
  const std::vector<Integer>& multiplicities() const { return multiplicities_; }
  const RationalMatrix& P() const { return P_; }
  const RationalMatrix& Q() const { return Q_; }
  const std::vector<int>& metric_ordering() const { return metric_ordering_; }
  const std::vector<int>& cometric_ordering() const { return cometric_ordering_; }

  /// True when vertices fit the 64-bit packed form; required by every
  /// operation that touches individual vertices.
  bool addressable() const { return addressable_; }
  /// |X| as a 64-bit value; throws unless addressable.
  std::uint64_t size() const;
  std::uint64_t valency(int i) const;

  bool valid(const Vertex& v) const;
  VertexId encode(const Vertex& v) const;
  Vertex decode(VertexId id) const;
  Packed pack(const Vertex& v) const;
  Vertex unpack(Packed p) const;
  Packed pack_id(VertexId id) const { return pack(decode(id)); }
  VertexId id_of(Packed p) const { return encode(unpack(p)); }

  int distance(const Vertex& x, const Vertex& y) const;

  int distance_packed(Packed x, Packed y) const {
    if (spec_.family == Family::Johnson) {
      return spec_.D - std::popcount(x & y);
    }
    Packed diff = x ^ y;
    if (bits_ == 1) return std::popcount(diff);
    Packed folded = diff;
    for (int s = 1; s < bits_; ++s) folded |= diff >> s;
    return std::popcount(folded & low_mask_);
  }

  /// Vertices of R_i(x) as sorted canonical indices.
  std::vector<VertexId> sphere(VertexId x, int i) const;

  /// Visits R_i(x) in an unspecified order; cheaper than sphere().
  void for_each_in_sphere(Packed x, int i, const std::function<void(Packed)>& fn) const;

  /// Text form used by code files: digit string or comma-separated subset.
  Vertex parse_vertex(std::string_view text) const;
  std::string format_vertex(const Vertex& v) const;
  std::string format_id(VertexId id) const { return format_vertex(decode(id)); }

  /// Hamming digit of a packed word at position k (0-based).
  int digit(Packed p, int k) const {
    return static_cast<int>((p >> (k * bits_)) & ((Packed{1} << bits_) - 1));
  }
  int bits_per_symbol() const { return bits_; }

 private:
  Scheme() = default;

  SchemeSpec spec_;
  Integer order_;
  std::vector<Integer> valencies_;
  std::vector<Integer> multiplicities_;
  RationalMatrix P_;
  RationalMatrix Q_;
  std::vector<int> metric_ordering_;
  std::vector<int> cometric_ordering_;
  bool addressable_ = false;
  int bits_ = 1;
  Packed low_mask_ = 0;
};

using SchemePtr = std::shared_ptr<const Scheme>;

/// Exact inverse of a square rational matrix; throws Domain if singular.
RationalMatrix invert(const RationalMatrix& m);

}  // namespace amlab
