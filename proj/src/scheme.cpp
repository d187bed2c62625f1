#include "amlab/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <regex>
#include <sstream>

namespace amlab {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Visits every k-subset of {0..n-1} as an increasing index vector.
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

char digit_char(int d) { return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10); }

int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

}  // namespace

SchemeSpec SchemeSpec::parse(std::string_view text) {
  std::string s = lower(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
          s.end());
  static const std::regex paren(R"(^(h|j)\((\d+),(\d+)\)$)");
  static const std::regex colon(R"(^(hamming|johnson):(\d+):(\d+)$)");
  std::smatch m;
  if (std::regex_match(s, m, paren) || std::regex_match(s, m, colon)) {
    int a = std::stoi(m[2]);
    int b = std::stoi(m[3]);
    if (m[1].str()[0] == 'h') return hamming(a, b);
    return johnson(a, b);
  }
  throw Error(ErrorCode::Parse, "unrecognized scheme spec '" + std::string(text) +
                                    "' (expected H(D,q), J(N,D), hamming:D:q or johnson:N:D)");
}

std::string SchemeSpec::to_string() const {
  if (family == Family::Hamming) return "H(" + std::to_string(D) + "," + std::to_string(q) + ")";
  return "J(" + std::to_string(N) + "," + std::to_string(D) + ")";
}

RationalMatrix invert(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::Domain, "singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational scale = 1 / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::shared_ptr<const Scheme> Scheme::build(const SchemeSpec& spec) {
  const int D = spec.D;
  if (spec.family == Family::Hamming) {
    if (D < 1) throw Error(ErrorCode::Config, "Hamming scheme needs D >= 1 (got " + std::to_string(D) + ")");
    if (spec.q < 2) throw Error(ErrorCode::Config, "Hamming scheme needs q >= 2 (got " + std::to_string(spec.q) + ")");
    if (D > 64) throw Error(ErrorCode::Config, "Hamming scheme with D > 64 is not supported");
    if (spec.q > 36) throw Error(ErrorCode::Config, "Hamming scheme with q > 36 is not supported");
  } else {
    if (D < 1 || 2 * D > spec.N) {
      throw Error(ErrorCode::Config, "Johnson scheme needs 1 <= D <= floor(N/2) (got N=" + std::to_string(spec.N) +
                                         ", D=" + std::to_string(D) + ")");
    }
    if (spec.N > 128) throw Error(ErrorCode::Config, "Johnson scheme with N > 128 is not supported");
  }

  std::shared_ptr<Scheme> s(new Scheme());
  s->spec_ = spec;
  if (spec.family == Family::Hamming) s->spec_.N = 0;
  else s->spec_.q = 0;

  s->P_.assign(D + 1, std::vector<Rational>(D + 1));
  for (int i = 0; i <= D; ++i) {
    for (int j = 0; j <= D; ++j) {
      Integer sum = 0;
      for (int h = 0; h <= i; ++h) {
        Integer term;
        if (spec.family == Family::Hamming) {
          Integer pw;
          mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(spec.q - 1), static_cast<unsigned long>(i - h));
          term = pw * binomial(j, h) * binomial(D - j, i - h);
        } else {
          term = binomial(j, h) * binomial(D - j, i - h) * binomial(spec.N - D - j, i - h);
        }
        if (h % 2) sum -= term;
        else sum += term;
      }
      s->P_[i][j] = Rational(sum);
    }
  }

  if (spec.family == Family::Hamming) {
    mpz_ui_pow_ui(s->order_.get_mpz_t(), static_cast<unsigned long>(spec.q), static_cast<unsigned long>(D));
  } else {
    s->order_ = binomial(spec.N, D);
  }

  RationalMatrix inv = invert(s->P_);
  s->Q_ = inv;
  for (auto& row : s->Q_) {
    for (auto& v : row) v *= s->order_;
  }

  for (int i = 0; i <= D; ++i) {
    s->valencies_.push_back(s->P_[i][0].get_num());
    s->multiplicities_.push_back(s->Q_[i][0].get_num());
    s->metric_ordering_.push_back(i);
    s->cometric_ordering_.push_back(i);
  }

  if (spec.family == Family::Hamming) {
    int bits = 1;
    while ((1 << bits) < spec.q) ++bits;
    s->bits_ = bits;
    s->addressable_ = D * bits <= 64;
    if (s->addressable_) {
      for (int k = 0; k < D; ++k) s->low_mask_ |= Packed{1} << (k * bits);
    }
  } else {
    s->addressable_ = spec.N <= 64;
  }
  return s;
}

std::uint64_t Scheme::size() const {
  if (!addressable_ || !order_.fits_ulong_p()) {
    throw Error(ErrorCode::Config, name() + " is too large for vertex-level operations");
  }
  return order_.get_ui();
}

std::uint64_t Scheme::valency(int i) const {
  if (i < 0 || i > spec_.D) return 0;
  return valencies_[i].get_ui();
}

bool Scheme::valid(const Vertex& v) const {
  if (static_cast<int>(v.symbols.size()) != spec_.D) return false;
  if (spec_.family == Family::Hamming) {
    return std::all_of(v.symbols.begin(), v.symbols.end(), [&](int d) { return d >= 0 && d < spec_.q; });
  }
  for (std::size_t k = 0; k < v.symbols.size(); ++k) {
    if (v.symbols[k] < 1 || v.symbols[k] > spec_.N) return false;
    if (k > 0 && v.symbols[k] <= v.symbols[k - 1]) return false;
  }
  return true;
}

VertexId Scheme::encode(const Vertex& v) const {
  if (!addressable_) size();
  if (!valid(v)) throw Error(ErrorCode::Domain, "invalid vertex for " + name());
  VertexId id = 0;
  if (spec_.family == Family::Hamming) {
    for (int d : v.symbols) id = id * static_cast<VertexId>(spec_.q) + static_cast<VertexId>(d);
    return id;
  }
  const int D = spec_.D, N = spec_.N;
  int prev = 0;
  for (int k = 0; k < D; ++k) {
    for (int val = prev + 1; val < v.symbols[k]; ++val) id += binomial_u64(N - val, D - k - 1);
    prev = v.symbols[k];
  }
  return id;
}

Vertex Scheme::decode(VertexId id) const {
  if (id >= size()) throw Error(ErrorCode::Domain, "vertex index out of range for " + name());
  Vertex v;
  v.symbols.resize(spec_.D);
  if (spec_.family == Family::Hamming) {
    for (int k = spec_.D - 1; k >= 0; --k) {
      v.symbols[k] = static_cast<int>(id % static_cast<VertexId>(spec_.q));
      id /= static_cast<VertexId>(spec_.q);
    }
    return v;
  }
  const int D = spec_.D, N = spec_.N;
  int val = 1;
  for (int k = 0; k < D; ++k) {
    while (true) {
      std::uint64_t block = binomial_u64(N - val, D - k - 1);
      if (id < block) break;
      id -= block;
      ++val;
    }
    v.symbols[k] = val;
    ++val;
  }
  return v;
}

Packed Scheme::pack(const Vertex& v) const {
  if (!addressable_) size();
  Packed p = 0;
  if (spec_.family == Family::Hamming) {
    for (int k = 0; k < spec_.D; ++k) p |= static_cast<Packed>(v.symbols[k]) << (k * bits_);
  } else {
    for (int e : v.symbols) p |= Packed{1} << (e - 1);
  }
  return p;
}

Vertex Scheme::unpack(Packed p) const {
  Vertex v;
  if (spec_.family == Family::Hamming) {
    v.symbols.resize(spec_.D);
    for (int k = 0; k < spec_.D; ++k) v.symbols[k] = digit(p, k);
  } else {
    while (p) {
      v.symbols.push_back(std::countr_zero(p) + 1);
      p &= p - 1;
    }
  }
  return v;
}

int Scheme::distance(const Vertex& x, const Vertex& y) const {
  if (spec_.family == Family::Hamming) {
    int d = 0;
    for (int k = 0; k < spec_.D; ++k) d += x.symbols[k] != y.symbols[k];
    return d;
  }
  std::size_t a = 0, b = 0;
  int common = 0;
  while (a < x.symbols.size() && b < y.symbols.size()) {
    if (x.symbols[a] == y.symbols[b]) {
      ++common;
      ++a;
      ++b;
    } else if (x.symbols[a] < y.symbols[b]) {
      ++a;
    } else {
      ++b;
    }
  }
  return spec_.D - common;
}

void Scheme::for_each_in_sphere(Packed x, int i, const std::function<void(Packed)>& fn) const {
  const int D = spec_.D;
  if (i < 0 || i > D) throw Error(ErrorCode::Domain, "sphere index " + std::to_string(i) + " out of range 0.." + std::to_string(D));
  if (spec_.family == Family::Hamming) {
    const int q = spec_.q;
    const Packed field = (Packed{1} << bits_) - 1;
    std::vector<int> offs(i, 1);
    for_each_combination(D, i, [&](const std::vector<int>& pos) {
      std::fill(offs.begin(), offs.end(), 1);
      while (true) {
        Packed y = x;
        for (int k = 0; k < i; ++k) {
          int shift = pos[k] * bits_;
          int d = static_cast<int>((x >> shift) & field);
          int nd = (d + offs[k]) % q;
          y = (y & ~(field << shift)) | (static_cast<Packed>(nd) << shift);
        }
        fn(y);
        int k = i - 1;
        while (k >= 0 && offs[k] == q - 1) {
          offs[k] = 1;
          --k;
        }
        if (k < 0) break;
        ++offs[k];
      }
    });
    return;
  }
  std::vector<int> inside, outside;
  for (int e = 0; e < spec_.N; ++e) {
    if ((x >> e) & 1) inside.push_back(e);
    else outside.push_back(e);
  }
  for_each_combination(static_cast<int>(inside.size()), i, [&](const std::vector<int>& drop) {
    Packed base = x;
    for (int k : drop) base &= ~(Packed{1} << inside[k]);
    for_each_combination(static_cast<int>(outside.size()), i, [&](const std::vector<int>& add) {
      Packed y = base;
      for (int k : add) y |= Packed{1} << outside[k];
      fn(y);
    });
  });
}

std::vector<VertexId> Scheme::sphere(VertexId x, int i) const {
  if (i < 0 || i > spec_.D) throw Error(ErrorCode::Domain, "sphere index " + std::to_string(i) + " out of range 0.." + std::to_string(spec_.D));
  std::vector<VertexId> out;
  out.reserve(valency(i));
  for_each_in_sphere(pack_id(x), i, [&](Packed y) { out.push_back(id_of(y)); });
  std::sort(out.begin(), out.end());
  return out;
}

Vertex Scheme::parse_vertex(std::string_view text) const {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
  Vertex v;
  if (spec_.family == Family::Hamming) {
    if (static_cast<int>(s.size()) != spec_.D) {
      throw Error(ErrorCode::Parse, "word '" + s + "' has length " + std::to_string(s.size()) + ", expected " +
                                        std::to_string(spec_.D));
    }
    for (char c : s) {
      int d = char_digit(c);
      if (d < 0 || d >= spec_.q) throw Error(ErrorCode::Parse, "symbol '" + std::string(1, c) + "' not in alphabet of size " + std::to_string(spec_.q));
      v.symbols.push_back(d);
    }
    return v;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int value = 0;
    auto first = item.data();
    while (*first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::Parse, "malformed subset element '" + item + "'");
    }
    v.symbols.push_back(value);
  }
  if (!valid(v)) {
    throw Error(ErrorCode::Parse, "subset '" + s + "' is not a sorted " + std::to_string(spec_.D) + "-subset of {1.." +
                                      std::to_string(spec_.N) + "}");
  }
  return v;
}

std::string Scheme::format_vertex(const Vertex& v) const {
  std::string out;
  if (spec_.family == Family::Hamming) {
    for (int d : v.symbols) out.push_back(digit_char(d));
    return out;
  }
  for (std::size_t k = 0; k < v.symbols.size(); ++k) {
    if (k) out.push_back(',');
    out += std::to_string(v.symbols[k]);
  }
  return out;
}

}  // namespace amlab
