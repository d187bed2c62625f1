#include "amlab/spectra.hpp"

#include <algorithm>
#include <cassert>
#include <thread>
#include <unordered_map>

namespace amlab {

CodeVector::CodeVector(SchemePtr scheme, std::map<VertexId, Rational> entries)
    : scheme_(std::move(scheme)) {
  const std::uint64_t n = scheme_->size();
  for (auto& [id, value] : entries) {
    if (id >= n) throw Error(ErrorCode::Domain, "vertex index " + std::to_string(id) + " outside " + scheme_->name());
    value.canonicalize();
    if (value == 0) continue;
    if (value != 1) subset_ = false;
    entries_.emplace(id, value);
  }
  if (entries_.empty()) subset_ = false;
}

CodeVector CodeVector::subset(SchemePtr scheme, const std::vector<VertexId>& members) {
  std::map<VertexId, Rational> entries;
  for (VertexId id : members) entries[id] = 1;
  return CodeVector(std::move(scheme), std::move(entries));
}

CodeVector CodeVector::point(SchemePtr scheme, VertexId x) { return subset(std::move(scheme), {x}); }

CodeVector CodeVector::all_ones(SchemePtr scheme) {
  std::vector<VertexId> all(scheme->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return subset(std::move(scheme), all);
}

Rational CodeVector::value(VertexId id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<VertexId> CodeVector::support() const {
  std::vector<VertexId> out;
  out.reserve(entries_.size());
  for (const auto& kv : entries_) out.push_back(kv.first);
  return out;
}

Rational CodeVector::norm_squared() const {
  Rational sum = 0;
  for (const auto& kv : entries_) sum += kv.second * kv.second;
  return sum;
}

CodeVector CodeVector::restricted_to_shell(VertexId x, int k) const {
  const Packed px = scheme_->pack_id(x);
  std::map<VertexId, Rational> out;
  for (const auto& [id, value] : entries_) {
    if (scheme_->distance_packed(px, scheme_->pack_id(id)) == k) out.emplace(id, value);
  }
  return CodeVector(scheme_, std::move(out));
}

std::optional<std::string> CodeVector::code_violation() const {
  if (entries_.empty()) return "chi is the zero vector";
  if (entries_.size() == 1) return "chi lies in E_0^*(z)V for z = " + scheme_->format_id(entries_.begin()->first) + " (point mass)";
  if (Integer(static_cast<unsigned long>(entries_.size())) == scheme_->order()) {
    const Rational& first = entries_.begin()->second;
    bool constant = std::all_of(entries_.begin(), entries_.end(), [&](const auto& kv) { return kv.second == first; });
    if (constant) return "chi lies in E_0V (constant vector)";
  }
  return std::nullopt;
}

void CodeVector::require_code() const {
  if (auto why = code_violation()) throw Error(ErrorCode::Domain, "not a code: " + *why);
}

PackedSupport::PackedSupport(const CodeVector& chi) {
  const Scheme& s = chi.scheme();
  std::map<Rational, std::uint32_t> index;
  keys.reserve(chi.support_size());
  cls.reserve(chi.support_size());
  for (const auto& [id, value] : chi.entries()) {
    keys.push_back(s.pack_id(id));
    auto [it, inserted] = index.emplace(value, static_cast<std::uint32_t>(class_value.size()));
    if (inserted) class_value.push_back(value);
    cls.push_back(it->second);
  }
}

std::optional<int> first_nonzero(const std::vector<Rational>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] != 0) return static_cast<int>(i);
  }
  return std::nullopt;
}

int count_nonzero(const std::vector<Rational>& values) {
  int n = 0;
  for (std::size_t i = 1; i < values.size(); ++i) n += values[i] != 0;
  return n;
}

std::vector<Rational> inner_distribution(const CodeVector& chi, const Budget& budget) {
  const Scheme& s = chi.scheme();
  const int D = s.classes();
  PackedSupport sup(chi);
  const std::size_t n = sup.keys.size();
  const std::size_t m = sup.class_value.size();
  const std::size_t width = static_cast<std::size_t>(D + 1);

  // counts[(c1*m + c2)*width + i] = ordered pairs (y, z) with classes c1, c2 at distance i.
  // Rows are split across workers; each owns a private table merged in order.
  unsigned workers = std::max(1u, std::min<unsigned>(budget.threads, static_cast<unsigned>(n / 256 + 1)));
  std::vector<std::vector<std::uint64_t>> tables(workers, std::vector<std::uint64_t>(m * m * width, 0));
  auto run = [&](unsigned w) {
    auto& counts = tables[w];
    for (std::size_t a = w; a < n; a += workers) {
      const Packed ka = sup.keys[a];
      const std::size_t base = sup.cls[a] * m;
      counts[(base + sup.cls[a]) * width] += 1;
      for (std::size_t b = a + 1; b < n; ++b) {
        int d = s.distance_packed(ka, sup.keys[b]);
        counts[(base + sup.cls[b]) * width + d] += 2;
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::vector<std::uint64_t> counts(m * m * width, 0);
  for (const auto& t : tables) {
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += t[k];
  }

  std::vector<Rational> a(width, Rational(0));
  for (std::size_t c1 = 0; c1 < m; ++c1) {
    for (std::size_t c2 = 0; c2 < m; ++c2) {
      Rational w = sup.class_value[c1] * sup.class_value[c2];
      for (std::size_t i = 0; i < width; ++i) {
        std::uint64_t cnt = counts[(c1 * m + c2) * width + i];
        if (cnt) a[i] += w * Rational(Integer(static_cast<unsigned long>(cnt)));
      }
    }
  }
  return a;
}

std::vector<Rational> dual_norms(const Scheme& scheme, const std::vector<Rational>& a) {
  const int D = scheme.classes();
  const RationalMatrix& Q = scheme.Q();
  std::vector<Rational> b(D + 1, Rational(0));
  for (int j = 0; j <= D; ++j) {
    Rational sum = 0;
    for (int i = 0; i <= D; ++i) sum += Q[j][i] * a[i];
    b[j] = sum / Rational(scheme.order());
  }
  return b;
}

DistanceDistribution distance_distribution(const CodeVector& chi, const Budget& budget) {
  DistanceDistribution dist;
  dist.a = inner_distribution(chi, budget);
  dist.b = dual_norms(chi.scheme(), dist.a);
  return dist;
}

BaseProfile base_profile(const CodeVector& chi, VertexId x) {
  const Scheme& s = chi.scheme();
  const int D = s.classes();
  BaseProfile p;
  p.base = x;
  p.c.assign(D + 1, Rational(0));
  p.e.assign(D + 1, false);
  p.square_sum.assign(D + 1, Rational(0));
  p.hits.assign(D + 1, 0);
  const Packed px = s.pack_id(x);
  for (const auto& [id, value] : chi.entries()) {
    int i = s.distance_packed(px, s.pack_id(id));
    p.c[i] += value;
    p.square_sum[i] += value * value;
    p.e[i] = true;
    ++p.hits[i];
  }
  return p;
}

std::vector<Rational> projection_overlaps(const Scheme& scheme, const BaseProfile& profile) {
  return dual_norms(scheme, profile.c);
}

std::vector<Rational> design_gram_residuals(const Scheme& scheme, const std::vector<Rational>& b,
                                            const BaseProfile& profile) {
  const int D = scheme.classes();
  std::vector<Rational> g = projection_overlaps(scheme, profile);
  std::vector<Rational> res(D + 1);
  for (int j = 0; j <= D; ++j) {
    Rational point_norm = Rational(scheme.multiplicities()[j]) / Rational(scheme.order());
    res[j] = b[j] * point_norm - g[j] * g[j];
  }
  return res;
}

std::vector<Rational> codesign_gram_residuals(const Scheme& scheme, const BaseProfile& profile) {
  const int D = scheme.classes();
  std::vector<Rational> res(D + 1);
  for (int i = 0; i <= D; ++i) {
    res[i] = Rational(scheme.valencies()[i]) * profile.square_sum[i] - profile.c[i] * profile.c[i];
  }
  return res;
}

CodeParameters parameters(const CodeVector& chi, VertexId x, const Budget& budget) {
  chi.require_code();
  DistanceDistribution dist = distance_distribution(chi, budget);
  BaseProfile profile = base_profile(chi, x);
  return parameters(chi, dist, profile);
}

CodeParameters parameters(const CodeVector& chi, const DistanceDistribution& dist, const BaseProfile& profile) {
  chi.require_code();
  const Scheme& s = chi.scheme();
  const int D = s.classes();
  CodeParameters p;
  p.base = profile.base;

  std::vector<Rational> shells(D + 1, Rational(0));
  for (int i = 0; i <= D; ++i) shells[i] = profile.e[i] ? 1 : 0;
  auto dx = first_nonzero(shells);
  auto ds = first_nonzero(dist.b);
  // A code is never a point mass nor constant, so both exist.
  if (!dx) throw Error(ErrorCode::Domain, "chi is supported on the base vertex only");
  assert(ds.has_value());
  p.delta_x = *dx;
  p.s_x = count_nonzero(shells);
  p.dual_delta = *ds;
  p.dual_s = count_nonzero(dist.b);

  if (chi.is_subset()) {
    p.delta = first_nonzero(dist.a);
    p.s = count_nonzero(dist.a);
    for (int i = 1; i <= D; ++i) {
      if (dist.a[D - i] != 0) {
        p.delta_down = i;
        break;
      }
    }
  }
  for (int j = 1; j <= D; ++j) {
    if (dist.b[D - j] != 0) {
      p.dual_delta_down = j;
      break;
    }
  }

  std::vector<Rational> shell_res = codesign_gram_residuals(s, profile);
  std::vector<Rational> proj_res = design_gram_residuals(s, dist.b, profile);
  for (int i = 1; i <= D; ++i) p.refined_s_x += shell_res[i] != 0;
  for (int j = 1; j <= D; ++j) p.refined_dual_s += proj_res[j] != 0;
  return p;
}

}  // namespace amlab
