#include "amlab/design.hpp"

#include <algorithm>
#include <unordered_map>

namespace amlab {

namespace {

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

// Colex rank of a sorted subset of {1..v} (elements 1-based).
std::uint64_t colex_rank(const std::vector<int>& subset) {
  std::uint64_t r = 0;
  for (std::size_t m = 0; m < subset.size(); ++m) r += binomial_u64(subset[m] - 1, static_cast<int>(m + 1));
  return r;
}

std::vector<int> colex_unrank(std::uint64_t r, int t) {
  std::vector<int> out(t);
  for (int m = t; m >= 1; --m) {
    int c = m - 1;
    while (binomial_u64(c + 1, m) <= r) ++c;
    r -= binomial_u64(c, m);
    out[m - 1] = c + 1;
  }
  return out;
}

Integer to_integer(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & ~std::uint64_t{0}));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

DesignLevelReport level_from_residuals(const std::vector<Rational>& residuals, int decided_up_to, int D) {
  DesignLevelReport rep;
  std::optional<int> first_fail;
  for (int i = 1; i <= D; ++i) {
    IndexVerdict v;
    v.index = i;
    if (i <= decided_up_to) {
      v.residual = residuals[i];
      v.dependent = residuals[i] == 0;
      if (!*v.dependent && !first_fail) first_fail = i;
    }
    rep.per_index.push_back(v);
  }
  if (first_fail) {
    rep.max_level = *first_fail - 1;
  } else {
    rep.max_level = decided_up_to;
    if (decided_up_to < D) rep.undecided_above = decided_up_to;
  }
  return rep;
}

}  // namespace

DesignLevelReport relative_design_level(const Scheme& scheme, const std::vector<Rational>& b,
                                        const BaseProfile& profile) {
  std::vector<Rational> res = design_gram_residuals(scheme, b, profile);
  return level_from_residuals(res, scheme.classes(), scheme.classes());
}

DesignLevelReport relative_design_level(const CodeVector& chi, VertexId x, const Budget& budget) {
  std::vector<Rational> a = inner_distribution(chi, budget);
  std::vector<Rational> b = dual_norms(chi.scheme(), a);
  return relative_design_level(chi.scheme(), b, base_profile(chi, x));
}

DesignLevelReport codesign_level_from_profile(const Scheme& scheme, const BaseProfile& profile) {
  std::vector<Rational> res = codesign_gram_residuals(scheme, profile);
  return level_from_residuals(res, scheme.classes(), scheme.classes());
}

DesignLevelReport relative_codesign_level(const CodeVector& chi, VertexId x) {
  return codesign_level_from_profile(chi.scheme(), base_profile(chi, x));
}

ImageCodesignScan scan_image_codesigns(const CodeVector& chi, VertexId x, int max_index, const Budget& budget) {
  const Scheme& s = chi.scheme();
  const int D = s.classes();
  const int W = D + 1;
  max_index = std::clamp(max_index, 0, D);
  PackedSupport sup(chi);
  const std::size_t n = sup.keys.size();
  const std::size_t m = sup.class_value.size();
  const Packed px = s.pack_id(x);
  std::vector<int> shell_of(n);
  for (std::size_t y = 0; y < n; ++y) shell_of[y] = s.distance_packed(px, sup.keys[y]);

  bool integral = true;
  std::vector<std::int64_t> int_weight(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    const Rational& w = sup.class_value[c];
    if (w.get_den() != 1 || !w.get_num().fits_slong_p()) integral = false;
    else int_weight[c] = w.get_num().get_si();
  }

  // residual[k][l][i], with k = D+1 standing for the whole vector.
  const int K = W + 1;
  std::vector<std::vector<std::vector<Rational>>> residual(
      K, std::vector<std::vector<Rational>>(W, std::vector<Rational>(W, Rational(0))));

  ImageCodesignScan out;
  std::vector<std::uint64_t> counts(m * W * W);
  for (int i = 1; i <= max_index; ++i) {
    const std::uint64_t ki = s.valency(i);
    const std::uint64_t cost = ki * std::max<std::uint64_t>(n, 1);
    if (ki > budget.shell_cap || out.steps + cost > budget.steps) break;
    out.steps += cost;

    std::vector<__int128> isum(K * W, 0), isq(K * W, 0);
    std::vector<Rational> rsum, rsq;
    if (!integral) {
      rsum.assign(K * W, Rational(0));
      rsq.assign(K * W, Rational(0));
    }
    std::vector<std::int64_t> ival(K * W);
    std::vector<Rational> rval;
    if (!integral) rval.assign(K * W, Rational(0));

    s.for_each_in_sphere(px, i, [&](Packed z) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t y = 0; y < n; ++y) {
        int l = s.distance_packed(z, sup.keys[y]);
        ++counts[(sup.cls[y] * W + shell_of[y]) * W + l];
      }
      if (integral) {
        std::fill(ival.begin(), ival.end(), 0);
        for (std::size_t c = 0; c < m; ++c) {
          for (int k = 0; k < W; ++k) {
            for (int l = 0; l < W; ++l) {
              std::uint64_t cnt = counts[(c * W + k) * W + l];
              if (!cnt) continue;
              std::int64_t v = int_weight[c] * static_cast<std::int64_t>(cnt);
              ival[k * W + l] += v;
              ival[W * W + l] += v;
            }
          }
        }
        for (int idx = 0; idx < K * W; ++idx) {
          __int128 v = ival[idx];
          isum[idx] += v;
          isq[idx] += v * v;
        }
      } else {
        for (auto& r : rval) r = 0;
        for (std::size_t c = 0; c < m; ++c) {
          for (int k = 0; k < W; ++k) {
            for (int l = 0; l < W; ++l) {
              std::uint64_t cnt = counts[(c * W + k) * W + l];
              if (!cnt) continue;
              Rational v = sup.class_value[c] * Rational(Integer(static_cast<unsigned long>(cnt)));
              rval[k * W + l] += v;
              rval[W * W + l] += v;
            }
          }
        }
        for (int idx = 0; idx < K * W; ++idx) {
          if (rval[idx] == 0) continue;
          rsum[idx] += rval[idx];
          rsq[idx] += rval[idx] * rval[idx];
        }
      }
    });

    const Rational kr{Integer(static_cast<unsigned long>(ki))};
    for (int k = 0; k < K; ++k) {
      for (int l = 0; l < W; ++l) {
        const int idx = k * W + l;
        if (integral) {
          Integer sum = to_integer(isum[idx]);
          Integer sq = to_integer(isq[idx]);
          residual[k][l][i] = Rational(Integer(ki) * sq - sum * sum);
        } else {
          residual[k][l][i] = kr * rsq[idx] - rsum[idx] * rsum[idx];
        }
      }
    }
    out.scanned = i;
  }

  out.whole.resize(W);
  out.shells.assign(W, std::vector<DesignLevelReport>(W));
  for (int l = 0; l < W; ++l) {
    out.whole[l] = level_from_residuals(residual[W][l], out.scanned, max_index);
    for (int k = 0; k < W; ++k) out.shells[k][l] = level_from_residuals(residual[k][l], out.scanned, max_index);
  }
  return out;
}

Rational evaluate_Ai(const CodeVector& chi, int i, VertexId z) {
  const Scheme& s = chi.scheme();
  if (i < 0 || i > s.classes()) throw Error(ErrorCode::Domain, "relation index out of range");
  const Packed pz = s.pack_id(z);
  Rational sum = 0;
  for (const auto& [id, value] : chi.entries()) {
    if (s.distance_packed(pz, s.pack_id(id)) == i) sum += value;
  }
  return sum;
}

CodeVector apply_Ai(const CodeVector& chi, int i, const Budget& budget,
                    const std::optional<std::vector<VertexId>>& restrict_to) {
  const Scheme& s = chi.scheme();
  if (i < 0 || i > s.classes()) throw Error(ErrorCode::Domain, "relation index out of range");
  if (i == 0) return chi;
  const std::uint64_t expansion = s.valency(i) * chi.support_size();
  std::map<VertexId, Rational> out;
  if (restrict_to) {
    for (VertexId z : *restrict_to) out.emplace(z, evaluate_Ai(chi, i, z));
    return CodeVector(chi.scheme_ptr(), std::move(out));
  }
  if (expansion <= budget.steps) {
    std::unordered_map<Packed, Rational> acc;
    for (const auto& [id, value] : chi.entries()) {
      s.for_each_in_sphere(s.pack_id(id), i, [&](Packed w) { acc[w] += value; });
    }
    for (auto& [p, v] : acc) out.emplace(s.id_of(p), v);
    return CodeVector(chi.scheme_ptr(), std::move(out));
  }
  throw Error(ErrorCode::Budget, "A_" + std::to_string(i) + " expansion needs " + std::to_string(expansion) +
                                     " steps (budget " + std::to_string(budget.steps) + "); pass a vertex list");
}

// ---------------------------------------------------------------------------

void BlockMultiset::add(Block block, std::uint64_t multiplicity) {
  if (static_cast<int>(block.size()) != k) {
    throw Error(ErrorCode::Domain, "block of size " + std::to_string(block.size()) + " in a multiset of " +
                                       std::to_string(k) + "-subsets");
  }
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (block[i] < 1 || block[i] > v || (i && block[i] <= block[i - 1])) {
      throw Error(ErrorCode::Domain, "block is not a sorted subset of {1.." + std::to_string(v) + "}");
    }
  }
  if (multiplicity) blocks[std::move(block)] += multiplicity;
}

std::uint64_t BlockMultiset::total() const {
  std::uint64_t n = 0;
  for (const auto& kv : blocks) n += kv.second;
  return n;
}

TDesignResult t_design_check(const BlockMultiset& bm, int t, const Budget& budget) {
  if (t < 0 || t > bm.k) {
    throw Error(ErrorCode::Domain, "t = " + std::to_string(t) + " outside 0..k = " + std::to_string(bm.k));
  }
  if (bm.total() == 0) throw Error(ErrorCode::Domain, "empty block multiset");
  Integer subsets = binomial(bm.v, t);
  if (subsets > 100'000'000 || subsets > Integer(static_cast<unsigned long>(budget.steps))) {
    throw Error(ErrorCode::Budget, "C(" + std::to_string(bm.v) + "," + std::to_string(t) + ") = " + subsets.get_str() +
                                       " t-subsets exceeds the enumeration limit");
  }
  const std::uint64_t per_block = binomial_u64(bm.k, t);
  const std::uint64_t cost = per_block * bm.distinct() + subsets.get_ui();
  if (cost > budget.steps) {
    throw Error(ErrorCode::Budget, "t-design count needs " + std::to_string(cost) + " steps (budget " +
                                       std::to_string(budget.steps) + ")");
  }

  std::vector<std::uint64_t> counts(subsets.get_ui(), 0);
  std::vector<int> sub(t);
  for (const auto& [block, mult] : bm.blocks) {
    for_each_combination(bm.k, t, [&](const std::vector<int>& idx) {
      for (int m = 0; m < t; ++m) sub[m] = block[idx[m]];
      counts[colex_rank(sub)] += mult;
    });
  }

  TDesignResult res;
  res.t = t;
  for (std::uint64_t r = 1; r < counts.size(); ++r) {
    if (counts[r] != counts[0]) {
      res.is_design = false;
      res.witness = std::make_pair(colex_unrank(0, t), colex_unrank(r, t));
      res.witness_counts = {counts[0], counts[r]};
      return res;
    }
  }
  res.is_design = true;
  res.lambda = counts[0];
  return res;
}

BlockMultiset shell_design_extract(const CodeVector& Y, VertexId x, int k) {
  const Scheme& s = Y.scheme();
  const int D = s.classes();
  if (!Y.is_subset()) throw Error(ErrorCode::Domain, "shell designs are defined for subset codes");
  if (k < 0 || k > D) throw Error(ErrorCode::Domain, "shell index out of range");
  BlockMultiset bm;
  bm.v = D;
  const Packed px = s.pack_id(x);
  if (s.family() == Family::Hamming) {
    if (x != 0) {
      throw Error(ErrorCode::Domain, "Hamming shell designs are read at the zero word only (base " + s.format_id(x) + ")");
    }
    bm.k = k;
    for (VertexId id : Y.support()) {
      Packed p = s.pack_id(id);
      if (s.distance_packed(px, p) != k) continue;
      Block block;
      for (int pos = 0; pos < D; ++pos) {
        if (s.digit(p, pos) != 0) block.push_back(pos + 1);
      }
      bm.add(std::move(block));
    }
    return bm;
  }
  bm.k = D - k;
  Vertex xv = s.decode(x);
  for (VertexId id : Y.support()) {
    Packed p = s.pack_id(id);
    if (s.distance_packed(px, p) != k) continue;
    Block block;
    for (int pos = 0; pos < D; ++pos) {
      if ((p >> (xv.symbols[pos] - 1)) & 1) block.push_back(pos + 1);
    }
    bm.add(std::move(block));
  }
  return bm;
}

int oa_strength(const CodeVector& Y, const Budget& budget) {
  const Scheme& s = Y.scheme();
  if (s.family() != Family::Hamming) throw Error(ErrorCode::Domain, "orthogonal-array strength needs a Hamming scheme");
  if (!Y.is_subset()) throw Error(ErrorCode::Domain, "orthogonal-array strength needs a subset code");
  const int D = s.classes();
  const int q = s.alphabet();
  std::vector<Packed> words;
  for (VertexId id : Y.support()) words.push_back(s.pack_id(id));
  const std::uint64_t size = words.size();
  std::uint64_t steps = 0;
  int strength = 0;
  std::uint64_t qt = 1;
  for (int t = 1; t <= D; ++t) {
    qt *= static_cast<std::uint64_t>(q);
    if (size % qt != 0) break;
    const std::uint64_t cols = binomial_u64(D, t);
    steps += cols * (size + qt);
    if (steps > budget.steps) {
      throw Error(ErrorCode::Budget, "orthogonal-array strength check exceeds " + std::to_string(budget.steps) + " steps at t = " +
                                         std::to_string(t));
    }
    const std::uint64_t expected = size / qt;
    bool balanced = true;
    std::vector<std::uint64_t> counts(qt);
    for_each_combination(D, t, [&](const std::vector<int>& pos) {
      if (!balanced) return;
      std::fill(counts.begin(), counts.end(), 0);
      for (Packed w : words) {
        std::uint64_t pattern = 0;
        for (int c : pos) pattern = pattern * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(s.digit(w, c));
        ++counts[pattern];
      }
      balanced = std::all_of(counts.begin(), counts.end(), [&](std::uint64_t c) { return c == expected; });
    });
    if (!balanced) break;
    strength = t;
  }
  return strength;
}

SemilatticeVerdict semilattice_design_check(const CodeVector& chi, VertexId x, int t, const Budget& budget) {
  const Scheme& s = chi.scheme();
  const int D = s.classes();
  if (t < 0 || t > D) throw Error(ErrorCode::Domain, "semilattice rank out of range");
  const bool hamming = s.family() == Family::Hamming;
  const int q = hamming ? s.alphabet() : 0;
  const int ground = hamming ? D : s.ground_set();

  std::uint64_t qt = 1;
  if (hamming) {
    for (int m = 0; m < t; ++m) qt *= static_cast<std::uint64_t>(q);
  }
  const std::uint64_t position_sets = binomial_u64(ground, t);
  const std::uint64_t objects = position_sets * qt;
  const std::uint64_t cost = objects + chi.support_size() * binomial_u64(D, t);
  if (cost > budget.steps) {
    throw Error(ErrorCode::Budget, "semilattice check at rank " + std::to_string(t) + " needs " + std::to_string(cost) +
                                       " steps (budget " + std::to_string(budget.steps) + ")");
  }

  std::vector<Rational> sums(objects, Rational(0));
  std::vector<int> sub(t);
  for (const auto& [id, value] : chi.entries()) {
    Packed p = s.pack_id(id);
    if (hamming) {
      for_each_combination(D, t, [&](const std::vector<int>& pos) {
        std::uint64_t vals = 0;
        for (int m = t - 1; m >= 0; --m) vals = vals * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(s.digit(p, pos[m]));
        for (int m = 0; m < t; ++m) sub[m] = pos[m] + 1;
        sums[colex_rank(sub) * qt + vals] += value;
      });
    } else {
      Vertex yv = s.unpack(p);
      for_each_combination(D, t, [&](const std::vector<int>& idx) {
        for (int m = 0; m < t; ++m) sub[m] = yv.symbols[idx[m]];
        sums[colex_rank(sub)] += value;
      });
    }
  }

  const Packed px = s.pack_id(x);
  auto describe = [&](std::uint64_t obj, int& meet) {
    std::vector<int> pos = colex_unrank(obj / qt, t);
    meet = 0;
    if (hamming) {
      std::string word(D, '.');
      std::uint64_t vals = obj % qt;
      for (int m = 0; m < t; ++m) {
        int v = static_cast<int>(vals % static_cast<std::uint64_t>(q));
        vals /= static_cast<std::uint64_t>(q);
        word[pos[m] - 1] = static_cast<char>(v < 10 ? '0' + v : 'a' + v - 10);
        meet += s.digit(px, pos[m] - 1) == v;
      }
      return word;
    }
    std::string out;
    for (int m = 0; m < t; ++m) {
      if (m) out += ",";
      out += std::to_string(pos[m]);
      meet += static_cast<int>((px >> (pos[m] - 1)) & 1);
    }
    return out;
  };

  std::vector<int> meet_of(objects);
  std::vector<std::string> name_of(objects);
  for (std::uint64_t o = 0; o < objects; ++o) name_of[o] = describe(o, meet_of[o]);

  SemilatticeVerdict verdict;
  for (int r = 0; r <= t; ++r) {
    std::optional<std::uint64_t> first;
    for (std::uint64_t o = 0; o < objects; ++o) {
      if (meet_of[o] != r) continue;
      if (!first) {
        first = o;
        continue;
      }
      if (sums[o] != sums[*first]) {
        verdict.holds = false;
        verdict.witness = std::make_pair(SemilatticeVerdict::Side{name_of[*first], r, sums[*first]},
                                         SemilatticeVerdict::Side{name_of[o], r, sums[o]});
        return verdict;
      }
    }
  }
  return verdict;
}

RegularityScan distance_regularity(const CodeVector& Y, int radius, const Budget& budget) {
  const Scheme& s = Y.scheme();
  const int D = s.classes();
  const std::uint64_t n = s.size();
  if (n * Y.support_size() > budget.steps) {
    throw Error(ErrorCode::Budget, "regularity scan over " + std::to_string(n) + " vertices exceeds the step budget");
  }
  std::vector<Packed> words;
  for (VertexId id : Y.support()) words.push_back(s.pack_id(id));
  std::map<int, std::pair<std::vector<std::uint64_t>, VertexId>> seen;
  RegularityScan scan;
  std::vector<std::uint64_t> profile(D + 1);
  for (VertexId z = 0; z < n; ++z) {
    Packed pz = s.pack_id(z);
    std::fill(profile.begin(), profile.end(), 0);
    for (Packed w : words) ++profile[s.distance_packed(pz, w)];
    int cover = 0;
    while (profile[cover] == 0) ++cover;
    scan.covering_radius = std::max(scan.covering_radius, cover);
    if (cover > radius) continue;
    auto [it, inserted] = seen.emplace(cover, std::make_pair(profile, z));
    if (!inserted && it->second.first != profile && scan.regular) {
      scan.regular = false;
      scan.witness = "vertices " + s.format_id(it->second.second) + " and " + s.format_id(z) + " at distance " +
                     std::to_string(cover) + " from the code see different distance profiles";
    }
  }
  return scan;
}

bool is_regular_code(const CodeVector& Y) {
  const Scheme& s = Y.scheme();
  std::vector<Packed> words;
  for (VertexId id : Y.support()) words.push_back(s.pack_id(id));
  std::vector<std::uint64_t> first, profile(s.classes() + 1);
  for (Packed y : words) {
    std::fill(profile.begin(), profile.end(), 0);
    for (Packed w : words) ++profile[s.distance_packed(y, w)];
    if (first.empty()) first = profile;
    else if (profile != first) return false;
  }
  return true;
}

}  // namespace amlab
