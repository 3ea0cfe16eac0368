#include "jtrace/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace jt {

namespace {

using Entry = std::pair<uint32_t, mpz_class>;
using Column = std::vector<Entry>;  // sorted by row

Column normalize_column(Column c) {
  std::sort(c.begin(), c.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Column out;
  for (auto& e : c) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (out.back().second == 0) out.pop_back();
    } else {
      out.push_back(std::move(e));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Entry& e) { return e.second == 0; }),
            out.end());
  return out;
}

const mpz_class* find_row(const Column& c, uint32_t row) {
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const Entry& e, uint32_t r) { return e.first < r; });
  if (it != c.end() && it->first == row) return &it->second;
  return nullptr;
}

// dst = piv*dst - a*src, merging sorted sparse columns.
Column combine(const Column& dst, const Column& src, const mpz_class& piv, const mpz_class& a) {
  Column out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  mpz_class tmp;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.emplace_back(dst[i].first, piv * dst[i].second);
      ++i;
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, -a * src[j].second);
      ++j;
    } else {
      tmp = piv * dst[i].second - a * src[j].second;
      if (tmp != 0) out.emplace_back(dst[i].first, tmp);
      ++i;
      ++j;
    }
  }
  return out;
}

mpz_class column_content(const Column& c) {
  mpz_class g = 0;
  for (const auto& [r, v] : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void divide_column(Column& c, const mpz_class& g) {
  if (g == 1) return;
  for (auto& [r, v] : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

EliminationResult rank_and_kernel(const SparseIntegerMatrix& m, bool want_kernel) {
  size_t ncols = m.cols();
  std::vector<Column> work(ncols);
  for (size_t j = 0; j < ncols; ++j) work[j] = normalize_column(Column(m.columns[j]));

  // Companion vectors track each working column as a combination of the
  // original ones; a column that cancels to zero yields a kernel vector.
  std::vector<std::vector<mpz_class>> comp;
  if (want_kernel) {
    comp.assign(ncols, {});
    for (size_t j = 0; j < ncols; ++j) {
      comp[j].assign(ncols, mpz_class(0));
      comp[j][j] = 1;
    }
  }

  std::vector<uint32_t> row_count(m.rows, 0);
  for (const auto& col : work)
    for (const auto& [r, v] : col) ++row_count[r];

  std::vector<char> active(ncols, 1);
  std::vector<size_t> alive;
  for (size_t j = 0; j < ncols; ++j)
    if (!work[j].empty()) alive.push_back(j);
    else active[j] = 0;

  EliminationResult result;

  while (true) {
    // Markowitz-style pivot choice: smallest column, then an entry with unit
    // value if possible in the least-populated row.
    size_t best_col = SIZE_MAX;
    size_t best_entry = 0;
    uint64_t best_score = UINT64_MAX;
    for (size_t j : alive) {
      if (!active[j] || work[j].empty()) continue;
      for (size_t e = 0; e < work[j].size(); ++e) {
        const auto& [r, v] = work[j][e];
        uint64_t unit_penalty = (v == 1 || v == -1) ? 0 : (uint64_t(1) << 40);
        uint64_t score = unit_penalty +
                         static_cast<uint64_t>(work[j].size() - 1) * (row_count[r] - 1);
        if (score < best_score) {
          best_score = score;
          best_col = j;
          best_entry = e;
        }
      }
    }
    if (best_col == SIZE_MAX) break;

    ++result.rank;
    active[best_col] = 0;
    uint32_t prow = work[best_col][best_entry].first;
    mpz_class piv = work[best_col][best_entry].second;
    for (const auto& [r, v] : work[best_col]) --row_count[r];

    for (size_t j : alive) {
      if (!active[j]) continue;
      const mpz_class* a = find_row(work[j], prow);
      if (!a) continue;
      mpz_class av = *a;
      for (const auto& [r, v] : work[j]) --row_count[r];
      work[j] = combine(work[j], work[best_col], piv, av);
      if (want_kernel) {
        auto& cj = comp[j];
        const auto& cp = comp[best_col];
        for (size_t t = 0; t < ncols; ++t) cj[t] = piv * cj[t] - av * cp[t];
        // Joint content so the column/companion correspondence is preserved.
        mpz_class g = column_content(work[j]);
        for (const auto& v : cj) {
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
          if (g == 1) break;
        }
        if (g > 1) {
          divide_column(work[j], g);
          for (auto& v : cj) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        }
      } else {
        mpz_class g = column_content(work[j]);
        if (g > 1) divide_column(work[j], g);
      }
      for (const auto& [r, v] : work[j]) ++row_count[r];
      if (work[j].empty() && !want_kernel) active[j] = 0;
    }
    if (want_kernel) {
      // Columns cancelled to zero stop participating; their companions are
      // the kernel vectors collected below.
      for (size_t j : alive)
        if (active[j] && work[j].empty()) active[j] = 0;
    }
    alive.erase(std::remove_if(alive.begin(), alive.end(),
                               [&](size_t j) { return !active[j]; }),
                alive.end());
  }

  if (want_kernel) {
    for (size_t j = 0; j < ncols; ++j) {
      if (!work[j].empty()) continue;
      // Zero column: its companion is a kernel vector.
      // Sign-normalize: first nonzero positive.
      for (const auto& v : comp[j]) {
        if (v == 0) continue;
        if (v < 0)
          for (auto& x : comp[j]) x = -x;
        break;
      }
      result.kernel.push_back(comp[j]);
    }
    // Verify M * v = 0 exactly for every kernel vector.
    for (const auto& kv : result.kernel) {
      std::vector<mpz_class> acc(m.rows, mpz_class(0));
      for (size_t j = 0; j < ncols; ++j) {
        if (kv[j] == 0) continue;
        for (const auto& [r, v] : m.columns[j]) acc[r] += kv[j] * v;
      }
      for (const auto& v : acc)
        if (v != 0) throw std::runtime_error("kernel verification failed");
    }
    if (result.rank + result.kernel.size() != ncols)
      throw std::runtime_error("rank + kernel dimension != column count");
  }

  return result;
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace

uint64_t modular_rank(const SparseIntegerMatrix& m, uint64_t prime) {
  using ModEntry = std::pair<uint32_t, uint64_t>;
  std::vector<std::vector<ModEntry>> work(m.cols());
  mpz_class pz(static_cast<unsigned long>(prime));
  for (size_t j = 0; j < m.cols(); ++j) {
    absl::flat_hash_map<uint32_t, uint64_t> acc;
    for (const auto& [r, v] : m.columns[j]) {
      mpz_class md = v % pz;
      if (md < 0) md += pz;
      uint64_t u = mpz_get_ui(md.get_mpz_t());
      uint64_t& slot = acc[r];
      slot = (slot + u) % prime;
    }
    for (const auto& [r, u] : acc)
      if (u != 0) work[j].emplace_back(r, u);
    std::sort(work[j].begin(), work[j].end());
  }

  uint64_t rank = 0;
  std::vector<char> active(m.cols(), 1);
  while (true) {
    size_t best = SIZE_MAX;
    for (size_t j = 0; j < m.cols(); ++j)
      if (active[j] && !work[j].empty() &&
          (best == SIZE_MAX || work[j].size() < work[best].size()))
        best = j;
    if (best == SIZE_MAX) break;
    ++rank;
    active[best] = 0;
    uint32_t prow = work[best][0].first;
    uint64_t piv = work[best][0].second;
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!active[j]) continue;
      auto it = std::lower_bound(work[j].begin(), work[j].end(), prow,
                                 [](const ModEntry& e, uint32_t r) { return e.first < r; });
      if (it == work[j].end() || it->first != prow) continue;
      uint64_t a = it->second;
      std::vector<ModEntry> out;
      out.reserve(work[j].size() + work[best].size());
      size_t x = 0, y = 0;
      while (x < work[j].size() || y < work[best].size()) {
        if (y == work[best].size() ||
            (x < work[j].size() && work[j][x].first < work[best][y].first)) {
          out.emplace_back(work[j][x].first, mulmod(work[j][x].second, piv, prime));
          ++x;
        } else if (x == work[j].size() || work[best][y].first < work[j][x].first) {
          out.emplace_back(work[best][y].first,
                           mulmod(prime - a, work[best][y].second, prime));
          ++y;
        } else {
          uint64_t v = (mulmod(work[j][x].second, piv, prime) +
                        mulmod(prime - a, work[best][y].second, prime)) % prime;
          if (v != 0) out.emplace_back(work[j][x].first, v);
          ++x;
          ++y;
        }
      }
      work[j] = std::move(out);
      if (work[j].empty()) active[j] = 0;
    }
  }
  return rank;
}

uint64_t checked_rank(const SparseIntegerMatrix& m) {
  uint64_t exact = rank_and_kernel(m, false).rank;
  for (uint64_t p : kRankPrimes) {
    uint64_t mr = modular_rank(m, p);
    if (mr > exact) throw std::runtime_error("modular rank exceeds exact rank");
    if (mr != exact)
      throw std::runtime_error("modular rank disagrees with exact rank (bad prime unlikely)");
  }
  return exact;
}

bool solve_membership(const SparseIntegerMatrix& m,
                      const std::vector<std::pair<uint32_t, mpz_class>>& v) {
  uint64_t base = rank_and_kernel(m, false).rank;
  SparseIntegerMatrix aug = m;
  aug.start_column();
  for (const auto& [r, val] : v) aug.add_entry(r, val);
  uint64_t augmented = rank_and_kernel(aug, false).rank;
  return augmented == base;
}

std::optional<std::vector<Scalar>> solve_in_span(
    const SparseIntegerMatrix& m, const std::vector<std::pair<uint32_t, mpz_class>>& v) {
  size_t n = m.cols();
  bool vzero = true;
  for (const auto& [r, val] : v)
    if (val != 0) vzero = false;
  if (vzero) return std::vector<Scalar>(n, Scalar());

  SparseIntegerMatrix aug = m;
  aug.start_column();
  for (const auto& [r, val] : v) aug.add_entry(r, val);
  EliminationResult er = rank_and_kernel(aug, true);
  for (const auto& kv : er.kernel) {
    if (kv[n] == 0) continue;
    Scalar denom = Scalar::parse(mpz_class(kv[n]).get_str());
    std::vector<Scalar> x(n);
    for (size_t j = 0; j < n; ++j) {
      if (kv[j] == 0) continue;
      x[j] = -(Scalar::parse(mpz_class(kv[j]).get_str()) / denom);
    }
    return x;
  }
  return std::nullopt;
}

}  // namespace jt
