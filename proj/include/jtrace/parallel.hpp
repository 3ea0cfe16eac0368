#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "jtrace/tensor.hpp"

namespace jt {

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Serial reference: fn(word, coeff, out) for every term of src, accumulated
// into a single map.
template <class Fn>
TermMap serial_map_accumulate(const TermMap& src, Fn&& fn) {
  TermMap out;
  for (const auto& [w, c] : src) fn(w, c, out);
  return out;
}

// OpenMP variant of serial_map_accumulate: terms are split across threads,
// each thread accumulates into a private map, and the private maps are merged.
// Addition of exact scalars is commutative and associative, so the result is
// identical to the serial reference regardless of scheduling.
template <class Fn>
TermMap parallel_map_accumulate(const TermMap& src, Fn&& fn) {
#ifndef _OPENMP
  return serial_map_accumulate(src, fn);
#else
  std::vector<const TermMap::value_type*> entries;
  entries.reserve(src.size());
  for (const auto& e : src) entries.push_back(&e);

  TermMap out;
#pragma omp parallel
  {
    TermMap local;
#pragma omp for schedule(static) nowait
    for (ptrdiff_t i = 0; i < static_cast<ptrdiff_t>(entries.size()); ++i)
      fn(entries[i]->first, entries[i]->second, local);
#pragma omp critical(jt_merge_accumulate)
    merge_terms(out, std::move(local));
  }
  return out;
#endif
}

}  // namespace jt
