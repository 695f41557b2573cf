#pragma once

// Samples of a trigonometric polynomial on the uniform grid t_j = j / M,
// computed by one inverse FFT of the folded coefficient vector.

#include <fftw3.h>

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <new>
#include <stdexcept>
#include <vector>

#include "wiener/trig_poly.hpp"

namespace wiener {

/// Allocator returning FFTW-aligned storage. Aligned buffers keep the FFTW
/// plan (and therefore the rounding pattern) identical from run to run.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) {
    void* p = fftw_malloc(n * sizeof(T));
    if (p == nullptr) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }
  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

using Samples = std::vector<Complex, FftwAllocator<Complex>>;

/// Smallest 2^a 3^b 5^c 7^d that is >= n. FFTW is fastest on such sizes.
inline std::int64_t smooth_size_at_least(std::int64_t n) {
  if (n <= 1) return 1;
  for (std::int64_t m = n;; ++m) {
    std::int64_t r = m;
    for (std::int64_t p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

/// Values f(j/M), j = 0..M-1. Requires M >= 2 degree(f) + 1.
inline Samples evaluate_grid(const TrigPoly& f, std::int64_t grid_size) {
  if (grid_size < 1 || grid_size < 2 * f.degree() + 1)
    throw std::invalid_argument("evaluate_grid: grid size below the anti-aliasing floor 2*degree+1");
  const auto m = static_cast<std::size_t>(grid_size);
  Samples buf(m, Complex{});
  for (const Term& t : f.terms()) {
    std::int64_t bin = t.freq % grid_size;
    if (bin < 0) bin += grid_size;
    buf[static_cast<std::size_t>(bin)] += t.coef;
  }
  if (f.support_size() <= 1 && grid_size > 0) {
    // Single exponential (or zero): direct values are cheaper and exact-er.
    if (f.is_zero()) return buf;
    const Term t = f.terms().front();
    for (std::size_t j = 0; j < m; ++j) {
      const std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(t.freq) * static_cast<__int128>(j)) % grid_size);
      buf[j] = t.coef * detail::unit(static_cast<double>(r) / static_cast<double>(grid_size));
    }
    return buf;
  }

  static std::mutex planner_mutex;  // FFTW planning is not thread safe
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    plan = fftw_plan_dft_1d(static_cast<int>(grid_size), data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("evaluate_grid: FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  return buf;
}

/// Grid point j mapped into the fundamental domain [-1/2, 1/2). The mapping is
/// exactly antisymmetric: t_{M-j} = -t_j for 0 < j < M/2.
inline double grid_point(std::int64_t j, std::int64_t grid_size) {
  const std::int64_t s = (2 * j < grid_size) ? j : j - grid_size;
  return static_cast<double>(s) / static_cast<double>(grid_size);
}

}  // namespace wiener
