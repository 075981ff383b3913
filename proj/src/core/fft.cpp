#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <vector>

namespace wigmd::fft {

namespace {

// One shared plan per (length, sign). Planning is not thread-safe in FFTW, so it is
// mutex-guarded; execution goes through fftw_execute_dft on per-thread buffers.
// FFTW_ESTIMATE keeps the plan choice deterministic across runs.
class PlanCache {
public:
  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// Aligned scratch buffer, one per thread, so execution alignment always matches the
// alignment the plans were created with.
struct Workspace {
  fftw_complex* buf = nullptr;
  size_t cap = 0;

  fftw_complex* get(size_t n) {
    if (cap < n) {
      fftw_free(buf);
      buf = fftw_alloc_complex(n);
      cap = n;
    }
    return buf;
  }

  ~Workspace() { fftw_free(buf); }
};

thread_local Workspace tl_workspace;

}  // namespace

void dft(cplx* data, int n, int sign) {
  fftw_plan plan = plan_cache().get(n, sign);
  fftw_complex* w = tl_workspace.get(static_cast<size_t>(n));
  // std::complex<double> is layout-compatible with fftw_complex
  std::memcpy(static_cast<void*>(w), static_cast<const void*>(data), sizeof(cplx) * static_cast<size_t>(n));
  fftw_execute_dft(plan, w, w);
  std::memcpy(static_cast<void*>(data), static_cast<const void*>(w), sizeof(cplx) * static_cast<size_t>(n));
}

void dft_axis(cplx* data, int n0, int n1, int axis, int sign) {
  if (axis == 1) {
    for (int i = 0; i < n0; ++i) dft(data + static_cast<size_t>(i) * n1, n1, sign);
    return;
  }
  std::vector<cplx> col(static_cast<size_t>(n0));
  for (int j = 0; j < n1; ++j) {
    for (int i = 0; i < n0; ++i) col[static_cast<size_t>(i)] = data[static_cast<size_t>(i) * n1 + j];
    dft(col.data(), n0, sign);
    for (int i = 0; i < n0; ++i) data[static_cast<size_t>(i) * n1 + j] = col[static_cast<size_t>(i)];
  }
}

void centered_dft(cplx* data, int n, int sign, double scale) {
  // (n-N/2)(m-N/2) = nm - (n+m)N/2 + N^2/4; with N = 0 mod 4 the constant phase is 1.
  for (int i = 1; i < n; i += 2) data[i] = -data[i];
  dft(data, n, sign);
  for (int i = 0; i < n; ++i) data[i] *= (i & 1) ? -scale : scale;
}

void centered_dft_axis(cplx* data, int n0, int n1, int axis, int sign, double scale) {
  auto phase = [&](int i0, int i1) { return ((axis == 0 ? i0 : i1) & 1) != 0; };
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j)
      if (phase(i, j)) data[static_cast<size_t>(i) * n1 + j] = -data[static_cast<size_t>(i) * n1 + j];
  dft_axis(data, n0, n1, axis, sign);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j) {
      cplx& v = data[static_cast<size_t>(i) * n1 + j];
      v *= phase(i, j) ? -scale : scale;
    }
}

}  // namespace wigmd::fft
