// Copyright 2026  The dnsgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <memory>
#include <mutex>

#include "dnsgen/synth.h"

namespace dnsgen {
namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex &PlannerMutex() {
  static std::mutex mu;
  return mu;
}

struct FftwFree {
  void operator()(void *p) const { fftw_free(p); }
};

struct PlanDestroy {
  void operator()(fftw_plan p) const {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(p);
  }
};

using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy>;

size_t NextPowerOfTwo(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> DirectConvolve(std::span<const double> a,
                                   std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += ai * b[j];
  }
  return out;
}

std::vector<double> FftConvolve(std::span<const double> a,
                                std::span<const double> b) {
  const size_t out_len = a.size() + b.size() - 1;
  const size_t n = NextPowerOfTwo(out_len);
  const size_t bins = n / 2 + 1;
  RealBuffer ra(static_cast<double *>(fftw_malloc(sizeof(double) * n)));
  RealBuffer rb(static_cast<double *>(fftw_malloc(sizeof(double) * n)));
  ComplexBuffer ca(
      static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * bins)));
  ComplexBuffer cb(
      static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * bins)));
  if (!ra || !rb || !ca || !cb) throw std::bad_alloc();

  Plan fwd_a, fwd_b, inv;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fwd_a.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), ra.get(), ca.get(),
                                     FFTW_ESTIMATE));
    fwd_b.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), rb.get(), cb.get(),
                                     FFTW_ESTIMATE));
    inv.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), ca.get(), ra.get(),
                                   FFTW_ESTIMATE));
  }
  std::fill(ra.get(), ra.get() + n, 0.0);
  std::fill(rb.get(), rb.get() + n, 0.0);
  std::copy(a.begin(), a.end(), ra.get());
  std::copy(b.begin(), b.end(), rb.get());
  fftw_execute(fwd_a.get());
  fftw_execute(fwd_b.get());
  for (size_t k = 0; k < bins; ++k) {
    const double re = ca[k][0] * cb[k][0] - ca[k][1] * cb[k][1];
    const double im = ca[k][0] * cb[k][1] + ca[k][1] * cb[k][0];
    ca[k][0] = re;
    ca[k][1] = im;
  }
  fftw_execute(inv.get());  // unnormalized
  std::vector<double> out(ra.get(), ra.get() + out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (double &v : out) v *= scale;
  return out;
}

}  // namespace

std::vector<double> LinearConvolve(std::span<const double> a,
                                   std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) <= 64 || a.size() * b.size() <= (1u << 20))
    return DirectConvolve(a, b);
  return FftConvolve(a, b);
}

}  // namespace dnsgen
