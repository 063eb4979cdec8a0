// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

// AArch64 only: NEON with float64x2_t is part of the base ISA there.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace qamine::simd::detail {

namespace {

inline float64x2_t load_counts(const std::int32_t* p) {
  const int32x2_t v = vld1_s32(p);
  return vcvtq_f64_s64(vmovl_s32(v));
}

}  // namespace

void topic_weights_neon(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                        const std::int32_t* topic_total, std::size_t n, double alpha, double beta, double vbeta,
                        double* out) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  const float64x2_t vv = vdupq_n_f64(vbeta);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t d = vaddq_f64(load_counts(doc_topic + k), va);
    const float64x2_t w = vaddq_f64(load_counts(word_topic + k), vb);
    const float64x2_t t = vaddq_f64(load_counts(topic_total + k), vv);
    vst1q_f64(out + k, vdivq_f64(vmulq_f64(d, w), t));
  }
  topic_weights_scalar(doc_topic + k, word_topic + k, topic_total + k, n - k, alpha, beta, vbeta, out + k);
}

void smoothed_ratio_neon(const std::int32_t* counts, std::size_t n, double prior, double denom, double* out) {
  const float64x2_t vp = vdupq_n_f64(prior);
  const float64x2_t vd = vdupq_n_f64(denom);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vdivq_f64(vaddq_f64(load_counts(counts + i), vp), vd));
  smoothed_ratio_scalar(counts + i, n - i, prior, denom, out + i);
}

}  // namespace qamine::simd::detail
