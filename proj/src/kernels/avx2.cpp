// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

// Compiled with -mavx2; only called after a runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace qamine::simd::detail {

namespace {

inline __m256d load_counts(const std::int32_t* p) {
  return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

}  // namespace

void topic_weights_avx2(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                        const std::int32_t* topic_total, std::size_t n, double alpha, double beta, double vbeta,
                        double* out) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vv = _mm256_set1_pd(vbeta);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_add_pd(load_counts(doc_topic + k), va);
    const __m256d w = _mm256_add_pd(load_counts(word_topic + k), vb);
    const __m256d t = _mm256_add_pd(load_counts(topic_total + k), vv);
    _mm256_storeu_pd(out + k, _mm256_div_pd(_mm256_mul_pd(d, w), t));
  }
  topic_weights_scalar(doc_topic + k, word_topic + k, topic_total + k, n - k, alpha, beta, vbeta, out + k);
}

void smoothed_ratio_avx2(const std::int32_t* counts, std::size_t n, double prior, double denom, double* out) {
  const __m256d vp = _mm256_set1_pd(prior);
  const __m256d vd = _mm256_set1_pd(denom);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_add_pd(load_counts(counts + i), vp), vd));
  }
  smoothed_ratio_scalar(counts + i, n - i, prior, denom, out + i);
}

}  // namespace qamine::simd::detail
