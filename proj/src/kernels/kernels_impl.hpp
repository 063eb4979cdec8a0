// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstddef>
#include <cstdint>

namespace qamine::simd::detail {

void topic_weights_scalar(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                          const std::int32_t* topic_total, std::size_t n, double alpha, double beta, double vbeta,
                          double* out);
void smoothed_ratio_scalar(const std::int32_t* counts, std::size_t n, double prior, double denom, double* out);

#if defined(QAMINE_HAVE_AVX2)
void topic_weights_avx2(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                        const std::int32_t* topic_total, std::size_t n, double alpha, double beta, double vbeta,
                        double* out);
void smoothed_ratio_avx2(const std::int32_t* counts, std::size_t n, double prior, double denom, double* out);
#endif

#if defined(QAMINE_HAVE_NEON)
void topic_weights_neon(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                        const std::int32_t* topic_total, std::size_t n, double alpha, double beta, double vbeta,
                        double* out);
void smoothed_ratio_neon(const std::int32_t* counts, std::size_t n, double prior, double denom, double* out);
#endif

}  // namespace qamine::simd::detail
