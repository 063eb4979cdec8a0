// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include "kernels_impl.hpp"

namespace qamine::simd::detail {

void topic_weights_scalar(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                          const std::int32_t* topic_total, std::size_t n, double alpha, double beta, double vbeta,
                          double* out) {
  for (std::size_t k = 0; k < n; ++k) {
    const double d = static_cast<double>(doc_topic[k]) + alpha;
    const double w = static_cast<double>(word_topic[k]) + beta;
    const double t = static_cast<double>(topic_total[k]) + vbeta;
    out[k] = d * w / t;
  }
}

void smoothed_ratio_scalar(const std::int32_t* counts, std::size_t n, double prior, double denom, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (static_cast<double>(counts[i]) + prior) / denom;
}

}  // namespace qamine::simd::detail
