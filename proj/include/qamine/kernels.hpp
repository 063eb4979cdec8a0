// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qamine::simd {

/// Instruction sets with a kernel implementation. Scalar is always present.
enum class Isa : std::uint8_t { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// out[k] = (doc_topic[k] + alpha) * (word_topic[k] + beta) / (topic_total[k] + vbeta)
/// for k in [0, n). This is the unnormalized collapsed Gibbs conditional.
using TopicWeightsFn = void (*)(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                                const std::int32_t* topic_total, std::size_t n, double alpha, double beta,
                                double vbeta, double* out);

/// out[i] = (counts[i] + prior) / denom.
using SmoothedRatioFn = void (*)(const std::int32_t* counts, std::size_t n, double prior, double denom,
                                 double* out);

/// Every variant evaluates the same IEEE operations in the same order per
/// element, so all tables produce bit-identical output.
struct KernelTable {
  Isa isa;
  TopicWeightsFn topic_weights;
  SmoothedRatioFn smoothed_ratio;
};

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);
std::vector<Isa> available_isas();

/// Throws InvalidArgument when the ISA is unavailable.
const KernelTable& kernels(Isa isa);

/// Best available table, chosen once. QAMINE_KERNEL=scalar|avx2|neon forces
/// a specific one.
const KernelTable& active_kernels();

void topic_weights(const KernelTable& table, std::span<const std::int32_t> doc_topic,
                   std::span<const std::int32_t> word_topic, std::span<const std::int32_t> topic_total,
                   double alpha, double beta, double vbeta, std::span<double> out);

void smoothed_ratio(const KernelTable& table, std::span<const std::int32_t> counts, double prior, double denom,
                    std::span<double> out);

}  // namespace qamine::simd
