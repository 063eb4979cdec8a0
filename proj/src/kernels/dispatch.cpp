// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "qamine/error.hpp"
#include "qamine/kernels.hpp"

namespace qamine::simd {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, detail::topic_weights_scalar, detail::smoothed_ratio_scalar};
#if defined(QAMINE_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, detail::topic_weights_avx2, detail::smoothed_ratio_avx2};
#endif
#if defined(QAMINE_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, detail::topic_weights_neon, detail::smoothed_ratio_neon};
#endif

const KernelTable& pick_active() {
  if (const char* forced = std::getenv("QAMINE_KERNEL"); forced != nullptr && *forced != '\0') {
    const std::string name(forced);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (name == to_string(isa)) return kernels(isa);
    }
    throw InvalidArgument("QAMINE_KERNEL: unknown kernel '" + name + "'");
  }
  if (isa_available(Isa::Avx2)) return kernels(Isa::Avx2);
  if (isa_available(Isa::Neon)) return kernels(Isa::Neon);
  return kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(QAMINE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(QAMINE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels(Isa isa) {
  if (!isa_available(isa)) {
    throw InvalidArgument("kernel '" + std::string(to_string(isa)) + "' is not available on this machine");
  }
  switch (isa) {
#if defined(QAMINE_HAVE_AVX2)
    case Isa::Avx2:
      return kAvx2;
#endif
#if defined(QAMINE_HAVE_NEON)
    case Isa::Neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

const KernelTable& active_kernels() {
  static const KernelTable& table = pick_active();
  return table;
}

void topic_weights(const KernelTable& table, std::span<const std::int32_t> doc_topic,
                   std::span<const std::int32_t> word_topic, std::span<const std::int32_t> topic_total,
                   double alpha, double beta, double vbeta, std::span<double> out) {
  const auto n = out.size();
  if (doc_topic.size() != n || word_topic.size() != n || topic_total.size() != n) {
    throw InvalidArgument("topic_weights: span sizes differ");
  }
  table.topic_weights(doc_topic.data(), word_topic.data(), topic_total.data(), n, alpha, beta, vbeta, out.data());
}

void smoothed_ratio(const KernelTable& table, std::span<const std::int32_t> counts, double prior, double denom,
                    std::span<double> out) {
  if (counts.size() != out.size()) throw InvalidArgument("smoothed_ratio: span sizes differ");
  table.smoothed_ratio(counts.data(), counts.size(), prior, denom, out.data());
}

}  // namespace qamine::simd
