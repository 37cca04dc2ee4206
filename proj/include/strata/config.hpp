#pragma once

#include <cstddef>
#include <cstdint>

namespace strata {

inline constexpr const char* kVersion = "1.0.0";

struct Guards {
  /// Largest Bell number B(n) for which set partitions of [n] are enumerated.
  std::uint64_t max_bell = 25000;
  /// Largest number of cells a forest enumeration may produce.
  std::size_t max_forests = 2'000'000;
};

/// Which level partitions a (lambda,mu)-forest may carry below its roots.
enum class ForestModel {
  /// Levels are types of joins of type-lambda set partitions.
  join_closed,
  /// Levels are any tau with lambda ⊢ tau.
  literal,
};

std::uint64_t bell_number(int n);

}  // namespace strata
