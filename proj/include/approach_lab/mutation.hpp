#pragma once

#include <atomic>
#include <string>
#include <string_view>

#include "approach_lab/errors.hpp"

namespace approach_lab {

/// Deliberate core defects used to check that the theorem battery is
/// sensitive. Never enabled outside tests and the `suite --mutate` flag.
enum class Mutation : unsigned {
  none = 0,
  inf_minus_inf = 1u << 0,         // inf (-) inf evaluates to inf instead of 0
  skip_triangle_repair = 1u << 1,  // generated matrices are not closed under paths
  nonstrict_bplus = 1u << 2,       // B+phi admits balls with radius == phi(x)
};

namespace detail {
inline std::atomic<unsigned> active_mutations{0};
}

inline bool mutation_active(Mutation m) noexcept {
  return (detail::active_mutations.load(std::memory_order_relaxed) & static_cast<unsigned>(m)) != 0;
}

inline unsigned active_mutation_mask() noexcept {
  return detail::active_mutations.load(std::memory_order_relaxed);
}

/// Enables a set of mutations for the lifetime of the guard.
class ScopedMutation {
 public:
  explicit ScopedMutation(unsigned mask) : saved_(detail::active_mutations.exchange(mask)) {}
  explicit ScopedMutation(Mutation m) : ScopedMutation(static_cast<unsigned>(m)) {}
  ~ScopedMutation() { detail::active_mutations.store(saved_); }
  ScopedMutation(const ScopedMutation&) = delete;
  ScopedMutation& operator=(const ScopedMutation&) = delete;

 private:
  unsigned saved_;
};

inline std::string_view mutation_name(Mutation m) {
  switch (m) {
    case Mutation::inf_minus_inf: return "inf-minus-inf";
    case Mutation::skip_triangle_repair: return "skip-triangle-repair";
    case Mutation::nonstrict_bplus: return "nonstrict-bplus";
    case Mutation::none: break;
  }
  return "none";
}

inline Mutation parse_mutation(std::string_view s) {
  for (Mutation m : {Mutation::inf_minus_inf, Mutation::skip_triangle_repair, Mutation::nonstrict_bplus})
    if (mutation_name(m) == s) return m;
  if (s == "none") return Mutation::none;
  throw parse_error("unknown mutation '" + std::string(s) + "'");
}

}  // namespace approach_lab
