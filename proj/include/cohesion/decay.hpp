#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "cohesion/types.hpp"

namespace cohesion {

enum class DecayKind { Exponential, Polynomial };

inline std::string_view to_string(DecayKind k) noexcept {
  return k == DecayKind::Exponential ? "exponential" : "polynomial";
}

inline DecayKind parse_decay_kind(std::string_view s) {
  if (s == "exponential" || s == "exp") return DecayKind::Exponential;
  if (s == "polynomial" || s == "poly") return DecayKind::Polynomial;
  throw Error("unknown decay kind '" + std::string(s) + "'");
}

/// Time-decay kernel. `rate` is the exponential rate per second, or the
/// polynomial exponent. Both kinds satisfy phi(0) == 1 and are non-increasing.
struct DecaySpec {
  DecayKind kind = DecayKind::Exponential;
  double rate = 1e-4;

  static constexpr DecaySpec exponential(double lambda) noexcept { return {DecayKind::Exponential, lambda}; }
  static constexpr DecaySpec polynomial(double mu) noexcept { return {DecayKind::Polynomial, mu}; }

  void validate() const {
    if (!std::isfinite(rate)) throw ContractViolation("decay rate must be finite");
    if (kind == DecayKind::Exponential && rate < 0.0)
      throw ContractViolation("exponential decay rate must be >= 0");
    if (kind == DecayKind::Polynomial && rate <= 0.0)
      throw ContractViolation("polynomial decay exponent must be > 0");
  }

  friend bool operator==(const DecaySpec&, const DecaySpec&) = default;
};

/// Kernel value for a non-negative age `delta` (seconds).
inline double phi(const DecaySpec& spec, double delta) {
  if (!(delta >= 0.0)) throw ContractViolation("decay argument must be non-negative");
  if (spec.kind == DecayKind::Exponential) return std::exp(-spec.rate * delta);
  return std::pow(delta + 1.0, -spec.rate);
}

inline double phi(const DecaySpec& spec, Timestamp delta) { return phi(spec, static_cast<double>(delta)); }

}  // namespace cohesion
