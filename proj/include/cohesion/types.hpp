#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace cohesion {

/// Dense user index assigned at ingestion.
using UserId = std::uint32_t;
/// Integer epoch seconds.
using Timestamp = std::int64_t;
using EventId = std::uint32_t;

inline constexpr UserId kNoUser = std::numeric_limits<UserId>::max();

/// Polarity class of an event. Ingestion restricts sentiment to {-1, 0, +1}.
enum class Sentiment : std::int8_t { Negative = -1, Neutral = 0, Positive = 1 };

constexpr int value(Sentiment s) noexcept { return static_cast<int>(s); }

constexpr Sentiment flipped(Sentiment s) noexcept {
  return static_cast<Sentiment>(-static_cast<int>(s));
}

/// A time-stamped activity. `src == dst` is an individual post (self-loop),
/// anything else is an interaction from `src` to `dst`.
struct Event {
  EventId id = 0;
  UserId src = 0;
  UserId dst = 0;
  Timestamp t = 0;
  Sentiment sentiment = Sentiment::Neutral;

  [[nodiscard]] bool is_self_loop() const noexcept { return src == dst; }
  [[nodiscard]] bool touches(UserId u) const noexcept { return src == u || dst == u; }
  /// Endpoint opposite to `u`; `u` itself for a self-loop.
  [[nodiscard]] UserId other(UserId u) const noexcept { return src == u ? dst : src; }

  friend bool operator==(const Event&, const Event&) = default;
};

/// Strict (t, id) order used for histories and summation.
constexpr bool precedes(const Event& a, const Event& b) noexcept {
  return a.t < b.t || (a.t == b.t && a.id < b.id);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or rejected input record.
class IngestError : public Error {
 public:
  IngestError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A precondition of an operation was broken by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cohesion
