#pragma once

#include <compare>
#include <cstdint>
#include <optional>

namespace pqkit {

/// Vehicle count held as an exact fixed-point integer.
///
/// One tick is 2^-64 vehicle. Any double of magnitude at least 2^-11 veh
/// lands on the tick grid without rounding, so converting per-step flux
/// volumes is lossless in practice, and every add, subtract, min and max
/// afterwards is exact. Queue content updated as `q + in - out` is therefore
/// bit-identical to `(F + in) - (G + out)`, and conservation residuals are
/// exactly zero.
class Volume {
 public:
  __extension__ using Rep = __int128;

  static constexpr double kTicksPerVeh = 0x1p64;
  static constexpr double kVehPerTick = 0x1p-64;

  constexpr Volume() = default;

  /// Rounds to the nearest tick. Throws DomainError for non-finite input or
  /// magnitudes at or above 2^62 veh.
  static Volume from_veh(double veh);

  static constexpr Volume from_ticks(Rep ticks) {
    Volume v;
    v.ticks_ = ticks;
    return v;
  }

  static constexpr Volume zero() { return Volume{}; }

  constexpr Rep ticks() const { return ticks_; }
  double veh() const { return static_cast<double>(ticks_) * kVehPerTick; }

  /// `*this * ratio`, rounded to a tick. A ratio of exactly 1 returns `*this`
  /// unchanged, and for 0 <= ratio <= 1 the result is clamped into
  /// [0, *this] (for non-negative *this) so rounding never leaves the
  /// interval the exact product lies in.
  Volume scaled(double ratio) const;

  constexpr Volume& operator+=(Volume o) {
    ticks_ += o.ticks_;
    return *this;
  }
  constexpr Volume& operator-=(Volume o) {
    ticks_ -= o.ticks_;
    return *this;
  }
  friend constexpr Volume operator+(Volume a, Volume b) { return a += b; }
  friend constexpr Volume operator-(Volume a, Volume b) { return a -= b; }
  friend constexpr Volume operator-(Volume a) { return from_ticks(-a.ticks_); }

  friend constexpr bool operator==(Volume a, Volume b) { return a.ticks_ == b.ticks_; }
  friend constexpr std::strong_ordering operator<=>(Volume a, Volume b) {
    return a.ticks_ <=> b.ticks_;
  }

  friend constexpr Volume min(Volume a, Volume b) { return b < a ? b : a; }
  friend constexpr Volume max(Volume a, Volume b) { return a < b ? b : a; }

 private:
  Rep ticks_ = 0;
};

/// `min(a, b)` where an absent `b` stands for unbounded supply.
constexpr Volume min_bounded(Volume a, const std::optional<Volume>& b) {
  return b ? min(a, *b) : a;
}

/// Storage capacity of a queue: a finite vehicle count or unbounded.
class Capacity {
 public:
  static Capacity finite(double veh);
  static constexpr Capacity infinite() { return Capacity{}; }

  bool is_finite() const { return limit_.has_value(); }
  /// Precondition: is_finite().
  Volume volume() const { return *limit_; }
  /// +inf for an infinite capacity.
  double veh() const;

  friend bool operator==(const Capacity&, const Capacity&) = default;

 private:
  constexpr Capacity() = default;
  std::optional<Volume> limit_;
};

}  // namespace pqkit
