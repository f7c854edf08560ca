#pragma once

// Exact arithmetic on the extended half line [0, inf].

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "approach_lab/errors.hpp"
#include "approach_lab/mutation.hpp"

namespace approach_lab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

using i128 = __int128;

inline i128 gcd128(i128 a, i128 b) noexcept {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool fits64(i128 v) noexcept {
  return v >= static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX);
}

inline BigInt to_big(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u & 0xffffffffffffffffULL);
  return neg ? BigInt(-r) : r;
}

}  // namespace detail

/// A nonnegative rational in lowest terms, or infinity.
///
/// Small values live in two machine words; anything that does not fit is
/// promoted to an arbitrary-precision rational, so results are always exact.
/// Values are immutable once built and may be shared between threads.
class ExtValue {
 public:
  ExtValue() noexcept = default;

  template <std::integral I>
  ExtValue(I n) {  // NOLINT(google-explicit-constructor): literals read naturally
    if constexpr (std::is_signed_v<I>) {
      if (n < 0) throw domain_error("negative value " + std::to_string(n));
    }
    if constexpr (sizeof(I) >= sizeof(std::int64_t) && std::is_unsigned_v<I>) {
      if (n > static_cast<std::uint64_t>(INT64_MAX)) {
        *this = from_rational(BigRational(BigInt(n)));
        return;
      }
    }
    num_ = static_cast<std::int64_t>(n);
  }

  /// p/q reduced; q must be positive and p nonnegative.
  ExtValue(std::int64_t p, std::int64_t q) {
    if (q <= 0) throw domain_error("denominator must be positive");
    if (p < 0) throw domain_error("negative value");
    set_small(p, q);
  }

  static ExtValue infinity() noexcept {
    ExtValue v;
    v.kind_ = Kind::inf;
    return v;
  }

  static ExtValue from_rational(const BigRational& r) {
    if (r < 0) throw domain_error("negative value");
    ExtValue v;
    v.assign_big(r);
    return v;
  }

  static ExtValue fraction(const BigInt& p, const BigInt& q) {
    if (q <= 0) throw domain_error("denominator must be positive");
    return from_rational(BigRational(p, q));
  }

  /// Accepts "n", "p/q" or "inf"; anything else (decimals, signs,
  /// whitespace, zero denominators) is rejected.
  static ExtValue parse(std::string_view text) {
    if (text == "inf") return infinity();
    auto slash = text.find('/');
    auto digits = [&](std::string_view s) -> BigInt {
      if (s.empty()) throw parse_error("expected digits in value '" + std::string(text) + "'");
      for (char c : s)
        if (c < '0' || c > '9') throw parse_error("malformed value '" + std::string(text) + "'");
      return BigInt(std::string(s));
    };
    if (slash == std::string_view::npos) return from_rational(BigRational(digits(text)));
    BigInt p = digits(text.substr(0, slash));
    BigInt q = digits(text.substr(slash + 1));
    if (q == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
    return fraction(p, q);
  }

  bool is_infinite() const noexcept { return kind_ == Kind::inf; }
  bool is_finite() const noexcept { return kind_ != Kind::inf; }
  bool is_zero() const noexcept { return kind_ == Kind::small && num_ == 0; }

  BigRational to_rational() const {
    require_finite("to_rational");
    if (kind_ == Kind::big) return *big_;
    return BigRational(BigInt(num_), BigInt(den_));
  }

  BigInt numerator() const { return boost::multiprecision::numerator(to_rational()); }
  BigInt denominator() const { return boost::multiprecision::denominator(to_rational()); }

  std::string str() const {
    if (kind_ == Kind::inf) return "inf";
    if (kind_ == Kind::small) {
      return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    BigInt p = boost::multiprecision::numerator(*big_);
    BigInt q = boost::multiprecision::denominator(*big_);
    return q == 1 ? p.str() : p.str() + "/" + q.str();
  }

  friend bool operator==(const ExtValue& a, const ExtValue& b) {
    if (a.kind_ == Kind::small && b.kind_ == Kind::small) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    return a.to_rational() == b.to_rational();
  }

  friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
    if (a.is_infinite() || b.is_infinite()) {
      if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
      return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a.kind_ == Kind::small && b.kind_ == Kind::small) {
      if (a.den_ == b.den_) return a.num_ <=> b.num_;
      detail::i128 l = static_cast<detail::i128>(a.num_) * b.den_;
      detail::i128 r = static_cast<detail::i128>(b.num_) * a.den_;
      return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    BigRational l = a.to_rational(), r = b.to_rational();
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// inf + x = inf.
  friend ExtValue operator+(const ExtValue& a, const ExtValue& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    if (a.kind_ == Kind::small && b.kind_ == Kind::small) {
      if (b.num_ == 0) return a;
      if (a.num_ == 0) return b;
      detail::i128 n, d;
      if (a.den_ == b.den_) {
        n = static_cast<detail::i128>(a.num_) + b.num_;
        d = a.den_;
      } else {
        n = static_cast<detail::i128>(a.num_) * b.den_ + static_cast<detail::i128>(b.num_) * a.den_;
        d = static_cast<detail::i128>(a.den_) * b.den_;
      }
      return from_i128(n, d);
    }
    return from_rational(a.to_rational() + b.to_rational());
  }

  ExtValue& operator+=(const ExtValue& other) { return *this = *this + other; }

  /// Truncated minus b (-) a = max{b - a, 0}, with inf (-) inf = 0 and
  /// inf (-) a = inf for finite a.
  friend ExtValue tminus(const ExtValue& b, const ExtValue& a) {
    if (b.is_infinite()) {
      if (a.is_infinite()) return mutation_active(Mutation::inf_minus_inf) ? infinity() : ExtValue{};
      return infinity();
    }
    if (a.is_infinite()) return ExtValue{};
    if (b.kind_ == Kind::small && a.kind_ == Kind::small) {
      if (a.num_ == 0) return b;
      detail::i128 l = static_cast<detail::i128>(b.num_) * a.den_;
      detail::i128 r = static_cast<detail::i128>(a.num_) * b.den_;
      if (l <= r) return ExtValue{};
      if (a.den_ == b.den_) return from_i128(static_cast<detail::i128>(b.num_) - a.num_, b.den_);
      return from_i128(l - r, static_cast<detail::i128>(a.den_) * b.den_);
    }
    BigRational diff = b.to_rational() - a.to_rational();
    return diff <= 0 ? ExtValue{} : from_rational(diff);
  }

  /// Product with 0 * inf = 0 (the convention of lattice-ordered monoids).
  friend ExtValue operator*(const ExtValue& a, const ExtValue& b) {
    if (a.is_zero() || b.is_zero()) return ExtValue{};
    if (a.is_infinite() || b.is_infinite()) return infinity();
    if (a.kind_ == Kind::small && b.kind_ == Kind::small)
      return from_i128(static_cast<detail::i128>(a.num_) * b.num_, static_cast<detail::i128>(a.den_) * b.den_);
    return from_rational(a.to_rational() * b.to_rational());
  }

  /// Division by a positive finite value; inf / x = inf.
  ExtValue divided_by(const ExtValue& divisor) const {
    if (divisor.is_infinite() || divisor.is_zero()) throw domain_error("division by " + divisor.str());
    if (is_infinite()) return infinity();
    if (kind_ == Kind::small && divisor.kind_ == Kind::small)
      return from_i128(static_cast<detail::i128>(num_) * divisor.den_, static_cast<detail::i128>(den_) * divisor.num_);
    return from_rational(to_rational() / divisor.to_rational());
  }

  ExtValue pow(unsigned exponent) const {
    ExtValue result = 1, base = *this;
    while (exponent != 0) {
      if (exponent & 1u) result = result * base;
      exponent >>= 1u;
      if (exponent != 0) base = base * base;
    }
    return result;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtValue& v) { return os << v.str(); }

 private:
  enum class Kind : std::uint8_t { small, big, inf };

  void require_finite(const char* op) const {
    if (is_infinite()) throw domain_error(std::string(op) + " on inf");
  }

  void set_small(std::int64_t p, std::int64_t q) {
    detail::i128 g = detail::gcd128(p, q);
    if (g > 1) {
      p = static_cast<std::int64_t>(p / g);
      q = static_cast<std::int64_t>(q / g);
    }
    if (p == 0) q = 1;
    kind_ = Kind::small;
    num_ = p;
    den_ = q;
  }

  static ExtValue from_i128(detail::i128 n, detail::i128 d) {
    detail::i128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) return ExtValue{};
    if (detail::fits64(n) && detail::fits64(d)) {
      ExtValue v;
      v.num_ = static_cast<std::int64_t>(n);
      v.den_ = static_cast<std::int64_t>(d);
      return v;
    }
    return from_rational(BigRational(detail::to_big(n), detail::to_big(d)));
  }

  void assign_big(const BigRational& r) {
    const BigInt& p = boost::multiprecision::numerator(r);
    const BigInt& q = boost::multiprecision::denominator(r);
    if (p <= INT64_MAX && q <= INT64_MAX) {
      kind_ = Kind::small;
      num_ = static_cast<std::int64_t>(p);
      den_ = static_cast<std::int64_t>(q);
      big_.reset();
    } else {
      kind_ = Kind::big;
      big_ = std::make_shared<const BigRational>(r);
    }
  }

  Kind kind_ = Kind::small;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const BigRational> big_;
};

inline const ExtValue kInf = ExtValue::infinity();

inline ExtValue add(const ExtValue& a, const ExtValue& b) { return a + b; }

inline std::strong_ordering compare(const ExtValue& a, const ExtValue& b) { return a <=> b; }

/// Lawvere distance d_L(a, b) = b (-) a.
inline ExtValue d_left(const ExtValue& a, const ExtValue& b) { return tminus(b, a); }

/// Its opposite d_R(a, b) = a (-) b.
inline ExtValue d_right(const ExtValue& a, const ExtValue& b) { return tminus(a, b); }

/// |a - b| for finite values, inf if exactly one side is inf.
inline ExtValue abs_diff(const ExtValue& a, const ExtValue& b) { return std::max(tminus(a, b), tminus(b, a)); }

enum class FoldMode { min, max };

/// Extremum of a nonempty list. sup of the empty set (0) and inf of the empty
/// set (inf) are the caller's business.
inline ExtValue fold(std::span<const ExtValue> values, FoldMode mode) {
  if (values.empty()) throw empty_fold_error();
  return mode == FoldMode::min ? *std::min_element(values.begin(), values.end())
                               : *std::max_element(values.begin(), values.end());
}

inline ExtValue fold(std::initializer_list<ExtValue> values, FoldMode mode) {
  return fold(std::span<const ExtValue>(values.begin(), values.size()), mode);
}

}  // namespace approach_lab
