#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hpt {

/// Every coefficient is stored as an exact rational. Over the integers the
/// denominator is always 1, over Z/p the value is the canonical
/// representative in [0, p).
using Scalar = mpq_class;

class Ring {
 public:
  enum class Kind { Integers, PrimeField, Rationals };

  Ring() = default;

  static Ring integers() { return Ring(Kind::Integers, 0); }
  static Ring rationals() { return Ring(Kind::Rationals, 0); }
  /// Throws InvalidInput unless p is prime.
  static Ring prime_field(unsigned long p);
  /// Accepts "Z", "Q" and "Zp:<p>".
  static Ring parse(std::string_view text);

  Kind kind() const { return kind_; }
  unsigned long characteristic() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integers; }
  std::string to_string() const;

  /// Brings `x` to canonical form. Throws InvalidInput for a non-integral
  /// value over Z or a denominator divisible by p over Z/p.
  void reduce(Scalar& x) const;
  Scalar canonical(Scalar x) const {
    reduce(x);
    return x;
  }
  /// Multiplicative inverse; fields only.
  Scalar inverse(const Scalar& x) const;

  bool operator==(const Ring&) const = default;

 private:
  Ring(Kind kind, unsigned long p) : kind_(kind), p_(p) {}

  Kind kind_ = Kind::Integers;
  unsigned long p_ = 0;
};

}  // namespace hpt
