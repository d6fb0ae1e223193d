#include "hpt/ring.hpp"

#include <charconv>

#include "hpt/error.hpp"

namespace hpt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ModuleMismatch: return "ModuleMismatch";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotADifferential: return "NotADifferential";
    case ErrorKind::MaurerCartanViolation: return "MaurerCartanViolation";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::UniversalPropertyViolation: return "UniversalPropertyViolation";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::CommutatorObstruction: return "CommutatorObstruction";
    case ErrorKind::SdrViolation: return "SdrViolation";
    case ErrorKind::ComplexMismatch: return "ComplexMismatch";
    case ErrorKind::NaturalityViolation: return "NaturalityViolation";
    case ErrorKind::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::FunctorialityViolation: return "FunctorialityViolation";
    case ErrorKind::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorKind::ResampleCapExceeded: return "ResampleCapExceeded";
  }
  return "Unknown";
}

Ring Ring::prime_field(unsigned long p) {
  mpz_class z(p);
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) {
    throw Error(ErrorKind::InvalidInput, "Zp requires a prime modulus, got " + std::to_string(p));
  }
  return Ring(Kind::PrimeField, p);
}

Ring Ring::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.substr(0, 3) == "Zp:") {
    auto digits = text.substr(3);
    unsigned long p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return prime_field(p);
  }
  throw Error(ErrorKind::InvalidInput, "unknown ring '" + std::string(text) + "'");
}

std::string Ring::to_string() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "Zp:" + std::to_string(p_);
  }
  return "?";
}

void Ring::reduce(Scalar& x) const {
  switch (kind_) {
    case Kind::Rationals:
      x.canonicalize();
      return;
    case Kind::Integers:
      if (x.get_den() != 1) {
        throw Error(ErrorKind::InvalidInput, "non-integral coefficient " + x.get_str() + " over Z");
      }
      return;
    case Kind::PrimeField: {
      if (x.get_den() == 1 && x.get_num() >= 0 && x.get_num() < p_) return;
      mpz_class p(p_);
      mpz_class num = x.get_num() % p;
      if (x.get_den() != 1) {
        mpz_class den = x.get_den() % p;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) {
          throw Error(ErrorKind::InvalidInput, "denominator of " + x.get_str() + " vanishes mod p");
        }
        num = (num * inv) % p;
      }
      if (num < 0) num += p;
      x = Scalar(num);
      return;
    }
  }
}

Scalar Ring::inverse(const Scalar& x) const {
  if (x == 0) throw Error(ErrorKind::NotInvertible, "division by zero");
  switch (kind_) {
    case Kind::Integers:
      if (x == 1 || x == -1) return x;
      throw Error(ErrorKind::NotInvertible, x.get_str() + " is not a unit in Z");
    case Kind::Rationals:
      return Scalar(1) / x;
    case Kind::PrimeField: {
      mpz_class p(p_);
      mpz_class inv;
      mpz_class v = x.get_num();
      mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
      return Scalar(inv);
    }
  }
  return x;
}

}  // namespace hpt
