#pragma once

#include <gmpxx.h>

#include <string>

#include "koszul/error.hpp"

namespace koszul {

/// Exact field scalar. Rationals are kept in canonical GMP form; prime-field
/// elements are stored as integers in [0, p) with denominator 1.
using Scalar = mpq_class;

struct FieldSpec {
    long characteristic = 0; // 0 = rationals, otherwise a prime < 2^31

    bool is_rationals() const { return characteristic == 0; }
    bool operator==(const FieldSpec&) const = default;
};

bool is_prime(long p);

/// Arithmetic context for a FieldSpec. All scalar math in the library goes
/// through one of these so that GF(p) residues stay canonical.
class Field {
  public:
    Field() = default;
    explicit Field(FieldSpec spec);

    const FieldSpec& spec() const { return spec_; }
    long characteristic() const { return spec_.characteristic; }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }

    /// Canonicalize an arbitrary rational into this field.
    Scalar normalize(const Scalar& a) const;

    Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
    Scalar neg(const Scalar& a) const { return normalize(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    std::string to_string(const Scalar& a) const;

  private:
    FieldSpec spec_;
};

} // namespace koszul
