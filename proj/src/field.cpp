#include "koszul/field.hpp"

namespace koszul {

bool is_prime(long p) {
    if (p < 2)
        return false;
    if (p % 2 == 0)
        return p == 2;
    for (long q = 3; q * q <= p; q += 2)
        if (p % q == 0)
            return false;
    return true;
}

Field::Field(FieldSpec spec) : spec_(spec) {
    if (spec_.characteristic != 0) {
        if (spec_.characteristic >= (1L << 31))
            fail(ErrorKind::validation, "characteristic must be below 2^31");
        if (!is_prime(spec_.characteristic))
            fail(ErrorKind::validation,
                 "characteristic " + std::to_string(spec_.characteristic) + " is not prime");
    }
}

Scalar Field::normalize(const Scalar& a) const {
    if (spec_.characteristic == 0)
        return a;
    mpz_class p(spec_.characteristic);
    mpz_class num = a.get_num(), den = a.get_den();
    mpz_class dmod = den % p;
    if (dmod < 0)
        dmod += p;
    if (dmod == 0)
        fail(ErrorKind::validation, "denominator vanishes in GF(" + p.get_str() + ")");
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), dmod.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(ErrorKind::internal, "non-invertible denominator mod p");
    mpz_class r = (num % p) * dinv % p;
    if (r < 0)
        r += p;
    return Scalar(r);
}

Scalar Field::inv(const Scalar& a) const {
    Scalar b = normalize(a);
    if (b == 0)
        fail(ErrorKind::validation, "division by zero");
    if (spec_.characteristic == 0)
        return 1 / b;
    mpz_class p(spec_.characteristic), r;
    mpz_invert(r.get_mpz_t(), b.get_num().get_mpz_t(), p.get_mpz_t());
    return Scalar(r);
}

std::string Field::to_string(const Scalar& a) const {
    return a.get_str();
}

} // namespace koszul
