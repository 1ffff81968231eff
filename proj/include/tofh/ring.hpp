#pragma once

#include <gmpxx.h>

#include <string>

namespace tofh {

// value = numer / sqrt(2)^sde
struct RingElem {
    mpz_class numer;
    unsigned sde = 0;

    RingElem() = default;
    RingElem(long n) : numer(n) {}
    RingElem(mpz_class n, unsigned k) : numer(std::move(n)), sde(k) {}

    bool is_zero() const { return numer == 0; }
    bool operator==(const RingElem& o) const { return sde == o.sde && numer == o.numer; }
    bool operator!=(const RingElem& o) const { return !(*this == o); }
};

RingElem canonicalize(RingElem e);
RingElem ring_add(const RingElem& a, const RingElem& b);
RingElem ring_sub(const RingElem& a, const RingElem& b);
RingElem ring_mul(const RingElem& a, const RingElem& b);
RingElem ring_neg(const RingElem& a);

// n / 2^k
RingElem dyadic(const mpz_class& n, unsigned k);

// True when the canonical value lies in Z[1/2].
inline bool in_dyadic(const RingElem& e) { return e.sde % 2 == 0; }

// Exact rational value; throws std::domain_error for odd sde.
mpq_class to_rational(const RingElem& e);
RingElem from_rational(const mpq_class& q);

// Squared value as a rational (always exact).
mpq_class squared_value(const RingElem& e);

double to_double(const RingElem& e);
std::string to_string(const RingElem& e);

}  // namespace tofh
