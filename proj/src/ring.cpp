#include "tofh/ring.hpp"

#include <cmath>
#include <stdexcept>

namespace tofh {

RingElem canonicalize(RingElem e) {
    if (e.numer == 0) return RingElem{};
    if (e.sde < 2) return e;
    mp_bitcnt_t twos = mpz_scan1(e.numer.get_mpz_t(), 0);
    mp_bitcnt_t drop = std::min<mp_bitcnt_t>(twos, e.sde / 2);
    if (drop > 0) {
        mpz_fdiv_q_2exp(e.numer.get_mpz_t(), e.numer.get_mpz_t(), drop);
        e.sde -= static_cast<unsigned>(2 * drop);
    }
    return e;
}

RingElem ring_add(const RingElem& a, const RingElem& b) {
    if (a.is_zero()) return canonicalize(b);
    if (b.is_zero()) return canonicalize(a);
    if ((a.sde ^ b.sde) & 1u)
        throw std::domain_error("ring_add: operands " + to_string(a) + " and " + to_string(b) +
                                " differ in sqrt(2) parity");
    RingElem r;
    if (a.sde >= b.sde) {
        mpz_class t;
        mpz_mul_2exp(t.get_mpz_t(), b.numer.get_mpz_t(), (a.sde - b.sde) / 2);
        r.numer = a.numer + t;
        r.sde = a.sde;
    } else {
        mpz_class t;
        mpz_mul_2exp(t.get_mpz_t(), a.numer.get_mpz_t(), (b.sde - a.sde) / 2);
        r.numer = b.numer + t;
        r.sde = b.sde;
    }
    return canonicalize(std::move(r));
}

RingElem ring_neg(const RingElem& a) {
    RingElem r = a;
    r.numer = -r.numer;
    return canonicalize(std::move(r));
}

RingElem ring_sub(const RingElem& a, const RingElem& b) { return ring_add(a, ring_neg(b)); }

RingElem ring_mul(const RingElem& a, const RingElem& b) {
    if (a.is_zero() || b.is_zero()) return RingElem{};
    return canonicalize(RingElem(a.numer * b.numer, a.sde + b.sde));
}

RingElem dyadic(const mpz_class& n, unsigned k) { return canonicalize(RingElem(n, 2 * k)); }

mpq_class to_rational(const RingElem& e) {
    if (e.sde % 2) throw std::domain_error("to_rational: value " + to_string(e) + " is irrational");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, e.sde / 2);
    mpq_class q(e.numer, den);
    q.canonicalize();
    return q;
}

RingElem from_rational(const mpq_class& q) {
    mpz_class den = q.get_den();
    mp_bitcnt_t k = mpz_scan1(den.get_mpz_t(), 0);
    mpz_class rest;
    mpz_fdiv_q_2exp(rest.get_mpz_t(), den.get_mpz_t(), k);
    if (rest != 1) throw std::domain_error("from_rational: denominator is not a power of two");
    return canonicalize(RingElem(q.get_num(), static_cast<unsigned>(2 * k)));
}

mpq_class squared_value(const RingElem& e) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, e.sde);
    mpq_class q(e.numer * e.numer, den);
    q.canonicalize();
    return q;
}

double to_double(const RingElem& e) {
    return e.numer.get_d() / std::pow(std::sqrt(2.0), static_cast<double>(e.sde));
}

std::string to_string(const RingElem& e) {
    if (e.sde == 0) return e.numer.get_str();
    return e.numer.get_str() + "/r2^" + std::to_string(e.sde);
}

}  // namespace tofh
