#include "quadvertex/field.hpp"

namespace quadvertex {

Fp Fp::from_mpz(const mpz_class& z)
{
    static const mpz_class modulus(std::to_string(P));
    mpz_class r = z % modulus;
    if (r < 0)
        r += modulus;
    return raw(std::stoull(r.get_str()));
}

Fp Fp::from_mpq(const mpq_class& q)
{
    Fp d = from_mpz(q.get_den());
    if (d.is_zero())
        throw SingularPoint("denominator vanishes modulo p");
    return from_mpz(q.get_num()) / d;
}

Fp Fp::inverse() const
{
    if (v_ == 0)
        throw SingularPoint("inverse of zero modulo p");
    return pow(*this, static_cast<long long>(P - 2));
}

Fp pow(Fp base, long long e)
{
    if (e < 0)
        return pow(base.inverse(), -e);
    Fp r(1);
    while (e > 0) {
        if (e & 1)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

mpq_class pow(const mpq_class& base, long long e)
{
    if (e == 0)
        return 1;
    mpz_class n, d;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), k);
    if (e < 0) {
        if (n == 0)
            throw SingularPoint("negative power of zero");
        std::swap(n, d);
    }
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

} // namespace quadvertex
