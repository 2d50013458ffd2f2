#ifndef QUADVERTEX_FIELD_HPP
#define QUADVERTEX_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace quadvertex {

// Arithmetic modulo the Mersenne prime 2^61 - 1.  Used only to locate sign
// solutions quickly; every accepted answer is re-checked over Q.
class Fp {
public:
    static constexpr std::uint64_t P = (std::uint64_t(1) << 61) - 1;

    Fp() = default;
    Fp(long long v) // NOLINT(google-explicit-constructor)
    {
        long long r = v % static_cast<long long>(P);
        if (r < 0)
            r += static_cast<long long>(P);
        v_ = static_cast<std::uint64_t>(r);
    }
    static Fp raw(std::uint64_t v) { Fp f; f.v_ = v % P; return f; }
    static Fp from_mpz(const mpz_class& z);
    static Fp from_mpq(const mpq_class& q);

    std::uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(Fp o) const { std::uint64_t s = v_ + o.v_; if (s >= P) s -= P; return raw_(s); }
    Fp operator-(Fp o) const { return raw_(v_ >= o.v_ ? v_ - o.v_ : v_ + P - o.v_); }
    Fp operator-() const { return raw_(v_ == 0 ? 0 : P - v_); }
    Fp operator*(Fp o) const
    {
        unsigned __int128 m = static_cast<unsigned __int128>(v_) * o.v_;
        std::uint64_t lo = static_cast<std::uint64_t>(m & P);
        std::uint64_t hi = static_cast<std::uint64_t>(m >> 61);
        std::uint64_t s = lo + hi;
        if (s >= P)
            s -= P;
        return raw_(s);
    }
    Fp inverse() const;
    Fp operator/(Fp o) const { return *this * o.inverse(); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }
    Fp& operator/=(Fp o) { return *this = *this / o; }
    bool operator==(Fp o) const { return v_ == o.v_; }
    bool operator!=(Fp o) const { return v_ != o.v_; }

private:
    static Fp raw_(std::uint64_t v) { Fp f; f.v_ = v; return f; }
    std::uint64_t v_ = 0;
};

Fp pow(Fp base, long long e);
mpq_class pow(const mpq_class& base, long long e);

inline bool is_zero(const mpq_class& q) { return sgn(q) == 0; }
inline bool is_zero(const Fp& f) { return f.is_zero(); }

std::string to_string(const mpq_class& q);

struct SingularPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace quadvertex

#endif
