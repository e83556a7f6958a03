#ifndef LOOPK_RATIONAL_HPP
#define LOOPK_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace loopk
{

// Arbitrary-precision rational, always kept in lowest terms with a
// positive denominator.
class Rational
{
public:
    Rational() = default;
    Rational(long v) : m_q(v) {}
    Rational(int v) : m_q(v) {}
    Rational(long num, long den);
    explicit Rational(mpq_class q) : m_q(std::move(q))
    {
        m_q.canonicalize();
    }

    // Accepts "p", "-p", "p/q".
    static Rational parse(std::string_view s);

    const mpq_class &get() const
    {
        return m_q;
    }

    bool is_zero() const
    {
        return sgn(m_q) == 0;
    }
    bool is_one() const
    {
        return m_q == 1;
    }
    int sign() const
    {
        return sgn(m_q);
    }
    bool is_integer() const
    {
        return m_q.get_den() == 1;
    }
    mpz_class num() const
    {
        return m_q.get_num();
    }
    mpz_class den() const
    {
        return m_q.get_den();
    }
    // Requires is_integer() and a value fitting in 64 bits.
    std::int64_t to_int() const;

    Rational inverse() const;

    Rational &operator+=(const Rational &o)
    {
        m_q += o.m_q;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        m_q -= o.m_q;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        m_q *= o.m_q;
        return *this;
    }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b)
    {
        return a += b;
    }
    friend Rational operator-(Rational a, const Rational &b)
    {
        return a -= b;
    }
    friend Rational operator*(Rational a, const Rational &b)
    {
        return a *= b;
    }
    friend Rational operator/(Rational a, const Rational &b)
    {
        return a /= b;
    }
    Rational operator-() const
    {
        return Rational(mpq_class(-m_q));
    }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.m_q == b.m_q;
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.m_q, b.m_q);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    // Canonical text: "p" for integers, "p/q" otherwise.
    std::string str() const
    {
        return m_q.get_str();
    }

private:
    mpq_class m_q;
};

std::ostream &operator<<(std::ostream &, const Rational &);

Rational factorial(unsigned n);

// Free-function ring interface shared by all scalar types.
inline Rational zero_like(const Rational &)
{
    return Rational{};
}
inline Rational one_like(const Rational &)
{
    return Rational{1};
}
inline Rational scalar_like(const Rational &q, const Rational &)
{
    return q;
}
inline bool is_zero(const Rational &q)
{
    return q.is_zero();
}

} // namespace loopk

#endif
