#ifndef LOOPK_CYCLOTOMIC_HPP
#define LOOPK_CYCLOTOMIC_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <loopk/rational.hpp>

namespace loopk
{

// Integer coefficients of the m-th cyclotomic polynomial, low degree first.
const std::vector<long> &cyclotomic_polynomial(unsigned m);

unsigned euler_phi(unsigned m);

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1).
// Binary operations on elements of different orders re-embed both operands
// into Q(zeta_lcm).
class Cyclotomic
{
public:
    // Zero of Q(zeta_1) = Q.
    Cyclotomic() : m_order(1), m_coeffs(1) {}
    Cyclotomic(const Rational &r, unsigned m = 1);
    Cyclotomic(long v) : Cyclotomic(Rational(v)) {}
    Cyclotomic(unsigned m, std::vector<Rational> coeffs);

    // "[m; c0,c1,...]" or a bare rational (read as an element of Q).
    static Cyclotomic parse(std::string_view s);

    unsigned order() const
    {
        return m_order;
    }
    const std::vector<Rational> &coeffs() const
    {
        return m_coeffs;
    }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // Constant term; only meaningful when is_rational().
    const Rational &rational_part() const
    {
        return m_coeffs[0];
    }

    // The same number as an element of Q(zeta_m); requires order() | m.
    Cyclotomic embed(unsigned m) const;

    // Smallest order in which this element is defined (used before
    // serialization so that equal numbers print identically).
    Cyclotomic normalized() const;

    Cyclotomic inverse() const;

    Cyclotomic &operator+=(const Cyclotomic &);
    Cyclotomic &operator-=(const Cyclotomic &);
    Cyclotomic &operator*=(const Cyclotomic &);
    Cyclotomic &operator*=(const Rational &);
    Cyclotomic &operator/=(const Cyclotomic &o)
    {
        return *this *= o.inverse();
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic &b)
    {
        return a += b;
    }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic &b)
    {
        return a -= b;
    }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic &b)
    {
        return a *= b;
    }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic &b)
    {
        return a /= b;
    }
    Cyclotomic operator-() const;

    // Numeric equality across orders.
    friend bool operator==(const Cyclotomic &, const Cyclotomic &);

    // Canonical text "[m; c0,c1,...]" using the minimal order.
    std::string str() const;

private:
    unsigned m_order;
    std::vector<Rational> m_coeffs;
};

std::ostream &operator<<(std::ostream &, const Cyclotomic &);

Cyclotomic cyclotomic_embed(const Rational &r, unsigned m);

// zeta_m^k, reduced.
Cyclotomic root_power(unsigned m, long k);

inline Cyclotomic zero_like(const Cyclotomic &c)
{
    return Cyclotomic(Rational{}, c.order());
}
inline Cyclotomic one_like(const Cyclotomic &c)
{
    return Cyclotomic(Rational{1}, c.order());
}
inline Cyclotomic scalar_like(const Rational &q, const Cyclotomic &c)
{
    return Cyclotomic(q, c.order());
}
inline bool is_zero(const Cyclotomic &c)
{
    return c.is_zero();
}

} // namespace loopk

#endif
