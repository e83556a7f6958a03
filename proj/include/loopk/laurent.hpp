#ifndef LOOPK_LAURENT_HPP
#define LOOPK_LAURENT_HPP

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <loopk/cyclotomic.hpp>

namespace loopk
{

using Exponent = std::vector<int>;

// Sparse Laurent polynomial in x_1, ..., x_n over cyclotomic coefficients.
// Zero coefficients are never stored; terms are ordered lexicographically
// by exponent vector.
class LaurentPoly
{
public:
    using term_map = std::map<Exponent, Cyclotomic>;

    LaurentPoly() = default;
    explicit LaurentPoly(unsigned nvars) : m_nvars(nvars) {}
    LaurentPoly(unsigned nvars, const Cyclotomic &c);
    LaurentPoly(unsigned nvars, const Rational &q) : LaurentPoly(nvars, Cyclotomic(q)) {}

    static LaurentPoly monomial(const Cyclotomic &c, Exponent e);
    static LaurentPoly variable(unsigned nvars, unsigned i);

    // Canonical text form, see str().
    static LaurentPoly parse(std::string_view s, unsigned nvars);

    unsigned nvars() const
    {
        return m_nvars;
    }
    const term_map &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    bool is_constant() const;
    // Single term c*x^e with c != 0; these are exactly the units.
    bool is_monomial() const
    {
        return m_terms.size() == 1;
    }
    // Constant coefficient (zero if absent).
    Cyclotomic constant_term() const;
    Cyclotomic coeff(const Exponent &e) const;

    LaurentPoly inverse() const;

    // Same polynomial regarded in more variables (the new ones absent).
    LaurentPoly extend(unsigned nvars) const;

    LaurentPoly &operator+=(const LaurentPoly &);
    LaurentPoly &operator-=(const LaurentPoly &);
    LaurentPoly &operator*=(const LaurentPoly &);
    LaurentPoly &operator*=(const Cyclotomic &);
    LaurentPoly &operator*=(const Rational &);
    // Multiply by x^e.
    LaurentPoly shifted(const Exponent &e) const;

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b)
    {
        return a += b;
    }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b)
    {
        return a -= b;
    }
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
    LaurentPoly operator-() const;

    friend bool operator==(const LaurentPoly &, const LaurentPoly &);

    // Terms "c*x1^a1*...*xn^an" joined by " + ", "0" when empty.
    std::string str() const;

private:
    void add_term(const Exponent &e, const Cyclotomic &c);
    void harmonize(const LaurentPoly &o);

    unsigned m_nvars = 0;
    term_map m_terms;
};

std::ostream &operator<<(std::ostream &, const LaurentPoly &);

inline LaurentPoly zero_like(const LaurentPoly &p)
{
    return LaurentPoly(p.nvars());
}
inline LaurentPoly one_like(const LaurentPoly &p)
{
    return LaurentPoly(p.nvars(), Rational(1));
}
inline LaurentPoly scalar_like(const Rational &q, const LaurentPoly &p)
{
    return LaurentPoly(p.nvars(), q);
}
inline bool is_zero(const LaurentPoly &p)
{
    return p.is_zero();
}

} // namespace loopk

#endif
