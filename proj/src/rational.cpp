#include <loopk/errors.hpp>
#include <loopk/rational.hpp>

#include <limits>

namespace loopk
{

Rational::Rational(long num, long den)
{
    if (den == 0) {
        throw invalid_input("Rational: zero denominator");
    }
    m_q = mpq_class(num, den);
    m_q.canonicalize();
}

Rational Rational::parse(std::string_view s)
{
    std::string str(s);
    if (str.empty()) {
        throw parse_error("empty rational");
    }
    for (std::size_t i = 0; i < str.size(); ++i) {
        const char c = str[i];
        const bool ok = (c >= '0' && c <= '9') || c == '/' || ((c == '-' || c == '+') && (i == 0 || str[i - 1] == '/'));
        if (!ok) {
            throw parse_error("invalid rational '" + str + "'");
        }
    }
    if (str[0] == '+') {
        str.erase(0, 1);
    }
    mpq_class q;
    if (q.set_str(str, 10) != 0) {
        throw parse_error("invalid rational '" + str + "'");
    }
    if (q.get_den() == 0) {
        throw parse_error("zero denominator in '" + str + "'");
    }
    return Rational(std::move(q));
}

std::int64_t Rational::to_int() const
{
    if (!is_integer() || !m_q.get_num().fits_slong_p()) {
        throw math_error("Rational::to_int: " + str() + " is not a machine integer");
    }
    return m_q.get_num().get_si();
}

Rational Rational::inverse() const
{
    if (is_zero()) {
        throw math_error("division by zero");
    }
    return Rational(mpq_class(1 / m_q));
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero()) {
        throw math_error("division by zero");
    }
    m_q /= o.m_q;
    return *this;
}

std::ostream &operator<<(std::ostream &os, const Rational &q)
{
    return os << q.str();
}

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
}

} // namespace loopk
