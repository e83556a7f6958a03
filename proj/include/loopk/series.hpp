#ifndef LOOPK_SERIES_HPP
#define LOOPK_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <loopk/cyclotomic.hpp>
#include <loopk/errors.hpp>
#include <loopk/laurent.hpp>
#include <loopk/rational.hpp>

namespace loopk
{

namespace detail
{

inline std::string base_str(const Rational &q)
{
    return q.str();
}
inline std::string base_str(const Cyclotomic &c)
{
    return c.str();
}
inline std::string base_str(const LaurentPoly &p)
{
    return p.str();
}

inline Rational base_parse(std::string_view s, const Rational &)
{
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    return Rational::parse(s);
}
inline Cyclotomic base_parse(std::string_view s, const Cyclotomic &)
{
    return Cyclotomic::parse(s);
}
inline LaurentPoly base_parse(std::string_view s, const LaurentPoly &proto)
{
    return LaurentPoly::parse(s, proto.nvars());
}

inline Rational base_inverse(const Rational &q)
{
    return q.inverse();
}
inline Cyclotomic base_inverse(const Cyclotomic &c)
{
    return c.inverse();
}
inline LaurentPoly base_inverse(const LaurentPoly &p)
{
    return p.inverse();
}

} // namespace detail

// Truncated Laurent series sum_{k >= v} c_k t^k known modulo t^N.
//
// Stored as (v, N, [c_v, ..., c_{N-1}]) with c_v != 0; the zero-at-precision
// element has no coefficients and v = N. Arithmetic propagates the weakest
// precision: (a*b) is known modulo t^min(N_a + v_b, N_b + v_a).
template <typename Base>
class TruncSeries
{
public:
    // Zero known modulo t^N; the prototype fixes the base ring (e.g. the
    // number of Laurent variables).
    TruncSeries(int precision, Base proto) : m_low(precision), m_prec(precision), m_zero(zero_like(proto)) {}

    // c * t^k modulo t^N.
    static TruncSeries monomial(const Base &c, int k, int precision)
    {
        TruncSeries s(precision, c);
        if (k < precision && !is_zero_base(c)) {
            s.m_low = k;
            s.m_coeffs.assign(static_cast<std::size_t>(precision - k), s.m_zero);
            s.m_coeffs[0] = c;
        }
        return s;
    }

    // Coefficients given by degree; terms at degree >= N are dropped.
    static TruncSeries from_terms(const std::map<int, Base> &terms, int precision, const Base &proto)
    {
        TruncSeries s(precision, proto);
        for (const auto &[k, c] : terms) {
            s += monomial(c, k, precision);
        }
        return s;
    }

    // "(v, N, [c_v, ..., c_{N-1}])"
    static TruncSeries parse(std::string_view s, const Base &proto);

    int valuation() const
    {
        return m_low;
    }
    int precision() const
    {
        return m_prec;
    }
    bool is_zero() const
    {
        return m_coeffs.empty();
    }
    const Base &proto() const
    {
        return m_zero;
    }
    Base coeff(int k) const
    {
        if (k >= m_prec) {
            throw precision_exhausted("coefficient of t^" + std::to_string(k) + " beyond precision "
                                      + std::to_string(m_prec));
        }
        if (k < m_low || is_zero()) {
            return m_zero;
        }
        return m_coeffs[static_cast<std::size_t>(k - m_low)];
    }
    // Dense coefficient list for degrees valuation() .. precision()-1.
    const std::vector<Base> &coeffs() const
    {
        return m_coeffs;
    }

    // Lower the precision to min(N, precision()).
    TruncSeries truncated(int precision) const
    {
        TruncSeries r(*this);
        if (precision < r.m_prec) {
            r.m_prec = precision;
            if (r.m_low >= precision) {
                r.m_coeffs.clear();
                r.m_low = precision;
            } else {
                r.m_coeffs.resize(static_cast<std::size_t>(precision - r.m_low), m_zero);
                r.normalize();
            }
        }
        return r;
    }

    // Terms of degree <= 0 and terms of degree >= 1, both at this precision.
    std::pair<TruncSeries, TruncSeries> split() const
    {
        TruncSeries neg(m_prec, m_zero), pos(m_prec, m_zero);
        for (int k = m_low; k < m_prec && !is_zero(); ++k) {
            const Base &c = m_coeffs[static_cast<std::size_t>(k - m_low)];
            (k <= 0 ? neg : pos) += monomial(c, k, m_prec);
        }
        return {std::move(neg), std::move(pos)};
    }

    // Terms of degree < d (as a series at this precision) and the rest.
    std::pair<TruncSeries, TruncSeries> split_at(int d) const
    {
        TruncSeries low(m_prec, m_zero), high(m_prec, m_zero);
        for (int k = m_low; k < m_prec && !is_zero(); ++k) {
            const Base &c = m_coeffs[static_cast<std::size_t>(k - m_low)];
            (k < d ? low : high) += monomial(c, k, m_prec);
        }
        return {std::move(low), std::move(high)};
    }

    TruncSeries &operator+=(const TruncSeries &o)
    {
        const int prec = std::min(m_prec, o.m_prec);
        const int low = std::min(m_low, o.m_low);
        std::vector<Base> cs;
        if (low < prec) {
            cs.assign(static_cast<std::size_t>(prec - low), m_zero);
            for (int k = m_low; k < prec && !is_zero(); ++k) {
                cs[static_cast<std::size_t>(k - low)] += m_coeffs[static_cast<std::size_t>(k - m_low)];
            }
            for (int k = o.m_low; k < prec && !o.is_zero(); ++k) {
                cs[static_cast<std::size_t>(k - low)] += o.m_coeffs[static_cast<std::size_t>(k - o.m_low)];
            }
        }
        m_prec = prec;
        m_low = low;
        m_coeffs = std::move(cs);
        normalize();
        return *this;
    }
    TruncSeries &operator-=(const TruncSeries &o)
    {
        return *this += -o;
    }
    TruncSeries &operator*=(const TruncSeries &o)
    {
        *this = *this * o;
        return *this;
    }
    TruncSeries &operator*=(const Rational &q)
    {
        if (q.is_zero()) {
            m_coeffs.clear();
            m_low = m_prec;
            return *this;
        }
        for (auto &c : m_coeffs) {
            c *= q;
        }
        return *this;
    }
    // Multiply every coefficient by a base-ring element.
    TruncSeries &scale_base(const Base &b)
    {
        for (auto &c : m_coeffs) {
            c = c * b;
        }
        normalize();
        return *this;
    }

    friend TruncSeries operator+(TruncSeries a, const TruncSeries &b)
    {
        return a += b;
    }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries &b)
    {
        return a -= b;
    }
    friend TruncSeries operator*(const TruncSeries &a, const TruncSeries &b)
    {
        const int prec = std::min(a.m_prec + b.m_low, b.m_prec + a.m_low);
        const int low = a.m_low + b.m_low;
        TruncSeries r(prec, a.m_zero);
        if (a.is_zero() || b.is_zero() || low >= prec) {
            return r;
        }
        std::vector<Base> cs(static_cast<std::size_t>(prec - low), a.m_zero);
        const std::size_t n = cs.size();
        for (std::size_t i = 0; i < a.m_coeffs.size() && i < n; ++i) {
            if (is_zero_base(a.m_coeffs[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.m_coeffs.size() && i + j < n; ++j) {
                cs[i + j] += a.m_coeffs[i] * b.m_coeffs[j];
            }
        }
        r.m_low = low;
        r.m_coeffs = std::move(cs);
        r.normalize();
        return r;
    }
    TruncSeries operator-() const
    {
        TruncSeries r(*this);
        for (auto &c : r.m_coeffs) {
            c = -c;
        }
        return r;
    }

    // Multiplicative inverse; requires an invertible leading coefficient.
    TruncSeries inverse() const
    {
        if (is_zero()) {
            throw math_error("TruncSeries::inverse of zero-at-precision");
        }
        // a = t^v u, u known mod t^(N-v); 1/a = t^-v u^-1, known mod t^(N-2v).
        const int v = m_low;
        const int len = m_prec - v;
        const Base lead_inv = detail::base_inverse(m_coeffs[0]);
        std::vector<Base> inv(static_cast<std::size_t>(len), m_zero);
        inv[0] = lead_inv;
        for (int k = 1; k < len; ++k) {
            Base acc = m_zero;
            for (int j = 1; j <= k; ++j) {
                acc += m_coeffs[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
            }
            inv[static_cast<std::size_t>(k)] = -(acc * lead_inv);
        }
        TruncSeries r(m_prec - 2 * v, m_zero);
        r.m_low = -v;
        r.m_coeffs = std::move(inv);
        r.normalize();
        return r;
    }

    // Equality up to the common precision.
    friend bool operator==(const TruncSeries &a, const TruncSeries &b)
    {
        return (a - b).is_zero();
    }

    std::string str() const
    {
        std::ostringstream os;
        os << '(' << m_low << ", " << m_prec << ", [";
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            os << (i ? ", " : "") << detail::base_str(m_coeffs[i]);
        }
        os << "])";
        return os.str();
    }

private:
    static bool is_zero_base(const Base &b)
    {
        using loopk::is_zero;
        return is_zero(b);
    }

    void normalize()
    {
        std::size_t lead = 0;
        while (lead < m_coeffs.size() && is_zero_base(m_coeffs[lead])) {
            ++lead;
        }
        if (lead == m_coeffs.size()) {
            m_coeffs.clear();
            m_low = m_prec;
            return;
        }
        if (lead > 0) {
            m_coeffs.erase(m_coeffs.begin(), m_coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
            m_low += static_cast<int>(lead);
        }
    }

    int m_low;
    int m_prec;
    std::vector<Base> m_coeffs;
    Base m_zero;
};

template <typename Base>
TruncSeries<Base> TruncSeries<Base>::parse(std::string_view s, const Base &proto)
{
    auto fail = [&](const std::string &why) { return parse_error(why + " in series '" + std::string(s) + "'"); };
    std::string_view t = s;
    while (!t.empty() && t.front() == ' ') {
        t.remove_prefix(1);
    }
    while (!t.empty() && t.back() == ' ') {
        t.remove_suffix(1);
    }
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
        throw fail("expected parentheses");
    }
    t = t.substr(1, t.size() - 2);
    const auto c1 = t.find(',');
    if (c1 == std::string_view::npos) {
        throw fail("missing fields");
    }
    const auto c2 = t.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
        throw fail("missing fields");
    }
    const Rational low_q = detail::base_parse(t.substr(0, c1), Rational{});
    const Rational prec_q = detail::base_parse(t.substr(c1 + 1, c2 - c1 - 1), Rational{});
    if (!low_q.is_integer() || !prec_q.is_integer()) {
        throw fail("non-integer degree");
    }
    const int low = static_cast<int>(low_q.to_int());
    const int prec = static_cast<int>(prec_q.to_int());
    std::string_view list = t.substr(c2 + 1);
    while (!list.empty() && list.front() == ' ') {
        list.remove_prefix(1);
    }
    if (list.size() < 2 || list.front() != '[' || list.back() != ']') {
        throw fail("expected coefficient list");
    }
    list = list.substr(1, list.size() - 2);
    std::vector<std::string_view> items;
    int depth = 0;
    std::size_t start = 0;
    bool any = false;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i] == '[') {
            ++depth;
        } else if (list[i] == ']') {
            --depth;
        } else if (list[i] == ',' && depth == 0) {
            items.push_back(list.substr(start, i - start));
            start = i + 1;
        } else if (list[i] != ' ') {
            any = true;
        }
    }
    if (any) {
        items.push_back(list.substr(start));
    }
    if (low > prec || (low < prec && items.size() != static_cast<std::size_t>(prec - low))) {
        throw fail("coefficient count does not match degrees");
    }
    TruncSeries r(prec, proto);
    for (std::size_t i = 0; i < items.size(); ++i) {
        r += monomial(detail::base_parse(items[i], proto), low + static_cast<int>(i), prec);
    }
    return r;
}

template <typename Base>
std::ostream &operator<<(std::ostream &os, const TruncSeries<Base> &s)
{
    return os << s.str();
}

template <typename Base>
TruncSeries<Base> zero_like(const TruncSeries<Base> &s)
{
    return TruncSeries<Base>(s.precision(), s.proto());
}
template <typename Base>
TruncSeries<Base> one_like(const TruncSeries<Base> &s)
{
    return TruncSeries<Base>::monomial(one_like(s.proto()), 0, s.precision());
}
template <typename Base>
TruncSeries<Base> scalar_like(const Rational &q, const TruncSeries<Base> &s)
{
    return TruncSeries<Base>::monomial(scalar_like(q, s.proto()), 0, s.precision());
}
template <typename Base>
bool is_zero(const TruncSeries<Base> &s)
{
    return s.is_zero();
}

// Non-positive and positive t-degree parts.
template <typename Base>
std::pair<TruncSeries<Base>, TruncSeries<Base>> series_split(const TruncSeries<Base> &s)
{
    return s.split();
}

} // namespace loopk

#endif
