#include <loopk/errors.hpp>
#include <loopk/laurent.hpp>

#include <sstream>

namespace loopk
{

namespace
{

std::string_view strip(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

LaurentPoly::LaurentPoly(unsigned nvars, const Cyclotomic &c) : m_nvars(nvars)
{
    if (!c.is_zero()) {
        m_terms.emplace(Exponent(nvars, 0), c);
    }
}

LaurentPoly LaurentPoly::monomial(const Cyclotomic &c, Exponent e)
{
    LaurentPoly p(static_cast<unsigned>(e.size()));
    if (!c.is_zero()) {
        p.m_terms.emplace(std::move(e), c);
    }
    return p;
}

LaurentPoly LaurentPoly::variable(unsigned nvars, unsigned i)
{
    if (i >= nvars) {
        throw invalid_input("variable index out of range");
    }
    Exponent e(nvars, 0);
    e[i] = 1;
    return monomial(Cyclotomic(1), std::move(e));
}

bool LaurentPoly::is_constant() const
{
    if (m_terms.empty()) {
        return true;
    }
    if (m_terms.size() != 1) {
        return false;
    }
    for (int a : m_terms.begin()->first) {
        if (a != 0) {
            return false;
        }
    }
    return true;
}

Cyclotomic LaurentPoly::constant_term() const
{
    return coeff(Exponent(m_nvars, 0));
}

Cyclotomic LaurentPoly::coeff(const Exponent &e) const
{
    if (auto it = m_terms.find(e); it != m_terms.end()) {
        return it->second;
    }
    return Cyclotomic();
}

LaurentPoly LaurentPoly::inverse() const
{
    if (!is_monomial()) {
        throw math_error("LaurentPoly::inverse: " + str() + " is not a unit");
    }
    Exponent e = m_terms.begin()->first;
    for (auto &a : e) {
        a = -a;
    }
    return monomial(m_terms.begin()->second.inverse(), std::move(e));
}

LaurentPoly LaurentPoly::extend(unsigned nvars) const
{
    if (nvars < m_nvars) {
        throw invalid_input("LaurentPoly::extend: cannot drop variables");
    }
    LaurentPoly r(nvars);
    for (const auto &[e, c] : m_terms) {
        Exponent f = e;
        f.resize(nvars, 0);
        r.m_terms.emplace(std::move(f), c);
    }
    return r;
}

void LaurentPoly::harmonize(const LaurentPoly &o)
{
    if (o.m_nvars == m_nvars) {
        return;
    }
    if (m_nvars == 0 || (is_zero() && m_nvars < o.m_nvars)) {
        *this = extend(o.m_nvars);
        return;
    }
    if (o.m_nvars == 0) {
        return;
    }
    throw invalid_input("LaurentPoly: mismatched variable counts " + std::to_string(m_nvars) + " and "
                        + std::to_string(o.m_nvars));
}

void LaurentPoly::add_term(const Exponent &e, const Cyclotomic &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = m_terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            m_terms.erase(it);
        }
    }
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o)
{
    harmonize(o);
    if (o.m_nvars == m_nvars) {
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, c);
        }
    } else {
        *this += o.extend(m_nvars);
    }
    return *this;
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &o)
{
    return *this += -o;
}

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
{
    if (a.m_nvars != b.m_nvars) {
        if (a.m_nvars == 0 || (a.is_zero() && a.m_nvars < b.m_nvars)) {
            return a.extend(b.m_nvars) * b;
        }
        if (b.m_nvars == 0 || (b.is_zero() && b.m_nvars < a.m_nvars)) {
            return a * b.extend(a.m_nvars);
        }
        throw invalid_input("LaurentPoly: mismatched variable counts");
    }
    LaurentPoly r(a.m_nvars);
    Exponent e(a.m_nvars);
    for (const auto &[ea, ca] : a.m_terms) {
        for (const auto &[eb, cb] : b.m_terms) {
            for (unsigned i = 0; i < a.m_nvars; ++i) {
                e[i] = ea[i] + eb[i];
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

LaurentPoly &LaurentPoly::operator*=(const LaurentPoly &o)
{
    *this = *this * o;
    return *this;
}

LaurentPoly &LaurentPoly::operator*=(const Cyclotomic &c)
{
    if (c.is_zero()) {
        m_terms.clear();
        return *this;
    }
    for (auto &[e, v] : m_terms) {
        v *= c;
    }
    return *this;
}

LaurentPoly &LaurentPoly::operator*=(const Rational &q)
{
    if (q.is_zero()) {
        m_terms.clear();
        return *this;
    }
    for (auto &[e, v] : m_terms) {
        v *= q;
    }
    return *this;
}

LaurentPoly LaurentPoly::shifted(const Exponent &s) const
{
    if (s.size() != m_nvars) {
        throw invalid_input("LaurentPoly::shifted: exponent length mismatch");
    }
    LaurentPoly r(m_nvars);
    for (const auto &[e, c] : m_terms) {
        Exponent f = e;
        for (unsigned i = 0; i < m_nvars; ++i) {
            f[i] += s[i];
        }
        r.m_terms.emplace_hint(r.m_terms.end(), std::move(f), c);
    }
    return r;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly r(*this);
    for (auto &[e, c] : r.m_terms) {
        c = -c;
    }
    return r;
}

bool operator==(const LaurentPoly &a, const LaurentPoly &b)
{
    if (a.m_nvars != b.m_nvars) {
        if (a.is_zero() && b.is_zero()) {
            return true;
        }
        if (a.m_nvars == 0) {
            return a.extend(b.m_nvars) == b;
        }
        if (b.m_nvars == 0) {
            return a == b.extend(a.m_nvars);
        }
        return false;
    }
    return a.m_terms == b.m_terms;
}

std::string LaurentPoly::str() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : m_terms) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << c.str();
        for (unsigned i = 0; i < m_nvars; ++i) {
            os << "*x" << (i + 1) << '^' << e[i];
        }
    }
    return os.str();
}

LaurentPoly LaurentPoly::parse(std::string_view s, unsigned nvars)
{
    s = strip(s);
    LaurentPoly r(nvars);
    if (s == "0") {
        return r;
    }
    if (s.empty()) {
        throw parse_error("empty Laurent polynomial");
    }
    // Split on top-level '+'.
    std::vector<std::string_view> terms;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '[') {
            ++depth;
        } else if (s[i] == ']') {
            --depth;
        } else if (s[i] == '+' && depth == 0 && i > 0 && s[i - 1] != '^') {
            terms.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    terms.push_back(s.substr(start));
    for (auto t : terms) {
        t = strip(t);
        const auto star = t.find("*x");
        const std::string_view cpart = star == std::string_view::npos ? t : t.substr(0, star);
        Cyclotomic c = Cyclotomic::parse(cpart);
        Exponent e(nvars, 0);
        std::string_view rest = star == std::string_view::npos ? std::string_view{} : t.substr(star + 1);
        while (!rest.empty()) {
            if (rest.front() != 'x') {
                throw parse_error("expected variable in term '" + std::string(t) + "'");
            }
            rest.remove_prefix(1);
            const auto next = rest.find('*');
            std::string_view var = rest.substr(0, next);
            rest = next == std::string_view::npos ? std::string_view{} : rest.substr(next + 1);
            const auto caret = var.find('^');
            const auto idx = Rational::parse(var.substr(0, caret));
            if (!idx.is_integer() || idx.sign() <= 0 || idx.to_int() > static_cast<long>(nvars)) {
                throw parse_error("variable index out of range in '" + std::string(t) + "'");
            }
            int ex = 1;
            if (caret != std::string_view::npos) {
                const auto q = Rational::parse(var.substr(caret + 1));
                if (!q.is_integer()) {
                    throw parse_error("non-integral exponent in '" + std::string(t) + "'");
                }
                ex = static_cast<int>(q.to_int());
            }
            e[static_cast<std::size_t>(idx.to_int() - 1)] += ex;
        }
        r.add_term(e, c);
    }
    return r;
}

std::ostream &operator<<(std::ostream &os, const LaurentPoly &p)
{
    return os << p.str();
}

} // namespace loopk
