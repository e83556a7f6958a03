#include <loopk/cyclotomic.hpp>
#include <loopk/errors.hpp>

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace loopk
{

namespace
{

using poly = std::vector<Rational>;

void trim(poly &p)
{
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

// Exact division of integer polynomials, divisor monic.
std::vector<long> divide_monic(std::vector<long> a, const std::vector<long> &b)
{
    const std::size_t db = b.size() - 1;
    std::vector<long> q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const long c = a[i];
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) {
            a[i - db + j] -= c * b[j];
        }
    }
    return q;
}

// Remainder of p modulo the monic integer polynomial f.
void reduce_mod(poly &p, const std::vector<long> &f)
{
    const std::size_t d = f.size() - 1;
    for (std::size_t i = p.size(); i-- > d;) {
        if (p[i].is_zero()) {
            continue;
        }
        const Rational c = p[i];
        for (std::size_t j = 0; j <= d; ++j) {
            if (f[j] != 0) {
                p[i - d + j] -= c * Rational(f[j]);
            }
        }
    }
    p.resize(d);
}

std::pair<poly, poly> poly_divmod(poly a, const poly &b)
{
    poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    const Rational lead_inv = b.back().inverse();
    for (std::size_t i = a.size(); i >= b.size(); --i) {
        if (a[i - 1].is_zero()) {
            continue;
        }
        const Rational c = a[i - 1] * lead_inv;
        q[i - b.size()] = c;
        for (std::size_t j = 0; j < b.size(); ++j) {
            a[i - b.size() + j] -= c * b[j];
        }
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {std::move(q), std::move(a)};
}

poly poly_mul(const poly &a, const poly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

poly poly_sub(poly a, const poly &b)
{
    if (a.size() < b.size()) {
        a.resize(b.size());
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] -= b[i];
    }
    trim(a);
    return a;
}

unsigned lcm_order(unsigned a, unsigned b)
{
    return std::lcm(a, b);
}

} // namespace

const std::vector<long> &cyclotomic_polynomial(unsigned m)
{
    if (m == 0) {
        throw invalid_input("cyclotomic order must be positive");
    }
    static std::mutex mtx;
    static std::map<unsigned, std::vector<long>> cache;
    std::lock_guard lock(mtx);
    if (auto it = cache.find(m); it != cache.end()) {
        return it->second;
    }
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<long> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0) {
            continue;
        }
        auto it = cache.find(d);
        if (it == cache.end()) {
            // Compute without re-locking: recursion over divisors bottom-up.
            std::vector<long> nd(d + 1, 0);
            nd[0] = -1;
            nd[d] = 1;
            for (unsigned e = 1; e < d; ++e) {
                if (d % e == 0) {
                    nd = divide_monic(nd, cache.at(e));
                }
            }
            it = cache.emplace(d, std::move(nd)).first;
        }
        num = divide_monic(num, it->second);
    }
    return cache.emplace(m, std::move(num)).first->second;
}

unsigned euler_phi(unsigned m)
{
    unsigned r = m;
    unsigned n = m;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            r -= r / p;
        }
    }
    if (n > 1) {
        r -= r / n;
    }
    return r;
}

Cyclotomic::Cyclotomic(const Rational &r, unsigned m) : m_order(m), m_coeffs(euler_phi(m))
{
    if (m == 0) {
        throw invalid_input("cyclotomic order must be positive");
    }
    m_coeffs[0] = r;
}

Cyclotomic::Cyclotomic(unsigned m, std::vector<Rational> coeffs) : m_order(m), m_coeffs(std::move(coeffs))
{
    if (m == 0) {
        throw invalid_input("cyclotomic order must be positive");
    }
    const unsigned phi = euler_phi(m);
    if (m_coeffs.size() > phi) {
        reduce_mod(m_coeffs, cyclotomic_polynomial(m));
    }
    m_coeffs.resize(phi);
}

bool Cyclotomic::is_zero() const
{
    for (const auto &c : m_coeffs) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

bool Cyclotomic::is_rational() const
{
    for (std::size_t i = 1; i < m_coeffs.size(); ++i) {
        if (!m_coeffs[i].is_zero()) {
            return false;
        }
    }
    return true;
}

bool Cyclotomic::is_one() const
{
    return is_rational() && m_coeffs[0].is_one();
}

Cyclotomic Cyclotomic::embed(unsigned m) const
{
    if (m % m_order != 0) {
        throw invalid_input("cannot embed Q(zeta_" + std::to_string(m_order) + ") into Q(zeta_" + std::to_string(m) + ")");
    }
    if (m == m_order) {
        return *this;
    }
    const unsigned step = m / m_order;
    poly p((m_coeffs.size() - 1) * step + 1);
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        p[i * step] = m_coeffs[i];
    }
    return Cyclotomic(m, std::move(p));
}

Cyclotomic Cyclotomic::normalized() const
{
    if (is_rational()) {
        return Cyclotomic(m_coeffs[0], 1);
    }
    for (unsigned d = 1; d < m_order; ++d) {
        if (m_order % d != 0 || euler_phi(d) >= m_coeffs.size()) {
            continue;
        }
        // Candidate: an element of Q(zeta_d) embeds as a polynomial in zeta_m^(m/d).
        // Solve by trying to read off coefficients from a generic embedding
        // and checking equality.
        const unsigned phi_d = euler_phi(d);
        // Build the embedded basis zeta_d^j, j < phi_d, and solve the
        // triangular-free system by brute force Gaussian elimination.
        std::vector<Cyclotomic> basis;
        for (unsigned j = 0; j < phi_d; ++j) {
            basis.push_back(root_power(d, j).embed(m_order));
        }
        // Solve sum x_j basis_j = *this over Q (phi_m equations, phi_d unknowns).
        const std::size_t rows = m_coeffs.size();
        std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(phi_d + 1));
        for (std::size_t r = 0; r < rows; ++r) {
            for (unsigned j = 0; j < phi_d; ++j) {
                aug[r][j] = basis[j].m_coeffs[r];
            }
            aug[r][phi_d] = m_coeffs[r];
        }
        std::size_t prow = 0;
        std::vector<int> pivcol;
        for (unsigned c = 0; c < phi_d && prow < rows; ++c) {
            std::size_t p = prow;
            while (p < rows && aug[p][c].is_zero()) {
                ++p;
            }
            if (p == rows) {
                continue;
            }
            std::swap(aug[p], aug[prow]);
            const Rational inv = aug[prow][c].inverse();
            for (auto &x : aug[prow]) {
                x *= inv;
            }
            for (std::size_t r = 0; r < rows; ++r) {
                if (r != prow && !aug[r][c].is_zero()) {
                    const Rational f = aug[r][c];
                    for (unsigned k = 0; k <= phi_d; ++k) {
                        aug[r][k] -= f * aug[prow][k];
                    }
                }
            }
            pivcol.push_back(static_cast<int>(c));
            ++prow;
        }
        bool consistent = true;
        for (std::size_t r = prow; r < rows; ++r) {
            if (!aug[r][phi_d].is_zero()) {
                consistent = false;
                break;
            }
        }
        if (!consistent) {
            continue;
        }
        std::vector<Rational> sol(phi_d);
        for (std::size_t r = 0; r < prow; ++r) {
            sol[static_cast<std::size_t>(pivcol[r])] = aug[r][phi_d];
        }
        return Cyclotomic(d, std::move(sol));
    }
    return *this;
}

Cyclotomic Cyclotomic::inverse() const
{
    if (is_zero()) {
        throw math_error("division by zero in Q(zeta_" + std::to_string(m_order) + ")");
    }
    if (m_coeffs.size() == 1) {
        return Cyclotomic(m_coeffs[0].inverse(), m_order);
    }
    // Extended Euclid: find s with s * a = 1 mod Phi_m.
    const auto &f = cyclotomic_polynomial(m_order);
    poly r0(f.begin(), f.end());
    poly r1 = m_coeffs;
    trim(r1);
    poly s0{}, s1{Rational(1)};
    while (!(r1.size() == 1)) {
        auto [q, r] = poly_divmod(r0, r1);
        poly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (r1.empty()) {
            throw math_error("non-invertible cyclotomic element");
        }
    }
    const Rational c = r1[0].inverse();
    for (auto &x : s1) {
        x *= c;
    }
    return Cyclotomic(m_order, std::move(s1));
}

Cyclotomic &Cyclotomic::operator+=(const Cyclotomic &o)
{
    if (o.m_order != m_order) {
        const unsigned l = lcm_order(m_order, o.m_order);
        *this = embed(l);
        return *this += o.embed(l);
    }
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        m_coeffs[i] += o.m_coeffs[i];
    }
    return *this;
}

Cyclotomic &Cyclotomic::operator-=(const Cyclotomic &o)
{
    if (o.m_order != m_order) {
        const unsigned l = lcm_order(m_order, o.m_order);
        *this = embed(l);
        return *this -= o.embed(l);
    }
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        m_coeffs[i] -= o.m_coeffs[i];
    }
    return *this;
}

Cyclotomic &Cyclotomic::operator*=(const Cyclotomic &o)
{
    if (o.m_order != m_order) {
        const unsigned l = lcm_order(m_order, o.m_order);
        *this = embed(l);
        return *this *= o.embed(l);
    }
    if (m_coeffs.size() == 1) {
        m_coeffs[0] *= o.m_coeffs[0];
        return *this;
    }
    poly p = poly_mul(m_coeffs, o.m_coeffs);
    reduce_mod(p, cyclotomic_polynomial(m_order));
    m_coeffs = std::move(p);
    return *this;
}

Cyclotomic &Cyclotomic::operator*=(const Rational &q)
{
    for (auto &c : m_coeffs) {
        c *= q;
    }
    return *this;
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic r(*this);
    for (auto &c : r.m_coeffs) {
        c = -c;
    }
    return r;
}

bool operator==(const Cyclotomic &a, const Cyclotomic &b)
{
    if (a.m_order == b.m_order) {
        return a.m_coeffs == b.m_coeffs;
    }
    const unsigned l = lcm_order(a.m_order, b.m_order);
    return a.embed(l).m_coeffs == b.embed(l).m_coeffs;
}

std::string Cyclotomic::str() const
{
    const Cyclotomic n = normalized();
    std::ostringstream os;
    os << '[' << n.m_order << ';';
    for (std::size_t i = 0; i < n.m_coeffs.size(); ++i) {
        os << (i == 0 ? " " : ",") << n.m_coeffs[i];
    }
    os << ']';
    return os.str();
}

Cyclotomic Cyclotomic::parse(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    if (s.empty()) {
        throw parse_error("empty cyclotomic");
    }
    if (s.front() != '[') {
        return Cyclotomic(Rational::parse(s), 1);
    }
    if (s.back() != ']') {
        throw parse_error("unterminated cyclotomic '" + std::string(s) + "'");
    }
    s = s.substr(1, s.size() - 2);
    const auto semi = s.find(';');
    if (semi == std::string_view::npos) {
        throw parse_error("missing ';' in cyclotomic");
    }
    const Rational mq = Rational::parse(s.substr(0, semi));
    if (!mq.is_integer() || mq.sign() <= 0) {
        throw parse_error("cyclotomic order must be a positive integer");
    }
    const auto m = static_cast<unsigned>(mq.to_int());
    std::vector<Rational> cs;
    std::string_view rest = s.substr(semi + 1);
    while (true) {
        const auto comma = rest.find(',');
        std::string_view tok = rest.substr(0, comma);
        while (!tok.empty() && tok.front() == ' ') {
            tok.remove_prefix(1);
        }
        while (!tok.empty() && tok.back() == ' ') {
            tok.remove_suffix(1);
        }
        cs.push_back(Rational::parse(tok));
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    if (cs.size() != euler_phi(m)) {
        throw parse_error("cyclotomic of order " + std::to_string(m) + " needs " + std::to_string(euler_phi(m))
                          + " coefficients");
    }
    return Cyclotomic(m, std::move(cs));
}

std::ostream &operator<<(std::ostream &os, const Cyclotomic &c)
{
    return os << c.str();
}

Cyclotomic cyclotomic_embed(const Rational &r, unsigned m)
{
    if (m == 0) {
        throw invalid_input("cyclotomic order must be positive");
    }
    return Cyclotomic(r, m);
}

Cyclotomic root_power(unsigned m, long k)
{
    if (m == 0) {
        throw invalid_input("cyclotomic order must be positive");
    }
    long e = k % static_cast<long>(m);
    if (e < 0) {
        e += m;
    }
    std::vector<Rational> p(static_cast<std::size_t>(e) + 1);
    p[static_cast<std::size_t>(e)] = Rational(1);
    return Cyclotomic(m, std::move(p));
}

} // namespace loopk
