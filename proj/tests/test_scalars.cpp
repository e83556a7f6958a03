#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <loopk/cyclotomic.hpp>
#include <loopk/laurent.hpp>
#include <loopk/series.hpp>

using namespace loopk;

namespace
{

std::mt19937_64 &rng()
{
    static std::mt19937_64 g(20240611);
    return g;
}

Rational rand_rational()
{
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    return Rational(num(rng()), den(rng()));
}

Cyclotomic rand_cyclo(unsigned m)
{
    std::vector<Rational> cs(euler_phi(m));
    for (auto &c : cs) {
        c = rand_rational();
    }
    return Cyclotomic(m, cs);
}

LaurentPoly rand_laurent(unsigned nvars, unsigned m)
{
    std::uniform_int_distribution<int> nterms(0, 4), ex(-2, 2);
    LaurentPoly p(nvars);
    const int k = nterms(rng());
    for (int i = 0; i < k; ++i) {
        Exponent e(nvars);
        for (auto &a : e) {
            a = ex(rng());
        }
        p += LaurentPoly::monomial(rand_cyclo(m), e);
    }
    return p;
}

template <typename B, typename Gen>
TruncSeries<B> rand_series(Gen gen, int prec, const B &proto)
{
    std::uniform_int_distribution<int> lowd(-3, 2);
    std::map<int, B> terms;
    for (int k = lowd(rng()); k < prec; ++k) {
        terms[k] = gen();
    }
    return TruncSeries<B>::from_terms(terms, prec, proto);
}

// Evaluate at zeta_m = exp(2 pi i / m).
std::complex<double> numeric(const Cyclotomic &c)
{
    const double pi = std::acos(-1.0);
    std::complex<double> z = std::polar(1.0, 2 * pi / c.order()), acc = 0, pw = 1;
    for (const auto &q : c.coeffs()) {
        acc += pw * q.get().get_d();
        pw *= z;
    }
    return acc;
}

template <typename T>
void check_ring_axioms(const T &a, const T &b, const T &c)
{
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == zero_like(a));
}

} // namespace

TEST_CASE("rational canonical form")
{
    CHECK(Rational(4, -6).str() == "-2/3");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-7").str() == "-7");
    CHECK_THROWS_AS(Rational::parse("1/0"), parse_error);
    CHECK_THROWS_AS(Rational::parse("abc"), parse_error);
    CHECK(factorial(5) == Rational(120));
}

TEST_CASE("cyclotomic_embed")
{
    const auto half = cyclotomic_embed(Rational(1, 2), 4);
    CHECK(half.order() == 4);
    CHECK(half.is_rational());
    CHECK(half.rational_part() == Rational(1, 2));
    CHECK(cyclotomic_embed(Rational(0), 3).is_zero());
    CHECK(root_power(4, 1) * root_power(4, 1) == Cyclotomic(-1));
    CHECK(root_power(4, 2) == Cyclotomic(-1));
    // ring homomorphism
    const Rational p(3, 7), q(-2, 5);
    CHECK(cyclotomic_embed(p * q, 5) == cyclotomic_embed(p, 5) * cyclotomic_embed(q, 5));
    CHECK(cyclotomic_embed(p + q, 5) == cyclotomic_embed(p, 5) + cyclotomic_embed(q, 5));
}

TEST_CASE("root_power")
{
    CHECK(root_power(2, 1) == Cyclotomic(-1));
    const auto z3 = root_power(3, 1);
    CHECK((Cyclotomic(1) + z3 + z3 * z3).is_zero());
    CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
    // zeta_6 = -zeta_3^2: exact check and numerical embedding
    const auto lhs = root_power(6, 1);
    const auto rhs = -(root_power(3, 2));
    CHECK(lhs == rhs);
    CHECK(std::abs(numeric(lhs) - numeric(rhs.embed(6))) < 1e-12);
    for (unsigned m : {1u, 3u, 5u, 8u, 12u}) {
        for (long k = -3; k <= 13; ++k) {
            CHECK((root_power(m, k) * root_power(m, static_cast<long>(m) - k)).is_one());
        }
    }
}

TEST_CASE("cyclotomic inverse and normalization")
{
    for (unsigned m : {3u, 5u, 7u, 12u}) {
        for (int i = 0; i < 10; ++i) {
            auto a = rand_cyclo(m);
            if (a.is_zero()) {
                continue;
            }
            CHECK((a * a.inverse()).is_one());
        }
    }
    // i^2 embedded in Q(zeta_8) prints as the rational -1
    CHECK((root_power(8, 2) * root_power(8, 2)).str() == "[1; -1]");
    CHECK(root_power(8, 2).str() == "[4; 0,1]");
    CHECK(root_power(4, 1) + root_power(3, 1) == root_power(12, 3) + root_power(12, 4));
}

TEST_CASE("ring axioms")
{
    for (int trial = 0; trial < 30; ++trial) {
        check_ring_axioms(rand_rational(), rand_rational(), rand_rational());
        check_ring_axioms(rand_cyclo(5), rand_cyclo(5), rand_cyclo(5));
        check_ring_axioms(rand_cyclo(12), rand_cyclo(12), rand_cyclo(12));
        check_ring_axioms(rand_laurent(2, 3), rand_laurent(2, 3), rand_laurent(2, 3));
        const LaurentPoly proto(1);
        auto lg = [] { return rand_laurent(1, 1); };
        check_ring_axioms(rand_series<LaurentPoly>(lg, 6, proto), rand_series<LaurentPoly>(lg, 6, proto),
                          rand_series<LaurentPoly>(lg, 6, proto));
        check_ring_axioms(rand_series<Rational>(rand_rational, 8, Rational{}),
                          rand_series<Rational>(rand_rational, 8, Rational{}),
                          rand_series<Rational>(rand_rational, 8, Rational{}));
        auto cg = [] { return rand_cyclo(3); };
        check_ring_axioms(rand_series<Cyclotomic>(cg, 5, Cyclotomic{}), rand_series<Cyclotomic>(cg, 5, Cyclotomic{}),
                          rand_series<Cyclotomic>(cg, 5, Cyclotomic{}));
    }
}

TEST_CASE("series valuation is multiplicative")
{
    for (int trial = 0; trial < 50; ++trial) {
        auto a = rand_series<Rational>(rand_rational, 10, Rational{});
        auto b = rand_series<Rational>(rand_rational, 10, Rational{});
        if (a.is_zero() || b.is_zero()) {
            continue;
        }
        const auto ab = a * b;
        CHECK(ab.precision() == std::min(a.precision() + b.valuation(), b.precision() + a.valuation()));
        if (!ab.is_zero()) {
            CHECK(ab.valuation() == a.valuation() + b.valuation());
        }
    }
}

TEST_CASE("series inverse")
{
    const auto s = TruncSeries<Rational>::from_terms({{-1, Rational(1)}, {0, Rational(2)}, {3, Rational(-1)}}, 8, {});
    const auto inv = s.inverse();
    CHECK(inv.valuation() == 1);
    const auto one = s * inv;
    CHECK(one == one_like(one));
    CHECK(one.precision() == 9);
}

TEST_CASE("series_split")
{
    using S = TruncSeries<Rational>;
    const S s = S::from_terms({{-1, Rational(1)}, {0, Rational(2)}, {1, Rational(3)}}, 8, {});
    auto [neg, pos] = series_split(s);
    CHECK(neg == S::from_terms({{-1, Rational(1)}, {0, Rational(2)}}, 8, {}));
    CHECK(pos == S::monomial(Rational(3), 1, 8));
    CHECK(neg + pos == s);
    CHECK(neg.precision() == 8);

    const S power = S::from_terms({{0, Rational(5)}, {2, Rational(1)}, {4, Rational(7)}}, 6, {});
    auto [c0, rest] = series_split(power);
    CHECK(c0 == S::monomial(Rational(5), 0, 6));
    CHECK(rest.valuation() == 2);

    auto [z1, z2] = series_split(S(8, Rational{}));
    CHECK(z1.is_zero());
    CHECK(z2.is_zero());
    CHECK(z1.precision() == 8);
}

TEST_CASE("precision propagation")
{
    using S = TruncSeries<Rational>;
    const S a = S::monomial(Rational(1), -2, 8);
    const S b = S::from_terms({{0, Rational(1)}, {5, Rational(1)}}, 8, {});
    const S ab = a * b;
    CHECK(ab.precision() == 6);
    CHECK(ab.valuation() == -2);
    const S zero(8, Rational{});
    CHECK((a * zero).precision() == 6);
    CHECK((a * zero).is_zero());
    // comparison only up to the common precision
    CHECK(S::from_terms({{0, Rational(1)}, {5, Rational(9)}}, 5, {}) == S::monomial(Rational(1), 0, 8));
    CHECK_THROWS_AS(b.truncated(3).coeff(4), precision_exhausted);
}

TEST_CASE("serialization")
{
    CHECK(Cyclotomic(4, {Rational(1, 2), Rational(0)}).str() == "[1; 1/2]");
    CHECK(Cyclotomic(4, {Rational(1), Rational(-1)}).str() == "[4; 1,-1]");
    LaurentPoly p = LaurentPoly::monomial(Cyclotomic(3), {1, -1}) + LaurentPoly::monomial(Cyclotomic(-1), {0, 2});
    CHECK(p.str() == "[1; -1]*x1^0*x2^2 + [1; 3]*x1^1*x2^-1");
    CHECK(LaurentPoly(2).str() == "0");
    using S = TruncSeries<Rational>;
    CHECK(S::from_terms({{-1, Rational(1)}, {1, Rational(1, 2)}}, 3, {}).str() == "(-1, 3, [1, 0, 1/2, 0])");
    CHECK(S(8, Rational{}).str() == "(8, 8, [])");

    // roundtrip property over random values of every type
    for (int trial = 0; trial < 40; ++trial) {
        const auto q = rand_rational();
        CHECK(Rational::parse(q.str()) == q);
        const auto c = rand_cyclo(12);
        CHECK(Cyclotomic::parse(c.str()) == c);
        CHECK(Cyclotomic::parse(c.str()).str() == c.str());
        const auto l = rand_laurent(2, 5);
        CHECK(LaurentPoly::parse(l.str(), 2) == l);
        CHECK(LaurentPoly::parse(l.str(), 2).str() == l.str());
        auto lg = [] { return rand_laurent(1, 4); };
        const auto s = rand_series<LaurentPoly>(lg, 5, LaurentPoly(1));
        const auto back = TruncSeries<LaurentPoly>::parse(s.str(), LaurentPoly(1));
        CHECK(back.str() == s.str());
    }
    CHECK_THROWS_AS(Cyclotomic::parse("[3; 1]"), parse_error);
    CHECK_THROWS_AS(TruncSeries<Rational>::parse("(0, 2, [1])", Rational{}), parse_error);
}
