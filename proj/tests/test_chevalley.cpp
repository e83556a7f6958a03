#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>
#include <set>

#include <loopk/chevalley.hpp>

using namespace loopk;

namespace
{

using Mat3 = std::array<std::array<long, 3>, 3>;

Mat3 unit(int i, int j)
{
    Mat3 m{};
    m[i][j] = 1;
    return m;
}

Mat3 comm(const Mat3 &a, const Mat3 &b)
{
    Mat3 r{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                r[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
        }
    }
    return r;
}

Mat3 lin(const std::vector<long> &coef, const std::vector<Mat3> &img)
{
    Mat3 r{};
    for (std::size_t t = 0; t < coef.size(); ++t) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                r[i][j] += coef[t] * img[t][i][j];
            }
        }
    }
    return r;
}

std::vector<Rational> rvec(const ChevalleyAlgebra &alg, unsigned i, long c = 1)
{
    return basis_vector(alg, i, Rational(c));
}

} // namespace

TEST_CASE("sl2 relations")
{
    const auto alg = build_chevalley(build_root_system("A1"));
    REQUIRE(alg.dim() == 3);
    // basis (e, h, f)
    CHECK(alg.basis_label(0) == "e(1)");
    CHECK(alg.basis_label(1) == "h1");
    CHECK(alg.basis_label(2) == "e(-1)");
    CHECK(bracket(alg, rvec(alg, 0), rvec(alg, 2)) == rvec(alg, 1));
    CHECK(bracket(alg, rvec(alg, 1), rvec(alg, 0)) == rvec(alg, 0, 2));
    CHECK(bracket(alg, rvec(alg, 1), rvec(alg, 2)) == rvec(alg, 2, -2));
}

TEST_CASE("A2 agrees with the trace-zero 3x3 matrices")
{
    const auto alg = build_chevalley(build_root_system("A2"));
    // images of e_a1, e_a2 and f_a1, f_a2; the rest follows from brackets
    const unsigned e1 = alg.root_index({1, 0}), e2 = alg.root_index({0, 1}), e12 = alg.root_index({1, 1});
    const unsigned f1 = alg.root_index({-1, 0}), f2 = alg.root_index({0, -1}), f12 = alg.root_index({-1, -1});
    std::vector<Mat3> img(8);
    img[e1] = unit(0, 1);
    img[e2] = unit(1, 2);
    img[f1] = unit(1, 0);
    img[f2] = unit(2, 1);
    img[alg.cartan_index(0)] = comm(img[e1], img[f1]);
    img[alg.cartan_index(1)] = comm(img[e2], img[f2]);
    const long n = alg.structure_constant({1, 0}, {0, 1});
    const long nn = alg.structure_constant({-1, 0}, {0, -1});
    CHECK(std::abs(n) == 1);
    CHECK(std::abs(nn) == 1);
    img[e12] = lin({n}, {comm(img[e1], img[e2])});
    img[f12] = lin({nn}, {comm(img[f1], img[f2])});
    for (unsigned i = 0; i < 8; ++i) {
        for (unsigned j = 0; j < 8; ++j) {
            std::vector<long> coef(8, 0);
            for (const auto &t : alg.bracket(i, j)) {
                coef[t.index] = t.coeff;
            }
            CHECK(lin(coef, img) == comm(img[i], img[j]));
        }
    }
    const auto &rs = alg.root_system();
    for (const auto &a : rs.roots()) {
        for (const auto &b : rs.roots()) {
            if (rs.contains(a + b)) {
                CHECK(std::abs(alg.structure_constant(a, b)) == 1);
            }
        }
    }
}

TEST_CASE("Jacobi and |N| = p + 1")
{
    for (const char *label : {"A1", "A2", "B2", "G2", "A3", "B3", "C3", "D4", "F4"}) {
        INFO(label);
        const auto alg = build_chevalley(build_root_system(label));
        const auto &rs = alg.root_system();
        CHECK(alg.dim() == rs.roots().size() + rs.rank());
        CHECK(alg.jacobi_holds());
        std::set<long> mags;
        for (const auto &a : rs.roots()) {
            for (const auto &b : rs.roots()) {
                if (!rs.contains(a + b)) {
                    continue;
                }
                int p = 0;
                for (Root d = b + (-a); rs.contains(d); d = d + (-a)) {
                    ++p;
                }
                CHECK(std::abs(alg.structure_constant(a, b)) == p + 1);
                CHECK(alg.structure_constant(a, b) == -alg.structure_constant(b, a));
                CHECK(alg.structure_constant(-a, -b) == -alg.structure_constant(a, b));
                mags.insert(std::abs(alg.structure_constant(a, b)));
            }
        }
        if (std::string(label) == "G2") {
            CHECK(mags == std::set<long>{1, 2, 3});
        }
    }
}

TEST_CASE("ad_matrix")
{
    const auto alg = build_chevalley(build_root_system("A1"));
    const auto adh = ad_matrix(alg, rvec(alg, 1));
    for (unsigned i = 0; i < 3; ++i) {
        for (unsigned j = 0; j < 3; ++j) {
            CHECK(adh(i, j) == Rational(i == j ? 2 - 2 * static_cast<long>(i) : 0));
        }
    }
    CHECK(ad_matrix(alg, std::vector<Rational>(3)).is_zero());
    const auto ade = ad_matrix(alg, rvec(alg, 0));
    CHECK_FALSE((ade * ade).is_zero());
    CHECK((ade * ade * ade).is_zero());
    // linearity
    std::vector<Rational> x{Rational(2), Rational(-1), Rational(3)}, y{Rational(1, 2), Rational(5), Rational(0)};
    std::vector<Rational> xy(3);
    for (int i = 0; i < 3; ++i) {
        xy[i] = x[i] + y[i];
    }
    CHECK(ad_matrix(alg, xy) == ad_matrix(alg, x) + ad_matrix(alg, y));
}

TEST_CASE("exp_ad on sl2 matches conjugation by a unipotent 2x2 matrix")
{
    const auto alg = build_chevalley(build_root_system("A1"));
    const auto g = exp_ad(alg, rvec(alg, 0));
    // g = [[1,1],[0,1]]: g E g^-1 = E, g H g^-1 = H - 2E, g F g^-1 = F + H - E
    // columns in basis (e, h, f)
    const long expected[3][3] = {{1, -2, -1}, {0, 1, 1}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(g(i, j) == Rational(expected[i][j]));
        }
    }
    CHECK(exp_ad(alg, std::vector<Rational>(3)).is_identity());
    CHECK((g * exp_ad(alg, rvec(alg, 0, -1))).is_identity());
    CHECK_THROWS_AS(exp_ad(alg, rvec(alg, 1)), math_error);
}

TEST_CASE("exp_ad is a homomorphism on commuting elements and preserves the bracket")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    for (const char *label : {"A2", "B2", "G2"}) {
        const auto alg = build_chevalley(build_root_system(label));
        const auto pos = alg.root_system().positive_roots();
        for (int trial = 0; trial < 10; ++trial) {
            // v, w in the span of the positive root vectors of heights >= h0
            // so that the two commute when both are highest-root multiples
            const Root &top = pos.back();
            const auto v = rvec(alg, alg.root_index(top), num(rng));
            const auto w = basis_vector(alg, alg.root_index(top), Rational(num(rng), den(rng)));
            std::vector<Rational> vw(alg.dim());
            for (unsigned i = 0; i < alg.dim(); ++i) {
                vw[i] = v[i] + w[i];
            }
            CHECK(exp_ad(alg, v) * exp_ad(alg, w) == exp_ad(alg, vw));
            // a random element of the positive nilradical
            std::vector<Rational> u(alg.dim());
            for (const auto &r : pos) {
                u[alg.root_index(r)] = Rational(num(rng), den(rng));
            }
            const auto g = exp_ad(alg, u);
            CHECK(preserves_bracket(alg, g));
        }
    }
}

TEST_CASE("diagram automorphisms")
{
    const auto a1 = build_chevalley(build_root_system("A1"));
    CHECK(diagram_automorphism(a1, {0}).is_identity());

    const auto a2 = build_chevalley(build_root_system("A2"));
    const auto flip = diagram_automorphism(a2, {1, 0});
    CHECK(automorphism_order(flip) == 2);
    CHECK(fixed_dimension(flip) == 3);
    CHECK(preserves_killing(a2, flip));
    // the highest root vector is negated
    const unsigned top = a2.root_index({1, 1});
    CHECK(flip(top, top) == Cyclotomic(-1));

    const auto d4 = build_chevalley(build_root_system("D4"));
    const auto tri = diagram_automorphism(d4, {2, 1, 3, 0});
    CHECK(automorphism_order(tri) == 3);
    CHECK(fixed_dimension(tri) == 14);
    CHECK(preserves_killing(d4, tri));
    CHECK_THROWS_AS(diagram_automorphism(a2, {0, 0}), invalid_input);
    const auto b2 = build_chevalley(build_root_system("B2"));
    CHECK_THROWS_AS(diagram_automorphism(b2, {1, 0}), invalid_input);
}

TEST_CASE("torus and Chevalley involution on sl2")
{
    const auto alg = build_chevalley(build_root_system("A1"));
    // Ad diag(1,-1): alpha takes the value -1
    const auto t = torus_automorphism(alg, {Cyclotomic(-1)});
    CHECK(t(0, 0) == Cyclotomic(-1));
    CHECK(t(1, 1) == Cyclotomic(1));
    CHECK(t(2, 2) == Cyclotomic(-1));
    const auto w = chevalley_involution(alg);
    CHECK(w(2, 0) == Cyclotomic(1));
    CHECK(w(0, 2) == Cyclotomic(1));
    CHECK(w(1, 1) == Cyclotomic(-1));
    CHECK(t * w == w * t);
    CHECK(preserves_killing(alg, t));
    CHECK(preserves_killing(alg, w));
    CHECK(inner_automorphism(alg, {}).is_identity());
    CHECK(inner_automorphism(alg, {t, w}) == t * w);
}

TEST_CASE("serialization")
{
    const auto alg = build_chevalley(build_root_system("A1"));
    CHECK(alg.str() == "chevalley A1 dim=3\nbasis e(1) h1 e(-1)\n(0, 1, 0, -2)\n(0, 2, 1, 1)\n(1, 2, 2, -2)\n");
    CHECK_THROWS_AS(build_chevalley(build_root_system("BC1")), math_error);
}
