#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <loopk/cocycle.hpp>
#include <loopk/errors.hpp>

using namespace loopk;

namespace
{

CoverGroup plain_cover(unsigned m, unsigned n)
{
    return CoverGroup(m, n, FiniteGroup(), {1});
}

// Galois group Z/2 acting on roots of unity by inversion.
CoverGroup conjugation_cover(unsigned m, unsigned n)
{
    return CoverGroup(m, n, FiniteGroup::cyclic(2), {1, m - 1});
}

std::vector<unsigned> inversion(const FiniteGroup &a)
{
    std::vector<unsigned> r;
    for (unsigned x = 0; x < a.order(); ++x) {
        r.push_back(a.inv(x));
    }
    return r;
}

std::vector<unsigned> identity_of(const FiniteGroup &a)
{
    std::vector<unsigned> r;
    for (unsigned x = 0; x < a.order(); ++x) {
        r.push_back(x);
    }
    return r;
}

// Every map Gamma -> A tested against the cocycle identity directly.
std::vector<Cocycle> brute_force_cocycles(const CoverGroup &cover, const CoefficientGroup &coeff)
{
    const unsigned ng = cover.order(), na = coeff.group.order();
    std::vector<Cocycle> out;
    std::vector<unsigned> v(ng, 0);
    while (true) {
        bool ok = v[0] == 0;
        for (unsigned g = 0; g < ng && ok; ++g) {
            for (unsigned h = 0; h < ng && ok; ++h) {
                ok = v[cover.group().mul(g, h)] == coeff.group.mul(v[g], coeff.apply(g, v[h]));
            }
        }
        if (ok) {
            out.push_back(Cocycle{v});
        }
        unsigned i = 0;
        while (i < ng && v[i] == na - 1) {
            v[i++] = 0;
        }
        if (i == ng) {
            break;
        }
        ++v[i];
    }
    return out;
}

// Orbits of the coboundary action found by union-find over all cocycles.
std::size_t brute_force_class_count(const CoverGroup &cover, const CoefficientGroup &coeff,
                                    const std::vector<Cocycle> &all)
{
    std::map<Cocycle, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) {
        index[all[i]] = i;
    }
    std::vector<std::size_t> parent(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        parent[i] = i;
    }
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    const auto &A = coeff.group;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (unsigned a = 0; a < A.order(); ++a) {
            Cocycle z{all[i].values};
            for (unsigned g = 0; g < cover.order(); ++g) {
                z.values[g] = A.mul(A.mul(A.inv(a), all[i].values[g]), coeff.apply(g, a));
            }
            parent[find(i)] = find(index.at(z));
        }
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < all.size(); ++i) {
        roots.insert(find(i));
    }
    return roots.size();
}

} // namespace

TEST_CASE("finite groups from tables and generators")
{
    CHECK(FiniteGroup().order() == 1);
    CHECK(FiniteGroup::cyclic(5).order() == 5);
    CHECK(FiniteGroup::cyclic(6).element_order(2) == 3);
    const auto d4 = FiniteGroup::dihedral(4);
    CHECK(d4.order() == 8);
    CHECK_FALSE(d4.is_abelian());
    const auto q8 = FiniteGroup::quaternion();
    REQUIRE(q8.order() == 8);
    CHECK_FALSE(q8.is_abelian());
    std::multiset<unsigned> orders;
    for (unsigned x = 0; x < 8; ++x) {
        orders.insert(q8.element_order(x));
    }
    // Q8: one element of order 1, one of order 2, six of order 4
    CHECK(orders.count(1) == 1);
    CHECK(orders.count(2) == 1);
    CHECK(orders.count(4) == 6);
    CHECK(FiniteGroup::symmetric(3).order() == 6);
    CHECK(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)).is_abelian());
    CHECK(FiniteGroup::parse(d4.str()) == d4);
    CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}), invalid_input);
    CHECK_THROWS_AS(FiniteGroup::parse("group 2\n0 1\n1\n"), parse_error);
    for (const auto &g : {d4, q8, FiniteGroup::symmetric(4)}) {
        CHECK(g.is_automorphism(g.inner(3)));
        std::vector<unsigned> gens = g.generators();
        CHECK(gens.size() <= 3);
    }
}

TEST_CASE("cover groups have order m^n |G0| and the semidirect product law")
{
    const auto c = conjugation_cover(3, 2);
    CHECK(c.order() == 18);
    CHECK_FALSE(c.group().is_abelian());
    // (x, s)(y, 1) = (x - y, s) for the conjugation s
    const unsigned s = c.encode({0, 0}, 1);
    const unsigned y = c.encode({1, 2}, 0);
    const auto [x, g] = c.decode(c.group().mul(s, y));
    CHECK(x == std::vector<unsigned>{2, 1});
    CHECK(g == 1);
    CHECK(plain_cover(1, 3).order() == 1);
    CHECK_THROWS_AS(CoverGroup(4, 1, FiniteGroup::cyclic(2), {1, 2}), invalid_input);
    CHECK_THROWS_AS(CoverGroup(5, 1, FiniteGroup::cyclic(2), {1, 2}), invalid_input);
    const auto p = product_cover(conjugation_cover(2, 1));
    CHECK(p.order() == 8);
    CHECK(p.n_part().order() == 4);
    CHECK(p.m_part().order() == 2);
    const auto incl = p.n_inclusion();
    const auto proj = p.n_projection();
    for (unsigned e = 0; e < incl.size(); ++e) {
        CHECK(proj[incl[e]] == e);
    }
}

TEST_CASE("coefficient actions are validated")
{
    const auto c = conjugation_cover(3, 1);
    const auto z3 = FiniteGroup::cyclic(3);
    CHECK_NOTHROW(CoefficientGroup::from_galois(c, z3, {identity_of(z3), inversion(z3)}));
    CHECK_THROWS_AS(CoefficientGroup::from_galois(c, z3, {identity_of(z3), {0, 2, 2}}), invalid_input);
    // an automorphism of order 3 cannot represent Z/2
    const auto z7 = FiniteGroup::cyclic(7);
    std::vector<unsigned> times2;
    for (unsigned x = 0; x < 7; ++x) {
        times2.push_back((2 * x) % 7);
    }
    CHECK_THROWS_AS(CoefficientGroup::from_galois(c, z7, {identity_of(z7), times2}), invalid_input);
}

TEST_CASE("cocycle identity checks")
{
    const auto c = plain_cover(4, 1);
    const auto coeff = CoefficientGroup::trivial_action(c, FiniteGroup::cyclic(2));
    CHECK(is_cocycle(c, coeff, trivial_cocycle(c)));
    // reduction Z/4 -> Z/2 is a homomorphism
    CHECK(is_cocycle(c, coeff, Cocycle{{0, 1, 0, 1}}));
    std::pair<unsigned, unsigned> w;
    CHECK_FALSE(is_cocycle(c, coeff, Cocycle{{0, 1, 1, 1}}, &w));
    CHECK(Cocycle{{0, 1, 1, 1}}.values[c.group().mul(w.first, w.second)]
          != (Cocycle{{0, 1, 1, 1}}.values[w.first] + Cocycle{{0, 1, 1, 1}}.values[w.second]) % 2);
    CHECK(Cocycle{{0, 1, 0, 1}}.str() == "cocycle 0 1 0 1");
}

TEST_CASE("cohomologous finds coboundary witnesses")
{
    const auto c = conjugation_cover(3, 1);
    const auto s3 = FiniteGroup::symmetric(3);
    const auto coeff = CoefficientGroup::from_galois(c, s3, {identity_of(s3), s3.inner(1)});
    const auto z = trivial_cocycle(c);
    CHECK(cohomologous(c, coeff, z, z) == 0u);
    for (unsigned a = 0; a < s3.order(); ++a) {
        const auto b = coboundary(c, coeff, a);
        CHECK(is_cocycle(c, coeff, b));
        const auto w = cohomologous(c, coeff, z, b);
        REQUIRE(w.has_value());
        CHECK(coboundary(c, coeff, *w) == b);
    }
    const auto z2 = plain_cover(2, 1);
    const auto t = CoefficientGroup::trivial_action(z2, FiniteGroup::cyclic(2));
    CHECK_FALSE(cohomologous(z2, t, trivial_cocycle(z2), Cocycle{{0, 1}}).has_value());
}

TEST_CASE("h1 of small groups")
{
    {
        const auto c = plain_cover(2, 1);
        const auto h = h1_enumerate(c, CoefficientGroup::trivial_action(c, FiniteGroup::cyclic(2)));
        CHECK(h.classes.size() == 2);
        CHECK(h.cocycles == 2);
        CHECK(h.str().rfind("h1 cocycles 2 classes 2\n", 0) == 0);
    }
    {
        const auto c = conjugation_cover(3, 1);
        CHECK(h1_enumerate(c, CoefficientGroup::trivial_action(c, FiniteGroup())).classes.size() == 1);
    }
    {
        const auto c = plain_cover(1, 1);
        CHECK(h1_enumerate(c, CoefficientGroup::trivial_action(c, FiniteGroup::quaternion())).classes.size() == 1);
    }
    {
        // Z/2 acting on Z/3 by inversion: the norm vanishes and (s - 1) is onto
        const auto c = CoverGroup(1, 0, FiniteGroup::cyclic(2), {0, 0});
        const auto z3 = FiniteGroup::cyclic(3);
        const auto h = h1_enumerate(c, CoefficientGroup::from_galois(c, z3, {identity_of(z3), inversion(z3)}));
        CHECK(h.cocycles == 3);
        CHECK(h.classes.size() == 1);
    }
    {
        // trivial action on an abelian group: classes are Hom(Z/k, A)
        for (unsigned k : {2u, 3u, 4u, 6u}) {
            for (unsigned a : {2u, 3u, 4u, 6u}) {
                const auto c = plain_cover(k, 1);
                const auto h = h1_enumerate(c, CoefficientGroup::trivial_action(c, FiniteGroup::cyclic(a)));
                unsigned hom = 0;
                for (unsigned x = 0; x < a; ++x) {
                    hom += (k * x) % a == 0;
                }
                CHECK(h.classes.size() == hom);
            }
        }
    }
    const auto big = plain_cover(2, 7);
    CHECK_THROWS_AS(h1_enumerate(big, CoefficientGroup::trivial_action(big, FiniteGroup::cyclic(2))),
                    budget_exceeded);
    const auto small = plain_cover(2, 1);
    CHECK_THROWS_AS(h1_enumerate(small, CoefficientGroup::trivial_action(small, FiniteGroup::cyclic(5)), {96, 4}),
                    budget_exceeded);
}

TEST_CASE("enumeration matches brute force over all maps")
{
    struct Case
    {
        CoverGroup cover;
        FiniteGroup a;
        std::vector<unsigned> gen_action;
    };
    const auto z3 = FiniteGroup::cyclic(3), z2 = FiniteGroup::cyclic(2), s3 = FiniteGroup::symmetric(3);
    const auto klein = FiniteGroup::product(z2, z2);
    std::vector<Case> cases{
        {plain_cover(2, 2), z3, identity_of(z3)},
        {conjugation_cover(3, 1), z3, inversion(z3)},
        {conjugation_cover(3, 1), z2, identity_of(z2)},
        {CoverGroup(2, 1, FiniteGroup::cyclic(2), {1, 1}), klein, {0, 2, 1, 3}},
        {plain_cover(2, 1), s3, identity_of(s3)},
        {CoverGroup(1, 0, FiniteGroup::cyclic(2), {0, 0}), s3, s3.inner(1)},
    };
    for (const auto &cs : cases) {
        const auto coeff = CoefficientGroup::from_galois(
            cs.cover, cs.a,
            cs.cover.galois().order() == 1 ? std::vector<std::vector<unsigned>>{identity_of(cs.a)}
                                           : std::vector<std::vector<unsigned>>{identity_of(cs.a), cs.gen_action});
        const auto fast = all_cocycles(cs.cover, coeff);
        auto slow = brute_force_cocycles(cs.cover, coeff);
        std::sort(slow.begin(), slow.end());
        CHECK(fast == slow);
        CHECK(h1_enumerate(cs.cover, coeff).classes.size() == brute_force_class_count(cs.cover, coeff, slow));
    }
}

TEST_CASE("twisting by a cocycle gives an action and a bijection of cocycles")
{
    const auto c = conjugation_cover(3, 1);
    const auto s3 = FiniteGroup::symmetric(3);
    const auto coeff = CoefficientGroup::from_galois(c, s3, {identity_of(s3), s3.inner(1)});
    const auto all = all_cocycles(c, coeff);
    for (const auto &base : all) {
        const auto tw = twisted(c, coeff, base);
        CHECK_NOTHROW(tw.validate(c));
        std::set<Cocycle> image;
        for (const auto &z : all) {
            const auto x = twist_difference(coeff, z, base);
            CHECK(is_cocycle(c, tw, x));
            image.insert(x);
        }
        CHECK(image.size() == all_cocycles(c, tw).size());
    }
}

TEST_CASE("power pullback")
{
    const auto loop = plain_cover(4, 1);
    const auto p = product_cover(loop);
    const auto coeff = CoefficientGroup::trivial_action(p, FiniteGroup::cyclic(4));
    const auto mincl = p.m_inclusion();
    for (const auto &z : all_cocycles(p, coeff)) {
        CHECK(power_pullback(p, z, 1) == z);
        CHECK(pulled_back(power_pullback(p, z, 4), mincl) == trivial_cocycle(p.m_part()));
        // restriction to M after d = 2 has order dividing 2
        const auto r = pulled_back(power_pullback(p, z, 2), mincl);
        for (unsigned v : r.values) {
            CHECK((2 * v) % 4 == 0);
        }
        for (unsigned d1 = 1; d1 <= 4; ++d1) {
            for (unsigned d2 = 1; d2 <= 4; ++d2) {
                CHECK(power_pullback(p, power_pullback(p, z, d1), d2) == power_pullback(p, z, (d1 * d2) % 4));
            }
        }
        CHECK(is_cocycle(p, coeff, power_pullback(p, z, 3)));
    }
}

TEST_CASE("inflation-restriction exactness")
{
    {
        // M trivial: inflation is a bijection
        const auto c = CoverGroup(2, 1, FiniteGroup(), {1}, 1);
        const auto rep = inf_res_sequence(c, CoefficientGroup::trivial_action(c, FiniteGroup::cyclic(2)));
        CHECK(rep.pass);
        CHECK(rep.quotient_classes == rep.total_classes);
    }
    {
        const auto p = product_cover(plain_cover(2, 1));
        const auto rep = inf_res_sequence(p, CoefficientGroup::trivial_action(p, FiniteGroup::cyclic(2)));
        CHECK_MESSAGE(rep.pass, rep.detail);
        CHECK(rep.total_classes == 4);
        CHECK(rep.quotient_classes == 2);
        CHECK(rep.kernel_classes == 2);
        CHECK(rep.str().rfind("inf-res pass", 0) == 0);
    }
    {
        const auto p = product_cover(CoverGroup(1, 1, FiniteGroup::cyclic(2), {0, 0}));
        const auto z3 = FiniteGroup::cyclic(3);
        const auto coeff = CoefficientGroup::from_galois(p, z3, {identity_of(z3), inversion(z3)});
        const auto rep = inf_res_sequence(p, coeff);
        CHECK_MESSAGE(rep.pass, rep.detail);
    }
    {
        const auto p = product_cover(conjugation_cover(3, 1));
        const auto z3 = FiniteGroup::cyclic(3);
        const auto coeff = CoefficientGroup::from_galois(p, z3, {identity_of(z3), inversion(z3)});
        CHECK(inf_res_sequence(p, coeff).pass);
        // a twist by a cocycle nontrivial on M makes M act nontrivially
        const auto s3 = FiniteGroup::symmetric(3);
        const auto sc = CoefficientGroup::trivial_action(p, s3);
        bool rejected = false;
        for (const auto &z : all_cocycles(p, sc)) {
            const auto tw = twisted(p, sc, z);
            try {
                inf_res_sequence(p, tw);
            } catch (const invalid_input &) {
                rejected = true;
            }
        }
        CHECK(rejected);
    }
}

TEST_CASE("diagonal argument examples")
{
    {
        const auto loop = plain_cover(2, 1);
        const auto p = product_cover(loop);
        const auto coeff = CoefficientGroup::trivial_action(p, FiniteGroup::cyclic(2));
        const auto [e1, e2] = loop_pullbacks(loop, p, Cocycle{{0, 1}});
        const auto same = diagonal_argument(p, coeff, e1, e1);
        CHECK(same.success);
        CHECK(same.d == 1);
        CHECK(same.theta_trivial);
        // eta_1 eta_2^-1 has order 2 on M
        const auto r = diagonal_argument(p, coeff, e1, e2);
        CHECK(r.success);
        CHECK(r.d == 2);
        CHECK(r.theta_trivial);
        CHECK(r.str().rfind("diagonal pass d 2", 0) == 0);
    }
    {
        const auto loop = plain_cover(3, 1);
        const auto p = product_cover(loop);
        const auto coeff = CoefficientGroup::trivial_action(p, FiniteGroup::cyclic(3));
        const auto [e1, e2] = loop_pullbacks(loop, p, Cocycle{{0, 1, 2}});
        const auto r = diagonal_argument(p, coeff, e1, e2);
        CHECK(r.success);
        CHECK(r.d == 3);
    }
    {
        // d = 2 suffices for a class of order 2 with m = 4
        const auto loop = plain_cover(4, 1);
        const auto p = product_cover(loop);
        const auto coeff = CoefficientGroup::trivial_action(p, FiniteGroup::cyclic(2));
        const auto [e1, e2] = loop_pullbacks(loop, p, Cocycle{{0, 1, 0, 1}});
        const auto r = diagonal_argument(p, coeff, e1, e2);
        CHECK(r.success);
        CHECK(r.d == 2);
    }
    {
        const auto loop = plain_cover(2, 1);
        const auto p = product_cover(loop);
        const auto coeff = CoefficientGroup::trivial_action(p, FiniteGroup::cyclic(2));
        const auto [e1, e2] = loop_pullbacks(loop, p, Cocycle{{0, 1}});
        // e2 paired with the trivial cocycle differs on the diagonal copy
        CHECK_THROWS_AS(diagonal_argument(p, coeff, e1, trivial_cocycle(p)), invalid_input);
        (void)e2;
    }
}

TEST_CASE("diagonal argument succeeds for every loop cocycle")
{
    const auto z3 = FiniteGroup::cyclic(3), s3 = FiniteGroup::symmetric(3);
    struct Case
    {
        CoverGroup loop;
        FiniteGroup a;
        std::vector<unsigned> gen_action;
    };
    std::vector<Case> cases{
        {plain_cover(2, 1), s3, identity_of(s3)},
        {conjugation_cover(3, 1), z3, inversion(z3)},
        {conjugation_cover(4, 1), FiniteGroup::dihedral(4), FiniteGroup::dihedral(4).inner(1)},
    };
    for (const auto &cs : cases) {
        const auto p = product_cover(cs.loop);
        std::vector<std::vector<unsigned>> gal{identity_of(cs.a)};
        if (cs.loop.galois().order() == 2) {
            gal.push_back(cs.gen_action);
        }
        const auto lc = CoefficientGroup::from_galois(cs.loop, cs.a, gal);
        const auto pc = CoefficientGroup::from_galois(p, cs.a, gal);
        for (const auto &eta : all_cocycles(cs.loop, lc)) {
            const auto [e1, e2] = loop_pullbacks(cs.loop, p, eta);
            const auto r = diagonal_argument(p, pc, e1, e2);
            CHECK_MESSAGE(r.success, r.detail);
            CHECK(r.d >= 1);
            CHECK(r.d <= cs.loop.m());
            CHECK(r.theta_trivial);
        }
    }
}

TEST_CASE("configuration files")
{
    const auto cfg = parse_cocycle_config("# conj\ncover m 3 n 1\ngalois cyclic 2 chi 2\ncoeff cyclic 3\naction inverse\n");
    CHECK(cfg.loop.order() == 6);
    CHECK(cfg.coeff.order() == 3);
    const auto coeff = cfg.coefficients(cfg.loop);
    CHECK(coeff.apply(1, 1) == 2);
    CHECK(cfg.str().find("config m3 n1 G0=Z/2 chi2 A=cyclic3 inverse") == 0);
    CHECK_THROWS_AS(parse_cocycle_config("cover m 3 n 1\ncoeff dihedral 3\naction inverse\n"), parse_error);
    CHECK_THROWS_AS(parse_cocycle_config("cover m 3 n 1\ngalois cyclic 2 chi 2\ncoeff cyclic 7\naction perm 0 2 4 6 1 3 5\n"),
                    parse_error);
    try {
        parse_cocycle_config("cover m 2 n 1\nfoo\n");
        FAIL("expected a parse error");
    } catch (const parse_error &e) {
        CHECK(e.line() == 2);
    }
}
