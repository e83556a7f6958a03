#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include <loopk/grading.hpp>

using namespace loopk;

namespace
{

GradedLieAlgebra from_text(const std::string &text)
{
    return build_from_file(parse_multiloop(text));
}

const char *quaternion = "type A 1\nn 2\nm 2\nsigma torus -1\nsigma chevalley\n";
const char *sl3_flip = "type A 2\nn 1\nm 2\nsigma diagram 2 1\ncartan h 1 1\n";
const char *untwisted_a1 = "type A 1\nn 1\nm 1\nsigma identity\ncartan h 1\n";

// dim of the zeta^k eigenspace of sigma (order m) by the character formula
// (1/m) sum_j zeta^{-jk} tr(sigma^j)
unsigned character_dimension(const Automorphism &sigma, unsigned m, unsigned k)
{
    Cyclotomic total;
    Automorphism power = Automorphism::identity(sigma.rows(), Cyclotomic{});
    for (unsigned j = 0; j < m; ++j) {
        Cyclotomic tr;
        for (std::size_t i = 0; i < power.rows(); ++i) {
            tr += power(i, i);
        }
        total += root_power(m, -static_cast<long>(j * k)) * tr;
        power = power * sigma;
    }
    total *= Cyclotomic(Rational(1, static_cast<long>(m)));
    REQUIRE(total.is_rational());
    return static_cast<unsigned>(total.rational_part().to_int());
}

} // namespace

TEST_CASE("quaternion sl2: eigenspace dimensions and anisotropy")
{
    const auto file = parse_multiloop(quaternion);
    const auto spaces = simultaneous_eigenspaces(file.spec);
    REQUIRE(spaces.size() == 4);
    CHECK(spaces.at({0, 0}).size() == 0);
    CHECK(spaces.at({0, 1}).size() == 1);
    CHECK(spaces.at({1, 0}).size() == 1);
    CHECK(spaces.at({1, 1}).size() == 1);

    const auto g = build_from_file(file);
    CHECK(g.size() == 3);
    CHECK(g.qrank() == 0);
    CHECK(g.grading_compatible());
    const auto rg = relative_roots(g);
    CHECK(rg.phi.empty());
    CHECK_THROWS_WITH_AS(opposite_unipotent_pair(rg), "anisotropic: no proper parabolic", math_error);
    CHECK(component_report(rg).empty());
}

TEST_CASE("sl3 with the diagram flip")
{
    const auto file = parse_multiloop(sl3_flip);
    const auto dims = build_multiloop(file.spec).residue_dimensions();
    CHECK(dims.at({0}) == 3);
    CHECK(dims.at({1}) == 5);
    for (unsigned k = 0; k < 2; ++k) {
        CHECK(dims.at({static_cast<int>(k)}) == character_dimension(file.spec.sigma[0], 2, k));
    }

    const auto g = build_from_file(file);
    CHECK(g.qrank() == 1);
    CHECK(g.grading_compatible());
    const auto rg = relative_roots(g);
    CHECK(rg.data.system().label() == "relative");
    CHECK(classify(rg.data.system()) == "BC1");
    CHECK(rg.positive() == std::vector<Root>{{1}, {2}});
    CHECK(rg.negative() == std::vector<Root>{{-1}, {-2}});
    // e12 is negated by the flip and has weight 2
    CHECK(rg.root_space({2}).size() == 1);
    CHECK(g.residue(rg.root_space({2})[0]) == Residue{1});
    CHECK(rg.root_space({1}).size() == 2);
    const auto comps = component_report(rg);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].label == "BC1");
    CHECK(comps[0].roots.size() == 4);
}

TEST_CASE("untwisted loop algebra")
{
    const auto g = from_text(untwisted_a1);
    CHECK(g.size() == 3);
    std::set<Root> qs;
    for (unsigned k = 0; k < g.size(); ++k) {
        qs.insert(g.q(k));
        CHECK(g.residue(k) == Residue{0});
    }
    CHECK(qs == std::set<Root>{{-1}, {0}, {1}});
    CHECK(base_change_dimensions(g).at({0}) == 3);
    const auto rg = relative_roots(g);
    CHECK(classify(rg.data.system()) == "A1");
    const auto [plus, minus] = opposite_unipotent_pair(rg);
    CHECK(plus == std::vector<Root>{{1}});
    CHECK(minus == std::vector<Root>{{-1}});
}

TEST_CASE("full Cartan keeps the Chevalley positive roots")
{
    for (const std::string type : {"A 2", "B 2", "G 2", "A 3", "C 3"}) {
        INFO(type);
        const auto file = parse_multiloop("type " + type + "\nn 1\nm 1\nsigma identity\n");
        const auto g = build_from_file(file);
        const auto &alg = file.spec.base;
        CHECK(g.qrank() == alg.rank());
        CHECK(g.size() == alg.dim());
        // each new basis vector is a multiple of one Chevalley basis vector
        // outside the Cartan; its q-degree is that root
        for (unsigned k = 0; k < g.size(); ++k) {
            const auto &v = g.vectors()[k];
            std::vector<unsigned> support;
            for (unsigned i = 0; i < v.size(); ++i) {
                if (!v[i].is_zero()) {
                    support.push_back(i);
                }
            }
            REQUIRE(!support.empty());
            if (alg.is_cartan(support[0])) {
                CHECK(g.q(k) == Root(alg.rank(), 0));
            } else {
                CHECK(support.size() == 1);
                CHECK(g.q(k) == alg.weight(support[0]));
            }
        }
        const auto rg = relative_roots(g);
        CHECK(classify(rg.data.system()) == alg.root_system().label());
    }
}

TEST_CASE("auto Cartan selection")
{
    const auto file = parse_multiloop("type A 2\nn 1\nm 1\nsigma identity\ncartan none\n");
    const auto g = build_multiloop(file.spec);
    const auto c = auto_cartan(g);
    CHECK(c.size() == 2);
    const auto q = build_from_file(file);
    CHECK(q.qrank() == 0);
}

TEST_CASE("eigenspace dimensions agree with the character formula")
{
    struct Case
    {
        const char *text;
        unsigned m;
    };
    const std::vector<Case> cases = {
        {"type A 2\nn 1\nm 2\nsigma diagram 2 1\n", 2},
        {"type D 4\nn 1\nm 3\nsigma diagram 3 2 4 1\n", 3},
        {"type A 3\nn 1\nm 2\nsigma diagram 3 2 1\n", 2},
        {"type A 2\nn 1\nm 3\nsigma torus [3; 0,1] 1\n", 3},
        {"type A 1\nn 1\nm 4\nsigma torus [4; 0,1]\n", 4},
        {"type B 2\nn 1\nm 2\nsigma chevalley\n", 2},
    };
    for (const auto &cs : cases) {
        INFO(cs.text);
        const auto file = parse_multiloop(cs.text);
        const auto dims = build_multiloop(file.spec).residue_dimensions();
        unsigned total = 0;
        for (unsigned k = 0; k < cs.m; ++k) {
            const unsigned d = dims.at({static_cast<int>(k)});
            CHECK(d == character_dimension(file.spec.sigma[0], cs.m, k));
            total += d;
        }
        CHECK(total == file.spec.base.dim());
    }
}

TEST_CASE("properties over random torus and diagram twists")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        const bool a3 = trial % 2 == 0;
        const unsigned m = 2 + rng() % 3;
        std::string text = a3 ? "type A 3\n" : "type B 2\n";
        text += "n 2\nm " + std::to_string(2 * m) + "\n";
        // sigma_1: torus with values in mu_m; sigma_2: torus, optionally
        // composed with the diagram flip (A3 only, flip commutes with a
        // flip-symmetric torus)
        std::vector<long> s(a3 ? 3 : 2);
        for (auto &x : s) {
            x = static_cast<long>(rng() % m);
        }
        if (a3) {
            s[2] = s[0];
        }
        auto torus = [&](const std::vector<long> &ex) {
            std::string t = "torus";
            for (long e : ex) {
                t += " " + root_power(2 * m, 2 * e).str();
            }
            return t;
        };
        text += "sigma " + torus(s) + "\n";
        std::vector<long> s2(s.size(), 0);
        s2[1] = static_cast<long>(rng() % m);
        text += "sigma " + torus(s2) + (a3 ? " * diagram 3 2 1" : "") + "\n";
        INFO(text);
        const auto file = parse_multiloop(text);
        const auto g = build_from_file(file);
        std::string witness;
        CHECK_MESSAGE(g.grading_compatible(&witness), witness);
        unsigned total = 0;
        for (const auto &[r, d] : g.residue_dimensions()) {
            total += d;
        }
        CHECK(total == file.spec.base.dim());
        // Phi = -Phi and the negated grading has the same relative roots
        const auto rg = relative_roots(g);
        for (const auto &a : rg.phi) {
            CHECK(rg.contains(-a));
        }
        const auto rn = relative_roots(g.negated());
        CHECK(std::set<Root>(rn.phi.begin(), rn.phi.end()) == std::set<Root>(rg.phi.begin(), rg.phi.end()));
        CHECK(g.negated().negated().str() == g.str());
        // text round trip
        const auto back = GradedLieAlgebra::parse(g.str());
        CHECK(back.str() == g.str());
    }
}

TEST_CASE("rejected inputs")
{
    // sigma^m != 1
    CHECK_THROWS_AS(build_from_file(parse_multiloop("type A 2\nn 1\nm 3\nsigma diagram 2 1\n")), invalid_input);
    // non-commuting pair is named
    const auto file = parse_multiloop("type A 2\nn 2\nm 6\nsigma torus [3; 0,1] 1\nsigma diagram 2 1\n");
    CHECK_THROWS_WITH_AS(build_multiloop(file.spec), "multiloop: sigma_1 and sigma_2 do not commute", invalid_input);
    // the Cartan element must lie in the residue-0 part
    CHECK_THROWS_AS(build_from_file(parse_multiloop("type A 2\nn 1\nm 2\nsigma diagram 2 1\ncartan h 1 0\n")),
                    invalid_input);
    // e is ad-nilpotent
    const auto g = build_multiloop(parse_multiloop(untwisted_a1).spec);
    std::vector<Cyclotomic> e(3);
    e[0] = Cyclotomic(1);
    CHECK_THROWS_AS(q_grading_from_cartan(g, {e}), math_error);
}

TEST_CASE("parse errors carry positions")
{
    auto line_of = [](const std::string &text) {
        try {
            parse_multiloop(text);
        } catch (const parse_error &e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("type A 2\nn 1\nbogus 3\n") == 3);
    CHECK(line_of("type Q 2\n") == 1);
    CHECK(line_of("type A 2\nsigma diagram 2 2\n") == 2);
    CHECK(line_of("type A 2\nsigma torus 1\n") == 2);
    CHECK(line_of("n 1\n") == 1);
    CHECK(line_of("type A 1\nn 2\nsigma identity\n") == 3);

    CHECK_THROWS_AS(GradedLieAlgebra::parse("graded-lie-algebra\nnvars 1\n"), parse_error);
    const std::string bad = "graded-lie-algebra\nnvars 1\nperiod 1\nqrank 0\nsize 1\nb 0 q=() lambda=(x)\nend\n";
    try {
        GradedLieAlgebra::parse(bad);
        FAIL("expected a parse error");
    } catch (const parse_error &e) {
        CHECK(e.line() == 6);
    }
}

TEST_CASE("serialization of a small algebra")
{
    const auto g = from_text(untwisted_a1);
    const std::string expected = "graded-lie-algebra\n"
                                 "base A1\n"
                                 "field Q(zeta_1)\n"
                                 "nvars 1\n"
                                 "period 1\n"
                                 "qrank 1\n"
                                 "size 3\n"
                                 "b 0 q=(1) lambda=(0)\n"
                                 "b 1 q=(0) lambda=(0)\n"
                                 "b 2 q=(-1) lambda=(0)\n"
                                 "bracket 0 1 0 shift=(0) c=-2\n"
                                 "bracket 0 2 1 shift=(0) c=1\n"
                                 "bracket 1 2 2 shift=(0) c=-2\n"
                                 "end\n";
    CHECK(g.str() == expected);
    CHECK(GradedLieAlgebra::parse(expected).str() == expected);
}
