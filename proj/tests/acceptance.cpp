// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <loopk/chevalley.hpp>
#include <loopk/cli.hpp>
#include <loopk/cocycle.hpp>
#include <loopk/elemgroup.hpp>
#include <loopk/errors.hpp>
#include <loopk/lietorus.hpp>

using namespace loopk;

namespace
{

const std::string fixtures = LOOPK_FIXTURES_DIR;

std::string read(const std::string &name)
{
    std::ifstream in(fixtures + "/" + name);
    if (!in) {
        throw invalid_input("missing fixture " + name);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RelativeGrading grading(const std::string &spec)
{
    return relative_roots(build_from_file(parse_multiloop(read(spec))));
}

// Accumulates the first failure; later checks still run.
struct Outcome
{
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string &what)
    {
        if (!ok && pass) {
            pass = false;
            note = what;
        }
    }
};

using Series = TruncSeries<Rational>;
using LSeries = TruncSeries<LaurentPoly>;

LaurentPoly random_laurent(std::mt19937_64 &rng, unsigned nvars)
{
    std::uniform_int_distribution<int> coeff(-3, 3), expo(-1, 1);
    LaurentPoly p(nvars);
    for (int t = 0; t < 2; ++t) {
        Exponent e(nvars);
        for (auto &x : e) {
            x = expo(rng);
        }
        p += LaurentPoly::monomial(Cyclotomic(Rational(coeff(rng)), 1), e);
    }
    return p.is_zero() ? one_like(p) : p;
}

std::vector<LaurentPoly> random_root_vector(const RelativeGrading &rg, const Root &a, std::mt19937_64 &rng)
{
    std::vector<LaurentPoly> v(rg.algebra.size(), LaurentPoly(rg.algebra.nvars()));
    for (unsigned k : rg.root_space(a)) {
        v[k] = random_laurent(rng, rg.algebra.nvars());
    }
    return v;
}

Outcome chevalley_integrity()
{
    Outcome o;
    unsigned triples = 0;
    for (const char *label : {"A1", "A2", "B2", "G2", "A3"}) {
        const auto alg = build_chevalley(build_root_system(label));
        unsigned w[3];
        o.require(alg.jacobi_holds(w), std::string("Jacobi fails for ") + label);
        triples += alg.dim() * alg.dim() * alg.dim();
    }
    o.note = o.pass ? std::to_string(triples) + " basis triples" : o.note;
    return o;
}

Outcome automorphisms()
{
    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    std::bernoulli_distribution coin(0.5);
    unsigned count = 0;
    // exp(ad u) for u in a random nilradical of a split algebra
    for (const char *label : {"A1", "A2", "B2", "G2", "A3"}) {
        const auto alg = build_chevalley(build_root_system(label));
        const auto pos = alg.root_system().positive_roots();
        for (int trial = 0; trial < 24; ++trial) {
            const bool negative = coin(rng);
            std::vector<Rational> u(alg.dim());
            for (const auto &r : pos) {
                u[alg.root_index(negative ? -r : r)] = Rational(num(rng), den(rng));
            }
            o.require(preserves_bracket(alg, exp_ad(alg, u)), std::string("exp_ad breaks the bracket in ") + label);
            ++count;
        }
    }
    // relative root elements of graded algebras over Laurent polynomials
    for (const char *spec : {"sl2_loop.spec", "sl3_loop.spec", "sl3_flip.spec", "finite_b2.spec"}) {
        const auto rg = grading(spec);
        const LaurentPoly proto(rg.algebra.nvars());
        std::uniform_int_distribution<std::size_t> pick(0, rg.phi.size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            const Root a = rg.phi[pick(rng)];
            const auto x = root_element(rg, a, random_root_vector(rg, a, rng), proto);
            o.require(graded_preserves_bracket(rg.algebra, x), std::string("root element breaks the bracket in ") + spec);
            ++count;
        }
    }
    if (o.pass) {
        o.note = std::to_string(count) + " elements";
    }
    o.require(count >= 200, "fewer than 200 elements");
    return o;
}

Outcome multiloop_grading()
{
    Outcome o;
    const std::vector<std::pair<std::string, std::map<Residue, unsigned>>> cases{
        {"sl2_loop.spec", {{{0}, 3}}},
        {"quaternion.spec", {{{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}}},
        {"sl3_flip.spec", {{{0}, 3}, {{1}, 5}}},
    };
    for (const auto &[spec, expected] : cases) {
        const auto file = parse_multiloop(read(spec));
        const auto g = build_from_file(file);
        std::string witness;
        o.require(g.grading_compatible(&witness), spec + ": " + witness);
        unsigned total = 0;
        for (const auto &[r, d] : g.residue_dimensions()) {
            total += d;
        }
        o.require(total == file.spec.base.dim(), spec + ": dimension total differs from dim L");
        auto dims = g.residue_dimensions();
        for (const auto &[r, d] : expected) {
            o.require(dims[r] == d, spec + ": residue " + root_str(r) + " has dimension " + std::to_string(dims[r]));
        }
    }
    if (o.pass) {
        o.note = "3 fixtures graded; totals equal dim L";
    }
    return o;
}

Outcome lie_torus_verdicts()
{
    Outcome o;
    unsigned witnesses = 0;
    auto run = [&](const std::string &spec, const std::string &delta, bool expect_pass) {
        const auto g = build_from_file(parse_multiloop(read(spec)));
        const auto rep = delta.empty() ? discover_and_check(g) : check_lie_torus(g, build_root_system(delta));
        o.require(rep.pass() == expect_pass, spec + ": unexpected verdict\n" + rep.str());
        if (!rep.witnesses.empty()) {
            const auto d = align_delta(g, build_root_system(rep.delta));
            for (const auto &w : rep.witnesses) {
                std::string why;
                o.require(verify_witness(g, d, w, &why), spec + ": witness " + w.str() + " " + why);
                ++witnesses;
            }
        }
        return rep;
    };
    run("sl2_loop.spec", "A1", true);
    run("sl3_loop.spec", "A2", true);
    const auto bc = run("sl3_flip.spec", "", true);
    o.require(bc.delta == "BC1", "twisted A2 proposes " + bc.delta);
    const auto q = run("quaternion.spec", "", false);
    o.require(!q.axioms[1].pass && q.axioms[1].detail.find("anisotropic") != std::string::npos,
              "quaternion LT2 does not report anisotropy");
    if (o.pass) {
        o.note = std::to_string(witnesses) + " witnesses re-verified";
    }
    return o;
}

Outcome unipotent_roundtrip()
{
    Outcome o;
    std::mt19937_64 rng(505);
    unsigned tuples = 0;
    for (const char *spec : {"sl2_loop.spec", "sl3_loop.spec", "sl3_flip.spec", "finite_a2.spec", "finite_b2.spec"}) {
        const auto rg = grading(spec);
        const LaurentPoly proto(rg.algebra.nvars());
        for (int trial = 0; trial < 100; ++trial) {
            const auto psi = trial % 2 == 0 ? rg.positive() : rg.negative();
            const auto order = height_order(rg, psi);
            std::vector<Letter<LaurentPoly>> letters;
            auto u = Matrix<LaurentPoly>::identity(rg.algebra.size(), proto);
            for (const auto &a : order) {
                letters.push_back({a, random_root_vector(rg, a, rng)});
                u = u * root_element(rg, a, letters.back().v, proto);
            }
            const auto f = unipotent_factor(rg, u, psi, order, proto);
            bool same = f.size() == letters.size();
            for (std::size_t i = 0; same && i < f.size(); ++i) {
                same = f[i].alpha == letters[i].alpha && f[i].v == letters[i].v;
            }
            o.require(same, std::string(spec) + ": factorization does not recover the tuple");
            ++tuples;
        }
    }
    if (o.pass) {
        o.note = std::to_string(tuples) + " tuples over 5 gradings";
    }
    return o;
}

Outcome commutator_formula()
{
    Outcome o;
    std::mt19937_64 rng(606);
    unsigned pairs = 0, probes = 0;
    for (const char *spec : {"finite_a2.spec", "sl3_flip.spec"}) {
        const auto rg = grading(spec);
        const LaurentPoly proto(rg.algebra.nvars());
        for (const auto &a : rg.phi) {
            for (const auto &b : rg.phi) {
                bool opposite = false;
                for (int m = 1; m <= 4; ++m) {
                    for (int k = 1; k <= 4; ++k) {
                        opposite = opposite || scaled(a, m) == -scaled(b, k);
                    }
                }
                if (opposite) {
                    continue;
                }
                const auto support = commutator_support(rg, a, b);
                const auto u = random_root_vector(rg, a, rng);
                const auto v = random_root_vector(rg, b, rng);
                const auto base = commutator_table(rg, a, b, u, v, proto);
                ++pairs;
                auto index_of = [&](const Root &r) {
                    for (const auto &s : support) {
                        if (s.first == r) {
                            return s.second;
                        }
                    }
                    return std::pair<int, int>{0, 0};
                };
                for (const auto &l : base) {
                    const auto ij = index_of(l.alpha);
                    o.require(ij.first >= 1 && ij.second >= 1,
                              std::string(spec) + ": term " + root_str(l.alpha) + " outside {i a + j b}");
                }
                if (base.empty()) {
                    continue;
                }
                // the lowest term of [X_a(c u), X_b(v)] is c^i times that of [X_a(u), X_b(v)]
                const auto lead = base.front();
                const int i = index_of(lead.alpha).first;
                for (int c : {2, 3, -1}) {
                    std::vector<LaurentPoly> cu(u);
                    for (auto &x : cu) {
                        x *= Rational(c);
                    }
                    const auto scaled_table = commutator_table(rg, a, b, cu, v, proto);
                    Rational ci(1);
                    for (int e = 0; e < i; ++e) {
                        ci *= Rational(c);
                    }
                    bool ok = !scaled_table.empty() && scaled_table.front().alpha == lead.alpha;
                    for (std::size_t k = 0; ok && k < lead.v.size(); ++k) {
                        LaurentPoly expect = lead.v[k];
                        expect *= ci;
                        ok = scaled_table.front().v[k] == expect;
                    }
                    o.require(ok, std::string(spec) + ": homogeneity fails for c=" + std::to_string(c));
                    ++probes;
                }
            }
        }
    }
    if (o.pass) {
        o.note = std::to_string(pairs) + " root pairs, " + std::to_string(probes) + " homogeneity probes";
    }
    return o;
}

template <typename B, typename Gen>
RootElementWord<TruncSeries<B>> random_loop_word(const RelativeGrading &rg, std::mt19937_64 &rng, int N, const B &base,
                                                  Gen &&coeff)
{
    std::uniform_int_distribution<std::size_t> pick(0, rg.phi.size() - 1);
    std::uniform_int_distribution<int> length(1, 4), start(-2, 0);
    std::vector<std::pair<Root, int>> shape;
    int depth = 0;
    const int letters = length(rng);
    for (int i = 0; i < letters; ++i) {
        shape.emplace_back(rg.phi[pick(rng)], start(rng));
        depth += static_cast<int>(nilpotency_bound(rg, shape.back().first)) * -shape.back().second;
    }
    const int P = N + 4 * depth + 1;
    RootElementWord<TruncSeries<B>> word{ScalarRing::laurent_series, {}};
    for (const auto &[a, lo] : shape) {
        word.letters.push_back({a, random_series_parameter(rg, a, lo, lo + 3, P, coeff, base)});
    }
    return word;
}

template <typename B>
void check_factorization(Outcome &o, const RelativeGrading &rg, const RootElementWord<TruncSeries<B>> &word,
                         const B &base, int N)
{
    const auto f = factor_loop_series(rg, word, N);
    std::string why;
    o.require(verify_factorization(rg, word, f, base, &why), "congruence: " + why);
    o.require(f.g1.ring == ScalarRing::power_series, "g1 is not over A[[t]]");
    o.require(f.g2.ring == ScalarRing::laurent_polynomial, "g2 is not over A[t,t^-1]");
    for (const auto &l : f.g1.letters) {
        for (const auto &x : l.v) {
            o.require(x.is_zero() || x.valuation() >= 0, "g1 has a negative valuation");
        }
    }
    for (const auto &l : f.g2.letters) {
        for (const auto &x : l.v) {
            const auto &c = x.coeffs();
            for (std::size_t k = 0; k < c.size(); ++k) {
                o.require(is_zero(c[k]) || x.valuation() + static_cast<int>(k) < f.cut,
                          "g2 has terms at or beyond the cut");
            }
        }
    }
}

Outcome loop_factorization()
{
    Outcome o;
    const int N = 8;
    const auto rg = grading("finite_a2.spec");
    std::mt19937_64 rng(707);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = random_loop_word(rg, rng, N, Rational(0), [&] { return Rational(c(rng)); });
        check_factorization(o, rg, w, Rational(0), N);
    }
    const LaurentPoly base(1);
    for (int trial = 0; trial < 25; ++trial) {
        const auto w = random_loop_word(rg, rng, N, base, [&] { return random_laurent(rng, 1); });
        check_factorization(o, rg, w, base, N);
    }
    if (o.pass) {
        o.note = "100 words over Q((t)), 25 over Q[x^-1,x]((t)), N=8";
    }
    return o;
}

Outcome depth_bound()
{
    Outcome o;
    const auto rg = grading("finite_a2.spec");
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto gen = [&] { return Rational(coeff(rng)); };
    unsigned samples = 0;
    std::size_t root = 0;
    for (int n : {0, 1, 2}) {
        for (int M : {1, 2}) {
            const Root a = rg.phi.at(root++ % rg.phi.size());
            std::vector<Rational> u(rg.algebra.size(), Rational(0));
            u[rg.root_space(a).at(0)] = Rational(coeff(rng) == 0 ? 1 : 2);
            const int N = 3 * (M + static_cast<int>(rg.phi.size()) * n);
            const auto v = depth_conjugation_check(rg, a, n, u, N, M, 50, rng, gen, Rational(0));
            o.require(v.bound_holds, "bound does not hold for n=" + std::to_string(n));
            o.require(v.pass, "n=" + std::to_string(n) + " M=" + std::to_string(M) + ": " + v.witness);
            samples += v.samples;
        }
    }
    if (o.pass) {
        o.note = std::to_string(samples) + " samples over n in {0,1,2}, M in {1,2}";
    }
    return o;
}

Outcome cocycle_level()
{
    Outcome o;
    unsigned configs = 0, galois = 0, twists = 0;
    std::vector<std::string> names;
    for (const auto &entry : std::filesystem::directory_iterator(fixtures)) {
        if (entry.path().extension() == ".cfg") {
            names.push_back(entry.path().filename().string());
        }
    }
    std::sort(names.begin(), names.end());
    for (const auto &name : names) {
        const std::string text = read(name);
        const auto config = parse_cocycle_config(text);
        const CoverGroup product = product_cover(config.loop);
        if (product.order() > 48 || config.coeff.order() > 8) {
            continue;
        }
        ++configs;
        galois += config.loop.galois().order() > 1;
        const auto lcoeff = config.coefficients(config.loop);
        const auto pcoeff = config.coefficients(product);
        const auto base = inf_res_sequence(product, pcoeff);
        o.require(base.pass, name + ": " + base.str());
        for (const auto &eta : all_cocycles(config.loop, lcoeff)) {
            const auto [e1, e2] = loop_pullbacks(config.loop, product, eta);
            const auto rep = inf_res_sequence(product, twisted(product, pcoeff, e2));
            o.require(rep.pass, name + ": twisted " + rep.str());
            const auto d = diagonal_argument(product, pcoeff, e1, e2);
            o.require(d.success && d.d >= 1 && d.d <= config.loop.m(), name + ": diagonal " + d.str());
            ++twists;
        }
    }
    o.require(configs >= 6, "fewer than 6 configurations");
    o.require(galois >= 1, "no configuration with a Galois action");
    if (o.pass) {
        o.note = std::to_string(configs) + " configurations (" + std::to_string(galois) + " with Galois action), "
                 + std::to_string(twists) + " loop cocycles";
    }
    return o;
}

Outcome determinism()
{
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "loopk_acceptance";
    std::filesystem::create_directories(dir);
    auto run = [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return std::make_pair(code, out.str());
    };
    const std::string a2 = fixtures + "/finite_a2.spec";
    const std::string word = (dir / "word.txt").string();
    const auto w = run({"--seed", "2024", "random-word", "--algebra", a2, "--letters", "4"});
    std::ofstream(word) << w.second;
    const std::vector<std::vector<std::string>> commands{
        {"--seed", "2024", "random-word", "--algebra", a2, "--letters", "4"},
        {"--seed", "2024", "factor", "--algebra", a2, word},
        {"--seed", "2024", "--format", "json", "factor", "--algebra", a2, word},
        {"algebra", "build", "G", "2"},
        {"multiloop", fixtures + "/quaternion.spec"},
        {"lietorus-check", fixtures + "/sl3_flip.spec"},
        {"cocycle", "enumerate", fixtures + "/m2_klein_swap.cfg"},
        {"cocycle", "exactness", fixtures + "/m3_conj_z3.cfg"},
        {"cocycle", "diagonal", fixtures + "/m4_conj_d4.cfg"},
    };
    for (const auto &c : commands) {
        const auto first = run(c), second = run(c);
        o.require(first.first == second.first && first.second == second.second && !first.second.empty(),
                  "bundles differ for " + c.back());
    }
    if (o.pass) {
        o.note = std::to_string(commands.size()) + " commands reproduced byte for byte";
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"chevalley integrity", chevalley_integrity},
        {"automorphism property", automorphisms},
        {"multiloop grading", multiloop_grading},
        {"lie torus verdicts", lie_torus_verdicts},
        {"unipotent factorization roundtrip", unipotent_roundtrip},
        {"commutator formula", commutator_formula},
        {"loop factorization engine", loop_factorization},
        {"depth bound", depth_bound},
        {"cocycle level", cocycle_level},
        {"determinism", determinism},
    };
    const std::vector<double> limits{60, 0, 0, 0, 120, 0, 600, 0, 600, 0};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (limits[i] > 0 && secs >= limits[i]) {
            o.require(false, "runtime over limit");
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << std::left
                  << std::setw(36) << criteria[i].first << std::right << std::fixed << std::setprecision(2)
                  << std::setw(8) << secs << "s  " << o.note << "\n";
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
