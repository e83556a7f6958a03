#include <loopk/cocycle.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <loopk/errors.hpp>

namespace loopk
{

namespace
{

std::vector<unsigned> compose(const std::vector<unsigned> &p, const std::vector<unsigned> &q)
{
    // (p o q)(i) = p(q(i))
    std::vector<unsigned> r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        r[i] = p[q[i]];
    }
    return r;
}

std::vector<unsigned> identity_perm(unsigned n)
{
    std::vector<unsigned> r(n);
    std::iota(r.begin(), r.end(), 0u);
    return r;
}

std::string join(const std::vector<unsigned> &v)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? " " : "") << v[i];
    }
    return os.str();
}

unsigned ipow(unsigned b, unsigned e)
{
    unsigned r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

void check_budget(const CoverGroup &cover, const CoefficientGroup &coeff, const CocycleBudget &budget)
{
    if (cover.order() > budget.max_group) {
        throw budget_exceeded("cocycle enumeration: |Gamma| = " + std::to_string(cover.order()) + " exceeds budget "
                              + std::to_string(budget.max_group));
    }
    if (coeff.group.order() > budget.max_coeff) {
        throw budget_exceeded("cocycle enumeration: |A| = " + std::to_string(coeff.group.order()) + " exceeds budget "
                              + std::to_string(budget.max_coeff));
    }
}

bool acts_trivially(const CoefficientGroup &coeff, const std::vector<unsigned> &elements)
{
    const auto id = identity_perm(coeff.group.order());
    return std::all_of(elements.begin(), elements.end(), [&](unsigned g) { return coeff.act[g] == id; });
}

} // namespace

FiniteGroup::FiniteGroup() : m_table{{0}}, m_inv{0} {}

FiniteGroup::FiniteGroup(std::vector<std::vector<unsigned>> table) : m_table(std::move(table))
{
    const unsigned n = order();
    if (n == 0) {
        throw invalid_input("group: empty table");
    }
    for (unsigned a = 0; a < n; ++a) {
        if (m_table[a].size() != n) {
            throw invalid_input("group: table is not square");
        }
        for (unsigned b = 0; b < n; ++b) {
            if (m_table[a][b] >= n) {
                throw invalid_input("group: product out of range");
            }
        }
        if (m_table[0][a] != a || m_table[a][0] != a) {
            throw invalid_input("group: element 0 is not the identity");
        }
    }
    m_inv.assign(n, n);
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < n; ++b) {
            if (m_table[a][b] == 0) {
                m_inv[a] = b;
            }
        }
        if (m_inv[a] == n || m_table[m_inv[a]][a] != 0) {
            throw invalid_input("group: element " + std::to_string(a) + " has no inverse");
        }
    }
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < n; ++b) {
            for (unsigned c = 0; c < n; ++c) {
                if (m_table[m_table[a][b]][c] != m_table[a][m_table[b][c]]) {
                    throw invalid_input("group: not associative at (" + std::to_string(a) + ", " + std::to_string(b)
                                        + ", " + std::to_string(c) + ")");
                }
            }
        }
    }
}

FiniteGroup FiniteGroup::cyclic(unsigned k)
{
    if (k == 0) {
        throw invalid_input("cyclic group of order 0");
    }
    std::vector<std::vector<unsigned>> t(k, std::vector<unsigned>(k));
    for (unsigned a = 0; a < k; ++a) {
        for (unsigned b = 0; b < k; ++b) {
            t[a][b] = (a + b) % k;
        }
    }
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::dihedral(unsigned k)
{
    if (k < 2) {
        throw invalid_input("dihedral group needs k >= 2");
    }
    std::vector<unsigned> rot(k), ref(k);
    for (unsigned i = 0; i < k; ++i) {
        rot[i] = (i + 1) % k;
        ref[i] = (k - i) % k;
    }
    return from_permutations({rot, ref});
}

FiniteGroup FiniteGroup::quaternion()
{
    // left multiplication on {1, i, j, k, -1, -i, -j, -k}
    const std::vector<unsigned> i{1, 4, 3, 6, 5, 0, 7, 2};
    const std::vector<unsigned> j{2, 7, 4, 1, 6, 3, 0, 5};
    return from_permutations({i, j});
}

FiniteGroup FiniteGroup::symmetric(unsigned k)
{
    if (k == 0 || k > 5) {
        throw invalid_input("symmetric group supported for 1 <= k <= 5");
    }
    if (k == 1) {
        return FiniteGroup();
    }
    std::vector<unsigned> swap = identity_perm(k), cycle(k);
    std::swap(swap[0], swap[1]);
    for (unsigned i = 0; i < k; ++i) {
        cycle[i] = (i + 1) % k;
    }
    return from_permutations({swap, cycle});
}

FiniteGroup FiniteGroup::product(const FiniteGroup &a, const FiniteGroup &b)
{
    const unsigned na = a.order(), nb = b.order();
    std::vector<std::vector<unsigned>> t(na * nb, std::vector<unsigned>(na * nb));
    for (unsigned x = 0; x < na * nb; ++x) {
        for (unsigned y = 0; y < na * nb; ++y) {
            t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
        }
    }
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<unsigned>> &gens)
{
    if (gens.empty()) {
        return FiniteGroup();
    }
    const unsigned d = static_cast<unsigned>(gens[0].size());
    for (const auto &g : gens) {
        auto s = g;
        std::sort(s.begin(), s.end());
        if (g.size() != d || s != identity_perm(d)) {
            throw invalid_input("group: generator is not a permutation of the same set");
        }
    }
    std::vector<std::vector<unsigned>> elems{identity_perm(d)};
    std::map<std::vector<unsigned>, unsigned> index{{elems[0], 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto &g : gens) {
            auto p = compose(elems[i], g);
            if (!index.count(p)) {
                index.emplace(p, static_cast<unsigned>(elems.size()));
                elems.push_back(std::move(p));
            }
        }
    }
    const auto n = static_cast<unsigned>(elems.size());
    std::vector<std::vector<unsigned>> t(n, std::vector<unsigned>(n));
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < n; ++b) {
            t[a][b] = index.at(compose(elems[a], elems[b]));
        }
    }
    return FiniteGroup(std::move(t));
}

unsigned FiniteGroup::element_order(unsigned a) const
{
    // x = a^k throughout
    unsigned k = 1;
    for (unsigned x = a; x != 0; x = mul(x, a)) {
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const
{
    for (unsigned a = 0; a < order(); ++a) {
        for (unsigned b = 0; b < order(); ++b) {
            if (mul(a, b) != mul(b, a)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<unsigned> FiniteGroup::generators() const
{
    std::vector<unsigned> gens;
    std::vector<bool> in(order(), false);
    in[0] = true;
    for (unsigned c = 1; c < order(); ++c) {
        if (in[c]) {
            continue;
        }
        gens.push_back(c);
        std::vector<unsigned> members{0};
        std::fill(in.begin(), in.end(), false);
        in[0] = true;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (unsigned g : gens) {
                const unsigned x = mul(members[i], g);
                if (!in[x]) {
                    in[x] = true;
                    members.push_back(x);
                }
            }
        }
    }
    return gens;
}

bool FiniteGroup::is_automorphism(const std::vector<unsigned> &perm) const
{
    if (perm.size() != order()) {
        return false;
    }
    auto s = perm;
    std::sort(s.begin(), s.end());
    if (s != identity_perm(order())) {
        return false;
    }
    for (unsigned a = 0; a < order(); ++a) {
        for (unsigned b = 0; b < order(); ++b) {
            if (perm[mul(a, b)] != mul(perm[a], perm[b])) {
                return false;
            }
        }
    }
    return true;
}

std::vector<unsigned> FiniteGroup::inner(unsigned s) const
{
    std::vector<unsigned> r(order());
    for (unsigned x = 0; x < order(); ++x) {
        r[x] = mul(mul(s, x), inv(s));
    }
    return r;
}

std::string FiniteGroup::str() const
{
    std::ostringstream os;
    os << "group " << order() << "\n";
    for (const auto &row : m_table) {
        os << join(row) << "\n";
    }
    os << "end\n";
    return os.str();
}

FiniteGroup FiniteGroup::parse(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string word;
    unsigned n = 0;
    if (!(in >> word) || word != "group" || !(in >> n) || n == 0) {
        throw parse_error("expected 'group <order>'", 1, 1);
    }
    std::vector<std::vector<unsigned>> t(n, std::vector<unsigned>(n));
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < n; ++b) {
            if (!(in >> t[a][b])) {
                throw parse_error("table row " + std::to_string(a) + " is short", static_cast<int>(a) + 2, 1);
            }
        }
    }
    if (!(in >> word) || word != "end") {
        throw parse_error("expected 'end'", static_cast<int>(n) + 2, 1);
    }
    return FiniteGroup(std::move(t));
}

CoverGroup::CoverGroup(unsigned m, unsigned n, FiniteGroup galois, std::vector<unsigned> chi)
    : CoverGroup(m, n, std::move(galois), std::move(chi), n)
{
}

CoverGroup::CoverGroup(unsigned m, unsigned n, FiniteGroup galois, std::vector<unsigned> chi, unsigned split)
    : m_m(m), m_n(n), m_split(split), m_galois(std::move(galois)), m_chi(std::move(chi))
{
    if (m == 0) {
        throw invalid_input("cover: m must be positive");
    }
    if (split > n) {
        throw invalid_input("cover: split exceeds the number of coordinates");
    }
    const unsigned k = m_galois.order();
    if (m_chi.size() != k) {
        throw invalid_input("cover: chi needs one value per Galois element");
    }
    for (unsigned g = 0; g < k; ++g) {
        m_chi[g] %= m;
        if (std::gcd(m_chi[g], m) != 1 && m > 1) {
            throw invalid_input("cover: chi(" + std::to_string(g) + ") is not a unit mod " + std::to_string(m));
        }
        for (unsigned h = 0; h < k; ++h) {
            if ((m_chi[g] * m_chi[h]) % m != m_chi[m_galois.mul(g, h)] % m) {
                throw invalid_input("cover: chi is not a homomorphism");
            }
        }
    }
    const unsigned translations = ipow(m, n);
    const unsigned size = translations * k;
    std::vector<std::vector<unsigned>> t(size, std::vector<unsigned>(size));
    for (unsigned a = 0; a < size; ++a) {
        const auto [x, g] = decode(a);
        for (unsigned b = 0; b < size; ++b) {
            auto [y, h] = decode(b);
            for (unsigned i = 0; i < n; ++i) {
                y[i] = (x[i] + m_chi[g] * y[i]) % m;
            }
            t[a][b] = encode(y, m_galois.mul(g, h));
        }
    }
    m_group = FiniteGroup(std::move(t));
}

unsigned CoverGroup::encode(const std::vector<unsigned> &x, unsigned g) const
{
    unsigned idx = 0;
    for (unsigned i = m_n; i-- > 0;) {
        idx = idx * m_m + x[i] % m_m;
    }
    return idx * m_galois.order() + g;
}

std::pair<std::vector<unsigned>, unsigned> CoverGroup::decode(unsigned e) const
{
    const unsigned k = m_galois.order();
    std::vector<unsigned> x(m_n);
    unsigned rest = e / k;
    for (unsigned i = 0; i < m_n; ++i) {
        x[i] = rest % m_m;
        rest /= m_m;
    }
    return {x, e % k};
}

CoverGroup CoverGroup::n_part() const
{
    return CoverGroup(m_m, m_split, m_galois, m_chi);
}

CoverGroup CoverGroup::m_part() const
{
    return CoverGroup(m_m, m_n - m_split, FiniteGroup(), {1});
}

std::vector<unsigned> CoverGroup::n_inclusion() const
{
    const CoverGroup q = n_part();
    std::vector<unsigned> r(q.order());
    for (unsigned e = 0; e < q.order(); ++e) {
        auto [x, g] = q.decode(e);
        x.resize(m_n, 0);
        r[e] = encode(x, g);
    }
    return r;
}

std::vector<unsigned> CoverGroup::m_inclusion() const
{
    const CoverGroup q = m_part();
    std::vector<unsigned> r(q.order());
    for (unsigned e = 0; e < q.order(); ++e) {
        const auto [y, g] = q.decode(e);
        std::vector<unsigned> x(m_split, 0);
        x.insert(x.end(), y.begin(), y.end());
        r[e] = encode(x, 0);
    }
    return r;
}

std::vector<unsigned> CoverGroup::n_projection() const
{
    const CoverGroup q = n_part();
    std::vector<unsigned> r(order());
    for (unsigned e = 0; e < order(); ++e) {
        auto [x, g] = decode(e);
        x.resize(m_split);
        r[e] = q.encode(x, g);
    }
    return r;
}

std::string CoverGroup::str() const
{
    std::ostringstream os;
    os << "cover m " << m_m << " n " << m_n << " split " << m_split << " chi " << join(m_chi) << "\n";
    os << m_galois.str();
    return os.str();
}

void CoefficientGroup::validate(const CoverGroup &cover) const
{
    if (act.size() != cover.order()) {
        throw invalid_input("coefficients: action needs one automorphism per group element");
    }
    for (unsigned g = 0; g < cover.order(); ++g) {
        if (!group.is_automorphism(act[g])) {
            throw invalid_input("coefficients: element " + std::to_string(g) + " does not act by an automorphism");
        }
    }
    if (act[0] != identity_perm(group.order())) {
        throw invalid_input("coefficients: identity acts nontrivially");
    }
    for (unsigned g = 0; g < cover.order(); ++g) {
        for (unsigned h = 0; h < cover.order(); ++h) {
            if (act[cover.group().mul(g, h)] != compose(act[g], act[h])) {
                throw invalid_input("coefficients: action is not a homomorphism at (" + std::to_string(g) + ", "
                                    + std::to_string(h) + ")");
            }
        }
    }
}

CoefficientGroup CoefficientGroup::from_galois(const CoverGroup &cover, FiniteGroup a,
                                               const std::vector<std::vector<unsigned>> &galois_act)
{
    CoefficientGroup c{std::move(a), {}};
    if (galois_act.size() != cover.galois().order()) {
        throw invalid_input("coefficients: one automorphism per Galois element expected");
    }
    for (unsigned e = 0; e < cover.order(); ++e) {
        c.act.push_back(galois_act[cover.decode(e).second]);
    }
    c.validate(cover);
    return c;
}

CoefficientGroup CoefficientGroup::trivial_action(const CoverGroup &cover, FiniteGroup a)
{
    const unsigned n = a.order();
    return from_galois(cover, std::move(a),
                       std::vector<std::vector<unsigned>>(cover.galois().order(), identity_perm(n)));
}

CoefficientGroup CoefficientGroup::restricted(const std::vector<unsigned> &inclusion) const
{
    CoefficientGroup c{group, {}};
    for (unsigned e : inclusion) {
        c.act.push_back(act[e]);
    }
    return c;
}

std::string Cocycle::str() const
{
    return "cocycle " + join(values);
}

bool is_cocycle(const CoverGroup &cover, const CoefficientGroup &a, const Cocycle &z,
                std::pair<unsigned, unsigned> *witness)
{
    const auto &G = cover.group();
    if (z.values.size() != G.order()) {
        if (witness) {
            *witness = {0, 0};
        }
        return false;
    }
    for (unsigned g = 0; g < G.order(); ++g) {
        for (unsigned h = 0; h < G.order(); ++h) {
            if (z.values[G.mul(g, h)] != a.group.mul(z.values[g], a.apply(g, z.values[h]))) {
                if (witness) {
                    *witness = {g, h};
                }
                return false;
            }
        }
    }
    return true;
}

std::optional<unsigned> cohomologous(const CoverGroup &cover, const CoefficientGroup &a, const Cocycle &z1,
                                     const Cocycle &z2)
{
    const auto &A = a.group;
    for (unsigned x = 0; x < A.order(); ++x) {
        bool ok = true;
        for (unsigned g = 0; g < cover.order() && ok; ++g) {
            ok = z2.values[g] == A.mul(A.mul(A.inv(x), z1.values[g]), a.apply(g, x));
        }
        if (ok) {
            return x;
        }
    }
    return std::nullopt;
}

Cocycle trivial_cocycle(const CoverGroup &cover)
{
    return Cocycle{std::vector<unsigned>(cover.order(), 0)};
}

Cocycle coboundary(const CoverGroup &cover, const CoefficientGroup &coeff, unsigned a)
{
    Cocycle z{std::vector<unsigned>(cover.order())};
    for (unsigned g = 0; g < cover.order(); ++g) {
        z.values[g] = coeff.group.mul(coeff.group.inv(a), coeff.apply(g, a));
    }
    return z;
}

Cocycle canonical_representative(const CoverGroup &cover, const CoefficientGroup &coeff, const Cocycle &z)
{
    const auto &A = coeff.group;
    Cocycle best = z;
    Cocycle cur{std::vector<unsigned>(cover.order())};
    for (unsigned x = 1; x < A.order(); ++x) {
        for (unsigned g = 0; g < cover.order(); ++g) {
            cur.values[g] = A.mul(A.mul(A.inv(x), z.values[g]), coeff.apply(g, x));
        }
        if (cur < best) {
            best = cur;
        }
    }
    return best;
}

std::string H1Report::str() const
{
    std::ostringstream os;
    os << "h1 cocycles " << cocycles << " classes " << classes.size() << "\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        os << "class " << i << ' ' << classes[i].str() << "\n";
    }
    return os.str();
}

std::vector<Cocycle> all_cocycles(const CoverGroup &cover, const CoefficientGroup &coeff,
                                  const CocycleBudget &budget)
{
    check_budget(cover, coeff, budget);
    const auto &G = cover.group();
    const auto &A = coeff.group;
    const auto gens = G.generators();
    const unsigned na = A.order();
    unsigned long long total = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        total *= na;
    }
    // Values on the generators determine z along the Cayley graph; each
    // candidate is propagated and then checked on all pairs.
    auto attempt = [&](unsigned long long code, Cocycle &z) {
        const unsigned none = na;
        std::fill(z.values.begin(), z.values.end(), none);
        std::vector<unsigned> on_gen(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) {
            on_gen[i] = static_cast<unsigned>(code % na);
            code /= na;
        }
        z.values[0] = 0;
        std::vector<unsigned> queue{0};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const unsigned g = queue[q];
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const unsigned h = G.mul(g, gens[i]);
                const unsigned v = A.mul(z.values[g], coeff.apply(g, on_gen[i]));
                if (z.values[h] == none) {
                    z.values[h] = v;
                    queue.push_back(h);
                } else if (z.values[h] != v) {
                    return false;
                }
            }
        }
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (z.values[gens[i]] != on_gen[i]) {
                return false;
            }
        }
        return is_cocycle(cover, coeff, z);
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    std::vector<std::vector<Cocycle>> found(workers);
    auto run = [&](unsigned w) {
        Cocycle z{std::vector<unsigned>(G.order())};
        for (unsigned long long code = w; code < total; code += workers) {
            if (attempt(code, z)) {
                found[w].push_back(z);
            }
        }
    };
    if (workers == 1 || total < 64) {
        found.assign(1, {});
        Cocycle z{std::vector<unsigned>(G.order())};
        for (unsigned long long code = 0; code < total; ++code) {
            if (attempt(code, z)) {
                found[0].push_back(z);
            }
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(run, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    std::vector<Cocycle> out;
    for (auto &f : found) {
        out.insert(out.end(), f.begin(), f.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

H1Report h1_enumerate(const CoverGroup &cover, const CoefficientGroup &coeff, const CocycleBudget &budget)
{
    const auto all = all_cocycles(cover, coeff, budget);
    std::set<Cocycle> reps;
    for (const auto &z : all) {
        reps.insert(canonical_representative(cover, coeff, z));
    }
    return H1Report{std::vector<Cocycle>(reps.begin(), reps.end()), all.size()};
}

CoefficientGroup twisted(const CoverGroup &cover, const CoefficientGroup &coeff, const Cocycle &c)
{
    const auto &A = coeff.group;
    CoefficientGroup t{A, std::vector<std::vector<unsigned>>(cover.order(), std::vector<unsigned>(A.order()))};
    for (unsigned g = 0; g < cover.order(); ++g) {
        for (unsigned a = 0; a < A.order(); ++a) {
            t.act[g][a] = A.mul(A.mul(c.values[g], coeff.apply(g, a)), A.inv(c.values[g]));
        }
    }
    return t;
}

Cocycle twist_difference(const CoefficientGroup &coeff, const Cocycle &z, const Cocycle &c)
{
    Cocycle r{std::vector<unsigned>(z.values.size())};
    for (std::size_t g = 0; g < z.values.size(); ++g) {
        r.values[g] = coeff.group.mul(z.values[g], coeff.group.inv(c.values[g]));
    }
    return r;
}

Cocycle pulled_back(const Cocycle &z, const std::vector<unsigned> &map)
{
    Cocycle r{std::vector<unsigned>(map.size())};
    for (std::size_t e = 0; e < map.size(); ++e) {
        r.values[e] = z.values[map[e]];
    }
    return r;
}

Cocycle power_pullback(const CoverGroup &cover, const Cocycle &z, unsigned d)
{
    std::vector<unsigned> map(cover.order());
    for (unsigned e = 0; e < cover.order(); ++e) {
        auto [x, g] = cover.decode(e);
        for (unsigned i = cover.split(); i < cover.n(); ++i) {
            x[i] = (x[i] * d) % cover.m();
        }
        map[e] = cover.encode(x, g);
    }
    return pulled_back(z, map);
}

CoverGroup product_cover(const CoverGroup &loop)
{
    return CoverGroup(loop.m(), 2 * loop.n(), loop.galois(), loop.chi(), loop.n());
}

std::pair<Cocycle, Cocycle> loop_pullbacks(const CoverGroup &loop, const CoverGroup &product, const Cocycle &eta)
{
    const unsigned n = loop.n();
    if (product.n() != 2 * n || product.split() != n || product.m() != loop.m()
        || !(product.galois() == loop.galois())) {
        throw invalid_input("loop_pullbacks: product cover does not match the loop cover");
    }
    std::vector<unsigned> first(product.order()), second(product.order());
    for (unsigned e = 0; e < product.order(); ++e) {
        const auto [x, g] = product.decode(e);
        std::vector<unsigned> z(n), w(n);
        for (unsigned i = 0; i < n; ++i) {
            z[i] = (x[i] + x[n + i]) % loop.m();
            w[i] = x[i];
        }
        first[e] = loop.encode(z, g);
        second[e] = loop.encode(w, g);
    }
    return {pulled_back(eta, first), pulled_back(eta, second)};
}

std::string InfResReport::str() const
{
    std::ostringstream os;
    os << "inf-res " << (pass ? "pass" : "fail") << " quotient-classes " << quotient_classes << " classes "
       << total_classes << " kernel " << kernel_classes << " inflated " << inflated_classes << "\n";
    if (!detail.empty()) {
        os << "detail " << detail << "\n";
    }
    return os.str();
}

InfResReport inf_res_sequence(const CoverGroup &cover, const CoefficientGroup &coeff, const CocycleBudget &budget)
{
    const auto m_incl = cover.m_inclusion();
    if (!acts_trivially(coeff, m_incl)) {
        throw invalid_input("inf_res_sequence: M does not act trivially on the coefficients");
    }
    const CoverGroup quotient = cover.n_part();
    const CoverGroup mgroup = cover.m_part();
    const auto proj = cover.n_projection();
    const auto n_incl = cover.n_inclusion();
    const CoefficientGroup qcoeff = coeff.restricted(n_incl);
    const CoefficientGroup mcoeff = coeff.restricted(m_incl);
    // the action factors through the projection
    for (unsigned e = 0; e < cover.order(); ++e) {
        if (coeff.act[e] != qcoeff.act[proj[e]]) {
            throw invalid_input("inf_res_sequence: action does not factor through N x| G0");
        }
    }
    InfResReport rep;
    const auto qh1 = h1_enumerate(quotient, qcoeff, budget);
    const auto h1 = h1_enumerate(cover, coeff, budget);
    rep.quotient_classes = qh1.classes.size();
    rep.total_classes = h1.classes.size();
    const Cocycle mtrivial = trivial_cocycle(mgroup);
    std::set<Cocycle> kernel;
    for (const auto &c : h1.classes) {
        if (cohomologous(mgroup, mcoeff, pulled_back(c, m_incl), mtrivial)) {
            kernel.insert(c);
        }
    }
    rep.kernel_classes = kernel.size();
    std::set<Cocycle> image;
    for (const auto &theta : qh1.classes) {
        const Cocycle inf = pulled_back(theta, proj);
        if (!is_cocycle(cover, coeff, inf)) {
            rep.pass = false;
            rep.detail = "inflation of " + theta.str() + " is not a cocycle";
            return rep;
        }
        const Cocycle rep_class = canonical_representative(cover, coeff, inf);
        if (!image.insert(rep_class).second) {
            rep.pass = false;
            rep.detail = "inflation is not injective at " + theta.str();
        }
    }
    rep.inflated_classes = image.size();
    if (rep.pass && image != kernel) {
        rep.pass = false;
        rep.detail = "image of inflation differs from the kernel of restriction";
    }
    return rep;
}

std::string DiagonalResult::str() const
{
    std::ostringstream os;
    os << "diagonal " << (success ? "pass" : "fail") << " d " << d << " base eta" << base << "\n";
    os << "xi " << xi.str() << "\n";
    os << "theta " << theta.str() << (theta_trivial ? " trivial" : " nontrivial") << "\n";
    os << "witness " << witness << "\n";
    if (!detail.empty()) {
        os << "detail " << detail << "\n";
    }
    return os.str();
}

DiagonalResult diagonal_argument(const CoverGroup &cover, const CoefficientGroup &coeff, const Cocycle &eta1,
                                 const Cocycle &eta2)
{
    for (const auto *eta : {&eta1, &eta2}) {
        std::pair<unsigned, unsigned> w;
        if (!is_cocycle(cover, coeff, *eta, &w)) {
            throw invalid_input("diagonal_argument: input is not a cocycle at (" + std::to_string(w.first) + ", "
                                + std::to_string(w.second) + ")");
        }
    }
    const auto n_incl = cover.n_inclusion();
    if (pulled_back(eta1, n_incl) != pulled_back(eta2, n_incl)) {
        throw invalid_input("diagonal_argument: the cocycles differ on the diagonal copy");
    }
    const auto m_incl = cover.m_inclusion();
    DiagonalResult res;
    const Cocycle *base = nullptr, *other = nullptr;
    CoefficientGroup a1;
    for (auto [b, o, idx] : {std::tuple{&eta1, &eta2, 1u}, std::tuple{&eta2, &eta1, 2u}}) {
        CoefficientGroup t = twisted(cover, coeff, *b);
        if (acts_trivially(t, m_incl)) {
            base = b;
            other = o;
            res.base = idx;
            a1 = std::move(t);
            break;
        }
    }
    if (!base) {
        throw invalid_input("diagonal_argument: M acts nontrivially on both twisted coefficient groups");
    }
    res.xi = twist_difference(coeff, *other, *base);
    std::pair<unsigned, unsigned> w;
    if (!is_cocycle(cover, a1, res.xi, &w)) {
        res.detail = "twisted class is not a cocycle";
        return res;
    }
    const auto proj = cover.n_projection();
    const CoverGroup mgroup = cover.m_part();
    const CoefficientGroup mcoeff = a1.restricted(m_incl);
    for (unsigned d = 1; d <= std::max(1u, cover.m()); ++d) {
        const Cocycle xd = power_pullback(cover, res.xi, d);
        if (!cohomologous(mgroup, mcoeff, pulled_back(xd, m_incl), trivial_cocycle(mgroup))) {
            continue;
        }
        // xd lies in the kernel of restriction, hence comes from N x| G0
        const Cocycle theta = pulled_back(xd, n_incl);
        const auto a = cohomologous(cover, a1, pulled_back(theta, proj), xd);
        if (!a) {
            continue;
        }
        res.success = true;
        res.d = d;
        res.theta = theta;
        res.witness = *a;
        res.theta_trivial = cohomologous(cover.n_part(), a1.restricted(n_incl), theta,
                                         trivial_cocycle(cover.n_part()))
                                .has_value();
        return res;
    }
    res.detail = "no d <= m makes the twisted class inflated";
    return res;
}

CoefficientGroup CocycleConfig::coefficients(const CoverGroup &cover) const
{
    std::vector<std::vector<unsigned>> gal;
    auto p = identity_perm(coeff.order());
    for (unsigned g = 0; g < cover.galois().order(); ++g) {
        gal.push_back(p);
        p = compose(generator_action, p);
    }
    return CoefficientGroup::from_galois(cover, coeff, gal);
}

std::string CocycleConfig::str() const
{
    std::ostringstream os;
    os << "config " << label << "\n" << loop.str() << "coefficients\n" << coeff.str();
    os << "action " << join(generator_action) << "\n";
    return os.str();
}

CocycleConfig parse_cocycle_config(std::string_view text)
{
    std::istringstream in{std::string(text)};
    unsigned m = 0, n = 0, k = 1, chi = 1;
    bool have_cover = false, have_coeff = false;
    FiniteGroup a;
    std::string coeff_label, action_label = "identity";
    std::vector<unsigned> action;
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const std::string line = raw.substr(0, raw.find('#'));
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) {
            continue;
        }
        auto fail = [&](const std::string &why) { return parse_error(why, lineno, 1); };
        std::string w1, w2;
        if (key == "cover") {
            if (!(ls >> w1 >> m >> w2 >> n) || w1 != "m" || w2 != "n" || m == 0) {
                throw fail("expected 'cover m <m> n <n>'");
            }
            have_cover = true;
        } else if (key == "galois") {
            if (!(ls >> w1 >> k >> w2 >> chi) || w1 != "cyclic" || w2 != "chi" || k == 0) {
                throw fail("expected 'galois cyclic <k> chi <c>'");
            }
        } else if (key == "coeff") {
            if (!(ls >> w1)) {
                throw fail("expected a coefficient group");
            }
            unsigned param = 0;
            try {
                if (w1 == "cyclic" && ls >> param) {
                    a = FiniteGroup::cyclic(param);
                } else if (w1 == "dihedral" && ls >> param) {
                    a = FiniteGroup::dihedral(param);
                } else if (w1 == "symmetric" && ls >> param) {
                    a = FiniteGroup::symmetric(param);
                } else if (w1 == "quaternion") {
                    a = FiniteGroup::quaternion();
                } else if (w1 == "klein") {
                    a = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
                } else {
                    throw fail("unknown coefficient group '" + w1 + "'");
                }
            } catch (const invalid_input &e) {
                throw fail(e.what());
            }
            coeff_label = w1 + (param ? std::to_string(param) : "");
            have_coeff = true;
        } else if (key == "action") {
            if (!have_coeff) {
                throw fail("action before coeff");
            }
            if (!(ls >> w1)) {
                throw fail("expected an action");
            }
            action_label = w1;
            if (w1 == "identity") {
                action = identity_perm(a.order());
            } else if (w1 == "inverse") {
                if (!a.is_abelian()) {
                    throw fail("inversion is an automorphism only for abelian groups");
                }
                action.clear();
                for (unsigned x = 0; x < a.order(); ++x) {
                    action.push_back(a.inv(x));
                }
            } else if (w1 == "inner") {
                unsigned s = 0;
                if (!(ls >> s) || s >= a.order()) {
                    throw fail("expected 'inner <element>'");
                }
                action = a.inner(s);
                action_label += std::to_string(s);
            } else if (w1 == "perm") {
                action.clear();
                for (unsigned x; ls >> x;) {
                    action.push_back(x);
                }
            } else {
                throw fail("unknown action '" + w1 + "'");
            }
            if (!a.is_automorphism(action)) {
                throw fail("action is not an automorphism of the coefficient group");
            }
        } else {
            throw fail("unknown key '" + key + "'");
        }
    }
    if (!have_cover || !have_coeff) {
        throw parse_error("configuration needs 'cover' and 'coeff' lines", lineno, 1);
    }
    if (action.empty()) {
        action = identity_perm(a.order());
    }
    const FiniteGroup gal = FiniteGroup::cyclic(k);
    std::vector<unsigned> chis;
    unsigned c = 1 % m;
    for (unsigned g = 0; g < k; ++g) {
        chis.push_back(c);
        c = (c * chi) % m;
    }
    std::vector<unsigned> pw = identity_perm(a.order());
    for (unsigned g = 0; g < k; ++g) {
        pw = compose(action, pw);
    }
    if (pw != identity_perm(a.order())) {
        throw parse_error("action order does not divide the Galois order", lineno, 1);
    }
    try {
        CoverGroup loop(m, n, gal, chis);
        std::ostringstream label;
        label << "m" << m << " n" << n << " G0=Z/" << k << " chi" << chi << " A=" << coeff_label << " "
              << action_label;
        return CocycleConfig{std::move(loop), a, action, label.str()};
    } catch (const invalid_input &e) {
        throw parse_error(e.what(), lineno, 1);
    }
}

} // namespace loopk
