#ifndef LOOPK_COCYCLE_HPP
#define LOOPK_COCYCLE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loopk
{

// Finite group given by its multiplication table; element 0 is the identity.
class FiniteGroup
{
public:
    // Trivial group.
    FiniteGroup();
    // Validates closure, identity at 0, inverses and associativity.
    explicit FiniteGroup(std::vector<std::vector<unsigned>> table);

    static FiniteGroup cyclic(unsigned k);
    // Symmetries of a k-gon, order 2k.
    static FiniteGroup dihedral(unsigned k);
    static FiniteGroup quaternion();
    static FiniteGroup symmetric(unsigned k);
    static FiniteGroup product(const FiniteGroup &a, const FiniteGroup &b);
    // Closure of permutations of {0..d-1}; elements ordered by discovery.
    static FiniteGroup from_permutations(const std::vector<std::vector<unsigned>> &gens);

    unsigned order() const
    {
        return static_cast<unsigned>(m_table.size());
    }
    unsigned mul(unsigned a, unsigned b) const
    {
        return m_table[a][b];
    }
    unsigned inv(unsigned a) const
    {
        return m_inv[a];
    }
    unsigned element_order(unsigned a) const;
    bool is_abelian() const;
    // Greedy generating set: repeatedly adds the least element outside the
    // subgroup generated so far.
    std::vector<unsigned> generators() const;
    // Bijective and multiplicative.
    bool is_automorphism(const std::vector<unsigned> &perm) const;
    // x -> s x s^-1
    std::vector<unsigned> inner(unsigned s) const;

    // "group <order>", one table row per line, "end".
    std::string str() const;
    static FiniteGroup parse(std::string_view text);

    friend bool operator==(const FiniteGroup &a, const FiniteGroup &b)
    {
        return a.m_table == b.m_table;
    }

private:
    std::vector<std::vector<unsigned>> m_table;
    std::vector<unsigned> m_inv;
};

// (Z/m)^n x| G0 with G0 acting on Z/m through chi: G0 -> (Z/m)^x, standing
// for the Galois action on roots of unity:
//   (x, g)(y, h) = (x + chi(g) y, g h).
// The first `split` translation coordinates form N and the rest form M.
// Element (x, g) has index (x_0 + m x_1 + ...) |G0| + g.
class CoverGroup
{
public:
    CoverGroup(unsigned m, unsigned n, FiniteGroup galois, std::vector<unsigned> chi);
    CoverGroup(unsigned m, unsigned n, FiniteGroup galois, std::vector<unsigned> chi, unsigned split);

    unsigned m() const
    {
        return m_m;
    }
    unsigned n() const
    {
        return m_n;
    }
    unsigned split() const
    {
        return m_split;
    }
    const FiniteGroup &galois() const
    {
        return m_galois;
    }
    const std::vector<unsigned> &chi() const
    {
        return m_chi;
    }
    const FiniteGroup &group() const
    {
        return m_group;
    }
    unsigned order() const
    {
        return m_group.order();
    }
    unsigned encode(const std::vector<unsigned> &x, unsigned g) const;
    std::pair<std::vector<unsigned>, unsigned> decode(unsigned e) const;

    // N x| G0 and M as cover groups (M with trivial Galois part).
    CoverGroup n_part() const;
    CoverGroup m_part() const;
    // Index maps: N x| G0 -> Gamma, M -> Gamma, Gamma -> N x| G0.
    std::vector<unsigned> n_inclusion() const;
    std::vector<unsigned> m_inclusion() const;
    std::vector<unsigned> n_projection() const;

    // "cover m <m> n <n> split <s> chi <values>" followed by the Galois group.
    std::string str() const;

private:
    unsigned m_m, m_n, m_split;
    FiniteGroup m_galois;
    std::vector<unsigned> m_chi;
    FiniteGroup m_group;
};

// Finite group A with an action of a cover group by automorphisms:
// act[g][a] = g . a.
struct CoefficientGroup
{
    FiniteGroup group;
    std::vector<std::vector<unsigned>> act;

    unsigned apply(unsigned g, unsigned a) const
    {
        return act[g][a];
    }
    // Throws invalid_input naming the first failure.
    void validate(const CoverGroup &cover) const;
    // Translations act trivially; galois_act[g] is the automorphism of g in G0.
    static CoefficientGroup from_galois(const CoverGroup &cover, FiniteGroup a,
                                        const std::vector<std::vector<unsigned>> &galois_act);
    static CoefficientGroup trivial_action(const CoverGroup &cover, FiniteGroup a);
    // Action pulled back along an index map into the cover group.
    CoefficientGroup restricted(const std::vector<unsigned> &inclusion) const;
};

struct Cocycle
{
    std::vector<unsigned> values;

    // "cocycle v_0 v_1 ..."
    std::string str() const;
    friend bool operator==(const Cocycle &a, const Cocycle &b)
    {
        return a.values == b.values;
    }
    friend bool operator<(const Cocycle &a, const Cocycle &b)
    {
        return a.values < b.values;
    }
};

struct CocycleBudget
{
    unsigned max_group = 96;
    unsigned max_coeff = 24;
};

// z(gh) = z(g) (g . z(h)) for all pairs; the first violating pair otherwise.
bool is_cocycle(const CoverGroup &cover, const CoefficientGroup &a, const Cocycle &z,
                std::pair<unsigned, unsigned> *witness = nullptr);

// Some a with z2(g) = a^-1 z1(g) (g . a) for every g.
std::optional<unsigned> cohomologous(const CoverGroup &cover, const CoefficientGroup &a, const Cocycle &z1,
                                     const Cocycle &z2);

Cocycle trivial_cocycle(const CoverGroup &cover);
// g -> a^-1 (g . a)
Cocycle coboundary(const CoverGroup &cover, const CoefficientGroup &coeff, unsigned a);
// Lexicographically least member of the class.
Cocycle canonical_representative(const CoverGroup &cover, const CoefficientGroup &coeff, const Cocycle &z);

struct H1Report
{
    // Canonical representatives in increasing order.
    std::vector<Cocycle> classes;
    std::size_t cocycles = 0;

    std::string str() const;
};

// All cocycles, partitioned into classes. budget_exceeded when |Gamma| or |A|
// is over budget.
H1Report h1_enumerate(const CoverGroup &cover, const CoefficientGroup &coeff, const CocycleBudget &budget = {});
std::vector<Cocycle> all_cocycles(const CoverGroup &cover, const CoefficientGroup &coeff,
                                  const CocycleBudget &budget = {});

// Action twisted by c: g *_c a = c(g) (g . a) c(g)^-1.
CoefficientGroup twisted(const CoverGroup &cover, const CoefficientGroup &coeff, const Cocycle &c);
// g -> z(g) c(g)^-1, a cocycle for the action twisted by c.
Cocycle twist_difference(const CoefficientGroup &coeff, const Cocycle &z, const Cocycle &c);

// z composed with an index map.
Cocycle pulled_back(const Cocycle &z, const std::vector<unsigned> &map);

// Precomposes with (a, b, g) -> (a, d b, g) on N x M x| G0.
Cocycle power_pullback(const CoverGroup &cover, const Cocycle &z, unsigned d);

// z1 = eta o (projection to the first copy), z2 = eta o (projection to the
// second), written in the coordinates (a, b) = (diagonal, first/second
// quotient): z1(a, b, g) = eta(a + b, g), z2(a, b, g) = eta(a, g). `loop` is
// (Z/m)^n x| G0 and `product` the matching (N x M) x| G0.
std::pair<Cocycle, Cocycle> loop_pullbacks(const CoverGroup &loop, const CoverGroup &product, const Cocycle &eta);
CoverGroup product_cover(const CoverGroup &loop);

struct InfResReport
{
    bool pass = true;
    std::size_t quotient_classes = 0, total_classes = 0, kernel_classes = 0, inflated_classes = 0;
    std::string detail;

    std::string str() const;
};

// Inflation H1(N x| G0, A) -> H1(Gamma, A) is injective with image the
// classes restricting to the trivial class on M. invalid_input unless M acts
// trivially on A.
InfResReport inf_res_sequence(const CoverGroup &cover, const CoefficientGroup &coeff, const CocycleBudget &budget = {});

struct DiagonalResult
{
    bool success = false;
    unsigned d = 0;
    // Base point of the twist: 1 for eta_1, 2 for eta_2.
    unsigned base = 0;
    Cocycle xi;
    Cocycle theta;
    bool theta_trivial = false;
    // a with power_pullback(xi, d) = a^-1 inflate(theta) (g . a)
    unsigned witness = 0;
    std::string detail;

    std::string str() const;
};

// Least d in 1..m such that power_pullback(xi, d) is cohomologous to an
// inflated class theta from N x| G0 (with xi = eta_other eta_base^-1 in the
// twisted coefficients). The base point is eta_1 when M acts trivially on
// the twist by eta_1, eta_2 otherwise. invalid_input when the two cocycles
// differ on N x| G0 or neither twist is trivial on M.
DiagonalResult diagonal_argument(const CoverGroup &cover, const CoefficientGroup &coeff, const Cocycle &eta1,
                                 const Cocycle &eta2);

// Text configuration for the CLI:
//   cover m <m> n <n>
//   galois cyclic <k> chi <c>        chi of the generator (a unit mod m)
//   coeff cyclic <k> | dihedral <k> | quaternion | symmetric <k> | klein
//   action identity | inverse | inner <s> | perm <p_0> .. <p_{|A|-1}>
// '#' starts a comment; galois and action lines are optional.
struct CocycleConfig
{
    CoverGroup loop;
    FiniteGroup coeff;
    // Automorphism of A for the Galois generator.
    std::vector<unsigned> generator_action;
    std::string label;

    CoefficientGroup coefficients(const CoverGroup &cover) const;
    std::string str() const;
};

CocycleConfig parse_cocycle_config(std::string_view text);

} // namespace loopk

#endif
