#ifndef LOOPK_GRADING_HPP
#define LOOPK_GRADING_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <loopk/chevalley.hpp>
#include <loopk/laurent.hpp>
#include <loopk/rootsys.hpp>

namespace loopk
{

using Residue = std::vector<int>;

struct BracketTerm
{
    unsigned k;
    Cyclotomic c;
    Exponent shift;
};

// Lie algebra over R = k[x_1^{+-1}, ..., x_n^{+-1}] given as a free R-module
// with basis b_0..b_{N-1}. Each b_k carries a q-degree (root lattice
// coordinates) and a residue r_k in {0..m-1}^n; the k-subspace b_k x^z has
// lambda-degree r_k + m z (lambda-degrees live in the rescaled lattice).
// [b_i, b_j] = sum c x^shift b_k with r_i + r_j = r_k + m shift.
class GradedLieAlgebra
{
public:
    GradedLieAlgebra() = default;
    GradedLieAlgebra(unsigned nvars, unsigned period, unsigned qrank, std::vector<Root> q, std::vector<Residue> residues,
                     std::vector<std::vector<BracketTerm>> table);

    unsigned nvars() const
    {
        return m_nvars;
    }
    unsigned period() const
    {
        return m_period;
    }
    unsigned qrank() const
    {
        return m_qrank;
    }
    unsigned size() const
    {
        return static_cast<unsigned>(m_q.size());
    }
    const Root &q(unsigned k) const
    {
        return m_q[k];
    }
    const Residue &residue(unsigned k) const
    {
        return m_res[k];
    }
    const std::vector<BracketTerm> &bracket(unsigned i, unsigned j) const
    {
        return m_table[i * size() + j];
    }

    // Coordinates of b_k in the base algebra, when built from one.
    const std::vector<std::vector<Cyclotomic>> &vectors() const
    {
        return m_vectors;
    }
    // Eigenvalues of b_k under the chosen Cartan elements.
    const std::vector<std::vector<Rational>> &weights() const
    {
        return m_weights;
    }
    const std::string &base_label() const
    {
        return m_base_label;
    }
    void set_provenance(std::string base_label, std::vector<std::vector<Cyclotomic>> vectors,
                        std::vector<std::vector<Rational>> weights);
    // Elements of the degree-(0, 0) part acting diagonally with eigenvalue
    // weights()[k][p] on b_k, in b_k coordinates.
    const std::vector<std::vector<Cyclotomic>> &torus() const
    {
        return m_torus;
    }
    void set_torus(std::vector<std::vector<Cyclotomic>> torus)
    {
        m_torus = std::move(torus);
    }

    // Least m such that every structure constant lies in Q(zeta_m).
    unsigned conductor() const;

    // Every bracket lands in the bi-degree (q_i + q_j, lambda_i + lambda_j);
    // on failure writes a description of the offending pair.
    bool grading_compatible(std::string *witness = nullptr) const;

    // Total dimension per residue (one period of lambda-degrees).
    std::map<Residue, unsigned> residue_dimensions() const;
    // Basis indices per (q-degree, residue).
    std::map<std::pair<Root, Residue>, std::vector<unsigned>> pieces() const;

    // Same algebra with every q-degree negated; weights are eigenvalues and
    // stay unchanged.
    GradedLieAlgebra negated() const;

    std::string str() const;
    static GradedLieAlgebra parse(std::string_view text);

private:
    unsigned m_nvars = 0, m_period = 1, m_qrank = 0;
    std::vector<Root> m_q;
    std::vector<Residue> m_res;
    std::vector<std::vector<BracketTerm>> m_table;
    std::string m_base_label;
    std::vector<std::vector<Cyclotomic>> m_vectors;
    std::vector<std::vector<Rational>> m_weights;
    std::vector<std::vector<Cyclotomic>> m_torus;
};

struct MultiloopSpec
{
    ChevalleyAlgebra base;
    std::vector<Automorphism> sigma;
    unsigned m = 1;
};

// Joint eigenspaces L_i = {x : sigma_j x = zeta_m^{i_j} x}, each with a
// canonical (reduced echelon) basis. Throws invalid_input naming the
// offending automorphisms when they fail to commute or have wrong order.
std::map<Residue, std::vector<std::vector<Cyclotomic>>> simultaneous_eigenspaces(const MultiloopSpec &spec);

// Multiloop algebra with trivial q-grading (q-rank 0).
GradedLieAlgebra build_multiloop(const MultiloopSpec &spec);

// Refines the lambda-grading by the joint ad-eigenvalues of the given
// elements, which must lie in the residue-0 part (coordinates in the b_k
// basis), commute, and act diagonalizably with rational eigenvalues.
// q-degrees are read off transform * w (w itself when no transform is
// given) with lexicographic positivity; stored weights stay untransformed.
GradedLieAlgebra q_grading_from_cartan(const GradedLieAlgebra &g, const std::vector<std::vector<Cyclotomic>> &cartan,
                                       const Matrix<Rational> *transform = nullptr);

// Greedy commuting family of ad-diagonalizable residue-0 basis elements.
std::vector<std::vector<Cyclotomic>> auto_cartan(const GradedLieAlgebra &g);

// Coordinates in the b_k basis of an element of the base algebra lying in
// the residue-0 part.
std::vector<Cyclotomic> residue_zero_coordinates(const GradedLieAlgebra &g, const std::vector<Cyclotomic> &x);

struct RelativeGrading
{
    GradedLieAlgebra algebra;
    // Nonzero q-degrees carried by some basis element, in algebra coordinates.
    std::vector<Root> phi;
    RelativeRootData data;
    // phi[i] in the simple-root coordinates of data.system().
    std::map<Root, Root> coords;

    bool contains(const Root &a) const;
    SignHeight sign_height(const Root &a) const;
    // Positive roots in root-system order.
    std::vector<Root> positive() const;
    std::vector<Root> negative() const;
    // Basis indices with the given q-degree.
    std::vector<unsigned> root_space(const Root &a) const;
};

RelativeGrading relative_roots(const GradedLieAlgebra &g);

// (Phi+, Phi-); throws math_error "anisotropic: no proper parabolic" when
// Phi is empty.
std::pair<std::vector<Root>, std::vector<Root>> opposite_unipotent_pair(const RelativeGrading &rg);

struct ComponentInfo
{
    std::string label;
    unsigned rank;
    std::vector<Root> roots; // in algebra coordinates
};
std::vector<ComponentInfo> component_report(const RelativeGrading &rg);

// Per-degree dimensions over one period after adjoining x_i^{1/m}.
std::map<Residue, unsigned> base_change_dimensions(const GradedLieAlgebra &g);

// Text form of a multiloop construction:
//   type A 2          base algebra
//   n 1               number of variables
//   m 2               order
//   sigma <kind>      one line per variable; kinds may be joined by '*':
//                     identity | diagram p1..pr (1-based) | torus s1..sr |
//                     chevalley | matrix (followed by dim rows)
//   cartan auto | none | h c1..cr   (repeatable for h)
// '#' starts a comment.
struct MultiloopFile
{
    MultiloopSpec spec;
    enum class CartanMode
    {
        automatic,
        none,
        explicit_h
    } cartan_mode = CartanMode::automatic;
    std::vector<std::vector<Rational>> cartan_h;
};

MultiloopFile parse_multiloop(std::string_view text);

// Multiloop algebra of the file with its q-grading applied.
GradedLieAlgebra build_from_file(const MultiloopFile &file);

// Elements of the graded algebra with coefficients in a ring T that contains
// R: T = LaurentPoly (R itself) or truncated series over it, or Rational /
// series over Rational when n = 0 and all constants are rational.
inline LaurentPoly structure_scalar(const Cyclotomic &c, const Exponent &shift, const LaurentPoly &proto)
{
    // coefficient rings may carry more variables than the algebra
    Exponent e = shift;
    if (e.size() < proto.nvars()) {
        e.resize(proto.nvars(), 0);
    }
    return LaurentPoly::monomial(c, std::move(e));
}
inline Cyclotomic structure_scalar(const Cyclotomic &c, const Exponent &shift, const Cyclotomic &)
{
    for (int s : shift) {
        if (s != 0) {
            throw invalid_input("structure_scalar: Laurent shift in a constant coefficient ring");
        }
    }
    return c;
}
inline Rational structure_scalar(const Cyclotomic &c, const Exponent &shift, const Rational &)
{
    for (int s : shift) {
        if (s != 0) {
            throw invalid_input("structure_scalar: Laurent shift in a rational coefficient ring");
        }
    }
    if (!c.is_rational()) {
        throw invalid_input("structure_scalar: irrational structure constant in a rational coefficient ring");
    }
    return c.rational_part();
}

// [x, y] for coordinate vectors over T in the b_k basis.
template <typename T>
std::vector<T> graded_bracket(const GradedLieAlgebra &g, const std::vector<T> &x, const std::vector<T> &y)
{
    using loopk::is_zero;
    const T proto = zero_like(x.at(0));
    std::vector<T> r(g.size(), proto);
    for (unsigned i = 0; i < g.size(); ++i) {
        if (is_zero(x[i])) {
            continue;
        }
        for (unsigned j = 0; j < g.size(); ++j) {
            const auto &terms = g.bracket(i, j);
            if (terms.empty() || is_zero(y[j])) {
                continue;
            }
            const T c = x[i] * y[j];
            for (const auto &t : terms) {
                r[t.k] += c * structure_scalar(t.c, t.shift, proto);
            }
        }
    }
    return r;
}

} // namespace loopk

#endif
