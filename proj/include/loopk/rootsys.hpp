#ifndef LOOPK_ROOTSYS_HPP
#define LOOPK_ROOTSYS_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <loopk/matrix.hpp>
#include <loopk/rational.hpp>

namespace loopk
{

// Integer vector in simple-root coordinates.
using Root = std::vector<int>;

// Finite root system, possibly non-reduced. Roots are stored positive first,
// ordered by height and then reverse-lexicographically (so alpha_1 precedes
// alpha_2), followed by their negatives in the same order. Positive roots are
// exactly those with nonnegative coordinates.
class RootSystem
{
public:
    RootSystem() = default;
    // Validates -Phi = Phi, 0 not in Phi, integrality of pairings.
    RootSystem(std::string label, unsigned rank, std::vector<Root> roots, Matrix<Rational> gram);

    const std::string &label() const
    {
        return m_label;
    }
    unsigned rank() const
    {
        return m_rank;
    }
    const std::vector<Root> &roots() const
    {
        return m_roots;
    }
    std::vector<Root> positive_roots() const;
    const Matrix<Rational> &gram() const
    {
        return m_gram;
    }

    bool contains(const Root &r) const;
    // Position in roots(), or -1.
    int index_of(const Root &r) const;

    Rational inner(const Root &a, const Root &b) const;
    // <beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha).
    int pairing(const Root &beta, const Root &alpha) const;
    // C_ij = <alpha_i, alpha_j^vee>.
    std::vector<std::vector<int>> cartan_matrix() const;

    bool is_reduced() const;
    // Simple-root index sets of the connected components of the
    // non-orthogonality graph.
    std::vector<std::vector<unsigned>> components() const;

    // The same roots padded with zero coordinates to rank r.
    RootSystem embedded(unsigned r) const;

    // Label followed by the explicit root list.
    std::string str() const;

private:
    std::string m_label;
    unsigned m_rank = 0;
    std::vector<Root> m_roots;
    std::map<Root, int> m_index;
    Matrix<Rational> m_gram;
};

// Classified systems: A_r (r>=1), B_r (r>=2), C_r (r>=3), D_r (r>=4),
// E6, E7, E8, F4, G2 and BC_r (r>=1).
RootSystem build_root_system(std::string_view type, unsigned rank);
// Same from a label such as "A2", "BC1" or "A1xA1".
RootSystem build_root_system(std::string_view label);

std::vector<Root> indivisible_roots(const RootSystem &rs);

// Type label of each irreducible component ("A2", "BC1", ...), joined by 'x'.
std::string classify(const RootSystem &rs);

// Root system spanned by a set of nonzero rational weight vectors closed
// under negation. Positivity is the sign of functional . w when that is
// nonzero, lexicographic on the weight coordinates otherwise; simple roots are the indivisible positive roots that are not sums of two
// positive roots, and the invariant form is the dual of sum_beta beta beta^T.
// coords[i] receives the simple-root coordinates of weights[i].
RootSystem root_system_from_weights(const std::vector<std::vector<Rational>> &weights, std::vector<Root> &coords,
                                    const std::vector<Rational> *functional = nullptr);

struct SignHeight
{
    int sign;
    int height;
};

// Root system with a positivity functional sum_i w_i c_i,
// w = (M^(r-1), ..., M, 1), M exceeding every coefficient magnitude.
class RelativeRootData
{
public:
    RelativeRootData() = default;
    explicit RelativeRootData(RootSystem rs);

    const RootSystem &system() const
    {
        return m_system;
    }
    const std::vector<long> &functional() const
    {
        return m_functional;
    }
    long evaluate(const Root &r) const;

private:
    RootSystem m_system;
    std::vector<long> m_functional;
};

// Throws invalid_input when the root is not in the system.
SignHeight height_and_sign(const RelativeRootData &rrd, const Root &root);

Root operator+(const Root &a, const Root &b);
Root operator-(const Root &a);
Root scaled(const Root &a, int k);
std::string root_str(const Root &r);

} // namespace loopk

#endif
