#ifndef LOOPK_CHEVALLEY_HPP
#define LOOPK_CHEVALLEY_HPP

#include <map>
#include <string>
#include <vector>

#include <loopk/cyclotomic.hpp>
#include <loopk/errors.hpp>
#include <loopk/matrix.hpp>
#include <loopk/rootsys.hpp>

namespace loopk
{

struct Term
{
    unsigned index;
    long coeff;
};

// Split semisimple Lie algebra over Z in a Chevalley basis.
//
// Basis order: e_delta for positive delta in root-system order, then
// h_1..h_r, then e_{-delta} in the same order. Conventions:
//   [h_i, e_d] = <d, a_i^v> e_d,  [e_d, e_{-d}] = h_d (coroot of d),
//   [e_a, e_b] = N_{a,b} e_{a+b} with N = +-(p+1), p maximal such that
//   b - p a is a root, and N = +(p+1) on extraspecial pairs.
class ChevalleyAlgebra
{
public:
    ChevalleyAlgebra() = default;
    explicit ChevalleyAlgebra(RootSystem rs);

    const RootSystem &root_system() const
    {
        return m_rs;
    }
    unsigned dim() const
    {
        return m_dim;
    }
    unsigned rank() const
    {
        return m_rs.rank();
    }
    unsigned num_positive() const
    {
        return m_npos;
    }

    const std::vector<Term> &bracket(unsigned i, unsigned j) const
    {
        return m_table[i * m_dim + j];
    }

    unsigned root_index(const Root &r) const;
    unsigned cartan_index(unsigned i) const
    {
        return m_npos + i;
    }
    bool is_cartan(unsigned i) const
    {
        return i >= m_npos && i < m_npos + rank();
    }
    // Root of a root vector, zero vector for Cartan elements.
    Root weight(unsigned i) const;

    long structure_constant(const Root &a, const Root &b) const;

    std::string basis_label(unsigned i) const;

    // Killing form on basis pairs.
    const Matrix<Rational> &killing_form() const
    {
        return m_killing;
    }

    // Exhaustive Jacobi check; returns the first failing triple if any.
    bool jacobi_holds(unsigned *witness = nullptr) const;

    // Sorted "(i, j, k, value)" triples for i < j, one per line.
    std::string str() const;

private:
    long compute_n(const Root &a, const Root &b);
    long positive_n(const Root &a, const Root &b);

    RootSystem m_rs;
    unsigned m_npos = 0, m_dim = 0;
    std::vector<std::vector<Term>> m_table;
    std::map<std::pair<Root, Root>, long> m_n;
    Matrix<Rational> m_killing;
};

// Fails (math_error) when the system is not reduced or Jacobi fails.
ChevalleyAlgebra build_chevalley(const RootSystem &rs);

template <typename T>
std::vector<T> bracket(const ChevalleyAlgebra &alg, const std::vector<T> &x, const std::vector<T> &y)
{
    using loopk::is_zero;
    const T proto = x.empty() ? T{} : zero_like(x[0]);
    std::vector<T> r(alg.dim(), proto);
    for (unsigned i = 0; i < alg.dim(); ++i) {
        if (is_zero(x[i])) {
            continue;
        }
        for (unsigned j = 0; j < alg.dim(); ++j) {
            if (is_zero(y[j])) {
                continue;
            }
            const auto &terms = alg.bracket(i, j);
            if (terms.empty()) {
                continue;
            }
            const T c = x[i] * y[j];
            for (const auto &t : terms) {
                r[t.index] += c * scalar_like(Rational(t.coeff), proto);
            }
        }
    }
    return r;
}

// Matrix of ad_x = [x, -]; column j is [x, b_j].
template <typename T>
Matrix<T> ad_matrix(const ChevalleyAlgebra &alg, const std::vector<T> &x)
{
    using loopk::is_zero;
    const T proto = x.empty() ? T{} : zero_like(x[0]);
    Matrix<T> m(alg.dim(), alg.dim(), proto);
    for (unsigned i = 0; i < alg.dim(); ++i) {
        if (is_zero(x[i])) {
            continue;
        }
        for (unsigned j = 0; j < alg.dim(); ++j) {
            for (const auto &t : alg.bracket(i, j)) {
                m(t.index, j) += x[i] * scalar_like(Rational(t.coeff), proto);
            }
        }
    }
    return m;
}

// sum_k a^k / k! for nilpotent a; math_error when a^bound != 0.
template <typename T>
Matrix<T> exp_nilpotent(const Matrix<T> &a, std::size_t bound)
{
    Matrix<T> result = Matrix<T>::identity(a.rows(), a.proto());
    Matrix<T> power = a;
    for (std::size_t k = 1; !power.is_zero(); ++k) {
        if (k > bound) {
            throw math_error("exp_nilpotent: matrix is not nilpotent within the bound");
        }
        Matrix<T> term = power;
        term *= Rational(1) / factorial(static_cast<unsigned>(k));
        result += term;
        power = power * a;
    }
    return result;
}

template <typename T>
Matrix<T> exp_ad(const ChevalleyAlgebra &alg, const std::vector<T> &v)
{
    return exp_nilpotent(ad_matrix(alg, v), alg.dim());
}

template <typename T>
std::vector<T> basis_vector(const ChevalleyAlgebra &alg, unsigned i, const T &c)
{
    std::vector<T> v(alg.dim(), zero_like(c));
    v[i] = c;
    return v;
}

// Automorphisms act on coordinate vectors; column j is the image of b_j.
using Automorphism = Matrix<Cyclotomic>;

template <typename T>
std::vector<T> column(const Matrix<T> &m, std::size_t j)
{
    std::vector<T> c(m.rows(), m.proto());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        c[i] = m(i, j);
    }
    return c;
}

// phi([b_i, b_j]) == [phi b_i, phi b_j] on every basis pair.
template <typename T>
bool preserves_bracket(const ChevalleyAlgebra &alg, const Matrix<T> &phi)
{
    std::vector<std::vector<T>> images;
    for (unsigned j = 0; j < alg.dim(); ++j) {
        images.push_back(column(phi, j));
    }
    const T proto = phi.proto();
    for (unsigned i = 0; i < alg.dim(); ++i) {
        for (unsigned j = i + 1; j < alg.dim(); ++j) {
            std::vector<T> lhs(alg.dim(), proto);
            for (const auto &t : alg.bracket(i, j)) {
                for (unsigned k = 0; k < alg.dim(); ++k) {
                    lhs[k] += phi(k, t.index) * scalar_like(Rational(t.coeff), proto);
                }
            }
            const auto rhs = bracket(alg, images[i], images[j]);
            for (unsigned k = 0; k < alg.dim(); ++k) {
                if (!is_zero(lhs[k] - rhs[k])) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool preserves_killing(const ChevalleyAlgebra &alg, const Automorphism &phi);

// Smallest k <= bound with phi^k = 1, or 0.
unsigned automorphism_order(const Automorphism &phi, unsigned bound = 64);

// Unique automorphism with e_i -> E[i], f_i -> F[i] for the simple root
// vectors, extended along extraspecial decompositions. Throws math_error when
// the result does not preserve the bracket.
Automorphism automorphism_from_generators(const ChevalleyAlgebra &alg, const std::vector<std::vector<Cyclotomic>> &E,
                                          const std::vector<std::vector<Cyclotomic>> &F);

// Pinned lift of a Dynkin diagram symmetry (pi[i] is the image of node i);
// its order equals the order of pi.
Automorphism diagram_automorphism(const ChevalleyAlgebra &alg, const std::vector<unsigned> &pi);

// e_d -> d(s) e_d with d(s) = prod s_i^{d_i}, s_i the value on alpha_i.
Automorphism torus_automorphism(const ChevalleyAlgebra &alg, const std::vector<Cyclotomic> &s);

// e_i <-> f_i, h -> -h.
Automorphism chevalley_involution(const ChevalleyAlgebra &alg);

// Product of the given automorphisms, leftmost applied last; identity when empty.
Automorphism inner_automorphism(const ChevalleyAlgebra &alg, const std::vector<Automorphism> &letters);

// Dimension of {x : phi x = x}.
unsigned fixed_dimension(const Automorphism &phi);

} // namespace loopk

#endif
