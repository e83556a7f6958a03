#ifndef LOOPK_LIETORUS_HPP
#define LOOPK_LIETORUS_HPP

#include <array>
#include <string>
#include <vector>

#include <loopk/grading.hpp>

namespace loopk
{

struct AxiomVerdict
{
    bool pass = true;
    // Counterexample or note; empty on a plain pass.
    std::string detail;
};

// e = b_e x^{e_shift}, f = c b_f x^{f_shift} with
// [[e, f], x] = <beta, alpha^vee> x for every x of q-degree beta.
struct LT4Witness
{
    Root alpha;
    Residue lambda;
    unsigned e;
    Exponent e_shift;
    unsigned f;
    Cyclotomic c;
    Exponent f_shift;

    std::string str() const;
};

struct LieTorusReport
{
    std::string delta;
    unsigned nullity = 0;
    std::array<AxiomVerdict, 5> axioms;
    // Smith invariants different from 1 of the lambda-support lattice.
    std::vector<long> cokernel;
    std::vector<LT4Witness> witnesses;

    bool pass() const;
    // One "LTk pass|fail" line per axiom, witnesses, then "overall ...".
    std::string str() const;
};

// Delta with coordinates padded to the q-rank and permuted to contain the
// most q-degrees (first permutation in lexicographic order on ties).
RootSystem align_delta(const GradedLieAlgebra &g, const RootSystem &delta);

// Each check expects delta in the algebra's q coordinates (see align_delta).
AxiomVerdict check_lt1(const GradedLieAlgebra &g, const RootSystem &delta);
AxiomVerdict check_lt2(const GradedLieAlgebra &g, const RootSystem &delta);
AxiomVerdict check_lt3(const GradedLieAlgebra &g, std::vector<long> *cokernel = nullptr);
AxiomVerdict check_lt4(const GradedLieAlgebra &g, const RootSystem &delta, std::vector<LT4Witness> *witnesses = nullptr);
AxiomVerdict check_lt5(const GradedLieAlgebra &g);

// Recomputes [[e, f], b_l] over Laurent polynomials for every l.
bool verify_witness(const GradedLieAlgebra &g, const RootSystem &delta, const LT4Witness &w,
                    std::string *why = nullptr);

LieTorusReport check_lie_torus(const GradedLieAlgebra &g, const RootSystem &delta);

// Delta proposed from the relative roots; an empty Phi fails LT2 as
// anisotropic.
LieTorusReport discover_and_check(const GradedLieAlgebra &g);

} // namespace loopk

#endif
