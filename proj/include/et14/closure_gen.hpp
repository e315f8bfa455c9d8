#pragma once

#include <map>
#include <utility>
#include <vector>

#include "et14/galilean.hpp"
#include "et14/iso_tensor.hpp"
#include "et14/report.hpp"

namespace et14 {

// psi_0 .. psi_M with d/dmu psi_{n+1} = psi_n; psi_0 is the equilibrium
// generating function.
struct PsiFamily {
    std::vector<ScalarFn> psi;

    int depth() const { return static_cast<int>(psi.size()) - 1; }
};

// psi_0 = h_eq, psi_{n+1} = integral of psi_n dmu + consts[n] (lam-functions).
PsiFamily build_psi_family(const ScalarFn& h_eq, const std::vector<ScalarFn>& consts, int M);

// Free data of the coefficient recursion: seed functions H_{1,0,r,0} for odd
// r (lam-only), and the lam-integration constants keyed by chain step (Q, R),
// entering the solution as c * lam^-R.
struct FreeInput {
    std::map<int, ScalarFn> h_seed;
    std::map<std::pair<int, int>, Rational> int_consts;

    // All seeds the order-N recursion can reach (odd r <= N-1), set to zero.
    static FreeInput zero(int order);

    // Fills any unspecified reachable seed with zero. Used by the CLI, where
    // a sparse seed table means "the rest are zero".
    FreeInput with_zero_defaults(int order) const;

    void validate() const;  // seeds must be lam-only
};

using TableKey = std::array<int, 4>;  // (p, q, r, s)

// The solved coefficients H_{p,q,r,s}(lam). The canonical data is the p = 1,
// s = 0 family H_{1,Q,r,0}; every other index reduces to it (or to zero)
// through the index-shift and vanishing rules, which is what at() computes.
struct CoefficientTable {
    int order = 0;
    // (Q, r) -> H_{1,Q,r,0}, r odd.
    std::map<std::pair<int, int>, ScalarFn> canonical;
    // Materialized entries with p+q+r <= order, s on the nonzero branches.
    std::map<TableKey, ScalarFn> entries;

    ScalarFn at(int p, int q, int r, int s) const;
    ScalarFn canonical_or_zero(int Q, int r) const;

    // Recomputes `entries` from `canonical` (after a mutation, for tests).
    void materialize();
};

// Solves the recursion chain for all indices reachable at order N.
// Throws MissingSeedError when a reachable seed H_{1,0,r,0} is absent.
CoefficientTable solve_delta_coeffs(const FreeInput& free, int N);

// The particular solution: coefficient of (p, q, r) is
//   [(p+2q+r+1)!! / (p+2q+r+1)] d^{r+p}/dlam^r dmu^p [ (-1/(2 lam))^(q+(p+r)/2)
//       psi_{(p+r)/2} ],
// over all p+r even, p+q+r <= N. Throws FamilyTooShallowError when the psi
// family does not reach index (p+r)/2.
IsoScalarPoly build_H1(const PsiFamily& fam, int N);

// H_pqr(mu, lam) = sum_s mu^s/s! H_{p,q,r,s}(lam).
IsoScalarPoly assemble_delta_H(const CoefficientTable& table, int N);

struct ClosureProvenance {
    PsiFamily fam;
    FreeInput free;
    CoefficientTable table;
    IsoScalarPoly h1;
    IsoScalarPoly delta_h;
};

struct ClosureResult {
    IsoScalarPoly H;
    IsoVectorPoly h_prime_k;  // dH/dmu_k
    IsoScalarPoly h_prime;    // dH/dmu
    int order = 0;
    ClosureProvenance provenance;
};

ClosureResult make_closure(const PsiFamily& fam, const FreeInput& free, int N);

// The integrability/symmetry conditions and the frame-condition reduction,
// checked as exact polynomial identities on monomials of tensorial order
// <= N-2 (a truncated expansion cannot satisfy them at the boundary orders),
// plus the scalar recursions on the coefficient table and the mu-degree
// bound of the order-n parts of delta H.
CheckReport verify_closure(const ClosureResult& res);

// Just the coefficient-table identities (also part of verify_closure).
CheckReport verify_table(const CoefficientTable& table, int N);

// Gradients of the potentials at a state: hatF^A from h', hatF^{kA} from
// h'^k, with the symmetric-matrix gradient convention for the mu_ij slots.
struct MomentsAtRest {
    MomentVec14 f;
    std::array<MomentVec14, 3> f_k;
};
MomentsAtRest moments_at_rest(const ClosureResult& res, const TensorState& state);

// h = mu_A dh'/dmu_A - h' at the state (full tensor pairing, off-diagonal
// mu_ij counted twice).
Rational entropy_from_potential(const ClosureResult& res, const TensorState& state);

}  // namespace et14
