#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "et14/scalar_fn.hpp"

namespace et14 {

using Vec3 = std::array<Rational, 3>;

// Symmetric 3x3 with the six independent components stored once,
// in the order (0,0),(0,1),(0,2),(1,1),(1,2),(2,2).
struct SymMat3 {
    std::array<Rational, 6> a{};

    static int index(int i, int j) {
        static constexpr int tbl[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        return tbl[i][j];
    }
    Rational& at(int i, int j) { return a[index(i, j)]; }
    const Rational& at(int i, int j) const { return a[index(i, j)]; }

    bool operator==(const SymMat3&) const = default;
};

// A point in multiplier space, decomposed as (mu, mu_i, mu_ij, lam, lam_i).
struct TensorState {
    Rational mu = 0;
    Rational lam = 1;
    Vec3 mu_vec{};
    SymMat3 mu_mat{};
    Vec3 lam_vec{};
};

// ---------------------------------------------------------------------------
// Symmetrized Kronecker deltas.
//
// delta^(a1...a2m) stands for the full symmetrization of
// delta^(a1 a2) ... delta^(a2m-1 a2m). Averaging over all (2m)! index
// permutations collapses to the average over the (2m-1)!! distinct perfect
// matchings of the 2m slots, which is the normalization used throughout:
// each matching enters with weight 1/(2m-1)!!.
// ---------------------------------------------------------------------------

using Matching = std::vector<std::pair<int, int>>;

// All perfect matchings of {0, ..., 2m-1}, in a deterministic order
// (the smallest unmatched slot is paired with each larger slot in turn).
// Exactly (2m-1)!! matchings.
std::vector<Matching> pairings(int m);

// One argument contracted into the symmetrized delta: either a vector
// (one index slot) or a symmetric matrix (two index slots).
struct DeltaSlot {
    enum class Kind { Vector, Matrix };
    Kind kind;
    Vec3 v{};
    SymMat3 m{};

    static DeltaSlot vector(const Vec3& v) { return {Kind::Vector, v, {}}; }
    static DeltaSlot matrix(const SymMat3& m) { return {Kind::Matrix, {}, m}; }
};

// Value of delta^(a1...a2m) fully contracted with the slot arguments, in
// dimension 3. Each matching is evaluated by walking its contraction graph:
// open chains give v . M ... M . w products, closed chains give traces of
// matrix products. Throws OddRankError when the total index count is odd.
Rational sym_delta_contract(const std::vector<DeltaSlot>& slots);

// ---------------------------------------------------------------------------
// Concrete polynomials over the 12 tensorial components.
// ---------------------------------------------------------------------------

inline constexpr int kNumTensorVars = 12;

inline int mu_vec_var(int i) { return i; }
inline int mu_mat_var(int i, int j) { return 3 + SymMat3::index(i, j); }
inline int lam_vec_var(int i) { return 9 + i; }

std::string tensor_var_name(int var);

using ExpVec = std::array<int, kNumTensorVars>;

// Polynomial in (mu_i, mu_ij with i <= j, lam_i) with ScalarFn coefficients
// in (mu, lam). The explicit 3-D realization used for identity checking.
// Off-diagonal mu_ij monomials come out of expansion with both leg orders
// merged into the single stored component, so evaluation against a
// symmetric matrix needs no extra weights.
class ConcretePoly {
public:
    using TermMap = std::map<ExpVec, ScalarFn>;

    ConcretePoly() = default;

    void add_term(const ExpVec& e, const ScalarFn& c);
    bool is_zero() const { return terms_.empty(); }

    ConcretePoly& operator+=(const ConcretePoly& o);
    ConcretePoly& operator-=(const ConcretePoly& o);
    friend ConcretePoly operator+(ConcretePoly a, const ConcretePoly& b) { return a += b; }
    friend ConcretePoly operator-(ConcretePoly a, const ConcretePoly& b) { return a -= b; }
    bool operator==(const ConcretePoly&) const = default;

    // Multiply every term by a function of (mu, lam).
    ConcretePoly scaled(const ScalarFn& c) const;
    // Multiply by one tensorial variable.
    ConcretePoly times_var(int var) const;

    // Partial derivative with respect to mu or lam (coefficient-wise).
    ConcretePoly diff(Var v) const;

    // Partial derivative with respect to one tensorial component. For an
    // off-diagonal mu_ij this is the symmetric-matrix gradient convention
    // d mu_ab / d mu_ij = delta_a^(i delta_b^j), i.e. half the derivative
    // with respect to the stored independent component.
    ConcretePoly diff_var(int var) const;

    Rational eval(const TensorState& s) const;

    // Total degree in the tensorial variables.
    static int order_of(const ExpVec& e);
    int max_order() const;

    ConcretePoly truncated(int max_order) const;
    ConcretePoly homogeneous_part(int order) const;

    // Largest mu exponent appearing in any coefficient; -1 if zero.
    int mu_degree() const;

    // Sorted monomial dump, e.g. "mu_1^2*lam_3: 1/2 * lam^-1".
    std::string to_string() const;
    // The leading monomial with its coefficient, for failure reports.
    std::string first_term_string() const;

    const TermMap& terms() const { return terms_; }

private:
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Isotropic polynomials: coefficient functions keyed by (p, q, r), standing
// for sums of
//   1/(p! q! r!) H_pqr(mu, lam) delta^(i1..ip h1k1..hqkq j1..jr)
//       mu_i1 .. mu_ip mu_h1k1 .. mu_hqkq lam_j1 .. lam_jr ,
// with one extra leading free index on the delta chain in the vector case.
// ---------------------------------------------------------------------------

struct IsoKey {
    int p = 0;
    int q = 0;
    int r = 0;

    auto operator<=>(const IsoKey&) const = default;
    int order() const { return p + q + r; }
    std::string to_string() const;
};

class IsoVectorPoly;

class IsoScalarPoly {
public:
    using TermMap = std::map<IsoKey, ScalarFn>;

    IsoScalarPoly() = default;

    // Adds to the (p, q, r) coefficient. Throws ParityError unless p + r is even.
    void add_term(const IsoKey& k, const ScalarFn& c);
    const ScalarFn& coeff(const IsoKey& k) const;

    IsoScalarPoly& operator+=(const IsoScalarPoly& o);
    friend IsoScalarPoly operator+(IsoScalarPoly a, const IsoScalarPoly& b) { return a += b; }
    bool operator==(const IsoScalarPoly&) const = default;
    bool is_zero() const { return terms_.empty(); }

    // Coefficient-wise d/dmu; keys are unchanged.
    IsoScalarPoly diff_mu() const;

    // Structural d/dmu_k: term (p, q, r) with p >= 1 becomes vector term
    // (p-1, q, r) with the same coefficient (the factorial prefactors absorb
    // the combinatorics); p = 0 terms vanish.
    IsoVectorPoly dmu_k() const;

    IsoScalarPoly truncated(int max_order) const;

    ConcretePoly expand() const;
    // Direct numeric evaluation through sym_delta_contract, without
    // expanding; the independent route for testing expand().
    Rational eval_direct(const TensorState& s) const;

    const TermMap& terms() const { return terms_; }

private:
    TermMap terms_;
};

class IsoVectorPoly {
public:
    using TermMap = std::map<IsoKey, ScalarFn>;

    // Throws ParityError unless p + r is odd.
    void add_term(const IsoKey& k, const ScalarFn& c);
    const ScalarFn& coeff(const IsoKey& k) const;

    IsoVectorPoly& operator+=(const IsoVectorPoly& o);
    bool operator==(const IsoVectorPoly&) const = default;
    bool is_zero() const { return terms_.empty(); }

    IsoVectorPoly truncated(int max_order) const;

    // One ConcretePoly per value of the free index.
    std::array<ConcretePoly, 3> expand() const;
    Vec3 eval_direct(const TensorState& s) const;

    const TermMap& terms() const { return terms_; }

private:
    TermMap terms_;
};

}  // namespace et14
