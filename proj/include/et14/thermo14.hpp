#pragma once

#include <utility>
#include <vector>

#include "et14/closure_gen.hpp"
#include "et14/material.hpp"

namespace et14 {

// Scalar material coefficients of the second-order theory at one state.
struct DerivedCoeffs {
    Rational h2, h3, h4;
    Rational K;
    Rational D, D1;
    Rational beta1, beta2, beta3;
};

// First-order non-equilibrium fields: dynamic pressure, deviatoric momentum
// flux (symmetric traceless) and heat flux.
struct NonEqFields {
    Rational pi;
    SymMat3 Fdev{};
    Vec3 q{};
};

// First-order Lagrange multiplier deviations.
struct LagrangeDeviation {
    Rational d_mu, d_lam, mu_ll;
    SymMat3 mu_dev{};
    Vec3 mu_i{}, lam_i{};
};

// Symmetric rank-3 tensor, ten independent components.
struct Sym3Tensor {
    std::array<Rational, 10> a{};

    static int index(int i, int j, int k);
    Rational& at(int i, int j, int k) { return a[index(i, j, k)]; }
    const Rational& at(int i, int j, int k) const { return a[index(i, j, k)]; }

    bool operator==(const Sym3Tensor&) const = default;
};

struct FirstOrderFluxes {
    Sym3Tensor Fkij;  // hatF^kij, equilibrium part included (zero)
    SymMat3 Gkill;    // hatG^kill, equilibrium part included
};

// Checks the state-function constraints (Gibbs integrability, the two
// density-derivative conditions, the temperature-derivative condition, and
// the h_{0,0,2} cross-check) at each probe state, to exact equality. Throws
// ConstraintViolationError naming the failing check id.
CheckReport validate_material(const MaterialModel& m, const std::vector<EqState>& probes);

// Same checks for a numeric material: derivatives by central differences
// with step T * 2^-20, comparisons at relative tolerance 1e-12.
CheckReport validate_material_numeric(const NumericMaterial& m,
                                      const std::vector<EqState>& probes);

// All second-order coefficients at a state. Throws SingularStateError when
// dp/drho, deps/dT, h2 or h4 vanishes (the closure is degenerate there).
DerivedCoeffs derived_coeffs(const MaterialModel& m, const EqState& s);

// The first-order multiplier deviations driven by (pi, Fdev, q). Sectors
// whose driving field vanishes come back zero without requiring their
// coefficient determinant to be invertible; a nonzero field against a
// singular coefficient raises SingularStateError.
LagrangeDeviation first_order_multipliers(const MaterialModel& m, const EqState& s,
                                          const NonEqFields& n);

// hatF^kij = (3/2) K delta^(ij q^k) and the hatG^kill closure, equilibrium
// parts included.
FirstOrderFluxes flux_closure_first_order(const MaterialModel& m, const EqState& s,
                                          const NonEqFields& n);

// h^(2) = pi^2/(4 h2) + Fdev:Fdev/(4 h3) + q.q/h4. The first-order part of
// the entropy density is identically zero.
Rational entropy_second_order(const MaterialModel& m, const EqState& s, const NonEqFields& n);

// hat h^k up to second order: q^k/T plus the pi and shear couplings.
Vec3 entropy_flux(const MaterialModel& m, const EqState& s, const NonEqFields& n);

// Builds the exact material model generated by a psi family and free input:
// density, pressure and energy from the third-order relations, phi001 and
// phi011 from the generated potential coefficients. Requires psi_1 of
// mu-degree exactly 4 (so that the density relation inverts rationally) and
// log-free coefficients.
SymbolicMaterial psi_material(const PsiFamily& fam, const FreeInput& free);

// The bridge: at each (state, fields) pair the second-order formulas of this
// module must agree exactly with the gradients of the generated potentials.
// Checks equilibrium moments, the first-order moment response, both
// first-order fluxes, h^(1) = 0 and h^(2). Throws BridgeMismatchError naming
// the first disagreeing quantity; degenerate states are flagged in the
// report instead.
CheckReport bridge_check(const PsiFamily& fam, const FreeInput& free,
                         const std::vector<std::pair<EqState, NonEqFields>>& states);

// Same, with the material supplied explicitly (for mutation tests).
CheckReport bridge_check_with_material(const PsiFamily& fam, const FreeInput& free,
                                       const MaterialModel& m,
                                       const std::vector<std::pair<EqState, NonEqFields>>& states);

}  // namespace et14
