#pragma once

#include <vector>

#include "et14/iso_tensor.hpp"
#include "et14/report.hpp"

namespace et14 {

// The 14 field components (F, F^i, F^ij, G, G^i). F^ij is symmetric; its six
// independent components are stored once.
struct MomentVec14 {
    Rational F = 0;
    Vec3 F_i{};
    SymMat3 F_ij{};
    Rational G = 0;
    Vec3 G_i{};

    bool operator==(const MomentVec14&) const = default;
};

// The 14 Lagrange multipliers (mu, mu_i, mu_ij, lam, lam_i).
struct LagrangeVec14 {
    Rational mu = 0;
    Vec3 mu_i{};
    SymMat3 mu_ij{};
    Rational lam = 0;
    Vec3 lam_i{};

    bool operator==(const LagrangeVec14&) const = default;
};

struct Velocity3 {
    Vec3 v{};
};

using Mat14 = std::array<std::array<Rational, 14>, 14>;
using Flat14 = std::array<Rational, 14>;

// Flattening convention, fixed here and round-trip tested: moment vectors
// store each symmetric pair once; multiplier covectors double the
// off-diagonal entries, so that flat(m) . flat(F) is the full tensor
// contraction mu_A F^A and both sides transform with the same matrix.
Flat14 flatten_moments(const MomentVec14& f);
MomentVec14 unflatten_moments(const Flat14& x);
Flat14 flatten_multipliers(const LagrangeVec14& m);
LagrangeVec14 unflatten_multipliers(const Flat14& x);

Mat14 mat14_identity();
Mat14 mat14_mul(const Mat14& a, const Mat14& b);
Flat14 mat14_apply(const Mat14& m, const Flat14& x);   // m . x
Flat14 mat14_apply_left(const Flat14& x, const Mat14& m);  // x . m

// The velocity-dependence matrix X^A_B(v); entries absorb the symmetric-pair
// weights of the flattening convention above.
Mat14 x_matrix(const Velocity3& v);

// F^A = X^A_B(v) hatF^B.
MomentVec14 recompose_moments(const MomentVec14& hat_f, const Velocity3& v);

// v^i = F^i / F.
Velocity3 velocity_from_moments(const MomentVec14& f);

// Multiplier transport between frames moving with relative velocity v_tau:
// the relative-frame multipliers m . X(v_tau), written out as the five
// explicit component lines. Applying it twice with opposite velocities is
// the identity.
LagrangeVec14 transform_lagrange(const LagrangeVec14& m, const Velocity3& v_tau);

// The two frame-invariance conditions as polynomial residuals: for a
// potential pair (h', h'^k) the vector residual
//   dh'/dmu mu_i + dh'/dmu_h (2 mu_ih + 2 lam delta_hi)
//     + 2 dh'/dmu_hi lam_h + dh'/dlam lam_i
// and its h'^k counterpart carrying the extra + h' delta^ki term.
std::array<ConcretePoly, 3> frame_residual_scalar(const ConcretePoly& h_prime);
std::array<std::array<ConcretePoly, 3>, 3> frame_residual_vector(
    const ConcretePoly& h_prime, const std::array<ConcretePoly, 3>& h_prime_k);

struct ClosureResult;

// Mechanical verification of the frame-invariance conditions for a generated
// potential pair: both residuals must vanish identically on monomials of
// tensorial order <= N-2, and are evaluated at the supplied states. Also
// spot-checks the derivative table of the multiplier transport against an
// exact finite-difference differentiation of the transport map itself.
CheckReport verify_galilean(const ClosureResult& res, const std::vector<TensorState>& states);

}  // namespace et14
