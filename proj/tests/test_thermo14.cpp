#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "et14/thermo14.hpp"

using namespace et14;

namespace {

const EqState kUnit{rat(1), rat(1)};

SymbolicMaterial diatomic() { return polytropic_gas(rat(5, 2)); }

NonEqFields heat_flux_x() {
    NonEqFields n;
    n.q = {rat(1), rat(0), rat(0)};
    return n;
}

// rho(mu, lam) = A(lam) mu + B(lam) for the mu-degree-4 psi families.
TensorState equilibrium_state(const PsiFamily& fam, const EqState& s) {
    const ScalarFn d3 = fam.psi[1].diff(Var::Mu).diff(Var::Mu).diff(Var::Mu);
    ScalarFn A, B;
    for (const auto& [k, c] : d3.terms()) {
        if (k.mu == 1)
            A += ScalarFn::monomial(c, 0, k.lam, k.log);
        else
            B += ScalarFn::monomial(c, 0, k.lam, k.log);
    }
    TensorState st;
    st.lam = Rational(1) / (2 * s.T);
    st.mu = (s.rho - B.eval_exact(0, st.lam)) / A.eval_exact(0, st.lam);
    return st;
}

PsiFamily monomial_family(const ScalarFn& psi1) {
    PsiFamily fam;
    fam.psi = {psi1.diff(Var::Mu), psi1, psi1.integrate(Var::Mu)};
    return fam;
}

FreeInput bridge_free() {
    FreeInput f = FreeInput::zero(4);
    f.h_seed[1] = ScalarFn::lam_pow(-2);
    f.h_seed[3] = ScalarFn::lam_pow(3);
    f.int_consts[{0, 2}] = rat(1, 3);
    return f;
}

}  // namespace

TEST_CASE("derived coefficients of the diatomic test gas") {
    const SymbolicMaterial m = diatomic();
    const DerivedCoeffs c = derived_coeffs(m, kUnit);
    CHECK(c.h2 == rat(-2, 15));
    CHECK(c.h3 == rat(-1));
    CHECK(c.h4 == rat(-7));
    CHECK(c.D == rat(-8, 3));
    CHECK(c.K == rat(4, 7));
    CHECK(c.D1 == rat(14));
    CHECK(c.beta1 == rat(7));
    CHECK(c.beta3 == rat(-18));
    CHECK(c.beta2 == rat(-26, 5));

    // h4 = -7 rho T^3 at another state
    CHECK(derived_coeffs(m, {rat(2), rat(3)}).h4 == rat(-7) * 2 * 27);
}

TEST_CASE("monatomic degeneracy raises SingularState") {
    const SymbolicMaterial m = polytropic_gas(rat(3, 2));
    CHECK_THROWS_AS(derived_coeffs(m, kUnit), SingularStateError);

    NonEqFields n;
    n.pi = rat(1);
    CHECK_THROWS_AS(first_order_multipliers(m, kUnit, n), SingularStateError);
}

TEST_CASE("pressure independent of temperature drops the h2 tail term") {
    // p = rho^2, eps = rho + T: Gibbs-consistent, with exact minimal
    // solutions phi001 = (8/3) rho^3 + 2 rho^2 T, phi011 = -12 rho^3 T - 6 rho^2 T^2
    const Expr rho = Expr::rho();
    const Expr T = Expr::temperature();
    const SymbolicMaterial m(
        rho.pow(2), rho + T,
        Expr::constant(rat(8, 3)) * rho.pow(3) + Expr::constant(2) * rho.pow(2) * T,
        Expr::constant(-12) * rho.pow(3) * T - Expr::constant(6) * rho.pow(2) * T.pow(2));
    CHECK(validate_material(m, {{rat(1), rat(1)}, {rat(2), rat(1, 2)}}).all_passed());

    const EqState s{rat(2), rat(3)};
    const DerivedCoeffs c = derived_coeffs(m, s);
    // h2 = -(5/6) T p + (rho T / 2) dp/drho with no dp/dT contribution
    CHECK(c.h2 == rat(-5, 6) * s.T * 4 + s.rho * s.T / 2 * (2 * s.rho));
}

TEST_CASE("first-order multiplier deviations") {
    const SymbolicMaterial m = diatomic();

    // zero fields: zero deviations
    const LagrangeDeviation z = first_order_multipliers(m, kUnit, NonEqFields{});
    CHECK(z.d_mu == 0);
    CHECK(z.d_lam == 0);
    CHECK(z.mu_ll == 0);
    CHECK(z.mu_i == Vec3{0, 0, 0});
    CHECK(z.lam_i == Vec3{0, 0, 0});

    // heat flux sector
    const LagrangeDeviation q = first_order_multipliers(m, kUnit, heat_flux_x());
    CHECK(q.mu_i == Vec3{1, 0, 0});
    CHECK(q.lam_i == Vec3{rat(-1, 7), 0, 0});

    // shear sector: mu_dev = -Fdev / (2 p T)
    NonEqFields shear;
    shear.Fdev.at(0, 1) = rat(3, 4);
    const LagrangeDeviation sd = first_order_multipliers(m, kUnit, shear);
    CHECK(sd.mu_dev.at(0, 1) == rat(-3, 8));
    CHECK(sd.mu_dev.at(0, 0) == 0);

    // dynamic pressure sector at rho = T = 1, pi = 1:
    // d_lam = -2 dp/dT / dp/drho / D = 3/4, mu_ll = 4 (5/2)/D = -15/4, d_mu = 0
    NonEqFields press;
    press.pi = rat(1);
    const LagrangeDeviation pd = first_order_multipliers(m, kUnit, press);
    CHECK(pd.d_mu == 0);
    CHECK(pd.d_lam == rat(3, 4));
    CHECK(pd.mu_ll == rat(-15, 4));

    // non-traceless Fdev is rejected
    NonEqFields badf;
    badf.Fdev.at(0, 0) = rat(1);
    CHECK_THROWS_AS(first_order_multipliers(m, kUnit, badf), DomainError);
}

TEST_CASE("first-order flux closure") {
    const SymbolicMaterial m = diatomic();

    // zero fields: Fkij = 0, Gkill = phi001 delta
    const FirstOrderFluxes z = flux_closure_first_order(m, kUnit, NonEqFields{});
    CHECK(z.Fkij == Sym3Tensor{});
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            CHECK(z.Gkill.at(i, j) == (i == j ? rat(7) : rat(0)));

    // heat flux: hatF^111 = (3/2)(4/7) = 6/7, hatF^122 = (3/2)(4/7)(1/3) = 2/7
    const FirstOrderFluxes q = flux_closure_first_order(m, kUnit, heat_flux_x());
    CHECK(q.Fkij.at(0, 0, 0) == rat(6, 7));
    CHECK(q.Fkij.at(0, 1, 1) == rat(2, 7));
    CHECK(q.Fkij.at(1, 0, 1) == rat(2, 7));
    CHECK(q.Fkij.at(0, 1, 2) == 0);

    // dynamic pressure: the pi bracket evaluates to 9 at rho = T = 1
    NonEqFields press;
    press.pi = rat(1);
    const FirstOrderFluxes p = flux_closure_first_order(m, kUnit, press);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            CHECK(p.Gkill.at(i, j) - z.Gkill.at(i, j) == (i == j ? rat(9) : rat(0)));
}

TEST_CASE("second-order entropy density") {
    const SymbolicMaterial m = diatomic();
    CHECK(entropy_second_order(m, kUnit, NonEqFields{}) == 0);

    NonEqFields shear;
    shear.Fdev.at(0, 1) = rat(1);
    CHECK(entropy_second_order(m, kUnit, shear) == rat(-1, 2));

    CHECK(entropy_second_order(m, kUnit, heat_flux_x()) == rat(-1, 7));
}

TEST_CASE("entropy flux") {
    const SymbolicMaterial m = diatomic();
    CHECK(entropy_flux(m, kUnit, NonEqFields{}) == Vec3{0, 0, 0});

    // first order: q/T
    CHECK(entropy_flux(m, {rat(1), rat(2)}, heat_flux_x()) == Vec3{rat(1, 2), 0, 0});

    // with dynamic pressure: (1 - 2/7) e_1
    NonEqFields n = heat_flux_x();
    n.pi = rat(1);
    CHECK(entropy_flux(m, kUnit, n) == Vec3{rat(5, 7), 0, 0});
}

TEST_CASE("psi-derived material satisfies all constraints") {
    const PsiFamily fam = monomial_family(ScalarFn::monomial(1, 4, 1));
    const SymbolicMaterial m = psi_material(fam, bridge_free());
    const std::vector<EqState> probes{{rat(1), rat(1)}, {rat(2), rat(1, 2)}, {rat(3), rat(2)}};
    CHECK(validate_material(m, probes).all_passed());
}

TEST_CASE("determinant identities for a psi-derived material") {
    const ScalarFn psi1 = ScalarFn::monomial(1, 4, 1);
    const PsiFamily fam = monomial_family(psi1);
    const FreeInput free = bridge_free();
    const SymbolicMaterial m = psi_material(fam, free);
    const ScalarFn h000 = psi1.diff(Var::Mu).diff(Var::Mu);

    for (const EqState& s : {EqState{rat(1), rat(1)}, EqState{rat(2), rat(3)}}) {
        const TensorState st = equilibrium_state(fam, s);
        const MaterialPoint mp = m.at(s);
        const Rational a = h000.diff(Var::Mu).diff(Var::Mu).eval_exact(st.mu, st.lam);
        const Rational b = h000.diff(Var::Mu).diff(Var::Lam).eval_exact(st.mu, st.lam);
        const Rational c = h000.diff(Var::Lam).diff(Var::Lam).eval_exact(st.mu, st.lam);

        // 2x2: a c - b^2 = 4 rho^2 T^3 (deps/dT) / (dp/drho)
        CHECK(a * c - b * b ==
              4 * s.rho * s.rho * s.T * s.T * s.T * mp.deps_dT / mp.dp_drho);

        // 3x3 with the border (-rho T, -2T(p + rho eps), -(5/3) p T) equals D
        const Rational x = -s.rho * s.T;
        const Rational y = -2 * s.T * (mp.p + s.rho * mp.eps);
        const Rational w = rat(-5, 3) * mp.p * s.T;
        const Rational det3 =
            a * (c * w - y * y) - b * (b * w - y * x) + x * (b * y - c * x);
        CHECK(det3 == derived_coeffs(m, s).D);
    }
}

TEST_CASE("equilibrium coefficient table for a psi-derived material") {
    const ScalarFn psi1 = ScalarFn::monomial(1, 4, 1) + ScalarFn::monomial(rat(1, 2), 3, -1);
    const PsiFamily fam = monomial_family(psi1);
    const FreeInput free = bridge_free();
    const SymbolicMaterial m = psi_material(fam, free);
    const ClosureResult res = make_closure(fam, free.with_zero_defaults(3), 3);

    for (const EqState& s : {EqState{rat(1), rat(1)}, EqState{rat(3), rat(1, 2)}}) {
        const TensorState st = equilibrium_state(fam, s);
        const MaterialPoint mp = m.at(s);
        const Rational enth = mp.p / s.rho + mp.eps;
        auto at_eq = [&](const ScalarFn& f) { return f.eval_exact(st.mu, st.lam); };
        const Rational h4 = s.T * s.T * (2 * enth * mp.dp_dT - mp.dphi001_dT);

        CHECK(at_eq(res.h_prime.coeff({1, 0, 1})) == -2 * s.T * (mp.p + s.rho * mp.eps));
        CHECK(at_eq(res.h_prime.coeff({2, 0, 0})) == -s.T * s.rho);
        CHECK(at_eq(res.h_prime_k.coeff({1, 1, 0})) == -3 * mp.p * s.T);
        CHECK(at_eq(res.h_prime_k.coeff({1, 0, 0})) == mp.p);
        CHECK(at_eq(res.h_prime_k.coeff({1, 0, 0}).diff(Var::Mu)) == -s.T * s.rho);
        CHECK(at_eq(res.h_prime_k.coeff({1, 0, 0}).diff(Var::Lam)) == -2 * s.rho * s.T * enth);
        CHECK(at_eq(res.h_prime_k.coeff({0, 0, 1}).diff(Var::Mu)) == -2 * s.rho * s.T * enth);
        CHECK(at_eq(res.h_prime_k.coeff({0, 0, 1}).diff(Var::Lam)) ==
              2 * h4 - 4 * s.rho * s.T * enth * enth);
        CHECK(at_eq(res.h_prime.coeff({0, 0, 2})) == 2 * h4 - 4 * s.rho * s.T * enth * enth);
    }
}

TEST_CASE("bridge: full agreement for regular families") {
    SplitMix64 rng(616);
    for (const ScalarFn& psi1 :
         {ScalarFn::monomial(1, 4, 1), ScalarFn::monomial(1, 4, -2),
          ScalarFn::monomial(rat(1, 2), 4, 2)}) {
        const PsiFamily fam = monomial_family(psi1);
        std::vector<std::pair<EqState, NonEqFields>> states;
        for (int t = 0; t < 3; ++t) {
            EqState s{rng.nonzero_rational(4), rng.nonzero_rational(4)};
            if (s.rho < 0) s.rho = -s.rho;
            if (s.T < 0) s.T = -s.T;
            NonEqFields n;
            n.pi = rng.rational(3);
            n.q = {rng.rational(3), rng.rational(3), rng.rational(3)};
            n.Fdev.at(0, 1) = rng.rational(3);
            n.Fdev.at(0, 2) = rng.rational(3);
            n.Fdev.at(1, 2) = rng.rational(3);
            n.Fdev.at(0, 0) = rng.rational(3);
            n.Fdev.at(1, 1) = rng.rational(3);
            n.Fdev.at(2, 2) = -n.Fdev.at(0, 0) - n.Fdev.at(1, 1);
            states.emplace_back(s, n);
        }
        const CheckReport rep = bridge_check(fam, bridge_free(), states);
        for (const auto& c : rep.checks) {
            INFO(c.id << ": " << c.detail);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("bridge: dynamic-pressure-degenerate family at pi = 0") {
    // psi_1 = mu^4 lam^-1 has p and eps independent of T: the pi sector is
    // singular for every material derived from it, and the q sector needs a
    // nonzero seed. States with pi = 0 exercise everything else.
    const PsiFamily fam = monomial_family(ScalarFn::monomial(1, 4, -1));
    std::vector<std::pair<EqState, NonEqFields>> states;
    NonEqFields n;
    n.q = {rat(1), rat(-2), rat(1, 3)};
    n.Fdev.at(0, 1) = rat(1);
    n.Fdev.at(0, 0) = rat(2);
    n.Fdev.at(2, 2) = rat(-2);
    states.emplace_back(EqState{rat(1), rat(1)}, n);
    states.emplace_back(EqState{rat(2), rat(1, 2)}, NonEqFields{});
    const CheckReport rep = bridge_check(fam, bridge_free(), states);
    for (const auto& c : rep.checks) {
        INFO(c.id << ": " << c.detail);
        CHECK(c.pass);
    }
}

TEST_CASE("bridge: zero family is flagged, not crashed") {
    PsiFamily zero = build_psi_family(ScalarFn{}, {ScalarFn{}}, 1);
    const CheckReport rep =
        bridge_check(zero, FreeInput::zero(3), {{EqState{rat(1), rat(1)}, NonEqFields{}}});
    const CheckResult* c = rep.find("state-0-valid");
    REQUIRE(c != nullptr);
    CHECK(!c->pass);
}

TEST_CASE("bridge: a perturbed material coefficient is a mismatch") {
    const PsiFamily fam = monomial_family(ScalarFn::monomial(1, 4, 1));
    const FreeInput free = bridge_free();
    const SymbolicMaterial good = psi_material(fam, free);
    const SymbolicMaterial bad(good.p, good.eps, good.phi001,
                               good.phi011 + Expr::rho() * Expr::temperature().pow(2));
    std::vector<std::pair<EqState, NonEqFields>> states{{EqState{rat(1), rat(1)}, heat_flux_x()}};
    CHECK_THROWS_AS(bridge_check_with_material(fam, free, bad, states), BridgeMismatchError);
}
