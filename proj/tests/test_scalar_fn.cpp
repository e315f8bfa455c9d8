#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "et14/scalar_fn.hpp"

using namespace et14;

namespace {

ScalarFn random_fn(SplitMix64& rng, bool with_log = true) {
    ScalarFn f;
    const int n_terms = 1 + static_cast<int>(rng.below(5));
    for (int t = 0; t < n_terms; ++t) {
        const int mu = static_cast<int>(rng.below(5));
        const int lam = static_cast<int>(rng.below(7)) - 3;
        const int log = with_log ? static_cast<int>(rng.below(3)) : 0;
        f += ScalarFn::monomial(rng.nonzero_rational(6), mu, lam, log);
    }
    return f;
}

}  // namespace

TEST_CASE("combine: add and mul") {
    const ScalarFn mu = ScalarFn::mu_pow(1);
    CHECK((mu + (-mu)).is_zero());
    CHECK(ScalarFn::lam_pow(-1) * ScalarFn::lam_pow(1) == ScalarFn::constant(1));
    // mul(-1/2 lam^-1 mu^2, 3 lam^-1) = -3/2 mu^2 lam^-2
    const ScalarFn a = ScalarFn::monomial(rat(-1, 2), 2, -1);
    const ScalarFn b = ScalarFn::monomial(rat(3), 0, -1);
    CHECK(a * b == ScalarFn::monomial(rat(-3, 2), 2, -2));
}

TEST_CASE("diff") {
    CHECK(ScalarFn::monomial(1, 2, -1).diff(Var::Mu) == ScalarFn::monomial(2, 1, -1));
    CHECK(ScalarFn::monomial(1, 0, 0, 1).diff(Var::Lam) == ScalarFn::lam_pow(-1));
    // d/dlam lam^-2 log = -2 lam^-3 log + lam^-3
    const ScalarFn f = ScalarFn::monomial(1, 0, -2, 1);
    ScalarFn want = ScalarFn::monomial(-2, 0, -3, 1);
    want += ScalarFn::monomial(1, 0, -3);
    CHECK(f.diff(Var::Lam) == want);
}

TEST_CASE("integrate") {
    CHECK(ScalarFn::lam_pow(-1).integrate(Var::Lam) == ScalarFn::monomial(1, 0, 0, 1));
    CHECK(ScalarFn::mu_pow(2).integrate(Var::Mu) == ScalarFn::monomial(rat(1, 3), 3, 0));
    CHECK(ScalarFn::monomial(rat(3, 2), 0, -1).integrate(Var::Lam) ==
          ScalarFn::monomial(rat(3, 2), 0, 0, 1));
}

TEST_CASE("eval") {
    // mu^3 * (-1/(2 lam)) at mu = 2, lam = 1/2 -> -8
    const ScalarFn f = ScalarFn::monomial(rat(-1, 2), 3, -1);
    CHECK(f.eval_exact(rat(2), rat(1, 2)) == rat(-8));
    CHECK(ScalarFn::constant(1).eval_exact(rat(7, 3), rat(-5)) == 1);
    CHECK_THROWS_AS(ScalarFn::lam_pow(-2).eval_exact(rat(1), rat(0)), DivisionByZeroError);
    CHECK_THROWS_AS(ScalarFn::monomial(1, 0, 0, 1).eval_exact(rat(0), rat(-2)), DomainError);
    // log terms vanish exactly at lam = 1
    ScalarFn g = ScalarFn::monomial(rat(5), 1, 2, 3);
    g += ScalarFn::constant(rat(1, 7));
    CHECK(g.eval_exact(rat(3), rat(1)) == rat(1, 7));
}

TEST_CASE("mixed partials commute") {
    SplitMix64 rng(4711);
    for (int i = 0; i < 50; ++i) {
        const ScalarFn f = random_fn(rng);
        CHECK(f.diff(Var::Mu).diff(Var::Lam) == f.diff(Var::Lam).diff(Var::Mu));
    }
}

TEST_CASE("diff undoes integrate") {
    SplitMix64 rng(271828);
    for (int i = 0; i < 50; ++i) {
        const ScalarFn f = random_fn(rng);
        CHECK(f.integrate(Var::Mu).diff(Var::Mu) == f);
        CHECK(f.integrate(Var::Lam).diff(Var::Lam) == f);
    }
}

TEST_CASE("eval is a ring homomorphism") {
    SplitMix64 rng(1618);
    for (int i = 0; i < 30; ++i) {
        const ScalarFn f = random_fn(rng, false);
        const ScalarFn g = random_fn(rng, false);
        const Rational mu0 = rng.rational(5);
        const Rational lam0 = rng.nonzero_rational(5);
        CHECK((f * g).eval_exact(mu0, lam0) ==
              f.eval_exact(mu0, lam0) * g.eval_exact(mu0, lam0));
        CHECK((f + g).eval_exact(mu0, lam0) ==
              f.eval_exact(mu0, lam0) + g.eval_exact(mu0, lam0));
    }
    // with log terms, at the one point where they are exact
    SplitMix64 rng2(31337);
    for (int i = 0; i < 20; ++i) {
        const ScalarFn f = random_fn(rng2);
        const ScalarFn g = random_fn(rng2);
        CHECK((f * g).eval_exact(rat(2), rat(1)) ==
              f.eval_exact(rat(2), rat(1)) * g.eval_exact(rat(2), rat(1)));
    }
}

TEST_CASE("text round trip") {
    SplitMix64 rng(99);
    for (int i = 0; i < 50; ++i) {
        const ScalarFn f = random_fn(rng);
        CHECK(ScalarFn::parse(f.to_string()) == f);
    }
    CHECK(ScalarFn::parse("0").is_zero());
    CHECK(ScalarFn::parse("mu^4 * lam^-1") == ScalarFn::monomial(1, 4, -1));
    CHECK(ScalarFn::parse("-3/2 * mu^2 + lam") ==
          ScalarFn::monomial(rat(-3, 2), 2, 0) + ScalarFn::lam_pow(1));
    CHECK_THROWS_AS(ScalarFn::parse("mu^4 $ lam"), ConfigError);
}

TEST_CASE("canonical form: no zero terms survive") {
    ScalarFn f = ScalarFn::monomial(rat(1, 2), 1, 1);
    f += ScalarFn::monomial(rat(-1, 2), 1, 1);
    CHECK(f.is_zero());
    CHECK(f.terms().empty());
    CHECK(f.to_string() == "0");
}
