#pragma once

#include <map>
#include <string>

#include "et14/errors.hpp"
#include "et14/rational.hpp"

namespace et14 {

enum class Var { Mu, Lam };

// Monomial exponents of mu^a * lam^b * (ln lam)^d. Mu powers are nonnegative
// (every coefficient function in the expansion is mu-polynomial), lam powers
// run over all integers (Laurent), and log powers only arise from
// lam-integration of lam^-1 terms.
struct MonoKey {
    int mu = 0;
    int lam = 0;
    int log = 0;

    auto operator<=>(const MonoKey&) const = default;
};

// Exact function of (mu, lam): a finite sum of rational * mu^a * lam^b *
// (ln lam)^d terms, closed under +, *, d/dmu, d/dlam and both antiderivatives.
// Canonical form (no zero coefficients, unique keys) makes equality of the
// term maps the equality of functions.
class ScalarFn {
public:
    using TermMap = std::map<MonoKey, Rational>;

    ScalarFn() = default;

    static ScalarFn constant(const Rational& c);
    static ScalarFn monomial(const Rational& c, int mu_exp, int lam_exp, int log_exp = 0);
    static ScalarFn mu_pow(int a) { return monomial(1, a, 0); }
    static ScalarFn lam_pow(int b) { return monomial(1, 0, b); }

    bool is_zero() const { return terms_.empty(); }
    bool has_log() const;
    bool depends_on_mu() const;
    // Largest mu exponent, or -1 for the zero function.
    int mu_degree() const;

    ScalarFn& operator+=(const ScalarFn& o);
    ScalarFn& operator-=(const ScalarFn& o);
    ScalarFn operator-() const;
    friend ScalarFn operator+(ScalarFn a, const ScalarFn& b) { return a += b; }
    friend ScalarFn operator-(ScalarFn a, const ScalarFn& b) { return a -= b; }
    friend ScalarFn operator*(const ScalarFn& a, const ScalarFn& b);
    ScalarFn& operator*=(const Rational& c);
    friend ScalarFn operator*(const Rational& c, ScalarFn f) { return f *= c; }

    bool operator==(const ScalarFn&) const = default;

    ScalarFn diff(Var v) const;

    // One antiderivative, with integration constant zero; callers add their
    // constants explicitly. diff(integrate(f, v), v) == f exactly.
    ScalarFn integrate(Var v) const;

    // Exact evaluation. Log terms are only admitted when they vanish exactly
    // (lam0 == 1); otherwise the value is irrational and DomainError is
    // thrown. DivisionByZeroError for lam0 == 0 against a negative lam power.
    Rational eval_exact(const Rational& mu0, const Rational& lam0) const;

    // Floating evaluation using ln(lam0); same pole/domain errors.
    double eval_double(const Rational& mu0, const Rational& lam0) const;

    // Rendered as "c * mu^a * lam^b * log^d" terms joined by " + ";
    // parse() reads the same grammar back losslessly.
    std::string to_string() const;
    static ScalarFn parse(const std::string& text);

    const TermMap& terms() const { return terms_; }

private:
    void add_term(const MonoKey& k, const Rational& c);

    TermMap terms_;
};

}  // namespace et14
