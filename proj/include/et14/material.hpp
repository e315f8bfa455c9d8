#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "et14/errors.hpp"
#include "et14/rational.hpp"

namespace et14 {

struct EqState {
    Rational rho;
    Rational T;
};

// Exact rational-function expressions over (rho, T), with symbolic
// differentiation. This is the carrier for material state functions, so that
// every constraint check is an exact equality.
class Expr {
public:
    Expr() : Expr(constant(0)) {}

    static Expr constant(const Rational& c);
    static Expr rho();
    static Expr temperature();

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;
    Expr pow(long e) const;

    enum class V { Rho, T };
    Expr diff(V v) const;

    Rational eval(const EqState& s) const;
    std::string to_string() const;

    // Grammar: sums of products of powers over "rho", "T", rational literals
    // and named rational parameters, with parentheses.
    static Expr parse(const std::string& text,
                      const std::map<std::string, Rational>& params = {});

private:
    struct Node;
    friend struct ExprDetail;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Point data of a material at one equilibrium state: the four state
// functions and their first partial derivatives.
struct MaterialPoint {
    Rational p, eps, phi001, phi011;
    Rational dp_drho, dp_dT;
    Rational deps_drho, deps_dT;
    Rational dphi001_drho, dphi001_dT;
    Rational dphi011_drho, dphi011_dT;
};

class MaterialModel {
public:
    virtual ~MaterialModel() = default;
    virtual MaterialPoint at(const EqState& s) const = 0;
};

// Material given by closed-form expressions; derivatives are symbolic.
class SymbolicMaterial final : public MaterialModel {
public:
    SymbolicMaterial(Expr p, Expr eps, Expr phi001, Expr phi011);

    MaterialPoint at(const EqState& s) const override;

    Expr p, eps, phi001, phi011;

private:
    Expr dp_drho_, dp_dT_, deps_drho_, deps_dT_;
    Expr dphi001_drho_, dphi001_dT_, dphi011_drho_, dphi011_dT_;
};

// Key-value material file:
//   param c_v = 5/2
//   p = rho * T
//   epsilon = c_v * T
//   phi001 = 7 * rho * T^2
//   phi011 = -27 * rho * T^3
// '#' starts a comment. All four state functions are required.
SymbolicMaterial parse_material(const std::string& text);

// The polytropic reference gas p = rho T, eps = c_v T (units with k_B/m = 1),
// with the minimal polynomial solutions for phi001 and phi011:
// phi001 = 2 (c_v + 1) rho T^2, phi011 = -6 (c_v + 2) rho T^3.
SymbolicMaterial polytropic_gas(const Rational& c_v);

// Numeric fallback: state functions as plain callables, derivatives by
// central differences with step T * 2^-20. Used only by the tolerance-based
// validator.
class NumericMaterial {
public:
    using Fn = std::function<double(double rho, double T)>;

    NumericMaterial(Fn p, Fn eps, Fn phi001, Fn phi011)
        : p(std::move(p)), eps(std::move(eps)), phi001(std::move(phi001)),
          phi011(std::move(phi011)) {}

    Fn p, eps, phi001, phi011;
};

}  // namespace et14
