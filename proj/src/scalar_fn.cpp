#include "et14/scalar_fn.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace et14 {

Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

Rational rat_pow(const Rational& r, long e) {
    if (e == 0) return 1;
    if (r == 0 && e < 0) throw DivisionByZeroError("0 raised to a negative power");
    Rational base = e > 0 ? r : Rational(1) / r;
    long n = e > 0 ? e : -e;
    Rational out = 1;
    for (long i = 0; i < n; ++i) out *= base;
    return out;
}

Rational factorial(long n) {
    Rational out = 1;
    for (long k = 2; k <= n; ++k) out *= k;
    return out;
}

Rational double_factorial(long n) {
    if (n <= 1) return 1;
    Rational out = 1;
    for (long k = n; k >= 2; k -= 2) out *= k;
    return out;
}

ScalarFn ScalarFn::constant(const Rational& c) { return monomial(c, 0, 0); }

ScalarFn ScalarFn::monomial(const Rational& c, int mu_exp, int lam_exp, int log_exp) {
    if (mu_exp < 0) throw DomainError("negative mu exponent");
    if (log_exp < 0) throw DomainError("negative log exponent");
    ScalarFn f;
    f.add_term({mu_exp, lam_exp, log_exp}, c);
    return f;
}

void ScalarFn::add_term(const MonoKey& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool ScalarFn::has_log() const {
    for (const auto& [k, c] : terms_)
        if (k.log > 0) return true;
    return false;
}

bool ScalarFn::depends_on_mu() const {
    for (const auto& [k, c] : terms_)
        if (k.mu > 0) return true;
    return false;
}

int ScalarFn::mu_degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.mu);
    return d;
}

ScalarFn& ScalarFn::operator+=(const ScalarFn& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

ScalarFn& ScalarFn::operator-=(const ScalarFn& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

ScalarFn ScalarFn::operator-() const {
    ScalarFn out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

ScalarFn operator*(const ScalarFn& a, const ScalarFn& b) {
    ScalarFn out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            out.add_term({ka.mu + kb.mu, ka.lam + kb.lam, ka.log + kb.log}, ca * cb);
    return out;
}

ScalarFn& ScalarFn::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

ScalarFn ScalarFn::diff(Var v) const {
    ScalarFn out;
    for (const auto& [k, c] : terms_) {
        if (v == Var::Mu) {
            if (k.mu > 0) out.add_term({k.mu - 1, k.lam, k.log}, c * k.mu);
        } else {
            // d/dlam [lam^b log^d] = b lam^(b-1) log^d + d lam^(b-1) log^(d-1)
            if (k.lam != 0) out.add_term({k.mu, k.lam - 1, k.log}, c * k.lam);
            if (k.log > 0) out.add_term({k.mu, k.lam - 1, k.log - 1}, c * k.log);
        }
    }
    return out;
}

ScalarFn ScalarFn::integrate(Var v) const {
    ScalarFn out;
    for (const auto& [k, c] : terms_) {
        if (v == Var::Mu) {
            out.add_term({k.mu + 1, k.lam, k.log}, c / (k.mu + 1));
            continue;
        }
        if (k.lam == -1) {
            // lam^-1 log^d -> log^(d+1)/(d+1)
            out.add_term({k.mu, 0, k.log + 1}, c / (k.log + 1));
            continue;
        }
        // Repeated integration by parts:
        // int lam^b log^d = lam^(b+1) log^d/(b+1) - d/(b+1) int lam^b log^(d-1)
        Rational coeff = c;
        for (int d = k.log; d >= 0; --d) {
            out.add_term({k.mu, k.lam + 1, d}, coeff / (k.lam + 1));
            coeff = -coeff * d / (k.lam + 1);
        }
    }
    return out;
}

Rational ScalarFn::eval_exact(const Rational& mu0, const Rational& lam0) const {
    Rational acc = 0;
    for (const auto& [k, c] : terms_) {
        if (k.lam < 0 && lam0 == 0) throw DivisionByZeroError("lam = 0 at a pole");
        if (k.log > 0) {
            if (lam0 <= 0) throw DomainError("log term requires lam > 0");
            if (lam0 == 1) continue;  // ln 1 = 0, term vanishes exactly
            throw DomainError("log term has no exact rational value at lam = " +
                              rat_to_string(lam0));
        }
        acc += c * rat_pow(mu0, k.mu) * rat_pow(lam0, k.lam);
    }
    return acc;
}

double ScalarFn::eval_double(const Rational& mu0, const Rational& lam0) const {
    double acc = 0;
    const double mu = mu0.get_d();
    const double lam = lam0.get_d();
    for (const auto& [k, c] : terms_) {
        if (k.lam < 0 && lam0 == 0) throw DivisionByZeroError("lam = 0 at a pole");
        if (k.log > 0 && lam0 <= 0) throw DomainError("log term requires lam > 0");
        double t = c.get_d() * std::pow(mu, k.mu) * std::pow(lam, k.lam);
        if (k.log > 0) t *= std::pow(std::log(lam), k.log);
        acc += t;
    }
    return acc;
}

std::string ScalarFn::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(c);
        if (k.mu != 0) os << " * mu" << (k.mu == 1 ? "" : "^" + std::to_string(k.mu));
        if (k.lam != 0) os << " * lam" << (k.lam == 1 ? "" : "^" + std::to_string(k.lam));
        if (k.log != 0) os << " * log" << (k.log == 1 ? "" : "^" + std::to_string(k.log));
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool peek_alpha() {
        skip_ws();
        return pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]));
    }

    long integer() {
        skip_ws();
        bool neg = eat('-');
        if (!neg) eat('+');
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ConfigError("expected integer at position " + std::to_string(pos) + " in: " + s);
        long v = std::stol(s.substr(start, pos - start));
        return neg ? -v : v;
    }

    Rational rational() {
        long num = integer();
        if (eat('/')) {
            long den = integer();
            return rat(num, den);
        }
        return rat(num);
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    }

    // term := factor ('*' factor)*, factor := rational | (mu|lam|log)['^' int]
    ScalarFn term(bool negated) {
        Rational coeff = negated ? rat(-1) : rat(1);
        int a = 0, b = 0, d = 0;
        bool expect_factor = true;
        while (expect_factor) {
            if (peek_alpha()) {
                std::string name = ident();
                int e = eat('^') ? static_cast<int>(integer()) : 1;
                if (name == "mu")
                    a += e;
                else if (name == "lam")
                    b += e;
                else if (name == "log")
                    d += e;
                else
                    throw ConfigError("unknown symbol '" + name + "' in: " + s);
            } else {
                coeff *= rational();
            }
            expect_factor = eat('*');
        }
        return ScalarFn::monomial(coeff, a, b, d);
    }
};

}  // namespace

ScalarFn ScalarFn::parse(const std::string& text) {
    Parser p(text);
    ScalarFn out;
    bool neg = p.eat('-');
    if (!neg) p.eat('+');
    out += p.term(neg);
    for (;;) {
        p.skip_ws();
        if (p.pos >= p.s.size()) break;
        if (p.eat('+'))
            out += p.term(false);
        else if (p.eat('-'))
            out += p.term(true);
        else
            throw ConfigError("unexpected character at position " + std::to_string(p.pos) +
                              " in: " + text);
    }
    return out;
}

}  // namespace et14
