#include "et14/closure_gen.hpp"

#include <sstream>

namespace et14 {

PsiFamily build_psi_family(const ScalarFn& h_eq, const std::vector<ScalarFn>& consts, int M) {
    if (static_cast<int>(consts.size()) != M)
        throw DomainError("need one integration constant per mu-integration");
    for (const auto& c : consts)
        if (c.depends_on_mu()) throw DomainError("psi integration constants must be lam-only");
    PsiFamily fam;
    fam.psi.reserve(M + 1);
    fam.psi.push_back(h_eq);
    for (int n = 0; n < M; ++n)
        fam.psi.push_back(fam.psi.back().integrate(Var::Mu) + consts[n]);
    return fam;
}

FreeInput FreeInput::zero(int order) {
    FreeInput f;
    for (int r = 1; r <= order - 1; r += 2) f.h_seed.emplace(r, ScalarFn{});
    return f;
}

FreeInput FreeInput::with_zero_defaults(int order) const {
    FreeInput f = *this;
    for (int r = 1; r <= order - 1; r += 2) f.h_seed.try_emplace(r, ScalarFn{});
    return f;
}

void FreeInput::validate() const {
    for (const auto& [r, fn] : h_seed) {
        if (r < 1 || r % 2 == 0)
            throw DomainError("seed index must be a positive odd integer, got " +
                              std::to_string(r));
        if (fn.depends_on_mu())
            throw DomainError("seed H_{1,0," + std::to_string(r) + ",0} must be lam-only");
    }
}

ScalarFn CoefficientTable::canonical_or_zero(int Q, int r) const {
    auto it = canonical.find({Q, r});
    return it == canonical.end() ? ScalarFn{} : it->second;
}

ScalarFn CoefficientTable::at(int p, int q, int r, int s) const {
    if (p < 0 || q < 0 || r < 0 || s < 0) throw DomainError("negative table index");
    if ((p + r) % 2 != 0) return {};
    if (p >= 2) {
        // index shift onto the p = 0 / p = 1 families
        const int shift = p / 2;
        return (p % 2 == 0) ? at(0, q + shift, r, s + shift) : at(1, q + shift, r, s + shift);
    }
    if (p == 1) {
        if (2 * s >= r + 1) return {};
        ScalarFn f = canonical_or_zero(q + s, r - 2 * s);
        for (int k = 0; k < 2 * s; ++k) f = f.diff(Var::Lam);
        return f;
    }
    // p == 0 (r even): zero at s = 0, zero at r = 0, else an odd lam-derivative
    // of the canonical family.
    if (s == 0 || r == 0) return {};
    const int sp = s - 1;
    if (2 * sp > r - 2) return {};
    ScalarFn f = canonical_or_zero(q + sp, r - 2 * sp - 1);
    for (int k = 0; k < 2 * sp + 1; ++k) f = f.diff(Var::Lam);
    return f;
}

void CoefficientTable::materialize() {
    entries.clear();
    for (int p = 0; p <= order; ++p)
        for (int r = 0; p + r <= order; ++r) {
            if ((p + r) % 2 != 0) continue;
            for (int q = 0; p + q + r <= order; ++q) {
                int s_lo = 0, s_hi = -1;
                if (p == 0) {
                    s_lo = 1;
                    s_hi = r / 2;
                } else if (p == 1) {
                    s_hi = (r - 1) / 2;
                } else {
                    s_hi = (r - p) / 2;  // shifted branch window
                }
                for (int s = s_lo; s <= s_hi; ++s) {
                    ScalarFn v = at(p, q, r, s);
                    if (!v.is_zero()) entries.emplace(TableKey{p, q, r, s}, std::move(v));
                }
            }
        }
}

CoefficientTable solve_delta_coeffs(const FreeInput& free, int N) {
    free.validate();
    for (int r = 1; r <= N - 1; r += 2)
        if (!free.h_seed.contains(r))
            throw MissingSeedError("missing seed H_{1,0," + std::to_string(r) + ",0}");

    CoefficientTable t;
    t.order = N;
    int rho_max = N + 3;
    for (const auto& [r, fn] : free.h_seed) rho_max = std::max(rho_max, r);
    if (rho_max % 2 == 0) ++rho_max;
    const int q_max = 2 * N + 6;

    for (int rho = 1; rho <= rho_max; rho += 2) {
        auto seed_it = free.h_seed.find(rho);
        ScalarFn cur = seed_it == free.h_seed.end() ? ScalarFn{} : seed_it->second;
        t.canonical.emplace(std::make_pair(0, rho), cur);
        const int R = rho + 1;
        for (int Q = 0; Q < q_max; ++Q) {
            // d/dlam (lam^R H_{1,Q+1,rho,0}) = -((2Q+R+1)/2) lam^(R-1) d/dlam H_{1,Q,rho,0}
            ScalarFn rhs =
                ScalarFn::monomial(-Rational(2 * Q + R + 1) / 2, 0, R - 1) * cur.diff(Var::Lam);
            ScalarFn primitive = rhs.integrate(Var::Lam);
            auto itc = free.int_consts.find({Q, R});
            if (itc != free.int_consts.end()) primitive += ScalarFn::constant(itc->second);
            cur = primitive * ScalarFn::lam_pow(-R);
            t.canonical.emplace(std::make_pair(Q + 1, rho), cur);
        }
    }
    t.materialize();
    return t;
}

IsoScalarPoly build_H1(const PsiFamily& fam, int N) {
    IsoScalarPoly out;
    for (int p = 0; p <= N; ++p)
        for (int r = 0; p + r <= N; ++r) {
            if ((p + r) % 2 != 0) continue;
            const int n = (p + r) / 2;
            if (n >= static_cast<int>(fam.psi.size()))
                throw FamilyTooShallowError("psi family does not reach index " +
                                            std::to_string(n));
            for (int q = 0; p + q + r <= N; ++q) {
                ScalarFn f =
                    fam.psi[n] * ScalarFn::monomial(rat_pow(rat(-1, 2), q + n), 0, -(q + n));
                for (int k = 0; k < r; ++k) f = f.diff(Var::Lam);
                for (int k = 0; k < p; ++k) f = f.diff(Var::Mu);
                const long w = p + 2 * q + r + 1;
                f *= double_factorial(w) / Rational(w);
                out.add_term({p, q, r}, f);
            }
        }
    return out;
}

IsoScalarPoly assemble_delta_H(const CoefficientTable& table, int N) {
    IsoScalarPoly out;
    for (int p = 0; p <= N; ++p)
        for (int r = 0; p + r <= N; ++r) {
            if ((p + r) % 2 != 0) continue;
            for (int q = 0; p + q + r <= N; ++q) {
                ScalarFn coeff;
                for (int s = 0; s <= r; ++s) {
                    ScalarFn v = table.at(p, q, r, s);
                    if (v.is_zero()) continue;
                    coeff += ScalarFn::monomial(Rational(1) / factorial(s), s, 0) * v;
                }
                if (!coeff.is_zero()) out.add_term({p, q, r}, coeff);
            }
        }
    return out;
}

ClosureResult make_closure(const PsiFamily& fam, const FreeInput& free, int N) {
    ClosureResult res;
    res.order = N;
    res.provenance.fam = fam;
    res.provenance.free = free;
    res.provenance.h1 = build_H1(fam, N);
    res.provenance.table = solve_delta_coeffs(free, N);
    res.provenance.delta_h = assemble_delta_H(res.provenance.table, N);
    res.H = res.provenance.h1 + res.provenance.delta_h;
    res.h_prime = res.H.diff_mu();
    res.h_prime_k = res.H.dmu_k();
    return res;
}

// --------------------------------------------------------------------------
// Verification
// --------------------------------------------------------------------------

namespace {

std::string idx4(int p, int q, int r, int s) {
    std::ostringstream os;
    os << "(" << p << "," << q << "," << r << "," << s << ")";
    return os.str();
}

struct IdentityCheck {
    bool ok = true;
    std::string detail;

    void fail(const std::string& d) {
        if (ok) {
            ok = false;
            detail = d;
        }
    }
    void require_zero_fn(const ScalarFn& f, const std::string& where) {
        if (!f.is_zero()) fail(where);
    }
    void require_zero_poly(const ConcretePoly& poly, int trunc, const std::string& where) {
        if (!ok) return;
        ConcretePoly t = poly.truncated(trunc);
        if (!t.is_zero()) fail(where + ": " + t.first_term_string());
    }
};

}  // namespace

CheckReport verify_table(const CoefficientTable& table, int N) {
    CheckReport report;
    const ScalarFn lam = ScalarFn::lam_pow(1);

    IdentityCheck cris1, cris2, cris3, cris5, cris6;
    IdentityCheck rec1521, rec1522, rec171, beta3, beta4, cris12a;

    for (int s = 0; s <= N + 2; ++s) cris1.require_zero_fn(table.at(0, 0, 0, s), idx4(0, 0, 0, s));
    for (int q = 0; q <= N + 1; ++q)
        for (int r = 0; q + r <= N + 1; ++r)
            cris2.require_zero_fn(table.at(0, q, r, 0), idx4(0, q, r, 0));
    for (int q = 0; q <= N + 1; ++q)
        for (int s = 0; s <= N + 1; ++s)
            cris3.require_zero_fn(table.at(0, q, 0, s), idx4(0, q, 0, s));

    for (int p = 0; p <= N; ++p)
        for (int r = 0; p + r <= N; ++r)
            for (int q = 0; p + q + r <= N; ++q)
                for (int s = 0; s <= r + 2; ++s) {
                    // vanishing branches
                    if (p == 1 && 2 * s >= r + 1)
                        cris5.require_zero_fn(table.at(1, q, r, s), idx4(1, q, r, s));
                    if (p == 0 && r >= 2 && s >= 1 && 2 * (s - 1) > r - 2)
                        cris6.require_zero_fn(table.at(0, q, r, s), idx4(0, q, r, s));

                    // H_{p,q+1,r,s+1} = H_{p+2,q,r,s}
                    if (table.at(p, q + 1, r, s + 1) != table.at(p + 2, q, r, s))
                        rec1521.fail(idx4(p, q, r, s));
                    // H_{p,q,r+1,s+1} = d/dlam H_{p+1,q,r,s}
                    if (table.at(p, q, r + 1, s + 1) != table.at(p + 1, q, r, s).diff(Var::Lam))
                        rec1522.fail(idx4(p, q, r, s));

                    // (P+2Q+R+1) H_{P,Q,R,s+1} + 2 lam H_{P,Q+1,R,s+1}
                    //   + 2R H_{P+1,Q+1,R-1,s} = 0
                    {
                        ScalarFn acc = Rational(p + 2 * q + r + 1) * table.at(p, q, r, s + 1);
                        acc += 2 * (lam * table.at(p, q + 1, r, s + 1));
                        if (r > 0) acc += Rational(2 * r) * table.at(p + 1, q + 1, r - 1, s);
                        rec171.require_zero_fn(acc, idx4(p, q, r, s));
                    }

                    if (p == 0) {
                        // beta.3 lines
                        if (table.at(0, q, r + 1, s + 1) != table.at(1, q, r, s).diff(Var::Lam))
                            beta3.fail("line 1 at " + idx4(0, q, r, s));
                        if (table.at(1, q, r + 1, s + 1) !=
                            table.at(0, q + 1, r, s + 1).diff(Var::Lam))
                            beta3.fail("line 2 at " + idx4(1, q, r, s));
                        // beta.4 lines
                        ScalarFn b1 = Rational(2 * q + r + 1) * table.at(0, q, r, s + 1);
                        b1 += 2 * (lam * table.at(0, q + 1, r, s + 1));
                        if (r > 0) b1 += Rational(2 * r) * table.at(1, q + 1, r - 1, s);
                        beta4.require_zero_fn(b1, "line 1 at " + idx4(0, q, r, s));
                        ScalarFn b2 = Rational(2 * q + r + 2) * table.at(1, q, r, s + 1);
                        b2 += 2 * (lam * table.at(1, q + 1, r, s + 1));
                        if (r > 0) b2 += Rational(2 * r) * table.at(0, q + 2, r - 1, s + 1);
                        beta4.require_zero_fn(b2, "line 2 at " + idx4(1, q, r, s));
                    }
                }

    // d/dlam(lam^2 H_{1,1,1,0}) = -3/2 lam d/dlam H_{1,0,1,0} and the
    // (1,2,1,0) companion with factor -5/2.
    {
        const ScalarFn lam2 = ScalarFn::lam_pow(2);
        ScalarFn lhs1 = (lam2 * table.at(1, 1, 1, 0)).diff(Var::Lam);
        ScalarFn rhs1 = rat(-3, 2) * (lam * table.at(1, 0, 1, 0).diff(Var::Lam));
        cris12a.require_zero_fn(lhs1 - rhs1, "first identity");
        ScalarFn lhs2 = (lam2 * table.at(1, 2, 1, 0)).diff(Var::Lam);
        ScalarFn rhs2 = rat(-5, 2) * (lam * table.at(1, 1, 1, 0).diff(Var::Lam));
        cris12a.require_zero_fn(lhs2 - rhs2, "second identity");
    }

    report.add("eq-cris1", cris1.ok, cris1.detail);
    report.add("eq-cris2", cris2.ok, cris2.detail);
    report.add("eq-cris3", cris3.ok, cris3.detail);
    report.add("eq-cris5", cris5.ok, cris5.detail);
    report.add("eq-cris6", cris6.ok, cris6.detail);
    report.add("eq-15.2.1", rec1521.ok, rec1521.detail);
    report.add("eq-15.2.2", rec1522.ok, rec1522.detail);
    report.add("eq-17.1", rec171.ok, rec171.detail);
    report.add("eq-beta.3", beta3.ok, beta3.detail);
    report.add("eq-beta.4", beta4.ok, beta4.detail);
    report.add("eq-cris12a", cris12a.ok, cris12a.detail);
    return report;
}

CheckReport verify_closure(const ClosureResult& res) {
    CheckReport report;
    const int N = res.order;
    const int trunc = N - 2;

    // Assembly invariants of the result object itself.
    report.add("closure-potentials",
               res.h_prime == res.H.diff_mu() && res.h_prime_k == res.H.dmu_k());

    const ConcretePoly Hc = res.H.expand();
    const ConcretePoly d_mu = Hc.diff(Var::Mu);
    const ConcretePoly d_lam = Hc.diff(Var::Lam);
    std::array<ConcretePoly, 3> d_vec;
    for (int i = 0; i < 3; ++i) d_vec[i] = Hc.diff_var(mu_vec_var(i));

    auto mat = [](int i, int j) { return mu_mat_var(std::min(i, j), std::max(i, j)); };
    const ScalarFn lam = ScalarFn::lam_pow(1);

    {
        IdentityCheck c;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                c.require_zero_poly(d_mu.diff_var(mat(i, j)) - d_vec[i].diff_var(mu_vec_var(j)),
                                    trunc,
                                    "(i,j)=(" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ")");
        report.add("eq-9.1.1", c.ok, c.detail);
    }
    {
        IdentityCheck c;
        for (int i = 0; i < 3; ++i)
            c.require_zero_poly(d_mu.diff_var(lam_vec_var(i)) - d_lam.diff_var(mu_vec_var(i)),
                                trunc, "i=" + std::to_string(i + 1));
        report.add("eq-9.1.2", c.ok, c.detail);
    }
    {
        IdentityCheck c;
        for (int k = 0; k < 3; ++k)
            for (int i = k + 1; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    c.require_zero_poly(
                        d_vec[k].diff_var(mat(i, j)) - d_vec[i].diff_var(mat(k, j)), trunc,
                        "(k,i,j)=(" + std::to_string(k + 1) + "," + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");
        report.add("eq-9.1.3", c.ok, c.detail);
    }
    {
        IdentityCheck c;
        for (int k = 0; k < 3; ++k)
            for (int i = k + 1; i < 3; ++i)
                c.require_zero_poly(
                    d_vec[k].diff_var(lam_vec_var(i)) - d_vec[i].diff_var(lam_vec_var(k)), trunc,
                    "(k,i)=(" + std::to_string(k + 1) + "," + std::to_string(i + 1) + ")");
        report.add("eq-9.1.4", c.ok, c.detail);
    }
    {
        IdentityCheck c;
        for (int k = 0; k < 3; ++k) {
            const ConcretePoly dd_mu_veck = d_mu.diff_var(mu_vec_var(k));
            for (int i = 0; i < 3; ++i) {
                ConcretePoly t = dd_mu_veck.times_var(mu_vec_var(i));
                for (int j = 0; j < 3; ++j) {
                    ConcretePoly a = d_mu.diff_var(mat(k, j)).times_var(mat(j, i));
                    a += a;
                    t += a;
                    ConcretePoly b = d_vec[k].diff_var(mat(i, j)).times_var(lam_vec_var(j));
                    b += b;
                    t += b;
                }
                ConcretePoly cterm = d_mu.diff_var(mat(k, i)).scaled(lam);
                cterm += cterm;
                t += cterm;
                t += d_mu.diff_var(lam_vec_var(k)).times_var(lam_vec_var(i));
                if (k == i) t += d_mu;
                c.require_zero_poly(t, trunc,
                                    "(k,i)=(" + std::to_string(k + 1) + "," +
                                        std::to_string(i + 1) + ")");
            }
        }
        report.add("eq-9.3", c.ok, c.detail);
    }
    {
        // the frame condition that is implied by the others
        IdentityCheck c;
        const ConcretePoly d_mumu = d_mu.diff(Var::Mu);
        const ConcretePoly d_mulam = d_mu.diff(Var::Lam);
        for (int i = 0; i < 3; ++i) {
            ConcretePoly t = d_mumu.times_var(mu_vec_var(i));
            for (int h = 0; h < 3; ++h) {
                ConcretePoly a = d_mu.diff_var(mu_vec_var(h)).times_var(mat(i, h));
                a += a;
                t += a;
                if (h == i) {
                    ConcretePoly b = d_mu.diff_var(mu_vec_var(h)).scaled(lam);
                    b += b;
                    t += b;
                }
                ConcretePoly u = d_mu.diff_var(mat(h, i)).times_var(lam_vec_var(h));
                u += u;
                t += u;
            }
            t += d_mulam.times_var(lam_vec_var(i));
            c.require_zero_poly(t, trunc, "i=" + std::to_string(i + 1));
        }
        report.add("eq-9.2.1-redundant", c.ok, c.detail);
    }
    {
        // symmetry conditions in potential form
        IdentityCheck c;
        const ConcretePoly hp = res.h_prime.expand();
        const std::array<ConcretePoly, 3> hpk = res.h_prime_k.expand();
        const ScalarFn half = ScalarFn::constant(rat(1, 2));
        for (int i = 0; i < 3; ++i) {
            c.require_zero_poly(hp.diff_var(mu_vec_var(i)) - hpk[i].diff(Var::Mu), trunc,
                                "line 1, i=" + std::to_string(i + 1));
            c.require_zero_poly(hp.diff_var(lam_vec_var(i)) - hpk[i].diff(Var::Lam), trunc,
                                "line 3, i=" + std::to_string(i + 1));
            for (int j = i; j < 3; ++j) {
                ConcretePoly sym = (hpk[i].diff_var(mu_vec_var(j)) +
                                    hpk[j].diff_var(mu_vec_var(i)))
                                       .scaled(half);
                c.require_zero_poly(hp.diff_var(mat(i, j)) - sym, trunc,
                                    "line 2, (i,j)=(" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ")");
            }
        }
        for (int k = 0; k < 3; ++k)
            for (int i = k + 1; i < 3; ++i) {
                for (int j = 0; j < 3; ++j)
                    c.require_zero_poly(
                        hpk[k].diff_var(mat(i, j)) - hpk[i].diff_var(mat(k, j)), trunc,
                        "line 4, (k,i,j)=(" + std::to_string(k + 1) + "," +
                            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
                c.require_zero_poly(
                    hpk[k].diff_var(lam_vec_var(i)) - hpk[i].diff_var(lam_vec_var(k)), trunc,
                    "line 5, (k,i)=(" + std::to_string(k + 1) + "," + std::to_string(i + 1) +
                        ")");
            }
        report.add("eq-3.0", c.ok, c.detail);
    }
    {
        // (delta H)_eq = 0
        report.add("eq-11.10", res.provenance.delta_h.coeff({0, 0, 0}).is_zero());

        // mu-degree bound: the order-n part of delta H is mu-polynomial of
        // degree at most n-1
        IdentityCheck c;
        const ConcretePoly dHc = res.provenance.delta_h.expand();
        for (int n = 0; n <= N; ++n) {
            const int deg = dHc.homogeneous_part(n).mu_degree();
            if (deg > n - 1)
                c.fail("order " + std::to_string(n) + " has mu-degree " + std::to_string(deg));
        }
        report.add("property-1", c.ok, c.detail);
    }

    report.merge(verify_table(res.provenance.table, N));
    return report;
}

MomentsAtRest moments_at_rest(const ClosureResult& res, const TensorState& state) {
    if (state.lam == 0) throw DomainError("state needs lam != 0");
    auto gradient = [&state](const ConcretePoly& poly) {
        MomentVec14 f;
        f.F = poly.diff(Var::Mu).eval(state);
        f.G = poly.diff(Var::Lam).eval(state);
        for (int i = 0; i < 3; ++i) {
            f.F_i[i] = poly.diff_var(mu_vec_var(i)).eval(state);
            f.G_i[i] = poly.diff_var(lam_vec_var(i)).eval(state);
            for (int j = i; j < 3; ++j)
                f.F_ij.at(i, j) = poly.diff_var(mu_mat_var(i, j)).eval(state);
        }
        return f;
    };
    MomentsAtRest out;
    out.f = gradient(res.h_prime.expand());
    const std::array<ConcretePoly, 3> hpk = res.h_prime_k.expand();
    for (int k = 0; k < 3; ++k) out.f_k[k] = gradient(hpk[k]);
    return out;
}

Rational entropy_from_potential(const ClosureResult& res, const TensorState& state) {
    const MomentVec14 f = moments_at_rest(res, state).f;
    Rational h = state.mu * f.F + state.lam * f.G;
    for (int i = 0; i < 3; ++i) {
        h += state.mu_vec[i] * f.F_i[i];
        h += state.lam_vec[i] * f.G_i[i];
        for (int j = 0; j < 3; ++j) h += state.mu_mat.at(i, j) * f.F_ij.at(i, j);
    }
    return h - res.h_prime.expand().eval(state);
}

}  // namespace et14
