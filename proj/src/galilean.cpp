#include "et14/galilean.hpp"

#include "et14/closure_gen.hpp"

namespace et14 {

namespace {

Rational v_squared(const Velocity3& v) {
    return v.v[0] * v.v[0] + v.v[1] * v.v[1] + v.v[2] * v.v[2];
}

constexpr int kPairIdx[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};

}  // namespace

Flat14 flatten_moments(const MomentVec14& f) {
    Flat14 x{};
    x[0] = f.F;
    for (int i = 0; i < 3; ++i) x[1 + i] = f.F_i[i];
    for (int p = 0; p < 6; ++p) x[4 + p] = f.F_ij.a[p];
    x[10] = f.G;
    for (int i = 0; i < 3; ++i) x[11 + i] = f.G_i[i];
    return x;
}

MomentVec14 unflatten_moments(const Flat14& x) {
    MomentVec14 f;
    f.F = x[0];
    for (int i = 0; i < 3; ++i) f.F_i[i] = x[1 + i];
    for (int p = 0; p < 6; ++p) f.F_ij.a[p] = x[4 + p];
    f.G = x[10];
    for (int i = 0; i < 3; ++i) f.G_i[i] = x[11 + i];
    return f;
}

Flat14 flatten_multipliers(const LagrangeVec14& m) {
    Flat14 x{};
    x[0] = m.mu;
    for (int i = 0; i < 3; ++i) x[1 + i] = m.mu_i[i];
    for (int p = 0; p < 6; ++p) {
        x[4 + p] = m.mu_ij.a[p];
        if (kPairIdx[p][0] != kPairIdx[p][1]) x[4 + p] *= 2;
    }
    x[10] = m.lam;
    for (int i = 0; i < 3; ++i) x[11 + i] = m.lam_i[i];
    return x;
}

LagrangeVec14 unflatten_multipliers(const Flat14& x) {
    LagrangeVec14 m;
    m.mu = x[0];
    for (int i = 0; i < 3; ++i) m.mu_i[i] = x[1 + i];
    for (int p = 0; p < 6; ++p) {
        m.mu_ij.a[p] = x[4 + p];
        if (kPairIdx[p][0] != kPairIdx[p][1]) m.mu_ij.a[p] /= 2;
    }
    m.lam = x[10];
    for (int i = 0; i < 3; ++i) m.lam_i[i] = x[11 + i];
    return m;
}

Mat14 mat14_identity() {
    Mat14 m{};
    for (int i = 0; i < 14; ++i) m[i][i] = 1;
    return m;
}

Mat14 mat14_mul(const Mat14& a, const Mat14& b) {
    Mat14 out{};
    for (int i = 0; i < 14; ++i)
        for (int k = 0; k < 14; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < 14; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Flat14 mat14_apply(const Mat14& m, const Flat14& x) {
    Flat14 out{};
    for (int i = 0; i < 14; ++i)
        for (int j = 0; j < 14; ++j) out[i] += m[i][j] * x[j];
    return out;
}

Flat14 mat14_apply_left(const Flat14& x, const Mat14& m) {
    Flat14 out{};
    for (int j = 0; j < 14; ++j)
        for (int i = 0; i < 14; ++i) out[j] += x[i] * m[i][j];
    return out;
}

Mat14 x_matrix(const Velocity3& vel) {
    const Vec3& v = vel.v;
    const Rational v2 = v_squared(vel);
    Mat14 X{};

    X[0][0] = 1;
    for (int i = 0; i < 3; ++i) {
        X[1 + i][0] = v[i];
        X[1 + i][1 + i] = 1;
    }
    for (int p = 0; p < 6; ++p) {
        const int i = kPairIdx[p][0], j = kPairIdx[p][1];
        X[4 + p][0] = v[i] * v[j];
        // 2 v^(i delta^j)_a, both tensor components of the stored pair
        for (int a = 0; a < 3; ++a) {
            Rational e = 0;
            if (j == a) e += v[i];
            if (i == a) e += v[j];
            X[4 + p][1 + a] = e;
        }
        X[4 + p][4 + p] = 1;
    }
    X[10][0] = v2;
    for (int a = 0; a < 3; ++a) X[10][1 + a] = 2 * v[a];
    X[10][10] = 1;
    for (int i = 0; i < 3; ++i) {
        X[11 + i][0] = v2 * v[i];
        for (int a = 0; a < 3; ++a) {
            Rational e = 2 * v[i] * v[a];
            if (i == a) e += v2;
            X[11 + i][1 + a] = e;
        }
        // 2 delta^i_(a v_b), summed over both orderings of the stored pair
        for (int p = 0; p < 6; ++p) {
            const int a = kPairIdx[p][0], b = kPairIdx[p][1];
            Rational e = 0;
            if (i == a) e += v[b];
            if (i == b) e += v[a];
            if (a != b) e *= 2;  // hatF^ab and hatF^ba both feed the row
            X[11 + i][4 + p] = e;
        }
        X[11 + i][10] = v[i];
        X[11 + i][11 + i] = 1;
    }
    return X;
}

MomentVec14 recompose_moments(const MomentVec14& hat_f, const Velocity3& v) {
    return unflatten_moments(mat14_apply(x_matrix(v), flatten_moments(hat_f)));
}

Velocity3 velocity_from_moments(const MomentVec14& f) {
    if (f.F == 0) throw DomainError("velocity undefined at zero mass density");
    Velocity3 v;
    for (int i = 0; i < 3; ++i) v.v[i] = f.F_i[i] / f.F;
    return v;
}

LagrangeVec14 transform_lagrange(const LagrangeVec14& m, const Velocity3& vel) {
    const Vec3& v = vel.v;
    const Rational v2 = v_squared(vel);
    Rational mu_vv = 0;  // mu_ij v^i v^j, full tensor sum
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mu_vv += m.mu_ij.at(i, j) * v[i] * v[j];
    const Rational lam_v = m.lam_i[0] * v[0] + m.lam_i[1] * v[1] + m.lam_i[2] * v[2];
    const Rational mu_v = m.mu_i[0] * v[0] + m.mu_i[1] * v[1] + m.mu_i[2] * v[2];

    LagrangeVec14 r;
    r.mu = m.mu + mu_v + mu_vv + m.lam * v2 + lam_v * v2;
    for (int h = 0; h < 3; ++h) {
        Rational mu_mat_v = 0;
        for (int i = 0; i < 3; ++i) mu_mat_v += m.mu_ij.at(i, h) * v[i];
        r.mu_i[h] = m.mu_i[h] + 2 * mu_mat_v + 2 * m.lam * v[h] + m.lam_i[h] * v2 +
                    2 * v[h] * lam_v;
    }
    for (int p = 0; p < 6; ++p) {
        const int h = kPairIdx[p][0], k = kPairIdx[p][1];
        r.mu_ij.a[p] = m.mu_ij.a[p] + m.lam_i[h] * v[k] + m.lam_i[k] * v[h];
    }
    r.lam = m.lam + lam_v;
    r.lam_i = m.lam_i;
    return r;
}

std::array<ConcretePoly, 3> frame_residual_scalar(const ConcretePoly& h_prime) {
    const ScalarFn two_lam = ScalarFn::monomial(2, 0, 1);
    const ConcretePoly d_mu = h_prime.diff(Var::Mu);
    const ConcretePoly d_lam = h_prime.diff(Var::Lam);
    std::array<ConcretePoly, 3> d_vec;
    for (int h = 0; h < 3; ++h) d_vec[h] = h_prime.diff_var(mu_vec_var(h));

    std::array<ConcretePoly, 3> res;
    for (int i = 0; i < 3; ++i) {
        ConcretePoly r = d_mu.times_var(mu_vec_var(i));
        for (int h = 0; h < 3; ++h) {
            ConcretePoly t = d_vec[h].times_var(mu_mat_var(std::min(i, h), std::max(i, h)));
            t += t;  // times 2
            r += t;
            if (h == i) r += d_vec[h].scaled(two_lam);
            ConcretePoly u = h_prime.diff_var(mu_mat_var(std::min(h, i), std::max(h, i)))
                                 .times_var(lam_vec_var(h));
            u += u;
            r += u;
        }
        r += d_lam.times_var(lam_vec_var(i));
        res[i] = std::move(r);
    }
    return res;
}

std::array<std::array<ConcretePoly, 3>, 3> frame_residual_vector(
    const ConcretePoly& h_prime, const std::array<ConcretePoly, 3>& h_prime_k) {
    std::array<std::array<ConcretePoly, 3>, 3> res;
    for (int k = 0; k < 3; ++k) {
        res[k] = frame_residual_scalar(h_prime_k[k]);
        res[k][k] += h_prime;
    }
    return res;
}

namespace {

// Exact derivative of a cubic polynomial from its values at t = 0, 1, 2, 3.
Rational cubic_derivative_at_zero(const Rational& f0, const Rational& f1, const Rational& f2,
                                  const Rational& f3) {
    return (-11 * f0 + 18 * f1 - 9 * f2 + 2 * f3) / 6;
}

// Spot check of the transport derivative table: the v-derivatives of the
// absolute multipliers, computed by exact finite differences of the
// transport map, must reproduce their closed forms in the transported
// values themselves.
bool check_transport_derivatives(const LagrangeVec14& rel, const Velocity3& v) {
    // absolute multipliers as a function of v: rel . X(-v)
    auto absolute = [&](const Velocity3& w) {
        Velocity3 neg;
        for (int i = 0; i < 3; ++i) neg.v[i] = -w.v[i];
        return transform_lagrange(rel, neg);
    };
    const LagrangeVec14 a = absolute(v);

    for (int i = 0; i < 3; ++i) {
        std::array<Flat14, 4> samples;
        for (int t = 0; t < 4; ++t) {
            Velocity3 w = v;
            w.v[i] += t;
            // plain per-component flattening (no covector weights)
            const LagrangeVec14 m = absolute(w);
            samples[t] = {m.mu,         m.mu_i[0],    m.mu_i[1],    m.mu_i[2],   m.mu_ij.a[0],
                          m.mu_ij.a[1], m.mu_ij.a[2], m.mu_ij.a[3], m.mu_ij.a[4], m.mu_ij.a[5],
                          m.lam,        m.lam_i[0],   m.lam_i[1],   m.lam_i[2]};
        }
        Flat14 d;
        for (int c = 0; c < 14; ++c)
            d[c] = cubic_derivative_at_zero(samples[0][c], samples[1][c], samples[2][c],
                                            samples[3][c]);

        if (d[0] != -a.mu_i[i]) return false;
        for (int h = 0; h < 3; ++h) {
            Rational expect = -2 * a.mu_ij.at(i, h);
            if (h == i) expect -= 2 * a.lam;
            if (d[1 + h] != expect) return false;
        }
        // -2 lam^a_(h delta_k)i = -(lam^a_h delta_ki + lam^a_k delta_hi)
        for (int p = 0; p < 6; ++p) {
            const int h = kPairIdx[p][0], k = kPairIdx[p][1];
            Rational expect = 0;
            if (k == i) expect -= a.lam_i[h];
            if (h == i) expect -= a.lam_i[k];
            if (d[4 + p] != expect) return false;
        }
        if (d[10] != -a.lam_i[i]) return false;
        for (int h = 0; h < 3; ++h)
            if (d[11 + h] != 0) return false;
    }
    return true;
}

}  // namespace

CheckReport verify_galilean(const ClosureResult& res, const std::vector<TensorState>& states) {
    CheckReport report;
    const int trunc = res.order - 2;

    const ConcretePoly hp = res.h_prime.expand();
    const std::array<ConcretePoly, 3> hpk = res.h_prime_k.expand();

    const auto r1 = frame_residual_scalar(hp);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 3 && ok; ++i) {
        ConcretePoly t = r1[i].truncated(trunc);
        if (!t.is_zero()) {
            ok = false;
            detail = "component " + std::to_string(i + 1) + ", " + t.first_term_string();
        }
    }
    report.add("eq-7.3.1", ok, detail);

    const auto r2 = frame_residual_vector(hp, hpk);
    ok = true;
    detail.clear();
    for (int k = 0; k < 3 && ok; ++k)
        for (int i = 0; i < 3 && ok; ++i) {
            ConcretePoly t = r2[k][i].truncated(trunc);
            if (!t.is_zero()) {
                ok = false;
                detail = "component (" + std::to_string(k + 1) + "," + std::to_string(i + 1) +
                         "), " + t.first_term_string();
            }
        }
    report.add("eq-7.3.2", ok, detail);

    // Residuals evaluated at the sample states (zero for a sound closure).
    ok = true;
    detail.clear();
    try {
        for (size_t s = 0; s < states.size() && ok; ++s) {
            for (int i = 0; i < 3 && ok; ++i) {
                if (r1[i].truncated(trunc).eval(states[s]) != 0) {
                    ok = false;
                    detail = "state " + std::to_string(s);
                }
                for (int k = 0; k < 3 && ok; ++k)
                    if (r2[k][i].truncated(trunc).eval(states[s]) != 0) {
                        ok = false;
                        detail = "state " + std::to_string(s);
                    }
            }
        }
    } catch (const Error& e) {
        ok = false;
        detail = e.what();
    }
    report.add("eq-7.3-states", ok, detail);

    ok = true;
    detail.clear();
    for (size_t s = 0; s < states.size() && ok; ++s) {
        LagrangeVec14 m;
        m.mu = states[s].mu;
        m.lam = states[s].lam;
        m.mu_i = states[s].mu_vec;
        m.mu_ij = states[s].mu_mat;
        m.lam_i = states[s].lam_vec;
        Velocity3 v{states[s].mu_vec};
        if (!check_transport_derivatives(m, v)) {
            ok = false;
            detail = "state " + std::to_string(s);
        }
        Velocity3 w{states[s].lam_vec};
        if (ok && !check_transport_derivatives(m, w)) {
            ok = false;
            detail = "state " + std::to_string(s);
        }
    }
    report.add("eq-7.2", ok, detail);

    return report;
}

}  // namespace et14
