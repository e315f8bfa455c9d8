// Batch front end: generate closures, verify the identity suite, evaluate
// the second-order closure, and apply frame transformations. Reports are
// line-delimited JSON with rationals as "num/den" strings, byte-identical
// across runs with the same configuration and seed.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "et14/closure_gen.hpp"
#include "et14/galilean.hpp"
#include "et14/thermo14.hpp"

using json = nlohmann::ordered_json;
using namespace et14;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Report {
    std::vector<json> lines;
    bool failed = false;

    void meta(const std::string& command, const json& inputs) {
        json j;
        j["type"] = "meta";
        j["tool"] = "et14";
        j["version"] = kVersion;
        j["command"] = command;
        j["inputs"] = inputs;
        lines.push_back(std::move(j));
    }

    void entry(json j) { lines.push_back(std::move(j)); }

    void check(const CheckResult& c) {
        json j;
        j["type"] = "check";
        j["id"] = c.id;
        j["status"] = c.pass ? "pass" : "fail";
        if (!c.detail.empty()) j["detail"] = c.detail;
        lines.push_back(std::move(j));
        if (!c.pass) failed = true;
    }

    void checks(const CheckReport& r) {
        for (const auto& c : r.checks) check(c);
    }

    void write(const std::string& out_path) {
        json summary;
        summary["type"] = "summary";
        summary["status"] = failed ? "fail" : "pass";
        lines.push_back(std::move(summary));
        std::ostringstream os;
        for (const auto& l : lines) os << l.dump() << "\n";
        if (out_path.empty()) {
            std::cout << os.str();
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw ConfigError("cannot write report: " + out_path);
            f << os.str();
        }
    }
};

json free_input_echo(const FreeInput& f) {
    json seeds = json::object();
    for (const auto& [r, fn] : f.h_seed) seeds[std::to_string(r)] = fn.to_string();
    json consts = json::object();
    for (const auto& [qr, c] : f.int_consts)
        consts[std::to_string(qr.first) + "," + std::to_string(qr.second)] = rat_to_string(c);
    return json{{"seeds", seeds}, {"consts", consts}};
}

// psi_1 given as expression text; the family below it is reconstructed with
// the mu-constant part of psi_1 as the first integration constant.
PsiFamily family_from_psi1(const std::string& psi1_text, int order) {
    if (order < 1) throw ConfigError("--order must be at least 1");
    const ScalarFn psi1 = ScalarFn::parse(psi1_text);
    ScalarFn c0;
    for (const auto& [k, c] : psi1.terms())
        if (k.mu == 0) c0 += ScalarFn::monomial(c, 0, k.lam, k.log);
    const int depth = std::max(1, order / 2);
    std::vector<ScalarFn> consts(depth);
    consts[0] = c0;
    return build_psi_family(psi1.diff(Var::Mu), consts, depth);
}

FreeInput free_from_json(const std::string& path, int order) {
    FreeInput f;
    if (!path.empty()) {
        const json j = json::parse(read_file(path));
        const json seeds = j.value("seeds", json::object());
        for (const auto& [key, value] : seeds.items())
            f.h_seed[std::stoi(key)] = ScalarFn::parse(value.get<std::string>());
        const json consts = j.value("consts", json::object());
        for (const auto& [key, value] : consts.items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw ConfigError("free-input const key must be 'Q,R': " + key);
            f.int_consts[{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))}] =
                rat_from_string(value.get<std::string>());
        }
    }
    try {
        f.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return f.with_zero_defaults(order);
}

std::string table_label(const TableKey& k) {
    const auto [p, q, r, s] = std::tuple(k[0], k[1], k[2], k[3]);
    if (p >= 2) return "eq-beta.2";
    if (p == 0) return "eq-cris6";
    if (s > 0) return "eq-cris5";
    return q == 0 ? "seed" : "eq-cris8";
}

Vec3 parse_vec3(const std::string& csv) {
    Vec3 v{};
    std::istringstream in(csv);
    std::string item;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(in, item, ',')) throw ConfigError("expected 3 components: " + csv);
        v[i] = rat_from_string(item);
    }
    return v;
}

std::vector<Rational> parse_rationals(const std::string& csv) {
    std::vector<Rational> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(rat_from_string(item));
    return out;
}

json vec3_json(const Vec3& v) {
    return json::array({rat_to_string(v[0]), rat_to_string(v[1]), rat_to_string(v[2])});
}

json symmat_json(const SymMat3& m) {
    json j = json::array();
    for (const auto& x : m.a) j.push_back(rat_to_string(x));
    return j;
}

TensorState random_state(SplitMix64& rng) {
    TensorState st;
    st.mu = rng.rational(8);
    st.lam = rng.nonzero_rational(8);
    for (int i = 0; i < 3; ++i) {
        st.mu_vec[i] = rng.rational(8);
        st.lam_vec[i] = rng.rational(8);
    }
    for (int p = 0; p < 6; ++p) st.mu_mat.a[p] = rng.rational(8);
    return st;
}

int cmd_generate(int order, const std::string& psi, const std::string& free_path,
                 const std::string& out) {
    const PsiFamily fam = family_from_psi1(psi, order);
    const FreeInput free = free_from_json(free_path, order);

    Report rep;
    rep.meta("generate", {{"order", order}, {"psi", psi}, {"free", free_input_echo(free)}});
    const ClosureResult res = make_closure(fam, free, order);

    for (const auto& [key, value] : res.provenance.table.entries) {
        json j;
        j["type"] = "table-entry";
        j["p"] = key[0];
        j["q"] = key[1];
        j["r"] = key[2];
        j["s"] = key[3];
        j["value"] = value.to_string();
        j["label"] = table_label(key);
        rep.entry(std::move(j));
    }
    for (const auto& [key, value] : res.h_prime.terms()) {
        json j;
        j["type"] = "h-coeff";
        j["key"] = key.to_string();
        j["value"] = value.to_string();
        j["label"] = "eq-8.2";
        rep.entry(std::move(j));
    }
    for (const auto& [key, value] : res.h_prime_k.terms()) {
        json j;
        j["type"] = "hk-coeff";
        j["key"] = key.to_string();
        j["value"] = value.to_string();
        j["label"] = "eq-8.2";
        rep.entry(std::move(j));
    }
    rep.write(out);
    return 0;
}

int cmd_verify(int order, const std::string& psi, const std::string& free_path,
               int n_states, std::uint64_t seed, const std::string& tamper,
               const std::string& out) {
    const PsiFamily fam = family_from_psi1(psi, order);
    const FreeInput free = free_from_json(free_path, order);

    Report rep;
    rep.meta("verify", {{"order", order},
                        {"psi", psi},
                        {"free", free_input_echo(free)},
                        {"states", n_states},
                        {"seed", seed},
                        {"tamper", tamper}});
    ClosureResult res = make_closure(fam, free, order);

    if (!tamper.empty()) {
        // mutation run: adds 1 to the canonical entry H_{1,Q,r,0}
        auto comma = tamper.find(',');
        if (comma == std::string::npos) throw ConfigError("--tamper needs 'Q,r'");
        const int q = std::stoi(tamper.substr(0, comma));
        const int r = std::stoi(tamper.substr(comma + 1));
        res.provenance.table.canonical[std::make_pair(q, r)] += ScalarFn::constant(1);
        res.provenance.table.materialize();
        res.provenance.delta_h = assemble_delta_H(res.provenance.table, order);
        res.H = res.provenance.h1 + res.provenance.delta_h;
        res.h_prime = res.H.diff_mu();
        res.h_prime_k = res.H.dmu_k();
    }

    rep.checks(verify_closure(res));

    SplitMix64 rng(seed);
    std::vector<TensorState> states;
    for (int i = 0; i < n_states; ++i) states.push_back(random_state(rng));
    rep.checks(verify_galilean(res, states));

    rep.write(out);
    return rep.failed ? 1 : 0;
}

int cmd_closure2(const std::string& material_path, const std::string& states_path,
                 const std::string& out) {
    Report rep;
    rep.meta("closure2", {{"material", material_path}, {"states", states_path}});

    const SymbolicMaterial mat = parse_material(read_file(material_path));
    const json states = json::parse(read_file(states_path));
    if (!states.is_array()) throw ConfigError("states file must be a JSON array");

    for (size_t i = 0; i < states.size(); ++i) {
        const json& js = states[i];
        EqState s{rat_from_string(js.at("rho").get<std::string>()),
                  rat_from_string(js.at("T").get<std::string>())};
        NonEqFields n;
        n.pi = rat_from_string(js.value("pi", "0"));
        if (js.contains("q"))
            for (int k = 0; k < 3; ++k)
                n.q[k] = rat_from_string(js["q"][k].get<std::string>());
        if (js.contains("fdev"))
            for (int k = 0; k < 6; ++k)
                n.Fdev.a[k] = rat_from_string(js["fdev"][k].get<std::string>());

        json j;
        j["type"] = "closure2-state";
        j["index"] = i;
        j["rho"] = rat_to_string(s.rho);
        j["T"] = rat_to_string(s.T);
        try {
            rep.checks(validate_material(mat, {s}));
            const MaterialPoint mp = mat.at(s);
            j["p"] = rat_to_string(mp.p);
            j["epsilon"] = rat_to_string(mp.eps);
            j["phi001"] = rat_to_string(mp.phi001);
            j["phi011"] = rat_to_string(mp.phi011);
            j["moments-label"] = "eq-cris13 eq-cris14";
            const DerivedCoeffs c = derived_coeffs(mat, s);
            j["h2"] = rat_to_string(c.h2);
            j["h3"] = rat_to_string(c.h3);
            j["h4"] = rat_to_string(c.h4);
            j["K"] = rat_to_string(c.K);
            j["D"] = rat_to_string(c.D);
            j["D1"] = rat_to_string(c.D1);
            j["beta1"] = rat_to_string(c.beta1);
            j["beta2"] = rat_to_string(c.beta2);
            j["beta3"] = rat_to_string(c.beta3);
            j["label"] = "eq-cris31 eq-ag.2 eq-cris27 eq-af.3 eq-beta.22 eq-al.1";

            const LagrangeDeviation dev = first_order_multipliers(mat, s, n);
            j["d_mu"] = rat_to_string(dev.d_mu);
            j["d_lam"] = rat_to_string(dev.d_lam);
            j["mu_ll"] = rat_to_string(dev.mu_ll);
            j["mu_dev"] = symmat_json(dev.mu_dev);
            j["mu_i"] = vec3_json(dev.mu_i);
            j["lam_i"] = vec3_json(dev.lam_i);
            j["multipliers-label"] = "eq-ae.1 eq-ad.2 eq-af.1";

            const FirstOrderFluxes fl = flux_closure_first_order(mat, s, n);
            json fk = json::array();
            for (const auto& x : fl.Fkij.a) fk.push_back(rat_to_string(x));
            j["Fkij"] = fk;
            j["Gkill"] = symmat_json(fl.Gkill);
            j["flux-label"] = "eq-ai.2 eq-af.3";

            j["h2nd"] = rat_to_string(entropy_second_order(mat, s, n));
            j["entropy-label"] = "eq-ag.1";
            j["hk"] = vec3_json(entropy_flux(mat, s, n));
            j["flux-entropy-label"] = "eq-ai.1";
            rep.entry(std::move(j));
        } catch (const SingularStateError& e) {
            j["error"] = std::string("SingularState: ") + e.what();
            rep.entry(std::move(j));
            rep.failed = true;
        } catch (const ConstraintViolationError& e) {
            j["error"] = std::string("ConstraintViolation: ") + e.what();
            rep.entry(std::move(j));
            rep.failed = true;
        }
    }
    rep.write(out);
    return rep.failed ? 1 : 0;
}

int cmd_transform(const std::string& velocity, const std::string& moments,
                  const std::string& lagrange, const std::string& out) {
    Report rep;
    rep.meta("transform", {{"velocity", velocity}, {"moments", moments}, {"lagrange", lagrange}});

    const Velocity3 v{parse_vec3(velocity)};
    Velocity3 neg;
    for (int i = 0; i < 3; ++i) neg.v[i] = -v.v[i];

    rep.check({"eq-4.2", mat14_mul(x_matrix(neg), x_matrix(v)) == mat14_identity(), ""});
    {
        Velocity3 sum;
        for (int i = 0; i < 3; ++i) sum.v[i] = v.v[i] + v.v[i];
        rep.check({"eq-5.1", mat14_mul(x_matrix(v), x_matrix(v)) == x_matrix(sum), ""});
    }

    if (!moments.empty()) {
        const std::vector<Rational> vals = parse_rationals(moments);
        if (vals.size() != 14) throw ConfigError("--moments needs 14 components");
        Flat14 x{};
        std::copy(vals.begin(), vals.end(), x.begin());
        const MomentVec14 hat = unflatten_moments(x);
        const MomentVec14 f = recompose_moments(hat, v);
        const MomentVec14 back = recompose_moments(f, neg);
        json j;
        j["type"] = "moments";
        json arr = json::array();
        for (const auto& c : flatten_moments(f)) arr.push_back(rat_to_string(c));
        j["recomposed"] = arr;
        j["label"] = "eq-3.2";
        rep.entry(std::move(j));
        rep.check({"eq-4.2-roundtrip", back == hat, ""});
    }
    if (!lagrange.empty()) {
        const std::vector<Rational> vals = parse_rationals(lagrange);
        if (vals.size() != 14) throw ConfigError("--lagrange needs 14 components");
        Flat14 x{};
        std::copy(vals.begin(), vals.end(), x.begin());
        const LagrangeVec14 m = unflatten_multipliers(x);
        const LagrangeVec14 r = transform_lagrange(m, v);
        const LagrangeVec14 back = transform_lagrange(r, neg);
        json j;
        j["type"] = "lagrange";
        json arr = json::array();
        for (const auto& c : flatten_multipliers(r)) arr.push_back(rat_to_string(c));
        j["transformed"] = arr;
        j["label"] = "eq-7.1";
        rep.entry(std::move(j));
        rep.check({"eq-7.1-roundtrip", back == m, ""});
        // flattened transport must agree with the matrix route
        rep.check({"eq-5.4",
                   flatten_multipliers(r) == mat14_apply_left(flatten_multipliers(m), x_matrix(v)),
                   ""});
    }
    rep.write(out);
    return rep.failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact 14-moment closure generator and verifier for dense gases"};
    app.require_subcommand(1);

    int order = 3;
    int n_states = 3;
    std::uint64_t seed = 12345;
    std::string psi, free_path, material_path, states_path, out, velocity, moments, lagrange;
    std::string tamper;

    auto* gen = app.add_subcommand("generate", "solve the coefficient recursion and emit the closure");
    gen->add_option("--order", order, "expansion order N");
    gen->add_option("--psi", psi, "psi_1 as an expression in mu and lam")->required();
    gen->add_option("--free", free_path, "free-input JSON (seeds and integration constants)");
    gen->add_option("--out", out, "report path (default stdout)");

    auto* ver = app.add_subcommand("verify", "run the full identity suite on a generated closure");
    ver->add_option("--order", order, "expansion order N");
    ver->add_option("--psi", psi, "psi_1 as an expression in mu and lam")->required();
    ver->add_option("--free", free_path, "free-input JSON");
    ver->add_option("--states", n_states, "number of random sample states");
    ver->add_option("--seed", seed, "RNG seed (recorded in the report)");
    ver->add_option("--tamper", tamper, "mutation run: 'Q,r' adds 1 to H_{1,Q,r,0}");
    ver->add_option("--out", out, "report path (default stdout)");

    auto* clo = app.add_subcommand("closure2", "evaluate the second-order closure for a material");
    clo->add_option("--material", material_path, "material definition file")->required();
    clo->add_option("--states", states_path, "states JSON file")->required();
    clo->add_option("--out", out, "report path (default stdout)");

    auto* tra = app.add_subcommand("transform", "apply the velocity transformation matrix");
    tra->add_option("--velocity", velocity, "velocity as 'vx,vy,vz' rationals")->required();
    tra->add_option("--moments", moments, "14 comma-separated moment components");
    tra->add_option("--lagrange", lagrange, "14 comma-separated multiplier components");
    tra->add_option("--out", out, "report path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(order, psi, free_path, out);
        if (ver->parsed()) return cmd_verify(order, psi, free_path, n_states, seed, tamper, out);
        if (clo->parsed()) return cmd_closure2(material_path, states_path, out);
        if (tra->parsed()) return cmd_transform(velocity, moments, lagrange, out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
