#include "et14/iso_tensor.hpp"

#include <sstream>

namespace et14 {

std::vector<Matching> pairings(int m) {
    std::vector<Matching> out;
    std::vector<bool> used(2 * m, false);
    Matching current;

    auto rec = [&](auto&& self) -> void {
        int first = -1;
        for (int i = 0; i < 2 * m; ++i)
            if (!used[i]) {
                first = i;
                break;
            }
        if (first < 0) {
            out.push_back(current);
            return;
        }
        used[first] = true;
        for (int j = first + 1; j < 2 * m; ++j) {
            if (used[j]) continue;
            used[j] = true;
            current.emplace_back(first, j);
            self(self);
            current.pop_back();
            used[j] = false;
        }
        used[first] = false;
    };
    rec(rec);
    return out;
}

namespace {

using Mat3 = std::array<std::array<Rational, 3>, 3>;

Mat3 to_full(const SymMat3& s) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = s.at(i, j);
    return m;
}

Vec3 mat_vec(const Mat3& m, const Vec3& v) {
    Vec3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
    return out;
}

Mat3 mat_mat(const Mat3& a, const Mat3& b) {
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
    return out;
}

Rational dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Rational trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

}  // namespace

Rational sym_delta_contract(const std::vector<DeltaSlot>& slots) {
    struct Leg {
        int slot;
        int side;  // 0 for vectors, 0/1 for matrix legs
    };
    std::vector<Leg> legs;
    std::vector<std::array<int, 2>> slot_legs(slots.size(), {-1, -1});
    for (int s = 0; s < static_cast<int>(slots.size()); ++s) {
        slot_legs[s][0] = static_cast<int>(legs.size());
        legs.push_back({s, 0});
        if (slots[s].kind == DeltaSlot::Kind::Matrix) {
            slot_legs[s][1] = static_cast<int>(legs.size());
            legs.push_back({s, 1});
        }
    }
    const int n_legs = static_cast<int>(legs.size());
    if (n_legs % 2 != 0) throw OddRankError("odd total index count in delta contraction");
    const int m = n_legs / 2;

    std::vector<Mat3> mats(slots.size());
    for (size_t s = 0; s < slots.size(); ++s)
        if (slots[s].kind == DeltaSlot::Kind::Matrix) mats[s] = to_full(slots[s].m);

    Rational total = 0;
    std::vector<int> partner(n_legs);
    std::vector<bool> visited(slots.size());

    for (const Matching& match : pairings(m)) {
        for (auto [a, b] : match) {
            partner[a] = b;
            partner[b] = a;
        }
        std::fill(visited.begin(), visited.end(), false);
        Rational val = 1;

        // Open chains: start from each vector slot, hop through matrices.
        for (int s = 0; s < static_cast<int>(slots.size()); ++s) {
            if (slots[s].kind != DeltaSlot::Kind::Vector || visited[s]) continue;
            visited[s] = true;
            Vec3 w = slots[s].v;
            int leg = partner[slot_legs[s][0]];
            for (;;) {
                const Leg& L = legs[leg];
                if (slots[L.slot].kind == DeltaSlot::Kind::Vector) {
                    visited[L.slot] = true;
                    val *= dot(w, slots[L.slot].v);
                    break;
                }
                visited[L.slot] = true;
                w = mat_vec(mats[L.slot], w);
                leg = partner[slot_legs[L.slot][1 - L.side]];
            }
        }
        // Closed chains of matrices.
        for (int s = 0; s < static_cast<int>(slots.size()); ++s) {
            if (slots[s].kind != DeltaSlot::Kind::Matrix || visited[s]) continue;
            visited[s] = true;
            Mat3 prod = mats[s];
            int leg = partner[slot_legs[s][1]];
            while (legs[leg].slot != s) {
                const Leg& L = legs[leg];
                visited[L.slot] = true;
                prod = mat_mat(prod, mats[L.slot]);
                leg = partner[slot_legs[L.slot][1 - L.side]];
            }
            val *= trace(prod);
        }
        total += val;
    }
    return total / double_factorial(2 * m - 1);
}

// --------------------------------------------------------------------------
// ConcretePoly
// --------------------------------------------------------------------------

std::string tensor_var_name(int var) {
    static const char* names[kNumTensorVars] = {"mu_1",   "mu_2",   "mu_3",   "mu_11",
                                                "mu_12",  "mu_13",  "mu_22",  "mu_23",
                                                "mu_33",  "lam_1",  "lam_2",  "lam_3"};
    return names[var];
}

void ConcretePoly::add_term(const ExpVec& e, const ScalarFn& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ConcretePoly& ConcretePoly::operator+=(const ConcretePoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

ConcretePoly& ConcretePoly::operator-=(const ConcretePoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

ConcretePoly ConcretePoly::scaled(const ScalarFn& c) const {
    ConcretePoly out;
    for (const auto& [e, v] : terms_) out.add_term(e, v * c);
    return out;
}

ConcretePoly ConcretePoly::times_var(int var) const {
    ConcretePoly out;
    for (const auto& [e, v] : terms_) {
        ExpVec e2 = e;
        ++e2[var];
        out.add_term(e2, v);
    }
    return out;
}

ConcretePoly ConcretePoly::diff(Var v) const {
    ConcretePoly out;
    for (const auto& [e, c] : terms_) out.add_term(e, c.diff(v));
    return out;
}

ConcretePoly ConcretePoly::diff_var(int var) const {
    const bool off_diagonal = (var == mu_mat_var(0, 1) || var == mu_mat_var(0, 2) ||
                               var == mu_mat_var(1, 2));
    ConcretePoly out;
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        ExpVec e2 = e;
        --e2[var];
        Rational factor = e[var];
        if (off_diagonal) factor /= 2;
        out.add_term(e2, factor * c);
    }
    return out;
}

Rational ConcretePoly::eval(const TensorState& s) const {
    auto var_value = [&](int v) -> const Rational& {
        if (v < 3) return s.mu_vec[v];
        if (v < 9) return s.mu_mat.a[v - 3];
        return s.lam_vec[v - 9];
    };
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c.eval_exact(s.mu, s.lam);
        for (int v = 0; v < kNumTensorVars; ++v)
            if (e[v] != 0) t *= rat_pow(var_value(v), e[v]);
        acc += t;
    }
    return acc;
}

int ConcretePoly::order_of(const ExpVec& e) {
    int n = 0;
    for (int x : e) n += x;
    return n;
}

int ConcretePoly::max_order() const {
    int n = 0;
    for (const auto& [e, c] : terms_) n = std::max(n, order_of(e));
    return n;
}

ConcretePoly ConcretePoly::truncated(int max_order) const {
    ConcretePoly out;
    for (const auto& [e, c] : terms_)
        if (order_of(e) <= max_order) out.add_term(e, c);
    return out;
}

ConcretePoly ConcretePoly::homogeneous_part(int order) const {
    ConcretePoly out;
    for (const auto& [e, c] : terms_)
        if (order_of(e) == order) out.add_term(e, c);
    return out;
}

int ConcretePoly::mu_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, c.mu_degree());
    return d;
}

namespace {

std::string monomial_name(const ExpVec& e) {
    std::ostringstream os;
    bool first = true;
    for (int v = 0; v < kNumTensorVars; ++v) {
        if (e[v] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << tensor_var_name(v);
        if (e[v] != 1) os << "^" << e[v];
    }
    if (first) os << "1";
    return os.str();
}

}  // namespace

std::string ConcretePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << "\n";
        first = false;
        os << monomial_name(e) << ": " << c.to_string();
    }
    return os.str();
}

std::string ConcretePoly::first_term_string() const {
    if (terms_.empty()) return "0";
    const auto& [e, c] = *terms_.begin();
    return monomial_name(e) + ": " + c.to_string();
}

// --------------------------------------------------------------------------
// Isotropic polynomials
// --------------------------------------------------------------------------

std::string IsoKey::to_string() const {
    return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
}

namespace {

const ScalarFn kZeroFn{};

// Expands one isotropic term into concrete monomials. Legs are laid out as
// [free | mu-vector slots | matrix slot pairs | lam-vector slots]; every
// matching assigns one summation value per delta edge, with the edge touching
// the free leg pinned to the free component.
void expand_term(ConcretePoly& out, const ScalarFn& coeff, int p, int q, int r, int free_index) {
    const bool has_free = free_index >= 0;
    const int n_legs = (has_free ? 1 : 0) + p + 2 * q + r;
    const int m = n_legs / 2;

    // Leg -> (slot kind, slot ordinal). Kind: 0 free, 1 mu_vec, 2 matrix, 3 lam_vec.
    struct LegInfo {
        int kind;
        int slot;
        int side;
    };
    std::vector<LegInfo> leg_info;
    if (has_free) leg_info.push_back({0, 0, 0});
    for (int i = 0; i < p; ++i) leg_info.push_back({1, i, 0});
    for (int i = 0; i < q; ++i) {
        leg_info.push_back({2, i, 0});
        leg_info.push_back({2, i, 1});
    }
    for (int i = 0; i < r; ++i) leg_info.push_back({3, i, 0});

    ScalarFn scaled = coeff;
    scaled *= Rational(1) / (factorial(p) * factorial(q) * factorial(r));
    scaled *= Rational(1) / double_factorial(2 * m - 1);

    std::vector<int> leg_value(n_legs);
    std::vector<int> mat_leg_value(2 * q);

    for (const Matching& match : pairings(m)) {
        int pinned = -1;
        for (int pi = 0; pi < m; ++pi)
            if (has_free && (match[pi].first == 0 || match[pi].second == 0)) pinned = pi;

        std::vector<int> vals(m, 0);
        if (pinned >= 0) vals[pinned] = free_index;
        for (;;) {
            for (int pi = 0; pi < m; ++pi) {
                leg_value[match[pi].first] = vals[pi];
                leg_value[match[pi].second] = vals[pi];
            }
            ExpVec e{};
            for (int L = 0; L < n_legs; ++L) {
                const LegInfo& info = leg_info[L];
                if (info.kind == 1)
                    ++e[mu_vec_var(leg_value[L])];
                else if (info.kind == 3)
                    ++e[lam_vec_var(leg_value[L])];
                else if (info.kind == 2)
                    mat_leg_value[2 * info.slot + info.side] = leg_value[L];
            }
            for (int i = 0; i < q; ++i) {
                int a = mat_leg_value[2 * i], b = mat_leg_value[2 * i + 1];
                ++e[mu_mat_var(std::min(a, b), std::max(a, b))];
            }
            out.add_term(e, scaled);

            // Odometer over the free edge values.
            int pos = m - 1;
            while (pos >= 0) {
                if (pos == pinned) {
                    --pos;
                    continue;
                }
                if (++vals[pos] < 3) break;
                vals[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
}

Rational eval_term_direct(const ScalarFn& coeff, int p, int q, int r, int free_index,
                          const TensorState& s) {
    std::vector<DeltaSlot> slots;
    if (free_index >= 0) {
        Vec3 e{};
        e[free_index] = 1;
        slots.push_back(DeltaSlot::vector(e));
    }
    for (int i = 0; i < p; ++i) slots.push_back(DeltaSlot::vector(s.mu_vec));
    for (int i = 0; i < q; ++i) slots.push_back(DeltaSlot::matrix(s.mu_mat));
    for (int i = 0; i < r; ++i) slots.push_back(DeltaSlot::vector(s.lam_vec));
    return coeff.eval_exact(s.mu, s.lam) / (factorial(p) * factorial(q) * factorial(r)) *
           sym_delta_contract(slots);
}

}  // namespace

void IsoScalarPoly::add_term(const IsoKey& k, const ScalarFn& c) {
    if ((k.p + k.r) % 2 != 0)
        throw ParityError("scalar isotropic term " + k.to_string() + " needs p + r even");
    if (k.p < 0 || k.q < 0 || k.r < 0) throw DomainError("negative isotropic key");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const ScalarFn& IsoScalarPoly::coeff(const IsoKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? kZeroFn : it->second;
}

IsoScalarPoly& IsoScalarPoly::operator+=(const IsoScalarPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

IsoScalarPoly IsoScalarPoly::diff_mu() const {
    IsoScalarPoly out;
    for (const auto& [k, c] : terms_) out.add_term(k, c.diff(Var::Mu));
    return out;
}

IsoVectorPoly IsoScalarPoly::dmu_k() const {
    IsoVectorPoly out;
    for (const auto& [k, c] : terms_)
        if (k.p >= 1) out.add_term({k.p - 1, k.q, k.r}, c);
    return out;
}

IsoScalarPoly IsoScalarPoly::truncated(int max_order) const {
    IsoScalarPoly out;
    for (const auto& [k, c] : terms_)
        if (k.order() <= max_order) out.add_term(k, c);
    return out;
}

ConcretePoly IsoScalarPoly::expand() const {
    ConcretePoly out;
    for (const auto& [k, c] : terms_) expand_term(out, c, k.p, k.q, k.r, -1);
    return out;
}

Rational IsoScalarPoly::eval_direct(const TensorState& s) const {
    Rational acc = 0;
    for (const auto& [k, c] : terms_) acc += eval_term_direct(c, k.p, k.q, k.r, -1, s);
    return acc;
}

void IsoVectorPoly::add_term(const IsoKey& k, const ScalarFn& c) {
    if ((k.p + k.r) % 2 != 1)
        throw ParityError("vector isotropic term " + k.to_string() + " needs p + r odd");
    if (k.p < 0 || k.q < 0 || k.r < 0) throw DomainError("negative isotropic key");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const ScalarFn& IsoVectorPoly::coeff(const IsoKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? kZeroFn : it->second;
}

IsoVectorPoly& IsoVectorPoly::operator+=(const IsoVectorPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

IsoVectorPoly IsoVectorPoly::truncated(int max_order) const {
    IsoVectorPoly out;
    for (const auto& [k, c] : terms_)
        if (k.order() <= max_order) out.add_term(k, c);
    return out;
}

std::array<ConcretePoly, 3> IsoVectorPoly::expand() const {
    std::array<ConcretePoly, 3> out;
    for (int k = 0; k < 3; ++k)
        for (const auto& [key, c] : terms_) expand_term(out[k], c, key.p, key.q, key.r, k);
    return out;
}

Vec3 IsoVectorPoly::eval_direct(const TensorState& s) const {
    Vec3 acc{};
    for (int k = 0; k < 3; ++k)
        for (const auto& [key, c] : terms_)
            acc[k] += eval_term_direct(c, key.p, key.q, key.r, k, s);
    return acc;
}

}  // namespace et14
