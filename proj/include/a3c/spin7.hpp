#pragma once

#include "a3c/catalog.hpp"
#include "a3c/connections.hpp"

namespace a3c {

struct SpectrumMismatch : std::runtime_error {
    SpectrumMismatch() : std::runtime_error("omega action spectrum is not (-7, +1^7): orientation/convention error") {}
};
struct NonUnitPoint : std::runtime_error {
    NonUnitPoint() : std::runtime_error("pointwise suite needs exact rational unit vectors") {}
};
struct NotGeneralizedKilling : std::runtime_error {
    explicit NotGeneralizedKilling(int dir)
        : std::runtime_error("no exact Killing number in frame direction " + std::to_string(dir)),
          direction(dir) {}
    int direction;
};

/// Eight-component spinor over the scalar field.
using Spinor = Eigen::Matrix<Scalar, 8, 1>;
using SpinMat = Eigen::Matrix<Scalar, 8, 8>;

/// The real spin representation of dimension 7 on R^8: seven antisymmetric
/// generators with κ_i κ_j + κ_j κ_i = −2δ_ij. Realized as left Clifford
/// multiplication by the imaginary octonion units in the Cayley-Dickson
/// basis; the overall sign is fixed so that the G2-form of the adapted
/// frame acts with spectrum (−7, +1^7).
class CliffordRep {
public:
    CliffordRep() {
        // Quaternion structure constants: q_a q_b in basis (1, i, j, k).
        auto qmul = [](int a, int b, int& sign) -> int {
            static const int tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
            static const int sg[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
            sign = sg[a][b];
            return tab[a][b];
        };
        // Octonions as pairs of quaternions: (p, q)(r, s) = (pr − s̄q, sp + qr̄).
        // Basis e_0..e_7 with e_m = (q_m, 0) for m < 4 and (0, q_{m−4}) else.
        auto conj_sign = [](int a) { return a == 0 ? 1 : -1; };
        auto omul = [&](int a, int b, int& sign) -> int {
            int p = a < 4 ? a : a - 4, hi_a = a < 4 ? 0 : 1;
            int r = b < 4 ? b : b - 4, hi_b = b < 4 ? 0 : 1;
            if (!hi_a && !hi_b) return qmul(p, r, sign); // (q_p,0)(q_r,0) = (q_p q_r, 0)
            if (hi_a && hi_b) {                          // (0,q_p)(0,q_r) = (−q̄_r q_p, 0)
                int m = qmul(r, p, sign);
                sign = -conj_sign(r) * sign;
                return m;
            }
            if (hi_b) { // (q_p,0)(0,q_r) = (0, q_r q_p)
                int m = qmul(r, p, sign);
                return m + 4;
            }
            // (0,q_p)(q_r,0) = (0, q_p q̄_r)
            int m = qmul(p, r, sign);
            sign *= conj_sign(r);
            return m + 4;
        };
        for (int i = 1; i <= 7; ++i) {
            Mat8 k = Mat8::Constant(Rational(0));
            for (int m = 0; m < 8; ++m) {
                int sign;
                int out = omul(i, m, sign);
                k(out, m) = Rational(sign * orientation_sign_);
            }
            kap_[i - 1] = k;
        }
        Mat8 vol = kap_[0];
        for (int i = 2; i <= 7; ++i) vol = vol * kap_[i - 1];
        volume_sign_ = vol(0, 0).sign();
    }

    const Mat8& kappa(int i) const { return kap_[i - 1]; }
    int volume_sign() const { return volume_sign_; }

    /// Product κ_{i_1} ··· κ_{i_k} for a sorted index tuple.
    Mat8 monomial(const IndexTuple& idx) const {
        Mat8 m = Mat8::Identity();
        for (int i : idx) m = m * kap_[i - 1];
        return m;
    }

    /// Clifford action of a form: ω·ψ = Σ_I ω_I κ_I ψ over sorted monomials.
    SpinMat action(const KForm& w) const {
        SpinMat out = SpinMat::Constant(Scalar(0));
        for (auto& [idx, c] : w.coeffs()) {
            Mat8 m = monomial(idx);
            for (int r = 0; r < 8; ++r)
                for (int col = 0; col < 8; ++col)
                    if (!m(r, col).is_zero()) out(r, col) += c * Scalar(m(r, col));
        }
        return out;
    }

    Spinor apply(const Mat8& m, const Spinor& psi) const {
        Spinor out = Spinor::Constant(Scalar(0));
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c)
                if (!m(r, c).is_zero()) out(r) += Scalar(m(r, c)) * psi(c);
        return out;
    }

private:
    // Global sign of the representation, fixed once so that the adapted-frame
    // G2-form acts with the (−7, +1^7) spectrum. The bare Cayley-Dickson
    // generators give (+7, −1^7); the flip κ_i → −κ_i corrects it and keeps
    // all Clifford relations and antisymmetry.
    static constexpr int orientation_sign_ = -1;
    std::array<Mat8, 7> kap_;
    int volume_sign_ = 0;
};

inline const CliffordRep& build_clifford() {
    static const CliffordRep rep;
    return rep;
}

/// The canonical G2 data of a 7-dimensional 3-(α,δ)-Sasaki structure:
/// ω = Ση_i∧Φ_i^H + η_123, split into ω_1 + ω_2.
struct G2Form {
    KForm omega;
    KForm omega1;
    KForm omega2;
    Scalar alpha;
    Scalar delta;
};

inline G2Form g2_form(const A3CStructure& s) {
    if (s.dim() != 7) throw WrongDimension{};
    auto rep = classify(s);
    if (!rep.three_alpha_delta_sasaki) throw NotSasakiFamily{};
    KForm om1(7, 3);
    for (int i = 1; i <= 3; ++i)
        om1 = om1 + wedge(s.eta(i), horizontal_part(s.fundamental_form(i)));
    KForm om2 = wedge(wedge(s.eta(1), s.eta(2)), s.eta(3));
    return {om1 + om2, om1, om2, rep.three_alpha_delta_sasaki->first,
            rep.three_alpha_delta_sasaki->second};
}

/// d*ω; identically zero exactly when the G2-structure is cocalibrated.
inline KForm cocalibration_residual(const A3CStructure& s) {
    G2Form g2 = g2_form(s);
    return ce_differential(*s.geometry, hodge_star(g2.omega));
}

/// Characteristic torsion of the cocalibrated G2-structure:
/// T = −*dω + (1/6)⟨dω, *ω⟩ ω.
inline KForm g2_characteristic_torsion(const A3CStructure& s) {
    G2Form g2 = g2_form(s);
    KForm dw = ce_differential(*s.geometry, g2.omega);
    Scalar inner = form_inner(dw, hodge_star(g2.omega));
    return -hodge_star(dw) + Scalar::rational(1, 6) * inner * g2.omega;
}

/// Unit −7-eigenspinor of the ω-action, with the sign fixed by making the
/// first nonzero component positive. The spectrum (−7 once, +1 seven times)
/// is asserted exactly; rational normalization is part of the contract.
inline Spinor canonical_spinor(const A3CStructure& s) {
    G2Form g2 = g2_form(s);
    const auto& rep = build_clifford();
    SpinMat m = rep.action(g2.omega);
    // Exact spectrum test: (M + 7)(M − 1) = 0 and tr M = 0 force (−7, +1^7).
    SpinMat id = SpinMat::Identity();
    SpinMat prod = (m + Scalar(7) * id) * (m - id);
    Scalar tr(0);
    for (int i = 0; i < 8; ++i) tr += m(i, i);
    if (!is_zero(prod) || !tr.is_zero()) throw SpectrumMismatch{};

    // Kernel of (M + 7 Id) via exact elimination; one-dimensional by the above.
    SpinMat a = m + Scalar(7) * id;
    std::array<int, 8> pivot_col{-1, -1, -1, -1, -1, -1, -1, -1};
    int row = 0;
    for (int col = 0; col < 8 && row < 8; ++col) {
        int p = -1;
        for (int r = row; r < 8; ++r)
            if (!a(r, col).is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        for (int c = 0; c < 8; ++c) std::swap(a(row, c), a(p, c));
        Scalar inv = Scalar(1) / a(row, col);
        for (int c = 0; c < 8; ++c) a(row, c) = a(row, c) * inv;
        for (int r = 0; r < 8; ++r) {
            if (r == row || a(r, col).is_zero()) continue;
            Scalar f = a(r, col);
            for (int c = 0; c < 8; ++c) a(r, c) = a(r, c) - f * a(row, c);
        }
        pivot_col[row] = col;
        ++row;
    }
    int free_col = -1;
    for (int col = 0; col < 8; ++col) {
        bool is_pivot = false;
        for (int r = 0; r < row; ++r)
            if (pivot_col[r] == col) is_pivot = true;
        if (!is_pivot) {
            free_col = col;
            break;
        }
    }
    if (row != 7 || free_col < 0) throw SpectrumMismatch{};
    Spinor psi = Spinor::Constant(Scalar(0));
    psi(free_col) = Scalar(1);
    for (int r = 0; r < row; ++r) psi(pivot_col[r]) = -a(r, free_col);

    // Exact unit normalization, sign convention: first nonzero component > 0.
    Scalar norm2(0);
    for (int i = 0; i < 8; ++i) norm2 += psi(i) * psi(i);
    if (!norm2.is_constant()) throw SpectrumMismatch{};
    Rational q = norm2.constant_value(), root;
    if (!q.sqrt(root)) throw SpectrumMismatch{};
    Scalar scale = Scalar(1) / Scalar(root);
    for (int i = 0; i < 8; ++i) psi(i) = psi(i) * scale;
    for (int i = 0; i < 8; ++i) {
        if (psi(i).is_zero()) continue;
        if (psi(i).constant_value().sign() < 0)
            for (int j = 0; j < 8; ++j) psi(j) = -psi(j);
        break;
    }
    return psi;
}

/// Spin derivative in the left-invariant trivialization:
/// ∇^g_{e_a} ψ = ½ Σ_{b<c} Γ_{a,bc} κ_b κ_c ψ (no coefficient-derivative term).
inline Spinor spin_derivative(const Connection& conn, const CliffordRep& rep, int a,
                              const Spinor& psi) {
    Spinor out = Spinor::Constant(Scalar(0));
    const int d = conn.dim();
    for (int b = 1; b <= d; ++b)
        for (int c = b + 1; c <= d; ++c) {
            Scalar g = conn.gamma(a, b, c);
            if (g.is_zero()) continue;
            Spinor term = rep.apply(Mat8(rep.kappa(b) * rep.kappa(c)), psi);
            for (int r = 0; r < 8; ++r) out(r) += Scalar::rational(1, 2) * g * term(r);
        }
    return out;
}

struct KillingNumbers {
    std::array<Scalar, 7> mu; // per frame direction
    Scalar horizontal;        // common value on e_4..e_7
    Scalar vertical;          // common value on e_1..e_3 (when shared)
    bool vertical_uniform = false;
};

/// Reports μ_a with ∇^g_{e_a} ψ = μ_a κ_a ψ; throws when no exact scalar
/// exists in some direction.
inline KillingNumbers generalized_killing_check(const A3CStructure& s, const Spinor& psi) {
    if (s.dim() != 7) throw WrongDimension{};
    const auto& rep = build_clifford();
    Connection lc = levi_civita(s.geometry);
    KillingNumbers out;
    for (int a = 1; a <= 7; ++a) {
        Spinor lhs = spin_derivative(lc, rep, a, psi);
        Spinor ka = rep.apply(rep.kappa(a), psi);
        int lead = -1;
        for (int r = 0; r < 8; ++r)
            if (!ka(r).is_zero()) {
                lead = r;
                break;
            }
        if (lead < 0) throw NotGeneralizedKilling(a);
        Scalar mu = lhs(lead) / ka(lead);
        for (int r = 0; r < 8; ++r)
            if (lhs(r) != mu * ka(r)) throw NotGeneralizedKilling(a);
        out.mu[a - 1] = mu;
    }
    out.horizontal = out.mu[3];
    for (int a = 5; a <= 7; ++a)
        if (out.mu[a - 1] != out.horizontal) throw NotGeneralizedKilling(a);
    out.vertical = out.mu[0];
    out.vertical_uniform = (out.mu[1] == out.vertical && out.mu[2] == out.vertical);
    return out;
}

/// Pointwise Cartan-Schouten data on the unit sphere of the spin module:
/// frame e_i(x) = κ_i x, brackets [e_i, e_j](x) = 2 κ_i κ_j x, and the
/// structure functions α_{ijk}(x) = −g(κ_i κ_j κ_k x, x).
struct S7Point {
    RatVec x;
    A3CStructure structure; // snapshot geometry at x
};

inline Rational s7_alpha(const CliffordRep& rep, const RatVec& x, int i, int j, int k) {
    Mat8 m = rep.kappa(i) * rep.kappa(j) * rep.kappa(k);
    Rational acc(0);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            if (!m(r, c).is_zero()) acc += x(r) * m(r, c) * x(c);
    return -acc;
}

inline S7Point s7_structure_at(const RatVec& x) {
    Rational norm(0);
    for (int r = 0; r < 8; ++r) norm += x(r) * x(r);
    if (norm != Rational(1)) throw NonUnitPoint{};
    const auto& rep = build_clifford();
    PointwiseBrackets oracle{[&rep](const RatVec& p, int a, int b, int c) {
        return Scalar(Rational(2) * s7_alpha(rep, p, a, b, c));
    }};
    auto geom = LieFrameGeometry::at_point(catalog::structure_frame(1), oracle, x);
    auto gp = std::make_shared<LieFrameGeometry>(std::move(geom));
    return {x, A3CStructure{gp, catalog::standard_phi(1)}};
}

struct S7PointReport {
    bool commutator_match = false;   // 2κ_iκ_j x = 2 Σ_k α_{ijk}(x) κ_k x
    bool alpha_totally_skew = false; // incl. repeated-index vanishing
    Rational delta_value;            // δ(x) = α_123(x)
    bool nijenhuis_skew = false;     // every N_{φ_i} skew on the full frame
    bool nijenhuis_nonzero = false;  // some N_{φ_i} value nonzero (not hypernormal)
    bool a_tensors_vanish = false;   // A_{ij}|_H = 0 (β = 0, parallel)
    bool flat_torsion_skew = false;  // T(e_i,e_j,e_k) = −g([e_i,e_j],e_k) skew
};

inline S7PointReport s7_point_checks(const RatVec& x) {
    const auto& rep = build_clifford();
    S7Point pt = s7_structure_at(x);
    S7PointReport out;

    out.commutator_match = true;
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j) {
            // lhs: 2 κ_i κ_j x
            Vec8 lhs;
            {
                Mat8 m = rep.kappa(i) * rep.kappa(j);
                for (int r = 0; r < 8; ++r) {
                    Rational acc(0);
                    for (int c = 0; c < 8; ++c) acc += m(r, c) * x(c);
                    lhs(r) = Rational(2) * acc;
                }
            }
            Vec8 rhs;
            for (int r = 0; r < 8; ++r) rhs(r) = Rational(0);
            for (int k = 1; k <= 7; ++k) {
                Rational a = s7_alpha(rep, x, i, j, k);
                if (a.is_zero()) continue;
                for (int r = 0; r < 8; ++r) {
                    Rational comp(0);
                    for (int c = 0; c < 8; ++c) comp += rep.kappa(k)(r, c) * x(c);
                    rhs(r) += Rational(2) * a * comp;
                }
            }
            for (int r = 0; r < 8; ++r)
                if (lhs(r) != rhs(r)) out.commutator_match = false;
        }

    out.alpha_totally_skew = true;
    for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j)
            for (int k = 1; k <= 7; ++k) {
                Rational v = s7_alpha(rep, x, i, j, k);
                if (i == j || j == k || i == k) {
                    if (!v.is_zero()) out.alpha_totally_skew = false;
                    continue;
                }
                if (v != -s7_alpha(rep, x, j, i, k)) out.alpha_totally_skew = false;
                if (v != -s7_alpha(rep, x, i, k, j)) out.alpha_totally_skew = false;
            }

    out.delta_value = s7_alpha(rep, x, 1, 2, 3);

    out.nijenhuis_skew = true;
    out.nijenhuis_nonzero = false;
    for (int i = 1; i <= 3; ++i) {
        Trilinear n = nijenhuis(pt.structure, i);
        if (!n.totally_skew()) out.nijenhuis_skew = false;
        if (!n.is_zero()) out.nijenhuis_nonzero = true;
    }

    out.a_tensors_vanish = true;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (!is_zero(horizontal_block(a_tensor(pt.structure, i, j)))) out.a_tensors_vanish = false;

    // Flat connection Γ ≡ 0: torsion T(a,b,c) = −C_{ab}^c.
    {
        Trilinear t(7);
        for (int a = 1; a <= 7; ++a)
            for (int b = a + 1; b <= 7; ++b)
                for (int c = 1; c <= 7; ++c)
                    t.set(a, b, c, -pt.structure.geometry->brackets().coeff(a, b, c));
        out.flat_torsion_skew = t.totally_skew();
    }
    return out;
}

} // namespace a3c
