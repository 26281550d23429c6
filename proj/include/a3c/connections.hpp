#pragma once

#include "a3c/acms.hpp"

namespace a3c {

struct ExistenceFailed : std::runtime_error {
    explicit ExistenceFailed(const std::string& cond)
        : std::runtime_error("no phi-compatible connection: " + cond) {}
};
struct NotSkew : std::runtime_error {
    explicit NotSkew(const std::string& w) : std::runtime_error("Nijenhuis tensor not totally skew: " + w) {}
};
struct NotKilling : std::runtime_error {
    explicit NotKilling(const std::string& w) : std::runtime_error("Reeb field not Killing: " + w) {}
};
struct NotCanonical : std::runtime_error {
    NotCanonical() : std::runtime_error("structure is not canonical") {}
};
struct NotSasakiFamily : std::runtime_error {
    NotSasakiFamily() : std::runtime_error("structure is not 3-(alpha,delta)-Sasaki") {}
};
struct NonNegativeBeta : std::runtime_error {
    NonNegativeBeta() : std::runtime_error("cone constant needs beta < 0") {}
};

struct PhiCompatDiagnostics {
    bool exists = false;
    std::string failing; // empty when exists
};

/// Existence conditions for a φ-compatible connection at a sphere point:
/// (i) N_φ skew on H, (ii) (L_{ξ_i} g)|_{H×H} = 0, (iii) (L_X g)(ξ_i,ξ_j) = 0
/// for horizontal X — all as exact identities.
inline PhiCompatDiagnostics phi_compatible_exists(const A3CStructure& s, const SphereParam& a) {
    const int d = s.dim();
    SphereStructure t = sphere_structure(s, a);
    if (!nijenhuis(s, t).skew_on_horizontal()) return {false, "nijenhuis_not_skew_on_H"};
    for (int i = 1; i <= 3; ++i) {
        SymBilinear L = lie_derivative_metric(*s.geometry, i);
        for (int p = 4; p <= d; ++p)
            for (int q = p; q <= d; ++q)
                if (!L(p, q).is_zero()) return {false, "reeb_not_killing_on_H"};
    }
    for (int p = 4; p <= d; ++p)
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                if (!(s.geometry->brackets().coeff(p, i, j) + s.geometry->brackets().coeff(p, j, i))
                         .is_zero())
                    return {false, "vertical_metric_not_preserved"};
    return {true, {}};
}

/// Torsion of the φ-compatible connection with parameter function γ:
///   T(X,Y,Z)   = N_φ(X,Y,Z) − dΦ(φX, φY, φZ)   on H,
///   T(X,Y,ξ_i) = dη_i(X,Y),  T(X,ξ_i,ξ_j) = −g([ξ_i,ξ_j],X),
///   T(ξ_1,ξ_2,ξ_3) = γ.
inline KForm phi_compatible_torsion(const A3CStructure& s, const SphereStructure& t,
                                    const Scalar& gamma) {
    const int d = s.dim();
    Trilinear N = nijenhuis_tensor(*s.geometry, t.phi, t.xi, t.eta);
    // Fundamental 2-form of the sphere structure: Φ(X,Y) = g(X, φY).
    KForm Phi(d, 2);
    for (int p = 1; p <= d; ++p)
        for (int q = p + 1; q <= d; ++q) Phi.add({p, q}, t.phi(p - 1, q - 1));
    KForm dPhi = ce_differential(*s.geometry, Phi);

    KForm T(d, 3);
    // vertical cube
    T.add({1, 2, 3}, gamma);
    // one vertical index: T(ξ_i, e_b, e_c) = dη_i(e_b, e_c)
    std::array<KForm, 3> deta{s.deta(1), s.deta(2), s.deta(3)};
    for (int i = 1; i <= 3; ++i)
        for (int b = 4; b <= d; ++b)
            for (int c = b + 1; c <= d; ++c) {
                Scalar v = deta[i - 1].coefficient({b, c});
                if (!v.is_zero()) T.add({i, b, c}, v);
            }
    // two vertical indices: T(ξ_i, ξ_j, e_c) = −g([ξ_i,ξ_j], e_c)
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            for (int c = 4; c <= d; ++c) {
                Scalar v = -s.geometry->brackets().coeff(i, j, c);
                if (!v.is_zero()) T.add({i, j, c}, v);
            }
    // horizontal cube
    for (int p = 4; p <= d; ++p)
        for (int q = p + 1; q <= d; ++q)
            for (int r = q + 1; r <= d; ++r) {
                std::array<Vec, 3> args{Vec(t.phi.col(p - 1)), Vec(t.phi.col(q - 1)),
                                        Vec(t.phi.col(r - 1))};
                Scalar v = N.get(p, q, r) - dPhi.eval(std::span<const Vec>(args.data(), 3));
                if (!v.is_zero()) T.add({p, q, r}, v);
            }
    return T;
}

/// Family torsion at the φ_1 pole; on canonical structures every sphere
/// point yields the same form.
inline KForm phi_compatible_torsion(const A3CStructure& s, const Scalar& gamma) {
    auto diag = phi_compatible_exists(s, SphereParam{Rational(1), Rational(0), Rational(0)});
    if (!diag.exists) throw ExistenceFailed(diag.failing);
    return phi_compatible_torsion(
        s, sphere_structure(s, SphereParam{Rational(1), Rational(0), Rational(0)}), gamma);
}

/// Characteristic connection of the single structure (φ_i, ξ_i, η_i):
/// T_i = η_i∧dη_i + N_{φ_i} + d^{φ_i}Φ_i − η_i∧(ξ_i ⌟ N_{φ_i}).
inline KForm characteristic_torsion(const A3CStructure& s, int i) {
    if (!lie_derivative_metric(*s.geometry, i).is_zero()) throw NotKilling("xi_" + std::to_string(i));
    Trilinear N = nijenhuis(s, i);
    if (!N.totally_skew()) throw NotSkew("phi_" + std::to_string(i));
    KForm nform = N.as_form();
    KForm dPhi = ce_differential(*s.geometry, s.fundamental_form(i));
    KForm T = wedge(s.eta(i), s.deta(i)) + nform + phi_twist(dPhi, s.phi[i - 1]) -
              wedge(s.eta(i), contract(i, nform));
    return T;
}

inline Connection characteristic_connection(const A3CStructure& s, int i) {
    Connection c = connection_from_torsion(s.geometry, characteristic_torsion(s, i));
    // Post-conditions of the construction: ∇^i φ_i = 0 and ∇^i η_i = 0.
    for (int a = 1; a <= s.dim(); ++a) {
        if (!is_zero(c.derive_endo(a, s.phi[i - 1])))
            throw std::runtime_error("characteristic connection fails to parallelize phi");
        if (!c.derive_form(a, s.eta(i)).is_zero())
            throw std::runtime_error("characteristic connection fails to parallelize eta");
    }
    return c;
}

struct CanonicalConnection {
    Connection connection;
    Scalar beta;
    Scalar gamma;
    KForm torsion;
};

/// The unique metric connection with skew torsion satisfying
/// ∇_X φ_i = β(η_k(X)φ_j − η_j(X)φ_k); exists exactly on canonical
/// structures and corresponds to the parameter function γ = 2(β−δ).
inline CanonicalConnection canonical_connection(const A3CStructure& s) {
    auto rep = classify(s);
    if (!rep.canonical || !rep.reeb_commutator_delta) throw NotCanonical{};
    Scalar beta = *rep.reeb_killing_beta;
    Scalar delta = *rep.reeb_commutator_delta;
    Scalar gamma = Scalar(2) * (beta - delta);
    KForm T = phi_compatible_torsion(s, gamma);
    Connection c = connection_from_torsion(s.geometry, T);

    // Post-verification: the three derivative displays plus ∇Ψ = ∇η_123 = 0.
    const int d = s.dim();
    for (int a = 1; a <= d; ++a) {
        for (int i = 1; i <= 3; ++i) {
            int j = i % 3 + 1, k = j % 3 + 1;
            Scalar eja(a == j ? 1 : 0), eka(a == k ? 1 : 0);
            Mat want_phi = beta * (eka * s.phi[j - 1] - eja * s.phi[k - 1]);
            if (!is_zero(Mat(c.derive_endo(a, s.phi[i - 1]) - want_phi)))
                throw std::runtime_error("canonical connection: nabla phi display fails");
            Vec want_xi = beta * (eka * s.xi(j) - eja * s.xi(k));
            if (!is_zero(Vec(c.derive(a, s.xi(i)) - want_xi)))
                throw std::runtime_error("canonical connection: nabla xi display fails");
            KForm want_eta = beta * (eka * s.eta(j) - eja * s.eta(k));
            if (!(c.derive_form(a, s.eta(i)) - want_eta).is_zero())
                throw std::runtime_error("canonical connection: nabla eta display fails");
        }
    }
    if (!c.parallel_form(fundamental_4form(s)))
        throw std::runtime_error("canonical connection: nabla Psi != 0");
    if (!c.parallel_form(wedge(wedge(s.eta(1), s.eta(2)), s.eta(3))))
        throw std::runtime_error("canonical connection: nabla eta123 != 0");
    return {std::move(c), std::move(beta), std::move(gamma), std::move(T)};
}

struct TorsionRelationReport {
    std::array<KForm, 3> difference_residual; // T − T_i + β(η_j∧Φ_j + η_k∧Φ_k)
    KForm averaged_residual;                  // 3T − (T_1+T_2+T_3 − 2β Ση_i∧Φ_i)
    bool all_zero = false;
};

inline TorsionRelationReport torsion_relation_check(const A3CStructure& s) {
    auto can = canonical_connection(s);
    TorsionRelationReport out;
    KForm sum_ti(s.dim(), 3);
    KForm sum_eta_phi(s.dim(), 3);
    for (int i = 1; i <= 3; ++i) sum_eta_phi = sum_eta_phi + wedge(s.eta(i), s.fundamental_form(i));
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = j % 3 + 1;
        KForm ti = characteristic_torsion(s, i);
        sum_ti = sum_ti + ti;
        out.difference_residual[i - 1] =
            can.torsion - ti +
            can.beta * (wedge(s.eta(j), s.fundamental_form(j)) + wedge(s.eta(k), s.fundamental_form(k)));
    }
    out.averaged_residual =
        Scalar(3) * can.torsion - (sum_ti - Scalar(2) * can.beta * sum_eta_phi);
    out.all_zero = out.averaged_residual.is_zero();
    for (auto& r : out.difference_residual)
        if (!r.is_zero()) out.all_zero = false;
    return out;
}

struct SasakiClosedFormReport {
    bool torsion_eta_deta_form = false;   // T = Ση_i∧dη_i + 8(δ−α) η_123
    bool torsion_phi_h_form = false;      // T = 2α Ση_i∧Φ_i^H + 2(δ−4α) η_123
    bool nabla_t_zero = false;            // ∇T = 0
    bool dt_full_form = false;            // dT = 4α² ΣΦ_i∧Φ_i + 8α(δ−α) Σ_cyc Φ_i∧η_jk
    bool dt_horizontal_form = false;      // dT = 4α² ΣΦ_i^H∧Φ_i^H + 8α(δ−2α) Σ_cyc Φ_i^H∧η_jk
    bool dphi_h = false;                  // dΦ_i^H = 2δ(Φ_j^H∧η_k − Φ_k^H∧η_j), α dΦ_i^H = δ d(η_jk)
    bool dpsi_h_zero = false;             // dΨ^H = 0
    bool d_eta_phi_h = false;             // d[Ση_i∧Φ_i^H] = 2α Ψ^H + 2δ Σ_cyc Φ_i^H∧η_jk
    bool d_eta123 = false;                // dη_123 = 2α Σ_cyc Φ_i^H∧η_jk
    bool all() const {
        return torsion_eta_deta_form && torsion_phi_h_form && nabla_t_zero && dt_full_form &&
               dt_horizontal_form && dphi_h && dpsi_h_zero && d_eta_phi_h && d_eta123;
    }
};

inline SasakiClosedFormReport sasaki_closed_forms(const A3CStructure& s) {
    auto rep = classify(s);
    if (!rep.three_alpha_delta_sasaki) throw NotSasakiFamily{};
    auto [alpha, delta] = *rep.three_alpha_delta_sasaki;
    auto can = canonical_connection(s);
    const int d = s.dim();
    const KForm& T = can.torsion;
    KForm eta123 = wedge(wedge(s.eta(1), s.eta(2)), s.eta(3));

    SasakiClosedFormReport out;
    {
        KForm want(d, 3);
        for (int i = 1; i <= 3; ++i) want = want + wedge(s.eta(i), s.deta(i));
        want = want + Scalar(8) * (delta - alpha) * eta123;
        out.torsion_eta_deta_form = (T - want).is_zero();
    }
    std::array<KForm, 3> phiH;
    for (int i = 1; i <= 3; ++i) phiH[i - 1] = horizontal_part(s.fundamental_form(i));
    {
        KForm want(d, 3);
        for (int i = 1; i <= 3; ++i) want = want + Scalar(2) * alpha * wedge(s.eta(i), phiH[i - 1]);
        want = want + Scalar(2) * (delta - Scalar(4) * alpha) * eta123;
        out.torsion_phi_h_form = (T - want).is_zero();
    }
    out.nabla_t_zero = can.connection.parallel_form(T);
    {
        KForm dT = ce_differential(*s.geometry, T);
        KForm cyc_full(d, 4), cyc_h(d, 4), sq_full(d, 4), sq_h(d, 4);
        for (int i = 1; i <= 3; ++i) {
            int j = i % 3 + 1, k = j % 3 + 1;
            KForm f = s.fundamental_form(i);
            sq_full = sq_full + wedge(f, f);
            sq_h = sq_h + wedge(phiH[i - 1], phiH[i - 1]);
            cyc_full = cyc_full + wedge(f, wedge(s.eta(j), s.eta(k)));
            cyc_h = cyc_h + wedge(phiH[i - 1], wedge(s.eta(j), s.eta(k)));
        }
        Scalar a2 = Scalar(4) * alpha * alpha;
        out.dt_full_form =
            (dT - (a2 * sq_full + Scalar(8) * alpha * (delta - alpha) * cyc_full)).is_zero();
        out.dt_horizontal_form =
            (dT - (a2 * sq_h + Scalar(8) * alpha * (delta - Scalar(2) * alpha) * cyc_h)).is_zero();

        // Lemma items.
        bool ok1 = true;
        for (int i = 1; i <= 3; ++i) {
            int j = i % 3 + 1, k = j % 3 + 1;
            KForm dphi = ce_differential(*s.geometry, phiH[i - 1]);
            KForm want = Scalar(2) * delta *
                         (wedge(phiH[j - 1], s.eta(k)) - wedge(phiH[k - 1], s.eta(j)));
            if (!(dphi - want).is_zero()) ok1 = false;
            KForm detajk = ce_differential(*s.geometry, wedge(s.eta(j), s.eta(k)));
            if (!(alpha * dphi - delta * detajk).is_zero()) ok1 = false;
        }
        out.dphi_h = ok1;

        KForm psiH = sq_h;
        out.dpsi_h_zero = ce_differential(*s.geometry, psiH).is_zero();

        KForm eta_phi(d, 3);
        for (int i = 1; i <= 3; ++i) eta_phi = eta_phi + wedge(s.eta(i), phiH[i - 1]);
        out.d_eta_phi_h = (ce_differential(*s.geometry, eta_phi) -
                           (Scalar(2) * alpha * psiH + Scalar(2) * delta * cyc_h))
                              .is_zero();
        out.d_eta123 =
            (ce_differential(*s.geometry, eta123) - Scalar(2) * alpha * cyc_h).is_zero();
    }
    return out;
}

struct RicciClosedFormReport {
    bool canonical_ricci_matches = false;  // Ric = 4α{δ(n+2)−3α} Id_H ⊕ 16α(δ−2α) Id_V
    bool riemannian_ricci_matches = false; // Ric^g closed form
    bool einstein_factorization = false;   // V−H coefficient = 2(α−δ)((2n+3)α−δ)
    bool nabla_einstein = false;           // δ(2−n) = 5α
    bool double_einstein_dim7 = false;     // dim = 7 and δ = 5α
};

inline RicciClosedFormReport ricci_closed_forms(const A3CStructure& s) {
    auto rep = classify(s);
    if (!rep.three_alpha_delta_sasaki) throw NotSasakiFamily{};
    if (s.geometry->is_snapshot()) throw PointwiseUnsupported{};
    auto [alpha, delta] = *rep.three_alpha_delta_sasaki;
    const int d = s.dim();
    Scalar n(s.n());

    RicciClosedFormReport out;
    auto can = canonical_connection(s);
    {
        SymBilinear ric = ricci(can.connection);
        Scalar hval = Scalar(4) * alpha * (delta * (n + Scalar(2)) - Scalar(3) * alpha);
        Scalar vval = Scalar(16) * alpha * (delta - Scalar(2) * alpha);
        bool ok = true;
        for (int a = 1; a <= d && ok; ++a)
            for (int b = a; b <= d; ++b) {
                Scalar want = a != b ? Scalar(0) : (a <= 3 ? vval : hval);
                if (ric(a, b) != want) {
                    ok = false;
                    break;
                }
            }
        out.canonical_ricci_matches = ok;
    }
    {
        SymBilinear ric = ricci(levi_civita(s.geometry));
        Scalar hval = Scalar(2) * alpha * (Scalar(2) * delta * (n + Scalar(2)) - Scalar(3) * alpha);
        Scalar extra = Scalar(2) * (alpha - delta) * ((Scalar(2) * n + Scalar(3)) * alpha - delta);
        bool ok = true;
        for (int a = 1; a <= d && ok; ++a)
            for (int b = a; b <= d; ++b) {
                Scalar want = a != b ? Scalar(0) : (a <= 3 ? hval + extra : hval);
                if (ric(a, b) != want) {
                    ok = false;
                    break;
                }
            }
        out.riemannian_ricci_matches = ok;
        Scalar expanded = Scalar(2) * delta * delta -
                          Scalar(4) * alpha * delta * (n + Scalar(2)) +
                          Scalar(2) * (Scalar(2) * n + Scalar(3)) * alpha * alpha;
        out.einstein_factorization = (extra == expanded);
    }
    out.nabla_einstein = (delta * (Scalar(2) - n) == Scalar(5) * alpha);
    out.double_einstein_dim7 = (d == 7) && (delta == Scalar(5) * alpha);
    return out;
}

struct ConeReport {
    Scalar cone_constant; // a = −β/2
    bool s_tensors_coincide = false; // S_1 = S_2 = S_3 = T' exactly
    bool quaternion_relations = false; // J relations, exact in ρ
    bool j_squares = false;            // J_i² = −Id
};

/// Cone-level checks: the S_i tensors coincide with T' and the lifted
/// endomorphisms satisfy the quaternion algebra. The radial coordinate
/// enters only through ρ := a·r, a fresh positive parameter.
inline ConeReport cone_checks(const A3CStructure& s) {
    auto can = canonical_connection(s);
    auto sign = sign_of(can.beta, s.geometry->params());
    if (!sign || *sign >= 0) throw NonNegativeBeta{};
    Scalar a = Scalar(-Rational(1, 2)) * can.beta;

    ConeReport out;
    out.cone_constant = a;
    KForm tprime = can.torsion;
    for (int i = 1; i <= 3; ++i)
        tprime = tprime + can.beta * wedge(s.eta(i), s.fundamental_form(i));
    bool coincide = true;
    for (int i = 1; i <= 3; ++i) {
        KForm si = characteristic_torsion(s, i) -
                   Scalar(2) * a * wedge(s.eta(i), s.fundamental_form(i));
        if (!(si - tprime).is_zero()) coincide = false;
    }
    out.s_tensors_coincide = coincide;

    // Extended frame (∂_r, e_1, …, e_d); J_i ∂_r = (1/ρ) ξ_i, J_i ξ_i = −ρ ∂_r,
    // J_i = −φ_i on the rest. Products are read left to right:
    // (J_1 J_2)(X) = J_2(J_1(X)).
    const int d = s.dim();
    Scalar rho = Scalar::param("rho");
    auto J = [&](int i) {
        Mat m = zero_mat(d + 1);
        m.block(1, 1, d, d) = -s.phi[i - 1];
        m(i, 0) = Scalar(1) / rho; // J_i ∂_r = (1/ρ) ξ_i
        for (int r = 0; r <= d; ++r) m(r, i) = Scalar(0);
        m(0, i) = -rho; // J_i ξ_i = −ρ ∂_r
        return m;
    };
    Mat J1 = J(1), J2 = J(2), J3 = J(3);
    Mat id = identity_mat(d + 1);
    out.j_squares = is_zero(Mat(J1 * J1 + id)) && is_zero(Mat(J2 * J2 + id)) &&
                    is_zero(Mat(J3 * J3 + id));
    Mat j1j2 = J2 * J1; // left-to-right product J_1 J_2
    Mat j2j1 = J1 * J2;
    out.quaternion_relations = is_zero(Mat(j1j2 - J3)) && is_zero(Mat(j2j1 + J3));
    return out;
}

} // namespace a3c
