#pragma once

#include <array>
#include <optional>

#include "a3c/liegeom.hpp"

namespace a3c {

struct WrongDimension : std::runtime_error {
    WrongDimension() : std::runtime_error("structure requires dimension 4n+3") {}
};
struct NonUnitParam : std::runtime_error {
    NonUnitParam() : std::runtime_error("sphere parameter must have unit norm") {}
};
struct UndeterminedAtNZero : std::runtime_error {
    UndeterminedAtNZero() : std::runtime_error("horizontal distribution is trivial at n=0") {}
};

/// Almost 3-contact metric structure on a left-invariant frame geometry.
/// The Reeb fields are the first three frame vectors and η_i their exact
/// duals; the horizontal distribution is spanned by the remaining frame.
struct A3CStructure {
    GeometryPtr geometry;
    std::array<Mat, 3> phi;

    int dim() const { return geometry->dim(); }
    int n() const { return (dim() - 3) / 4; }

    Vec xi(int i) const {
        Vec v = zero_vec(dim());
        v(i - 1) = Scalar(1);
        return v;
    }
    KForm eta(int i) const { return KForm::dual(dim(), i); }

    /// Fundamental 2-form Φ_i(X,Y) = g(X, φ_i Y).
    KForm fundamental_form(int i) const {
        const Mat& m = phi[i - 1];
        KForm f(dim(), 2);
        for (int a = 1; a <= dim(); ++a)
            for (int b = a + 1; b <= dim(); ++b) f.add({a, b}, m(a - 1, b - 1));
        return f;
    }
    KForm deta(int i) const { return ce_differential(*geometry, eta(i)); }
};

/// Horizontal part of a form: the monomials supported on frame indices > 3.
inline KForm horizontal_part(const KForm& f) {
    KForm h(f.dim(), f.degree());
    for (auto& [idx, c] : f.coeffs())
        if (idx.empty() || idx.front() > 3) h.add(idx, c);
    return h;
}

/// Splits Φ_i into (Φ_i^H, vertical rest).
inline std::pair<KForm, KForm> horizontal_split(const KForm& phi_form) {
    KForm h = horizontal_part(phi_form);
    return {h, phi_form - h};
}

/// Fundamental 4-form Ψ = Σ Φ_i ∧ Φ_i.
inline KForm fundamental_4form(const A3CStructure& s) {
    KForm psi(s.dim(), 4);
    for (int i = 1; i <= 3; ++i) {
        KForm f = s.fundamental_form(i);
        psi = psi + wedge(f, f);
    }
    return psi;
}

struct ValidationResult {
    bool ok = true;
    std::string axiom;
    std::string witness;
    explicit operator bool() const { return ok; }
};

/// Checks every identity of the quaternion-like structure relations and
/// metric compatibility, identically in the parameters.
inline ValidationResult validate_structure(const A3CStructure& s) {
    const int d = s.dim();
    if (d < 3 || (d - 3) % 4 != 0) return {false, "dimension", "dim != 4n+3"};
    Mat id = identity_mat(d);
    auto outer = [&](const Vec& v, int j) { // v ⊗ η_j
        Mat m = zero_mat(d);
        m.col(j - 1) = v;
        return m;
    };
    for (int i = 1; i <= 3; ++i) {
        const Mat& p = s.phi[i - 1];
        if (!is_zero(Mat(p * p + id - outer(s.xi(i), i))))
            return {false, "phi_square", "phi_" + std::to_string(i)};
        if (!is_zero(Mat(p.transpose() * p - id + outer(s.xi(i), i))))
            return {false, "metric_compatibility", "phi_" + std::to_string(i)};
    }
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = j % 3 + 1; // (i,j,k) even
        const Mat &pi = s.phi[i - 1], &pj = s.phi[j - 1], &pk = s.phi[k - 1];
        if (!is_zero(Mat(pk - (pi * pj - outer(s.xi(i), j)))))
            return {false, "phi_composition", "phi_k = phi_i phi_j - eta_j (x) xi_i at i=" + std::to_string(i)};
        if (!is_zero(Mat(pk - (-pj * pi + outer(s.xi(j), i)))))
            return {false, "phi_composition", "phi_k = -phi_j phi_i + eta_i (x) xi_j at i=" + std::to_string(i)};
        if (!is_zero(Vec(pi * s.xi(j) - s.xi(k))))
            return {false, "xi_relation", "xi_k = phi_i xi_j at i=" + std::to_string(i)};
        if (!is_zero(Vec(pj * s.xi(i) + s.xi(k))))
            return {false, "xi_relation", "xi_k = -phi_j xi_i at i=" + std::to_string(i)};
        // η_k = η_i ∘ φ_j = −η_j ∘ φ_i (rows of the matrices)
        if (!is_zero(Mat(pj.row(i - 1) - id.row(k - 1))))
            return {false, "eta_relation", "eta_k = eta_i . phi_j at i=" + std::to_string(i)};
        if (!is_zero(Mat(pi.row(j - 1) + id.row(k - 1))))
            return {false, "eta_relation", "eta_k = -eta_j . phi_i at i=" + std::to_string(i)};
    }
    return {};
}

/// Nijenhuis tensor of a single almost contact structure (φ, ξ, η):
/// N_φ(X,Y) = [φX,φY] + φ²[X,Y] − φ[φX,Y] − φ[X,φY] + dη(X,Y)ξ, lowered by g.
inline Trilinear nijenhuis_tensor(const LieFrameGeometry& g, const Mat& phi, const Vec& xi,
                                  const KForm& eta) {
    const int n = g.dim();
    KForm de = ce_differential(g, eta);
    Trilinear t(n);
    for (int a = 1; a <= n; ++a) {
        Vec ea = zero_vec(n);
        ea(a - 1) = Scalar(1);
        for (int b = a + 1; b <= n; ++b) {
            Vec eb = zero_vec(n);
            eb(b - 1) = Scalar(1);
            Vec pa = phi.col(a - 1), pb = phi.col(b - 1);
            Vec v = g.brackets().bracket(pa, pb) + phi * (phi * g.brackets().bracket(ea, eb)) -
                    phi * g.brackets().bracket(pa, eb) - phi * g.brackets().bracket(ea, pb);
            Scalar de_ab = de.coefficient({a, b});
            if (!de_ab.is_zero()) v += de_ab * xi;
            for (int c = 1; c <= n; ++c)
                if (!v(c - 1).is_zero()) t.set(a, b, c, v(c - 1));
        }
    }
    return t;
}

inline Trilinear nijenhuis(const A3CStructure& s, int i) {
    return nijenhuis_tensor(*s.geometry, s.phi[i - 1], s.xi(i), s.eta(i));
}

/// Mixed tensor N_{i,j} = [φ_i, φ_j] + dη_i ⊗ ξ_j + dη_j ⊗ ξ_i; N_{i,i} = 2 N_{φ_i}.
inline Trilinear nijenhuis_pair(const A3CStructure& s, int i, int j) {
    const auto& g = *s.geometry;
    const int n = s.dim();
    const Mat &pi = s.phi[i - 1], &pj = s.phi[j - 1];
    KForm dei = s.deta(i), dej = s.deta(j);
    Trilinear t(n);
    for (int a = 1; a <= n; ++a) {
        Vec ea = zero_vec(n);
        ea(a - 1) = Scalar(1);
        for (int b = a + 1; b <= n; ++b) {
            Vec eb = zero_vec(n);
            eb(b - 1) = Scalar(1);
            Vec pia = pi.col(a - 1), pib = pi.col(b - 1);
            Vec pja = pj.col(a - 1), pjb = pj.col(b - 1);
            Vec v = g.brackets().bracket(pia, pjb) - pi * g.brackets().bracket(pja, eb) -
                    pj * g.brackets().bracket(ea, pib) + g.brackets().bracket(pja, pib) -
                    pj * g.brackets().bracket(pia, eb) - pi * g.brackets().bracket(ea, pjb) +
                    (pi * (pj * g.brackets().bracket(ea, eb)) + pj * (pi * g.brackets().bracket(ea, eb)));
            Scalar ci = dei.coefficient({a, b}), cj = dej.coefficient({a, b});
            if (!ci.is_zero()) v += ci * s.xi(j);
            if (!cj.is_zero()) v += cj * s.xi(i);
            for (int c = 1; c <= n; ++c)
                if (!v(c - 1).is_zero()) t.set(a, b, c, v(c - 1));
        }
    }
    return t;
}

/// Exact rational point of the associated sphere of structures.
struct SphereParam {
    Rational a1, a2, a3;
    SphereParam(Rational x, Rational y, Rational z) : a1(x), a2(y), a3(z) {
        if (a1 * a1 + a2 * a2 + a3 * a3 != Rational(1)) throw NonUnitParam{};
    }
};

/// Single almost contact metric structure from the associated sphere.
struct SphereStructure {
    Mat phi;
    Vec xi;
    KForm eta;
};

inline SphereStructure sphere_structure(const A3CStructure& s, const SphereParam& a) {
    const int n = s.dim();
    Mat phi = zero_mat(n);
    phi += Scalar(a.a1) * s.phi[0] + Scalar(a.a2) * s.phi[1] + Scalar(a.a3) * s.phi[2];
    Vec xi = Scalar(a.a1) * s.xi(1) + Scalar(a.a2) * s.xi(2) + Scalar(a.a3) * s.xi(3);
    KForm eta(n, 1);
    eta.add({1}, Scalar(a.a1));
    eta.add({2}, Scalar(a.a2));
    eta.add({3}, Scalar(a.a3));
    return {std::move(phi), std::move(xi), std::move(eta)};
}

/// Single-structure almost contact metric axioms for a sphere point.
inline ValidationResult validate_sphere_structure(const A3CStructure& s, const SphereStructure& t) {
    const int d = s.dim();
    Mat id = identity_mat(d);
    Mat outer = zero_mat(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) outer(a, b) = t.xi(a) * t.xi(b);
    if (!is_zero(Mat(t.phi * t.phi + id - outer))) return {false, "phi_square", "sphere"};
    if (!is_zero(Mat(t.phi.transpose() * t.phi - id + outer)))
        return {false, "metric_compatibility", "sphere"};
    Scalar unit(0);
    for (int a = 0; a < d; ++a) unit += t.xi(a) * t.xi(a);
    if (unit != Scalar(1)) return {false, "eta_dual", "sphere"};
    return {};
}

inline Trilinear nijenhuis(const A3CStructure& s, const SphereStructure& t) {
    return nijenhuis_tensor(*s.geometry, t.phi, t.xi, t.eta);
}

/// 2-form as an antisymmetric matrix M_{ab} = ω(e_a, e_b).
inline Mat form_matrix(const KForm& w) {
    Mat m = zero_mat(w.dim());
    for (auto& [idx, c] : w.coeffs()) {
        m(idx[0] - 1, idx[1] - 1) = c;
        m(idx[1] - 1, idx[0] - 1) = -c;
    }
    return m;
}

/// A_{ij}(X,Y) = g((L_{ξ_j} φ_i) X, Y) + dη_j(X, φ_i Y) + dη_j(φ_i X, Y),
/// as a full matrix; only the horizontal block carries meaning.
inline Mat a_tensor(const A3CStructure& s, int i, int j) {
    const Mat& pi = s.phi[i - 1];
    Mat L = lie_derivative_endo(*s.geometry, j, pi);
    Mat D = form_matrix(s.deta(j));
    return Mat(L.transpose() + D * pi + pi.transpose() * D);
}

inline Mat horizontal_block(const Mat& m) {
    const int d = static_cast<int>(m.rows());
    Mat h = zero_mat(d);
    if (d > 3) h.block(3, 3, d - 3, d - 3) = m.block(3, 3, d - 3, d - 3);
    return h;
}

/// All nine A_{ij} restricted to the horizontal block.
inline std::array<std::array<Mat, 3>, 3> a_tensors(const A3CStructure& s) {
    std::array<std::array<Mat, 3>, 3> out;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) out[i - 1][j - 1] = horizontal_block(a_tensor(s, i, j));
    return out;
}

/// Reeb commutator function: δ with η_k([ξ_i,ξ_j]) = 2δ ε_{ijk}, if the
/// pattern holds exactly; extraction is pattern matching, never fitting.
inline std::optional<Scalar> reeb_commutator(const A3CStructure& s) {
    const auto& br = s.geometry->brackets();
    Scalar delta = br.coeff(1, 2, 3) * Scalar::rational(1, 2);
    static const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                     {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                     {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
                Scalar want = Scalar(2 * eps[i - 1][j - 1][k - 1]) * delta;
                Scalar have = i == j ? Scalar(0) : br.coeff(i, j, k);
                if (have != want) return std::nullopt;
            }
    return delta;
}

struct ReebKilling {
    enum class Status { Found, NoPattern, Undetermined } status;
    Scalar beta; // valid when status == Found
};

/// Reeb Killing function: β with A_i = 0 and A_{ij} = −A_{ji} = β Φ_k on H.
inline ReebKilling reeb_killing(const A3CStructure& s) {
    if (s.n() == 0) return {ReebKilling::Status::Undetermined, Scalar(0)};
    auto A = a_tensors(s);
    for (int i = 0; i < 3; ++i)
        if (!is_zero(A[i][i])) return {ReebKilling::Status::NoPattern, Scalar(0)};

    std::optional<Scalar> beta;
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = j % 3 + 1; // (i,j,k) even permutation
        Mat phik_h = horizontal_block(s.phi[k - 1]);
        const Mat& a_ij = A[i - 1][j - 1];
        const Mat& a_ji = A[j - 1][i - 1];
        // Extract β from the first nonzero Φ_k entry, then verify exactly.
        std::optional<Scalar> b;
        for (int p = 3; p < s.dim() && !b; ++p)
            for (int q = 3; q < s.dim(); ++q)
                if (!phik_h(p, q).is_zero()) {
                    b = a_ij(p, q) / phik_h(p, q);
                    break;
                }
        if (!b) return {ReebKilling::Status::Undetermined, Scalar(0)};
        if (!is_zero(Mat(a_ij - *b * phik_h)) || !is_zero(Mat(a_ji + *b * phik_h)))
            return {ReebKilling::Status::NoPattern, Scalar(0)};
        if (beta && *beta != *b) return {ReebKilling::Status::NoPattern, Scalar(0)};
        if (!beta) beta = b;
    }
    return {ReebKilling::Status::Found, *beta};
}

/// Residual of the structural identity expressing N_{φ_i} through the η and
/// Φ differentials; identically zero on every almost 3-contact metric
/// structure.
inline Trilinear lemma_n_residual(const A3CStructure& s, int i) {
    const int n = s.dim();
    int j = i % 3 + 1, k = j % 3 + 1;
    const Mat &pi = s.phi[i - 1], &pj = s.phi[j - 1];
    KForm dPj = ce_differential(*s.geometry, s.fundamental_form(j));
    KForm dPk = ce_differential(*s.geometry, s.fundamental_form(k));
    Mat Dj = form_matrix(s.deta(j));
    Mat Dk = form_matrix(s.deta(k));
    Trilinear N = nijenhuis(s, i);

    Trilinear r(n);
    std::vector<Vec> basis;
    for (int a = 0; a < n; ++a) {
        Vec e = zero_vec(n);
        e(a) = Scalar(1);
        basis.push_back(e);
    }
    auto ev3 = [&](const KForm& w, const Vec& x, const Vec& y, const Vec& z) {
        std::array<Vec, 3> args{x, y, z};
        return w.eval(std::span<const Vec>(args.data(), 3));
    };
    auto bil = [&](const Mat& D, const Vec& x, const Vec& y) {
        Scalar acc(0);
        for (int p = 0; p < n; ++p) {
            if (x(p).is_zero()) continue;
            for (int q = 0; q < n; ++q)
                if (!D(p, q).is_zero() && !y(q).is_zero()) acc += x(p) * D(p, q) * y(q);
        }
        return acc;
    };
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c) {
                const Vec &X = basis[a - 1], &Y = basis[b - 1], &Z = basis[c - 1];
                Vec piX = pi.col(a - 1), piY = pi.col(b - 1), pjZ = pj.col(c - 1);
                Scalar rhs = -ev3(dPj, X, Y, pjZ) + ev3(dPj, piX, piY, pjZ) +
                             ev3(dPk, X, piY, pjZ) + ev3(dPk, piX, Y, pjZ);
                Scalar ei_x = X(i - 1), ei_y = Y(i - 1), ej_z = Z(j - 1);
                if (!ei_x.is_zero())
                    rhs -= ei_x * (bil(Dj, piY, pjZ) + bil(Dk, Y, pjZ));
                if (!ei_y.is_zero())
                    rhs += ei_y * (bil(Dj, piX, pjZ) + bil(Dk, X, pjZ));
                if (!ej_z.is_zero()) {
                    rhs += ej_z * (bil(Dj, X, Y) - bil(Dj, piX, piY));
                    rhs -= ej_z * (bil(Dk, X, piY) + bil(Dk, piX, Y));
                }
                Scalar resid = N.get(a, b, c) - rhs;
                if (!resid.is_zero()) r.set(a, b, c, resid);
            }
    return r;
}

/// Everything the engine can decide about one structure.
struct ClassificationReport {
    bool valid_a3c = false;
    bool jacobi_ok = false;
    bool reeb_killing_all = false;            // each ξ_i a Killing field
    std::array<bool, 3> nijenhuis_skew_on_h = {false, false, false};
    bool hypernormal = false;
    std::optional<Scalar> reeb_commutator_delta;
    std::optional<Scalar> reeb_killing_beta;
    bool beta_undetermined = false;           // n = 0 edge
    bool canonical = false;
    bool parallel = false;
    std::optional<Scalar> three_delta_cosymplectic; // δ when the pattern holds
    std::optional<std::pair<Scalar, Scalar>> three_alpha_delta_sasaki; // (α, δ)
    bool sasaki_underdetermined = false;      // n = 0: α unconstrained
    bool degenerate = false;                  // Sasaki family with δ = 0
    bool phi_compatible_exists = false;
};

inline ClassificationReport classify(const A3CStructure& s) {
    ClassificationReport rep;
    rep.valid_a3c = static_cast<bool>(validate_structure(s));
    rep.jacobi_ok = s.geometry->is_snapshot() || jacobi_check(s.geometry->brackets()).ok;
    if (!rep.valid_a3c) return rep;
    const int d = s.dim();

    // Killing Reeb fields.
    rep.reeb_killing_all = true;
    for (int i = 1; i <= 3; ++i)
        if (!lie_derivative_metric(*s.geometry, i).is_zero()) rep.reeb_killing_all = false;

    // Nijenhuis tensors.
    std::array<Trilinear, 3> N;
    rep.hypernormal = true;
    for (int i = 1; i <= 3; ++i) {
        N[i - 1] = nijenhuis(s, i);
        rep.nijenhuis_skew_on_h[i - 1] = N[i - 1].skew_on_horizontal();
        if (!N[i - 1].is_zero()) rep.hypernormal = false;
    }

    rep.reeb_commutator_delta = reeb_commutator(s);

    auto rk = reeb_killing(s);
    if (rk.status == ReebKilling::Status::Found) rep.reeb_killing_beta = rk.beta;
    rep.beta_undetermined = rk.status == ReebKilling::Status::Undetermined;

    // φ-compatible connections exist (conditions checked for each φ_i; the
    // sphere case follows from skewness propagation).
    {
        bool ok = rep.nijenhuis_skew_on_h[0] && rep.nijenhuis_skew_on_h[1] && rep.nijenhuis_skew_on_h[2];
        for (int i = 1; i <= 3 && ok; ++i) {
            SymBilinear L = lie_derivative_metric(*s.geometry, i);
            for (int a = 4; a <= d && ok; ++a)
                for (int b = a; b <= d; ++b)
                    if (!L(a, b).is_zero()) {
                        ok = false;
                        break;
                    }
        }
        for (int a = 4; a <= d && ok; ++a) {
            // (L_X g)(ξ_i, ξ_j) = −C_{ai}^j − C_{aj}^i for horizontal e_a
            for (int i = 1; i <= 3 && ok; ++i)
                for (int j = 1; j <= 3; ++j)
                    if (!(s.geometry->brackets().coeff(a, i, j) +
                          s.geometry->brackets().coeff(a, j, i))
                             .is_zero()) {
                        ok = false;
                        break;
                    }
        }
        rep.phi_compatible_exists = ok;
    }

    // Canonical: skew N on H, Killing ξ, condition 3, Reeb Killing function.
    {
        bool cond3 = true;
        std::optional<Trilinear> first;
        for (int i = 1; i <= 3 && cond3; ++i) {
            KForm dPhi = ce_differential(*s.geometry, s.fundamental_form(i));
            KForm twisted = pullback(s.phi[i - 1], dPhi);
            Trilinear q(d);
            for (int a = 4; a <= d; ++a)
                for (int b = a + 1; b <= d; ++b)
                    for (int c = 4; c <= d; ++c) {
                        Scalar v = N[i - 1].get(a, b, c) - twisted.coefficient({a, b, c});
                        q.set(a, b, c, v);
                    }
            if (!first)
                first = q;
            else if (!(q - *first).is_zero())
                cond3 = false;
        }
        rep.canonical = rep.nijenhuis_skew_on_h[0] && rep.nijenhuis_skew_on_h[1] &&
                        rep.nijenhuis_skew_on_h[2] && rep.reeb_killing_all && cond3 &&
                        rep.reeb_killing_beta.has_value();
        rep.parallel = rep.canonical && rep.reeb_killing_beta->is_zero();
    }

    // 3-δ-cosymplectic: dη_i = −2δ η_j∧η_k and dΦ_i = 0.
    if (rep.reeb_commutator_delta) {
        const Scalar& delta = *rep.reeb_commutator_delta;
        bool cosym = true;
        for (int i = 1; i <= 3 && cosym; ++i) {
            int j = i % 3 + 1, k = j % 3 + 1;
            KForm want = Scalar(-2) * delta * wedge(s.eta(j), s.eta(k));
            if (!(s.deta(i) - want).is_zero()) cosym = false;
            if (!ce_differential(*s.geometry, s.fundamental_form(i)).is_zero()) cosym = false;
        }
        if (cosym) rep.three_delta_cosymplectic = delta;
    }

    // 3-(α,δ)-Sasaki: dη_i = 2α Φ_i + 2(α−δ) η_j∧η_k with α ≠ 0.
    if (rep.reeb_commutator_delta) {
        const Scalar& delta = *rep.reeb_commutator_delta;
        if (s.n() == 0) {
            // Horizontal pattern is vacuous: any α fits iff dη_i = −2δ η_jk.
            bool vertical_ok = true;
            for (int i = 1; i <= 3 && vertical_ok; ++i) {
                int j = i % 3 + 1, k = j % 3 + 1;
                KForm want = Scalar(-2) * delta * wedge(s.eta(j), s.eta(k));
                if (!(s.deta(i) - want).is_zero()) vertical_ok = false;
            }
            rep.sasaki_underdetermined = vertical_ok;
        } else {
            std::optional<Scalar> alpha;
            bool match = true;
            for (int i = 1; i <= 3 && match; ++i) {
                KForm phiH = horizontal_part(s.fundamental_form(i));
                KForm dH = horizontal_part(s.deta(i));
                if (phiH.is_zero()) {
                    match = false;
                    break;
                }
                auto& [idx0, c0] = *phiH.coeffs().begin();
                Scalar a_i = dH.coefficient(idx0) / (Scalar(2) * c0);
                if (!alpha)
                    alpha = a_i;
                else if (*alpha != a_i)
                    match = false;
            }
            if (match && alpha && !alpha->is_zero()) {
                for (int i = 1; i <= 3 && match; ++i) {
                    int j = i % 3 + 1, k = j % 3 + 1;
                    KForm want = Scalar(2) * *alpha * s.fundamental_form(i) +
                                 Scalar(2) * (*alpha - delta) * wedge(s.eta(j), s.eta(k));
                    if (!(s.deta(i) - want).is_zero()) match = false;
                }
                if (match) {
                    rep.three_alpha_delta_sasaki = std::make_pair(*alpha, delta);
                    rep.degenerate = delta.is_zero();
                }
            }
        }
    }
    return rep;
}

} // namespace a3c
