#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "a3c/catalog.hpp"
#include "a3c/connections.hpp"

using namespace a3c;

namespace {

Scalar lam() { return Scalar::param("lambda"); }
Scalar del() { return Scalar::param("delta"); }
Scalar gam() { return Scalar::param("gamma"); }

SphereParam pole1() { return {Rational(1), Rational(0), Rational(0)}; }

KForm eta123(const A3CStructure& s) {
    return wedge(wedge(s.eta(1), s.eta(2)), s.eta(3));
}

} // namespace

TEST_CASE("phi-compatible existence on the catalog") {
    CHECK(phi_compatible_exists(catalog::heisenberg(1), pole1()).exists);
    CHECK(phi_compatible_exists(catalog::heisenberg(1), {Rational(3, 5), Rational(4, 5), Rational(0)})
              .exists);
    CHECK(phi_compatible_exists(catalog::complex_heisenberg_product(1), pole1()).exists);
    CHECK(phi_compatible_exists(catalog::real_heisenberg_product(1), pole1()).exists);

    // sabotage: add [ξ1, τ1] = τ1 so ξ1 is not Killing on H
    ConstantBrackets br(7);
    br.add(1, 4, 4, Scalar(1));
    auto s = catalog::make_structure(catalog::structure_frame(1), std::move(br), ParamSet{});
    auto diag = phi_compatible_exists(s, pole1());
    CHECK_FALSE(diag.exists);
    CHECK(diag.failing == "reeb_not_killing_on_H");
}

TEST_CASE("family torsion of the Heisenberg group, symbolic gamma") {
    auto s = catalog::heisenberg(1);
    KForm T = phi_compatible_torsion(s, gam());
    // T_γ = Ση_i∧dη_i + (6δ+γ) η_123 with δ = 0. The η_123 coefficient is
    // pinned by the canonical case: at γ = 2(δ−4α) it must reproduce
    // T = Ση_i∧dη_i + 8(δ−α) η_123.
    KForm want(7, 3);
    for (int i = 1; i <= 3; ++i) want = want + wedge(s.eta(i), s.deta(i));
    want.add({1, 2, 3}, gam());
    CHECK(T == want);

    // Equivalent display: 2α Ση_i∧Φ_i^H + γ η_123 with α = λ/2
    KForm want2(7, 3);
    for (int i = 1; i <= 3; ++i)
        want2 = want2 + lam() * wedge(s.eta(i), horizontal_part(s.fundamental_form(i)));
    want2.add({1, 2, 3}, gam());
    CHECK(T == want2);
}

TEST_CASE("family torsion of so3_flat pins the 6*delta+gamma vertical coefficient") {
    auto s = catalog::so3_flat(1);
    KForm T = phi_compatible_torsion(s, gam());
    KForm want(7, 3);
    for (int i = 1; i <= 3; ++i) want = want + wedge(s.eta(i), s.deta(i));
    want.add({1, 2, 3}, Scalar(6) * del() + gam());
    CHECK(T == want);
}

TEST_CASE("phi-compatible connection preserves the splitting and phi along H") {
    for (auto s : {catalog::heisenberg(1), catalog::complex_heisenberg_product(1),
                   catalog::nilpotent_three_family(1)}) {
        KForm T = phi_compatible_torsion(s, gam());
        Connection c = connection_from_torsion(s.geometry, T);
        CHECK(c.metric());
        const int d = s.dim();
        // splitting: ∇_a e_b vertical for b ≤ 3, horizontal for b > 3
        for (int a = 1; a <= d; ++a)
            for (int b = 1; b <= d; ++b) {
                Vec v = c.matrix(a).col(b - 1);
                for (int cix = 1; cix <= d; ++cix) {
                    bool same_block = (b <= 3) == (cix <= 3);
                    if (!same_block) CHECK(v(cix - 1).is_zero());
                }
            }
        // (∇_X φ)Y = 0 for horizontal X, Y (φ = φ_1 pole)
        for (int a = 4; a <= d; ++a) {
            Mat dphi = c.derive_endo(a, s.phi[0]);
            for (int b = 4; b <= d; ++b)
                for (int cix = 4; cix <= d; ++cix) CHECK(dphi(cix - 1, b - 1).is_zero());
        }
        // γ really is T(ξ1,ξ2,ξ3)
        CHECK(c.torsion_form().coefficient({1, 2, 3}) == gam());
    }
}

TEST_CASE("nabla xi in the phi-compatible family matches (2delta+gamma)/2 rotation") {
    for (auto s : {catalog::heisenberg(1), catalog::so3_flat(1), catalog::nilpotent_three_family(1),
                   catalog::real_heisenberg_product(1), catalog::complex_heisenberg_product(1)}) {
        auto delta = reeb_commutator(s);
        REQUIRE(delta.has_value());
        KForm T = phi_compatible_torsion(s, gam());
        Connection c = connection_from_torsion(s.geometry, T);
        Scalar coef = (Scalar(2) * *delta + gam()) * Scalar::rational(1, 2);
        const int d = s.dim();
        for (int i = 1; i <= 3; ++i) {
            int j = i % 3 + 1, k = j % 3 + 1;
            for (int a = 1; a <= d; ++a) {
                Vec want = coef * (Scalar(a == k ? 1 : 0) * s.xi(j) - Scalar(a == j ? 1 : 0) * s.xi(k));
                CHECK(is_zero(Vec(c.derive(a, s.xi(i)) - want)));
            }
        }
    }
}

TEST_CASE("NT identity for phi-compatible torsion on horizontal triples") {
    // N_φ(X,Y,Z) = T(X,Y,Z) − T(φX,φY,Z) − T(φX,Y,φZ) − T(X,φY,φZ)
    for (auto s : {catalog::complex_heisenberg_product(1), catalog::heisenberg(1)}) {
        SphereStructure t = sphere_structure(s, {Rational(3, 5), Rational(0), Rational(4, 5)});
        REQUIRE(nijenhuis(s, t).skew_on_horizontal());
        KForm T = phi_compatible_torsion(s, t, gam());
        Trilinear N = nijenhuis(s, t);
        const int d = s.dim();
        for (int a = 4; a <= d; ++a)
            for (int b = a + 1; b <= d; ++b)
                for (int c = 4; c <= d; ++c) {
                    Vec X = zero_vec(d), Y = zero_vec(d), Z = zero_vec(d);
                    X(a - 1) = Scalar(1);
                    Y(b - 1) = Scalar(1);
                    Z(c - 1) = Scalar(1);
                    Vec fX = t.phi * X, fY = t.phi * Y, fZ = t.phi * Z;
                    auto ev = [&](const Vec& u, const Vec& v, const Vec& w) {
                        std::array<Vec, 3> args{u, v, w};
                        return T.eval(std::span<const Vec>(args.data(), 3));
                    };
                    Scalar rhs = ev(X, Y, Z) - ev(fX, fY, Z) - ev(fX, Y, fZ) - ev(X, fY, fZ);
                    CHECK(N.get(a, b, c) == rhs);
                }
    }
}

TEST_CASE("uniqueness: equal gamma gives equal torsion; canonical members are pole-independent") {
    auto s = catalog::heisenberg(1);
    KForm t1 = phi_compatible_torsion(s, gam());
    KForm t2 = phi_compatible_torsion(s, gam());
    CHECK(t1 == t2);
    for (auto member : {catalog::heisenberg(1), catalog::so3_flat(1), catalog::nilpotent_three_family(1)}) {
        KForm pole = phi_compatible_torsion(member, gam());
        for (SphereParam a : {SphereParam{Rational(0), Rational(1), Rational(0)},
                              SphereParam{Rational(3, 5), Rational(4, 5), Rational(0)},
                              SphereParam{Rational(2, 7), Rational(3, 7), Rational(6, 7)}}) {
            KForm other = phi_compatible_torsion(member, sphere_structure(member, a), gam());
            CHECK(pole == other);
        }
    }
}

TEST_CASE("twisted pullback of dPhi on the Sasaki family") {
    // d^{φ_i}Φ_i = 2(δ−α)(η_j∧Φ_j + η_k∧Φ_k + 2η_123), here with δ = 0.
    auto s = catalog::heisenberg(1);
    Scalar alpha = lam() * Scalar::rational(1, 2);
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = j % 3 + 1;
        KForm dPhi = ce_differential(*s.geometry, s.fundamental_form(i));
        KForm twisted = phi_twist(dPhi, s.phi[i - 1]);
        KForm want = Scalar(-2) * alpha *
                     (wedge(s.eta(j), s.fundamental_form(j)) +
                      wedge(s.eta(k), s.fundamental_form(k)) + Scalar(2) * eta123(s));
        CHECK(twisted == want);
    }
}

TEST_CASE("characteristic connections of the Heisenberg group") {
    auto s = catalog::heisenberg(1);
    Scalar alpha = lam() * Scalar::rational(1, 2);
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = j % 3 + 1;
        KForm ti = characteristic_torsion(s, i);
        // T_i = η_i∧dη_i + 2(δ−α)(η_j∧Φ_j + η_k∧Φ_k + 2η_123), δ = 0
        KForm want = wedge(s.eta(i), s.deta(i)) +
                     Scalar(2) * (Scalar(0) - alpha) *
                         (wedge(s.eta(j), s.fundamental_form(j)) +
                          wedge(s.eta(k), s.fundamental_form(k)) + Scalar(2) * eta123(s));
        CHECK(ti == want);
        CHECK_NOTHROW(characteristic_connection(s, i));
    }
}

TEST_CASE("characteristic torsion of the nilpotent family") {
    auto s = catalog::nilpotent_three_family(1);
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = j % 3 + 1;
        KForm ti = characteristic_torsion(s, i);
        // T_i = η_i∧dη_i + Σ_r (η_j∧θ_{kn+r} − η_k∧θ_{jn+r})∧θ_{in+r}
        auto theta = [&](int l) { return KForm::dual(7, 3 + l); };
        KForm want = wedge(s.eta(i), s.deta(i)) +
                     wedge(wedge(s.eta(j), theta(k + 1)) - wedge(s.eta(k), theta(j + 1)), theta(i + 1));
        CHECK(ti == want);
    }
}

TEST_CASE("characteristic connection demands a Killing Reeb field") {
    ConstantBrackets br(7);
    br.add(1, 4, 4, Scalar(1));
    auto s = catalog::make_structure(catalog::structure_frame(1), std::move(br), ParamSet{});
    CHECK_THROWS_AS(characteristic_torsion(s, 1), NotKilling);
    CHECK_THROWS_AS(phi_compatible_torsion(s, Scalar(0)), ExistenceFailed);
}

TEST_CASE("characteristic connection demands a totally skew Nijenhuis tensor") {
    // On the real Heisenberg product, N_{φ2} is skew on H but not on TM.
    auto s = catalog::real_heisenberg_product(1);
    CHECK(nijenhuis(s, 2).skew_on_horizontal());
    CHECK_FALSE(nijenhuis(s, 2).totally_skew());
    CHECK_THROWS_AS(characteristic_torsion(s, 2), NotSkew);
    // φ1 is normal there, so its characteristic connection exists.
    CHECK_NOTHROW(characteristic_connection(s, 1));
}

TEST_CASE("canonical connection of the Heisenberg group") {
    auto s = catalog::heisenberg(1);
    auto can = canonical_connection(s);
    CHECK(can.beta == Scalar(-2) * lam());
    CHECK(can.gamma == Scalar(-4) * lam());
    // T = Ση_i∧dη_i − 4λ η_123
    KForm want(7, 3);
    for (int i = 1; i <= 3; ++i) want = want + wedge(s.eta(i), s.deta(i));
    want.add({1, 2, 3}, Scalar(-4) * lam());
    CHECK(can.torsion == want);
}

TEST_CASE("canonical connection of so3_flat and the nilpotent family") {
    {
        auto s = catalog::so3_flat(1);
        auto can = canonical_connection(s);
        CHECK(can.beta.is_zero());
        KForm want(7, 3);
        want.add({1, 2, 3}, Scalar(-2) * del());
        CHECK(can.torsion == want);
        // β = 0 collapse: T_1 = T_2 = T_3 = T
        for (int i = 1; i <= 3; ++i) CHECK(characteristic_torsion(s, i) == can.torsion);
    }
    {
        auto s = catalog::nilpotent_three_family(1);
        auto can = canonical_connection(s);
        CHECK(can.beta == Scalar(-1));
        KForm want(7, 3);
        for (int i = 1; i <= 3; ++i) want = want + wedge(s.eta(i), s.deta(i));
        want.add({1, 2, 3}, Scalar(-2));
        CHECK(can.torsion == want);
    }
}

TEST_CASE("canonical connection refuses non-canonical structures") {
    CHECK_THROWS_AS(canonical_connection(catalog::real_heisenberg_product(1)), NotCanonical);
}

TEST_CASE("torsion relations between canonical and characteristic connections") {
    for (auto s : {catalog::heisenberg(1), catalog::nilpotent_three_family(1), catalog::so3_flat(1)}) {
        auto rel = torsion_relation_check(s);
        CHECK(rel.all_zero);
    }
}

TEST_CASE("nabla_xi_phi identity on Killing-Reeb catalog members") {
    // g((∇_{ξ_i}φ)X,Y) = g((L_{ξ_i}φ)X,Y) + dη_i(φX,Y) + dη_i(X,φY) on H pairs
    for (auto s : {catalog::heisenberg(1), catalog::so3_flat(1), catalog::nilpotent_three_family(1),
                   catalog::complex_heisenberg_product(1)}) {
        KForm T = phi_compatible_torsion(s, gam());
        Connection c = connection_from_torsion(s.geometry, T);
        const int d = s.dim();
        for (const SphereParam& a :
             {SphereParam{Rational(1), Rational(0), Rational(0)},
              SphereParam{Rational(0), Rational(0), Rational(1)},
              SphereParam{Rational(3, 5), Rational(0), Rational(4, 5)}}) {
            SphereStructure t = sphere_structure(s, a);
            for (int i = 1; i <= 3; ++i) {
                Mat DM = c.derive_endo(i, t.phi);
                Mat LM = lie_derivative_endo(*s.geometry, i, t.phi);
                Mat D = form_matrix(s.deta(i));
                Mat phiTD = t.phi.transpose() * D; // (a,b) -> dη_i(φ e_a, e_b)
                Mat Dphi = D * t.phi;              // (a,b) -> dη_i(e_a, φ e_b)
                // bilinear form entries: g((∇_{ξ_i}φ)e_a, e_b) = DM(b,a)
                for (int a = 4; a <= d; ++a)
                    for (int b = 4; b <= d; ++b) {
                        Scalar lhs = DM(b - 1, a - 1);
                        Scalar rhs = LM(b - 1, a - 1) + phiTD(a - 1, b - 1) + Dphi(a - 1, b - 1);
                        CHECK(lhs == rhs);
                    }
            }
        }
    }
}

TEST_CASE("sasaki closed forms on heisenberg n=1 and n=2") {
    for (int n : {1, 2}) {
        auto rep = sasaki_closed_forms(catalog::heisenberg(n));
        CHECK(rep.torsion_eta_deta_form);
        CHECK(rep.torsion_phi_h_form);
        CHECK(rep.nabla_t_zero);
        CHECK(rep.dt_full_form);
        CHECK(rep.dt_horizontal_form);
        CHECK(rep.dphi_h);
        CHECK(rep.dpsi_h_zero);
        CHECK(rep.d_eta_phi_h);
        CHECK(rep.d_eta123);
    }
    CHECK_THROWS_AS(sasaki_closed_forms(catalog::nilpotent_three_family(1)), NotSasakiFamily);
}

TEST_CASE("ricci closed forms on heisenberg n=1 and n=2") {
    for (int n : {1, 2}) {
        auto rep = ricci_closed_forms(catalog::heisenberg(n));
        CHECK(rep.canonical_ricci_matches);
        CHECK(rep.riemannian_ricci_matches);
        CHECK(rep.einstein_factorization);
        CHECK_FALSE(rep.nabla_einstein); // δ = 0 never equals 5α/(2−n) with α ≠ 0
        CHECK_FALSE(rep.double_einstein_dim7);
    }
}

TEST_CASE("heisenberg(1) canonical Ricci values pin the sign convention") {
    auto can = canonical_connection(catalog::heisenberg(1));
    SymBilinear ric = ricci(can.connection);
    Scalar l2 = lam() * lam();
    for (int a = 1; a <= 7; ++a) {
        CHECK(ric(a, a) == (a <= 3 ? Scalar(-8) * l2 : Scalar(-3) * l2));
    }
}

TEST_CASE("cone checks on the Heisenberg group") {
    auto s = catalog::heisenberg(1);
    auto rep = cone_checks(s);
    CHECK(rep.cone_constant == lam());
    CHECK(rep.s_tensors_coincide);
    CHECK(rep.quaternion_relations);
    CHECK(rep.j_squares);
}

TEST_CASE("cone checks reject beta = 0") {
    CHECK_THROWS_AS(cone_checks(catalog::so3_flat(1)), NonNegativeBeta);
}

TEST_CASE("cone checks on the nilpotent family (beta = -1)") {
    auto rep = cone_checks(catalog::nilpotent_three_family(1));
    CHECK(rep.cone_constant == Scalar(Rational(1, 2)));
    CHECK(rep.s_tensors_coincide);
    CHECK(rep.quaternion_relations);
}
