#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <thread>

#include "a3c/catalog.hpp"

using namespace a3c;

namespace {

Scalar lam() { return Scalar::param("lambda"); }
Scalar del() { return Scalar::param("delta"); }

std::vector<SphereParam> sphere_points() {
    return {{Rational(1), Rational(0), Rational(0)},
            {Rational(0), Rational(-1), Rational(0)},
            {Rational(3, 5), Rational(4, 5), Rational(0)},
            {Rational(0), Rational(3, 5), Rational(-4, 5)},
            {Rational(4, 5), Rational(0), Rational(3, 5)},
            {Rational(1, 3), Rational(2, 3), Rational(2, 3)},
            {Rational(-2, 3), Rational(1, 3), Rational(2, 3)},
            {Rational(2, 7), Rational(3, 7), Rational(6, 7)},
            {Rational(6, 7), Rational(-2, 7), Rational(3, 7)},
            {Rational(-3, 5), Rational(0), Rational(4, 5)}};
}

// Bilinear value of a 2-form on frame vectors.
Scalar ev2(const KForm& w, int a, int b) { return w.coefficient({a, b}); }

} // namespace

TEST_CASE("horizontal split of the fundamental forms") {
    auto h = catalog::heisenberg(1);
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = j % 3 + 1;
        auto [hpart, vpart] = horizontal_split(h.fundamental_form(i));
        CHECK(vpart == -wedge(h.eta(j), h.eta(k)));
        for (int v = 1; v <= 3; ++v) CHECK(contract(v, hpart).is_zero());
    }
    // Ψ ≠ 0 at n=1 (Ψ^n = Ψ)
    CHECK_FALSE(fundamental_4form(h).is_zero());
    // Ψ^n ≠ 0 at n=2 as well
    KForm psi2 = fundamental_4form(catalog::heisenberg(2));
    CHECK_FALSE(wedge(psi2, psi2).is_zero());
}

TEST_CASE("hypernormality of the quaternionic Heisenberg group") {
    auto h = catalog::heisenberg(1);
    for (int i = 1; i <= 3; ++i) CHECK(nijenhuis(h, i).is_zero());
}

TEST_CASE("nijenhuis values on the real Heisenberg product") {
    auto s = catalog::real_heisenberg_product(1);
    Trilinear n2 = nijenhuis(s, 2);
    Trilinear n3 = nijenhuis(s, 3);
    Trilinear n1 = nijenhuis(s, 1);
    CHECK(n1.is_zero());
    KForm f1 = s.fundamental_form(1);
    for (int a = 4; a <= 7; ++a)
        for (int b = a + 1; b <= 7; ++b) {
            CHECK(n2.get(a, b, 1) == Scalar(2) * ev2(f1, a, b));
            CHECK(n3.get(a, b, 1) == Scalar(2) * ev2(f1, a, b));
        }
}

TEST_CASE("nijenhuis values on the complex Heisenberg product") {
    auto s = catalog::complex_heisenberg_product(1);
    CHECK(nijenhuis(s, 3).is_zero());
    Trilinear n1 = nijenhuis(s, 1);
    Trilinear n2 = nijenhuis(s, 2);
    KForm f3 = s.fundamental_form(3);
    for (int a = 4; a <= 7; ++a)
        for (int b = a + 1; b <= 7; ++b) {
            CHECK(n1.get(a, b, 3) == Scalar(-2) * ev2(f3, a, b));
            CHECK(n2.get(a, b, 3) == Scalar(-2) * ev2(f3, a, b));
        }
}

TEST_CASE("N_{i,i} = 2 N_{phi_i}") {
    for (auto s : {catalog::real_heisenberg_product(1), catalog::nilpotent_three_family(1)}) {
        for (int i = 1; i <= 3; ++i) {
            Trilinear pair = nijenhuis_pair(s, i, i);
            Trilinear single = nijenhuis(s, i);
            for (int a = 1; a <= 7; ++a)
                for (int b = a + 1; b <= 7; ++b)
                    for (int c = 1; c <= 7; ++c)
                        CHECK(pair.get(a, b, c) == Scalar(2) * single.get(a, b, c));
        }
    }
}

TEST_CASE("sphere structure poles and axioms") {
    auto h = catalog::heisenberg(1);
    SphereStructure pole = sphere_structure(h, {Rational(1), Rational(0), Rational(0)});
    CHECK(is_zero(Mat(pole.phi - h.phi[0])));
    CHECK(is_zero(Vec(pole.xi - h.xi(1))));
    for (const auto& a : sphere_points()) {
        SphereStructure t = sphere_structure(h, a);
        CHECK(validate_sphere_structure(h, t).ok);
    }
    CHECK_THROWS_AS(SphereParam(Rational(1), Rational(1), Rational(0)), NonUnitParam);
}

TEST_CASE("sphere Nijenhuis vanishes on hypernormal structures") {
    auto h = catalog::heisenberg(1);
    SphereStructure t = sphere_structure(h, {Rational(3, 5), Rational(4, 5), Rational(0)});
    CHECK(nijenhuis(h, t).is_zero());
}

TEST_CASE("sphere Nijenhuis decomposition on every catalog member at 10 points") {
    // N_{φ_a} = Σ a_i² N_{φ_i} + Σ_{i<j} a_i a_j N_{i,j}. The square weights
    // on the diagonal terms are forced by multilinearity; the unit-weight
    // variant already fails at the sphere poles on the Heisenberg products.
    std::vector<A3CStructure> members{catalog::heisenberg(1), catalog::so3_flat(1),
                                      catalog::nilpotent_three_family(1),
                                      catalog::real_heisenberg_product(1),
                                      catalog::complex_heisenberg_product(1)};
    for (const auto& s : members) {
        std::array<Trilinear, 3> N{nijenhuis(s, 1), nijenhuis(s, 2), nijenhuis(s, 3)};
        Trilinear N12 = nijenhuis_pair(s, 1, 2);
        Trilinear N13 = nijenhuis_pair(s, 1, 3);
        Trilinear N23 = nijenhuis_pair(s, 2, 3);
        for (const auto& a : sphere_points()) {
            SphereStructure t = sphere_structure(s, a);
            Trilinear lhs = nijenhuis(s, t);
            Scalar c1(a.a1 * a.a1), c2(a.a2 * a.a2), c3(a.a3 * a.a3);
            Scalar c12(a.a1 * a.a2), c13(a.a1 * a.a3), c23(a.a2 * a.a3);
            for (int p = 1; p <= s.dim(); ++p)
                for (int q = p + 1; q <= s.dim(); ++q)
                    for (int r = 1; r <= s.dim(); ++r) {
                        Scalar rhs = c1 * N[0].get(p, q, r) + c2 * N[1].get(p, q, r) +
                                     c3 * N[2].get(p, q, r) + c12 * N12.get(p, q, r) +
                                     c13 * N13.get(p, q, r) + c23 * N23.get(p, q, r);
                        CHECK(lhs.get(p, q, r) == rhs);
                    }
        }
    }
}

TEST_CASE("skewness propagation to pairs and sphere points") {
    for (auto s : {catalog::real_heisenberg_product(1), catalog::complex_heisenberg_product(1),
                   catalog::nilpotent_three_family(1)}) {
        bool all_skew = true;
        for (int i = 1; i <= 3; ++i)
            if (!nijenhuis(s, i).skew_on_horizontal()) all_skew = false;
        REQUIRE(all_skew);
        for (int i = 1; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j) CHECK(nijenhuis_pair(s, i, j).skew_on_horizontal());
        for (const auto& a : sphere_points())
            CHECK(nijenhuis(s, sphere_structure(s, a)).skew_on_horizontal());
    }
}

TEST_CASE("A-tensors of the nilpotent family") {
    auto s = catalog::nilpotent_three_family(1);
    // A_{ij} = −Φ_k on H for even permutations
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = j % 3 + 1;
        Mat a_ij = horizontal_block(a_tensor(s, i, j));
        Mat want = horizontal_block(Mat(-s.phi[k - 1]));
        CHECK(is_zero(Mat(a_ij - want)));
    }
}

TEST_CASE("A-tensors of the real Heisenberg product") {
    auto s = catalog::real_heisenberg_product(1);
    Mat a21 = horizontal_block(a_tensor(s, 2, 1));
    Mat a31 = horizontal_block(a_tensor(s, 3, 1));
    CHECK(is_zero(Mat(a21 - Scalar(2) * horizontal_block(s.phi[2]))));
    CHECK(is_zero(Mat(a31 + Scalar(2) * horizontal_block(s.phi[1]))));
    // A_{i2} = A_{i3} = 0 and A_1 = 0
    for (int i = 1; i <= 3; ++i) {
        CHECK(is_zero(horizontal_block(a_tensor(s, i, 2))));
        CHECK(is_zero(horizontal_block(a_tensor(s, i, 3))));
    }
    CHECK(is_zero(horizontal_block(a_tensor(s, 1, 1))));
}

TEST_CASE("A-tensors of the Heisenberg group carry beta = 2(delta-2alpha)") {
    auto h = catalog::heisenberg(1);
    Mat a12 = horizontal_block(a_tensor(h, 1, 2));
    Mat want = Scalar(-2) * lam() * horizontal_block(h.phi[2]);
    CHECK(is_zero(Mat(a12 - want)));
}

TEST_CASE("reeb commutator extraction") {
    CHECK(*reeb_commutator(catalog::heisenberg(1)) == Scalar(0));
    CHECK(*reeb_commutator(catalog::heisenberg(2)) == Scalar(0));
    CHECK(*reeb_commutator(catalog::so3_flat(1)) == del());
    CHECK(*reeb_commutator(catalog::so3_flat(2)) == del());

    // pattern violation: [ξ1,ξ2]=2ξ3 but [ξ2,ξ3]=4ξ1
    ConstantBrackets br(7);
    br.add(1, 2, 3, Scalar(2));
    br.add(2, 3, 1, Scalar(4));
    br.add(3, 1, 2, Scalar(2));
    auto s = catalog::make_structure(catalog::structure_frame(1), std::move(br), ParamSet{});
    CHECK_FALSE(reeb_commutator(s).has_value());
}

TEST_CASE("reeb killing extraction") {
    auto h = catalog::heisenberg(1);
    auto rk = reeb_killing(h);
    REQUIRE(rk.status == ReebKilling::Status::Found);
    CHECK(rk.beta == Scalar(-2) * lam());

    auto nil = reeb_killing(catalog::nilpotent_three_family(1));
    REQUIRE(nil.status == ReebKilling::Status::Found);
    CHECK(nil.beta == Scalar(-1));

    CHECK(reeb_killing(catalog::real_heisenberg_product(1)).status == ReebKilling::Status::NoPattern);
    CHECK(reeb_killing(catalog::su2_edge()).status == ReebKilling::Status::Undetermined);
}

TEST_CASE("structural Nijenhuis identity residual vanishes across the catalog") {
    std::vector<A3CStructure> members{catalog::heisenberg(1), catalog::so3_flat(1),
                                      catalog::real_heisenberg_product(1),
                                      catalog::complex_heisenberg_product(1),
                                      catalog::nilpotent_three_family(1), catalog::su2_edge()};
    for (const auto& s : members)
        for (int i = 1; i <= 3; ++i) CHECK(lemma_n_residual(s, i).is_zero());
}

TEST_CASE("classification: quaternionic Heisenberg groups") {
    for (int n : {1, 2}) {
        auto rep = classify(catalog::heisenberg(n));
        CHECK(rep.valid_a3c);
        CHECK(rep.jacobi_ok);
        CHECK(rep.reeb_killing_all);
        CHECK(rep.hypernormal);
        REQUIRE(rep.three_alpha_delta_sasaki.has_value());
        CHECK(rep.three_alpha_delta_sasaki->first == lam() * Scalar::rational(1, 2));
        CHECK(rep.three_alpha_delta_sasaki->second == Scalar(0));
        CHECK(rep.degenerate);
        CHECK(rep.canonical);
        CHECK_FALSE(rep.parallel);
        REQUIRE(rep.reeb_killing_beta.has_value());
        CHECK(*rep.reeb_killing_beta == Scalar(-2) * lam());
        CHECK(rep.phi_compatible_exists);
        CHECK_FALSE(rep.three_delta_cosymplectic.has_value());
    }
}

TEST_CASE("classification: so3_flat is 3-delta-cosymplectic and parallel") {
    auto rep = classify(catalog::so3_flat(1));
    CHECK(rep.valid_a3c);
    CHECK(rep.hypernormal);
    REQUIRE(rep.three_delta_cosymplectic.has_value());
    CHECK(*rep.three_delta_cosymplectic == del());
    CHECK(rep.canonical);
    CHECK(rep.parallel);
    REQUIRE(rep.reeb_killing_beta.has_value());
    CHECK(rep.reeb_killing_beta->is_zero());
    CHECK_FALSE(rep.three_alpha_delta_sasaki.has_value());
}

TEST_CASE("classification: nilpotent family is canonical but not Sasaki") {
    auto rep = classify(catalog::nilpotent_three_family(1));
    CHECK(rep.valid_a3c);
    CHECK(rep.canonical);
    CHECK(rep.hypernormal);
    REQUIRE(rep.reeb_killing_beta.has_value());
    CHECK(*rep.reeb_killing_beta == Scalar(-1));
    CHECK_FALSE(rep.parallel);
    CHECK_FALSE(rep.three_alpha_delta_sasaki.has_value());
    CHECK_FALSE(rep.three_delta_cosymplectic.has_value());
}

TEST_CASE("classification: Heisenberg products admit compatible connections only") {
    for (auto s : {catalog::real_heisenberg_product(1), catalog::complex_heisenberg_product(1)}) {
        auto rep = classify(s);
        CHECK(rep.valid_a3c);
        CHECK(rep.phi_compatible_exists);
        CHECK_FALSE(rep.canonical);
        CHECK_FALSE(rep.hypernormal);
        CHECK_FALSE(rep.reeb_killing_beta.has_value());
    }
}

TEST_CASE("classification: su2 edge case is flagged, not failed") {
    auto rep = classify(catalog::su2_edge());
    CHECK(rep.valid_a3c);
    CHECK(rep.beta_undetermined);
    CHECK(rep.sasaki_underdetermined);
    CHECK_FALSE(rep.three_alpha_delta_sasaki.has_value());
    REQUIRE(rep.three_delta_cosymplectic.has_value());
    CHECK(*rep.three_delta_cosymplectic == Scalar(1));
}

TEST_CASE("classification implications hold on the catalog") {
    std::vector<A3CStructure> members{catalog::heisenberg(1),
                                      catalog::heisenberg(2),
                                      catalog::so3_flat(1),
                                      catalog::nilpotent_three_family(1),
                                      catalog::real_heisenberg_product(1),
                                      catalog::complex_heisenberg_product(1)};
    for (const auto& s : members) {
        auto rep = classify(s);
        if (rep.three_alpha_delta_sasaki) {
            auto [alpha, delta] = *rep.three_alpha_delta_sasaki;
            CHECK(rep.hypernormal);
            CHECK(rep.canonical);
            REQUIRE(rep.reeb_killing_beta.has_value());
            CHECK(*rep.reeb_killing_beta == Scalar(2) * (delta - Scalar(2) * alpha));
        }
        if (rep.three_delta_cosymplectic) {
            CHECK(rep.canonical);
            CHECK(rep.parallel);
        }
        if (rep.parallel) {
            CHECK(rep.canonical);
            CHECK(rep.reeb_killing_beta->is_zero());
        }
    }
}

TEST_CASE("Sasaki family form identities: dPhi, LC phi-derivative, Lie derivatives") {
    for (int n : {1, 2}) {
        auto s = catalog::heisenberg(n);
        const int d = s.dim();
        Scalar alpha = lam() * Scalar::rational(1, 2);
        Scalar delta(0);
        Scalar am = alpha - delta;

        // dΦ_i = 2(δ−α)(η_k∧Φ_j − η_j∧Φ_k)
        for (int i = 1; i <= 3; ++i) {
            int j = i % 3 + 1, k = j % 3 + 1;
            KForm lhs = ce_differential(*s.geometry, s.fundamental_form(i));
            KForm rhs = Scalar(2) * (delta - alpha) *
                        (wedge(s.eta(k), s.fundamental_form(j)) - wedge(s.eta(j), s.fundamental_form(k)));
            CHECK(lhs == rhs);
        }

        // (∇^g_X φ_i)Y term-by-term closed form
        Connection lc = levi_civita(s.geometry);
        for (int i = 1; i <= 3; ++i) {
            int j = i % 3 + 1, k = j % 3 + 1;
            for (int a = 1; a <= d; ++a) {
                Mat got = lc.derive_endo(a, s.phi[i - 1]);
                Mat want = zero_mat(d);
                for (int b = 1; b <= d; ++b) {
                    Vec col = zero_vec(d);
                    Scalar gab(a == b ? 1 : 0);
                    Scalar eib(b == i ? 1 : 0), ejb(b == j ? 1 : 0), ekb(b == k ? 1 : 0);
                    Scalar eja(a == j ? 1 : 0), eka(a == k ? 1 : 0);
                    Vec ea = zero_vec(d);
                    ea(a - 1) = Scalar(1);
                    col += alpha * (gab * s.xi(i) - eib * ea);
                    col -= Scalar(2) * am * (eka * Vec(s.phi[j - 1].col(b - 1)) - eja * Vec(s.phi[k - 1].col(b - 1)));
                    col += am * (eja * ejb + eka * ekb) * s.xi(i);
                    col -= am * eib * (eja * s.xi(j) + eka * s.xi(k));
                    want.col(b - 1) = col;
                }
                CHECK(is_zero(Mat(got - want)));
            }
        }

        // L_{ξ_i} φ_i = 0 and L_{ξ_i} φ_j = −L_{ξ_j} φ_i = 2δ φ_k
        for (int i = 1; i <= 3; ++i) {
            int j = i % 3 + 1, k = j % 3 + 1;
            CHECK(is_zero(lie_derivative_endo(*s.geometry, i, s.phi[i - 1])));
            Mat lij = lie_derivative_endo(*s.geometry, i, s.phi[j - 1]);
            Mat lji = lie_derivative_endo(*s.geometry, j, s.phi[i - 1]);
            CHECK(is_zero(Mat(lij - Scalar(2) * delta * s.phi[k - 1])));
            CHECK(is_zero(Mat(lij + lji)));
        }
    }
}

TEST_CASE("skew lemma: the four equivalent conditions agree on catalog and sphere") {
    std::vector<A3CStructure> members{catalog::heisenberg(1), catalog::so3_flat(1),
                                      catalog::nilpotent_three_family(1),
                                      catalog::real_heisenberg_product(1),
                                      catalog::complex_heisenberg_product(1)};
    std::vector<SphereParam> pts{{Rational(1), Rational(0), Rational(0)},
                                 {Rational(3, 5), Rational(4, 5), Rational(0)},
                                 {Rational(2, 7), Rational(3, 7), Rational(6, 7)}};
    for (const auto& s : members) {
        const int d = s.dim();
        Connection lc = levi_civita(s.geometry);
        for (const auto& a : pts) {
            SphereStructure t = sphere_structure(s, a);
            // ∇^g φ as matrices per direction
            std::vector<Mat> dphi;
            for (int p = 1; p <= d; ++p) dphi.push_back(lc.derive_endo(p, t.phi));
            auto nabla = [&](const Vec& x) {
                Mat m = zero_mat(d);
                for (int p = 1; p <= d; ++p)
                    if (!x(p - 1).is_zero()) m += x(p - 1) * dphi[p - 1];
                return m;
            };
            auto horiz = [&](int idx) { return idx > 3; };
            // 1) skew on H
            bool c1 = nijenhuis(s, t).skew_on_horizontal();
            // 2) g((∇_Xφ)X, Y) = g((∇_{φX}φ)φX, Y) — quadratic in X; checked on
            //    frame vectors and pairwise sums.
            bool c2 = true;
            std::vector<Vec> hvecs;
            for (int p = 4; p <= d; ++p) {
                Vec e = zero_vec(d);
                e(p - 1) = Scalar(1);
                hvecs.push_back(e);
            }
            for (std::size_t u = 0; u < hvecs.size() && c2; ++u)
                for (std::size_t v = u; v < hvecs.size() && c2; ++v) {
                    Vec X = u == v ? hvecs[u] : Vec(hvecs[u] + hvecs[v]);
                    Vec lhs = nabla(X) * X;
                    Vec fx = t.phi * X;
                    Vec rhs = nabla(fx) * fx;
                    for (int q = 4; q <= d && c2; ++q)
                        if (lhs(q - 1) != rhs(q - 1)) c2 = false;
                }
            // 3) symmetric bilinear version on frame pairs
            bool c3 = true;
            for (int p = 4; p <= d && c3; ++p)
                for (int q = 4; q <= d && c3; ++q) {
                    Vec X = hvecs[p - 4], Y = hvecs[q - 4];
                    Vec lhs = nabla(X) * Y + nabla(Y) * X;
                    Vec fX = t.phi * X, fY = t.phi * Y;
                    Vec rhs = nabla(fX) * fY + nabla(fY) * fX;
                    for (int r = 4; r <= d && c3; ++r)
                        if (lhs(r - 1) != rhs(r - 1)) c3 = false;
                }
            // 4) g((∇_{φZ}φ)Z, Y) + g((∇_Zφ)φZ, Y) = 0 — quadratic in Z.
            bool c4 = true;
            for (std::size_t u = 0; u < hvecs.size() && c4; ++u)
                for (std::size_t v = u; v < hvecs.size() && c4; ++v) {
                    Vec Z = u == v ? hvecs[u] : Vec(hvecs[u] + hvecs[v]);
                    Vec fz = t.phi * Z;
                    Vec lhs = nabla(fz) * Z + nabla(Z) * fz;
                    for (int q = 4; q <= d && c4; ++q)
                        if (!lhs(q - 1).is_zero()) c4 = false;
                }
            (void)horiz;
            CHECK(c1 == c2);
            CHECK(c2 == c3);
            CHECK(c3 == c4);
        }
    }
}

TEST_CASE("Blair identity on hypernormal members") {
    // 2g((∇^g_Xφ_i)Y,Z) = dΦ_i(X,φ_iY,φ_iZ) − dΦ_i(X,Y,Z)
    //                     + dη_i(φ_iY,X)η_i(Z) − dη_i(φ_iZ,X)η_i(Y)
    for (auto s : {catalog::heisenberg(1), catalog::so3_flat(1), catalog::nilpotent_three_family(1)}) {
        REQUIRE(classify(s).hypernormal);
        const int d = s.dim();
        Connection lc = levi_civita(s.geometry);
        for (int i = 1; i <= 3; ++i) {
            KForm dPhi = ce_differential(*s.geometry, s.fundamental_form(i));
            KForm deta = s.deta(i);
            const Mat& phi = s.phi[i - 1];
            for (int a = 1; a <= d; ++a) {
                Mat dphi_a = lc.derive_endo(a, phi);
                for (int b = 1; b <= d; ++b)
                    for (int c = 1; c <= d; ++c) {
                        Scalar lhs = Scalar(2) * dphi_a(c - 1, b - 1);
                        Vec X = zero_vec(d), Y = zero_vec(d), Z = zero_vec(d);
                        X(a - 1) = Scalar(1);
                        Y(b - 1) = Scalar(1);
                        Z(c - 1) = Scalar(1);
                        Vec fY = phi * Y, fZ = phi * Z;
                        std::array<Vec, 3> a1{X, fY, fZ}, a2{X, Y, Z};
                        Scalar rhs = dPhi.eval(std::span<const Vec>(a1.data(), 3)) -
                                     dPhi.eval(std::span<const Vec>(a2.data(), 3));
                        std::array<Vec, 2> b1{fY, X}, b2{fZ, X};
                        rhs += deta.eval(std::span<const Vec>(b1.data(), 2)) * Z(i - 1);
                        rhs -= deta.eval(std::span<const Vec>(b2.data(), 2)) * Y(i - 1);
                        CHECK(lhs == rhs);
                    }
            }
        }
    }
}

TEST_CASE("independent classifications run concurrently") {
    std::vector<std::thread> workers;
    std::array<std::atomic<bool>, 4> ok{};
    auto job = [&](int slot, A3CStructure s) {
        auto rep = classify(s);
        ok[slot] = rep.valid_a3c && rep.jacobi_ok;
    };
    workers.emplace_back(job, 0, catalog::heisenberg(1));
    workers.emplace_back(job, 1, catalog::so3_flat(1));
    workers.emplace_back(job, 2, catalog::nilpotent_three_family(1));
    workers.emplace_back(job, 3, catalog::complex_heisenberg_product(1));
    for (auto& w : workers) w.join();
    for (auto& flag : ok) CHECK(flag.load());
}

TEST_CASE("Einstein factorization at the scalar level") {
    Scalar alpha = Scalar::param("alpha");
    Scalar delta = del();
    Scalar nn = Scalar::param("n_dim");
    Scalar vertical_minus_horizontal =
        Scalar(2) * delta * delta - Scalar(4) * alpha * delta * (nn + Scalar(2)) +
        Scalar(2) * (Scalar(2) * nn + Scalar(3)) * alpha * alpha;
    Scalar factored = Scalar(2) * (alpha - delta) * ((Scalar(2) * nn + Scalar(3)) * alpha - delta);
    CHECK(vertical_minus_horizontal == factored);
    CHECK(factored.substitute("delta", alpha).is_zero());
    CHECK(factored.substitute("delta", (Scalar(2) * nn + Scalar(3)) * alpha).is_zero());
}
