#pragma once

#include "a3c/acms.hpp"

namespace a3c {
namespace catalog {

struct InvalidN : std::runtime_error {
    InvalidN() : std::runtime_error("example requires n >= 1") {}
};

/// Frame names (ξ1, ξ2, ξ3, τ1, …, τ_{4n}); for n = 1 this is the adapted
/// frame with e5 = φ1 e4, e6 = φ2 e4, e7 = φ3 e4.
inline FrameSpace structure_frame(int n) {
    std::vector<std::string> names{"xi1", "xi2", "xi3"};
    for (int l = 1; l <= 4 * n; ++l) names.push_back("t" + std::to_string(l));
    return FrameSpace(std::move(names));
}

/// The standard endomorphisms
/// φ_i = η_j⊗ξ_k − η_k⊗ξ_j + Σ_r [θ_r⊗τ_{in+r} − θ_{in+r}⊗τ_r
///                                + θ_{jn+r}⊗τ_{kn+r} − θ_{kn+r}⊗τ_{jn+r}].
inline std::array<Mat, 3> standard_phi(int n) {
    const int dim = 4 * n + 3;
    std::array<Mat, 3> phis{zero_mat(dim), zero_mat(dim), zero_mat(dim)};
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = j % 3 + 1;
        Mat& p = phis[i - 1];
        // column = argument: p.col(a) = φ(e_a)
        p(k - 1, j - 1) = Scalar(1);  // φ_i ξ_j = ξ_k
        p(j - 1, k - 1) = Scalar(-1); // φ_i ξ_k = −ξ_j
        auto tau = [&](int l) { return 3 + l; }; // 1-based frame index of τ_l
        for (int r = 1; r <= n; ++r) {
            p(tau(i * n + r) - 1, tau(r) - 1) = Scalar(1);      // φ_i τ_r = τ_{in+r}
            p(tau(r) - 1, tau(i * n + r) - 1) = Scalar(-1);     // φ_i τ_{in+r} = −τ_r
            p(tau(k * n + r) - 1, tau(j * n + r) - 1) = Scalar(1);  // φ_i τ_{jn+r} = τ_{kn+r}
            p(tau(j * n + r) - 1, tau(k * n + r) - 1) = Scalar(-1); // φ_i τ_{kn+r} = −τ_{jn+r}
        }
    }
    return phis;
}

inline A3CStructure make_structure(FrameSpace frame, ConstantBrackets br, ParamSet ps,
                                   bool snapshot = false) {
    int n = (frame.dim - 3) / 4;
    auto geom = std::make_shared<LieFrameGeometry>(std::move(frame), std::move(br), std::move(ps),
                                                   snapshot);
    return A3CStructure{std::move(geom), standard_phi(n)};
}

/// Quaternionic Heisenberg group of dimension 4n+3 with parameter λ > 0:
/// [τ_r, τ_{n+r}] = λξ1, [τ_r, τ_{2n+r}] = λξ2, [τ_r, τ_{3n+r}] = λξ3,
/// [τ_{2n+r}, τ_{3n+r}] = λξ1, [τ_{3n+r}, τ_{n+r}] = λξ2, [τ_{n+r}, τ_{2n+r}] = λξ3.
inline A3CStructure heisenberg(int n) {
    if (n < 1) throw InvalidN{};
    const int dim = 4 * n + 3;
    ConstantBrackets br(dim);
    Scalar lam = Scalar::param("lambda");
    auto tau = [&](int l) { return 3 + l; };
    for (int r = 1; r <= n; ++r) {
        br.add(tau(r), tau(n + r), 1, lam);
        br.add(tau(r), tau(2 * n + r), 2, lam);
        br.add(tau(r), tau(3 * n + r), 3, lam);
        br.add(tau(2 * n + r), tau(3 * n + r), 1, lam);
        br.add(tau(3 * n + r), tau(n + r), 2, lam);
        br.add(tau(n + r), tau(2 * n + r), 3, lam);
    }
    return make_structure(structure_frame(n), std::move(br), ParamSet{{"lambda", true}});
}

/// so(3) ⊕ R^{4n} with [ξ_i, ξ_j] = 2δ ξ_k; a 3-δ-cosymplectic example.
inline A3CStructure so3_flat(int n) {
    if (n < 1) throw InvalidN{};
    const int dim = 4 * n + 3;
    ConstantBrackets br(dim);
    Scalar delta = Scalar::param("delta");
    br.add(1, 2, 3, Scalar(2) * delta);
    br.add(2, 3, 1, Scalar(2) * delta);
    br.add(3, 1, 2, Scalar(2) * delta);
    return make_structure(structure_frame(n), std::move(br), ParamSet{{"delta", false}});
}

/// Nilpotent family with [τ_r, τ_{n+r}] = ξ1, [τ_r, τ_{2n+r}] = ξ2,
/// [τ_r, τ_{3n+r}] = ξ3: canonical with β = −1, not in the Sasaki family.
inline A3CStructure nilpotent_three_family(int n) {
    if (n < 1) throw InvalidN{};
    const int dim = 4 * n + 3;
    ConstantBrackets br(dim);
    auto tau = [&](int l) { return 3 + l; };
    for (int r = 1; r <= n; ++r) {
        br.add(tau(r), tau(n + r), 1, Scalar(1));
        br.add(tau(r), tau(2 * n + r), 2, Scalar(1));
        br.add(tau(r), tau(3 * n + r), 3, Scalar(1));
    }
    return make_structure(structure_frame(n), std::move(br), ParamSet{});
}

/// H^{2n}_R × R^2: [τ_r, τ_{n+r}] = [τ_{2n+r}, τ_{3n+r}] = ξ1.
inline A3CStructure real_heisenberg_product(int n) {
    if (n < 1) throw InvalidN{};
    const int dim = 4 * n + 3;
    ConstantBrackets br(dim);
    auto tau = [&](int l) { return 3 + l; };
    for (int r = 1; r <= n; ++r) {
        br.add(tau(r), tau(n + r), 1, Scalar(1));
        br.add(tau(2 * n + r), tau(3 * n + r), 1, Scalar(1));
    }
    return make_structure(structure_frame(n), std::move(br), ParamSet{});
}

/// H^{2n}_C × R: [τ_r, τ_{n+r}] = [τ_{2n+r}, τ_{3n+r}] = ξ1,
/// [τ_r, τ_{2n+r}] = [τ_{3n+r}, τ_{n+r}] = ξ2.
inline A3CStructure complex_heisenberg_product(int n) {
    if (n < 1) throw InvalidN{};
    const int dim = 4 * n + 3;
    ConstantBrackets br(dim);
    auto tau = [&](int l) { return 3 + l; };
    for (int r = 1; r <= n; ++r) {
        br.add(tau(r), tau(n + r), 1, Scalar(1));
        br.add(tau(2 * n + r), tau(3 * n + r), 1, Scalar(1));
        br.add(tau(r), tau(2 * n + r), 2, Scalar(1));
        br.add(tau(3 * n + r), tau(n + r), 2, Scalar(1));
    }
    return make_structure(structure_frame(n), std::move(br), ParamSet{});
}

/// n = 0 edge case: su(2) with [ξ_i, ξ_j] = 2ξ_k. Exercises the
/// underdetermined classification path (trivial horizontal distribution).
inline A3CStructure su2_edge() {
    ConstantBrackets br(3);
    br.add(1, 2, 3, Scalar(2));
    br.add(2, 3, 1, Scalar(2));
    br.add(3, 1, 2, Scalar(2));
    return make_structure(structure_frame(0), std::move(br), ParamSet{});
}

} // namespace catalog
} // namespace a3c
