#pragma once

#include "a3c/acms.hpp"

namespace a3c {

struct InvalidParams : std::runtime_error {
    InvalidParams() : std::runtime_error("deformation needs s != 0 and c != 0") {}
};
struct WrongSignProduct : std::runtime_error {
    WrongSignProduct() : std::runtime_error("alpha*delta has the wrong sign for this deformation") {}
};
struct NotRationallyRealizable : std::runtime_error {
    NotRationallyRealizable() : std::runtime_error("required square root is not rational") {}
};

/// Deformation data (η_i' = cη_i, ξ_i' = ξ_i/c, g' = a g + b Ση_i⊗η_i) with
/// a = s² absorbed into the frame scale s, and b = c² − s² by construction,
/// so c² = a + b holds identically.
struct DeformParams {
    Scalar s{1};
    Scalar c{1};

    Scalar a() const { return s * s; }
    Scalar b() const { return c * c - s * s; }
};

/// Deformed parameters of the 3-(α,δ)-Sasaki family: α' = αc/a, δ' = δ/c.
inline std::pair<Scalar, Scalar> deform_alpha_delta(const Scalar& alpha, const Scalar& delta,
                                                    const Scalar& a, const Scalar& c) {
    return {alpha * c / a, delta / c};
}

inline std::pair<Scalar, Scalar> deform_parameters(const Scalar& alpha, const Scalar& delta,
                                                   const DeformParams& p) {
    return deform_alpha_delta(alpha, delta, p.a(), p.c);
}

/// H-homothetic deformation realized as an exact frame rescaling: the new
/// orthonormal frame is ξ_i' = ξ_i/c, τ' = τ/s, so a bracket coefficient
/// C_{ab}^c picks up the factor w_c/(w_a w_b) with w vertical = c,
/// w horizontal = s. The φ matrices are unchanged in the new frame.
inline A3CStructure h_deform(const A3CStructure& str, const DeformParams& p) {
    if (p.s.is_zero() || p.c.is_zero()) throw InvalidParams{};
    const int d = str.dim();
    auto w = [&](int idx) { return idx <= 3 ? p.c : p.s; };
    ConstantBrackets br(d);
    for (int a = 1; a <= d; ++a)
        for (int b = a + 1; b <= d; ++b) {
            Vec v = zero_vec(d);
            bool nonzero = false;
            for (int c = 1; c <= d; ++c) {
                Scalar k = str.geometry->brackets().coeff(a, b, c);
                if (k.is_zero()) continue;
                v(c - 1) = k * w(c) / (w(a) * w(b));
                nonzero = true;
            }
            if (nonzero) br.set(a, b, v);
        }

    // Merge any fresh symbols of s, c into the parameter set (s positive).
    ParamSet ps = str.geometry->params();
    for (const auto& name : p.s.parameters())
        if (!ps.find(name)) ps.declare({name, true});
    for (const auto& name : p.c.parameters())
        if (!ps.find(name)) ps.declare({name, false});

    auto geom = std::make_shared<LieFrameGeometry>(str.geometry->frame(), std::move(br),
                                                   std::move(ps), str.geometry->is_snapshot());
    return A3CStructure{std::move(geom), str.phi};
}

/// eq-(hyperbola) deformation to a 3-α̃-Sasaki structure: a = 1,
/// b = δ/α − 1, c = √(δ/α); requires αδ > 0 and a rational square root.
inline DeformParams to_3_alpha_sasaki(const Rational& alpha, const Rational& delta) {
    if ((alpha * delta).sign() <= 0) throw WrongSignProduct{};
    Rational c;
    if (!(delta / alpha).sqrt(c)) throw NotRationallyRealizable{};
    return {Scalar(1), Scalar(c)};
}

/// eq-(hyperbola2) deformation to α̃ = −δ̃: a = 1, b = −δ/α − 1, c = √(−δ/α);
/// requires αδ < 0 and a rational square root.
inline DeformParams to_neg_pair(const Rational& alpha, const Rational& delta) {
    if ((alpha * delta).sign() >= 0) throw WrongSignProduct{};
    Rational c;
    if ((-(delta / alpha)).sqrt(c) == false) throw NotRationallyRealizable{};
    return {Scalar(1), Scalar(c)};
}

} // namespace a3c
