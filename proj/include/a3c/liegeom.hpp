#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "a3c/frame.hpp"

namespace a3c {

struct NonConstantCoefficients : std::runtime_error {
    NonConstantCoefficients() : std::runtime_error("operation needs frame-constant coefficients") {}
};

/// Raised for second-order operations on a pointwise bracket snapshot, where
/// derivatives of the structure coefficients are not available.
struct PointwiseUnsupported : std::runtime_error {
    PointwiseUnsupported() : std::runtime_error("second-order operation unsupported on pointwise data") {}
};

/// Structure constants C_{ab}^c with antisymmetry enforced in (a,b).
class ConstantBrackets {
public:
    ConstantBrackets() = default;
    explicit ConstantBrackets(int dim) : dim_(dim), c_(dim * dim, zero_vec(dim)) {}

    int dim() const { return dim_; }

    /// Declare [e_a, e_b] = v (and [e_b, e_a] = −v).
    void set(int a, int b, const Vec& v) {
        if (a == b) throw std::invalid_argument("bracket of a vector with itself");
        c_[at(a, b)] = v;
        c_[at(b, a)] = -v;
    }
    void add(int a, int b, int c, const Scalar& coeff) {
        c_[at(a, b)](c - 1) += coeff;
        c_[at(b, a)](c - 1) -= coeff;
    }
    /// [e_a, e_b] as a coefficient vector ([e_a, e_a] stays zero).
    const Vec& bracket(int a, int b) const { return c_[at(a, b)]; }
    Scalar coeff(int a, int b, int c) const { return bracket(a, b)(c - 1); }

    /// [u, v] for constant-coefficient vectors.
    Vec bracket(const Vec& u, const Vec& v) const {
        Vec out = zero_vec(dim_);
        for (int a = 1; a <= dim_; ++a) {
            if (u(a - 1).is_zero()) continue;
            for (int b = 1; b <= dim_; ++b) {
                if (a == b || v(b - 1).is_zero()) continue;
                out += u(a - 1) * v(b - 1) * c_[at(a, b)];
            }
        }
        return out;
    }

private:
    int at(int a, int b) const { return (a - 1) * dim_ + (b - 1); }
    int dim_ = 0;
    std::vector<Vec> c_;
};

struct JacobiWitness {
    bool ok = true;
    int a = 0, b = 0, c = 0;
    Vec residual;
};

/// Σ_cyc [[e_a,e_b],e_c] must vanish identically in the parameters.
inline JacobiWitness jacobi_check(const ConstantBrackets& br) {
    const int n = br.dim();
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) {
                Vec ea = zero_vec(n), eb = zero_vec(n), ec = zero_vec(n);
                ea(a - 1) = Scalar(1);
                eb(b - 1) = Scalar(1);
                ec(c - 1) = Scalar(1);
                Vec r = br.bracket(br.bracket(a, b), ec) + br.bracket(br.bracket(b, c), ea) +
                        br.bracket(br.bracket(c, a), eb);
                if (!is_zero(r)) return {false, a, b, c, r};
            }
    return {};
}

/// Closed-form bracket oracle: exact bracket coefficients at a queried point.
/// The guarantee carried with it: metric and structure-tensor coefficients
/// are frame-constant, so first-order operators remain valid pointwise.
struct PointwiseBrackets {
    std::function<Scalar(const RatVec& point, int a, int b, int c)> coeff;
};

/// Left-invariant orthonormal frame geometry. The metric is the identity in
/// the declared frame by construction. A geometry built from a pointwise
/// oracle is marked as a snapshot: first-order operators are valid, but
/// Jacobi and curvature are not.
class LieFrameGeometry {
public:
    LieFrameGeometry(FrameSpace frame, ConstantBrackets brackets, ParamSet params = {},
                     bool pointwise_snapshot = false)
        : frame_(std::move(frame)),
          brackets_(std::move(brackets)),
          params_(std::move(params)),
          snapshot_(pointwise_snapshot) {}

    static LieFrameGeometry abelian(int dim) {
        return LieFrameGeometry(FrameSpace::standard(dim), ConstantBrackets(dim));
    }

    /// Materialize a constant-coefficient snapshot of a pointwise oracle.
    static LieFrameGeometry at_point(FrameSpace frame, const PointwiseBrackets& oracle,
                                     const RatVec& point) {
        const int n = frame.dim;
        ConstantBrackets br(n);
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                Vec v = zero_vec(n);
                for (int c = 1; c <= n; ++c) v(c - 1) = oracle.coeff(point, a, b, c);
                br.set(a, b, v);
            }
        return LieFrameGeometry(std::move(frame), std::move(br), {}, true);
    }

    const FrameSpace& frame() const { return frame_; }
    const ConstantBrackets& brackets() const { return brackets_; }
    const ParamSet& params() const { return params_; }
    int dim() const { return frame_.dim; }
    bool is_snapshot() const { return snapshot_; }

private:
    FrameSpace frame_;
    ConstantBrackets brackets_;
    ParamSet params_;
    bool snapshot_;
};

using GeometryPtr = std::shared_ptr<const LieFrameGeometry>;

/// Chevalley–Eilenberg differential of a frame-constant form:
/// dω(X_0,…,X_k) = Σ_{i<j} (−1)^{i+j} ω([X_i,X_j], X_0,…,X̂_i,…,X̂_j,…).
inline KForm ce_differential(const LieFrameGeometry& g, const KForm& w) {
    const int n = g.dim();
    KForm d(n, w.degree() + 1);
    if (w.degree() + 1 > n) return d;
    // Iterate over strictly increasing (k+1)-tuples.
    IndexTuple tuple(w.degree() + 1);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == static_cast<int>(tuple.size())) {
            Scalar acc(0);
            for (std::size_t i = 0; i < tuple.size(); ++i)
                for (std::size_t j = i + 1; j < tuple.size(); ++j) {
                    const Vec& br = g.brackets().bracket(tuple[i], tuple[j]);
                    if (br.size() == 0) continue;
                    IndexTuple rest;
                    for (std::size_t t = 0; t < tuple.size(); ++t)
                        if (t != i && t != j) rest.push_back(tuple[t]);
                    for (int c = 1; c <= n; ++c) {
                        if (br(c - 1).is_zero()) continue;
                        IndexTuple args;
                        args.push_back(c);
                        args.insert(args.end(), rest.begin(), rest.end());
                        Scalar v = w.coefficient(args);
                        if (v.is_zero()) continue;
                        int sgn = ((i + j) % 2 == 0) ? 1 : -1;
                        acc += Scalar(sgn) * br(c - 1) * v;
                    }
                }
            if (!acc.is_zero()) d.add(tuple, acc);
            return;
        }
        for (int v = start; v <= n; ++v) {
            tuple[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    rec(0, 1);
    return d;
}

/// Metric connection in the orthonormal frame: Γ_{ab}^c with
/// ∇_{e_a} e_b = Σ_c Γ_{ab}^c e_c and metricity Γ_{ab}^c = −Γ_{ac}^b.
class Connection {
public:
    Connection(GeometryPtr geom, std::vector<Mat> gamma)
        : geom_(std::move(geom)), gamma_(std::move(gamma)) {}

    const LieFrameGeometry& geometry() const { return *geom_; }
    GeometryPtr geometry_ptr() const { return geom_; }
    int dim() const { return geom_->dim(); }

    /// Matrix A_a with (A_a)_{cb} = Γ_{ab}^c, so ∇_{e_a} e_b = A_a · e_b.
    const Mat& matrix(int a) const { return gamma_[a - 1]; }
    Scalar gamma(int a, int b, int c) const { return gamma_[a - 1](c - 1, b - 1); }

    /// ∇_{e_a} v for a constant-coefficient vector.
    Vec derive(int a, const Vec& v) const { return gamma_[a - 1] * v; }

    bool metric() const {
        for (int a = 1; a <= dim(); ++a)
            if (!is_zero(Mat(gamma_[a - 1] + gamma_[a - 1].transpose()))) return false;
        return true;
    }

    /// Torsion as a covariant 3-tensor T(a,b,c) = Γ_{ab}^c − Γ_{ba}^c − C_{ab}^c.
    Trilinear torsion_tensor() const {
        Trilinear t(dim());
        for (int a = 1; a <= dim(); ++a)
            for (int b = a + 1; b <= dim(); ++b)
                for (int c = 1; c <= dim(); ++c)
                    t.set(a, b, c, gamma(a, b, c) - gamma(b, a, c) - geom_->brackets().coeff(a, b, c));
        return t;
    }
    /// Torsion as a 3-form; requires total skewness.
    KForm torsion_form() const {
        Trilinear t = torsion_tensor();
        if (!t.totally_skew()) throw std::runtime_error("torsion is not totally skew");
        return t.as_form();
    }

    /// Covariant derivative of a frame-constant k-form:
    /// (∇_a ω)(b_1,…,b_k) = −Σ_i ω(b_1,…,∇_a e_{b_i},…,b_k).
    KForm derive_form(int a, const KForm& w) const {
        KForm out(dim(), w.degree());
        for (auto& [idx, c] : w.coeffs()) {
            for (std::size_t slot = 0; slot < idx.size(); ++slot)
                for (int e = 1; e <= dim(); ++e) {
                    Scalar coeff = gamma(a, e, idx[slot]);
                    if (coeff.is_zero()) continue;
                    IndexTuple jdx = idx;
                    jdx[slot] = e;
                    out.add(std::move(jdx), -c * coeff);
                }
        }
        return out;
    }

    /// Covariant derivative of a frame-constant endomorphism: [A_a, φ].
    Mat derive_endo(int a, const Mat& phi) const {
        return gamma_[a - 1] * phi - phi * gamma_[a - 1];
    }

    /// Covariant derivative of a frame-constant covariant 2-tensor:
    /// (∇_a B)(x, y) = −B(∇_a x, y) − B(x, ∇_a y), i.e. −A_aᵀB − B A_a.
    Mat derive_bilinear(int a, const Mat& b) const {
        return Mat(-gamma_[a - 1].transpose() * b - b * gamma_[a - 1]);
    }

    /// ∇ of a frame-constant k-form is zero in every direction?
    bool parallel_form(const KForm& w) const {
        for (int a = 1; a <= dim(); ++a)
            if (!derive_form(a, w).is_zero()) return false;
        return true;
    }

private:
    GeometryPtr geom_;
    std::vector<Mat> gamma_; // A_a, indexed a-1
};

/// Koszul formula in an orthonormal left-invariant frame:
/// Γ_{ab}^c = ½ (C_{ab}^c − C_{bc}^a + C_{ca}^b).
inline Connection levi_civita(GeometryPtr geom) {
    const int n = geom->dim();
    const auto& C = geom->brackets();
    std::vector<Mat> gs;
    Scalar half = Scalar::rational(1, 2);
    for (int a = 1; a <= n; ++a) {
        Mat m = zero_mat(n);
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                m(c - 1, b - 1) = half * (C.coeff(a, b, c) - C.coeff(b, c, a) + C.coeff(c, a, b));
        gs.push_back(std::move(m));
    }
    return Connection(std::move(geom), std::move(gs));
}

/// Metric connection with prescribed totally skew torsion:
/// ∇_X Y = ∇^g_X Y + ½ T(X,Y,·).
inline Connection connection_from_torsion(GeometryPtr geom, const KForm& torsion) {
    if (torsion.degree() != 3) throw std::invalid_argument("torsion must be a 3-form");
    Connection lc = levi_civita(geom);
    const int n = geom->dim();
    Scalar half = Scalar::rational(1, 2);
    std::vector<Mat> gs;
    for (int a = 1; a <= n; ++a) {
        Mat m = lc.matrix(a);
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c) {
                Scalar t = torsion.coefficient({a, b, c});
                if (!t.is_zero()) m(c - 1, b - 1) += half * t;
            }
        gs.push_back(std::move(m));
    }
    return Connection(std::move(geom), std::move(gs));
}

/// (L_ξ g)(e_a, e_b) = −g([ξ, e_a], e_b) − g(e_a, [ξ, e_b]) for a
/// constant-coefficient field ξ and the constant orthonormal metric.
inline SymBilinear lie_derivative_metric(const LieFrameGeometry& g, const Vec& xi) {
    const int n = g.dim();
    SymBilinear out(n);
    std::vector<Vec> brax;
    for (int a = 1; a <= n; ++a) {
        Vec ea = zero_vec(n);
        ea(a - 1) = Scalar(1);
        brax.push_back(g.brackets().bracket(xi, ea));
    }
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) out.set(a, b, -brax[a - 1](b - 1) - brax[b - 1](a - 1));
    return out;
}

inline SymBilinear lie_derivative_metric(const LieFrameGeometry& g, int xi_index) {
    Vec xi = zero_vec(g.dim());
    xi(xi_index - 1) = Scalar(1);
    return lie_derivative_metric(g, xi);
}

/// (L_ξ φ) e_a = [ξ, φ e_a] − φ [ξ, e_a] for frame-constant φ.
inline Mat lie_derivative_endo(const LieFrameGeometry& g, const Vec& xi, const Mat& phi) {
    const int n = g.dim();
    Mat out = zero_mat(n);
    for (int a = 1; a <= n; ++a) {
        Vec ea = zero_vec(n);
        ea(a - 1) = Scalar(1);
        Vec v = g.brackets().bracket(xi, Vec(phi * ea)) - phi * g.brackets().bracket(xi, ea);
        out.col(a - 1) = v;
    }
    return out;
}

inline Mat lie_derivative_endo(const LieFrameGeometry& g, int xi_index, const Mat& phi) {
    Vec xi = zero_vec(g.dim());
    xi(xi_index - 1) = Scalar(1);
    return lie_derivative_endo(g, xi, phi);
}

/// Curvature operator R(e_a, e_b) = A_a A_b − A_b A_a − Σ_c C_{ab}^c A_c
/// (frame-constant Γ, so coefficient-derivative terms drop).
class Curvature {
public:
    explicit Curvature(const Connection& conn) : conn_(&conn) {
        if (conn.geometry().is_snapshot()) throw PointwiseUnsupported{};
        const int n = conn.dim();
        ops_.resize(n * n);
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
                Mat m = conn.matrix(a) * conn.matrix(b) - conn.matrix(b) * conn.matrix(a);
                for (int c = 1; c <= n; ++c) {
                    Scalar k = conn.geometry().brackets().coeff(a, b, c);
                    if (!k.is_zero()) m -= k * conn.matrix(c);
                }
                ops_[(a - 1) * n + (b - 1)] = std::move(m);
            }
    }

    /// R(e_a, e_b) e_c as a vector.
    Vec operator()(int a, int b, int c) const {
        return ops_[(a - 1) * conn_->dim() + (b - 1)].col(c - 1);
    }
    /// R(e_a, e_b, e_c, e_d) = g(R(e_a,e_b) e_c, e_d).
    Scalar operator()(int a, int b, int c, int d) const {
        return ops_[(a - 1) * conn_->dim() + (b - 1)](d - 1, c - 1);
    }

private:
    const Connection* conn_;
    std::vector<Mat> ops_;
};

/// Ric(X,Y) = Σ_c g(R(e_c, X) Y, e_c).
inline SymBilinear ricci(const Connection& conn) {
    Curvature R(conn);
    const int n = conn.dim();
    Mat out = zero_mat(n);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            Scalar acc(0);
            for (int c = 1; c <= n; ++c) acc += R(c, a, b, c);
            out(a - 1, b - 1) = acc;
        }
    return SymBilinear(out);
}

} // namespace a3c
