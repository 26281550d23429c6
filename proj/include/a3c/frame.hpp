#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "a3c/eigen.hpp"

namespace a3c {

struct DegreeOverflow : std::runtime_error {
    DegreeOverflow() : std::runtime_error("wedge degree exceeds frame dimension") {}
};
struct DegreeMismatch : std::runtime_error {
    DegreeMismatch() : std::runtime_error("form degrees differ") {}
};

/// Ordered orthonormal frame with the orientation of the declared order
/// (volume form e_1 ∧ … ∧ e_dim).
struct FrameSpace {
    int dim = 0;
    std::vector<std::string> names;

    FrameSpace() = default;
    explicit FrameSpace(std::vector<std::string> frame_names)
        : dim(static_cast<int>(frame_names.size())), names(std::move(frame_names)) {}

    static FrameSpace standard(int n, const std::string& prefix = "e") {
        std::vector<std::string> ns;
        for (int i = 1; i <= n; ++i) ns.push_back(prefix + std::to_string(i));
        return FrameSpace(std::move(ns));
    }
};

/// Strictly increasing tuple of frame indices (1-based).
using IndexTuple = std::vector<int>;

namespace detail {

inline int perm_sign(const std::vector<int>& perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

/// Sort indices, returning the permutation sign; 0 on a repeated index.
inline int sort_sign(IndexTuple& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
        for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

} // namespace detail

/// Exterior form of fixed degree over a frame, stored sparsely on strictly
/// increasing index tuples. Coefficient convention: the basis monomial
/// e_I evaluates to 1 on the frame tuple I, so no 1/k! factors appear.
class KForm {
public:
    KForm() = default;
    KForm(int dim, int degree) : dim_(dim), deg_(degree) {}

    static KForm basis(int dim, IndexTuple idx) {
        KForm f(dim, static_cast<int>(idx.size()));
        f.add(std::move(idx), Scalar(1));
        return f;
    }
    /// Dual 1-form of frame vector a.
    static KForm dual(int dim, int a) { return basis(dim, {a}); }
    static KForm volume(int dim) {
        IndexTuple all;
        for (int i = 1; i <= dim; ++i) all.push_back(i);
        return basis(dim, std::move(all));
    }

    int dim() const { return dim_; }
    int degree() const { return deg_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<IndexTuple, Scalar>& coeffs() const { return coeffs_; }

    /// Accumulate c·e_idx (idx in any order; repeated indices contribute 0).
    void add(IndexTuple idx, const Scalar& c) {
        if (static_cast<int>(idx.size()) != deg_)
            throw std::invalid_argument("index tuple length != form degree");
        if (c.is_zero()) return;
        int sign = detail::sort_sign(idx);
        if (sign == 0) return;
        Scalar v = sign < 0 ? -c : c;
        auto it = coeffs_.find(idx);
        if (it == coeffs_.end()) {
            coeffs_.emplace(std::move(idx), std::move(v));
        } else {
            it->second += v;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    Scalar coefficient(IndexTuple idx) const {
        int sign = detail::sort_sign(idx);
        if (sign == 0) return Scalar(0);
        auto it = coeffs_.find(idx);
        if (it == coeffs_.end()) return Scalar(0);
        return sign < 0 ? -it->second : it->second;
    }

    friend KForm operator+(const KForm& a, const KForm& b) {
        if (a.deg_ != b.deg_) throw DegreeMismatch{};
        KForm r = a;
        for (auto& [i, c] : b.coeffs_) r.add(i, c);
        return r;
    }
    friend KForm operator-(const KForm& a, const KForm& b) {
        if (a.deg_ != b.deg_) throw DegreeMismatch{};
        KForm r = a;
        for (auto& [i, c] : b.coeffs_) r.add(i, -c);
        return r;
    }
    KForm operator-() const {
        KForm r(dim_, deg_);
        for (auto& [i, c] : coeffs_) r.coeffs_.emplace(i, -c);
        return r;
    }
    friend KForm operator*(const Scalar& s, const KForm& f) {
        KForm r(f.dim_, f.deg_);
        if (s.is_zero()) return r;
        for (auto& [i, c] : f.coeffs_) r.coeffs_.emplace(i, s * c);
        return r;
    }
    friend bool operator==(const KForm& a, const KForm& b) {
        return a.deg_ == b.deg_ && a.coeffs_ == b.coeffs_;
    }

    /// Evaluate on frame vectors given by index (1-based).
    Scalar eval(const IndexTuple& args) const { return coefficient(args); }

    /// Evaluate on arbitrary vectors (columns of scalar components).
    Scalar eval(std::span<const Vec> args) const {
        if (static_cast<int>(args.size()) != deg_)
            throw std::invalid_argument("argument count != form degree");
        Scalar acc(0);
        for (auto& [idx, c] : coeffs_) {
            // det of components picked at idx
            Scalar d = det_minor(args, idx);
            if (!d.is_zero()) acc += c * d;
        }
        return acc;
    }

    std::string str(const FrameSpace& fr) const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (auto& [idx, c] : coeffs_) {
            std::string mono;
            for (int i : idx) mono += (mono.empty() ? "" : "^") + fr.names.at(i - 1);
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")*" + mono;
        }
        return out;
    }

private:
    static Scalar det_minor(std::span<const Vec> args, const IndexTuple& idx) {
        const int k = static_cast<int>(idx.size());
        // Laplace expansion over permutations; k <= 4 in practice.
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i) perm[i] = i;
        Scalar acc(0);
        do {
            int sign = detail::perm_sign(perm);
            Scalar t(sign);
            for (int i = 0; i < k; ++i) t *= args[perm[i]](idx[i] - 1);
            acc += t;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return acc;
    }

    int dim_ = 0;
    int deg_ = 0;
    std::map<IndexTuple, Scalar> coeffs_;
};

inline KForm wedge(const KForm& a, const KForm& b) {
    if (a.degree() + b.degree() > a.dim()) throw DegreeOverflow{};
    KForm r(a.dim(), a.degree() + b.degree());
    for (auto& [ia, ca] : a.coeffs())
        for (auto& [ib, cb] : b.coeffs()) {
            IndexTuple idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            r.add(std::move(idx), ca * cb);
        }
    return r;
}

/// Interior product with a frame vector (1-based index).
inline KForm contract(int a, const KForm& f) {
    if (f.degree() < 1) throw std::invalid_argument("contract needs degree >= 1");
    KForm r(f.dim(), f.degree() - 1);
    for (auto& [idx, c] : f.coeffs())
        for (std::size_t pos = 0; pos < idx.size(); ++pos)
            if (idx[pos] == a) {
                IndexTuple rest;
                for (std::size_t j = 0; j < idx.size(); ++j)
                    if (j != pos) rest.push_back(idx[j]);
                r.add(std::move(rest), (pos % 2 == 0) ? c : -c);
            }
    return r;
}

/// Interior product with a general vector.
inline KForm contract(const Vec& v, const KForm& f) {
    KForm r(f.dim(), f.degree() - 1);
    for (int a = 1; a <= f.dim(); ++a) {
        if (v(a - 1).is_zero()) continue;
        KForm part = contract(a, f);
        for (auto& [idx, c] : part.coeffs()) r.add(idx, v(a - 1) * c);
    }
    return r;
}

/// Hodge star for the orthonormal frame with orientation e_1∧…∧e_dim:
/// *(e_I) = sign · e_{I^c} with e_I ∧ *(e_I) = volume.
inline KForm hodge_star(const KForm& f) {
    const int n = f.dim();
    KForm r(n, n - f.degree());
    for (auto& [idx, c] : f.coeffs()) {
        IndexTuple comp;
        std::size_t p = 0;
        for (int i = 1; i <= n; ++i) {
            if (p < idx.size() && idx[p] == i) {
                ++p;
                continue;
            }
            comp.push_back(i);
        }
        // sign of the permutation (idx, comp) relative to (1..n)
        IndexTuple whole = idx;
        whole.insert(whole.end(), comp.begin(), comp.end());
        int sign = detail::sort_sign(whole);
        r.add(std::move(comp), sign < 0 ? -c : c);
    }
    return r;
}

/// Inner product in which distinct sorted basis monomials are orthonormal.
inline Scalar form_inner(const KForm& a, const KForm& b) {
    if (a.degree() != b.degree()) throw DegreeMismatch{};
    Scalar acc(0);
    for (auto& [idx, c] : a.coeffs()) {
        auto it = b.coeffs().find(idx);
        if (it != b.coeffs().end()) acc += c * it->second;
    }
    return acc;
}

/// Pullback along an endomorphism: (M^*ω)(X_1,…,X_k) = ω(M X_1,…,M X_k).
inline KForm pullback(const Mat& m, const KForm& f) {
    KForm r(f.dim(), f.degree());
    for (auto& [idx, c] : f.coeffs()) {
        // M^* e^i = Σ_a M(i-1, a-1) e^a (row i of M as a 1-form)
        KForm term(f.dim(), 0);
        bool started = false;
        for (int i : idx) {
            KForm row(f.dim(), 1);
            for (int a = 1; a <= f.dim(); ++a) row.add({a}, m(i - 1, a - 1));
            term = started ? wedge(term, row) : row;
            started = true;
        }
        for (auto& [ti, tc] : term.coeffs()) r.add(ti, c * tc);
    }
    return r;
}

/// The sign-twisted pullback d^φΦ(X,Y,Z) := −dΦ(φX, φY, φZ) of a 3-form.
inline KForm phi_twist(const KForm& dPhi, const Mat& phi) {
    if (dPhi.degree() != 3) throw std::invalid_argument("phi_twist expects a 3-form");
    return -pullback(phi, dPhi);
}

/// Covariant 3-tensor antisymmetric in its first two slots, frame-indexed.
class Trilinear {
public:
    Trilinear() = default;
    explicit Trilinear(int dim) : dim_(dim) {}

    int dim() const { return dim_; }

    void set(int a, int b, int c, const Scalar& v) {
        if (a == b) {
            if (!v.is_zero()) throw std::invalid_argument("antisymmetric slot pair");
            return;
        }
        if (a < b)
            store(a, b, c, v);
        else
            store(b, a, c, -v);
    }
    Scalar get(int a, int b, int c) const {
        if (a == b) return Scalar(0);
        bool flip = a > b;
        auto it = vals_.find({std::min(a, b), std::max(a, b), c});
        if (it == vals_.end()) return Scalar(0);
        return flip ? -it->second : it->second;
    }
    bool is_zero() const { return vals_.empty(); }

    /// Totally skew over all index triples?
    bool totally_skew() const {
        for (auto& [k, v] : vals_) {
            auto [a, b, c] = k;
            if (a == c || b == c) {
                if (!v.is_zero()) return false;
                continue;
            }
            if (get(a, b, c) != -get(a, c, b)) return false;
        }
        // Also check entries that exist only in swapped position.
        for (int a = 1; a <= dim_; ++a)
            for (int b = a + 1; b <= dim_; ++b)
                for (int c = 1; c <= dim_; ++c)
                    if (get(a, b, c) != -get(a, c, b)) return false;
        return true;
    }

    /// Restrict the skewness test to indices > 3 (the horizontal block).
    bool skew_on_horizontal() const {
        for (int a = 4; a <= dim_; ++a)
            for (int b = a + 1; b <= dim_; ++b)
                for (int c = 4; c <= dim_; ++c)
                    if (get(a, b, c) != -get(a, c, b)) return false;
        return true;
    }

    /// Interpret as a 3-form; requires total skewness.
    KForm as_form() const {
        KForm f(dim_, 3);
        for (int a = 1; a <= dim_; ++a)
            for (int b = a + 1; b <= dim_; ++b)
                for (int c = b + 1; c <= dim_; ++c) f.add({a, b, c}, get(a, b, c));
        return f;
    }

    friend Trilinear operator-(const Trilinear& x, const Trilinear& y) {
        Trilinear r(x.dim_);
        for (int a = 1; a <= x.dim_; ++a)
            for (int b = a + 1; b <= x.dim_; ++b)
                for (int c = 1; c <= x.dim_; ++c) {
                    Scalar v = x.get(a, b, c) - y.get(a, b, c);
                    if (!v.is_zero()) r.store(a, b, c, v);
                }
        return r;
    }

private:
    void store(int a, int b, int c, const Scalar& v) {
        if (v.is_zero()) {
            vals_.erase({a, b, c});
            return;
        }
        vals_[{a, b, c}] = v;
    }

    int dim_ = 0;
    std::map<std::array<int, 3>, Scalar> vals_;
};

/// Symmetric covariant 2-tensor; symmetry enforced at construction.
class SymBilinear {
public:
    SymBilinear() = default;
    explicit SymBilinear(int dim) : m_(zero_mat(dim)) {}
    explicit SymBilinear(const Mat& m) : m_(m) {
        if (!a3c::is_zero(Mat(m - m.transpose())))
            throw std::invalid_argument("matrix is not symmetric");
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Mat& matrix() const { return m_; }
    Scalar operator()(int a, int b) const { return m_(a - 1, b - 1); }
    void set(int a, int b, const Scalar& v) {
        m_(a - 1, b - 1) = v;
        m_(b - 1, a - 1) = v;
    }
    bool is_zero() const { return a3c::is_zero(m_); }
    friend bool operator==(const SymBilinear& x, const SymBilinear& y) {
        return a3c::is_zero(Mat(x.m_ - y.m_));
    }

private:
    Mat m_;
};

} // namespace a3c
