#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "a3c/rational.hpp"

namespace a3c {

namespace detail {

/// Process-wide, append-only interner for parameter names. Values built from
/// it stay immutable and freely shareable across threads.
class SymbolTable {
public:
    static SymbolTable& instance() {
        static SymbolTable t;
        return t;
    }
    std::uint32_t id_of(const std::string& name) {
        {
            std::shared_lock lk(mu_);
            auto it = ids_.find(name);
            if (it != ids_.end()) return it->second;
        }
        std::unique_lock lk(mu_);
        auto [it, fresh] = ids_.emplace(name, static_cast<std::uint32_t>(names_.size()));
        if (fresh) names_.push_back(name);
        return it->second;
    }
    std::string name_of(std::uint32_t id) const {
        std::shared_lock lk(mu_);
        return names_.at(id);
    }

private:
    mutable std::shared_mutex mu_;
    std::map<std::string, std::uint32_t> ids_;
    std::vector<std::string> names_;
};

} // namespace detail

/// Power product of interned variables, exponents > 0, sorted by variable id.
class Monomial {
public:
    using Factor = std::pair<std::uint32_t, std::uint32_t>; // (var id, exponent)

    Monomial() = default;
    static Monomial var(std::uint32_t id, std::uint32_t exp = 1) {
        Monomial m;
        if (exp > 0) m.f_.push_back({id, exp});
        return m;
    }

    bool is_unit() const { return f_.empty(); }
    std::uint32_t degree() const {
        std::uint32_t d = 0;
        for (auto& [v, e] : f_) d += e;
        return d;
    }
    const std::vector<Factor>& factors() const { return f_; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        auto ia = a.f_.begin(), ib = b.f_.begin();
        while (ia != a.f_.end() || ib != b.f_.end()) {
            if (ib == b.f_.end() || (ia != a.f_.end() && ia->first < ib->first))
                m.f_.push_back(*ia++);
            else if (ia == a.f_.end() || ib->first < ia->first)
                m.f_.push_back(*ib++);
            else {
                m.f_.push_back({ia->first, ia->second + ib->second});
                ++ia, ++ib;
            }
        }
        return m;
    }

    /// a / b when b divides a.
    static std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
        Monomial m;
        auto ia = a.f_.begin();
        for (auto& [v, e] : b.f_) {
            while (ia != a.f_.end() && ia->first < v) m.f_.push_back(*ia++);
            if (ia == a.f_.end() || ia->first != v || ia->second < e) return std::nullopt;
            if (ia->second > e) m.f_.push_back({v, ia->second - e});
            ++ia;
        }
        while (ia != a.f_.end()) m.f_.push_back(*ia++);
        return m;
    }

    std::uint32_t exponent_of(std::uint32_t id) const {
        for (auto& [v, e] : f_)
            if (v == id) return e;
        return 0;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }

    /// Graded lexicographic order: total degree first, then lex with earlier
    /// variable ids taking priority (higher exponent of the earliest
    /// differing variable wins).
    friend bool operator<(const Monomial& a, const Monomial& b) {
        auto da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        auto ia = a.f_.begin(), ib = b.f_.begin();
        while (ia != a.f_.end() && ib != b.f_.end()) {
            if (ia->first != ib->first) return ia->first > ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
            ++ia, ++ib;
        }
        return false; // equal degree and all factors matched: equal monomials
    }

private:
    std::vector<Factor> f_;
};

/// Sparse multivariate polynomial with rational coefficients, terms ordered
/// by the fixed graded-lex monomial order. Zero coefficients never stored.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    Polynomial() = default;
    Polynomial(const Rational& c) {
        if (!c.is_zero()) terms_[Monomial{}] = c;
    }
    Polynomial(std::int64_t c) : Polynomial(Rational(c)) {}
    static Polynomial variable(const std::string& name) {
        Polynomial p;
        p.terms_[Monomial::var(detail::SymbolTable::instance().id_of(name))] = Rational(1);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        return terms_.begin()->second;
    }
    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }
    /// Leading term in the graded-lex order.
    std::pair<Monomial, Rational> leading() const { return *terms_.rbegin(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Polynomial scaled(const Rational& c) const {
        Polynomial r;
        if (c.is_zero()) return r;
        for (auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }

    /// All variable ids occurring in the polynomial.
    std::vector<std::uint32_t> variables() const {
        std::vector<std::uint32_t> vs;
        for (auto& [m, c] : terms_)
            for (auto& [v, e] : m.factors()) vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    /// Exact quotient a / b, or nullopt when b does not divide a.
    static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

    /// gcd, normalized with positive leading coefficient; gcd(0,0)=0.
    static Polynomial gcd(const Polynomial& a, const Polynomial& b);

private:
    Terms terms_;
};

namespace detail {

/// View of p as a univariate polynomial in variable x with Polynomial coefficients.
inline std::map<std::uint32_t, Polynomial> coeffs_in(const Polynomial& p, std::uint32_t x) {
    std::map<std::uint32_t, Polynomial> out;
    for (auto& [m, c] : p.terms()) {
        std::uint32_t e = m.exponent_of(x);
        Monomial rest;
        for (auto& [v, k] : m.factors())
            if (v != x) rest = rest * Monomial::var(v, k);
        out[e].add_term(rest, c);
    }
    return out;
}

inline std::uint32_t degree_in(const std::map<std::uint32_t, Polynomial>& cs) {
    return cs.empty() ? 0 : cs.rbegin()->first;
}

} // namespace detail

/// Rational content: gcd of all coefficients (0 for the zero polynomial).
inline Rational content(const Polynomial& p) {
    Rational g(0);
    for (auto& [m, c] : p.terms()) g = Rational::gcd(g, c);
    return g;
}

inline std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) return std::nullopt;
    Polynomial rem = a, quo;
    auto [lm, lc] = b.leading();
    while (!rem.is_zero()) {
        auto [rm, rc] = rem.leading();
        auto q = Monomial::divide(rm, lm);
        if (!q) return std::nullopt;
        Polynomial t;
        t.add_term(*q, rc / lc);
        quo = quo + t;
        rem = rem - t * b;
    }
    return quo;
}

inline Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
    auto normalize = [](Polynomial p) {
        if (p.is_zero()) return p;
        if (p.leading().second.sign() < 0) p = -p;
        return p;
    };
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    if (a.is_constant() || b.is_constant())
        return Polynomial(Rational::gcd(content(a), content(b)));

    auto va = a.variables();
    std::uint32_t x = va.front();

    auto ca = detail::coeffs_in(a, x);
    auto cb = detail::coeffs_in(b, x);
    if (cb.size() == 1 && cb.begin()->first == 0) {
        // b does not involve x: gcd divides every x-coefficient of a.
        Polynomial g = cb.begin()->second;
        for (auto& [e, c] : ca) g = gcd(g, c);
        return normalize(g);
    }
    if (ca.size() == 1 && ca.begin()->first == 0) {
        Polynomial g = ca.begin()->second;
        for (auto& [e, c] : cb) g = gcd(g, c);
        return normalize(g);
    }

    // Primitive Euclidean algorithm in x over the remaining variables.
    auto content_x = [](const std::map<std::uint32_t, Polynomial>& cs) {
        Polynomial g;
        for (auto& [e, c] : cs) g = gcd(g, c);
        return g;
    };
    auto primitive = [&](Polynomial p) {
        auto cs = detail::coeffs_in(p, x);
        Polynomial cont = content_x(cs);
        if (cont.is_zero()) return p;
        return *divide_exact(p, cont);
    };
    Polynomial cont_a = content_x(ca), cont_b = content_x(cb);
    Polynomial u = *divide_exact(a, cont_a);
    Polynomial v = *divide_exact(b, cont_b);

    // Pseudo-remainder loop.
    while (true) {
        auto cu = detail::coeffs_in(u, x);
        auto cv = detail::coeffs_in(v, x);
        if (cv.empty()) break;
        std::uint32_t du = detail::degree_in(cu), dv = detail::degree_in(cv);
        if (du < dv) {
            std::swap(u, v);
            continue;
        }
        // prem(u, v): lc(v)^(du-dv+1) * u mod v.
        Polynomial lcv = cv.rbegin()->second;
        Polynomial r = u;
        for (std::uint32_t i = 0; i <= du - dv + 1; ++i) {
            auto cr = detail::coeffs_in(r, x);
            if (cr.empty() || detail::degree_in(cr) < dv) break;
            std::uint32_t dr = detail::degree_in(cr);
            Polynomial lcr = cr.rbegin()->second;
            Polynomial xshift;
            xshift.add_term(Monomial::var(x, dr - dv), Rational(1));
            if (dr == dv) xshift = Polynomial(Rational(1));
            r = r * lcv - v * lcr * xshift;
        }
        u = v;
        v = r.is_zero() ? r : primitive(r);
    }
    Polynomial g = primitive(u) * gcd(cont_a, cont_b);
    return normalize(g);
}

} // namespace a3c
