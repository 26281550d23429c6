#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "a3c/polynomial.hpp"

namespace a3c {

/// A declared parameter symbol. Positivity is advisory: it gates Assignment
/// validation and sign queries, never simplification. By convention the
/// engine uses alpha/delta for the Sasaki-family coefficients, beta for the
/// Reeb Killing function, gamma for the torsion parameter function, lambda
/// for the Heisenberg bracket scale, s/c for deformation scales, and rho for
/// the radial cone coordinate.
struct Param {
    std::string name;
    bool positive = false;
};

struct DuplicateParam : std::runtime_error {
    explicit DuplicateParam(const std::string& n) : std::runtime_error("duplicate parameter: " + n) {}
};

/// The set of parameters a geometry or document is allowed to mention.
class ParamSet {
public:
    ParamSet() = default;
    ParamSet(std::initializer_list<Param> ps) {
        for (auto& p : ps) declare(p);
    }
    void declare(const Param& p) {
        for (auto& q : params_)
            if (q.name == p.name) throw DuplicateParam(p.name);
        params_.push_back(p);
    }
    const std::vector<Param>& params() const { return params_; }
    const Param* find(const std::string& name) const {
        for (auto& p : params_)
            if (p.name == name) return &p;
        return nullptr;
    }
    bool is_positive(const std::string& name) const {
        auto* p = find(name);
        return p && p->positive;
    }

private:
    std::vector<Param> params_;
};

struct DivisionByZeroExpr : std::runtime_error {
    DivisionByZeroExpr() : std::runtime_error("division by identically zero expression") {}
};
struct UnboundParam : std::runtime_error {
    explicit UnboundParam(const std::string& n) : std::runtime_error("unbound parameter: " + n) {}
};
struct DenominatorVanishes : std::runtime_error {
    DenominatorVanishes() : std::runtime_error("denominator vanishes at assignment") {}
};

/// Element of the rational-function field Q(params): a fraction of sparse
/// polynomials kept in canonical form (gcd 1, monic denominator in the
/// graded-lex leading-term convention). Equality of canonical forms decides
/// mathematical equality.
class ScalarExpr {
public:
    ScalarExpr() : num_(), den_(Rational(1)) {}
    ScalarExpr(const Rational& c) : num_(c), den_(Rational(1)) {}
    ScalarExpr(std::int64_t c) : num_(Rational(c)), den_(Rational(1)) {}
    ScalarExpr(const Polynomial& p) : num_(p), den_(Rational(1)) {}
    ScalarExpr(const Polynomial& n, const Polynomial& d) : num_(n), den_(d) { canonicalize(); }

    static ScalarExpr param(const std::string& name) { return ScalarExpr(Polynomial::variable(name)); }
    static ScalarExpr rational(std::int64_t n, std::int64_t d) { return ScalarExpr(Rational(n, d)); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
        return ScalarExpr(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
        return ScalarExpr(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
        return ScalarExpr(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
        if (b.is_zero()) throw DivisionByZeroExpr{};
        return ScalarExpr(a.num_ * b.den_, a.den_ * b.num_);
    }
    ScalarExpr operator-() const {
        ScalarExpr r = *this;
        r.num_ = -r.num_;
        return r;
    }
    ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }
    ScalarExpr& operator-=(const ScalarExpr& o) { return *this = *this - o; }
    ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }
    ScalarExpr& operator/=(const ScalarExpr& o) { return *this = *this / o; }

    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }

    ScalarExpr pow(unsigned e) const {
        ScalarExpr r(1);
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }

    /// Replace one parameter by an expression.
    ScalarExpr substitute(const std::string& name, const ScalarExpr& value) const {
        auto id = detail::SymbolTable::instance().id_of(name);
        auto sub_poly = [&](const Polynomial& p) {
            ScalarExpr acc(0);
            for (auto& [m, c] : p.terms()) {
                ScalarExpr term{Rational(c)};
                for (auto& [v, e] : m.factors()) {
                    ScalarExpr base = (v == id) ? value : ScalarExpr(Polynomial::variable(
                                                              detail::SymbolTable::instance().name_of(v)));
                    term *= base.pow(e);
                }
                acc += term;
            }
            return acc;
        };
        return sub_poly(num_) / sub_poly(den_);
    }

    /// Canonical text form; terms printed low degree first.
    std::string str() const {
        if (den_ == Polynomial(Rational(1))) return poly_str(num_);
        return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
    }

    /// All parameter names occurring in the expression.
    std::vector<std::string> parameters() const {
        std::vector<std::string> out;
        for (auto id : num_.variables()) out.push_back(detail::SymbolTable::instance().name_of(id));
        for (auto id : den_.variables()) {
            auto n = detail::SymbolTable::instance().name_of(id);
            if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static std::string poly_str(const Polynomial& p) {
        if (p.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        // Stable, interner-independent print order: by (degree, variable names).
        std::vector<std::pair<std::string, Rational>> printed;
        for (auto& [m, c] : p.terms()) {
            std::string key;
            std::vector<std::string> names;
            for (auto& [v, e] : m.factors()) {
                auto n = detail::SymbolTable::instance().name_of(v);
                for (std::uint32_t i = 0; i < e; ++i) names.push_back(n);
            }
            std::sort(names.begin(), names.end());
            for (auto& n : names) key += (key.empty() ? "" : "*") + n;
            printed.push_back({key, c});
        }
        std::sort(printed.begin(), printed.end(), [](auto& a, auto& b) {
            auto ca = std::count(a.first.begin(), a.first.end(), '*');
            auto cb = std::count(b.first.begin(), b.first.end(), '*');
            if (a.first.empty() != b.first.empty()) return a.first.empty();
            if (ca != cb) return ca < cb;
            return a.first < b.first;
        });
        for (auto& [key, c] : printed) {
            Rational a = c.abs();
            if (!first) os << (c.sign() < 0 ? " - " : " + ");
            else if (c.sign() < 0) os << "-";
            first = false;
            if (key.empty()) {
                os << a.str();
            } else {
                if (!a.is_one()) os << a.str() << "*";
                os << key;
            }
        }
        return os.str();
    }

    void canonicalize() {
        if (den_.is_zero()) throw DivisionByZeroExpr{};
        if (num_.is_zero()) {
            den_ = Polynomial(Rational(1));
            return;
        }
        Polynomial g = Polynomial::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *Polynomial::divide_exact(num_, g);
            den_ = *Polynomial::divide_exact(den_, g);
        }
        Rational lead = den_.leading().second;
        num_ = num_.scaled(lead.inverse());
        den_ = den_.scaled(lead.inverse());
    }

    Polynomial num_;
    Polynomial den_;
};

/// Exact parameter values for evaluation.
class Assignment {
public:
    Assignment() = default;
    Assignment(std::initializer_list<std::pair<std::string, Rational>> vals) {
        for (auto& [n, v] : vals) set(n, v);
    }
    void set(const std::string& name, const Rational& v) { values_[name] = v; }
    const Rational* find(const std::string& name) const {
        auto it = values_.find(name);
        return it == values_.end() ? nullptr : &it->second;
    }
    const std::map<std::string, Rational>& values() const { return values_; }

    /// Positivity declarations are enforced here and nowhere else.
    bool respects(const ParamSet& ps, std::string* why = nullptr) const {
        for (auto& [n, v] : values_) {
            auto* p = ps.find(n);
            if (!p) {
                if (why) *why = "unknown parameter " + n;
                return false;
            }
            if (p->positive && v.sign() <= 0) {
                if (why) *why = "parameter " + n + " must be positive";
                return false;
            }
        }
        return true;
    }

private:
    std::map<std::string, Rational> values_;
};

inline Rational eval(const Polynomial& p, const Assignment& sigma) {
    Rational acc(0);
    for (auto& [m, c] : p.terms()) {
        Rational t = c;
        for (auto& [v, e] : m.factors()) {
            auto name = detail::SymbolTable::instance().name_of(v);
            const Rational* val = sigma.find(name);
            if (!val) throw UnboundParam(name);
            for (std::uint32_t i = 0; i < e; ++i) t *= *val;
        }
        acc += t;
    }
    return acc;
}

/// Exact evaluation of a scalar expression at an assignment.
inline Rational eval(const ScalarExpr& e, const Assignment& sigma) {
    Rational d = eval(e.den(), sigma);
    if (d.is_zero()) throw DenominatorVanishes{};
    return eval(e.num(), sigma) / d;
}

/// Decide the sign of an expression using declared positivity: works when the
/// expression is (rational)·(monomial in positive parameters) on both levels.
/// Returns nullopt when the sign is not determined by the declarations.
inline std::optional<int> sign_of(const ScalarExpr& e, const ParamSet& ps) {
    if (e.is_zero()) return 0;
    auto monomial_sign = [&](const Polynomial& p) -> std::optional<int> {
        if (p.terms().size() != 1) return std::nullopt;
        auto& [m, c] = *p.terms().begin();
        for (auto& [v, ex] : m.factors())
            if (!ps.is_positive(detail::SymbolTable::instance().name_of(v))) return std::nullopt;
        return c.sign();
    };
    auto sn = monomial_sign(e.num());
    auto sd = monomial_sign(e.den());
    if (!sn || !sd) return std::nullopt;
    return *sn * *sd;
}

} // namespace a3c
