#pragma once

#include <Eigen/Core>

#include "a3c/scalar.hpp"

namespace Eigen {

template <>
struct NumTraits<a3c::Rational> : GenericNumTraits<a3c::Rational> {
    typedef a3c::Rational Real;
    typedef a3c::Rational NonInteger;
    typedef a3c::Rational Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 10,
        MulCost = 10
    };
    static inline Real epsilon() { return a3c::Rational(0); }
    static inline Real dummy_precision() { return a3c::Rational(0); }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<a3c::ScalarExpr> : GenericNumTraits<a3c::ScalarExpr> {
    typedef a3c::ScalarExpr Real;
    typedef a3c::ScalarExpr NonInteger;
    typedef a3c::ScalarExpr Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 100,
        MulCost = 100
    };
    static inline Real epsilon() { return a3c::ScalarExpr(0); }
    static inline Real dummy_precision() { return a3c::ScalarExpr(0); }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace a3c {

using Scalar = ScalarExpr;

using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Mat8 = Eigen::Matrix<Rational, 8, 8>;
using Vec8 = Eigen::Matrix<Rational, 8, 1>;

inline Mat zero_mat(int n) { return Mat::Constant(n, n, Scalar(0)); }
inline Vec zero_vec(int n) { return Vec::Constant(n, Scalar(0)); }
inline Mat identity_mat(int n) {
    Mat m = zero_mat(n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}
template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& expr) {
    auto m = expr.eval();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

} // namespace a3c
