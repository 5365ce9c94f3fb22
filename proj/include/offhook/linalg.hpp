#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

namespace offhook {

template <class T>
using Vec5 = std::array<T, 5>;

using Mat5 = Eigen::Matrix<double, 5, 5>;
using EVec5 = Eigen::Matrix<double, 5, 1>;

inline EVec5 to_eigen(const Vec5<double>& v) {
    EVec5 e;
    for (int i = 0; i < 5; ++i) e(i) = v[i];
    return e;
}

inline Vec5<double> from_eigen(const EVec5& e) {
    return {e(0), e(1), e(2), e(3), e(4)};
}

inline double norm(const Vec5<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

inline bool all_finite(const Vec5<double>& v) {
    for (double c : v)
        if (!std::isfinite(c)) return false;
    return true;
}

template <class T>
Vec5<T> axpy(double a, const Vec5<T>& x, const Vec5<T>& y) {
    Vec5<T> r;
    for (int i = 0; i < 5; ++i) r[i] = a * x[i] + y[i];
    return r;
}

}  // namespace offhook
