#pragma once

#include <cmath>

namespace offhook {

// Forward-mode scalar with one infinitesimal part. Nests: Dual<Dual<...>>
// gives exact higher-order directional derivatives without step-size noise.
template <class T>
struct Dual {
    T v{};  // value
    T d{};  // derivative part

    constexpr Dual() = default;
    constexpr Dual(double value) : v(value), d() {}  // NOLINT(google-explicit-constructor)
    constexpr Dual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}
};

template <class T> constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }

template <class T> constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

template <class T> constexpr Dual<T> operator+(const Dual<T>& a, double b) { return {a.v + b, a.d}; }
template <class T> constexpr Dual<T> operator+(double a, const Dual<T>& b) { return {a + b.v, b.d}; }
template <class T> constexpr Dual<T> operator-(const Dual<T>& a, double b) { return {a.v - b, a.d}; }
template <class T> constexpr Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }
template <class T> constexpr Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T> constexpr Dual<T> operator*(double a, const Dual<T>& b) { return {a * b.v, a * b.d}; }
template <class T> constexpr Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T> constexpr Dual<T> operator/(double a, const Dual<T>& b) {
    return {a / b.v, (-a * b.d) / (b.v * b.v)};
}

using std::cos;
using std::sin;

template <class T> Dual<T> sin(const Dual<T>& a) { return {sin(a.v), a.d * cos(a.v)}; }
template <class T> Dual<T> cos(const Dual<T>& a) { return {cos(a.v), -a.d * sin(a.v)}; }

/// Value part of an arbitrarily nested dual, down to double.
inline double value_of(double x) { return x; }
template <class T> double value_of(const Dual<T>& x) { return value_of(x.v); }

template <int K> struct NestedDualT { using type = Dual<typename NestedDualT<K - 1>::type>; };
template <> struct NestedDualT<0> { using type = double; };

/// Scalar type with K nested infinitesimal parts; NestedDual<0> = double.
template <int K> using NestedDual = typename NestedDualT<K>::type;

template <class T> struct nest_level { static constexpr int value = 0; };
template <class T> struct nest_level<Dual<T>> { static constexpr int value = 1 + nest_level<T>::value; };
template <class T> inline constexpr int nest_level_v = nest_level<T>::value;

}  // namespace offhook
