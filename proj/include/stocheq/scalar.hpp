#ifndef STOCHEQ_SCALAR_HPP
#define STOCHEQ_SCALAR_HPP

// Scalar modes.
//
// Every computation in this library runs in exactly one of two modes, chosen
// at compile time through the element type:
//
//   Rational  exact, unbounded numerator/denominator, always in lowest terms
//             with a positive denominator (0 is 0/1)
//   double    IEEE binary64
//
// ScalarTraits<T> collects the handful of mode-dependent decisions (zero
// tests, slack on sign checks, printing) so the algorithms themselves can be
// written once.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <cstdio>
#include <string>
#include <type_traits>

namespace stocheq {

// Expression templates off: values are plain and safe to bind with auto.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

enum class Mode { Exact, Float };

inline const char* to_string(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr Mode mode = Mode::Exact;
    static constexpr bool exact = true;

    static bool is_zero(const Rational& x) { return x == 0; }
    static bool is_nonnegative(const Rational& x) { return x >= 0; }
    static bool is_nonpositive(const Rational& x) { return x <= 0; }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static double to_double(const Rational& x) { return static_cast<double>(x); }

    static std::string to_string(const Rational& x) {
        const BigInt& den = boost::multiprecision::denominator(x);
        if (den == 1) return boost::multiprecision::numerator(x).str();
        return boost::multiprecision::numerator(x).str() + "/" + den.str();
    }
};

// Integers are an exact ring rather than a third mode: they back the
// degree/adjacency matrices of graph walks and the Bareiss kernels.
template <>
struct ScalarTraits<BigInt> {
    static constexpr Mode mode = Mode::Exact;
    static constexpr bool exact = true;

    static bool is_zero(const BigInt& x) { return x == 0; }
    static bool is_nonnegative(const BigInt& x) { return x >= 0; }
    static bool is_nonpositive(const BigInt& x) { return x <= 0; }
    static BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
    static double to_double(const BigInt& x) { return static_cast<double>(x); }
    static std::string to_string(const BigInt& x) { return x.str(); }
};

template <>
struct ScalarTraits<double> {
    static constexpr Mode mode = Mode::Float;
    static constexpr bool exact = false;

    // Sign checks on float data allow this much slack.
    static constexpr double sign_slack = 1e-12;

    static bool is_zero(double x) { return x == 0.0; }
    static bool is_nonnegative(double x) { return x >= -sign_slack; }
    static bool is_nonpositive(double x) { return x <= sign_slack; }
    static double abs(double x) { return std::fabs(x); }
    static double to_double(double x) { return x; }

    static std::string to_string(double x, int digits = 6) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.*g", digits, x);
        return buf;
    }
};

template <typename T>
concept Scalar = requires { ScalarTraits<T>::mode; };

template <Scalar T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <Scalar T>
std::string format_scalar(const T& x) {
    return ScalarTraits<T>::to_string(x);
}

}  // namespace stocheq

#endif  // STOCHEQ_SCALAR_HPP
