// Copyright 2026 The Telesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TELESIM_SCALAR_HPP_
#define TELESIM_SCALAR_HPP_

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace telesim {

// Decimal digits carried by the high-precision evaluator.
inline constexpr unsigned kWorkingDigits = 110;

using hp_real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<kWorkingDigits>,
    boost::multiprecision::et_off>;
using hp_complex = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<
        boost::multiprecision::cpp_bin_float<kWorkingDigits>>,
    boost::multiprecision::et_off>;

using cdouble = std::complex<double>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(line > 0 ? std::to_string(line) + ":" +
                                          std::to_string(column) + ": " + what
                                    : what),
        line_(line),
        column_(column),
        message_(what) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

template <class Cx>
struct scalar_traits;

template <>
struct scalar_traits<cdouble> {
  using real = double;
  static real pi() { return 3.14159265358979323846264338327950288; }
  static cdouble make(const real& re, const real& im) { return {re, im}; }
  static double to_double(const real& x) { return x; }
  static cdouble to_cdouble(const cdouble& z) { return z; }
  static real from_double(double x) { return x; }
};

template <>
struct scalar_traits<hp_complex> {
  using real = hp_real;
  static real pi() { return boost::math::constants::pi<hp_real>(); }
  static hp_complex make(const real& re, const real& im) {
    return hp_complex(re, im);
  }
  static double to_double(const real& x) { return x.convert_to<double>(); }
  static cdouble to_cdouble(const hp_complex& z) {
    return {real_part(z).convert_to<double>(),
            imag_part(z).convert_to<double>()};
  }
  static real from_double(double x) { return real(x); }

 private:
  static hp_real real_part(const hp_complex& z) { return boost::multiprecision::real(z); }
  static hp_real imag_part(const hp_complex& z) { return boost::multiprecision::imag(z); }
};

inline double normalize_zero(double x) { return x == 0.0 ? 0.0 : x; }

inline cdouble to_cdouble(const cdouble& z) { return z; }
inline cdouble to_cdouble(const hp_complex& z) {
  return scalar_traits<hp_complex>::to_cdouble(z);
}

inline double abs_double(const cdouble& z) { return std::abs(z); }
inline double abs_double(const hp_complex& z) {
  return abs(z).convert_to<double>();
}

}  // namespace telesim

#endif  // TELESIM_SCALAR_HPP_
