// Copyright 2026 The qontrol authors
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

#ifndef QONTROL_RATIONAL_HPP
#define QONTROL_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qontrol {

/// Arbitrary-precision integer. All internal elimination state uses these.
using Int = mpz_class;

/// Exact rational coefficient type. Always kept canonical (gcd 1, positive
/// denominator) by GMP.
using Rational = mpq_class;

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string rational_to_string(const Rational& r);

/// Parses "p", "p/q", or a plain decimal such as "-0.25" (converted exactly).
/// Throws qontrol::Error on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double into a rational (denominator a power
/// of two). Throws qontrol::Error for NaN or infinity.
Rational rational_from_double(double v);

}  // namespace qontrol

#endif
