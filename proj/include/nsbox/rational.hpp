// Copyright 2026 The nsbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace nsbox {

/// Arbitrary-precision rational. Always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses "num/den", a signed integer, or a decimal literal such as "-0.125" or "2.5e-3".
/// Throws ParseError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; integers are written with denominator 1.
std::string to_string(const Rational &value);

/// Best rational approximation of `value` with denominator at most `max_denominator`,
/// found by continued-fraction expansion (convergents plus the final semiconvergent).
Rational rationalize(double value, std::int64_t max_denominator = 1000000000);

/// num/den in canonical form (the two-argument mpq_class constructor does not reduce).
inline Rational ratio(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational &value) {
    return value.get_d();
}

}  // namespace nsbox
