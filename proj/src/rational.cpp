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

#include "nsbox/rational.hpp"

#include <cctype>
#include <cmath>
#include <regex>

#include "nsbox/errors.hpp"

namespace nsbox {

namespace {

bool is_integer_literal(std::string_view s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        ++i;
    }
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    std::string body(s);
    if (!body.empty() && body[0] == '+') {
        body.erase(0, 1);
    }
    return mpz_class(body, 10);
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    if (s.empty()) {
        throw ParseError("empty rational literal");
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
            throw ParseError("bad rational literal '" + std::string(text) + "'");
        }
        mpz_class d = parse_integer(den);
        if (d == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        Rational r(parse_integer(num), d);
        r.canonicalize();
        return r;
    }

    static const std::regex decimal(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
    std::cmatch m;
    if (!std::regex_match(s.begin(), s.end(), m, decimal) || (m[2].length() == 0 && m[3].length() == 0)) {
        throw ParseError("bad rational literal '" + std::string(text) + "'");
    }
    std::string digits = m[2].str() + m[3].str();
    long exponent = -static_cast<long>(m[3].length());
    if (m[4].matched) {
        exponent += std::stol(m[4].str());
    }
    mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
    if (m[1].str() == "-") {
        mantissa = -mantissa;
    }
    Rational r;
    if (exponent >= 0) {
        r = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
    } else {
        r = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
    }
    r.canonicalize();
    return r;
}

std::string to_string(const Rational &value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational rationalize(double value, std::int64_t max_denominator) {
    if (!std::isfinite(value)) {
        throw ArgumentError("cannot rationalize a non-finite value");
    }
    if (max_denominator < 1) {
        throw ArgumentError("denominator cap must be positive");
    }
    const bool negative = value < 0;
    long double x = std::fabs(static_cast<long double>(value));
    const long double target = x;

    mpz_class h_prev = 1, h_prev2 = 0;
    mpz_class k_prev = 0, k_prev2 = 1;
    const mpz_class cap = mpz_class(std::to_string(max_denominator), 10);

    for (int iter = 0; iter < 64; ++iter) {
        long double a_ld = std::floor(x);
        mpz_class a(std::to_string(static_cast<long long>(a_ld)), 10);
        mpz_class h = a * h_prev + h_prev2;
        mpz_class k = a * k_prev + k_prev2;
        if (k > cap) {
            // Largest admissible semiconvergent; keep it only if it beats the last convergent.
            mpz_class t = (cap - k_prev2) / k_prev;
            mpz_class hs = t * h_prev + h_prev2;
            mpz_class ks = t * k_prev + k_prev2;
            if (ks > 0 && k_prev > 0) {
                Rational semi(hs, ks), conv(h_prev, k_prev);
                Rational tq(static_cast<double>(target));
                if (abs(semi - tq) < abs(conv - tq)) {
                    h_prev = hs;
                    k_prev = ks;
                }
            }
            break;
        }
        h_prev2 = h_prev;
        k_prev2 = k_prev;
        h_prev = h;
        k_prev = k;
        long double frac = x - a_ld;
        if (frac <= 0 || Rational(h, k) == Rational(static_cast<double>(target))) {
            break;
        }
        x = 1.0L / frac;
        if (!std::isfinite(static_cast<double>(x)) || x > 1e18L) {
            break;
        }
    }
    if (k_prev == 0) {
        return Rational(0);
    }
    Rational r(negative ? mpz_class(-h_prev) : h_prev, k_prev);
    r.canonicalize();
    return r;
}

}  // namespace nsbox
