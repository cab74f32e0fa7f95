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

#include "qontrol/rational.hpp"

#include <cctype>
#include <cmath>

#include "qontrol/util.hpp"

namespace qontrol {

std::string rational_to_string(const Rational& r) {
    // mpq_class construction does not canonicalize; never render "4/2".
    Rational copy(r);
    copy.canonicalize();
    return copy.get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw Error("empty rational literal");
    }
    std::string_view body = s;
    bool negative = false;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        std::string_view num = body.substr(0, slash);
        std::string_view den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw Error("malformed rational literal: " + s);
        }
        Int n{std::string(num)};
        Int d{std::string(den)};
        if (sgn(d) == 0) {
            throw Error("rational literal with zero denominator: " + s);
        }
        value = Rational(n, d);
        value.canonicalize();
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw Error("malformed rational literal: " + s);
        }
        Int n = whole.empty() ? Int(0) : Int(std::string(whole));
        Int d = 1;
        for (char c : frac) {
            n = n * 10 + (c - '0');
            d *= 10;
        }
        value = Rational(n, d);
        value.canonicalize();
    } else {
        if (!all_digits(body)) {
            throw Error("malformed rational literal: " + s);
        }
        value = Rational(Int(std::string(body)));
    }
    if (negative) {
        value = -value;
    }
    return value;
}

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) {
        throw Error("cannot convert non-finite double to a rational");
    }
    Rational r;
    mpq_set_d(r.get_mpq_t(), v);
    return r;
}

}  // namespace qontrol
