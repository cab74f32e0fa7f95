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

#include "qontrol/skew_op.hpp"

#include <cstdio>

namespace qontrol::detail {

std::string coeff_str(double c) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    return buf;
}

}  // namespace qontrol::detail
