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

#ifndef QONTROL_UTIL_HPP
#define QONTROL_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qontrol {

/// Base class for all qontrol errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when operators or words over different qubit counts are mixed.
struct SizeMismatchError : Error {
    using Error::Error;
};

/// 64-bit FNV-1a over a byte string. Used for content hashes.
constexpr uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// splitmix64 step; used to derive independent sub-seeds deterministically.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Fixed-width lowercase hex rendering of a 64-bit value (16 chars).
std::string hex16(uint64_t v);

}  // namespace qontrol

#endif
