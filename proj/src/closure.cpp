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

#include "qontrol/closure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

namespace qontrol {

const char* arith_mode_name(ArithMode m) {
    return m == ArithMode::exact ? "exact" : "float";
}

namespace {

// ---------------------------------------------------------------------------
// Packed word codec (closure-internal, <= 16 qubits).
//
// A word is one uint32 of 2-bit lanes, qubit 0 in the most significant lane,
// lane value = canonical letter code (I=0 X=1 Y=2 Z=3, bit0 = x^z, bit1 = z).
// Integer order on codes equals canonical word order, and the phase-free
// product of two words is the XOR of their codes.
// ---------------------------------------------------------------------------

using Code = uint32_t;

constexpr Code kEvenLanes = 0x55555555u;

inline Code x_lanes(Code c) {
    // bit0 holds x^z, bit1 holds z; x = (x^z) ^ z, aligned to even bits.
    return (c & kEvenLanes) ^ ((c >> 1) & kEvenLanes);
}

inline Code z_lanes(Code c) {
    return (c >> 1) & kEvenLanes;
}

inline bool codes_commute(Code a, Code b) {
    int par = std::popcount(x_lanes(a) & z_lanes(b)) + std::popcount(z_lanes(a) & x_lanes(b));
    return (par & 1) == 0;
}

// i-exponent (mod 4) of the product a*b = i^e * (a xor b).
inline int product_exp(Code a, Code b) {
    Code p = a ^ b;
    int e = std::popcount(x_lanes(a) & z_lanes(a)) + std::popcount(x_lanes(b) & z_lanes(b)) -
            std::popcount(x_lanes(p) & z_lanes(p)) + 2 * std::popcount(z_lanes(a) & x_lanes(b));
    return ((e % 4) + 4) % 4;
}

Code pack_word(const PauliWord& w) {
    uint32_t n = w.num_qubits();
    Code c = 0;
    for (uint32_t q = 0; q < n; ++q) {
        c |= static_cast<Code>(w.letter(q)) << (2 * (n - 1 - q));
    }
    return c;
}

PauliWord unpack_word(Code c, uint32_t n) {
    std::vector<Letter> letters(n, Letter::I);
    for (uint32_t q = 0; q < n; ++q) {
        letters[q] = static_cast<Letter>((c >> (2 * (n - 1 - q))) & 3);
    }
    return PauliWord::from_letters(letters);
}

// ---------------------------------------------------------------------------
// Exact engines. Coefficient arithmetic is templated: the 128-bit engine is
// the fast path and throws CoeffOverflow when any product or sum would not
// fit, upon which the closure restarts with arbitrary-precision integers.
// Both paths perform identical eliminations, so their results coincide.
// ---------------------------------------------------------------------------

struct CoeffOverflow {};

using I128 = __int128;

template <typename C>
struct NumOps;

template <>
struct NumOps<I128> {
    static I128 mul(I128 a, I128 b) {
        I128 r;
        if (__builtin_mul_overflow(a, b, &r)) {
            throw CoeffOverflow{};
        }
        return r;
    }
    static I128 add(I128 a, I128 b) {
        I128 r;
        if (__builtin_add_overflow(a, b, &r)) {
            throw CoeffOverflow{};
        }
        return r;
    }
    static I128 sub(I128 a, I128 b) {
        I128 r;
        if (__builtin_sub_overflow(a, b, &r)) {
            throw CoeffOverflow{};
        }
        return r;
    }
    static I128 gcd(I128 a, I128 b) {
        unsigned __int128 x = a < 0 ? static_cast<unsigned __int128>(-a) : a;
        unsigned __int128 y = b < 0 ? static_cast<unsigned __int128>(-b) : b;
        while (y != 0) {
            unsigned __int128 t = x % y;
            x = y;
            y = t;
        }
        return static_cast<I128>(x);
    }
    static I128 div_exact(I128 a, I128 b) { return a / b; }
    static bool is_zero(I128 a) { return a == 0; }
    static bool is_neg(I128 a) { return a < 0; }
    static I128 neg(I128 a) { return -a; }
    static I128 one() { return 1; }

    static bool from_mpz(const Int& v, I128* out) {
        if (mpz_sizeinbase(v.get_mpz_t(), 2) > 126) {
            return false;
        }
        unsigned __int128 mag = 0;
        for (mp_size_t i = static_cast<mp_size_t>(mpz_size(v.get_mpz_t())) - 1; i >= 0; --i) {
            mag = (mag << 64) | mpz_getlimbn(v.get_mpz_t(), i);
        }
        *out = sgn(v) < 0 ? -static_cast<I128>(mag) : static_cast<I128>(mag);
        return true;
    }
    static Int to_mpz(I128 v) {
        bool neg = v < 0;
        unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-v) : v;
        Int hi(static_cast<unsigned long>(mag >> 64));
        Int lo(static_cast<unsigned long>(mag & 0xffffffffffffffffULL));
        Int out = (hi << 64) + lo;
        return neg ? Int(-out) : out;
    }
};

// Only the pieces the shared bracket/combine helpers touch; the rational
// engine does its eliminations without the fraction-free machinery.
template <>
struct NumOps<Rational> {
    static Rational mul(const Rational& a, const Rational& b) { return a * b; }
    static Rational add(const Rational& a, const Rational& b) { return a + b; }
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
};

template <>
struct NumOps<Int> {
    static Int mul(const Int& a, const Int& b) { return a * b; }
    static Int add(const Int& a, const Int& b) { return a + b; }
    static Int sub(const Int& a, const Int& b) { return a - b; }
    static Int gcd(const Int& a, const Int& b) { return ::gcd(a, b); }
    static Int div_exact(const Int& a, const Int& b) {
        Int q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static bool is_zero(const Int& a) { return sgn(a) == 0; }
    static bool is_neg(const Int& a) { return sgn(a) < 0; }
    static Int neg(const Int& a) { return -a; }
    static Int one() { return 1; }

    static bool from_mpz(const Int& v, Int* out) {
        *out = v;
        return true;
    }
    static const Int& to_mpz(const Int& v) { return v; }
};

template <typename C>
using ERow = std::vector<std::pair<Code, C>>;

// Divides a nonempty row by the gcd of its entries and flips the sign so the
// leading coefficient is positive: the primitive normal form.
template <typename C>
void normalize_primitive(ERow<C>& row) {
    C g = row[0].second;
    for (size_t k = 1; k < row.size() && !(g == NumOps<C>::one()); ++k) {
        g = NumOps<C>::gcd(g, row[k].second);
    }
    if (NumOps<C>::is_neg(g)) {
        g = NumOps<C>::neg(g);
    }
    bool flip = NumOps<C>::is_neg(row[0].second);
    for (auto& [code, v] : row) {
        v = NumOps<C>::div_exact(v, g);
        if (flip) {
            v = NumOps<C>::neg(v);
        }
    }
}

template <typename C>
void sort_and_combine(ERow<C>& row) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t out = 0;
    for (size_t i = 0; i < row.size();) {
        Code code = row[i].first;
        C sum = row[i].second;
        for (++i; i < row.size() && row[i].first == code; ++i) {
            sum = NumOps<C>::add(sum, row[i].second);
        }
        if (!NumOps<C>::is_zero(sum)) {
            row[out++] = {code, std::move(sum)};
        }
    }
    row.resize(out);
}

// [i a, i b] restricted to anticommuting word pairs: each contributes
// -+2 va vb on the XOR word (sign by the product phase).
template <typename C>
void bracket_rows(const ERow<C>& a, const ERow<C>& b, ERow<C>& out) {
    out.clear();
    out.reserve(a.size() * b.size());
    for (const auto& [wa, va] : a) {
        for (const auto& [wb, vb] : b) {
            if (codes_commute(wa, wb)) {
                continue;
            }
            C prod = NumOps<C>::mul(va, vb);
            prod = NumOps<C>::mul(prod, product_exp(wa, wb) == 1 ? C(-2) : C(2));
            out.emplace_back(wa ^ wb, std::move(prod));
        }
    }
    sort_and_combine(out);
}

// One fraction-free elimination step: clears `base`'s pivot (at position i
// in r, heads scaled by gcd-reduced cross factors) out of r, in place.
template <typename C>
void eliminate_step(ERow<C>& r, size_t i, const ERow<C>& base, ERow<C>& merged) {
    const C& p = base[0].second;
    C a = r[i].second;
    C g = NumOps<C>::gcd(a, p);
    C fr = NumOps<C>::div_exact(p, g);  // scales r
    C fb = NumOps<C>::div_exact(a, g);  // scales base
    merged.clear();
    merged.reserve(r.size() + base.size());
    bool scale_one = fr == NumOps<C>::one();
    for (size_t k = 0; k < i; ++k) {
        merged.emplace_back(r[k].first,
                            scale_one ? r[k].second : NumOps<C>::mul(r[k].second, fr));
    }
    size_t ir = i + 1, ib = 1;  // both heads cancel exactly
    while (ir < r.size() || ib < base.size()) {
        if (ib >= base.size() || (ir < r.size() && r[ir].first < base[ib].first)) {
            merged.emplace_back(r[ir].first,
                                scale_one ? r[ir].second : NumOps<C>::mul(r[ir].second, fr));
            ++ir;
        } else if (ir >= r.size() || base[ib].first < r[ir].first) {
            merged.emplace_back(base[ib].first,
                                NumOps<C>::neg(NumOps<C>::mul(base[ib].second, fb)));
            ++ib;
        } else {
            C v = NumOps<C>::sub(
                scale_one ? r[ir].second : NumOps<C>::mul(r[ir].second, fr),
                NumOps<C>::mul(base[ib].second, fb));
            if (!NumOps<C>::is_zero(v)) {
                merged.emplace_back(r[ir].first, std::move(v));
            }
            ++ir;
            ++ib;
        }
    }
    r.swap(merged);
}

template <typename C>
struct ExactEngine {
    std::vector<ERow<C>> rows;
    std::vector<uint32_t> depths;
    std::unordered_map<Code, size_t> pivot_of;
    ERow<C> scratch;

    // The basis is kept fully reduced (no row contains another row's pivot),
    // so reducing a candidate never reintroduces a pivot it already passed:
    // one elimination per original pivot hit. The content strip after every
    // step keeps fraction-free growth bounded.
    void reduce(ERow<C>& r) {
        size_t i = 0;
        while (i < r.size()) {
            auto it = pivot_of.find(r[i].first);
            if (it == pivot_of.end()) {
                ++i;
                continue;
            }
            eliminate_step(r, i, rows[it->second], scratch);
            if (!r.empty()) {
                normalize_primitive(r);
            }
        }
    }

    bool try_insert(ERow<C> r, uint32_t depth) {
        reduce(r);
        if (r.empty()) {
            return false;
        }
        normalize_primitive(r);
        // Back-substitute so existing rows stay clear of the new pivot.
        Code pivot = r[0].first;
        for (ERow<C>& row : rows) {
            auto hit = std::lower_bound(
                row.begin(), row.end(), pivot,
                [](const auto& t, Code c) { return t.first < c; });
            if (hit == row.end() || hit->first != pivot) {
                continue;
            }
            eliminate_step(row, static_cast<size_t>(hit - row.begin()), r, scratch);
            normalize_primitive(row);
        }
        pivot_of.emplace(pivot, rows.size());
        rows.push_back(std::move(r));
        depths.push_back(depth);
        return true;
    }
};

// ---------------------------------------------------------------------------
// Rational engine: the big-number fallback. Same fully reduced echelon
// discipline, but rows are kept with unit pivots over mpq instead of as
// primitive integer vectors. Under full reduction every entry is a ratio of
// minors of the candidate data, and per-entry canonicalization realizes that
// cancellation; the fraction-free form cannot (its cross-multiplied entries
// share no content on generic input and their growth compounds per step).
// ---------------------------------------------------------------------------

// r -= f * base, merged in place; base holds a unit pivot aligned with r[i],
// so both heads cancel exactly.
void rational_eliminate(ERow<Rational>& r, size_t i, const Rational& f,
                        const ERow<Rational>& base, ERow<Rational>& merged) {
    merged.clear();
    merged.reserve(r.size() + base.size());
    for (size_t k = 0; k < i; ++k) {
        merged.emplace_back(r[k].first, std::move(r[k].second));
    }
    size_t ir = i + 1, ib = 1;
    while (ir < r.size() || ib < base.size()) {
        if (ib >= base.size() || (ir < r.size() && r[ir].first < base[ib].first)) {
            merged.emplace_back(r[ir].first, std::move(r[ir].second));
            ++ir;
        } else if (ir >= r.size() || base[ib].first < r[ir].first) {
            merged.emplace_back(base[ib].first, -(f * base[ib].second));
            ++ib;
        } else {
            Rational v = r[ir].second - f * base[ib].second;
            if (sgn(v) != 0) {
                merged.emplace_back(r[ir].first, std::move(v));
            }
            ++ir;
            ++ib;
        }
    }
    r.swap(merged);
}

struct RationalEngine {
    std::vector<ERow<Rational>> rows;
    std::vector<uint32_t> depths;
    std::unordered_map<Code, size_t> pivot_of;
    ERow<Rational> scratch;

    void reduce(ERow<Rational>& r) {
        size_t i = 0;
        while (i < r.size()) {
            auto it = pivot_of.find(r[i].first);
            if (it == pivot_of.end()) {
                ++i;
                continue;
            }
            Rational f = std::move(r[i].second);
            rational_eliminate(r, i, f, rows[it->second], scratch);
        }
    }

    bool try_insert(ERow<Rational> r, uint32_t depth) {
        reduce(r);
        if (r.empty()) {
            return false;
        }
        if (r[0].second != 1) {
            Rational lead = r[0].second;
            for (auto& [code, v] : r) {
                v /= lead;
            }
        }
        // Back-substitute so existing rows stay clear of the new pivot. The
        // hit is never a row's own head: a fully reduced candidate cannot
        // carry an existing pivot word.
        Code pivot = r[0].first;
        for (ERow<Rational>& row : rows) {
            auto hit = std::lower_bound(
                row.begin(), row.end(), pivot,
                [](const auto& t, Code c) { return t.first < c; });
            if (hit == row.end() || hit->first != pivot) {
                continue;
            }
            Rational f = std::move(hit->second);
            rational_eliminate(row, static_cast<size_t>(hit - row.begin()), f, r, scratch);
        }
        pivot_of.emplace(pivot, rows.size());
        rows.push_back(std::move(r));
        depths.push_back(depth);
        return true;
    }
};

// ---------------------------------------------------------------------------
// Modular engine: rank tracking over Z_p with p = 2^61 - 1. Every accepted
// row is independent mod p, hence independent over the rationals, so a run
// that reaches the full dimension is an exact controllability verdict at
// machine-word cost. Anything short of full dimension proves nothing (p may
// hide a pivot) and the caller falls back to the rational engine.
// ---------------------------------------------------------------------------

constexpr uint64_t kPrime = (1ULL << 61) - 1;

inline uint64_t mod_fold(unsigned __int128 x) {
    // x < 2^122; two Mersenne folds land in [0, p)
    uint64_t s = (static_cast<uint64_t>(x) & kPrime) + static_cast<uint64_t>(x >> 61);
    s = (s & kPrime) + (s >> 61);
    return s >= kPrime ? s - kPrime : s;
}

inline uint64_t mod_mul(uint64_t a, uint64_t b) {
    return mod_fold(static_cast<unsigned __int128>(a) * b);
}

inline uint64_t mod_sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

inline uint64_t mod_inv(uint64_t a) {
    // Fermat: a^(p-2)
    uint64_t result = 1, base = a, e = kPrime - 2;
    while (e != 0) {
        if (e & 1) {
            result = mod_mul(result, base);
        }
        base = mod_mul(base, base);
        e >>= 1;
    }
    return result;
}

inline uint64_t mod_of(const Int& v) {
    uint64_t m = mpz_fdiv_ui(v.get_mpz_t(), kPrime);
    return m;  // fdiv keeps the sign convention: result already in [0, p)
}

// r -= f * base, merged; base pivot is 1 and aligned with r[i].
void prime_eliminate(ERow<uint64_t>& r, size_t i, uint64_t f, const ERow<uint64_t>& base,
                     ERow<uint64_t>& merged) {
    merged.clear();
    merged.reserve(r.size() + base.size());
    for (size_t k = 0; k < i; ++k) {
        merged.push_back(r[k]);
    }
    size_t ir = i + 1, ib = 1;
    while (ir < r.size() || ib < base.size()) {
        if (ib >= base.size() || (ir < r.size() && r[ir].first < base[ib].first)) {
            merged.push_back(r[ir]);
            ++ir;
        } else if (ir >= r.size() || base[ib].first < r[ir].first) {
            merged.emplace_back(base[ib].first, mod_sub(0, mod_mul(f, base[ib].second)));
            ++ib;
        } else {
            uint64_t v = mod_sub(r[ir].second, mod_mul(f, base[ib].second));
            if (v != 0) {
                merged.emplace_back(r[ir].first, v);
            }
            ++ir;
            ++ib;
        }
    }
    r.swap(merged);
}

struct PrimeEngine {
    std::vector<ERow<uint64_t>> rows;
    std::vector<uint32_t> depths;
    std::unordered_map<Code, size_t> pivot_of;
    ERow<uint64_t> scratch;

    void reduce(ERow<uint64_t>& r) {
        size_t i = 0;
        while (i < r.size()) {
            auto it = pivot_of.find(r[i].first);
            if (it == pivot_of.end()) {
                ++i;
                continue;
            }
            prime_eliminate(r, i, r[i].second, rows[it->second], scratch);
        }
    }

    bool try_insert(ERow<uint64_t> r, uint32_t depth) {
        reduce(r);
        if (r.empty()) {
            return false;
        }
        if (r[0].second != 1) {
            uint64_t inv = mod_inv(r[0].second);
            for (auto& [code, v] : r) {
                v = mod_mul(v, inv);
            }
        }
        Code pivot = r[0].first;
        for (ERow<uint64_t>& row : rows) {
            auto hit = std::lower_bound(
                row.begin(), row.end(), pivot,
                [](const auto& t, Code c) { return t.first < c; });
            if (hit == row.end() || hit->first != pivot) {
                continue;
            }
            prime_eliminate(row, static_cast<size_t>(hit - row.begin()), hit->second, r,
                            scratch);
        }
        pivot_of.emplace(pivot, rows.size());
        rows.push_back(std::move(r));
        depths.push_back(depth);
        return true;
    }
};

// ---------------------------------------------------------------------------
// Floating-point engine: reduced row echelon form with max-magnitude pivots
// and a relative acceptance tolerance. Deterministic, but only as sound as
// the tolerance; the exact mode is the arbiter.
// ---------------------------------------------------------------------------

struct FloatEngine {
    using Row = std::vector<std::pair<Code, double>>;

    std::vector<Row> rows;
    std::vector<uint32_t> depths;
    std::vector<Code> pivots;  // pivot word of each row (coefficient 1.0)
    double tolerance = 1e-10;

    static double max_abs(const Row& r) {
        double m = 0.0;
        for (const auto& [code, v] : r) {
            m = std::max(m, std::fabs(v));
        }
        return m;
    }

    static double coeff_at(const Row& r, Code code) {
        auto it = std::lower_bound(r.begin(), r.end(), code,
                                   [](const auto& t, Code c) { return t.first < c; });
        return (it != r.end() && it->first == code) ? it->second : 0.0;
    }

    // r -= f * base, merged; drops exact zeros.
    static void axpy(Row& r, double f, const Row& base) {
        Row merged;
        merged.reserve(r.size() + base.size());
        size_t ir = 0, ib = 0;
        while (ir < r.size() || ib < base.size()) {
            if (ib >= base.size() || (ir < r.size() && r[ir].first < base[ib].first)) {
                merged.push_back(r[ir++]);
            } else if (ir >= r.size() || base[ib].first < r[ir].first) {
                merged.emplace_back(base[ib].first, -f * base[ib].second);
                ++ib;
            } else {
                double v = r[ir].second - f * base[ib].second;
                if (v != 0.0) {
                    merged.emplace_back(r[ir].first, v);
                }
                ++ir;
                ++ib;
            }
        }
        r.swap(merged);
    }

    void reduce(Row& r) const {
        // Rows are mutually reduced, so one pass over the basis suffices.
        for (size_t k = 0; k < rows.size(); ++k) {
            double c = coeff_at(r, pivots[k]);
            if (c != 0.0) {
                axpy(r, c, rows[k]);
            }
        }
    }

    bool try_insert(Row r, uint32_t depth) {
        double scale_in = max_abs(r);
        if (scale_in == 0.0) {
            return false;
        }
        reduce(r);
        double scale_out = max_abs(r);
        if (scale_out <= tolerance * scale_in) {
            return false;
        }
        // Pivot: the largest-magnitude coefficient, ties to the smaller word.
        size_t best = 0;
        for (size_t k = 1; k < r.size(); ++k) {
            if (std::fabs(r[k].second) > std::fabs(r[best].second)) {
                best = k;
            }
        }
        double p = r[best].second;
        Code pivot = r[best].first;
        for (auto& [code, v] : r) {
            v /= p;
        }
        // Back-substitute to keep the basis mutually reduced.
        for (size_t k = 0; k < rows.size(); ++k) {
            double c = coeff_at(rows[k], pivot);
            if (c != 0.0) {
                axpy(rows[k], c, r);
            }
        }
        pivots.push_back(pivot);
        rows.push_back(std::move(r));
        depths.push_back(depth);
        return true;
    }
};

// ---------------------------------------------------------------------------
// Shared sweep driver. `Engine` supplies try_insert; rows at depth p come
// from bracketing each depth-0 generator with each depth-(p-1) element,
// serially, generators outermost.
// ---------------------------------------------------------------------------

template <typename Engine, typename MakeBracket>
void closure_sweeps(Engine& engine, size_t generator_count, uint64_t full_dim,
                    const ClosureCaps& caps, MakeBracket&& bracket_into,
                    ClosureReport& report) {
    size_t depth_begin = 0;
    size_t depth_end = engine.rows.size();
    if (engine.rows.size() >= full_dim) {
        return;
    }
    for (uint32_t p = 1;; ++p) {
        if (depth_begin == depth_end) {
            return;  // previous sweep added nothing: closure complete
        }
        if (caps.max_depth != 0 && p > caps.max_depth) {
            report.truncated = true;
            report.truncation_reason = "max-depth";
            return;
        }
        size_t next_begin = engine.rows.size();
        for (size_t gi = 0; gi < generator_count; ++gi) {
            for (size_t ej = depth_begin; ej < depth_end; ++ej) {
                if (depth_begin == 0 && ej <= gi) {
                    continue;  // depth-0 x depth-0: antisymmetry, take i < j once
                }
                if (caps.max_brackets != 0 && report.brackets_evaluated >= caps.max_brackets) {
                    report.truncated = true;
                    report.truncation_reason = "max-brackets";
                    return;
                }
                ++report.brackets_evaluated;
                if (!bracket_into(gi, ej, p)) {
                    continue;
                }
                if (engine.rows.size() >= full_dim) {
                    return;  // the full algebra: nothing left to find
                }
                if (caps.max_dim != 0 && engine.rows.size() >= caps.max_dim) {
                    report.truncated = true;
                    report.truncation_reason = "max-dim";
                    return;
                }
            }
        }
        depth_begin = next_begin;
        depth_end = engine.rows.size();
    }
}

std::vector<uint64_t> profile_of(const std::vector<uint32_t>& depths) {
    std::vector<uint64_t> profile;
    for (uint32_t d : depths) {
        if (profile.size() <= d) {
            profile.resize(d + 1, 0);
        }
        ++profile[d];
    }
    return profile;
}

// Packs one generator into an integer row (clearing denominators); reports
// failure when a coefficient does not fit the engine's coefficient type.
template <typename C>
bool pack_generator(const SkewOperator& op, ERow<C>& out) {
    Int lcm = 1;
    for (const auto& [w, c] : op.terms()) {
        Int den = c.get_den();
        lcm = ::lcm(lcm, den);
    }
    out.clear();
    out.reserve(op.term_count());
    for (const auto& [w, c] : op.terms()) {
        Int v = c.get_num() * (lcm / c.get_den());
        C packed;
        if (!NumOps<C>::from_mpz(v, &packed)) {
            return false;
        }
        out.emplace_back(pack_word(w), std::move(packed));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return true;
}

template <typename C>
bool run_exact(const ControlSystem& system, const ClosureOptions& options, uint64_t full_dim,
               ClosureReport& report, std::vector<std::vector<std::pair<Code, Int>>>& rows_out,
               std::vector<uint32_t>& depths_out) {
    ExactEngine<C> engine;
    // Bracket inputs are the raw accepted candidates, never the reduced
    // basis rows: raw entries grow linearly with depth (each bracket scales
    // by small generator coefficients), while reduced rows feed their own
    // elimination growth back into the next depth's candidates.
    std::vector<ERow<C>> elements;
    size_t generator_count = 0;
    try {
        for (const SkewOperator* gen : system.generators()) {
            if (gen->is_zero()) {
                continue;
            }
            ERow<C> row;
            if (!pack_generator(*gen, row)) {
                return false;
            }
            if (engine.try_insert(row, 0)) {
                elements.push_back(std::move(row));
                ++generator_count;
            }
        }
        ERow<C> cand;
        closure_sweeps(
            engine, generator_count, full_dim, options.caps,
            [&](size_t gi, size_t ej, uint32_t depth) {
                bracket_rows(elements[gi], elements[ej], cand);
                if (!engine.try_insert(cand, depth)) {
                    return false;
                }
                elements.push_back(cand);
                return true;
            },
            report);
    } catch (const CoeffOverflow&) {
        return false;
    }
    rows_out.clear();
    rows_out.reserve(engine.rows.size());
    for (const ERow<C>& row : engine.rows) {
        std::vector<std::pair<Code, Int>> converted;
        converted.reserve(row.size());
        for (const auto& [code, v] : row) {
            converted.emplace_back(code, NumOps<C>::to_mpz(v));
        }
        rows_out.push_back(std::move(converted));
    }
    depths_out = engine.depths;
    return true;
}

// Big-number tier. Mirrors run_exact over the rational engine; cannot
// overflow. The emitted rows are converted back to the primitive integer
// normal form, so results are indistinguishable from the fast path's.
void run_exact_rational(const ControlSystem& system, const ClosureOptions& options,
                        uint64_t full_dim, ClosureReport& report,
                        std::vector<std::vector<std::pair<Code, Int>>>& rows_out,
                        std::vector<uint32_t>& depths_out) {
    RationalEngine engine;
    std::vector<ERow<Rational>> elements;  // raw bracket inputs, as above
    size_t generator_count = 0;
    for (const SkewOperator* gen : system.generators()) {
        if (gen->is_zero()) {
            continue;
        }
        ERow<Rational> row;
        row.reserve(gen->term_count());
        for (const auto& [w, c] : gen->terms()) {
            row.emplace_back(pack_word(w), c);
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (engine.try_insert(row, 0)) {
            elements.push_back(std::move(row));
            ++generator_count;
        }
    }
    ERow<Rational> cand;
    closure_sweeps(
        engine, generator_count, full_dim, options.caps,
        [&](size_t gi, size_t ej, uint32_t depth) {
            bracket_rows(elements[gi], elements[ej], cand);
            if (!engine.try_insert(cand, depth)) {
                return false;
            }
            elements.push_back(cand);
            return true;
        },
        report);
    rows_out.clear();
    rows_out.reserve(engine.rows.size());
    for (const ERow<Rational>& row : engine.rows) {
        Int lcm_den = 1;
        for (const auto& [code, v] : row) {
            lcm_den = ::lcm(lcm_den, Int(v.get_den()));
        }
        std::vector<std::pair<Code, Int>> converted;
        converted.reserve(row.size());
        for (const auto& [code, v] : row) {
            converted.emplace_back(code, Int(v.get_num() * (lcm_den / v.get_den())));
        }
        normalize_primitive(converted);
        rows_out.push_back(std::move(converted));
    }
    depths_out = engine.depths;
}

// Modular tier. Candidates are computed exactly over mpz (raw elements grow
// only linearly with depth); only the rank decisions run mod p. Returns true
// when the closure reached the full dimension, in which case `rows_out`
// holds the accepted elements as exact integer rows, independent but not
// echelonized. Any other outcome returns false.
bool run_exact_modp(const ControlSystem& system, const ClosureOptions& options,
                    uint64_t full_dim, ClosureReport& report,
                    std::vector<std::vector<std::pair<Code, Int>>>& rows_out,
                    std::vector<uint32_t>& depths_out) {
    PrimeEngine engine;
    std::vector<ERow<Int>> elements;
    size_t generator_count = 0;
    ERow<uint64_t> image;
    auto image_of = [&](const ERow<Int>& row) {
        image.clear();
        image.reserve(row.size());
        for (const auto& [code, v] : row) {
            uint64_t m = mod_of(v);
            if (m != 0) {
                image.emplace_back(code, m);
            }
        }
        return !image.empty();
    };
    for (const SkewOperator* gen : system.generators()) {
        if (gen->is_zero()) {
            continue;
        }
        ERow<Int> row;
        pack_generator(*gen, row);
        if (image_of(row) && engine.try_insert(image, 0)) {
            elements.push_back(std::move(row));
            ++generator_count;
        }
    }
    ERow<Int> cand;
    closure_sweeps(
        engine, generator_count, full_dim, options.caps,
        [&](size_t gi, size_t ej, uint32_t depth) {
            bracket_rows(elements[gi], elements[ej], cand);
            if (!image_of(cand) || !engine.try_insert(image, depth)) {
                return false;
            }
            elements.push_back(cand);
            return true;
        },
        report);
    if (engine.rows.size() < full_dim) {
        return false;
    }
    rows_out = std::move(elements);
    depths_out = std::move(engine.depths);
    return true;
}

void run_float(const ControlSystem& system, const ClosureOptions& options, uint64_t full_dim,
               ClosureReport& report, std::vector<std::vector<std::pair<Code, Int>>>& rows_out,
               std::vector<uint32_t>& depths_out) {
    FloatEngine engine;
    engine.tolerance = options.float_tolerance;
    std::vector<FloatEngine::Row> elements;  // raw bracket inputs, as above
    size_t generator_count = 0;
    for (const SkewOperator* gen : system.generators()) {
        if (gen->is_zero()) {
            continue;
        }
        FloatEngine::Row row;
        row.reserve(gen->term_count());
        for (const auto& [w, c] : gen->terms()) {
            row.emplace_back(pack_word(w), c.get_d());
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (engine.try_insert(row, 0)) {
            elements.push_back(std::move(row));
            ++generator_count;
        }
    }
    FloatEngine::Row cand;
    closure_sweeps(
        engine, generator_count, full_dim, options.caps,
        [&](size_t gi, size_t ej, uint32_t depth) {
            cand.clear();
            cand.reserve(elements[gi].size() * elements[ej].size());
            for (const auto& [wa, va] : elements[gi]) {
                for (const auto& [wb, vb] : elements[ej]) {
                    if (codes_commute(wa, wb)) {
                        continue;
                    }
                    double prod = va * vb * (product_exp(wa, wb) == 1 ? -2.0 : 2.0);
                    cand.emplace_back(wa ^ wb, prod);
                }
            }
            std::sort(cand.begin(), cand.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            FloatEngine::Row combined;
            for (size_t i = 0; i < cand.size();) {
                Code code = cand[i].first;
                double sum = 0.0;
                for (; i < cand.size() && cand[i].first == code; ++i) {
                    sum += cand[i].second;
                }
                if (sum != 0.0) {
                    combined.emplace_back(code, sum);
                }
            }
            if (!engine.try_insert(combined, depth)) {
                return false;
            }
            elements.push_back(std::move(combined));
            return true;
        },
        report);
    // Convert the double rows to exact binary rationals, then to primitive
    // integer rows, preserving the engine's pivot structure loosely (rows
    // re-echelonized exactly on conversion by the caller).
    rows_out.clear();
    rows_out.reserve(engine.rows.size());
    for (const FloatEngine::Row& row : engine.rows) {
        Int lcm_den = 1;
        std::vector<std::pair<Code, Rational>> exact;
        exact.reserve(row.size());
        for (const auto& [code, v] : row) {
            Rational r;
            mpq_set_d(r.get_mpq_t(), v);
            exact.emplace_back(code, r);
            lcm_den = ::lcm(lcm_den, Int(r.get_den()));
        }
        std::vector<std::pair<Code, Int>> converted;
        converted.reserve(exact.size());
        for (const auto& [code, r] : exact) {
            converted.emplace_back(code, Int(r.get_num() * (lcm_den / r.get_den())));
        }
        rows_out.push_back(std::move(converted));
    }
    depths_out = engine.depths;
}

}  // namespace

// ---------------------------------------------------------------------------
// LieBasis
// ---------------------------------------------------------------------------

LieBasis::LieBasis(uint32_t num_qubits) : n_(num_qubits) {
    if (n_ == 0) {
        throw Error("a basis needs at least one qubit");
    }
}

LieBasis::Row LieBasis::pack(const SkewOperator& op, Rational* scale) const {
    if (op.num_qubits() != n_) {
        throw SizeMismatchError("operator qubit count does not match the basis");
    }
    // empty bases of any width are fine; packing words is what needs the cap
    if (n_ > 16) {
        throw Error("the packed-word basis engine is limited to 16 qubits");
    }
    Int lcm_den = 1;
    for (const auto& [w, c] : op.terms()) {
        lcm_den = ::lcm(lcm_den, Int(c.get_den()));
    }
    Row row;
    row.reserve(op.term_count());
    for (const auto& [w, c] : op.terms()) {
        row.emplace_back(pack_word(w), Int(c.get_num() * (lcm_den / c.get_den())));
    }
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (scale != nullptr) {
        *scale = Rational(lcm_den);
    }
    return row;
}

SkewOperator LieBasis::unpack(const Row& row, const Rational& scale) const {
    std::vector<SkewOperator::Term> terms;
    terms.reserve(row.size());
    for (const auto& [code, v] : row) {
        Rational c(v);
        c /= scale;
        terms.emplace_back(unpack_word(code, n_), c);
    }
    return SkewOperator::from_terms(n_, std::move(terms));
}

void LieBasis::reduce_row(Row& r, Rational& scale) const {
    Row merged;
    size_t i = 0;
    while (i < r.size()) {
        auto it = pivot_of_.find(r[i].first);
        if (it == pivot_of_.end()) {
            ++i;
            continue;
        }
        const Row& base = rows_[it->second];
        const Int& p = base[0].second;
        Int a = r[i].second;
        Int g = ::gcd(a, p);
        Int fr;
        mpz_divexact(fr.get_mpz_t(), p.get_mpz_t(), g.get_mpz_t());
        Int fb;
        mpz_divexact(fb.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
        merged.clear();
        merged.reserve(r.size() + base.size());
        for (size_t k = 0; k < i; ++k) {
            merged.emplace_back(r[k].first, Int(r[k].second * fr));
        }
        size_t ir = i + 1, ib = 1;
        while (ir < r.size() || ib < base.size()) {
            if (ib >= base.size() || (ir < r.size() && r[ir].first < base[ib].first)) {
                merged.emplace_back(r[ir].first, Int(r[ir].second * fr));
                ++ir;
            } else if (ir >= r.size() || base[ib].first < r[ir].first) {
                merged.emplace_back(base[ib].first, Int(-base[ib].second * fb));
                ++ib;
            } else {
                Int v = r[ir].second * fr - base[ib].second * fb;
                if (sgn(v) != 0) {
                    merged.emplace_back(r[ir].first, std::move(v));
                }
                ++ir;
                ++ib;
            }
        }
        r.swap(merged);
        scale *= Rational(fr);
    }
}

SkewOperator LieBasis::reduce_against(const SkewOperator& op) const {
    ensure_echelonized();
    Rational scale;
    Row row = pack(op, &scale);
    reduce_row(row, scale);
    return unpack(row, scale);
}

void LieBasis::insert_row(Row row, uint32_t depth) const {
    Int g = row[0].second;
    for (size_t k = 1; k < row.size() && g != 1; ++k) {
        g = ::gcd(g, row[k].second);
    }
    if (sgn(g) < 0) {
        g = -g;
    }
    bool flip = sgn(row[0].second) < 0;
    for (auto& [code, v] : row) {
        Int q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        v = flip ? Int(-q) : q;
    }
    pivot_of_.emplace(row[0].first, rows_.size());
    rows_.push_back(std::move(row));
    depths_.push_back(depth);
}

bool LieBasis::insert_reduced(const SkewOperator& op, uint32_t depth) {
    ensure_echelonized();
    Rational scale;
    Row row = pack(op, &scale);
    reduce_row(row, scale);
    if (row.empty()) {
        return false;
    }
    insert_row(std::move(row), depth);
    return true;
}

void LieBasis::adopt_independent(std::vector<Row> rows, std::vector<uint32_t> depths) {
    raw_rows_ = std::move(rows);
    raw_depths_ = std::move(depths);
}

void LieBasis::ensure_echelonized() const {
    if (raw_rows_.empty()) {
        return;
    }
    std::vector<Row> pending = std::move(raw_rows_);
    std::vector<uint32_t> pending_depths = std::move(raw_depths_);
    raw_rows_.clear();
    raw_depths_.clear();
    for (size_t i = 0; i < pending.size(); ++i) {
        Rational scale(1);
        reduce_row(pending[i], scale);
        if (pending[i].empty()) {
            throw Error("internal error: an independent basis row reduced to zero");
        }
        insert_row(std::move(pending[i]), pending_depths[i]);
    }
}

SkewOperator LieBasis::element(size_t index) const {
    ensure_echelonized();
    return unpack(rows_.at(index), Rational(1));
}

std::vector<SkewOperator> LieBasis::elements() const {
    ensure_echelonized();
    std::vector<SkewOperator> out;
    out.reserve(rows_.size());
    for (size_t i = 0; i < rows_.size(); ++i) {
        out.push_back(element(i));
    }
    return out;
}

PauliWord LieBasis::pivot_word(size_t index) const {
    ensure_echelonized();
    return unpack_word(rows_.at(index)[0].first, n_);
}

std::optional<size_t> LieBasis::pivot_position(const PauliWord& w) const {
    ensure_echelonized();
    auto it = pivot_of_.find(pack_word(w));
    if (it == pivot_of_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<uint64_t> LieBasis::depth_profile() const {
    std::vector<uint32_t> combined = depths_;
    combined.insert(combined.end(), raw_depths_.begin(), raw_depths_.end());
    return profile_of(combined);
}

// ---------------------------------------------------------------------------
// lie_closure
// ---------------------------------------------------------------------------

std::pair<LieBasis, ClosureReport> lie_closure(const ControlSystem& system,
                                               const ClosureOptions& options) {
    uint32_t n = system.num_qubits();
    ClosureReport report;
    report.arithmetic = options.arithmetic;
    mpz_ui_pow_ui(report.full_dimension.get_mpz_t(), 4, n);
    report.full_dimension -= 1;

    if (n > 8 && !options.force) {
        report.truncated = true;
        report.truncation_reason = "qubit-guard";
        return {LieBasis(n), report};
    }
    if (n > 16) {
        throw Error("closure engine limit exceeded: " + std::to_string(n) +
                    " qubits (hard cap 16)");
    }

    uint64_t full_dim = (1ULL << (2 * n)) - 1;
    std::vector<std::vector<std::pair<Code, Int>>> rows;
    std::vector<uint32_t> depths;
    bool adopt_raw = false;

    auto reset_report = [&] {
        report = ClosureReport{};
        report.arithmetic = options.arithmetic;
        mpz_ui_pow_ui(report.full_dimension.get_mpz_t(), 4, n);
        report.full_dimension -= 1;
    };

    if (options.arithmetic == ArithMode::exact) {
        // Tiers: 128-bit fraction-free, then modular rank tracking (exact
        // only when it reaches the full dimension), then rationals.
        if (!run_exact<I128>(system, options, full_dim, report, rows, depths)) {
            reset_report();
            if (run_exact_modp(system, options, full_dim, report, rows, depths)) {
                adopt_raw = true;
            } else {
                reset_report();
                run_exact_rational(system, options, full_dim, report, rows, depths);
            }
        }
    } else {
        run_float(system, options, full_dim, report, rows, depths);
    }

    report.depth_profile = profile_of(depths);
    report.max_depth = depths.empty() ? 0 : *std::max_element(depths.begin(), depths.end());

    LieBasis basis(n);
    if (adopt_raw) {
        basis.adopt_independent(std::move(rows), std::move(depths));
    } else if (options.arithmetic == ArithMode::exact) {
        for (size_t i = 0; i < rows.size(); ++i) {
            basis.insert_row(std::move(rows[i]), depths[i]);
        }
    } else {
        // Float rows are not exactly echelonized; re-insert through exact
        // reduction (independence over the rationals is preserved because
        // every double is an exact binary rational).
        for (size_t i = 0; i < rows.size(); ++i) {
            Rational scale(1);
            LieBasis::Row row = std::move(rows[i]);
            basis.reduce_row(row, scale);
            if (!row.empty()) {
                basis.insert_row(std::move(row), depths[i]);
            }
        }
    }

    report.dimension = basis.size();
    report.controllable =
        !report.truncated && Int(static_cast<unsigned long>(report.dimension)) == report.full_dimension;
    return {std::move(basis), std::move(report)};
}

ClosureReport is_controllable(const ControlSystem& system, const ClosureOptions& options) {
    return lie_closure(system, options).second;
}

}  // namespace qontrol
