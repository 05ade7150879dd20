#include "psl/primality.hpp"

#include <bit>

#include "psl/error.hpp"

namespace psl {
namespace {

// Montgomery arithmetic modulo an odd n < 2^64 with R = 2^64.
class Mont64 {
public:
    using word = std::uint64_t;

    explicit Mont64(word n) : n_(n) {
        word inv = n;  // correct to 3 bits for odd n
        for (int i = 0; i < 5; ++i) {
            inv *= 2 - n * inv;
        }
        inv_ = inv;
        one_ = static_cast<word>(-n) % n;
        r2_ = static_cast<word>((static_cast<u128>(one_) * one_) % n);
    }

    word modulus() const { return n_; }
    word one() const { return one_; }
    word to(word a) const { return mul(a % n_, r2_); }

    word mul(word a, word b) const {
        const u128 t = static_cast<u128>(a) * b;
        const word m = static_cast<word>(t) * inv_;
        const u128 mn = static_cast<u128>(m) * n_;
        const auto t_hi = static_cast<word>(t >> 64);
        const auto mn_hi = static_cast<word>(mn >> 64);
        word r = t_hi - mn_hi;
        if (t_hi < mn_hi) {
            r += n_;
        }
        return r;
    }

private:
    word n_;
    word inv_;
    word one_;
    word r2_;
};

struct Wide {
    u128 hi;
    u128 lo;
};

// Full 128x128 -> 256 bit product from 64-bit limbs.
Wide mul_wide(u128 a, u128 b) {
    const std::uint64_t a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
    const std::uint64_t b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
    const u128 p00 = static_cast<u128>(a0) * b0;
    const u128 p01 = static_cast<u128>(a0) * b1;
    const u128 p10 = static_cast<u128>(a1) * b0;
    const u128 p11 = static_cast<u128>(a1) * b1;
    const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
    Wide w;
    w.lo = (mid << 64) | static_cast<std::uint64_t>(p00);
    w.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    return w;
}

// Montgomery arithmetic modulo an odd n < 2^127 with R = 2^128.
class Mont128 {
public:
    using word = u128;

    explicit Mont128(word n) : n_(n) {
        word inv = n;
        for (int i = 0; i < 6; ++i) {
            inv *= 2 - n * inv;
        }
        inv_ = inv;
        one_ = static_cast<word>(-n) % n;
        // R^2 mod n by 128 modular doublings of R mod n; n < 2^127 keeps 2x below 2^128.
        word r2 = one_;
        for (int i = 0; i < 128; ++i) {
            r2 <<= 1;
            if (r2 >= n_) {
                r2 -= n_;
            }
        }
        r2_ = r2;
    }

    word modulus() const { return n_; }
    word one() const { return one_; }
    word to(word a) const { return mul(a % n_, r2_); }

    word mul(word a, word b) const {
        const Wide t = mul_wide(a, b);
        const word m = t.lo * inv_;
        const Wide mn = mul_wide(m, n_);
        word r = t.hi - mn.hi;
        if (t.hi < mn.hi) {
            r += n_;
        }
        return r;
    }

private:
    word n_;
    word inv_;
    word one_;
    word r2_;
};

template <class Mont>
bool strong_probable_prime(const Mont& mont, typename Mont::word d, int s, std::uint32_t base) {
    using word = typename Mont::word;
    const word n = mont.modulus();
    if (static_cast<word>(base) % n == 0) {
        return true;
    }
    const word one = mont.one();
    const word minus_one = n - one;  // Montgomery form of n - 1
    word x = one;
    word b = mont.to(base);
    for (word e = d; e != 0; e >>= 1) {
        if (e & 1) {
            x = mont.mul(x, b);
        }
        b = mont.mul(b, b);
    }
    if (x == one || x == minus_one) {
        return true;
    }
    for (int i = 1; i < s; ++i) {
        x = mont.mul(x, x);
        if (x == minus_one) {
            return true;
        }
        if (x == one) {
            return false;
        }
    }
    return false;
}

template <class Mont>
bool miller_rabin_odd(typename Mont::word n) {
    using word = typename Mont::word;
    const Mont mont(n);
    word d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint32_t base : kMillerRabinBases) {
        if (!strong_probable_prime(mont, d, s, base)) {
            return false;
        }
    }
    return true;
}

constexpr std::uint32_t kSmallPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                          47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
// 3*5*...*37
constexpr std::uint64_t kSmallPrimorial = 3710369067405ULL;

}  // namespace

bool miller_rabin(u128 value) {
    if (value >= kMillerRabinBound) {
        throw out_of_proven_range("value " + to_string(value) +
                                  " is beyond the proven range of the base set");
    }
    if (value < 2) {
        return false;
    }
    if (value < 4) {
        return true;
    }
    if ((value & 1) == 0) {
        return false;
    }
    if (value < 1369) {  // below 37^2: trial division is exact
        for (std::uint32_t p : kSmallPrimes) {
            if (static_cast<u128>(p) * p > value) {
                return true;
            }
            if (value % p == 0) {
                return false;
            }
        }
        return true;
    }
    if (value >> 64 == 0) {
        return miller_rabin_odd<Mont64>(static_cast<std::uint64_t>(value));
    }
    return miller_rabin_odd<Mont128>(value);
}

bool is_prime_fast(u128 value) {
    if (value >= kMillerRabinBound) {
        throw out_of_proven_range("value " + to_string(value) +
                                  " is beyond the proven range of the base set");
    }
    if (value < 10000) {
        return miller_rabin(value);
    }
    if ((value & 1) == 0) {
        return false;
    }
    const auto r = static_cast<std::uint64_t>(value % kSmallPrimorial);
    for (std::uint32_t p : kSmallPrimes) {
        if (p > 37) {
            if (value % p == 0) {
                return false;
            }
        } else if (r % p == 0) {
            return false;
        }
    }
    if (value >> 64 == 0) {
        return miller_rabin_odd<Mont64>(static_cast<std::uint64_t>(value));
    }
    return miller_rabin_odd<Mont128>(value);
}

PrimalityVerdict is_prime(u128 value, const PrimeTable* table) {
    if (table != nullptr && value <= table->limit()) {
        return {value, table->contains(static_cast<std::uint64_t>(value)), PrimalityMethod::sieve};
    }
    return {value, miller_rabin(value), PrimalityMethod::deterministic_miller_rabin};
}

}  // namespace psl
