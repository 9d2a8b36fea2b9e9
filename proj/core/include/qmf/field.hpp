#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qmf {

struct ApiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Prime field F_p for odd p. Elements are uint32_t in [0, p).
// When p = 1 (mod 4), i holds the smaller square root of -1.
// When p = 3 (mod 4), ext_mode is set and FpExt provides F_p[t]/(t^2+1).
struct Field {
    uint32_t p = 0;
    uint32_t i = 0;       // valid iff has_i
    bool has_i = false;
    bool ext_mode = false;

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((uint64_t)a * b % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const {
        uint64_t r = 1, x = a % p;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return static_cast<uint32_t>(r);
    }
    uint32_t inv(uint32_t a) const {
        if (a == 0) throw ApiError("division by zero in F_p");
        return pow(a, p - 2);
    }
    // reduce a signed integer into [0, p)
    uint32_t from_int(int64_t v) const {
        int64_t r = v % (int64_t)p;
        if (r < 0) r += p;
        return static_cast<uint32_t>(r);
    }
};

// Element of F_p[t]/(t^2+1), written re + t*im. A field iff p = 3 (mod 4);
// for p = 1 (mod 4) the quotient splits and t can be collapsed to i in F_p.
struct FpExt {
    uint32_t re = 0, im = 0;
    bool operator==(const FpExt&) const = default;
};

inline FpExt ext_add(const Field& F, FpExt a, FpExt b) {
    return {F.add(a.re, b.re), F.add(a.im, b.im)};
}
inline FpExt ext_sub(const Field& F, FpExt a, FpExt b) {
    return {F.sub(a.re, b.re), F.sub(a.im, b.im)};
}
inline FpExt ext_mul(const Field& F, FpExt a, FpExt b) {
    // (a + tb)(c + td) = (ac - bd) + t(ad + bc), using t^2 = -1
    return {F.sub(F.mul(a.re, b.re), F.mul(a.im, b.im)),
            F.add(F.mul(a.re, b.im), F.mul(a.im, b.re))};
}
inline FpExt ext_neg(const Field& F, FpExt a) { return {F.neg(a.re), F.neg(a.im)}; }
inline FpExt ext_inv(const Field& F, FpExt a) {
    // 1/(a+tb) = (a-tb)/(a^2+b^2); the norm vanishes only at 0 when p=3 (mod 4)
    uint32_t n = F.add(F.mul(a.re, a.re), F.mul(a.im, a.im));
    if (n == 0) throw ApiError("division by zero in F_p[t]/(t^2+1)");
    uint32_t ninv = F.inv(n);
    return {F.mul(a.re, ninv), F.mul(F.neg(a.im), ninv)};
}
// collapse t -> i; only meaningful when the field has i
inline uint32_t ext_collapse(const Field& F, FpExt a) {
    if (!F.has_i) throw ApiError("collapse needs i = sqrt(-1) in F_p");
    return F.add(a.re, F.mul(F.i, a.im));
}

bool is_prime_u32(uint32_t n);

// Build the field, rejecting p = 2 and composites. For p = 1 (mod 4) the
// returned i is the smaller of the two square roots of -1.
Field make_field(uint32_t p);

} // namespace qmf
