#include "qmf/field.hpp"

namespace qmf {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

Field make_field(uint32_t p) {
    if (p == 2) throw ApiError("characteristic 2 is not supported");
    if (!is_prime_u32(p)) throw ApiError("modulus " + std::to_string(p) + " is not prime");
    Field F;
    F.p = p;
    if (p % 4 == 1) {
        // i = a^((p-1)/4) for the first quadratic non-residue a
        for (uint32_t a = 2; a < p; ++a) {
            if (F.pow(a, (p - 1) / 2) == p - 1) {
                uint32_t r = F.pow(a, (p - 1) / 4);
                F.i = std::min(r, p - r);
                F.has_i = true;
                break;
            }
        }
    } else {
        F.ext_mode = true; // p = 3 (mod 4): work in F_p[t]/(t^2+1) when i is needed
    }
    return F;
}

} // namespace qmf
