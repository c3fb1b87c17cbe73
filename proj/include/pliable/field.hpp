#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pliable {

using Elem = std::uint32_t;

inline bool is_prime(std::uint32_t q) {
    if (q < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= q; ++d) {
        if (q % d == 0) return false;
    }
    return true;
}

/// Arithmetic in the prime field F_q. Elements are integers in [0, q).
class PrimeField {
  public:
    explicit PrimeField(std::uint32_t q) : q_(q) {
        if (!is_prime(q)) throw std::invalid_argument("field order " + std::to_string(q) + " is not prime");
        if (q > 65521) throw std::invalid_argument("field order too large");
    }

    std::uint32_t order() const { return q_; }

    Elem reduce(std::int64_t v) const {
        const auto q = static_cast<std::int64_t>(q_);
        v %= q;
        return static_cast<Elem>(v < 0 ? v + q : v);
    }
    Elem add(Elem a, Elem b) const { return static_cast<Elem>((a + b) % q_); }
    Elem sub(Elem a, Elem b) const { return static_cast<Elem>((a + q_ - b) % q_); }
    Elem neg(Elem a) const { return a == 0 ? 0 : q_ - a; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % q_);
    }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1 % q_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // Fermat inverse; a must be nonzero.
    Elem inv(Elem a) const {
        if (a % q_ == 0) throw std::domain_error("inverse of zero");
        return pow(a, q_ - 2);
    }

  private:
    std::uint32_t q_;
};

}  // namespace pliable
