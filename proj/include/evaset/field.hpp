#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evaset/errors.hpp"

namespace evaset {

// Element of F_q encoded as an integer in [0, q): the base-p digit vector of
// the encoding is the coefficient vector of the residue polynomial
// (constant term = least significant digit).  For prime fields this is the
// usual integer residue.
using Fe = std::uint32_t;

// Arithmetic context for F_q, q = p^e <= 2^31.
//
// The modulus is the monic irreducible polynomial of degree e over F_p with
// the lowest canonical encoding (encoding includes the leading 1, so it is
// p^e + c for the low-part encoding c).  Irreducibility is certified at
// construction by trial division against every monic polynomial of degree
// <= e/2.  For e > 1 and q <= 2^16 multiplication runs on exp/log tables over
// a fixed generator; otherwise it falls back to digit-vector arithmetic.
class FieldCtx {
   public:
    static FieldCtx make(std::uint32_t p, std::uint32_t e);

    // Round-trips through the one-line text form "p e modulus_encoding"
    // (modulus_encoding is 0 when e == 1).
    static FieldCtx parse(const std::string& line);
    std::string to_string() const;

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }
    std::uint64_t modulus_encoding() const { return modulus_enc_; }

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const;
    Fe inv(Fe a) const;  // EmptyInput on a == 0
    Fe pow(Fe a, std::uint64_t n) const;

    // Base-p digits of an encoding, least significant first, length e.
    std::vector<std::uint32_t> digits(Fe a) const;
    Fe from_digits(const std::vector<std::uint32_t>& d) const;

   private:
    FieldCtx() = default;
    void build_tables();
    Fe mul_slow(Fe a, Fe b) const;

    std::uint32_t p_ = 0, e_ = 0, q_ = 0;
    std::uint64_t modulus_enc_ = 0;
    std::vector<std::uint32_t> modulus_;  // length e+1, monic; empty for e==1
    std::vector<Fe> exp_, log_;           // filled when e>1 and q<=65536
};

bool is_prime_u32(std::uint32_t n);

}  // namespace evaset
