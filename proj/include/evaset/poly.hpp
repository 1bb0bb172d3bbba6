#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evaset/field.hpp"
#include "evaset/geom.hpp"
#include "evaset/rng.hpp"

namespace evaset {

// Dense multivariate polynomial over F_q.  Coefficients are indexed by the
// monomial exponent vectors in ascending lexicographic order with the first
// variable most significant; affine polynomials store every monomial of total
// degree <= degree, homogeneous ones exactly degree.
struct MultiPoly {
    std::uint32_t nvars = 0;
    std::uint32_t degree = 0;
    bool homogeneous = false;
    std::vector<Fe> coeffs;

    bool is_zero() const;
};

// C(degree+nvars, nvars) for affine, C(degree+nvars-1, nvars-1) for
// homogeneous (Overflow beyond 2^63).
std::uint64_t n_monomials(std::uint32_t nvars, std::uint32_t degree,
                          bool homogeneous);

// Exponent vectors in coefficient order.
std::vector<std::vector<std::uint32_t>> monomial_exponents(
    std::uint32_t nvars, std::uint32_t degree, bool homogeneous);

// Uniform coefficient vector, resampled until nonzero.
MultiPoly sample_poly(const FieldCtx& ctx, std::uint32_t nvars,
                      std::uint32_t degree, bool homogeneous,
                      RandomStream& rng);

// Exact evaluation by accumulation over the monomial order, using per-variable
// power tables.
Fe evaluate(const FieldCtx& ctx, const MultiPoly& f,
            const std::vector<Fe>& point);

// Evaluation of a homogeneous polynomial on the affine chart x_chart = 1: the
// chart coordinate is spliced in, which is the dehomogenized evaluation.
Fe evaluate_chart(const FieldCtx& ctx, const MultiPoly& f, std::uint32_t chart,
                  const std::vector<Fe>& affine_point);

MultiPoly poly_add(const FieldCtx& ctx, const MultiPoly& f, const MultiPoly& g);
MultiPoly poly_mul(const FieldCtx& ctx, const MultiPoly& f, const MultiPoly& g);

// Common zero locus in F_q^n of a family of polynomials in either n variables
// (used directly) or n+1 variables (must be homogeneous; evaluated on the
// chart x_0 = 1).  Enumerates all q^n points; TooLarge above cap.
PointSet zero_locus_affine(const FieldCtx& ctx,
                           const std::vector<MultiPoly>& fs, std::uint32_t n,
                           std::uint64_t cap = 100000000ULL);

// Same, but homogeneous polynomials in n+1 variables on an arbitrary chart.
PointSet zero_locus_chart(const FieldCtx& ctx,
                          const std::vector<MultiPoly>& fs, std::uint32_t n,
                          std::uint32_t chart,
                          std::uint64_t cap = 100000000ULL);

// Does f vanish at every point of F_q^nvars?
bool vanishes_everywhere(const FieldCtx& ctx, const MultiPoly& f,
                         std::uint64_t cap = 100000000ULL);

// Text form: header line "n_vars degree homogeneous_flag" followed by the
// coefficient encodings on one line.
std::string poly_to_string(const MultiPoly& f);
MultiPoly poly_from_string(const std::string& text);

std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k);

}  // namespace evaset
