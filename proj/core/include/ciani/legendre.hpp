#pragma once
// Legendre-form elliptic curves y^2 = x(x-1)(x-lambda) and their quadratic
// twists mu*y^2 = x(x-1)(x-lambda): supersingularity via the Deuring
// polynomial, j-invariants, brute-force point counts, and the
// maximal/minimal classification over F_{p^2}.

#include <cstdint>
#include <vector>

#include "ciani/fields.hpp"

namespace ciani {

class LegendreCurve {
  public:
    explicit LegendreCurve(FieldElem lambda);
    const FieldElem& lambda() const { return lambda_; }
    const FieldCtx& ctx() const { return lambda_.ctx(); }

  private:
    FieldElem lambda_;
};

class TwistedLegendre {
  public:
    TwistedLegendre(FieldElem mu, FieldElem lambda);
    const FieldElem& mu() const { return mu_; }
    const FieldElem& lambda() const { return lambda_; }
    const FieldCtx& ctx() const { return lambda_.ctx(); }

  private:
    FieldElem mu_, lambda_;
};

struct SsVerdict {
    bool supersingular;
    FieldElem hasse_value;  // supersingular iff this vanishes
};

enum class Verdict { Maximal, Minimal };
const char* to_string(Verdict v);

// Row of squared binomial coefficients C(m, k)^2 mod p, m = (p-1)/2 — the
// coefficients of the Deuring polynomial H_p.
std::vector<uint64_t> deuring_row(uint64_t p);

// Evaluates H_p(lambda) = sum C(m,k)^2 lambda^k; zero iff the Legendre curve
// is supersingular. Valid at any tower level (the criterion depends only on
// the characteristic).
SsVerdict deuring_eval(const FieldElem& lambda);

// 2^8 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)
FieldElem j_invariant(const FieldElem& lambda);

// #E(F_q) = q + 1 + sum_x chi(mu^-1 x(x-1)(x-lambda)), including the point at
// infinity of the Weierstrass model. Brute force; the field must be small
// enough to enumerate.
uint64_t count_points(const LegendreCurve& curve);
uint64_t count_points(const TwistedLegendre& curve);

// Maximal/minimal over F_{p^2} for a supersingular curve: maximal iff
// p = 3 mod 4 (plain form); twists flip with the quadratic class of mu.
Verdict classify_legendre(const LegendreCurve& curve);
Verdict classify_twist(const TwistedLegendre& curve);

}  // namespace ciani
