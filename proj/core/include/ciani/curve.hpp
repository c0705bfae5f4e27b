#pragma once
// The Ciani quartic x^4 + y^4 + z^4 + r x^2y^2 + s y^2z^2 + t z^2x^2 and the
// pipeline from (r, s, t) to nonsingularity, the lambda-triple of its three
// quotient elliptic curves, superspeciality, the (Delta, mu_i, nu_i) data,
// the maximal/minimal verdict over F_{p^2}, and the automorphism-group tag.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ciani/fields.hpp"
#include "ciani/legendre.hpp"

namespace ciani {

class CianiCurve {
  public:
    CianiCurve(FieldElem r, FieldElem s, FieldElem t);
    const FieldElem& r() const { return r_; }
    const FieldElem& s() const { return s_; }
    const FieldElem& t() const { return t_; }
    const FieldCtx& ctx() const { return r_.ctx(); }
    FieldCtxPtr ctx_ptr() const { return r_.ctx_ptr(); }

  private:
    FieldElem r_, s_, t_;
};

// Fixed square roots alpha^2 = r^2-4, beta^2 = s^2-4, gamma^2 = t^2-4, all at
// a common level: the curve's own field when every value is a square there,
// otherwise its quadratic extension.
struct SqrtTriple {
    FieldElem alpha, beta, gamma;
};

struct LambdaTriple {
    FieldElem lambda1, lambda2, lambda3;
};

struct MuNuData {
    FieldElem delta;  // canonical root of the discriminant
    FieldElem mu1, nu1, mu2, nu2, mu3, nu3;
};

// Verified consequences of superspeciality; all four must hold for any
// superspecial input, so a false entry signals a library bug.
struct FieldDescent {
    bool products_descend;            // alpha*beta, beta*gamma, gamma*alpha in F_{p^2}
    bool delta_descends;              // Delta in F_{p^2}
    bool ratios_are_fourth_powers;    // (r^2-4)/(t^2-4) and siblings
    bool mu_squareness_consistent;    // all mu_i square or none
    bool all() const {
        return products_descend && delta_descends && ratios_are_fourth_powers &&
               mu_squareness_consistent;
    }
};

// Ordered by specificity, most specific last.
enum class AutoGroupTag { D4, D8, G16, S4, G48, G96, G168 };
const char* to_string(AutoGroupTag tag);

struct AnalysisReport {
    CianiCurve curve;
    bool nonsingular = false;
    std::optional<LambdaTriple> lambda;
    std::optional<bool> superspecial;
    std::optional<MuNuData> munu;
    std::optional<Verdict> verdict;
    std::optional<AutoGroupTag> auto_group;
    std::optional<uint64_t> oracle_count;
};

// r^2 + s^2 + t^2 - rst - 4
FieldElem discriminant(const CianiCurve& c);

// r, s, t all avoid +-2 and the discriminant is nonzero.
bool is_nonsingular(const CianiCurve& c);

// The middle terms (rt-2s, sr-2t, ts-2r) and the paired products
// (r^2-4)(t^2-4), (s^2-4)(r^2-4), (t^2-4)(s^2-4); index i describes the i-th
// quotient elliptic curve, and lambda_i = (A_i - B_i)/(A_i + B_i) with
// B_i^2 = P_i.
std::array<FieldElem, 3> quotient_mid_terms(const CianiCurve& c);
std::array<FieldElem, 3> quotient_products(const CianiCurve& c);

SqrtTriple sqrt_triple(const CianiCurve& c);
SqrtTriple sqrt_triple(const CianiCurve& c, const FieldCtxPtr& ext);  // reuse an extension

LambdaTriple lambdas(const CianiCurve& c);
LambdaTriple lambdas(const CianiCurve& c, const FieldCtxPtr& ext);
// Formula core with caller-supplied roots (sign-flip testing hooks).
LambdaTriple lambdas_from_roots(const CianiCurve& c, const SqrtTriple& roots);

// Inverse transformation: a representative triple whose quotient curves have
// the given lambdas. Lifts one tower level when a needed root is missing;
// compare results through lambda/j multisets, not raw triples.
CianiCurve rst_from_lambdas(const LambdaTriple& lt);

MuNuData mu_nu(const CianiCurve& c);
MuNuData mu_nu(const CianiCurve& c, const FieldCtxPtr& ext);
MuNuData mu_nu_from_delta(const CianiCurve& c, const FieldElem& delta);

// All three quotient curves supersingular. Decided by evaluating the Deuring
// polynomial at each lambda_i without leaving the curve's field: with
// N = sum_k C(m,k)^2 (A-X)^k (A+X)^{m-k} over F[X]/(X^2 - P), N is invariant
// under X -> -X and therefore lies in F; N = 0 iff H_p(lambda_i) = 0.
bool is_superspecial(const CianiCurve& c);
bool is_superspecial(const CianiCurve& c, std::span<const uint64_t> row);

FieldDescent check_field_descent(const CianiCurve& c);
FieldDescent check_field_descent(const CianiCurve& c, const MuNuData& munu);

Verdict classify(const CianiCurve& c);
Verdict classify_from_munu(const CianiCurve& c, const MuNuData& munu);

// Over F_{p^{2e}}: the level-2 verdict for odd e, Minimal for even e.
Verdict classify_ext(const CianiCurve& c, uint64_t e);

// Syntactic classification of the triple under permutations and even sign
// changes. A lower bound on the true automorphism group: isomorphic curves
// can carry different triples (the Fermat quartic is isomorphic to
// x^4 + y^4 + 6y^2z^2 + z^4 = 0), and no isomorphism test is attempted.
AutoGroupTag type_classify(const CianiCurve& c);

// The 24 triples equivalent to c: 6 permutations x 4 even sign patterns.
std::vector<CianiCurve> equivalent_triples(const CianiCurve& c);

// The curve x^4 + y^4 + z^4 + r x^2yz + s y^2z^2 = 0 brought to the triple
// (a, b, a) with a = r/sqrt(s+2), b = 2 - 16/(s+2).
CianiCurve d8_standard_form(const FieldElem& r, const FieldElem& s);

// The 2-isogenous twists E'_i: mu_i y^2 = x(x-1)(x - nu_i/mu_i).
std::array<TwistedLegendre, 3> isogenous_twists(const CianiCurve& c);

// j-invariants of the three lambdas, computed rationally from (A_i, P_i):
// j = 64 (A^2 + 3P)^3 / (P (A^2 - P)^2). No square roots are taken, so this
// works at any tower level and is invariant under every root-sign choice.
std::array<FieldElem, 3> lambda_j_invariants(const CianiCurve& c);

AnalysisReport analyze(const CianiCurve& c, bool with_oracle);

}  // namespace ciani
