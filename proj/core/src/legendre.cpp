#include "ciani/legendre.hpp"

namespace ciani {
namespace {

uint64_t powm(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = static_cast<uint64_t>(static_cast<unsigned __int128>(r) * a % p);
        a = static_cast<uint64_t>(static_cast<unsigned __int128>(a) * a % p);
        e >>= 1;
    }
    return r;
}

void require_valid_lambda(const FieldElem& lambda) {
    if (lambda.is_zero() || lambda.is_one())
        throw SingularLambda("lambda must avoid 0 and 1");
}

int64_t char_sum(const FieldCtx& f, const FieldElem& lambda, const FieldElem* mu_inv) {
    auto q = f.size();
    if (!q) throw Error("count_points: field too large to enumerate");
    const FieldElem one = f.one();
    int64_t sum = 0;
    for (uint64_t k = 0; k < *q; ++k) {
        FieldElem x = f.element_at(k);
        FieldElem v = x * (x - one) * (x - lambda);
        if (mu_inv) v = *mu_inv * v;
        if (v.is_zero()) continue;
        sum += is_square(v) ? 1 : -1;
    }
    return sum;
}

void require_level2(const FieldCtx& f, const char* what) {
    if (f.level() != 2)
        throw CtxMismatch(std::string(what) + " requires a level-2 field (F_{p^2})");
}

}  // namespace

LegendreCurve::LegendreCurve(FieldElem lambda) : lambda_(std::move(lambda)) {
    require_valid_lambda(lambda_);
}

TwistedLegendre::TwistedLegendre(FieldElem mu, FieldElem lambda)
    : mu_(std::move(mu)), lambda_(std::move(lambda)) {
    if (&mu_.ctx() != &lambda_.ctx() && !mu_.ctx().same_field(lambda_.ctx()))
        throw CtxMismatch("twist scalar and lambda belong to different fields");
    if (mu_.is_zero()) throw ZeroMu("twist scalar must be nonzero");
    require_valid_lambda(lambda_);
}

const char* to_string(Verdict v) { return v == Verdict::Maximal ? "Maximal" : "Minimal"; }

std::vector<uint64_t> deuring_row(uint64_t p) {
    const uint64_t m = (p - 1) / 2;
    std::vector<uint64_t> row(m + 1);
    uint64_t c = 1;
    row[0] = 1;
    for (uint64_t k = 1; k <= m; ++k) {
        // C(m,k) = C(m,k-1) * (m-k+1) / k, reduced mod p at every step
        c = static_cast<uint64_t>(static_cast<unsigned __int128>(c) * ((m - k + 1) % p) % p);
        c = static_cast<uint64_t>(static_cast<unsigned __int128>(c) * powm(k % p, p - 2, p) % p);
        row[k] = static_cast<uint64_t>(static_cast<unsigned __int128>(c) * c % p);
    }
    return row;
}

SsVerdict deuring_eval(const FieldElem& lambda) {
    require_valid_lambda(lambda);
    const FieldCtx& f = lambda.ctx();
    const uint64_t p = f.p();
    const uint64_t m = (p - 1) / 2;
    // Horner from the top coefficient down; binomials are regenerated by the
    // descending recurrence C(m,k) = C(m,k+1) * (k+1) / (m-k) so no O(p)
    // table is kept.
    uint64_t c = 1;  // C(m,m)
    FieldElem acc = f.one();
    for (uint64_t k = m; k-- > 0;) {
        c = static_cast<uint64_t>(static_cast<unsigned __int128>(c) * ((k + 1) % p) % p);
        c = static_cast<uint64_t>(static_cast<unsigned __int128>(c) * powm((m - k) % p, p - 2, p) % p);
        uint64_t c2 = static_cast<uint64_t>(static_cast<unsigned __int128>(c) * c % p);
        acc = acc * lambda + f.from_int(static_cast<int64_t>(c2));
    }
    return SsVerdict{acc.is_zero(), acc};
}

FieldElem j_invariant(const FieldElem& lambda) {
    require_valid_lambda(lambda);
    const FieldCtx& f = lambda.ctx();
    FieldElem one = f.one();
    FieldElem num = lambda * lambda - lambda + one;
    num = f.from_int(256) * num * num * num;
    FieldElem den = lambda * (lambda - one);
    return num / (den * den);
}

uint64_t count_points(const LegendreCurve& curve) {
    const FieldCtx& f = curve.ctx();
    int64_t sum = char_sum(f, curve.lambda(), nullptr);
    return static_cast<uint64_t>(static_cast<int64_t>(*f.size()) + 1 + sum);
}

uint64_t count_points(const TwistedLegendre& curve) {
    const FieldCtx& f = curve.ctx();
    FieldElem mu_inv = inv(curve.mu());
    int64_t sum = char_sum(f, curve.lambda(), &mu_inv);
    return static_cast<uint64_t>(static_cast<int64_t>(*f.size()) + 1 + sum);
}

Verdict classify_legendre(const LegendreCurve& curve) {
    require_level2(curve.ctx(), "classify_legendre");
    if (!deuring_eval(curve.lambda()).supersingular)
        throw NotSupersingular("curve is not supersingular");
    return curve.ctx().p() % 4 == 3 ? Verdict::Maximal : Verdict::Minimal;
}

Verdict classify_twist(const TwistedLegendre& curve) {
    require_level2(curve.ctx(), "classify_twist");
    if (!deuring_eval(curve.lambda()).supersingular)
        throw NotSupersingular("curve is not supersingular");
    const bool mu_square = is_square(curve.mu());
    if (curve.ctx().p() % 4 == 3)
        return mu_square ? Verdict::Maximal : Verdict::Minimal;
    return mu_square ? Verdict::Minimal : Verdict::Maximal;
}

}  // namespace ciani
