#include "ciani/curve.hpp"

#include <algorithm>
#include <cassert>

#include "ciani/oracle.hpp"

namespace ciani {
namespace {

void require_nonsingular(const CianiCurve& c, const char* what) {
    if (!is_nonsingular(c))
        throw SingularCurve(std::string(what) + ": curve is singular");
}

void require_level2(const CianiCurve& c, const char* what) {
    if (c.ctx().level() != 2)
        throw CtxMismatch(std::string(what) + " requires a level-2 field (F_{p^2})");
}

// Canonical square root of v, lifting one tower step when v is a non-square.
// Returns the root together with the (possibly extended) field it lives in.
FieldElem sqrt_lifting(const FieldElem& v, const FieldCtxPtr& ext) {
    if (auto root = sqrt(v)) return *root;
    FieldCtxPtr up = ext ? ext : extend(v.ctx());
    auto root = sqrt(embed(v, *up));
    assert(root);  // every element is a square one step up
    return *root;
}

}  // namespace

CianiCurve::CianiCurve(FieldElem r, FieldElem s, FieldElem t)
    : r_(std::move(r)), s_(std::move(s)), t_(std::move(t)) {
    const FieldCtx& f = r_.ctx();
    if ((&s_.ctx() != &f && !s_.ctx().same_field(f)) ||
        (&t_.ctx() != &f && !t_.ctx().same_field(f)))
        throw CtxMismatch("r, s, t must share one field");
}

const char* to_string(AutoGroupTag tag) {
    switch (tag) {
        case AutoGroupTag::D4: return "D4";
        case AutoGroupTag::D8: return "D8";
        case AutoGroupTag::G16: return "G16";
        case AutoGroupTag::S4: return "S4";
        case AutoGroupTag::G48: return "G48";
        case AutoGroupTag::G96: return "G96";
        case AutoGroupTag::G168: return "G168";
    }
    return "?";
}

FieldElem discriminant(const CianiCurve& c) {
    const FieldElem &r = c.r(), &s = c.s(), &t = c.t();
    return r * r + s * s + t * t - r * s * t - c.ctx().from_int(4);
}

bool is_nonsingular(const CianiCurve& c) {
    const FieldCtx& f = c.ctx();
    const FieldElem two = f.from_int(2), mtwo = f.from_int(-2);
    for (const FieldElem* v : {&c.r(), &c.s(), &c.t()})
        if (*v == two || *v == mtwo) return false;
    return !discriminant(c).is_zero();
}

std::array<FieldElem, 3> quotient_mid_terms(const CianiCurve& c) {
    const FieldElem &r = c.r(), &s = c.s(), &t = c.t();
    const FieldElem two = c.ctx().from_int(2);
    return {r * t - two * s, s * r - two * t, t * s - two * r};
}

std::array<FieldElem, 3> quotient_products(const CianiCurve& c) {
    const FieldCtx& f = c.ctx();
    const FieldElem four = f.from_int(4);
    FieldElem x = c.r() * c.r() - four;
    FieldElem y = c.s() * c.s() - four;
    FieldElem z = c.t() * c.t() - four;
    return {x * z, y * x, z * y};
}

SqrtTriple sqrt_triple(const CianiCurve& c) { return sqrt_triple(c, nullptr); }

SqrtTriple sqrt_triple(const CianiCurve& c, const FieldCtxPtr& ext) {
    require_nonsingular(c, "sqrt_triple");
    const FieldCtx& f = c.ctx();
    if (ext && (!ext->base() || !ext->base()->same_field(f)))
        throw CtxMismatch("sqrt_triple: ext is not the extension of the curve's field");
    const FieldElem four = f.from_int(4);
    std::array<FieldElem, 3> vals = {c.r() * c.r() - four, c.s() * c.s() - four,
                                     c.t() * c.t() - four};
    bool all_square = true;
    for (const auto& v : vals) all_square = all_square && is_square(v);
    if (all_square) {
        return SqrtTriple{*sqrt(vals[0]), *sqrt(vals[1]), *sqrt(vals[2])};
    }
    FieldCtxPtr up = ext ? ext : extend(f);
    std::array<FieldElem, 3> roots;
    for (int i = 0; i < 3; ++i) {
        FieldElem v = embed(vals[static_cast<size_t>(i)], *up);
        auto root = sqrt(v);
        assert(root);
        roots[static_cast<size_t>(i)] = *root;
    }
    return SqrtTriple{roots[0], roots[1], roots[2]};
}

LambdaTriple lambdas_from_roots(const CianiCurve& c, const SqrtTriple& roots) {
    require_nonsingular(c, "lambdas");
    const FieldCtx& rf = roots.alpha.ctx();
    auto mid = quotient_mid_terms(c);
    std::array<FieldElem, 3> a;
    for (int i = 0; i < 3; ++i) {
        const FieldElem& m = mid[static_cast<size_t>(i)];
        a[static_cast<size_t>(i)] = rf.same_field(c.ctx()) ? m : lift_into(m, rf);
    }
    std::array<FieldElem, 3> prods = {roots.gamma * roots.alpha, roots.alpha * roots.beta,
                                      roots.beta * roots.gamma};
    std::array<FieldElem, 3> lam;
    for (int i = 0; i < 3; ++i) {
        FieldElem A = a[static_cast<size_t>(i)];
        FieldElem B = prods[static_cast<size_t>(i)];
        // (A - B)(A + B) = 4 * disc != 0 on a nonsingular curve, so at most
        // one sign of B gives a vanishing denominator; switch to the other
        // root (lambda -> 1/lambda) if it does.
        if ((A + B).is_zero()) B = -B;
        lam[static_cast<size_t>(i)] = (A - B) / (A + B);
    }
    // report at the curve's own level when every lambda descends
    if (!rf.same_field(c.ctx())) {
        std::array<std::optional<FieldElem>, 3> down;
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            down[static_cast<size_t>(i)] = try_descend(lam[static_cast<size_t>(i)], c.ctx());
            ok = ok && down[static_cast<size_t>(i)].has_value();
        }
        if (ok) return LambdaTriple{*down[0], *down[1], *down[2]};
    }
    return LambdaTriple{lam[0], lam[1], lam[2]};
}

LambdaTriple lambdas(const CianiCurve& c) { return lambdas_from_roots(c, sqrt_triple(c)); }

LambdaTriple lambdas(const CianiCurve& c, const FieldCtxPtr& ext) {
    return lambdas_from_roots(c, sqrt_triple(c, ext));
}

namespace {

// sorted coordinate keys of three elements lifted into one field
std::vector<std::vector<uint64_t>> j_key(const std::array<FieldElem, 3>& js, const FieldCtx& in) {
    std::vector<std::vector<uint64_t>> keys;
    for (const FieldElem& j : js) {
        FieldElem lifted = lift_into(j, in);
        auto c = lifted.coords();
        keys.emplace_back(c.begin(), c.end());
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

CianiCurve descend_if_possible(const CianiCurve& c, const FieldCtx& down) {
    if (c.ctx().same_field(down)) return c;
    auto rd = try_descend(c.r(), down);
    auto sd = try_descend(c.s(), down);
    auto td = try_descend(c.t(), down);
    if (rd && sd && td) return CianiCurve(*rd, *sd, *td);
    return c;
}

}  // namespace

CianiCurve rst_from_lambdas(const LambdaTriple& lt) {
    const FieldCtx& f = lt.lambda1.ctx();
    if (!f.same_field(lt.lambda2.ctx()) || !f.same_field(lt.lambda3.ctx()))
        throw CtxMismatch("lambdas must share one field");
    for (const FieldElem* l : {&lt.lambda1, &lt.lambda2, &lt.lambda3})
        if (l->is_zero() || l->is_one())
            throw SingularLambda("lambda must avoid 0 and 1");
    const FieldElem &l1 = lt.lambda1, &l2 = lt.lambda2, &l3 = lt.lambda3;
    FieldElem p12 = l1 * l2, p23 = l2 * l3, p31 = l3 * l1;
    bool all_square = is_square(p12) && is_square(p23) && is_square(p31);
    FieldCtxPtr up;
    FieldElem w12, w23, w31, a1, a2, a3, one;
    if (all_square) {
        w12 = *sqrt(p12);
        w23 = *sqrt(p23);
        w31 = *sqrt(p31);
        a1 = l1; a2 = l2; a3 = l3;
        one = f.one();
    } else {
        up = extend(f);
        w12 = *sqrt(embed(p12, *up));
        w23 = *sqrt(embed(p23, *up));
        w31 = *sqrt(embed(p31, *up));
        a1 = embed(l1, *up); a2 = embed(l2, *up); a3 = embed(l3, *up);
        one = up->one();
    }
    FieldElem q12 = a1 * a2, q23 = a2 * a3, q31 = a3 * a1;
    FieldElem r = (q12 - q23 - q31 + one) / (w12 * (one - a3));
    FieldElem s = (q23 - q31 - q12 + one) / (w23 * (one - a1));
    FieldElem t = (q31 - q12 - q23 + one) / (w31 * (one - a2));
    // The three roots are not independent: w12*w23*w31 = +-(l1 l2 l3), and
    // the sign picks one of two inequivalent sign classes for (r, s, t), only
    // one of which has the given lambdas. Flipping one root (negating s)
    // switches classes; choose by matching the j-invariant multiset.
    std::array<FieldElem, 3> want = {j_invariant(l1), j_invariant(l2), j_invariant(l3)};
    const FieldCtx& cf = r.ctx();
    auto want_key = j_key(want, cf);
    for (const CianiCurve& cand : {CianiCurve(r, s, t), CianiCurve(r, -s, t)}) {
        if (!is_nonsingular(cand)) continue;
        if (j_key(lambda_j_invariants(cand), cf) == want_key)
            return descend_if_possible(cand, f);
    }
    // no preimage among either class: return the plain-root evaluation
    return descend_if_possible(CianiCurve(r, s, t), f);
}

MuNuData mu_nu_from_delta(const CianiCurve& c, const FieldElem& delta) {
    require_nonsingular(c, "mu_nu");
    const FieldCtx& df = delta.ctx();
    auto mid = quotient_mid_terms(c);
    std::array<FieldElem, 3> a;
    for (int i = 0; i < 3; ++i) {
        const FieldElem& m = mid[static_cast<size_t>(i)];
        a[static_cast<size_t>(i)] = df.same_field(c.ctx()) ? m : lift_into(m, df);
    }
    FieldElem two_delta = delta + delta;
    return MuNuData{delta,
                    a[0] + two_delta, a[0] - two_delta,
                    a[1] + two_delta, a[1] - two_delta,
                    a[2] + two_delta, a[2] - two_delta};
}

MuNuData mu_nu(const CianiCurve& c) { return mu_nu(c, nullptr); }

MuNuData mu_nu(const CianiCurve& c, const FieldCtxPtr& ext) {
    require_nonsingular(c, "mu_nu");
    FieldElem delta = sqrt_lifting(discriminant(c), ext);
    return mu_nu_from_delta(c, delta);
}

namespace {

// Even-part evaluation of N = sum_k row[k] (A - X)^k (A + X)^{m-k} over the
// ring F[X]/(X^2 - P). The Deuring row is palindromic, so N is fixed by
// X -> -X and lies in F; N vanishes iff H_p(lambda) does, for either root
// choice of B = sqrt(P).
struct RingPair {
    FieldElem u, v;  // u + v*X
};

FieldElem deuring_even_part(const FieldElem& A, const FieldElem& P,
                            std::span<const uint64_t> row) {
    const FieldCtx& f = A.ctx();
    const size_t m = row.size() - 1;
    auto mul = [&](const RingPair& x, const RingPair& y) {
        return RingPair{x.u * y.u + P * (x.v * y.v), x.u * y.v + x.v * y.u};
    };
    const RingPair lo{A, f.from_int(-1)};  // A - X
    const RingPair hi{A, f.one()};         // A + X
    std::vector<RingPair> hp;
    hp.reserve(m + 1);
    hp.push_back(RingPair{f.one(), f.zero()});
    for (size_t k = 1; k <= m; ++k) hp.push_back(mul(hp.back(), hi));
    RingPair acc{f.from_int(static_cast<int64_t>(row[m])), f.zero()};
    for (size_t k = m; k-- > 0;) {
        acc = mul(acc, lo);
        FieldElem ck = f.from_int(static_cast<int64_t>(row[k]));
        acc.u = acc.u + ck * hp[m - k].u;
        acc.v = acc.v + ck * hp[m - k].v;
    }
    assert(acc.v.is_zero());
    return acc.u;
}

}  // namespace

bool is_superspecial(const CianiCurve& c) {
    return is_superspecial(c, deuring_row(c.ctx().p()));
}

bool is_superspecial(const CianiCurve& c, std::span<const uint64_t> row) {
    require_nonsingular(c, "is_superspecial");
    auto mid = quotient_mid_terms(c);
    auto prod = quotient_products(c);
    for (int i = 0; i < 3; ++i) {
        if (!deuring_even_part(mid[static_cast<size_t>(i)], prod[static_cast<size_t>(i)], row)
                 .is_zero())
            return false;
    }
    return true;
}

FieldDescent check_field_descent(const CianiCurve& c) {
    require_nonsingular(c, "check_field_descent");
    require_level2(c, "check_field_descent");
    if (!is_superspecial(c)) throw NotSuperspecial("check_field_descent: curve is not superspecial");
    FieldElem disc = discriminant(c);
    FieldDescent out{};
    if (is_square(disc)) {
        out = check_field_descent(c, mu_nu_from_delta(c, *sqrt(disc)));
    } else {
        out = check_field_descent(c, mu_nu(c));  // delta forced one level up
    }
    return out;
}

FieldDescent check_field_descent(const CianiCurve& c, const MuNuData& munu) {
    require_nonsingular(c, "check_field_descent");
    require_level2(c, "check_field_descent");
    if (!is_superspecial(c)) throw NotSuperspecial("check_field_descent: curve is not superspecial");
    const FieldCtx& f = c.ctx();
    FieldDescent d{};
    // (a) alpha*beta etc. descend iff their squares are squares in F_{p^2}
    auto prods = quotient_products(c);
    d.products_descend = is_square(prods[0]) && is_square(prods[1]) && is_square(prods[2]);
    // (b)
    d.delta_descends = is_square(discriminant(c));
    // (c) the three ratios of (r^2-4), (s^2-4), (t^2-4)
    const FieldElem four = f.from_int(4);
    FieldElem x = c.r() * c.r() - four;
    FieldElem y = c.s() * c.s() - four;
    FieldElem z = c.t() * c.t() - four;
    d.ratios_are_fourth_powers =
        is_fourth_power(x / z) && is_fourth_power(y / x) && is_fourth_power(z / y);
    // (d) squareness of mu_1, mu_2, mu_3 agrees, judged in F_{p^2}
    std::array<const FieldElem*, 3> mus = {&munu.mu1, &munu.mu2, &munu.mu3};
    if (munu.delta.ctx().same_field(f)) {
        bool s1 = is_square(*mus[0]);
        d.mu_squareness_consistent = s1 == is_square(*mus[1]) && s1 == is_square(*mus[2]);
    } else {
        std::array<std::optional<FieldElem>, 3> down;
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            down[static_cast<size_t>(i)] = try_descend(*mus[static_cast<size_t>(i)], f);
            ok = ok && down[static_cast<size_t>(i)].has_value();
        }
        if (!ok) {
            d.mu_squareness_consistent = false;
        } else {
            bool s1 = is_square(*down[0]);
            d.mu_squareness_consistent = s1 == is_square(*down[1]) && s1 == is_square(*down[2]);
        }
    }
    return d;
}

Verdict classify_from_munu(const CianiCurve& c, const MuNuData& munu) {
    require_level2(c, "classify");
    const FieldCtx& f = c.ctx();
    std::array<FieldElem, 3> mu, nu;
    if (munu.delta.ctx().same_field(f)) {
        mu = {munu.mu1, munu.mu2, munu.mu3};
        nu = {munu.nu1, munu.nu2, munu.nu3};
    } else {
        std::array<const FieldElem*, 6> vals = {&munu.mu1, &munu.mu2, &munu.mu3,
                                                &munu.nu1, &munu.nu2, &munu.nu3};
        std::array<FieldElem, 6> down;
        for (int i = 0; i < 6; ++i) {
            auto v = try_descend(*vals[static_cast<size_t>(i)], f);
            if (!v)
                throw InvariantViolation(
                    "classify: Delta failed to descend to F_{p^2} on a superspecial curve");
            down[static_cast<size_t>(i)] = *v;
        }
        mu = {down[0], down[1], down[2]};
        nu = {down[3], down[4], down[5]};
    }
    const bool s1 = is_square(mu[0]);
    if (s1 != is_square(mu[1]) || s1 != is_square(mu[2]))
        throw InvariantViolation("classify: mu squareness disagrees across i (Lemma 4.5 failure)");
    if (s1 != is_square(nu[0]))
        throw InvariantViolation("classify: verdict not invariant under the Delta sign flip");
    if (f.p() % 4 == 3) return s1 ? Verdict::Maximal : Verdict::Minimal;
    return s1 ? Verdict::Minimal : Verdict::Maximal;
}

Verdict classify(const CianiCurve& c) {
    require_nonsingular(c, "classify");
    require_level2(c, "classify");
    if (!is_superspecial(c)) throw NotSuperspecial("classify: curve is not superspecial");
    return classify_from_munu(c, mu_nu(c));
}

Verdict classify_ext(const CianiCurve& c, uint64_t e) {
    if (e == 0) throw Error("classify_ext: e must be positive");
    require_nonsingular(c, "classify_ext");
    require_level2(c, "classify_ext");
    if (!is_superspecial(c)) throw NotSuperspecial("classify_ext: curve is not superspecial");
    if (e % 2 == 0) return Verdict::Minimal;
    return classify(c);
}

std::vector<CianiCurve> equivalent_triples(const CianiCurve& c) {
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static constexpr int signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    std::array<FieldElem, 3> v = {c.r(), c.s(), c.t()};
    std::vector<CianiCurve> out;
    out.reserve(24);
    for (const auto& sg : signs) {
        std::array<FieldElem, 3> w = {sg[0] > 0 ? v[0] : -v[0], sg[1] > 0 ? v[1] : -v[1],
                                      sg[2] > 0 ? v[2] : -v[2]};
        for (const auto& pm : perms)
            out.emplace_back(w[static_cast<size_t>(pm[0])], w[static_cast<size_t>(pm[1])],
                             w[static_cast<size_t>(pm[2])]);
    }
    return out;
}

AutoGroupTag type_classify(const CianiCurve& c) {
    require_nonsingular(c, "type_classify");
    const FieldCtx& f = c.ctx();
    const bool g96 = c.r().is_zero() && c.s().is_zero() && c.t().is_zero();
    const FieldElem three = f.from_int(3), eighteen = f.from_int(18), m12 = f.from_int(-12);
    bool g168 = false, g48 = false, s4 = false, g16 = false, d8 = false;
    for (const CianiCurve& img : equivalent_triples(c)) {
        const FieldElem &x = img.r(), &y = img.s(), &z = img.t();
        if (x == y && y == z) {
            s4 = true;
            // (w, w, w) with w^2 + 3w + 18 = 0; w = 0 degenerates into the
            // [0,0,0] pattern at small characteristics and is excluded here
            if (!x.is_zero() && (x * x + three * x + eighteen).is_zero()) g168 = true;
        }
        if (x.is_zero() && z.is_zero() && !y.is_zero()) {
            g16 = true;
            if (y * y == m12) g48 = true;  // y = +- 2 sqrt(-3)
        }
        if (x == z) d8 = true;
    }
    if (g168) return AutoGroupTag::G168;
    if (g96) return AutoGroupTag::G96;
    if (g48) return AutoGroupTag::G48;
    if (s4) return AutoGroupTag::S4;
    if (g16) return AutoGroupTag::G16;
    if (d8) return AutoGroupTag::D8;
    return AutoGroupTag::D4;
}

CianiCurve d8_standard_form(const FieldElem& r, const FieldElem& s) {
    const FieldCtx& f = r.ctx();
    if (&s.ctx() != &f && !s.ctx().same_field(f))
        throw CtxMismatch("r and s must share one field");
    const FieldElem two = f.from_int(2);
    FieldElem v = s + two;
    if (v.is_zero()) throw DegenerateS("d8_standard_form: s = -2");
    FieldElem b = two - f.from_int(16) / v;
    FieldElem w = sqrt_lifting(v, nullptr);
    FieldElem a, bb;
    if (w.ctx().same_field(f)) {
        a = r / w;
        bb = b;
    } else {
        a = embed(r, w.ctx()) / w;
        bb = embed(b, w.ctx());
    }
    CianiCurve out(a, bb, a);
    if (!is_nonsingular(out))
        throw SingularResult("d8_standard_form: resulting triple is singular");
    return out;
}

std::array<TwistedLegendre, 3> isogenous_twists(const CianiCurve& c) {
    require_nonsingular(c, "isogenous_twists");
    MuNuData m = mu_nu(c);
    std::array<const FieldElem*, 3> mu = {&m.mu1, &m.mu2, &m.mu3};
    std::array<const FieldElem*, 3> nu = {&m.nu1, &m.nu2, &m.nu3};
    for (int i = 0; i < 3; ++i)
        if (mu[static_cast<size_t>(i)]->is_zero())
            throw ZeroMu("isogenous_twists: mu vanished");
    return {TwistedLegendre(*mu[0], *nu[0] / *mu[0]), TwistedLegendre(*mu[1], *nu[1] / *mu[1]),
            TwistedLegendre(*mu[2], *nu[2] / *mu[2])};
}

std::array<FieldElem, 3> lambda_j_invariants(const CianiCurve& c) {
    require_nonsingular(c, "lambda_j_invariants");
    const FieldCtx& f = c.ctx();
    auto mid = quotient_mid_terms(c);
    auto prod = quotient_products(c);
    const FieldElem k64 = f.from_int(64), three = f.from_int(3);
    std::array<FieldElem, 3> out;
    for (int i = 0; i < 3; ++i) {
        FieldElem a2 = mid[static_cast<size_t>(i)] * mid[static_cast<size_t>(i)];
        const FieldElem& P = prod[static_cast<size_t>(i)];
        FieldElem num = a2 + three * P;
        FieldElem dif = a2 - P;  // = 4 * discriminant, nonzero
        out[static_cast<size_t>(i)] = k64 * num * num * num / (P * dif * dif);
    }
    return out;
}

AnalysisReport analyze(const CianiCurve& c, bool with_oracle) {
    AnalysisReport rep = {c,            false,        std::nullopt, std::nullopt,
                          std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    rep.nonsingular = is_nonsingular(c);
    if (!rep.nonsingular) return rep;
    rep.auto_group = type_classify(c);
    rep.lambda = lambdas(c);
    bool ss = is_superspecial(c);
    // cross-check the in-field test against the lambda-level evaluation
    bool ss_direct = deuring_eval(rep.lambda->lambda1).supersingular &&
                     deuring_eval(rep.lambda->lambda2).supersingular &&
                     deuring_eval(rep.lambda->lambda3).supersingular;
    if (ss != ss_direct)
        throw InvariantViolation("analyze: superspeciality tests disagree");
    rep.superspecial = ss;
    if (ss && c.ctx().level() == 2) {
        MuNuData m = mu_nu(c);
        if (!m.delta.ctx().same_field(c.ctx()))
            throw InvariantViolation("analyze: Delta failed to descend on a superspecial curve");
        rep.verdict = classify_from_munu(c, m);
        rep.munu = std::move(m);
        FieldDescent d = check_field_descent(c, *rep.munu);
        if (!d.all())
            throw InvariantViolation("analyze: field-descent bundle failed on a superspecial curve");
    }
    if (with_oracle) {
        PlaneCount pc = count_ciani_points(c, c.ctx_ptr(), 0);
        rep.oracle_count = pc.count;
        if (rep.verdict) {
            const uint64_t q = *c.ctx().size();
            const uint64_t expect = *rep.verdict == Verdict::Maximal
                                        ? q + 1 + 6 * c.ctx().p()
                                        : q + 1 - 6 * c.ctx().p();
            if (pc.count != expect)
                throw InvariantViolation("analyze: oracle count disagrees with the verdict");
        }
    }
    return rep;
}

}  // namespace ciani
