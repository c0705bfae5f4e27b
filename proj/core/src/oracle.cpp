#include "ciani/oracle.hpp"

#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

namespace ciani {
namespace {

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// chi over the quartic's field; chi(0) = 0
int chi(const FieldElem& v) {
    if (v.is_zero()) return 0;
    return is_square(v) ? 1 : -1;
}

}  // namespace

const char* to_string(HWVerdict v) {
    switch (v) {
        case HWVerdict::Maximal: return "Maximal";
        case HWVerdict::Minimal: return "Minimal";
        case HWVerdict::Neither: return "Neither";
    }
    return "?";
}

PlaneCount count_ciani_points(const CianiCurve& curve, const FieldCtxPtr& field, int workers) {
    const auto start = std::chrono::steady_clock::now();
    const FieldCtx& f = *field;
    auto qopt = f.size();
    if (!qopt || *qopt > kPlaneCountCeiling)
        throw CeilingExceeded("plane counting supports q <= " + std::to_string(kPlaneCountCeiling));
    const uint64_t q = *qopt;
    const FieldElem r = lift_into(curve.r(), f);
    const FieldElem s = lift_into(curve.s(), f);
    const FieldElem t = lift_into(curve.t(), f);
    const FieldElem one = f.one();

    std::vector<FieldElem> els;
    els.reserve(q);
    for (uint64_t k = 0; k < q; ++k) els.push_back(f.element_at(k));

    // chart (1 : y : z): F = (1 + y^4 + r y^2) + z^4 + (s y^2 + t) z^2
    const int nw = resolve_workers(workers);
    std::vector<uint64_t> partial(static_cast<size_t>(nw), 0);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nw));
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            uint64_t local = 0;
            for (uint64_t yi = static_cast<uint64_t>(w); yi < q; yi += static_cast<uint64_t>(nw)) {
                const FieldElem& y = els[yi];
                FieldElem y2 = y * y;
                FieldElem c0 = one + y2 * y2 + r * y2;
                FieldElem czz = s * y2 + t;
                for (uint64_t zi = 0; zi < q; ++zi) {
                    const FieldElem& z = els[zi];
                    FieldElem z2 = z * z;
                    FieldElem val = c0 + z2 * z2 + czz * z2;
                    if (val.is_zero()) ++local;
                }
            }
            partial[static_cast<size_t>(w)] = local;
        });
    }
    for (auto& th : pool) th.join();
    uint64_t count = 0;
    for (uint64_t v : partial) count += v;

    // chart (0 : 1 : z): 1 + z^4 + s z^2
    for (uint64_t zi = 0; zi < q; ++zi) {
        const FieldElem& z = els[zi];
        FieldElem z2 = z * z;
        if ((one + z2 * z2 + s * z2).is_zero()) ++count;
    }
    // chart (0 : 0 : 1): 1 = 0, never a point

    const auto stop = std::chrono::steady_clock::now();
    return PlaneCount{q, count, std::chrono::duration<double>(stop - start).count()};
}

HWVerdict hw_verdict(uint64_t count, uint64_t q, unsigned genus) {
    uint64_t root = isqrt_u64(q);
    if (root * root != q) throw NonSquareQ("hw_verdict: q must be a square");
    const uint64_t gap = 2 * static_cast<uint64_t>(genus) * root;
    if (count == q + 1 + gap) return HWVerdict::Maximal;
    if (count == q + 1 - gap) return HWVerdict::Minimal;
    return HWVerdict::Neither;
}

uint64_t count_quotient_curve(const CianiCurve& curve, int index) {
    if (index < 0 || index > 2) throw Error("count_quotient_curve: index must be 0, 1 or 2");
    const FieldCtx& f = curve.ctx();
    auto qopt = f.size();
    if (!qopt) throw Error("count_quotient_curve: field too large to enumerate");
    const uint64_t q = *qopt;
    const FieldElem four = f.from_int(4);
    const FieldElem r2 = curve.r() * curve.r() - four;
    const FieldElem s2 = curve.s() * curve.s() - four;
    const FieldElem t2 = curve.t() * curve.t() - four;
    auto mid = quotient_mid_terms(curve);
    FieldElem lead, last;
    switch (index) {
        case 0: lead = r2; last = t2; break;
        case 1: lead = s2; last = r2; break;
        default: lead = t2; last = s2; break;
    }
    const FieldElem m = mid[static_cast<size_t>(index)];
    const FieldElem two = f.from_int(2);
    int64_t total = static_cast<int64_t>(q) + 1 + chi(lead);  // 0 or 2 points at infinity
    for (uint64_t k = 0; k < q; ++k) {
        FieldElem u = f.element_at(k);
        FieldElem u2 = u * u;
        total += chi((lead * u2 + two * m) * u2 + last);
    }
    return static_cast<uint64_t>(total);
}

bool verify_isogeny_counts(const CianiCurve& curve) {
    if (!is_nonsingular(curve)) throw SingularCurve("verify_isogeny_counts: curve is singular");
    const FieldCtx& f = curve.ctx();
    const uint64_t q = *f.size();
    uint64_t e[3];
    for (int i = 0; i < 3; ++i) e[i] = count_quotient_curve(curve, i);
    // Jacobian splitting
    PlaneCount pc = count_ciani_points(curve, curve.ctx_ptr(), 0);
    if (pc.count + 2 * (q + 1) != e[0] + e[1] + e[2]) return false;
    // 2-isogenous twists, when they are defined over this field
    FieldElem disc = discriminant(curve);
    if (is_square(disc)) {
        MuNuData m = mu_nu_from_delta(curve, *sqrt(disc));
        std::array<const FieldElem*, 3> mu = {&m.mu1, &m.mu2, &m.mu3};
        std::array<const FieldElem*, 3> nu = {&m.nu1, &m.nu2, &m.nu3};
        for (int i = 0; i < 3; ++i) {
            if (mu[static_cast<size_t>(i)]->is_zero())
                throw ZeroMu("verify_isogeny_counts: mu vanished");
            TwistedLegendre twist(*mu[static_cast<size_t>(i)],
                                  *nu[static_cast<size_t>(i)] / *mu[static_cast<size_t>(i)]);
            if (count_points(twist) != e[i]) return false;
        }
    }
    return true;
}

}  // namespace ciani
