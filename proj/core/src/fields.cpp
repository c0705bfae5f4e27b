#include "ciani/fields.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstring>
#include <map>
#include <mutex>

namespace ciani {
namespace {

inline uint64_t addm(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;  // p < 2^61, no wrap
    return s >= p ? s - p : s;
}

inline uint64_t subm(uint64_t a, uint64_t b, uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline uint64_t negm(uint64_t a, uint64_t p) { return a == 0 ? 0 : p - a; }

inline uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

uint64_t powm(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a % p);
    while (nr != 0) {
        int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw DivisionByZero("inverse of a non-unit");
    return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(p)) : static_cast<uint64_t>(t);
}

// ---- little-endian limb vectors for exponents up to p^8 - 1 ----

void limbs_mul_u64(std::vector<uint64_t>& v, uint64_t m) {
    unsigned __int128 carry = 0;
    for (auto& limb : v) {
        unsigned __int128 cur = static_cast<unsigned __int128>(limb) * m + carry;
        limb = static_cast<uint64_t>(cur);
        carry = cur >> 64;
    }
    if (carry) v.push_back(static_cast<uint64_t>(carry));
}

void limbs_sub1(std::vector<uint64_t>& v) {
    for (auto& limb : v) {
        if (limb != 0) {
            --limb;
            return;
        }
        limb = ~uint64_t{0};
    }
}

void limbs_add1(std::vector<uint64_t>& v) {
    for (auto& limb : v) {
        if (++limb != 0) return;
    }
    v.push_back(1);
}

void limbs_shr(std::vector<uint64_t>& v, int s) {
    while (s >= 64) {
        v.erase(v.begin());
        if (v.empty()) v.push_back(0);
        s -= 64;
    }
    if (s == 0) return;
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] >>= s;
        if (i + 1 < v.size()) v[i] |= v[i + 1] << (64 - s);
    }
}

int limbs_trailing_zeros(const std::vector<uint64_t>& v) {
    int n = 0;
    for (uint64_t limb : v) {
        if (limb == 0) {
            n += 64;
            continue;
        }
        return n + std::countr_zero(limb);
    }
    return n;
}

int limbs_top_bit(std::span<const uint64_t> v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[static_cast<size_t>(i)])
            return i * 64 + 63 - std::countl_zero(v[static_cast<size_t>(i)]);
    return -1;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powm(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1 && composite; ++i) {
            x = mulm(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

// ---------------------------------------------------------------- kernels

void FieldCtx::raw_add(const uint64_t* a, const uint64_t* b, uint64_t* out) const {
    for (int i = 0; i < level_; ++i) out[i] = addm(a[i], b[i], p_);
}

void FieldCtx::raw_sub(const uint64_t* a, const uint64_t* b, uint64_t* out) const {
    for (int i = 0; i < level_; ++i) out[i] = subm(a[i], b[i], p_);
}

void FieldCtx::raw_neg(const uint64_t* a, uint64_t* out) const {
    for (int i = 0; i < level_; ++i) out[i] = negm(a[i], p_);
}

void FieldCtx::raw_mul(const uint64_t* a, const uint64_t* b, uint64_t* out) const {
    if (level_ == 1) {
        out[0] = mulm(a[0], b[0], p_);
        return;
    }
    // (A + Bw)(C + Dw) = (AC + d*BD) + (AD + BC)w, via Karatsuba
    const int h = level_ / 2;
    const FieldCtx* base = base_.get();
    uint64_t t1[4], t2[4], t3[4], sa[4], sb[4], dt[4];
    base->raw_mul(a, b, t1);
    base->raw_mul(a + h, b + h, t2);
    base->raw_add(a, a + h, sa);
    base->raw_add(b, b + h, sb);
    base->raw_mul(sa, sb, t3);
    base->raw_sub(t3, t1, t3);
    base->raw_sub(t3, t2, t3);
    base->raw_mul(t2, step_d_.data(), dt);
    base->raw_add(t1, dt, out);
    std::copy(t3, t3 + h, out + h);
}

void FieldCtx::raw_sqr(const uint64_t* a, uint64_t* out) const {
    if (level_ == 1) {
        out[0] = mulm(a[0], a[0], p_);
        return;
    }
    const int h = level_ / 2;
    const FieldCtx* base = base_.get();
    uint64_t t1[4], t2[4], t3[4], dt[4];
    base->raw_sqr(a, t1);
    base->raw_sqr(a + h, t2);
    base->raw_mul(a, a + h, t3);
    base->raw_mul(t2, step_d_.data(), dt);
    base->raw_add(t1, dt, out);
    base->raw_add(t3, t3, out + h);
}

void FieldCtx::raw_inv(const uint64_t* a, uint64_t* out) const {
    if (level_ == 1) {
        out[0] = inv_mod(a[0], p_);
        return;
    }
    // (A + Bw)^-1 = (A - Bw) / (A^2 - d*B^2); the norm is nonzero since d is
    // a non-square one level down.
    const int h = level_ / 2;
    const FieldCtx* base = base_.get();
    uint64_t t1[4], t2[4], t3[4];
    base->raw_sqr(a, t1);
    base->raw_sqr(a + h, t2);
    base->raw_mul(t2, step_d_.data(), t3);
    base->raw_sub(t1, t3, t1);
    base->raw_inv(t1, t2);
    base->raw_mul(a, t2, out);
    base->raw_mul(a + h, t2, t3);
    base->raw_neg(t3, out + h);
}

void FieldCtx::raw_frob(const uint64_t* a, uint64_t* out) const {
    if (level_ == 1) {
        out[0] = a[0];
        return;
    }
    // (A + Bw)^p = A^p + B^p * w^p and w^p = d^((p-1)/2) * w.
    const int h = level_ / 2;
    const FieldCtx* base = base_.get();
    uint64_t fb[4];
    base->raw_frob(a, out);
    base->raw_frob(a + h, fb);
    base->raw_mul(fb, frob_c_.data(), out + h);
}

bool FieldCtx::raw_is_zero(const uint64_t* a) const {
    for (int i = 0; i < level_; ++i)
        if (a[i]) return false;
    return true;
}

bool FieldCtx::raw_is_one(const uint64_t* a) const {
    if (a[0] != 1) return false;
    for (int i = 1; i < level_; ++i)
        if (a[i]) return false;
    return true;
}

void FieldCtx::raw_pow(const uint64_t* a, std::span<const uint64_t> e_limbs, uint64_t* out) const {
    int top = limbs_top_bit(e_limbs);
    if (top < 0) {
        out[0] = 1 % p_;
        for (int i = 1; i < level_; ++i) out[i] = 0;
        return;
    }
    uint64_t r[8], t[8];
    std::copy(a, a + level_, r);
    for (int bit = top - 1; bit >= 0; --bit) {
        raw_sqr(r, t);
        std::copy(t, t + level_, r);
        if ((e_limbs[static_cast<size_t>(bit) / 64] >> (bit % 64)) & 1) {
            raw_mul(r, a, t);
            std::copy(t, t + level_, r);
        }
    }
    std::copy(r, r + level_, out);
}

bool FieldCtx::raw_is_square(const uint64_t* a) const {
    if (raw_is_zero(a)) return true;
    // Norm down to F_p, then Euler's criterion there:
    // x^((q-1)/2) = N(x)^((p-1)/2) because (q-1)/2 = [(q-1)/(p-1)] * (p-1)/2.
    uint64_t acc[8], t[8], f[8];
    std::copy(a, a + level_, acc);
    std::copy(a, a + level_, t);
    for (int k = 1; k < level_; ++k) {
        raw_frob(t, f);
        std::copy(f, f + level_, t);
        raw_mul(acc, t, f);
        std::copy(f, f + level_, acc);
    }
    for (int i = 1; i < level_; ++i) assert(acc[i] == 0);
    return powm(acc[0], (p_ - 1) / 2, p_) == 1;
}

// ---------------------------------------------------------------- context

namespace {

// Interning registry: one context per (p, level, d-chain) for the life of
// the process. Elements hold plain pointers into it.
struct CtxKey {
    uint64_t p;
    int level;
    std::vector<uint64_t> chain;  // step constants bottom-up, concatenated
    bool operator<(const CtxKey& o) const {
        if (p != o.p) return p < o.p;
        if (level != o.level) return level < o.level;
        return chain < o.chain;
    }
};

std::map<CtxKey, FieldCtxPtr>& ctx_registry() {
    static std::map<CtxKey, FieldCtxPtr> reg;
    return reg;
}

std::mutex& ctx_registry_mutex() {
    static std::mutex m;
    return m;
}

void append_chain(const FieldCtx* ctx, std::vector<uint64_t>& chain) {
    if (!ctx || ctx->level() == 1) return;
    append_chain(ctx->base().get(), chain);
    auto d = ctx->step_constant();
    chain.insert(chain.end(), d.coords().begin(), d.coords().end());
}

}  // namespace

FieldCtxPtr FieldCtx::intern(uint64_t p, int level, const FieldCtxPtr& base,
                             const std::array<uint64_t, 8>& step_d) {
    CtxKey key{p, level, {}};
    if (base) {
        append_chain(base.get(), key.chain);
        key.chain.insert(key.chain.end(), step_d.begin(), step_d.begin() + level / 2);
    }
    std::lock_guard<std::mutex> lock(ctx_registry_mutex());
    auto& reg = ctx_registry();
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;
    auto ctx = std::make_shared<FieldCtx>(Key{}, p, base, step_d, level);
    reg.emplace(std::move(key), ctx);
    return ctx;
}

FieldCtx::FieldCtx(Key, uint64_t p, FieldCtxPtr base, std::array<uint64_t, 8> step_d, int level)
    : p_(p), level_(level), base_(std::move(base)), step_d_(step_d) {
    if (level_ >= 2) {
        // frobenius constant: w^(p-1) = d^((p-1)/2), computed one level down
        std::array<uint64_t, 1> e{(p_ - 1) / 2};
        base_->raw_pow(step_d_.data(), e, frob_c_.data());
    }
    // lexicographically smallest non-square at this level
    for (uint64_t k = 1;; ++k) {
        std::array<uint64_t, 8> c{};
        uint64_t idx = k;
        for (int i = level_ - 1; i >= 0; --i) {
            c[static_cast<size_t>(i)] = idx % p_;
            idx /= p_;
        }
        if (!raw_is_square(c.data())) {
            nqr_ = c;
            break;
        }
    }
    // Tonelli-Shanks setup: q - 1 = 2^s * t
    std::vector<uint64_t> qm1{1};
    for (int i = 0; i < level_; ++i) limbs_mul_u64(qm1, p_);
    limbs_sub1(qm1);
    ts_s_ = limbs_trailing_zeros(qm1);
    ts_t_ = qm1;
    limbs_shr(ts_t_, ts_s_);
    ts_thalf_ = ts_t_;
    limbs_shr(ts_thalf_, 1);
    limbs_add1(ts_thalf_);
    raw_pow(nqr_.data(), ts_t_, ts_z_.data());
}

FieldElem FieldCtx::step_constant() const {
    if (level_ < 2) throw Error("level-1 field has no step constant");
    return base_->wrap(step_d_);
}

FieldElem FieldCtx::nonresidue() const { return wrap(nqr_); }

std::optional<uint64_t> FieldCtx::size() const {
    unsigned __int128 q = 1;
    for (int i = 0; i < level_; ++i) {
        q *= p_;
        if (q > ~uint64_t{0}) return std::nullopt;
    }
    return static_cast<uint64_t>(q);
}

FieldElem FieldCtx::zero() const { return wrap({}); }

FieldElem FieldCtx::one() const {
    std::array<uint64_t, 8> c{};
    c[0] = 1;
    return wrap(c);
}

FieldElem FieldCtx::from_int(int64_t v) const {
    std::array<uint64_t, 8> c{};
    int64_t m = v % static_cast<int64_t>(p_);
    if (m < 0) m += static_cast<int64_t>(p_);
    c[0] = static_cast<uint64_t>(m);
    return wrap(c);
}

FieldElem FieldCtx::from_coords(std::span<const uint64_t> coords) const {
    if (coords.size() != static_cast<size_t>(level_))
        throw Error("coordinate vector length does not match the field level");
    std::array<uint64_t, 8> c{};
    for (int i = 0; i < level_; ++i) c[static_cast<size_t>(i)] = coords[static_cast<size_t>(i)] % p_;
    return wrap(c);
}

FieldElem FieldCtx::element_at(uint64_t index) const {
    std::array<uint64_t, 8> c{};
    for (int i = level_ - 1; i >= 0; --i) {
        c[static_cast<size_t>(i)] = index % p_;
        index /= p_;
    }
    if (index != 0) throw Error("element index out of range");
    return wrap(c);
}

uint64_t FieldCtx::index_of(const FieldElem& x) const {
    if (!same_field(x.ctx())) throw CtxMismatch("index_of: element from a different field");
    if (!size()) throw Error("index_of: field too large for 64-bit indexing");
    uint64_t idx = 0;
    for (int i = 0; i < level_; ++i) idx = idx * p_ + x.coord(i);
    return idx;
}

bool FieldCtx::same_field(const FieldCtx& other) const {
    if (this == &other) return true;
    if (p_ != other.p_ || level_ != other.level_) return false;
    if (level_ == 1) return true;
    const int h = level_ / 2;
    for (int i = 0; i < h; ++i)
        if (step_d_[static_cast<size_t>(i)] != other.step_d_[static_cast<size_t>(i)]) return false;
    return base_->same_field(*other.base_);
}

namespace {

const FieldCtx& common_ctx(const FieldElem& a, const FieldElem& b) {
    const FieldCtx& ca = a.ctx();
    const FieldCtx& cb = b.ctx();
    if (&ca != &cb && !ca.same_field(cb))
        throw CtxMismatch("operands belong to different fields");
    return ca;
}

}  // namespace

// ---------------------------------------------------------------- elements

FieldCtxPtr FieldElem::ctx_ptr() const { return ctx_->shared_from_this(); }

int FieldElem::level() const { return ctx_->level(); }

std::span<const uint64_t> FieldElem::coords() const {
    return {c_.data(), static_cast<size_t>(ctx_->level())};
}

bool FieldElem::is_zero() const { return ctx_->raw_is_zero(c_.data()); }
bool FieldElem::is_one() const { return ctx_->raw_is_one(c_.data()); }

bool operator==(const FieldElem& a, const FieldElem& b) {
    if (a.ctx_ == nullptr || b.ctx_ == nullptr) return a.ctx_ == b.ctx_;
    if (a.ctx_ != b.ctx_ && !a.ctx_->same_field(*b.ctx_)) return false;
    for (int i = 0; i < a.ctx_->level(); ++i)
        if (a.c_[static_cast<size_t>(i)] != b.c_[static_cast<size_t>(i)]) return false;
    return true;
}

FieldElem FieldElem::operator-() const {
    std::array<uint64_t, 8> out{};
    ctx_->raw_neg(c_.data(), out.data());
    return FieldElem(ctx_, out);
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    const FieldCtx& f = common_ctx(a, b);
    std::array<uint64_t, 8> out{};
    f.raw_add(a.c_.data(), b.c_.data(), out.data());
    return FieldElem(&a.ctx(), out);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    const FieldCtx& f = common_ctx(a, b);
    std::array<uint64_t, 8> out{};
    f.raw_sub(a.c_.data(), b.c_.data(), out.data());
    return FieldElem(&a.ctx(), out);
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    const FieldCtx& f = common_ctx(a, b);
    std::array<uint64_t, 8> out{};
    f.raw_mul(a.c_.data(), b.c_.data(), out.data());
    return FieldElem(&a.ctx(), out);
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * inv(b); }

// ---------------------------------------------------------------- free ops

FieldCtxPtr make_field(uint64_t p, int level, std::optional<uint64_t> d_override) {
    if (p > kMaxPrime) throw Error("p exceeds the supported range (p < 2^61)");
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw CompositeModulus("p must be an odd prime >= 3");
    if (level != 1 && level != 2 && level != 4)
        throw Error("level must be 1, 2 or 4");
    if (d_override) {
        uint64_t d = *d_override % p;
        if (d == 0 || powm(d, (p - 1) / 2, p) != p - 1)
            throw NotANonResidue("d_override is not a quadratic non-residue mod p");
        d_override = d;
    }
    FieldCtxPtr ctx = FieldCtx::intern(p, 1, nullptr, {});
    if (level == 1) return ctx;
    std::array<uint64_t, 8> d{};
    d[0] = d_override ? *d_override : ctx->nonresidue().coord(0);
    FieldCtxPtr up = FieldCtx::intern(p, 2, ctx, d);
    if (level == 2) return up;
    return extend(up);
}

FieldCtxPtr extend(const FieldCtx& ctx) {
    if (ctx.level() * 2 > kMaxTowerLevel)
        throw Error("field tower depth exceeds the supported height");
    std::array<uint64_t, 8> d{};
    auto nqr = ctx.nonresidue();
    std::copy(nqr.coords().begin(), nqr.coords().end(), d.begin());
    return FieldCtx::intern(ctx.p(), ctx.level() * 2, ctx.shared_from_this(), d);
}

FieldCtxPtr extend(const FieldCtxPtr& ctx) { return extend(*ctx); }

FieldElem inv(const FieldElem& x) {
    if (x.is_zero()) throw DivisionByZero("inverse of zero");
    const FieldCtx& f = x.ctx();
    std::array<uint64_t, 8> out{};
    f.raw_inv(x.coords().data(), out.data());
    return f.wrap(out);
}

FieldElem pow(const FieldElem& x, uint64_t e) {
    const FieldCtx& f = x.ctx();
    std::array<uint64_t, 8> out{};
    std::array<uint64_t, 1> limbs{e};
    f.raw_pow(x.coords().data(), limbs, out.data());
    return f.wrap(out);
}

FieldElem frobenius(const FieldElem& x) {
    const FieldCtx& f = x.ctx();
    std::array<uint64_t, 8> out{};
    f.raw_frob(x.coords().data(), out.data());
    return f.wrap(out);
}

bool is_square(const FieldElem& x) { return x.ctx().raw_is_square(x.coords().data()); }

bool is_fourth_power(const FieldElem& x) {
    const FieldCtx& f = x.ctx();
    if (x.is_zero()) return true;
    if (f.level() == 1) {
        if (f.p() % 4 != 1)
            throw FourDoesNotDivideGroupOrder("4 does not divide p - 1");
        return powm(x.coord(0), (f.p() - 1) / 4, f.p()) == 1;
    }
    // Relative norm down to F_{p^2}, then one 128-bit exponentiation:
    // (q-1)/4 = [(q-1)/(p^2-1)] * (p^2-1)/4.
    uint64_t acc[8], t[8], tmp[8];
    const auto xs = x.coords();
    std::copy(xs.begin(), xs.end(), acc);
    std::copy(xs.begin(), xs.end(), t);
    for (int k = 1; k < f.level() / 2; ++k) {
        f.raw_frob(t, tmp);
        f.raw_frob(tmp, t);
        f.raw_mul(acc, t, tmp);
        std::copy(tmp, tmp + f.level(), acc);
    }
    const FieldCtx* f2 = &f;
    while (f2->level() > 2) f2 = f2->base().get();
    for (int i = 2; i < f.level(); ++i) assert(acc[i] == 0);
    unsigned __int128 e = (static_cast<unsigned __int128>(f.p()) * f.p() - 1) / 4;
    std::array<uint64_t, 2> limbs{static_cast<uint64_t>(e), static_cast<uint64_t>(e >> 64)};
    uint64_t r[8];
    f2->raw_pow(acc, limbs, r);
    return f2->raw_is_one(r);
}

std::optional<FieldElem> sqrt(const FieldElem& x) {
    const FieldCtx& f = x.ctx();
    if (x.is_zero()) return x;
    if (!is_square(x)) return std::nullopt;
    // Tonelli-Shanks in the cyclic group of order q - 1 = 2^s * t.
    uint64_t b[8], y[8], z[8], t[8];
    f.raw_pow(x.coords().data(), f.ts_t_, b);
    f.raw_pow(x.coords().data(), f.ts_thalf_, y);  // x^((t+1)/2), so y^2 = x * b
    std::copy(f.ts_z_.begin(), f.ts_z_.begin() + f.level(), z);
    int r = f.ts_s_;
    while (!f.raw_is_one(b)) {
        uint64_t c[8];
        std::copy(b, b + f.level(), c);
        int m = 0;
        while (!f.raw_is_one(c)) {
            f.raw_sqr(c, t);
            std::copy(t, t + f.level(), c);
            ++m;
        }
        uint64_t g[8];
        std::copy(z, z + f.level(), g);
        for (int i = 0; i < r - m - 1; ++i) {
            f.raw_sqr(g, t);
            std::copy(t, t + f.level(), g);
        }
        f.raw_mul(y, g, t);
        std::copy(t, t + f.level(), y);
        f.raw_sqr(g, z);
        f.raw_mul(b, z, t);
        std::copy(t, t + f.level(), b);
        r = m;
    }
    std::array<uint64_t, 8> root{};
    std::copy(y, y + f.level(), root.begin());
    FieldElem pos = f.wrap(root);
    FieldElem neg = -pos;
    return canonical_less(pos, neg) ? pos : neg;
}

FieldElem embed(const FieldElem& x, const FieldCtx& target) {
    if (!target.base() || !target.base()->same_field(x.ctx()))
        throw CtxMismatch("embed: target is not one tower step above the element");
    std::array<uint64_t, 8> c{};
    std::copy(x.coords().begin(), x.coords().end(), c.begin());
    return target.from_coords({c.data(), static_cast<size_t>(target.level())});
}

FieldElem embed(const FieldElem& x, const FieldCtxPtr& target) { return embed(x, *target); }

std::optional<FieldElem> try_descend(const FieldElem& x, const FieldCtx& target) {
    const FieldCtx& f = x.ctx();
    if (!f.base() || !f.base()->same_field(target))
        throw CtxMismatch("try_descend: target is not one tower step below the element");
    const int h = f.level() / 2;
    for (int i = h; i < f.level(); ++i)
        if (x.coord(i) != 0) return std::nullopt;
    return target.from_coords(x.coords().subspan(0, static_cast<size_t>(h)));
}

std::optional<FieldElem> try_descend(const FieldElem& x, const FieldCtxPtr& target) {
    return try_descend(x, *target);
}

FieldElem lift_into(const FieldElem& x, const FieldCtx& target) {
    if (target.same_field(x.ctx())) return target.from_coords(x.coords());
    if (!target.base())
        throw CtxMismatch("lift_into: element's field is not below the target");
    return embed(lift_into(x, *target.base()), target);
}

FieldElem lift_into(const FieldElem& x, const FieldCtxPtr& target) { return lift_into(x, *target); }

bool canonical_less(const FieldElem& a, const FieldElem& b) {
    common_ctx(a, b);
    for (int i = 0; i < a.level(); ++i) {
        if (a.coord(i) != b.coord(i)) return a.coord(i) < b.coord(i);
    }
    return false;
}

}  // namespace ciani
