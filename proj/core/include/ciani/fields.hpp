#pragma once
// Exact arithmetic in F_p, F_{p^2} and F_{p^4}, built as a tower of quadratic
// steps: the step from level k to level 2k adjoins a root w of X^2 = d where
// d is a non-square at level k. Elements are flat coefficient vectors over
// F_p; for a level-4 element (a0 + a1*i) + (a2 + a3*i)*j the coordinate
// vector is (a0, a1, a2, a3), each coordinate reduced into [0, p).
//
// Canonical element order compares coordinate vectors lexicographically with
// the constant coefficient most significant; sqrt() returns the smaller of
// the two roots under this order, which makes every downstream value of the
// library reproducible across runs and machines.
//
// Contexts are immutable after construction and interned for the life of the
// process: make_field/extend return the one canonical instance per
// (p, level, d-chain), so elements can reference their field by plain
// pointer and two independently constructed equal fields interoperate.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ciani/errors.hpp"

namespace ciani {

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

// make_field() accepts levels 1, 2 and 4; level 8 exists only as the target
// of one extend() step from level 4 (needed when square roots of level-4
// values have to be taken).
inline constexpr int kMaxTowerLevel = 8;
inline constexpr uint64_t kMaxPrime = (uint64_t{1} << 61) - 1;

class FieldElem {
  public:
    FieldElem() = default;  // invalid until assigned from a context

    const FieldCtx& ctx() const { return *ctx_; }
    FieldCtxPtr ctx_ptr() const;
    int level() const;
    std::span<const uint64_t> coords() const;
    uint64_t coord(int i) const { return c_[static_cast<size_t>(i)]; }

    bool is_zero() const;
    bool is_one() const;

    friend bool operator==(const FieldElem& a, const FieldElem& b);
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    FieldElem operator-() const;
    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);

  private:
    friend class FieldCtx;
    FieldElem(const FieldCtx* ctx, const std::array<uint64_t, 8>& c) : ctx_(ctx), c_(c) {}

    const FieldCtx* ctx_ = nullptr;
    std::array<uint64_t, 8> c_{};
};

class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
  public:
    uint64_t p() const { return p_; }
    int level() const { return level_; }
    const FieldCtxPtr& base() const { return base_; }  // null at level 1

    // The constant d adjoined at the step below this level (element of base()).
    FieldElem step_constant() const;
    // Lexicographically smallest non-square of this field; extend() adjoins
    // its square root.
    FieldElem nonresidue() const;

    // q = p^level when it fits in 64 bits.
    std::optional<uint64_t> size() const;

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_int(int64_t v) const;
    FieldElem from_coords(std::span<const uint64_t> coords) const;

    // Canonical-order indexing: element_at(k) is the k-th element in the
    // canonical order, i.e. the base-p digits of k, most significant first.
    FieldElem element_at(uint64_t index) const;
    uint64_t index_of(const FieldElem& x) const;

    // Value identity: equal (p, level, d-chain) contexts behave identically
    // and their elements interoperate.
    bool same_field(const FieldCtx& other) const;

  private:
    struct Key {};

  public:
    FieldCtx(Key, uint64_t p, FieldCtxPtr base, std::array<uint64_t, 8> step_d, int level);
    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

  private:
    // interning table lookup/insert; every context goes through here
    static FieldCtxPtr intern(uint64_t p, int level, const FieldCtxPtr& base,
                              const std::array<uint64_t, 8>& step_d);

    friend FieldCtxPtr make_field(uint64_t, int, std::optional<uint64_t>);
    friend FieldCtxPtr extend(const FieldCtx&);
    friend FieldElem inv(const FieldElem&);
    friend FieldElem pow(const FieldElem&, uint64_t);
    friend FieldElem frobenius(const FieldElem&);
    friend bool is_square(const FieldElem&);
    friend bool is_fourth_power(const FieldElem&);
    friend std::optional<FieldElem> sqrt(const FieldElem&);
    friend class FieldElem;
    friend FieldElem operator+(const FieldElem&, const FieldElem&);
    friend FieldElem operator-(const FieldElem&, const FieldElem&);
    friend FieldElem operator*(const FieldElem&, const FieldElem&);

    // Kernels on raw coordinate blocks of this level. out must not alias
    // inputs for mul/sqr/inv/frob.
    void raw_add(const uint64_t* a, const uint64_t* b, uint64_t* out) const;
    void raw_sub(const uint64_t* a, const uint64_t* b, uint64_t* out) const;
    void raw_neg(const uint64_t* a, uint64_t* out) const;
    void raw_mul(const uint64_t* a, const uint64_t* b, uint64_t* out) const;
    void raw_sqr(const uint64_t* a, uint64_t* out) const;
    void raw_inv(const uint64_t* a, uint64_t* out) const;
    void raw_frob(const uint64_t* a, uint64_t* out) const;
    bool raw_is_zero(const uint64_t* a) const;
    bool raw_is_one(const uint64_t* a) const;
    void raw_pow(const uint64_t* a, std::span<const uint64_t> e_limbs, uint64_t* out) const;
    bool raw_is_square(const uint64_t* a) const;

    FieldElem wrap(const std::array<uint64_t, 8>& c) const { return FieldElem(this, c); }

    uint64_t p_ = 0;
    int level_ = 1;
    FieldCtxPtr base_;
    std::array<uint64_t, 8> step_d_{};   // base-level coords; level >= 2 only
    std::array<uint64_t, 8> frob_c_{};   // step_d^((p-1)/2), base-level coords
    std::array<uint64_t, 8> nqr_{};      // this-level coords
    // Tonelli-Shanks data for q - 1 = 2^s * t
    int ts_s_ = 0;
    std::vector<uint64_t> ts_t_;         // t, little-endian limbs
    std::vector<uint64_t> ts_thalf_;     // (t+1)/2
    std::array<uint64_t, 8> ts_z_{};     // nonresidue^t
};

// Constructs F_{p^level} for level in {1, 2, 4}. The bottom step uses the
// smallest positive non-residue mod p unless d_override names another one;
// higher steps always use the canonical (lexicographically smallest)
// non-square of the level below.
FieldCtxPtr make_field(uint64_t p, int level, std::optional<uint64_t> d_override = std::nullopt);

// One tower step up, adjoining a root of the canonical non-square.
FieldCtxPtr extend(const FieldCtx& ctx);
FieldCtxPtr extend(const FieldCtxPtr& ctx);

FieldElem inv(const FieldElem& x);                    // DivisionByZero on 0
FieldElem pow(const FieldElem& x, uint64_t e);
FieldElem frobenius(const FieldElem& x);              // x^p
bool is_square(const FieldElem& x);
bool is_fourth_power(const FieldElem& x);             // level 1 needs p = 1 mod 4
std::optional<FieldElem> sqrt(const FieldElem& x);    // canonical root; empty if non-square

// Natural inclusion into the field one step above / descent one step down.
// try_descend succeeds exactly when the element is fixed by the relative
// Frobenius, i.e. its top-half coordinates vanish.
FieldElem embed(const FieldElem& x, const FieldCtx& target);
FieldElem embed(const FieldElem& x, const FieldCtxPtr& target);
std::optional<FieldElem> try_descend(const FieldElem& x, const FieldCtx& target);
std::optional<FieldElem> try_descend(const FieldElem& x, const FieldCtxPtr& target);

// Embeds through as many tower steps as needed; CtxMismatch if the element's
// field does not occur in target's base chain.
FieldElem lift_into(const FieldElem& x, const FieldCtx& target);
FieldElem lift_into(const FieldElem& x, const FieldCtxPtr& target);

// Canonical order: lexicographic on coordinate vectors, constant coefficient
// most significant.
bool canonical_less(const FieldElem& a, const FieldElem& b);

bool is_prime(uint64_t n);

}  // namespace ciani
