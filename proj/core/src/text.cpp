#include "ciani/text.hpp"

#include <cctype>

namespace ciani {
namespace {

std::string encode_l2(std::span<const uint64_t> c) {
    return std::to_string(c[0]) + "+" + std::to_string(c[1]) + "*i";
}

struct Parser {
    std::string_view s;
    uint64_t p;
    size_t pos = 0;

    char peek() const { return pos < s.size() ? s[pos] : '\0'; }

    void expect(char c, const char* what) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "' (" + what + ")", pos);
        ++pos;
    }

    uint64_t coeff() {
        const size_t start = pos;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected a digit", pos);
        unsigned __int128 v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned>(s[pos] - '0');
            if (v > ~uint64_t{0}) throw ParseError("coefficient overflows", start);
            ++pos;
        }
        if (v >= p) throw ParseError("coefficient must lie in [0, p)", start);
        return static_cast<uint64_t>(v);
    }

    // coeff [SIGN coeff "*i"]; returns (a, b) and whether the i-part appeared
    std::pair<std::array<uint64_t, 2>, bool> level2() {
        uint64_t a = coeff();
        if (peek() != '+' && peek() != '-') return {{a, 0}, false};
        const bool neg = peek() == '-';
        ++pos;
        uint64_t b = coeff();
        expect('*', "imaginary part");
        expect('i', "imaginary part");
        if (neg && b != 0) b = p - b;
        return {{a, b}, true};
    }
};

const FieldCtx* subfield_at(const FieldCtx& ctx, int level) {
    const FieldCtx* f = &ctx;
    while (f && f->level() > level) f = f->base().get();
    return f && f->level() == level ? f : nullptr;
}

}  // namespace

std::string encode(const FieldElem& x) {
    const auto c = x.coords();
    switch (x.level()) {
        case 1:
            return std::to_string(c[0]);
        case 2:
            return encode_l2(c);
        case 4:
            return "(" + encode_l2(c.subspan(0, 2)) + ")+(" + encode_l2(c.subspan(2, 2)) + ")*j";
        default:
            throw Error("no text encoding above level 4");
    }
}

FieldElem parse_element(std::string_view text, const FieldCtx& ctx) {
    Parser ps{text, ctx.p()};
    std::array<uint64_t, 4> coords{};
    int literal_level = 1;
    if (ps.peek() == '(') {
        ps.expect('(', "level-4 element");
        auto [lo, lo_full] = ps.level2();
        (void)lo_full;
        ps.expect(')', "level-4 element");
        const char sign = ps.peek();
        if (sign != '+' && sign != '-') throw ParseError("expected '+' or '-'", ps.pos);
        ++ps.pos;
        ps.expect('(', "level-4 element");
        auto [hi, hi_full] = ps.level2();
        (void)hi_full;
        ps.expect(')', "level-4 element");
        ps.expect('*', "level-4 element");
        ps.expect('j', "level-4 element");
        if (sign == '-') {
            hi[0] = hi[0] ? ctx.p() - hi[0] : 0;
            hi[1] = hi[1] ? ctx.p() - hi[1] : 0;
        }
        coords = {lo[0], lo[1], hi[0], hi[1]};
        literal_level = 4;
    } else {
        auto [lo, has_i] = ps.level2();
        coords = {lo[0], lo[1], 0, 0};
        literal_level = has_i ? 2 : 1;
    }
    if (ps.pos != text.size()) throw ParseError("unexpected trailing characters", ps.pos);
    const FieldCtx* sub = subfield_at(ctx, literal_level);
    if (!sub)
        throw ParseError("level-" + std::to_string(literal_level) + " literal in a level-" +
                             std::to_string(ctx.level()) + " field",
                         0);
    FieldElem at_sub = sub->from_coords({coords.data(), static_cast<size_t>(literal_level)});
    return lift_into(at_sub, ctx);
}

FieldElem parse_element(std::string_view text, const FieldCtxPtr& ctx) {
    return parse_element(text, *ctx);
}

}  // namespace ciani
