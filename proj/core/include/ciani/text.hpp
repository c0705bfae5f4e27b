#pragma once
// Canonical text encoding of field elements. The grammar is fixed so census
// files diff cleanly across machines:
//
//   element := coeff | coeff SIGN coeff "*i"          (levels 1 and 2)
//            | "(" e2 ")" SIGN "(" e2 ")" "*j"        (level 4)
//   e2      := coeff | coeff SIGN coeff "*i"
//   coeff   := integer in [0, p)
//   SIGN    := "+" | "-"
//
// No whitespace anywhere. The canonical writer always emits the full form of
// the element's own level with "+" signs ("2" at level 2 prints as "2+0*i");
// the parser additionally accepts literals of any lower level and embeds
// them.

#include <string>
#include <string_view>

#include "ciani/fields.hpp"

namespace ciani {

std::string encode(const FieldElem& x);
FieldElem parse_element(std::string_view text, const FieldCtxPtr& ctx);
FieldElem parse_element(std::string_view text, const FieldCtx& ctx);

}  // namespace ciani
