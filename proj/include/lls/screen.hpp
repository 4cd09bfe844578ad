#pragma once

#include "lls/enumerate.hpp"
#include "lls/verify.hpp"

namespace lls {

// Checks a table at its default multidegree only, without heap-heavy
// intermediate structures. Returns true and fills `out` exactly as
// verify_table would when the table passes there by the canonical rule order;
// returns false when the full verifier has to decide. The table must be valid
// and live on a pure elliptic chain with r = 6 (enumerator output).
bool screen_at_default(const RawTable& t, Verdict& out, bool keep_certificate);
bool screen_at_default(const VanishingTable& t, Verdict& out, bool keep_certificate);

}  // namespace lls
