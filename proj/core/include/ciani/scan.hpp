#pragma once
// Exhaustive census machinery: the full F_{p^2}^3 enumeration behind the
// maximal/minimal verification, and the F_{p^4}^3 scan confirming that
// superspecial coefficient triples descend to F_{p^2}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ciani/curve.hpp"
#include "ciani/fields.hpp"

namespace ciani {

struct CensusRow {
    uint64_t p;
    std::string r, s, t;  // canonical text encodings
    bool nonsingular;
    bool superspecial;
    Verdict verdict;
    AutoGroupTag auto_group;
    bool mu1_square;
    std::optional<uint64_t> oracle_count;
};

struct EnumerateOptions {
    uint64_t p = 3;
    std::optional<uint64_t> d_override;
    int workers = 0;             // <= 0: hardware concurrency
    bool with_oracle = false;
    uint64_t oracle_sample = 0;  // 0: verify every survivor
    uint64_t seed = 0x5EED;      // sampling seed; fixed so runs reproduce
    bool acknowledge_large = false;
    uint64_t budget = 10'000'000;  // triple evaluations allowed without acknowledgment
};

struct ScanSummary {
    uint64_t scanned = 0;
    uint64_t nonsingular = 0;
    uint64_t superspecial = 0;
    uint64_t maximal = 0;
    uint64_t minimal = 0;
    uint64_t oracle_verified = 0;
};

struct EnumerateResult {
    FieldCtxPtr ctx;
    std::vector<CensusRow> rows;  // one per nonsingular superspecial triple, sorted by encoding
    ScanSummary summary;
};

// Scans all q^3 = p^6 coefficient triples over F_{p^2}. Deterministic output
// regardless of the worker count; with_oracle brute-force-counts survivors
// (all of them, or oracle_sample of them chosen by a seeded draw) and throws
// InvariantViolation if any count disagrees with the verdict.
EnumerateResult enumerate_census(const EnumerateOptions& opt);

struct ScanExtOptions {
    uint64_t p = 3;
    int degree = 4;  // the only supported degree
    int workers = 0;
    bool acknowledge_large = false;
    uint64_t budget = 10'000'000;
};

struct ScanExtSummary {
    uint64_t scanned = 0;
    uint64_t nonsingular = 0;
    uint64_t superspecial = 0;
    uint64_t superspecial_in_subfield = 0;
    uint64_t superspecial_outside_subfield = 0;  // expected: 0
};

// Scans all (r, s, t) over F_{p^4} and counts nonsingular superspecial
// triples with at least one coordinate outside F_{p^2}.
ScanExtSummary scan_ext(const ScanExtOptions& opt);

}  // namespace ciani
