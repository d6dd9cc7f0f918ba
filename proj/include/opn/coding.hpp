#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opn/machine.hpp"

namespace opn {

/// The block code interleaves a word x over Sigma with separators and
/// growing zero-runs:  A 0 x(1) B 00 x(2) A 000 x(3) B ...
/// Block i carries separator 'A' (i odd) or 'B' (i even), then i zeros, then
/// the payload letter x(i). 'A', 'B' and '0' are reserved letters; payload
/// letters are everything else.
inline constexpr Letter kSepOdd = 'A';
inline constexpr Letter kSepEven = 'B';
inline constexpr Letter kZero = '0';

inline Letter separator_for_block(uint32_t i) { return (i % 2 == 1) ? kSepOdd : kSepEven; }
inline bool is_reserved_letter(Letter c) { return c == kSepOdd || c == kSepEven || c == kZero; }
inline bool is_payload_letter(Letter c) { return !is_reserved_letter(c); }

struct CodedBlock {
    Letter separator;
    uint32_t zeros;   // >= 1 in well-shaped words
    Letter payload;

    bool operator==(const CodedBlock& o) const {
        return separator == o.separator && zeros == o.zeros && payload == o.payload;
    }
};

/// A block whose payload has not been reached yet (end of input mid-block).
struct PartialBlock {
    Letter separator;
    uint32_t zeros;
};

struct DecodeError {
    size_t offset;  // position of the offending letter
    std::string message;
};

/// Result of scanning a word against the block shape: the complete blocks, an
/// optional trailing partial block (input ended mid-block), and an optional
/// diagnostic when the scan stopped at an ill-formed letter. `consumed` is
/// where the scan stopped; w[consumed..] is the unparsed remainder.
struct CodedPrefix {
    std::vector<CodedBlock> blocks;
    std::optional<PartialBlock> trailing;
    std::optional<DecodeError> error;
    size_t consumed = 0;
};

Word flatten(const CodedPrefix& p);

/// First `blocks` blocks of the code of x (zero-run of block i has length i).
/// Throws when x is shorter than the requested block count.
CodedPrefix encode_prefix(const Word& x, uint32_t blocks);

/// Same for an ultimately periodic x; any block count is available.
CodedPrefix encode_lasso(const LassoWord& x, uint32_t blocks);

/// Maximal well-shaped prefix of w (separators alternate starting at 'A',
/// every zero-run nonempty, payloads are non-reserved letters).
CodedPrefix decode_prefix(const Word& w);

/// Least block index i (1-based) whose zero-run length differs from i;
/// nullopt when every parsed block is canonical.
std::optional<uint32_t> first_deviant_block(const CodedPrefix& p);

/// Deterministic automaton for the well-shaped words (alternating separators,
/// nonempty zero-runs, payloads in sigma, infinitely many blocks). Büchi on
/// the two post-payload states. Throws when sigma is empty or contains a
/// reserved letter.
ShapeAutomaton shape_automaton(const Alphabet& sigma);

/// Full coded alphabet: sigma plus the three reserved letters.
Alphabet coded_alphabet(const Alphabet& sigma);

/// Exact dyadic distance 2^(-l) where l is the length of the longest common
/// prefix; zero when the words are equal. No floating point anywhere.
struct PrefixDistance {
    bool is_zero;
    uint32_t exponent;  // meaningful when !is_zero; value is 2^(-exponent)

    /// value < 2^(-n)
    bool below_pow2(uint32_t n) const { return is_zero || exponent > n; }
    bool operator==(const PrefixDistance& o) const {
        if (is_zero != o.is_zero) return false;
        return is_zero || exponent == o.exponent;
    }
    bool operator<(const PrefixDistance& o) const {
        if (is_zero) return false;
        if (o.is_zero) return true;
        return exponent > o.exponent;
    }
};

PrefixDistance prefix_distance(const Word& u, const Word& v);

/// Three-way status of a prefix against a prefix-closed/open condition.
enum class PrefixStatus : uint8_t { Witnessed, Excluded, Undecided };

/// First escape language: words whose first four letters do not spell
/// separator-zero-payload-separator (A 0 sigma B). Decided by the first four
/// letters, so lassos are immediate.
bool in_escape1(const LassoWord& w);
PrefixStatus escape1_status(const Word& prefix);

/// Second escape language: words containing a contiguous segment
///   sep 0^n a sep' 0^m b
/// with opposite separators, payload letters a,b and 1 <= m <= n. Membership
/// is witnessed by a finite segment; for a lasso it suffices to scan
/// u·v·v·v (a witness spans at most two adjacent blocks, and zero-runs inside
/// the periodic tail are shorter than |v| unless the tail is all zeros, in
/// which case no witness can complete).
bool in_escape2(const LassoWord& w);
bool escape2_witness_in(const Word& prefix);

/// Union of the two escape languages. Open: membership is always witnessed by
/// a finite prefix and survives arbitrary extension.
bool in_escape(const LassoWord& w);

/// Is `prefix` a prefix of the code of some omega-word (zero-run of block i
/// exactly i)?
bool code_prefix_compatible(const Word& prefix);

}  // namespace opn
