#include "doctest.h"

#include "opn/coding.hpp"
#include "opn/randgen.hpp"

using namespace opn;

TEST_CASE("encoding interleaves separators, growing zero-runs and payloads") {
  CHECK(flatten(encode_prefix("aba", 3)) == "A0aB00bA000a");
  CHECK(flatten(encode_lasso(LassoWord("", "a"), 2)) == "A0aB00a");
  CHECK(flatten(encode_lasso(LassoWord("ab", "a"), 3)) == "A0aB00bA000a");
  CHECK(flatten(encode_prefix("ab", 0)).empty());
  CHECK_THROWS_AS(encode_prefix("ab", 3), std::invalid_argument);
}

TEST_CASE("decoding reads back blocks and stops at ill-formed letters") {
  SUBCASE("well-shaped prefix") {
    CodedPrefix p = decode_prefix("A0aB00b");
    REQUIRE(p.blocks.size() == 2);
    CHECK(p.blocks[0] == CodedBlock{'A', 1, 'a'});
    CHECK(p.blocks[1] == CodedBlock{'B', 2, 'b'});
    CHECK(!p.trailing);
    CHECK(!p.error);
    CHECK(p.consumed == 7);
  }
  SUBCASE("must start with the odd separator") {
    CodedPrefix p = decode_prefix("B0a");
    REQUIRE(p.error);
    CHECK(p.error->offset == 0);
    CHECK(p.blocks.empty());
  }
  SUBCASE("zero-run lengths are read, not judged") {
    CodedPrefix p = decode_prefix("A0aB0000c");
    REQUIRE(p.blocks.size() == 2);
    CHECK(p.blocks[0] == CodedBlock{'A', 1, 'a'});
    CHECK(p.blocks[1] == CodedBlock{'B', 4, 'c'});
  }
  SUBCASE("input ending mid-block leaves a trailing partial block") {
    CodedPrefix p = decode_prefix("A0aB00");
    CHECK(p.blocks.size() == 1);
    REQUIRE(p.trailing);
    CHECK(p.trailing->separator == 'B');
    CHECK(p.trailing->zeros == 2);
  }
  SUBCASE("separator without zeros is ill-formed") {
    CodedPrefix p = decode_prefix("AaB");
    REQUIRE(p.error);
    CHECK(p.error->offset == 1);
  }
}

TEST_CASE("decode is a left inverse of encode") {
  SplitMix64 rng(2024);
  Alphabet sigma("abc");
  for (int trial = 0; trial < 50; ++trial) {
    uint32_t blocks = static_cast<uint32_t>(rng.range(1, 20));
    Word x;
    for (uint32_t i = 0; i < blocks; ++i) x += sigma.at(rng.below(sigma.size()));
    CodedPrefix enc = encode_prefix(x, blocks);
    CodedPrefix dec = decode_prefix(flatten(enc));
    REQUIRE(dec.blocks.size() == blocks);
    CHECK(!dec.error);
    CHECK(!dec.trailing);
    for (uint32_t i = 0; i < blocks; ++i) {
      CHECK(dec.blocks[i].zeros == i + 1);
      CHECK(dec.blocks[i].payload == x[i]);
      CHECK(dec.blocks[i].separator == separator_for_block(i + 1));
    }
  }
}

TEST_CASE("first deviant block finds the least non-canonical zero-run") {
  CHECK(!first_deviant_block(decode_prefix("A0aB00b")));
  CHECK(first_deviant_block(decode_prefix("A0aB0000c")) == 2);
  CHECK(first_deviant_block(decode_prefix("A00a")) == 1);
  CHECK(first_deviant_block(decode_prefix("A0aB00bA0c")) == 3);
}

TEST_CASE("prefix distance is the exact dyadic of the common prefix length") {
  CHECK(prefix_distance("abab", "abab").is_zero);
  PrefixDistance d = prefix_distance("abx", "acx");
  CHECK(!d.is_zero);
  CHECK(d.exponent == 1);
  CHECK(prefix_distance("ax", "bx").exponent == 0);
  // A proper prefix differs at its end.
  CHECK(prefix_distance("ab", "abc").exponent == 2);
  CHECK(d.below_pow2(0));
  CHECK(!d.below_pow2(1));
  CHECK(prefix_distance("x", "x").below_pow2(1000));
}

TEST_CASE("first escape language is decided by the first four letters") {
  CHECK(escape1_status("B") == PrefixStatus::Witnessed);
  CHECK(escape1_status("A0aB") == PrefixStatus::Excluded);
  CHECK(escape1_status("A0a") == PrefixStatus::Undecided);
  CHECK(escape1_status("A0a0") == PrefixStatus::Witnessed);
  CHECK(escape1_status("AA") == PrefixStatus::Witnessed);
  CHECK(escape1_status("") == PrefixStatus::Undecided);

  CHECK(in_escape1(LassoWord("B", "a")));
  CHECK(in_escape1(LassoWord("", "A00a")));  // two zeros before the payload
  CHECK(!in_escape1(LassoWord("A0a", "B00bA000a")));
  CHECK(!in_escape1(LassoWord("A0aB", "B")));
}

TEST_CASE("second escape language needs adjacent runs with opposite separators and m <= n") {
  // Segment B 0^2 b A 0^1 c: m = 1 <= n = 2.
  CHECK(escape2_witness_in("A0aB00bA0c"));
  CHECK(in_escape2(LassoWord("A0aB00bA0c", "c")));
  // Canonical prefixes grow strictly, so no witness.
  CHECK(!escape2_witness_in("A0aB00bA000a"));
  CHECK(!in_escape2(LassoWord("A0aB00b", "A")));
  // Equal runs suffice (m = n).
  CHECK(escape2_witness_in("A0aB0b"));
  // Same separator on both runs is not a witness by itself.
  CHECK(!escape2_witness_in("A0aA0b"));
  // The witness may sit anywhere in the word.
  CHECK(escape2_witness_in("BBBA00aB0b"));
  // Periodic tails eventually repeat a run length, which is a witness.
  CHECK(in_escape2(LassoWord("A0a", "B00bA000aB00b")));
}

TEST_CASE("escape union and code compatibility") {
  CHECK(in_escape(LassoWord("B", "a")));
  CHECK(in_escape(LassoWord("A0aB00bA0c", "c")));
  CHECK(!in_escape(LassoWord("A0aB00b", "A")));
  CHECK(!in_escape(LassoWord("A0a", "B")));

  CHECK(code_prefix_compatible(""));
  CHECK(code_prefix_compatible("A"));
  CHECK(code_prefix_compatible("A0aB00"));
  CHECK(code_prefix_compatible("A0aB00bA000a"));
  CHECK(!code_prefix_compatible("A0a0"));
  CHECK(!code_prefix_compatible("B"));
  CHECK(!code_prefix_compatible("A00"));
  CHECK(!code_prefix_compatible("A0aB000"));
}

TEST_CASE("coded alphabet adds exactly the reserved letters") {
  Alphabet g = coded_alphabet(Alphabet("ab"));
  CHECK(g.size() == 5);
  for (char c : std::string("AB0ab")) CHECK(g.contains(c));
  CHECK_THROWS_AS(coded_alphabet(Alphabet("aA")), std::invalid_argument);
}
