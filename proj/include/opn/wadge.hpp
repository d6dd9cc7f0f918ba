#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "opn/coding.hpp"
#include "opn/machine.hpp"
#include "opn/membership.hpp"

namespace opn {

/// Fresh letters extending the base alphabet for sum languages. Each nesting
/// level owns one plus and one minus letter. The three-case strategy only
/// ever plays the inner plus ("from now on my word is out, unless I escape
/// once more") and the outer minus ("from now on my word is in, for good");
/// the two remaining letters exist so that every level has the full pair.
constexpr Letter kMarkPlus = '+';        // inner level, plus
constexpr Letter kMarkMinusInner = '_';  // inner level, minus
constexpr Letter kMarkPlusOuter = '=';   // outer level, plus
constexpr Letter kMarkMinus = '-';       // outer level, minus

/// A finitely presented infinite word. Lasso: the word spoke·cycle^ω itself.
/// HCode: the block-coded image of the payload word (which is never
/// ultimately periodic, hence needs its own representation).
struct CommittedWord {
    enum class Kind : uint8_t { Lasso, HCode };
    Kind kind = Kind::Lasso;
    LassoWord word{"", "?"};  // Lasso: the word; HCode: the payload word x, committing code(x)
};

Letter committed_letter(const CommittedWord& w, size_t i);
Word committed_prefix(const CommittedWord& w, size_t len);

enum class TriBool : uint8_t { False, True, Unknown };

TriBool to_tribool(const Verdict& v);
TriBool to_tribool(const CodedEvidence& e);

/// A bounded membership test for committed infinite words. Unknown is always
/// a legal answer; True/False must be sound.
using Oracle = std::function<TriBool(const CommittedWord&)>;

/// Lasso commitments are decided by bounded lasso membership on `m`; coded
/// commitments are Unknown (a general machine offers no bounded handle on
/// them).
Oracle make_machine_oracle(CounterMachine m, MemberBounds bounds = {});

/// Oracle for the simulator-with-escape machine. Lasso commitments run
/// through bounded lasso membership on the union machine. Coded commitments
/// code(x) are decided from block-frontier evidence on the same machine:
/// coded images never evade the coding, so code(x) is accepted exactly when
/// the simulator part accepts, which the evidence witnesses (Accepting) or
/// refutes (Dead).
Oracle make_union_oracle(std::shared_ptr<const SimulatorWithEscape> we, MemberBounds bounds = {},
                         uint32_t code_blocks = 12, CodedMemberOptions copts = {});

/// The oracle for the empty language (always False) and its complement
/// (always True).
Oracle empty_oracle();
Oracle full_oracle();

/// One level of the language sum: the sum of an inner language (over some
/// alphabet Y) and an outer language (over the base alphabet X), where the
/// fresh letters plus_letters and minus_letters extend X. A word that never
/// leaves X belongs to the sum iff it belongs to the outer language. A word
/// whose first fresh letter is a plus belongs iff its tail after that letter
/// belongs to the inner language; with a minus, iff the tail does not.
/// Throws when a letter set is empty or the two overlap.
Oracle sum_oracle(Oracle inner, Oracle outer, const std::string& plus_letters,
                  const std::string& minus_letters);

/// The `levels`-fold sum of empty languages over `base`, innermost first:
/// level 1 uses {kMarkPlus, kMarkMinusInner}, level 2 {kMarkPlusOuter,
/// kMarkMinus}. An outer-level fresh letter takes priority over inner-level
/// ones wherever it occurs. Supports levels 0 (the base oracle), 1 and 2.
Oracle nested_empty_sum_oracle(Oracle base, uint32_t levels);

/// First-letter split: a word belongs iff its first letter is in sigma1 and
/// the tail after it belongs to the first language, or the first letter is
/// in sigma2 and the tail belongs to the second. The two alphabets must be
/// disjoint and nonempty. Lasso commitments only; coded commitments answer
/// Unknown.
Oracle split_oracle(const Alphabet& sigma1, const Alphabet& sigma2, Oracle first, Oracle second);

/// Player two of a Wadge game: receives player one's letters one at a time,
/// may answer with any finite (possibly empty) burst of letters, and after
/// the last round commits to a full infinite word extending what it played.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual Word on_letter(Letter a) = 0;
    virtual CommittedWord commit() = 0;
};

/// Copying strategy for the game comparing a payload language with its coded
/// image: round n answers with separator, n zeros and the copied payload
/// letter, and the commitment is the coded image of player one's commitment.
std::unique_ptr<Strategy> make_copy_strategy(const CommittedWord& p1);

/// Three-case strategy for the game comparing the simulator-with-escape
/// language with the twice-marked sum of the simulated language. While
/// player one's prefix stays code-compatible it copies the decoded payload
/// letters. When the prefix witnesses an evading segment it plays minus (the
/// word is in the union language for good). When the prefix leaves
/// code-compatibility without such a witness it plays plus, and later minus
/// if a witness still appears. The commitment settles the remaining cases
/// from player one's committed lasso (an ultimately periodic word is never a
/// coded image, and its evasion is decided by a bounded window) and pads
/// with the filler letter.
std::unique_ptr<Strategy> make_three_case_strategy(const CommittedWord& p1, Letter filler);

enum class PlayOutcome : uint8_t { PlayerTwoWins, PlayerOneWins, Undetermined };

struct PlayRound {
    Letter p1;
    Word p2;
};

struct Transcript {
    std::vector<PlayRound> rounds;
    Word alpha_prefix;
    Word beta_prefix;
    CommittedWord alpha;
    CommittedWord beta;
    TriBool alpha_in = TriBool::Unknown;
    TriBool beta_in = TriBool::Unknown;
    PlayOutcome outcome = PlayOutcome::Undetermined;
};

/// Plays `rounds` rounds: player one's letters come from its commitment,
/// player two replies through the strategy and finally commits. Player two
/// wins when the two committed words agree on membership (first word in the
/// first language iff second word in the second). If either oracle answers
/// Unknown the play is Undetermined. Throws when the strategy's commitment
/// does not extend the letters it played.
Transcript play_wadge(const CommittedWord& p1, Strategy& p2, const Oracle& in_first,
                      const Oracle& in_second, uint32_t rounds);

}  // namespace opn
