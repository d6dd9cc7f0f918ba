// Command-line front end for the omega-language toolkit: file validation,
// machine translation, block coding, membership queries, run certificates,
// game plays, and reproducible randomized cross-checks.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "opn/coding.hpp"
#include "opn/fuzz.hpp"
#include "opn/membership.hpp"
#include "opn/semantics.hpp"
#include "opn/simulate.hpp"
#include "opn/textio.hpp"
#include "opn/wadge.hpp"

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitError = 3;

opn::CounterMachine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return opn::parse_automaton(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

opn::LassoWord make_lasso(const std::string& u, const std::string& v) {
  return opn::LassoWord(u, v);
}

const char* verdict_word(opn::VerdictKind k) {
  switch (k) {
    case opn::VerdictKind::Accept: return "accept";
    case opn::VerdictKind::Reject: return "reject";
    default: return "unknown";
  }
}

int verdict_exit(opn::VerdictKind k) {
  switch (k) {
    case opn::VerdictKind::Accept: return kExitAccept;
    case opn::VerdictKind::Reject: return kExitReject;
    default: return kExitUnknown;
  }
}

struct MemberFlags {
  int32_t counter_bound = 32;
  uint32_t cycles = 8;
  uint64_t budget = 1'000'000;
};

void add_member_flags(CLI::App* cmd, MemberFlags& flags) {
  cmd->add_option("--counter-bound", flags.counter_bound,
                  "Cap on every counter value during search")
      ->capture_default_str();
  cmd->add_option("--cycles", flags.cycles, "Cap on loop unrollings in the pumping search")
      ->capture_default_str();
  cmd->add_option("--budget", flags.budget, "Cap on explored search nodes")
      ->capture_default_str();
}

opn::MemberBounds to_bounds(const MemberFlags& flags) {
  opn::MemberBounds b;
  b.counter_bound = flags.counter_bound;
  b.cycle_bound = flags.cycles;
  b.node_budget = static_cast<size_t>(flags.budget);
  return b;
}

int cmd_validate(const std::string& file) {
  opn::CounterMachine m = load_machine(file);
  std::cout << "ok: " << m.num_states() << " states, " << m.num_counters << " counters, "
            << m.transitions.size() << " transitions, "
            << (m.acceptance.is_buchi() ? "buchi" : "muller") << " acceptance\n";
  return kExitAccept;
}

int cmd_translate(const std::string& file, const std::string& emit, const std::string& out_path) {
  opn::CounterMachine a = load_machine(file);
  std::string text;
  if (emit == "b") {
    text = opn::serialize_automaton(opn::build_block_simulator(a).machine);
  } else if (emit == "escape") {
    text = opn::serialize_automaton(opn::build_escape_machine(a.alphabet));
  } else if (emit == "pa") {
    text = opn::serialize_automaton(opn::build_simulator_with_escape(a).machine);
  } else {
    throw CLI::ValidationError("--emit must be one of b, escape, pa");
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return kExitAccept;
}

int cmd_encode(const std::string& u, const std::string& v, uint32_t blocks) {
  opn::LassoWord x = make_lasso(u, v);
  std::cout << opn::flatten(opn::encode_lasso(x, blocks)) << '\n';
  return kExitAccept;
}

int cmd_member(const std::string& file, const std::string& u, const std::string& v, bool coded,
               uint32_t blocks, const MemberFlags& flags) {
  opn::CounterMachine a = load_machine(file);
  opn::LassoWord w = make_lasso(u, v);
  if (!coded) {
    opn::Verdict verdict = opn::lasso_member(a, w, to_bounds(flags));
    std::cout << verdict_word(verdict.kind);
    if (verdict.kind == opn::VerdictKind::Unknown) {
      std::cout << (verdict.reason == opn::UnknownReason::Horizon ? " (horizon)" : " (budget)");
    }
    std::cout << '\n';
    return verdict_exit(verdict.kind);
  }
  opn::BlockSimulator b = opn::build_block_simulator(a);
  opn::CodedMemberOptions opts;
  opts.node_budget = static_cast<size_t>(flags.budget);
  opn::CodedEvidence ev = opn::coded_evidence(b, w, blocks, opts);
  switch (ev.kind) {
    case opn::CodedEvidenceKind::Accepting:
      std::cout << "accept (surviving run with accepting loop over " << blocks << " blocks)\n";
      return kExitAccept;
    case opn::CodedEvidenceKind::Dead:
      std::cout << "reject (all runs die by block " << ev.dead_block << ")\n";
      return kExitReject;
    default:
      std::cout << "unknown (survivors over " << blocks
                << " blocks, no accepting loop exhibited)\n";
      return kExitUnknown;
  }
}

int cmd_certify(const std::string& file, const std::string& u, const std::string& v,
                uint32_t blocks, const MemberFlags& flags) {
  opn::CounterMachine a = load_machine(file);
  opn::LassoWord x = make_lasso(u, v);
  opn::Verdict verdict = opn::lasso_member(a, x, to_bounds(flags));
  if (verdict.kind == opn::VerdictKind::Reject) {
    std::cout << "reject: the machine has no accepting run on this word\n";
    return kExitReject;
  }
  if (verdict.kind == opn::VerdictKind::Unknown) {
    std::cout << "unknown: no accepting run found within bounds\n";
    return kExitUnknown;
  }
  opn::RunCertificate cert = opn::build_canonical_certificate(a, verdict.witness->run, x, blocks);
  opn::BlockSimulator b = opn::build_block_simulator(a);
  bool ok = opn::check_certificate(b, x, cert);
  std::cout << "certificate over " << blocks << " blocks: ";
  for (size_t i = 0; i < cert.blocks.size(); ++i) {
    const opn::CertificateBlock& cb = cert.blocks[i];
    if (i > 0) std::cout << ' ';
    std::cout << "(u=" << cb.u << ",v=" << cb.v << ",n=" << int(cb.effect_n)
              << ",q=" << a.state_names[cb.q_after] << (cb.f_visit ? ",F" : "") << ")";
  }
  std::cout << '\n' << (ok ? "check: pass" : "check: FAIL") << '\n';
  return ok ? kExitAccept : kExitReject;
}

int cmd_play(const std::string& file, const std::string& mode, const std::string& u,
             const std::string& v, uint32_t horizon, const MemberFlags& flags) {
  opn::CounterMachine a = load_machine(file);
  opn::LassoWord w = make_lasso(u, v);
  opn::MemberBounds bounds = to_bounds(flags);
  auto we = std::make_shared<const opn::SimulatorWithEscape>(opn::build_simulator_with_escape(a));

  opn::CommittedWord p1;
  p1.kind = opn::CommittedWord::Kind::Lasso;
  p1.word = w;

  std::unique_ptr<opn::Strategy> strategy;
  opn::Oracle in_first;
  opn::Oracle in_second;
  if (mode == "copy") {
    strategy = opn::make_copy_strategy(p1);
    in_first = opn::make_machine_oracle(a, bounds);
    in_second = opn::make_union_oracle(we, bounds);
  } else if (mode == "threecase") {
    strategy = opn::make_three_case_strategy(p1, a.alphabet.at(0));
    in_first = opn::make_union_oracle(we, bounds);
    in_second = opn::nested_empty_sum_oracle(opn::make_machine_oracle(a, bounds), 2);
  } else {
    throw CLI::ValidationError("--mode must be copy or threecase");
  }

  opn::Transcript t = opn::play_wadge(p1, *strategy, in_first, in_second, horizon);
  std::cout << "first  word: " << t.alpha_prefix << "...\n";
  std::cout << "second word: " << t.beta_prefix << "...\n";
  const char* outcome = t.outcome == opn::PlayOutcome::PlayerTwoWins  ? "second player wins"
                        : t.outcome == opn::PlayOutcome::PlayerOneWins ? "first player wins"
                                                                       : "undetermined";
  std::cout << "outcome: " << outcome << '\n';
  switch (t.outcome) {
    case opn::PlayOutcome::PlayerTwoWins: return kExitAccept;
    case opn::PlayOutcome::PlayerOneWins: return kExitReject;
    default: return kExitUnknown;
  }
}

int cmd_fuzz(uint32_t states, uint32_t letters, uint64_t seed, uint32_t trials, uint32_t threads,
             const MemberFlags& flags) {
  opn::FuzzOptions opts;
  opts.max_states = states;
  opts.num_letters = letters;
  opts.seed = seed;
  opts.trials = trials;
  opts.threads = threads;
  opts.bounds = to_bounds(flags);
  opn::FuzzResult result = opn::run_fuzz(opts);
  std::cout << result.report;
  return result.ok ? kExitAccept : kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for omega-languages of counter machines"};
  app.require_subcommand(1);

  std::string file;
  std::string emit = "pa";
  std::string out_path;
  std::string u;
  std::string v;
  std::string mode = "copy";
  uint32_t blocks = 12;
  uint32_t horizon = 16;
  bool coded = false;
  MemberFlags member_flags;
  uint32_t fuzz_states = 3;
  uint32_t fuzz_letters = 2;
  uint64_t fuzz_seed = 1;
  uint32_t fuzz_trials = 50;
  uint32_t fuzz_threads = 1;

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a machine file");
  validate->add_option("file", file, "Machine file")->required();

  CLI::App* translate =
      app.add_subcommand("translate", "Build the simulator, escape, or union machine");
  translate->add_option("file", file, "One-counter machine file")->required();
  translate->add_option("--emit", emit, "Which machine to emit: b, escape, or pa")
      ->capture_default_str();
  translate->add_option("-o,--out", out_path, "Output file ('-' for stdout)");

  CLI::App* encode = app.add_subcommand("encode", "Print a prefix of the block coding h(u v^w)");
  encode->add_option("--u", u, "Spoke of the payload word")->capture_default_str();
  encode->add_option("--v", v, "Cycle of the payload word")->required();
  encode->add_option("--blocks", blocks, "Number of complete blocks")->capture_default_str();

  CLI::App* member = app.add_subcommand("member", "Decide membership of u v^w within bounds");
  member->add_option("file", file, "Machine file")->required();
  member->add_option("--u", u, "Spoke of the word")->capture_default_str();
  member->add_option("--v", v, "Cycle of the word")->required();
  member->add_flag("--coded", coded,
                   "Query the coded image of u v^w against the machine's block simulator");
  member->add_option("--blocks", blocks, "Blocks of the coded image to explore (with --coded)")
      ->capture_default_str();
  add_member_flags(member, member_flags);

  CLI::App* certify =
      app.add_subcommand("certify", "Build and check a canonical run certificate");
  certify->add_option("file", file, "One-counter machine file")->required();
  certify->add_option("--u", u, "Spoke of the payload word")->capture_default_str();
  certify->add_option("--v", v, "Cycle of the payload word")->required();
  certify->add_option("--blocks", blocks, "Certificate horizon in blocks")->capture_default_str();
  add_member_flags(certify, member_flags);

  CLI::App* play = app.add_subcommand("play", "Play a reduction game against a built-in strategy");
  play->add_option("file", file, "One-counter machine file")->required();
  play->add_option("--mode", mode, "Strategy: copy or threecase")->capture_default_str();
  play->add_option("--u", u, "Spoke of the first player's word")->capture_default_str();
  play->add_option("--v", v, "Cycle of the first player's word")->required();
  play->add_option("--horizon", horizon, "Number of rounds to play")->capture_default_str();
  add_member_flags(play, member_flags);

  CLI::App* fuzz = app.add_subcommand("fuzz", "Run randomized cross-checks with a fixed seed");
  fuzz->add_option("--states", fuzz_states, "Maximum states per machine")->capture_default_str();
  fuzz->add_option("--letters", fuzz_letters, "Number of payload letters")->capture_default_str();
  fuzz->add_option("--seed", fuzz_seed, "Seed for all random draws")->capture_default_str();
  fuzz->add_option("--trials", fuzz_trials, "Number of trials")->capture_default_str();
  fuzz->add_option("--threads", fuzz_threads, "Worker threads (report bytes are unaffected)")
      ->capture_default_str();
  add_member_flags(fuzz, member_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 prints help itself and returns 0 for --help; remap real usage
    // errors to the documented error exit code.
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(file);
    if (app.got_subcommand(translate)) return cmd_translate(file, emit, out_path);
    if (app.got_subcommand(encode)) return cmd_encode(u, v, blocks);
    if (app.got_subcommand(member)) return cmd_member(file, u, v, coded, blocks, member_flags);
    if (app.got_subcommand(certify)) return cmd_certify(file, u, v, blocks, member_flags);
    if (app.got_subcommand(play)) return cmd_play(file, mode, u, v, horizon, member_flags);
    if (app.got_subcommand(fuzz)) {
      return cmd_fuzz(fuzz_states, fuzz_letters, fuzz_seed, fuzz_trials, fuzz_threads,
                      member_flags);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
