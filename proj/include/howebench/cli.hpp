#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace howebench {

// Knobs shared by every subcommand.  All bounds are positive; every
// randomized check takes the seed, so equal invocations print equal reports.
struct RunConfig {
  int fuel = 30;           // saturation rounds / machine steps
  int maxUniverse = 5000;  // transition-store term capacity
  int maxLabelSize = 2;    // label candidates up to this node count
  int maxTermSize = 5;     // seed / universe terms up to this node count
  int samples = 200;       // probes for the randomized checks
  std::uint64_t seed = 0;
  bool json = false;       // structured report instead of plain text
};

// The delimited-control signature the oracle-diff subcommand evaluates
// against, byte-identical to signatures/shiftreset.sig.
const std::string& embedded_delimited_signature();

// Runs one subcommand.  `args` is the command line without the program name.
//
//   validate SIG            parse + static checks, declaration counts
//   format-check SIG        per-rule structural/schedule/coverage table
//   step SIG TERM           stored transitions out of TERM
//   eval SIG TERM           silent-step normal forms; --machine for the
//                           direct evaluator (delimited-control only)
//   bisim SIG T1 T2         bounded-bisimilarity verdict for the pair
//   howe SIG                congruence closure plus its property suite
//   congruence SIG          randomized closure checks on bisimilarity
//   oracle-diff TERM        rule engine vs. direct machine on TERM
//
// Every subcommand honors --fuel, --max-universe, --label-size, --term-size,
// --samples, --seed and --json.  Returns 0 when checks pass (or the report
// is merely informative), 1 when a property fails or the pair is
// distinguished, 2 on usage, parse or execution errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace howebench
