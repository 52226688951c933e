#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "howebench/cli.hpp"
#include "howebench/enumerate.hpp"
#include "howebench/printer.hpp"
#include "json.hpp"

using namespace howebench;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int c = dispatch(args, o, e);
  return {c, o.str(), e.str()};
}

std::string dataPath(const std::string& rel) { return std::string(TEST_DATA_DIR) + "/" + rel; }

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("validate reports the declaration counts") {
  CliResult r = run({"validate", dataPath("signatures/shiftreset.sig")});
  CHECK(r.code == 0);
  CHECK(contains(r.out,
                 "sorts 3, subsorts 1, constructors 7, operations 2, clauses 6, "
                 "edges 3, rules 17"));
  CHECK(contains(r.out, "ok"));

  CliResult p = run({"validate", dataPath("signatures/pcf.sig")});
  CHECK(p.code == 0);
  CHECK(contains(p.out,
                 "sorts 1, subsorts 0, constructors 7, operations 0, clauses 0, "
                 "edges 4, rules 18"));
}

TEST_CASE("format-check passes the shipped signatures and fails the fixtures") {
  for (const char* good : {"signatures/shiftreset.sig", "signatures/pcf.sig"}) {
    CliResult r = run({"format-check", dataPath(good)});
    CAPTURE(good);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "pass"));
  }
  for (const char* bad : {"signatures/fixtures/beta-standard.sig",
                          "signatures/fixtures/lookahead.sig",
                          "signatures/fixtures/fresh-target.sig"}) {
    CliResult r = run({"format-check", dataPath(bad)});
    CAPTURE(bad);
    CHECK(r.code == 1);
    CHECK(contains(r.out, "fail"));
  }
}

TEST_CASE("step lists the stored transitions of the seed") {
  CliResult r = run({"step", dataPath("signatures/shiftreset.sig"), "(\\x. x) (\\y. y)"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "-tau-> \\x. x"));
  CHECK(contains(r.out, "-val[\\x. x]->"));
  CHECK(contains(r.out, "edge tau: exhausted"));
}

TEST_CASE("eval finds normal forms through the store and through the machine") {
  CliResult engine = run({"eval", dataPath("signatures/pcf.sig"), "pred(succ(zero))"});
  CHECK(engine.code == 0);
  CHECK(contains(engine.out, "normal form: zero"));

  CliResult machine =
      run({"eval", dataPath("signatures/shiftreset.sig"), "<(\\x. x) <shift k. k>>",
           "--machine"});
  CHECK(machine.code == 0);
  CHECK(contains(machine.out, "value: \\x. <x>"));

  // The direct evaluator needs the delimited-control constructors.
  CliResult wrong =
      run({"eval", dataPath("signatures/pcf.sig"), "pred(succ(zero))", "--machine"});
  CHECK(wrong.code == 2);
  CHECK(contains(wrong.err, "error:"));
}

TEST_CASE("bisim prints a verdict and exits accordingly") {
  CliResult eq = run(
      {"bisim", dataPath("signatures/shiftreset.sig"), "\\x. x", "\\x. (\\y. y) x"});
  CHECK(eq.code == 0);
  CHECK(contains(eq.out, "equivalentUpToBounds"));

  CliResult diff = run({"bisim", dataPath("signatures/shiftreset.sig"), "--label-size", "4",
                        "\\x. x", "\\x. x x"});
  CHECK(diff.code == 1);
  CHECK(contains(diff.out, "distinguished"));
  CHECK(contains(diff.out, "no response"));
}

TEST_CASE("howe and congruence subcommands pass on the shipped signatures") {
  CliResult howe = run({"howe", dataPath("signatures/pcf.sig"), "--term-size", "3"});
  CHECK(howe.code == 0);
  CHECK(contains(howe.out, "flexible-simulation"));
  CHECK(contains(howe.out, "pass"));

  CliResult congr = run({"congruence", dataPath("signatures/pcf.sig"), "--term-size", "3",
                         "--samples", "40"});
  CHECK(congr.code == 0);
  CHECK(contains(congr.out, "constructor closure"));
  CHECK(contains(congr.out, "pass"));
}

TEST_CASE("oracle-diff runs the embedded signature") {
  CliResult r = run({"oracle-diff", "<shift k. k>"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "diffs 0"));
  CHECK(contains(r.out, "ok"));
}

TEST_CASE("the embedded signature matches the shipped file byte for byte") {
  CHECK(embedded_delimited_signature() == slurp("signatures/shiftreset.sig"));
}

TEST_CASE("json reports are well-formed and byte-identical across runs") {
  const std::vector<std::vector<std::string>> invocations = {
      {"validate", dataPath("signatures/shiftreset.sig"), "--json"},
      {"format-check", dataPath("signatures/pcf.sig"), "--json"},
      {"step", dataPath("signatures/shiftreset.sig"), "(\\x. x) (\\y. y)", "--json"},
      {"eval", dataPath("signatures/pcf.sig"), "pred(succ(zero))", "--json"},
      {"eval", dataPath("signatures/shiftreset.sig"), "<shift k. k>", "--machine", "--json"},
      {"bisim", dataPath("signatures/shiftreset.sig"), "\\x. x", "\\x. (\\y. y) x", "--json"},
      {"howe", dataPath("signatures/pcf.sig"), "--term-size", "3", "--json"},
      {"congruence", dataPath("signatures/pcf.sig"), "--term-size", "3", "--samples", "25",
       "--json"},
      {"oracle-diff", "<shift k. k>", "--json"},
  };
  for (const auto& args : invocations) {
    CAPTURE(args[0]);
    CliResult first = run(args);
    CliResult second = run(args);
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
    nlohmann::json doc = nlohmann::json::parse(first.out);
    CHECK(doc.contains("command"));
    CHECK(doc.contains("config"));
    CHECK(doc.contains("results"));
    CHECK(doc["command"] == args[0]);
    CHECK(doc["config"]["seed"] == 0);
  }
}

TEST_CASE("printed terms reparse to identical terms up to size 6") {
  for (bool surface : {false, true}) {
    CAPTURE(surface);
    PrintOptions po;
    po.surface = surface;

    const Signature& sr = shiftresetSig();
    SortId vSort = sr.sortId("v");
    int closedChecked = 0;
    for (const char* sortName : {"v", "p", "c"}) {
      for (const Term& t : enumerate_terms(sr, sr.sortId(sortName), {}, 6)) {
        std::string text = print_term(sr, t, {}, po);
        CAPTURE(text);
        Term back = parse_term(sr, text);
        CHECK(back == t);
        closedChecked++;
      }
    }
    CHECK(closedChecked > 500);

    // One free value variable in scope, printed under its given name.
    int openChecked = 0;
    for (const Term& t : enumerate_terms(sr, sr.sortId("p"), {vSort}, 5)) {
      std::string text = print_term(sr, t, {"x"}, po);
      CAPTURE(text);
      Term back = parse_term(sr, text, {{"x", vSort}});
      CHECK(back == t);
      openChecked++;
    }
    CHECK(openChecked > 100);

    const Signature& pcf = pcfSig();
    SortId tSort = pcf.sortId("t");
    for (const Term& t : enumerate_terms(pcf, tSort, {}, 6)) {
      std::string text = print_term(pcf, t, {}, po);
      CAPTURE(text);
      Term back = parse_term(pcf, text);
      CHECK(back == t);
    }
    for (const Term& t : enumerate_terms(pcf, tSort, {tSort}, 4)) {
      std::string text = print_term(pcf, t, {"n"}, po);
      CAPTURE(text);
      Term back = parse_term(pcf, text, {{"n", tSort}});
      CHECK(back == t);
    }
  }
}

TEST_CASE("usage and parse errors exit with code 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"validate"}).code == 2);
  CHECK(run({"validate", dataPath("signatures/no-such-file.sig")}).code == 2);
  CHECK(run({"step", dataPath("signatures/shiftreset.sig"), "(\\x. x"}).code == 2);
  CHECK(run({"step", dataPath("signatures/shiftreset.sig"), "y"}).code == 2);

  CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "Usage"));
}
