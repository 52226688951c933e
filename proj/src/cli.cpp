#include "howebench/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "howebench/bisim.hpp"
#include "howebench/engine.hpp"
#include "howebench/enumerate.hpp"
#include "howebench/format.hpp"
#include "howebench/howe.hpp"
#include "howebench/machine.hpp"
#include "howebench/ops.hpp"
#include "howebench/parser.hpp"
#include "howebench/printer.hpp"
#include "json.hpp"

namespace howebench {

namespace {

using nlohmann::json;

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Signature load_signature(const std::string& path) { return parse_signature(slurp_file(path)); }

PrintOptions surface_opts(const Signature& sig) {
  PrintOptions o;
  o.surface = has_surface_syntax(sig);
  return o;
}

json config_json(const RunConfig& cfg) {
  return json{{"fuel", cfg.fuel},
              {"maxUniverse", cfg.maxUniverse},
              {"maxLabelSize", cfg.maxLabelSize},
              {"maxTermSize", cfg.maxTermSize},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"json", cfg.json}};
}

void emit_json(std::ostream& out, const std::string& command, const RunConfig& cfg,
               json results) {
  json doc{{"command", command}, {"config", config_json(cfg)}, {"results", std::move(results)}};
  out << doc.dump(2) << "\n";
}

EngineConfig engine_config(const RunConfig& cfg) {
  EngineConfig ec;
  ec.fuel = cfg.fuel;
  ec.maxUniverse = cfg.maxUniverse;
  return ec;
}

// Closed seed programs: every term of an edge-source sort up to the size
// bound, deduplicated across sorts.
std::vector<Term> edge_source_seeds(const Signature& sig, int maxTermSize) {
  std::set<SortId> srcSorts;
  for (const auto& e : sig.edges) srcSorts.insert(e.src);
  TermEnumerator enu(sig);
  std::set<Term> seen;
  std::vector<Term> seeds;
  for (SortId s : srcSorts)
    for (const Term& t : enu.upTo(s, {}, maxTermSize))
      if (seen.insert(t).second) seeds.push_back(t);
  return seeds;
}

const char* yn(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------- validate

int run_validate(const RunConfig& cfg, const std::string& sigPath, std::ostream& out) {
  Signature sig = load_signature(sigPath);
  std::vector<ValidationIssue> issues;
  for (const ValidationReport& rep :
       {validate_signature_basic(sig), validate_signature_ops(sig), validate_rules(sig)})
    issues.insert(issues.end(), rep.issues.begin(), rep.issues.end());
  bool ok = issues.empty();

  if (cfg.json) {
    json counts{{"sorts", sig.sorts.size()},     {"subsorts", sig.subsorts.size()},
                {"constructors", sig.cons.size()}, {"operations", sig.ops.size()},
                {"clauses", sig.clauses.size()},  {"edges", sig.edges.size()},
                {"rules", sig.rules.size()}};
    json iss = json::array();
    for (const auto& i : issues) iss.push_back({{"where", i.where}, {"message", i.message}});
    emit_json(out, "validate", cfg, json{{"counts", counts}, {"issues", iss}, {"ok", ok}});
  } else {
    out << "sorts " << sig.sorts.size() << ", subsorts " << sig.subsorts.size()
        << ", constructors " << sig.cons.size() << ", operations " << sig.ops.size()
        << ", clauses " << sig.clauses.size() << ", edges " << sig.edges.size() << ", rules "
        << sig.rules.size() << "\n";
    for (const auto& i : issues) out << i.where << ": " << i.message << "\n";
    out << (ok ? "ok" : std::to_string(issues.size()) + " issue(s)") << "\n";
  }
  return ok ? 0 : 1;
}

// ------------------------------------------------------------ format-check

int run_format_check(const RunConfig& cfg, const std::string& sigPath, std::ostream& out) {
  Signature sig = load_signature(sigPath);
  FormatReport rep = check_format(sig);

  if (cfg.json) {
    json rules = json::array();
    for (const auto& r : rep.rules)
      rules.push_back({{"name", r.name},
                       {"structural", r.structural},
                       {"scheduled", r.scheduled},
                       {"covered", r.covered},
                       {"schedule", r.schedule},
                       {"detail", r.detail},
                       {"ok", r.ok()}});
    json iss = json::array();
    for (const auto& i : rep.ruleIssues)
      iss.push_back({{"where", i.where}, {"message", i.message}});
    emit_json(out, "format-check", cfg,
              json{{"rules", rules}, {"issues", iss}, {"pass", rep.pass}});
  } else {
    std::size_t width = 4;
    for (const auto& r : rep.rules) width = std::max(width, r.name.size());
    out << std::left << std::setw(static_cast<int>(width + 2)) << "rule"
        << "structural  scheduled  covered  ok\n";
    for (const auto& r : rep.rules) {
      out << std::left << std::setw(static_cast<int>(width + 2)) << r.name << std::setw(12)
          << yn(r.structural) << std::setw(11) << yn(r.scheduled) << std::setw(9)
          << yn(r.covered) << yn(r.ok()) << "\n";
      if (!r.ok() && !r.detail.empty()) out << "  " << r.detail << "\n";
    }
    for (const auto& i : rep.ruleIssues) out << i.where << ": " << i.message << "\n";
    out << (rep.pass ? "pass" : "fail") << "\n";
  }
  return rep.pass ? 0 : 1;
}

// ------------------------------------------------------------------- step

int run_step(const RunConfig& cfg, const std::string& sigPath, const std::string& termText,
             std::ostream& out) {
  Signature sig = load_signature(sigPath);
  Term t = parse_term(sig, termText);
  LabelUniverse labels = build_label_universe(sig, cfg.maxLabelSize);
  TransitionStore st = derive_transitions(sig, {t}, labels, engine_config(cfg));
  PrintOptions po = surface_opts(sig);
  std::vector<LabeledTransition> trans = st.transitionsOf(t);

  if (cfg.json) {
    json list = json::array();
    for (const auto& tr : trans) {
      json ls = json::array();
      for (const auto& l : tr.labels) ls.push_back(print_term(sig, l, {}, po));
      list.push_back({{"edge", sig.edges[tr.edge].name},
                      {"labels", ls},
                      {"target", print_term(sig, tr.target, {}, po)}});
    }
    json rows = json::array();
    for (int e = 0; e < st.edgeCount(); ++e)
      rows.push_back({{"edge", sig.edges[e].name},
                      {"exhausted", st.exhausted(t, e)},
                      {"truncated", st.row(t, e)->truncated}});
    emit_json(out, "step", cfg,
              json{{"term", print_term(sig, t, {}, po)},
                   {"transitions", list},
                   {"rows", rows},
                   {"universe", st.universe().size()},
                   {"rounds", st.rounds()},
                   {"saturated", st.saturated()},
                   {"overflow", st.overflow()}});
  } else {
    out << print_term(sig, t, {}, po) << "\n";
    for (const auto& tr : trans)
      out << "  " << print_transition(sig, t, tr.edge, tr.labels, tr.target, po) << "\n";
    for (int e = 0; e < st.edgeCount(); ++e)
      out << "edge " << sig.edges[e].name << ": "
          << (st.exhausted(t, e) ? "exhausted" : "incomplete")
          << (st.row(t, e)->truncated ? " (label bound hit)" : "") << "\n";
    out << "universe " << st.universe().size() << " terms, " << st.rounds() << " rounds, "
        << (st.saturated() ? "saturated" : "fuel-limited")
        << (st.overflow() ? ", overflowed" : "") << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- eval

int run_eval_machine(const RunConfig& cfg, const Signature& sig, const Term& t,
                     std::ostream& out) {
  MachineLabels ml = machine_weak_labels(sig, t, cfg.fuel);
  PrintOptions po = surface_opts(sig);
  std::string outcome;
  if (!ml.complete)
    outcome = "fuel-exhausted";
  else if (ml.vFamily)
    outcome = "value";
  else if (ml.cFamily)
    outcome = "control-stuck";
  else
    outcome = "loop";

  if (cfg.json) {
    json trace = json::array();
    for (const auto& s : ml.trace) trace.push_back(print_term(sig, s, {}, po));
    json res{{"mode", "machine"}, {"trace", trace},      {"complete", ml.complete},
             {"diverged", ml.diverged}, {"outcome", outcome}};
    if (ml.vFamily) res["value"] = print_term(sig, ml.trace.back(), {}, po);
    if (ml.cFamily) {
      res["capturedBody"] = print_term(sig, ml.cFamily->first, {"k"}, po);
      res["localContext"] = print_term(sig, ml.cFamily->second, {}, po);
    }
    emit_json(out, "eval", cfg, std::move(res));
  } else {
    for (std::size_t i = 0; i < ml.trace.size(); ++i)
      out << (i == 0 ? "" : "  -> ") << print_term(sig, ml.trace[i], {}, po) << "\n";
    if (!ml.complete)
      out << "no answer within fuel (" << cfg.fuel << " steps)\n";
    else if (ml.vFamily)
      out << "value: " << print_term(sig, ml.trace.back(), {}, po) << "\n";
    else if (ml.cFamily)
      out << "control capture with no delimiter: body "
          << print_term(sig, ml.cFamily->first, {"k"}, po) << ", context "
          << print_term(sig, ml.cFamily->second, {}, po) << "\n";
    else
      out << "diverges (revisits a state)\n";
  }
  return 0;
}

int run_eval(const RunConfig& cfg, const std::string& sigPath, const std::string& termText,
             bool useMachine, std::ostream& out) {
  Signature sig = load_signature(sigPath);
  Term t = parse_term(sig, termText);
  if (useMachine) {
    if (!has_surface_syntax(sig))
      throw std::runtime_error("--machine needs the delimited-control constructors");
    return run_eval_machine(cfg, sig, t, out);
  }

  int tau = sig.edgeId("tau");
  if (tau < 0) throw std::runtime_error("signature has no tau edge to normalize along");
  LabelUniverse labels = build_label_universe(sig, cfg.maxLabelSize);
  TransitionStore st = derive_transitions(sig, {t}, labels, engine_config(cfg));
  PrintOptions po = surface_opts(sig);

  const std::set<Term>* reach = st.targets(t, tau, {});
  std::vector<Term> normals;
  bool definite = st.exhausted(t, tau);
  if (reach)
    for (const Term& u : *reach) {
      const std::set<Term>* loop = st.targets(u, tau, {});
      if (loop && loop->size() == 1 && loop->count(u)) {
        normals.push_back(u);
        definite = definite && st.exhausted(u, tau);
      }
    }

  if (cfg.json) {
    json ns = json::array();
    for (const Term& u : normals) ns.push_back(print_term(sig, u, {}, po));
    emit_json(out, "eval", cfg,
              json{{"mode", "engine"},
                   {"term", print_term(sig, t, {}, po)},
                   {"reachable", reach ? reach->size() : 0},
                   {"normalForms", ns},
                   {"definite", definite}});
  } else {
    out << print_term(sig, t, {}, po) << "\n";
    if (normals.empty())
      out << (definite ? "diverges (no silent normal form)\n"
                       : "no normal form within bounds\n");
    for (const Term& u : normals) out << "normal form: " << print_term(sig, u, {}, po) << "\n";
    if (!normals.empty() && !definite) out << "(bounds hit; further forms may exist)\n";
  }
  return 0;
}

// ------------------------------------------------------------------ bisim

int run_bisim(const RunConfig& cfg, const std::string& sigPath, const std::string& t1Text,
              const std::string& t2Text, std::ostream& out) {
  Signature sig = load_signature(sigPath);
  Term t1 = parse_term(sig, t1Text);
  Term t2 = parse_term(sig, t2Text);
  LabelUniverse labels = build_label_universe(sig, cfg.maxLabelSize);
  TransitionStore st = derive_transitions(sig, {t1, t2}, labels, engine_config(cfg));
  BisimResult res = compute_bisim(sig, st, {{t1, t2}});
  const BisimVerdict& v = res.verdicts.at(0).second;
  PrintOptions po = surface_opts(sig);

  auto traceLine = [&](const TraceStep& s) {
    std::string line = std::string("[") + (s.challengerIsLeft ? "left" : "right") + "] " +
                       print_transition(sig, s.challengerSrc, s.edge, s.labels,
                                        s.challengerTgt, po);
    if (s.responderTgts.empty()) {
      line += "  (no response)";
    } else {
      line += "  (responses refuted later:";
      for (const Term& r : s.responderTgts) line += " " + print_term(sig, r, {}, po) + ";";
      line.back() = ')';
    }
    return line;
  };

  if (cfg.json) {
    json trace = json::array();
    for (const auto& s : v.trace) trace.push_back(traceLine(s));
    json res2{{"left", print_term(sig, t1, {}, po)},
              {"right", print_term(sig, t2, {}, po)},
              {"verdict", v.distinguished ? "distinguished" : "equivalentUpToBounds"},
              {"rounds", res.rounds},
              {"truncationSeen", v.truncationSeen},
              {"universe", st.universe().size()},
              {"trace", trace}};
    if (v.distinguished) res2["round"] = v.round;
    emit_json(out, "bisim", cfg, std::move(res2));
  } else {
    out << print_term(sig, t1, {}, po) << "  vs  " << print_term(sig, t2, {}, po) << "\n";
    if (v.distinguished) {
      out << "verdict: distinguished (round " << v.round << ")\n";
      for (const auto& s : v.trace) out << "  " << traceLine(s) << "\n";
    } else {
      out << "verdict: equivalentUpToBounds"
          << (v.truncationSeen ? " (some rows not exhausted)" : "") << "\n";
    }
  }
  return v.distinguished ? 1 : 0;
}

// ------------------------------------------------------------------- howe

int run_howe(const RunConfig& cfg, const std::string& sigPath, std::ostream& out) {
  Signature sig = load_signature(sigPath);
  LabelUniverse labels = build_label_universe(sig, cfg.maxLabelSize);
  std::vector<Term> seeds = edge_source_seeds(sig, cfg.maxTermSize);
  TransitionStore st = derive_transitions(sig, seeds, labels, engine_config(cfg));
  BisimResult bres = compute_bisim(sig, st, {});
  BisimRelation simF = restrict_to_explored(st, bres.relation);
  HoweUniverse uni = build_howe_universe(sig, cfg.maxTermSize);
  constexpr int kMaxIter = 100;
  HoweClosure hc = howe_closure(sig, uni, Relation{}, &simF, kMaxIter);
  HoweReport rep = check_howe_properties(sig, uni, hc, st, simF, bres.relation, labels);
  bool pass = rep.pass && hc.converged;

  std::size_t uniTerms = 0;
  for (const auto& [ctx, ts] : uni.strata) uniTerms += ts.size();

  if (cfg.json) {
    json checks = json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"name", c.name},
                        {"checked", c.checked},
                        {"skipped", c.skipped},
                        {"violations", c.violations}});
    emit_json(out, "howe", cfg,
              json{{"seeds", seeds.size()},
                   {"storeUniverse", st.universe().size()},
                   {"strata", uni.strata.size()},
                   {"universeTerms", uniTerms},
                   {"closure", hc.closure.size()},
                   {"iterations", hc.iterations},
                   {"converged", hc.converged},
                   {"checks", checks},
                   {"pass", pass}});
  } else {
    out << "seeds " << seeds.size() << ", store " << st.universe().size() << " terms, universe "
        << uniTerms << " terms in " << uni.strata.size() << " contexts\n";
    out << "closure " << hc.closure.size() << " pairs, " << hc.iterations << " iterations, "
        << (hc.converged ? "converged" : "not converged") << "\n";
    for (const auto& c : rep.checks) {
      out << "  " << std::left << std::setw(30) << c.name << "checked " << std::setw(8)
          << c.checked << "skipped " << std::setw(8) << c.skipped << "violations "
          << c.violations.size() << "\n";
      for (const auto& viol : c.violations) out << "    " << viol << "\n";
    }
    out << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? 0 : 1;
}

// ------------------------------------------------------------- congruence

int run_congruence(const RunConfig& cfg, const std::string& sigPath, std::ostream& out) {
  Signature sig = load_signature(sigPath);
  LabelUniverse labels = build_label_universe(sig, cfg.maxLabelSize);
  std::vector<Term> seeds = edge_source_seeds(sig, cfg.maxTermSize);
  TransitionStore st = derive_transitions(sig, seeds, labels, engine_config(cfg));
  BisimResult bres = compute_bisim(sig, st, {});
  CheckReport cons =
      check_congruence(sig, st, bres.relation, cfg.maxTermSize, cfg.samples, cfg.seed);
  CheckReport ops =
      check_enhanced(sig, st, bres.relation, cfg.maxTermSize, cfg.samples, cfg.seed);
  bool pass = cons.ok() && ops.ok();

  auto checkJson = [](const CheckReport& r) {
    return json{{"samples", r.samples},
                {"checked", r.checked},
                {"skipped", r.skipped},
                {"violations", r.violations}};
  };
  auto checkLine = [&out](const char* name, const CheckReport& r) {
    out << "  " << std::left << std::setw(28) << name << "samples " << std::setw(7) << r.samples
        << "checked " << std::setw(7) << r.checked << "skipped " << std::setw(7) << r.skipped
        << "violations " << r.violations.size() << "\n";
    for (const auto& v : r.violations) out << "    " << v << "\n";
  };

  if (cfg.json) {
    emit_json(out, "congruence", cfg,
              json{{"storeUniverse", st.universe().size()},
                   {"constructors", checkJson(cons)},
                   {"operations", checkJson(ops)},
                   {"pass", pass}});
  } else {
    out << "store " << st.universe().size() << " terms\n";
    checkLine("constructor closure", cons);
    checkLine("operation closure", ops);
    out << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? 0 : 1;
}

// ------------------------------------------------------------ oracle-diff

int run_oracle_diff(const RunConfig& cfg, const std::string& termText, std::ostream& out) {
  Signature sig = parse_signature(embedded_delimited_signature());
  Term t = parse_term(sig, termText);
  LabelUniverse labels = build_label_universe(sig, cfg.maxLabelSize);
  OracleReport rep = oracle_compare(sig, t, cfg.fuel, labels);
  PrintOptions po = surface_opts(sig);

  if (cfg.json) {
    emit_json(out, "oracle-diff", cfg,
              json{{"term", print_term(sig, t, {}, po)},
                   {"checked", rep.checked},
                   {"skipped", rep.skipped},
                   {"diffs", rep.diffs},
                   {"ok", rep.ok()}});
  } else {
    out << print_term(sig, t, {}, po) << "\n";
    out << "checked " << rep.checked << ", skipped " << rep.skipped << ", diffs "
        << rep.diffs.size() << "\n";
    for (const auto& d : rep.diffs) out << "  " << d << "\n";
    out << (rep.ok() ? "ok" : "differ") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

const std::string& embedded_delimited_signature() {
  static const std::string text = R"SIG(# Call-by-value lambda calculus with shift and reset.
#
# Sorts: v values, p programs (v < p), c evaluation contexts built outside-in.
# plug(E; e) fills the hole of E with e; comp(E1; E2) puts E2 into E1's hole.

sort v
sort p
sort c
subsort v < p

con lam   : [v] p -> v
con app   : p, p -> p
con shift : [v] p -> p
con reset : p -> p
con hole  : -> c
con capp  : v, c -> c
con cappr : c, p -> c

op plug : c ; p -> p
op comp : c ; c -> c

plug(hole; e) = e
plug(capp(v1, E); e) = app(v1, plug(E; e))
plug(cappr(E, e2); e) = app(plug(E; e), e2)
comp(hole; E2) = E2
comp(capp(v1, E); E2) = capp(v1, comp(E; E2))
comp(cappr(E, e2); E2) = cappr(comp(E; E2), e2)

# tau: silent step.  val: applying the program to the label, a value.
# ctx: capturing the label, the surrounding evaluation context.
edge tau : p -> p
edge val : p [v] -> p
edge ctx : p [c] -> p

# Core behaviour.
rule beta-prime    : e1 -val[v1]-> e2 => app(e1, v1) -tau-> e2
rule lam-val       : => lam(x. e) -val[w]-> e[w]
rule app-left      : e1 -tau-> e2 => app(e1, e3) -tau-> app(e2, e3)
rule app-right     : e1 -tau-> e2 => app(v1 : v, e1) -tau-> app(v1, e2)
rule reset-value   : => reset(w : v) -tau-> w
rule reset-step    : e1 -tau-> e2 => reset(e1) -tau-> reset(e2)
rule reset-hole    : e1 -ctx[hole]-> e2 => reset(e1) -tau-> e2

# Context capture: a capture inside the left (right) half of an application
# extends the captured context with the other half.
rule capture-left  : e1 -ctx[comp(E; cappr(hole, e2))]-> e3 => app(e1, e2) -ctx[E]-> e3
rule capture-right : e1 -ctx[comp(E; capp(v1, hole))]-> e2 => app(v1 : v, e1) -ctx[E]-> e2
rule shift-capture : => shift(k. e) -ctx[E]-> reset(e[lam(x. reset(plug(E; x)))])

# Saturation: reflexivity and absorbing silent steps before and after.
rule refl-tau      : => e -tau-> e
rule weak-pre-tau  : e1 -tau-> e2, e2 -tau-> e3 => e1 -tau-> e3
rule weak-pre-val  : e1 -tau-> e2, e2 -val[w]-> e3 => e1 -val[w]-> e3
rule weak-pre-ctx  : e1 -tau-> e2, e2 -ctx[E]-> e3 => e1 -ctx[E]-> e3
rule weak-post-tau : e1 -tau-> e2, e2 -tau-> e3 => e1 -tau-> e3
rule weak-post-val : e1 -val[w]-> e2, e2 -tau-> e3 => e1 -val[w]-> e3
rule weak-post-ctx : e1 -ctx[E]-> e2, e2 -tau-> e3 => e1 -ctx[E]-> e3
)SIG";
  return text;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string sigPath, termText, term2Text;
  bool useMachine = false;

  CLI::App app{"operational-semantics workbench: rule engine, format and congruence checks"};
  app.name("howebench");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--fuel", cfg.fuel, "saturation rounds / machine steps")
      ->capture_default_str();
  app.add_option("--max-universe", cfg.maxUniverse, "transition-store term capacity")
      ->capture_default_str();
  app.add_option("--label-size", cfg.maxLabelSize, "label candidates up to this node count")
      ->capture_default_str();
  app.add_option("--term-size", cfg.maxTermSize, "seed terms up to this node count")
      ->capture_default_str();
  app.add_option("--samples", cfg.samples, "probes for randomized checks")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_flag("--json", cfg.json, "structured report");

  CLI::App* validate = app.add_subcommand("validate", "parse a signature, run static checks");
  validate->add_option("sig", sigPath, "signature file")->required();

  CLI::App* format = app.add_subcommand("format-check", "per-rule format table");
  format->add_option("sig", sigPath, "signature file")->required();

  CLI::App* step = app.add_subcommand("step", "stored transitions out of a term");
  step->add_option("sig", sigPath, "signature file")->required();
  step->add_option("term", termText, "closed term")->required();

  CLI::App* eval = app.add_subcommand("eval", "silent-step normal forms of a term");
  eval->add_option("sig", sigPath, "signature file")->required();
  eval->add_option("term", termText, "closed term")->required();
  eval->add_flag("--machine", useMachine, "use the direct evaluator (delimited control only)");

  CLI::App* bisim = app.add_subcommand("bisim", "bounded-bisimilarity verdict for a pair");
  bisim->add_option("sig", sigPath, "signature file")->required();
  bisim->add_option("left", termText, "closed term")->required();
  bisim->add_option("right", term2Text, "closed term")->required();

  CLI::App* howe = app.add_subcommand("howe", "congruence closure and its property suite");
  howe->add_option("sig", sigPath, "signature file")->required();

  CLI::App* congr = app.add_subcommand("congruence", "randomized closure checks");
  congr->add_option("sig", sigPath, "signature file")->required();

  CLI::App* oracle = app.add_subcommand("oracle-diff", "rule engine vs. direct machine");
  oracle->add_option("term", termText, "closed delimited-control term")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(cfg, sigPath, out);
    if (app.got_subcommand(format)) return run_format_check(cfg, sigPath, out);
    if (app.got_subcommand(step)) return run_step(cfg, sigPath, termText, out);
    if (app.got_subcommand(eval)) return run_eval(cfg, sigPath, termText, useMachine, out);
    if (app.got_subcommand(bisim)) return run_bisim(cfg, sigPath, termText, term2Text, out);
    if (app.got_subcommand(howe)) return run_howe(cfg, sigPath, out);
    if (app.got_subcommand(congr)) return run_congruence(cfg, sigPath, out);
    if (app.got_subcommand(oracle)) return run_oracle_diff(cfg, termText, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace howebench
