#include "howebench/machine.hpp"

#include <algorithm>
#include <set>

#include "howebench/printer.hpp"

namespace howebench {

namespace {

// Resolved ids of the delimited-control signature, looked up once per entry.
struct Ids {
  int lam, app, shift, reset, hole, capp, cappr;
  int tauE, valE, ctxE;
  SortId vSort, cSort;

  explicit Ids(const Signature& sig)
      : lam(sig.conId("lam")),
        app(sig.conId("app")),
        shift(sig.conId("shift")),
        reset(sig.conId("reset")),
        hole(sig.conId("hole")),
        capp(sig.conId("capp")),
        cappr(sig.conId("cappr")),
        tauE(sig.edgeId("tau")),
        valE(sig.edgeId("val")),
        ctxE(sig.edgeId("ctx")),
        vSort(sig.sortId("v")),
        cSort(sig.sortId("c")) {}
};

bool is_value(const Ids& ids, const Term& t) {
  return t.kind() == Term::Kind::Con && t.head() == ids.lam;
}

// One evaluation frame, outermost-first on the stack: the function position
// of an application with the argument pending, the argument position with
// the function already a value, or a delimiter.
struct Frame {
  enum class Kind { FunPos, ArgPos, Delim };
  Kind kind;
  Term other;  // FunPos: pending argument; ArgPos: the function value
};

Term wrap_frame(const Ids& ids, const Frame& f, Term t) {
  switch (f.kind) {
    case Frame::Kind::FunPos:
      return Term::con(ids.app, {std::move(t), f.other}, {0, 0});
    case Frame::Kind::ArgPos:
      return Term::con(ids.app, {f.other, std::move(t)}, {0, 0});
    case Frame::Kind::Delim:
      return Term::con(ids.reset, {std::move(t)}, {0});
  }
  return t;
}

// Rebuilds the whole program around t from a stack prefix.
Term plug_frames(const Ids& ids, const std::vector<Frame>& stack, std::size_t count,
                 Term t) {
  for (std::size_t i = count; i-- > 0;) t = wrap_frame(ids, stack[i], t);
  return t;
}

// Reifies a frame segment into a context term, hole innermost.
Term reify_frames(const Ids& ids, const std::vector<Frame>& stack, std::size_t from) {
  Term acc = Term::con0(ids.hole);
  for (std::size_t i = stack.size(); i-- > from;) {
    const Frame& f = stack[i];
    switch (f.kind) {
      case Frame::Kind::FunPos:
        acc = Term::con(ids.cappr, {std::move(acc), f.other}, {0, 0});
        break;
      case Frame::Kind::ArgPos:
        acc = Term::con(ids.capp, {f.other, std::move(acc)}, {0, 0});
        break;
      case Frame::Kind::Delim:
        throw EngineError("a delimiter frame cannot be part of a reified context");
    }
  }
  return acc;
}

Term make_lam(const Ids& ids, Term body) {
  return Term::con(ids.lam, {std::move(body)}, {1});
}
Term make_reset(const Ids& ids, Term body) {
  return Term::con(ids.reset, {std::move(body)}, {0});
}

}  // namespace

MachineOutcome machine_step(const Signature& sig, const Term& e) {
  Ids ids(sig);
  std::vector<Frame> stack;
  Term cur = e;
  for (;;) {
    if (cur.kind() != Term::Kind::Con)
      throw EngineError("machine state is not a closed constructor term: " +
                        print_term(sig, cur));
    int h = cur.head();
    if (h == ids.lam) {
      // Only reachable at the top: frames are never pushed onto values.
      MachineOutcome out;
      out.kind = MachineOutcome::Kind::Value;
      out.value = cur;
      return out;
    }
    if (h == ids.app) {
      const Term& fun = cur.args()[0];
      const Term& arg = cur.args()[1];
      if (!is_value(ids, fun)) {
        stack.push_back({Frame::Kind::FunPos, arg});
        cur = fun;
        continue;
      }
      if (!is_value(ids, arg)) {
        stack.push_back({Frame::Kind::ArgPos, fun});
        cur = arg;
        continue;
      }
      Term contractum = substitute(fun.args()[0], {arg});
      MachineOutcome out;
      out.kind = MachineOutcome::Kind::Step;
      out.next = plug_frames(ids, stack, stack.size(), std::move(contractum));
      return out;
    }
    if (h == ids.reset) {
      const Term& inner = cur.args()[0];
      if (is_value(ids, inner)) {
        MachineOutcome out;
        out.kind = MachineOutcome::Kind::Step;
        out.next = plug_frames(ids, stack, stack.size(), inner);
        return out;
      }
      stack.push_back({Frame::Kind::Delim, Term()});
      cur = inner;
      continue;
    }
    if (h == ids.shift) {
      const Term& body = cur.args()[0];
      // Nearest enclosing delimiter, scanning innermost-first.
      std::size_t delim = stack.size();
      for (std::size_t i = stack.size(); i-- > 0;) {
        if (stack[i].kind == Frame::Kind::Delim) {
          delim = i;
          break;
        }
      }
      if (delim == stack.size()) {
        MachineOutcome out;
        out.kind = MachineOutcome::Kind::ControlStuck;
        out.capturedBody = body;
        out.localContext = reify_frames(ids, stack, 0);
        return out;
      }
      // The context between the capture and its delimiter becomes a function
      // that re-delimits whatever it is applied to.
      std::vector<Frame> local(stack.begin() + static_cast<std::ptrdiff_t>(delim) + 1,
                               stack.end());
      Term plugged = plug_frames(ids, local, local.size(), Term::var(0));
      Term k = make_lam(ids, make_reset(ids, std::move(plugged)));
      Term contractum = make_reset(ids, substitute(body, {k}));
      MachineOutcome out;
      out.kind = MachineOutcome::Kind::Step;
      out.next = plug_frames(ids, stack, delim, std::move(contractum));
      return out;
    }
    throw EngineError("machine state has no evaluation rule: " + print_term(sig, cur));
  }
}

MachineLabels machine_weak_labels(const Signature& sig, const Term& e, int fuel) {
  Ids ids(sig);
  MachineLabels out;
  std::set<Term> seen;
  Term cur = e;
  for (int step = 0; step <= fuel; ++step) {
    if (!seen.insert(cur).second) {
      out.complete = true;
      out.diverged = true;
      return out;
    }
    out.trace.push_back(cur);
    MachineOutcome o = machine_step(sig, cur);
    switch (o.kind) {
      case MachineOutcome::Kind::Value:
        out.complete = true;
        out.vFamily = o.value.args()[0];
        return out;
      case MachineOutcome::Kind::ControlStuck:
        out.complete = true;
        out.cFamily = {o.capturedBody, o.localContext};
        return out;
      case MachineOutcome::Kind::Step:
        cur = o.next;
        break;
    }
  }
  out.diverged = true;  // fuel ran out; complete stays false
  return out;
}

Term machine_plug(const Signature& sig, const Term& ctx, const Term& t) {
  Ids ids(sig);
  if (ctx.kind() != Term::Kind::Con)
    throw EngineError("not a context term: " + print_term(sig, ctx));
  if (ctx.head() == ids.hole) return t;
  if (ctx.head() == ids.capp)
    return Term::con(ids.app, {ctx.args()[0], machine_plug(sig, ctx.args()[1], t)},
                     {0, 0});
  if (ctx.head() == ids.cappr)
    return Term::con(ids.app, {machine_plug(sig, ctx.args()[0], t), ctx.args()[1]},
                     {0, 0});
  throw EngineError("not a context term: " + print_term(sig, ctx));
}

namespace {

// The machine's silent-reachable set, when it is knowable within fuel.
std::optional<std::set<Term>> machine_tau_set(const Signature& sig, const Term& e,
                                              int fuel) {
  MachineLabels ml = machine_weak_labels(sig, e, fuel);
  if (!ml.complete) return std::nullopt;
  return std::set<Term>(ml.trace.begin(), ml.trace.end());
}

std::string show_set(const Signature& sig, const std::set<Term>& s) {
  std::string out = "{";
  bool first = true;
  for (const Term& t : s) {
    if (!first) out += ", ";
    first = false;
    out += print_term(sig, t);
  }
  return out + "}";
}

}  // namespace

OracleReport oracle_compare(const Signature& sig, const Term& e, int fuel,
                            const LabelUniverse& labels) {
  Ids ids(sig);
  OracleReport rep;
  EngineConfig cfg;
  cfg.fuel = fuel;
  TransitionStore st = derive_transitions(sig, {e}, labels, cfg);
  MachineLabels ml = machine_weak_labels(sig, e, fuel);

  auto cell_of = [&](int edge, const std::vector<Term>& labs) -> std::set<Term> {
    const auto* tg = st.targets(e, edge, labs);
    return tg ? *tg : std::set<Term>{};
  };
  auto compare = [&](const std::string& what, const std::set<Term>& engine,
                     const std::set<Term>& machine) {
    rep.checked++;
    if (engine != machine)
      rep.diffs.push_back(what + ": engine " + show_set(sig, engine) + " vs machine " +
                          show_set(sig, machine));
  };

  // Silent closure.
  if (!ml.complete || !st.exhausted(e, ids.tauE)) {
    rep.skipped++;
  } else {
    compare("tau closure of " + print_term(sig, e), cell_of(ids.tauE, {}),
            std::set<Term>(ml.trace.begin(), ml.trace.end()));
  }

  // Value family, one comparison per stored label.
  auto vLabels = labels.terms.find(ids.vSort);
  if (!ml.complete || !st.exhausted(e, ids.valE)) {
    rep.skipped++;
  } else if (!ml.vFamily) {
    compare("value family of " + print_term(sig, e) + " (expected none)",
            [&] {
              std::set<Term> all;
              const auto* r = st.row(e, ids.valE);
              if (r)
                for (const auto& [labs, tgts] : r->byLabel)
                  all.insert(tgts.begin(), tgts.end());
              return all;
            }(),
            {});
  } else if (vLabels != labels.terms.end()) {
    for (const Term& w : vLabels->second) {
      auto ms = machine_tau_set(sig, substitute(*ml.vFamily, {w}), fuel);
      if (!ms) {
        rep.skipped++;
        continue;
      }
      compare("value family of " + print_term(sig, e) + " at " + print_term(sig, w),
              cell_of(ids.valE, {w}), *ms);
    }
  }

  // Capture family, one comparison per stored context label.
  auto cLabels = labels.terms.find(ids.cSort);
  if (!ml.complete || !st.exhausted(e, ids.ctxE)) {
    rep.skipped++;
  } else if (!ml.cFamily) {
    compare("capture family of " + print_term(sig, e) + " (expected none)",
            [&] {
              std::set<Term> all;
              const auto* r = st.row(e, ids.ctxE);
              if (r)
                for (const auto& [labs, tgts] : r->byLabel)
                  all.insert(tgts.begin(), tgts.end());
              return all;
            }(),
            {});
  } else if (cLabels != labels.terms.end()) {
    const auto& [body, local] = *ml.cFamily;
    for (const Term& ctxLabel : cLabels->second) {
      Term inner = machine_plug(sig, local, Term::var(0));
      Term k = make_lam(ids, make_reset(ids, machine_plug(sig, ctxLabel, inner)));
      Term target = make_reset(ids, substitute(body, {k}));
      auto ms = machine_tau_set(sig, target, fuel);
      if (!ms) {
        rep.skipped++;
        continue;
      }
      compare("capture family of " + print_term(sig, e) + " at " +
                  print_term(sig, ctxLabel),
              cell_of(ids.ctxE, {ctxLabel}), *ms);
    }
  }

  return rep;
}

}  // namespace howebench
