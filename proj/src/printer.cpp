#include "howebench/printer.hpp"

#include <array>

#include "howebench/term.hpp"

namespace howebench {

namespace {

const std::array<const char*, 6> kBinderBases = {"x", "y", "z", "w", "u", "k"};

bool nameTaken(const Signature& sig, const std::vector<std::string>& names,
               const std::string& cand) {
  if (sig.conId(cand) >= 0 || sig.opId(cand) >= 0) return true;
  for (const auto& n : names)
    if (n == cand) return true;
  return false;
}

std::string freshName(const Signature& sig, const std::vector<std::string>& names) {
  for (int round = 0;; ++round) {
    for (const char* base : kBinderBases) {
      std::string cand = round == 0 ? std::string(base)
                                    : std::string(base) + std::to_string(round);
      if (!nameTaken(sig, names, cand)) return cand;
    }
  }
}

struct Printer {
  const Signature& sig;
  const PrintOptions& opts;
  bool surface;

  int id(const std::string& name) const { return sig.conId(name); }

  std::string varName(const std::vector<std::string>& names, int index) const {
    if (index >= 0 && index < static_cast<int>(names.size()))
      return names[names.size() - 1 - index];
    return "?v" + std::to_string(index);
  }

  std::string mvarName(int m) const {
    if (opts.mvars != nullptr && m >= 0 && m < static_cast<int>(opts.mvars->size()))
      return (*opts.mvars)[m].name;
    return "?m" + std::to_string(m);
  }

  bool isSurfaceCon(const Term& t, const char* name, size_t arity) const {
    return t.head() == sig.conId(name) && t.args().size() == arity;
  }

  // Surface grammar: lambda and shift bodies extend to the right (precedence
  // 0), application/juxtaposition associates left (precedence 10), atoms 20.
  std::string go(const Term& t, int prec, std::vector<std::string>& names) const {
    if (surface && t.kind() == Term::Kind::Con) {
      if (isSurfaceCon(t, "lam", 1) || isSurfaceCon(t, "shift", 1)) {
        std::string n = freshName(sig, names);
        names.push_back(n);
        std::string body = go(t.args()[0], 0, names);
        names.pop_back();
        std::string s = (t.head() == sig.conId("lam") ? "\\" + n : "shift " + n) + ". " + body;
        return prec > 0 ? "(" + s + ")" : s;
      }
      if (isSurfaceCon(t, "reset", 1)) return "<" + go(t.args()[0], 0, names) + ">";
      if (isSurfaceCon(t, "hole", 0)) return "[]";
      if (isSurfaceCon(t, "app", 2) || isSurfaceCon(t, "capp", 2) ||
          isSurfaceCon(t, "cappr", 2)) {
        std::string s = go(t.args()[0], 10, names) + " " + go(t.args()[1], 11, names);
        return prec > 10 ? "(" + s + ")" : s;
      }
    }
    return generic(t, names);
  }

  std::string generic(const Term& t, std::vector<std::string>& names) const {
    switch (t.kind()) {
      case Term::Kind::Var:
        return varName(names, t.head());
      case Term::Kind::MVar:
        return mvarName(t.head());
      case Term::Kind::Con: {
        const ConDecl& con = sig.cons[t.head()];
        if (t.args().empty()) return con.name;
        std::string s = con.name + "(";
        for (size_t i = 0; i < t.args().size(); ++i) {
          if (i > 0) s += ", ";
          size_t nBinders = static_cast<size_t>(t.binders(i));
          std::vector<std::string> fresh;
          for (size_t b = 0; b < nBinders; ++b) {
            fresh.push_back(freshName(sig, names));
            names.push_back(fresh.back());
          }
          for (const auto& n : fresh) s += n + " ";
          if (!fresh.empty()) {
            s.pop_back();
            s += ". ";
          }
          s += go(t.args()[i], 0, names);
          for (size_t b = 0; b < nBinders; ++b) names.pop_back();
        }
        return s + ")";
      }
      case Term::Kind::OpCall: {
        std::string s = sig.ops[t.head()].name + "(" + go(t.args()[0], 0, names);
        if (t.args().size() > 1) {
          s += "; ";
          for (size_t i = 1; i < t.args().size(); ++i) {
            if (i > 1) s += ", ";
            s += go(t.args()[i], 0, names);
          }
        }
        return s + ")";
      }
      case Term::Kind::Subst: {
        const Term& body = t.args()[0];
        std::string b = generic(body, names);
        bool atomic = body.kind() == Term::Kind::Var || body.kind() == Term::Kind::MVar ||
                      (body.kind() == Term::Kind::Con && body.args().empty());
        std::string s = atomic ? b : "(" + b + ")";
        s += "[";
        for (size_t i = 1; i < t.args().size(); ++i) {
          if (i > 1) s += ", ";
          s += go(t.args()[i], 0, names);
        }
        return s + "]";
      }
    }
    return "?";
  }
};

}  // namespace

bool has_surface_syntax(const Signature& sig) {
  struct Shape {
    const char* name;
    size_t arity;
    size_t bindersOnFirst;
  };
  const Shape shapes[] = {{"lam", 1, 1},  {"app", 2, 0},  {"shift", 1, 1}, {"reset", 1, 0},
                          {"hole", 0, 0}, {"capp", 2, 0}, {"cappr", 2, 0}};
  for (const Shape& sh : shapes) {
    int c = sig.conId(sh.name);
    if (c < 0) return false;
    const ConDecl& decl = sig.cons[c];
    if (decl.args.size() != sh.arity) return false;
    if (sh.arity > 0 && decl.args[0].binders.size() != sh.bindersOnFirst) return false;
    for (size_t i = 1; i < decl.args.size(); ++i)
      if (!decl.args[i].binders.empty()) return false;
  }
  return true;
}

std::string print_term(const Signature& sig, const Term& t,
                       const std::vector<std::string>& ctxNames, const PrintOptions& opts) {
  if (!t.valid()) return "<invalid>";
  Printer p{sig, opts, opts.surface && has_surface_syntax(sig)};
  std::vector<std::string> names = ctxNames;
  int maxFree = max_free_index(t);
  while (static_cast<int>(names.size()) <= maxFree)
    names.insert(names.begin(), "g" + std::to_string(names.size()));
  return p.go(t, 0, names);
}

std::string print_transition(const Signature& sig, const Term& src, int edge,
                             const std::vector<Term>& labels, const Term& tgt,
                             const PrintOptions& opts) {
  std::string s = print_term(sig, src, {}, opts) + " -" + sig.edges[edge].name;
  if (!labels.empty()) {
    s += "[";
    for (size_t i = 0; i < labels.size(); ++i) {
      if (i > 0) s += ", ";
      s += print_term(sig, labels[i], {}, opts);
    }
    s += "]";
  }
  s += "-> " + print_term(sig, tgt, {}, opts);
  return s;
}

}  // namespace howebench
