#pragma once

#include <string>

#include "howebench/signature.hpp"

namespace howebench {

struct PrintOptions {
  bool surface = false;                 // lambda/application/reset sugar when available
  const std::vector<RuleMVar>* mvars = nullptr;  // names for metavariables, if any
};

// True when the signature has the seven constructors (lam, app, shift, reset,
// hole, capp, cappr) with the shapes the surface syntax expects.
bool has_surface_syntax(const Signature& sig);

// Renders t. ctxNames supplies names for free variables (innermost last);
// missing names are generated. Binder names are generated deterministically.
std::string print_term(const Signature& sig, const Term& t,
                       const std::vector<std::string>& ctxNames = {},
                       const PrintOptions& opts = {});

// "src -edge-> tgt" or "src -edge[l1, l2]-> tgt".
std::string print_transition(const Signature& sig, const Term& src, int edge,
                             const std::vector<Term>& labels, const Term& tgt,
                             const PrintOptions& opts = {});

}  // namespace howebench
