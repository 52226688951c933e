#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "howebench/parser.hpp"

inline std::string slurp(const std::string& relPath) {
  std::ifstream in(std::string(TEST_DATA_DIR) + "/" + relPath);
  REQUIRE_MESSAGE(in.good(), "cannot open ", relPath);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const howebench::Signature& shiftresetSig() {
  static howebench::Signature sig = howebench::parse_signature(slurp("signatures/shiftreset.sig"));
  return sig;
}

inline const howebench::Signature& pcfSig() {
  static howebench::Signature sig = howebench::parse_signature(slurp("signatures/pcf.sig"));
  return sig;
}

// Golden transition files: `source | edge | label-or-empty | target` lines,
// `label <term>` lines adding to the label universe, `#` comments.  Every
// shipped edge carries at most one label, so the third field is one term.
struct GoldenTransition {
  howebench::Term src;
  int edge;
  std::vector<howebench::Term> labels;
  howebench::Term tgt;
};

struct GoldenTransitions {
  std::vector<howebench::Term> extraLabels;
  std::vector<GoldenTransition> transitions;
};

inline std::string trimCopy(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline GoldenTransitions parseGoldenTransitions(const howebench::Signature& sig,
                                                const std::string& text) {
  GoldenTransitions out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trimCopy(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("label ", 0) == 0) {
      out.extraLabels.push_back(howebench::parse_term(sig, line.substr(6)));
      continue;
    }
    // '|' never occurs inside term syntax, so a bare split is safe and keeps
    // empty fields (a transition with no label) intact.
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t bar = line.find('|', pos);
      if (bar == std::string::npos) {
        fields.push_back(trimCopy(line.substr(pos)));
        break;
      }
      fields.push_back(trimCopy(line.substr(pos, bar - pos)));
      pos = bar + 1;
    }
    REQUIRE_MESSAGE(fields.size() == 4, "bad golden line: ", line);
    GoldenTransition g{howebench::parse_term(sig, fields[0]), sig.edgeId(fields[1]), {},
                       howebench::parse_term(sig, fields[3])};
    REQUIRE_MESSAGE(g.edge >= 0, "unknown edge in golden line: ", line);
    if (!fields[2].empty()) g.labels.push_back(howebench::parse_term(sig, fields[2]));
    out.transitions.push_back(std::move(g));
  }
  return out;
}
