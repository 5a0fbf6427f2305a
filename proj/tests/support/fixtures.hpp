#pragma once

// Worked examples, spelled out by hand. Primes become "p" (v' -> vp), subscripts digits.

#include <string>
#include <vector>

#include "grefute/expression.hpp"

namespace gt {

// problem files, in the CLI format
extern const char* const kConjunctionElim;
extern const char* const kUnrelatedNames;
extern const char* const kEqualitySubst;
extern const char* const kExistentialIntro;
extern const char* const kDroppedConjunct;
extern const char* const kLargePremise;
extern const char* const kLargeConclusion;
extern const char* const kTwoBoxes;

grefute::Arc pred_arc(const std::string& p, grefute::NameList args);
grefute::Arc cmpl_arc(const grefute::Slice& t, grefute::NameList args);

/// D' and D'' of the morphism example.
grefute::Draft large_target();
grefute::Draft large_source();

/// Slice T = <{u,v,w}; r uv, s vw; [u,w]> and the zero draft D built around it.
grefute::Slice zero_t();
grefute::Draft zero_draft();

/// Expected basic forms for the two quantifier orders.
grefute::Slice exists_forall_expected();  // exists y forall z. r(y,z)
grefute::Slice forall_exists_expected();  // forall y exists z. r(y,z)

/// Drafts used for the morphism cross-check against brute force.
std::vector<grefute::Draft> small_drafts();

}  // namespace gt
