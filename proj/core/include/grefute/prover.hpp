#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grefute/conversion.hpp"
#include "grefute/matching.hpp"
#include "grefute/semantics.hpp"

namespace grefute {

struct Budget {
  std::size_t max_expansions = 10'000;
  std::size_t max_slice_nodes = 64;
  double max_wall_time = 30.0;  // seconds
};

/// Slices occurring complemented in s, at any depth, deduplicated by canonical key and
/// listed in canonical-key order.
std::vector<Slice> complemented_slices(const Slice& s);

struct Candidate {
  std::size_t t_index;  // into complemented_slices
  NameList v;
};

/// A candidate (T, v) is decided in s when <T-bar, v> already is an arc or T maps into s with
/// dist(T) onto v; expanding it cannot add anything.
bool decided(const Slice& s, const Slice& t, const NameList& v);

/// All (T, v) pairs, T from complemented_slices(s), v over s's nodes; undecided ones only.
std::vector<Candidate> undecided_candidates(const Slice& s, const std::vector<Slice>& ts,
                                            std::size_t limit = static_cast<std::size_t>(-1));
bool saturated(const Slice& s);

struct Expansion {
  Slice glued;        // S glued with T along v
  Slice complemented; // S plus <T-bar, v>
};

/// Throws StructuralError on arity or name violations.
Expansion expand(const Slice& s, const Slice& t, const NameList& v);

/// Universe = nodes of s, predicates read off the predicate arcs. Refuses (nullopt) unless s is
/// non-zero and saturated, and the identity assignment satisfies every arc of s.
std::optional<FiniteModel> extract_countermodel(const Slice& s);
FiniteModel natural_model(const Slice& s);
Assignment identity_assignment(const Slice& s, const FiniteModel& m);

struct DerivationEvent {
  enum class Kind { Erase, Pad, Expand, Saturate };
  Kind kind;
  std::string slice;
  // Expand
  std::optional<Slice> t;
  NameList v;
  std::vector<std::string> children;  // glued branch, then complemented branch
  // Erase
  std::optional<ZeroWitness> witness;
  // Pad
  std::optional<Name> pad;
};

struct DerivationTrace {
  std::vector<ConversionStep> conversion;
  std::vector<DerivationEvent> events;
};

struct ProofStats {
  std::size_t expansions = 0;   // expansions performed, including abandoned attempts
  std::size_t frontier = 0;     // open leaves left when the search stopped
  std::size_t max_nodes = 0;
  double seconds = 0;
};

enum class VerdictKind { Null, NotNull, Unknown };
std::string verdict_name(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  DerivationTrace trace;
  ProofStats stats;
  std::optional<FiniteModel> model;
  std::optional<Slice> open_slice;  // the saturated slice the model was read from
  std::string open_slice_id;
  Tuple witness;                    // dist of the open slice under the identity assignment
  Assignment assignment;            // for consequence checks: free names of the problem
  std::string reason;

  std::size_t expansion_count() const;
};

/// Slices with stable ids. Children of an expanded slice x are x.0 (glued) and x.1
/// (complemented).
using LabelledSlices = std::vector<std::pair<std::string, Slice>>;
LabelledSlices label_slices(const Graph& g);  // ids "0", "1", ... in graph order

/// Refutation search on the slices of a basic graph.
Verdict prove_slices(const LabelledSlices& slices, const Budget& budget = {});
inline Verdict prove_null(const Graph& g, const Budget& budget = {}) {
  return prove_slices(label_slices(g), budget);
}

/// Builds the difference slice of the premises against the conclusion, normalizes it and
/// refutes it. Null means the consequence holds.
Verdict check_consequence(const std::vector<Formula>& premises, const Formula& conclusion,
                          const Budget& budget = {});
Slice consequence_slice(const std::vector<Formula>& premises, const Formula& conclusion);

/// Re-applies derivation events; every expansion is recomputed and every erasure
/// re-verified. Returns the remaining slices, ordered by id.
LabelledSlices replay_derivation(LabelledSlices slices, const std::vector<DerivationEvent>& events);

Json to_json(const DerivationEvent& e);
DerivationEvent event_from_json(const Json& j);
/// One array: conversion steps, then {"expand"|"erase"|"pad"|"saturate": {...}} records.
Json to_json(const DerivationTrace& t);
DerivationTrace trace_from_json(const Json& j);
bool is_event_json(const Json& j);
Json to_json(const Verdict& v);
Json to_json(const ProofStats& s);

}  // namespace grefute
