#pragma once

#include <optional>
#include <string>

#include "fopkit/dual.hpp"
#include "fopkit/problems.hpp"
#include "fopkit/query.hpp"

namespace fopkit {

struct SweepOptions {
  int jobs = 1;  // worker threads for exhaustive sweeps; results are
                 // independent of the setting
  EvalOptions eval;
};

// Whether a and b agree on membership in the problem.
bool cong(const Problem& pi, const Structure& a, const Structure& b);

struct ReductionReport {
  bool verified = false;
  // First structure (in enumeration order) witnessing a disagreement.
  std::optional<Structure> counterexample;
  std::string note;  // which side claimed what
  int min_size = 0;
  int max_size = 0;
  uint64_t structures_checked = 0;
  double seconds = 0.0;
};

// A in source exactly when its image is in target, for every source
// structure with min_size <= |A| <= max_size.
ReductionReport verify_reduction(const Query& p, const Problem& source,
                                 const Problem& target, int min_size, int max_size,
                                 const SweepOptions& opt = {});

// Applying p and then the back-query lands in the problem's membership class
// of the original: pi.member(back(p(A))) == pi.member(A).
ReductionReport verify_condition_c(const Query& back, const Query& p, const Problem& pi,
                                   int min_size, int max_size,
                                   const SweepOptions& opt = {});

// The two-branch sentence over p's target vocabulary: inside the image,
// defer to the rewritten source sentence; outside it, to the residue.
struct Decomposition {
  Query p;
  Query back;
  Formula source_sentence;  // over p's source vocabulary
  Formula residue;          // over p's target vocabulary
  Formula characteristic;   // over p's target vocabulary
  DualResult dual;          // source_sentence pulled through back
  Formula assembled;
};

Decomposition build_decomposition(const Query& p, const Query& back, const Formula& psi,
                                  const Formula& lambda, const Formula& beta);

// Membership in the target problem coincides with the assembled sentence on
// every structure of the bounded sizes.
ReductionReport verify_decomposition(const Decomposition& d, const Problem& target,
                                     int min_size, int max_size,
                                     const SweepOptions& opt = {});

}  // namespace fopkit
