#include "fopkit/verify.hpp"

#include <chrono>
#include <exception>
#include <thread>
#include <vector>

#include "fopkit/errors.hpp"
#include "fopkit/formula_ops.hpp"

namespace fopkit {

bool cong(const Problem& pi, const Structure& a, const Structure& b) {
  return pi.member(a) == pi.member(b);
}

namespace {

struct Hit {
  uint64_t index;
  Structure structure;
  std::string note;
};

// Scans every structure of one size and reports the first (lowest-index)
// one the predicate flags.  `flag` returns a note when the structure is a
// counterexample.  Work is split into contiguous index ranges, one per
// worker, so the winning index is the global minimum and independent of the
// job count.
std::optional<Hit> sweep_size(
    const VocabularyPtr& vocab, int size, int jobs, uint64_t budget,
    const std::function<std::optional<std::string>(const Structure&)>& flag,
    uint64_t& checked) {
  StructureSpace space(vocab, size);
  if (!space.count_exact() || space.count() > budget)
    fail(Errc::BudgetExceeded,
         "sweep over size-" + std::to_string(size) + " structures exceeds the budget");
  uint64_t count = space.count();
  checked += count;
  int workers = jobs;
  if (workers < 1) workers = 1;
  if (static_cast<uint64_t>(workers) > count) workers = static_cast<int>(count);
  if (workers == 1) {
    Structure a = space.at(0);
    uint64_t index = 0;
    for (;;) {
      std::optional<std::string> note = flag(a);
      if (note) {
        checked -= count - (index + 1);
        return Hit{index, a, *note};
      }
      ++index;
      if (!StructureSpace::advance(a)) break;
    }
    return std::nullopt;
  }
  std::vector<std::optional<Hit>> hits(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    uint64_t lo = count / workers * w + std::min<uint64_t>(count % workers, w);
    uint64_t hi = lo + count / workers + (static_cast<uint64_t>(w) < count % workers ? 1 : 0);
    threads.emplace_back([&, w, lo, hi]() {
      try {
        if (lo >= hi) return;
        Structure a = space.at(lo);
        for (uint64_t i = lo; i < hi; ++i) {
          std::optional<std::string> note = flag(a);
          if (note) {
            hits[w] = Hit{i, a, *note};
            return;
          }
          if (i + 1 < hi && !StructureSpace::advance(a)) break;
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::optional<Hit> best;
  for (auto& h : hits)
    if (h && (!best || h->index < best->index)) best = h;
  // The counter reports the prefix up to the winning index so that the
  // figure does not depend on the job count.
  if (best) checked -= count - (best->index + 1);
  return best;
}

ReductionReport run_sweep(
    const VocabularyPtr& vocab, int min_size, int max_size, const SweepOptions& opt,
    const std::function<std::optional<std::string>(const Structure&)>& flag) {
  if (min_size < 1 || max_size < min_size)
    fail(Errc::OutOfRange, "size range must satisfy 1 <= min <= max");
  auto start = std::chrono::steady_clock::now();
  ReductionReport report;
  report.min_size = min_size;
  report.max_size = max_size;
  for (int n = min_size; n <= max_size; ++n) {
    std::optional<Hit> hit =
        sweep_size(vocab, n, opt.jobs, opt.eval.budget, flag, report.structures_checked);
    if (hit) {
      report.counterexample = hit->structure;
      report.note = hit->note;
      break;
    }
  }
  report.verified = !report.counterexample.has_value();
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

ReductionReport verify_reduction(const Query& p, const Problem& source,
                                 const Problem& target, int min_size, int max_size,
                                 const SweepOptions& opt) {
  if (!source.vocab->same_signature(*p.source()) ||
      !target.vocab->same_signature(*p.target()))
    fail(Errc::VocabularyMismatch, "query does not connect the two problems");
  return run_sweep(p.source(), min_size, max_size, opt,
                   [&](const Structure& a) -> std::optional<std::string> {
                     bool in_source = source.member(a);
                     bool in_target = target.member(apply_query(p, a, opt.eval));
                     if (in_source == in_target) return std::nullopt;
                     return (in_source ? "in " + source.name : "not in " + source.name) +
                            ", image " + (in_target ? "in " : "not in ") + target.name;
                   });
}

ReductionReport verify_condition_c(const Query& back, const Query& p, const Problem& pi,
                                   int min_size, int max_size, const SweepOptions& opt) {
  if (!pi.vocab->same_signature(*p.source()) ||
      !p.target()->same_signature(*back.source()) ||
      !back.target()->same_signature(*pi.vocab))
    fail(Errc::VocabularyMismatch, "queries do not round-trip the problem's vocabulary");
  return run_sweep(p.source(), min_size, max_size, opt,
                   [&](const Structure& a) -> std::optional<std::string> {
                     Structure round = apply_query(back, apply_query(p, a, opt.eval), opt.eval);
                     bool original = pi.member(a);
                     bool returned = pi.member(round);
                     if (original == returned) return std::nullopt;
                     return std::string("structure ") + (original ? "in " : "not in ") +
                            pi.name + " but its round trip is " +
                            (returned ? "in" : "not in");
                   });
}

Decomposition build_decomposition(const Query& p, const Query& back, const Formula& psi,
                                  const Formula& lambda, const Formula& beta) {
  if (!p.target()->same_signature(*back.source()) ||
      !p.source()->same_signature(*back.target()))
    fail(Errc::InvalidQuery, "the back-query must invert the projection's vocabularies");
  Decomposition d{p, back, psi, lambda, beta, {}, {}};
  d.dual = syntactic_dual(back, elaborate(psi));
  Formula guard = elaborate(beta);
  d.assembled = f_or(f_and(guard, d.dual.formula),
                     f_and(f_not(guard), elaborate(lambda)));
  return d;
}

ReductionReport verify_decomposition(const Decomposition& d, const Problem& target,
                                     int min_size, int max_size, const SweepOptions& opt) {
  if (!target.vocab->same_signature(*d.p.target()))
    fail(Errc::VocabularyMismatch, "target problem is not over the projection's image vocabulary");
  return run_sweep(d.p.target(), min_size, max_size, opt,
                   [&](const Structure& b) -> std::optional<std::string> {
                     bool in_target = target.member(b);
                     bool satisfied = eval_so(b, d.assembled, opt.eval);
                     if (in_target == satisfied) return std::nullopt;
                     return std::string(in_target ? "in " : "not in ") + target.name +
                            " but the assembled sentence is " +
                            (satisfied ? "satisfied" : "not satisfied");
                   });
}

}  // namespace fopkit
