#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lambda2/core.hpp"

namespace lambda2 {

struct SweepFailure {
    std::string input, expected, got;
    bool operator==(const SweepFailure&) const = default;
};

/* Outcome of one verification sweep.  Wall time is informational only: it is
 * excluded from equality and from every serialized form, so reports are
 * byte-identical across runs and worker counts. */
struct SweepReport {
    std::string suite;
    Int bound;
    std::uint64_t instances = 0;
    std::vector<SweepFailure> failures;
    std::int64_t wall_ms = 0;

    bool passed() const { return failures.empty(); }
    bool operator==(const SweepReport& o) const {
        return suite == o.suite && bound == o.bound && instances == o.instances &&
               failures == o.failures;
    }
};

/* Suite ids, with the default bound used when bound <= 0:
 *   genus                50000   two_rank == (ramified primes) - 1
 *   scholz-units         50000   (h+, h, unit norm) against the symbol branch
 *   redei-oracle         50000   matrix 4-rank == brute-force 4-rank
 *   scholz-reciprocity  100000   symbol == quartic product, p = 1 mod 8
 *   hilbert-product       1000   product formula, both base fields
 *   unit-norm-bridge    100000   dyadic unit image vs quartic product
 *   wide-two-part       100000   wide 2-class group [2,2] at qualifying pairs
 *   unit-decomposition   20000   d1 = 1, d2 = D at qualifying pairs
 *   pattern-rank            25   2^7 pattern exhaustion + matrix ranks
 *   classifier-golden        -   frozen verdicts and the search golden list
 *   normalize-invariance 10000   classify(2D) status == classify(D) status */
std::vector<std::string> suite_names();

/* Runs one suite.  Instances are enumerated in a fixed order and sharded by
 * index modulo the worker count, so the report is independent of workers.
 * Throws unknown_suite for an unrecognized name. */
SweepReport run_suite(const std::string& name, const Int& bound, unsigned workers);

enum class ReportFormat { Json, Csv, Text };

std::string emit(const SweepReport& r, ReportFormat format);

/* Inverse of emit(.., Json); wall time comes back as zero. */
SweepReport parse_report(const std::string& json);

/* Append-only memo of (operation, canonical input) -> serialized output,
 * persisted as one JSON record per line.  Every hundredth hit is recomputed
 * through the supplied closure and compared bit for bit; any mismatch, and any
 * malformed or self-contradictory line on load, raises cache_corruption.
 * Single-threaded use only.  Verification suites never consult a cache. */
class ResultCache {
  public:
    explicit ResultCache(std::string path);

    std::string lookup(const std::string& op, const std::string& input,
                       const std::function<std::string()>& compute);

    std::uint64_t hits() const { return hits_; }
    std::uint64_t misses() const { return misses_; }
    std::size_t size() const { return entries_.size(); }

  private:
    std::string path_;
    std::map<std::string, std::string> entries_;
    std::uint64_t hits_ = 0, misses_ = 0;
};

}  // namespace lambda2
