#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "forgetbench/matrix.hpp"

namespace forgetbench {

enum class EpochMode { kFixed, kExpanded };

std::string to_string(EpochMode mode);
EpochMode parse_epoch_mode(const std::string& name);

/// Epoch construction plan: Fixed pins the epoch to exactly `fixed_size`
/// examples; Expanded keeps all new data and grows the epoch with buffer
/// draws.
struct EpochPlan {
  EpochMode mode = EpochMode::kFixed;
  std::size_t fixed_size = 0;

  static EpochPlan fixed(std::size_t size) {
    return {EpochMode::kFixed, size};
  }
  static EpochPlan expanded() { return {EpochMode::kExpanded, 0}; }
};

/// Uniform per-month reservoirs of past training data. Each stored month
/// keeps at most per_month_cap examples, subsampled uniformly.
class RehearsalBuffer {
 public:
  RehearsalBuffer(std::size_t per_month_cap, std::uint64_t seed);

  bool empty() const { return reservoirs_.empty(); }
  std::size_t month_count() const { return reservoirs_.size(); }
  std::size_t total_size() const;
  bool has_month(int month_index) const {
    return reservoirs_.count(month_index) != 0;
  }
  const std::map<int, Batch>& reservoirs() const { return reservoirs_; }
  std::size_t per_month_cap() const { return per_month_cap_; }
  std::uint64_t seed() const { return seed_; }

  /// `count` examples uniform over the pooled reservoirs: without
  /// replacement when count <= total_size(), with replacement otherwise.
  Batch sample(std::size_t count, std::uint64_t seed) const;

 private:
  friend RehearsalBuffer update_buffer(RehearsalBuffer buffer, int month_index,
                                       const Batch& month_train,
                                       std::uint64_t seed);

  std::map<int, Batch> reservoirs_;
  std::size_t per_month_cap_;
  std::uint64_t seed_;
};

/// Stores a uniform subsample of min(cap, |month_train|) examples for a new
/// month. Existing reservoirs are untouched. Duplicate months are a
/// ConfigError.
RehearsalBuffer update_buffer(RehearsalBuffer buffer, int month_index,
                              const Batch& month_train, std::uint64_t seed);

/// One epoch of mixed new/past data, shuffled.
///   Fixed(E):  round(p*E) buffer examples + (E - round(p*E)) new examples.
///   Expanded:  all new examples + round(p/(1-p) * |new|) buffer examples.
/// Errors: p outside [0,1]; p = 1 with Expanded (undefined ratio); p > 0
/// with an empty buffer.
Batch build_rehearsal_epoch(const Batch& new_month,
                            const RehearsalBuffer& buffer, double p,
                            const EpochPlan& plan, std::uint64_t seed);

}  // namespace forgetbench
