#include "forgetbench/rehearsal.hpp"

#include <cmath>

#include "forgetbench/errors.hpp"

namespace forgetbench {

namespace {

constexpr std::uint64_t kReservoirTag = 0x52455356ULL;  // "RESV"
constexpr std::uint64_t kBufferDrawTag = 0x42554644ULL;
constexpr std::uint64_t kNewDrawTag = 0x4E455744ULL;
constexpr std::uint64_t kMixTag = 0x4D495853ULL;

/// `count` rows uniform over `pool`: without replacement if they fit,
/// with replacement otherwise.
Batch draw_uniform(const Batch& pool, std::size_t count, Rng& rng) {
  if (count <= pool.size()) {
    return pool.select(rng.sample_without_replacement(pool.size(), count));
  }
  std::vector<std::size_t> indices(count);
  for (std::size_t i = 0; i < count; ++i) {
    indices[i] = rng.uniform_index(pool.size());
  }
  return pool.select(indices);
}

}  // namespace

std::string to_string(EpochMode mode) {
  return mode == EpochMode::kFixed ? "fixed" : "expanded";
}

EpochMode parse_epoch_mode(const std::string& name) {
  if (name == "fixed") return EpochMode::kFixed;
  if (name == "expanded") return EpochMode::kExpanded;
  throw ConfigError("unknown epoch mode '" + name + "'");
}

RehearsalBuffer::RehearsalBuffer(std::size_t per_month_cap, std::uint64_t seed)
    : per_month_cap_(per_month_cap), seed_(seed) {
  if (per_month_cap_ == 0) {
    throw ConfigError("rehearsal buffer cap must be positive");
  }
}

std::size_t RehearsalBuffer::total_size() const {
  std::size_t total = 0;
  for (const auto& [month, batch] : reservoirs_) total += batch.size();
  return total;
}

Batch RehearsalBuffer::sample(std::size_t count, std::uint64_t seed) const {
  if (empty()) {
    throw ConfigError("cannot sample from an empty rehearsal buffer");
  }
  // Pool reservoirs in month order so draws are uniform over examples.
  Batch pool;
  for (const auto& [month, batch] : reservoirs_) pool.append(batch);
  Rng rng(seed);
  return draw_uniform(pool, count, rng);
}

RehearsalBuffer update_buffer(RehearsalBuffer buffer, int month_index,
                              const Batch& month_train, std::uint64_t seed) {
  month_train.check_consistent();
  if (buffer.has_month(month_index)) {
    throw ConfigError("rehearsal buffer already stores month " +
                      std::to_string(month_index));
  }
  if (month_train.size() == 0) {
    throw ConfigError("cannot buffer an empty month");
  }
  const std::size_t keep =
      std::min(buffer.per_month_cap_, month_train.size());
  Rng rng(derive_seed(seed, kReservoirTag,
                      static_cast<std::uint64_t>(month_index)));
  buffer.reservoirs_[month_index] = month_train.select(
      rng.sample_without_replacement(month_train.size(), keep));
  return buffer;
}

Batch build_rehearsal_epoch(const Batch& new_month,
                            const RehearsalBuffer& buffer, double p,
                            const EpochPlan& plan, std::uint64_t seed) {
  new_month.check_consistent();
  if (p < 0.0 || p > 1.0) {
    throw ConfigError("rehearsal proportion p must be in [0, 1]");
  }
  if (p > 0.0 && buffer.empty()) {
    throw ConfigError("rehearsal proportion p > 0 requires a nonempty buffer");
  }
  if (new_month.size() == 0) {
    throw ConfigError("build_rehearsal_epoch: empty new-month pool");
  }

  std::size_t from_buffer = 0;
  std::size_t from_new = 0;
  if (plan.mode == EpochMode::kFixed) {
    if (plan.fixed_size == 0) {
      throw ConfigError("fixed epoch mode requires a positive epoch size");
    }
    from_buffer = static_cast<std::size_t>(
        std::llround(p * static_cast<double>(plan.fixed_size)));
    from_new = plan.fixed_size - from_buffer;
  } else {
    if (p == 1.0) {
      throw ConfigError(
          "expanded epoch mode with p = 1 has an undefined mix ratio");
    }
    from_new = new_month.size();
    from_buffer = static_cast<std::size_t>(
        std::llround(p / (1.0 - p) * static_cast<double>(from_new)));
  }

  Batch epoch;
  if (from_buffer > 0) {
    epoch.append(buffer.sample(from_buffer, derive_seed(seed, kBufferDrawTag)));
  }
  if (from_new > 0) {
    Rng rng(derive_seed(seed, kNewDrawTag));
    if (plan.mode == EpochMode::kExpanded && from_new == new_month.size()) {
      epoch.append(new_month);  // expanded mode keeps every new example
    } else {
      epoch.append(draw_uniform(new_month, from_new, rng));
    }
  }
  Rng mix(derive_seed(seed, kMixTag));
  epoch.shuffle(mix);
  return epoch;
}

}  // namespace forgetbench
