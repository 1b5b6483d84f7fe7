#include <cmath>
#include <set>

#include <doctest.h>

#include "forgetbench/errors.hpp"
#include "forgetbench/rehearsal.hpp"
#include "test_util.hpp"

using namespace forgetbench;

namespace {

/// Batch whose rows all carry `marker` in feature 0 so provenance is
/// countable after mixing. Feature 1 is the row index.
Batch marked_batch(std::size_t n, double marker) {
  Batch batch;
  batch.features = Matrix(n, 2);
  batch.labels.assign(n, 1);
  for (std::size_t r = 0; r < n; ++r) {
    batch.features.at(r, 0) = marker;
    batch.features.at(r, 1) = static_cast<double>(r);
    batch.labels[r] = r % 2 == 0 ? 1 : 0;
  }
  return batch;
}

std::size_t count_marker(const Batch& batch, double marker) {
  std::size_t n = 0;
  for (std::size_t r = 0; r < batch.size(); ++r) {
    if (batch.features.at(r, 0) == marker) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("update_buffer keeps the whole month when the cap allows") {
  RehearsalBuffer buffer(100, 1);
  buffer = update_buffer(buffer, 0, marked_batch(60, 0.0), 5);
  CHECK(buffer.month_count() == 1);
  CHECK(buffer.total_size() == 60);
  CHECK(buffer.reservoirs().at(0).size() == 60);
}

TEST_CASE("update_buffer subsamples to the cap and leaves others alone") {
  RehearsalBuffer buffer(10, 1);
  buffer = update_buffer(buffer, 0, marked_batch(60, 0.0), 5);
  const Batch before = buffer.reservoirs().at(0);
  buffer = update_buffer(buffer, 3, marked_batch(50, 3.0), 6);
  CHECK(buffer.reservoirs().at(3).size() == 10);
  CHECK(buffer.reservoirs().at(0).features.data == before.features.data);
  CHECK_THROWS_AS(update_buffer(buffer, 3, marked_batch(5, 1.0), 7),
                  ConfigError);
}

TEST_CASE("update_buffer reservoirs differ across seeds but match in size") {
  const Batch pool = marked_batch(400, 0.0);
  RehearsalBuffer a(50, 1);
  a = update_buffer(a, 0, pool, 101);
  RehearsalBuffer b(50, 1);
  b = update_buffer(b, 0, pool, 102);
  CHECK(a.reservoirs().at(0).size() == b.reservoirs().at(0).size());
  CHECK(a.reservoirs().at(0).features.data != b.reservoirs().at(0).features.data);
}

TEST_CASE("update_buffer subsamples uniformly (chi-square over seeds)") {
  // cap 100 of 4000: inclusion probability 1/40 per example. Counting
  // inclusions over 1000 seeds, the chi-square statistic over 4000 cells
  // has mean ~3999 and sd ~89; 5 sigma leaves huge slack for a correct
  // sampler and catches any index bias.
  constexpr std::size_t kPool = 4000, kCap = 100, kSeeds = 1000;
  const Batch pool = marked_batch(kPool, 0.0);
  std::vector<std::size_t> hits(kPool, 0);
  for (std::size_t s = 0; s < kSeeds; ++s) {
    RehearsalBuffer buffer(kCap, 1);
    buffer = update_buffer(buffer, 0, pool, 5000 + s);
    const Batch& reservoir = buffer.reservoirs().at(0);
    REQUIRE(reservoir.size() == kCap);
    for (std::size_t r = 0; r < reservoir.size(); ++r) {
      hits[static_cast<std::size_t>(reservoir.features.at(r, 1))] += 1;
    }
  }
  const double expected =
      static_cast<double>(kSeeds) * kCap / static_cast<double>(kPool);  // 25
  double chi2 = 0.0;
  for (std::size_t i = 0; i < kPool; ++i) {
    const double d = static_cast<double>(hits[i]) - expected;
    chi2 += d * d / expected;
  }
  CHECK(chi2 > 3999.0 - 5.0 * 89.0);
  CHECK(chi2 < 3999.0 + 5.0 * 89.0);
}

TEST_CASE("rehearsal epoch with p = 0 uses new-month data only") {
  RehearsalBuffer buffer(100, 1);
  buffer = update_buffer(buffer, 0, marked_batch(50, -1.0), 2);
  const Batch new_month = marked_batch(40, 1.0);

  const Batch fixed =
      build_rehearsal_epoch(new_month, buffer, 0.0, EpochPlan::fixed(40), 7);
  CHECK(fixed.size() == 40);
  CHECK(count_marker(fixed, 1.0) == 40);

  const Batch expanded =
      build_rehearsal_epoch(new_month, buffer, 0.0, EpochPlan::expanded(), 7);
  CHECK(expanded.size() == 40);
  CHECK(count_marker(expanded, 1.0) == 40);
}

TEST_CASE("fixed-mode epoch splits exactly per the proportion") {
  RehearsalBuffer buffer(5000, 1);
  buffer = update_buffer(buffer, 0, marked_batch(3000, -1.0), 2);
  buffer = update_buffer(buffer, 1, marked_batch(3000, -2.0), 3);
  const Batch new_month = marked_batch(4000, 1.0);

  const Batch epoch = build_rehearsal_epoch(new_month, buffer, 0.5,
                                            EpochPlan::fixed(4000), 11);
  CHECK(epoch.size() == 4000);
  CHECK(count_marker(epoch, 1.0) == 2000);
  CHECK(count_marker(epoch, -1.0) + count_marker(epoch, -2.0) == 2000);
}

TEST_CASE("fixed-mode epoch size is exactly E for any p") {
  RehearsalBuffer buffer(200, 1);
  buffer = update_buffer(buffer, 0, marked_batch(200, -1.0), 2);
  const Batch new_month = marked_batch(100, 1.0);
  for (double p : {0.0, 0.1, 0.25, 0.333, 0.5, 0.75, 0.9, 1.0}) {
    const Batch epoch = build_rehearsal_epoch(new_month, buffer, p,
                                              EpochPlan::fixed(120), 31);
    CHECK(epoch.size() == 120);
    CHECK(count_marker(epoch, -1.0) ==
          static_cast<std::size_t>(std::llround(p * 120.0)));
  }
}

TEST_CASE("expanded-mode epoch keeps all new data and grows by p/(1-p)") {
  RehearsalBuffer buffer(5000, 1);
  buffer = update_buffer(buffer, 0, marked_batch(4000, -1.0), 2);
  const Batch new_month = marked_batch(4000, 1.0);

  const Batch epoch = build_rehearsal_epoch(new_month, buffer, 0.5,
                                            EpochPlan::expanded(), 13);
  CHECK(epoch.size() == 8000);
  CHECK(count_marker(epoch, 1.0) == 4000);
  CHECK(count_marker(epoch, -1.0) == 4000);

  for (double p : {0.2, 0.25, 0.4, 0.75}) {
    const Batch e = build_rehearsal_epoch(new_month, buffer, p,
                                          EpochPlan::expanded(), 17);
    const auto expected_buffer = static_cast<std::size_t>(
        std::llround(p / (1.0 - p) * 4000.0));
    CHECK(e.size() == 4000 + expected_buffer);
    CHECK(count_marker(e, 1.0) == 4000);
  }
}

TEST_CASE("buffer draws exceeding the reservoir fall back to replacement") {
  RehearsalBuffer buffer(30, 1);
  buffer = update_buffer(buffer, 0, marked_batch(30, -1.0), 2);
  const Batch new_month = marked_batch(40, 1.0);
  // p = 0.75 expanded needs 120 buffer examples from a 30-example pool.
  const Batch epoch = build_rehearsal_epoch(new_month, buffer, 0.75,
                                            EpochPlan::expanded(), 19);
  CHECK(count_marker(epoch, -1.0) == 120);
}

TEST_CASE("rehearsal epoch error paths") {
  RehearsalBuffer empty(10, 1);
  const Batch new_month = marked_batch(10, 1.0);
  CHECK_THROWS_AS(build_rehearsal_epoch(new_month, empty, 0.5,
                                        EpochPlan::fixed(10), 1),
                  ConfigError);

  RehearsalBuffer buffer(10, 1);
  buffer = update_buffer(buffer, 0, marked_batch(10, -1.0), 2);
  CHECK_THROWS_AS(build_rehearsal_epoch(new_month, buffer, 1.0,
                                        EpochPlan::expanded(), 1),
                  ConfigError);
  CHECK_THROWS_AS(build_rehearsal_epoch(new_month, buffer, -0.1,
                                        EpochPlan::fixed(10), 1),
                  ConfigError);
  CHECK_THROWS_AS(build_rehearsal_epoch(new_month, buffer, 1.5,
                                        EpochPlan::fixed(10), 1),
                  ConfigError);
}

TEST_CASE("rehearsal epochs are deterministic per seed") {
  RehearsalBuffer buffer(100, 1);
  buffer = update_buffer(buffer, 0, marked_batch(80, -1.0), 2);
  const Batch new_month = marked_batch(60, 1.0);
  const Batch a = build_rehearsal_epoch(new_month, buffer, 0.5,
                                        EpochPlan::fixed(60), 23);
  const Batch b = build_rehearsal_epoch(new_month, buffer, 0.5,
                                        EpochPlan::fixed(60), 23);
  CHECK(a.features.data == b.features.data);
  CHECK(a.labels == b.labels);
  const Batch c = build_rehearsal_epoch(new_month, buffer, 0.5,
                                        EpochPlan::fixed(60), 24);
  CHECK(a.features.data != c.features.data);
}
