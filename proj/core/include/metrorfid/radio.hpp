#pragma once

#include <span>
#include <vector>

#include "metrorfid/random.hpp"
#include "metrorfid/track.hpp"
#include "metrorfid/units.hpp"

namespace metrorfid {

// Reference distance d0 of the log-distance model.
inline constexpr double kReferenceDistance = 1.0;

struct RadioParams {
  double ref_power_dbm = -40.0;     // received power at d0
  double path_loss_exponent = 2.0;  // n
  double noise_sigma_db = 2.0;      // shadowing standard deviation
  double read_range_m = 150.0;
  double read_probability = 0.98;   // per tag, per tick

  // Throws ConfigError unless n in [1.5, 4], sigma >= 0, range in (0, 300],
  // probability in (0, 1].
  void validate() const;

  bool operator==(const RadioParams&) const = default;
};

struct ScanEvent {
  TagCode tag_code = 0;
  double rssi_dbm = 0.0;
  double est_distance = 0.0;
  Tick tick = 0;

  bool operator==(const ScanEvent&) const = default;
};

// ref_power - 10 n log10(d / d0) + N(0, sigma^2). Throws DomainError for
// d < d0. No random draw is made when sigma is zero.
double rssi_at(double true_distance, const RadioParams& params, Rng& rng);

// Inverse of the noiseless path-loss curve, clamped to [d0, 10 * read_range].
double estimate_distance(double rssi_dbm, const RadioParams& params);

// One inventory round of the forward-facing reader. Tags between 0 and
// read_range ahead of the reader are read independently with
// read_probability. Result is sorted by est_distance, ties by tag code.
std::vector<ScanEvent> scan(double reader_pos, std::span<const TagInstallation> tags,
                            const RadioParams& params, Rng& rng, Tick tick);

}  // namespace metrorfid
