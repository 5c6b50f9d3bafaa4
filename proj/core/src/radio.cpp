#include "metrorfid/radio.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "metrorfid/error.hpp"

namespace metrorfid {

void RadioParams::validate() const {
  if (!(path_loss_exponent >= 1.5 && path_loss_exponent <= 4.0)) {
    throw ConfigError(fmt::format("path_loss_exponent {} outside [1.5, 4]", path_loss_exponent));
  }
  if (!(noise_sigma_db >= 0.0)) {
    throw ConfigError("noise_sigma_db must be non-negative");
  }
  if (!(read_range_m > 0.0 && read_range_m <= 300.0)) {
    throw ConfigError(fmt::format("read_range_m {} outside (0, 300]", read_range_m));
  }
  if (!(read_probability > 0.0 && read_probability <= 1.0)) {
    throw ConfigError(fmt::format("read_probability {} outside (0, 1]", read_probability));
  }
  if (!std::isfinite(ref_power_dbm)) {
    throw ConfigError("ref_power_dbm must be finite");
  }
}

double rssi_at(double true_distance, const RadioParams& params, Rng& rng) {
  if (!(true_distance >= kReferenceDistance)) {
    throw DomainError(fmt::format("distance {} below reference distance", true_distance));
  }
  double rssi = params.ref_power_dbm -
                10.0 * params.path_loss_exponent * std::log10(true_distance / kReferenceDistance);
  if (params.noise_sigma_db > 0.0) {
    std::normal_distribution<double> shadowing(0.0, params.noise_sigma_db);
    rssi += shadowing(rng);
  }
  return rssi;
}

double estimate_distance(double rssi_dbm, const RadioParams& params) {
  const double d = kReferenceDistance * std::pow(10.0, (params.ref_power_dbm - rssi_dbm) /
                                                           (10.0 * params.path_loss_exponent));
  return std::clamp(d, kReferenceDistance, 10.0 * params.read_range_m);
}

std::vector<ScanEvent> scan(double reader_pos, std::span<const TagInstallation> tags,
                            const RadioParams& params, Rng& rng, Tick tick) {
  std::vector<ScanEvent> events;
  std::bernoulli_distribution read(params.read_probability);
  for (const auto& tag : tags) {
    const double ahead = tag.position - reader_pos;
    if (ahead < 0.0 || ahead > params.read_range_m) continue;
    if (params.read_probability < 1.0 && !read(rng)) continue;
    // Tags closer than d0 are ranged as if at d0.
    const double rssi = rssi_at(std::max(ahead, kReferenceDistance), params, rng);
    events.push_back(ScanEvent{
        .tag_code = tag.tag_code,
        .rssi_dbm = rssi,
        .est_distance = estimate_distance(rssi, params),
        .tick = tick,
    });
  }
  std::sort(events.begin(), events.end(), [](const ScanEvent& a, const ScanEvent& b) {
    return a.est_distance != b.est_distance ? a.est_distance < b.est_distance
                                            : a.tag_code < b.tag_code;
  });
  return events;
}

}  // namespace metrorfid
