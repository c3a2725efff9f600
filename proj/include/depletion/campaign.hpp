#pragma once

// Randomized property campaigns comparing the analytic results with the
// oracles. Configuration i is drawn from stream_seed(seed, i); results are
// collected by index, so reports are identical for any thread count.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace depletion {

struct FailureRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;  // per-configuration stream seed
  double violation = 0.0;
  std::string detail;
  std::string scene;  // JSON scene reproducing the configuration
};

struct CampaignReport {
  std::string name;
  std::size_t configurations = 0;
  std::uint64_t seed = 0;
  std::vector<FailureRecord> failures;
  // Largest violation over all configurations; its meaning is campaign
  // specific (absolute or relative error, or amount by which a bound fails).
  double max_violation = 0.0;

  [[nodiscard]] bool passed() const { return failures.empty(); }
};

struct CampaignOptions {
  std::size_t n_configs = 0;  // 0: campaign default
  std::uint64_t seed = 0;
  std::uint64_t mc_samples = 1'000'000;
  // Samples for the triple-overlap detection in inclusion-exclusion.
  std::uint64_t contact_samples = 100'000'000;
  unsigned threads = 0;
};

const std::vector<std::string>& campaign_names();
std::size_t default_campaign_size(std::string_view name);

// InputError for an unknown campaign.
CampaignReport run_campaign(std::string_view name, const CampaignOptions& options);

std::string format_report(const CampaignReport& report);

}  // namespace depletion
