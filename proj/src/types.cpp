#include "dbsurv/types.hpp"

#include <utility>

namespace dbsurv {

std::string family_name(Family f) {
  switch (f) {
    case Family::Db: return "db";
    case Family::DsFxI: return "dsfx1";
    case Family::DiscreteLindley: return "lindley";
    case Family::DiscreteRayleigh: return "rayleigh";
    case Family::DiscreteBurrHatke: return "burrhatke";
  }
  throw std::invalid_argument("unknown family enum value");
}

std::string setting_name(Setting s) {
  switch (s) {
    case Setting::Complete: return "complete";
    case Setting::Censored: return "censored";
    case Setting::CureMixture: return "cure";
  }
  throw std::invalid_argument("unknown setting enum value");
}

Family parse_family(const std::string& name) {
  if (name == "db") return Family::Db;
  if (name == "dsfx1") return Family::DsFxI;
  if (name == "lindley") return Family::DiscreteLindley;
  if (name == "rayleigh") return Family::DiscreteRayleigh;
  if (name == "burrhatke") return Family::DiscreteBurrHatke;
  throw std::invalid_argument("unknown family '" + name +
                              "' (expected db|dsfx1|lindley|rayleigh|burrhatke)");
}

Setting parse_setting(const std::string& name) {
  if (name == "complete") return Setting::Complete;
  if (name == "censored") return Setting::Censored;
  if (name == "cure") return Setting::CureMixture;
  throw std::invalid_argument("unknown setting '" + name +
                              "' (expected complete|censored|cure)");
}

SurvivalDataset::SurvivalDataset(std::vector<Observation> records)
    : records_(std::move(records)) {
  if (records_.empty()) {
    throw std::invalid_argument("dataset must contain at least one record");
  }
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.time < 0) {
      throw std::invalid_argument("record " + std::to_string(i) +
                                  ": time must be a non-negative integer");
    }
    if (r.status != 0 && r.status != 1) {
      throw std::invalid_argument("record " + std::to_string(i) +
                                  ": status must be 0 (censored) or 1 (event)");
    }
    events_ += static_cast<std::size_t>(r.status);
  }
}

SurvivalDataset SurvivalDataset::from_arrays(std::span<const int> times,
                                             std::span<const int> status) {
  if (times.size() != status.size()) {
    throw std::invalid_argument("times and status must have equal length");
  }
  std::vector<Observation> recs(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    recs[i] = {times[i], status[i]};
  }
  return SurvivalDataset(std::move(recs));
}

}  // namespace dbsurv
