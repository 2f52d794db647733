#ifndef DBSURV_TYPES_HPP_
#define DBSURV_TYPES_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbsurv {

// Thrown for unreadable or malformed input files; messages carry line numbers.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Family {
  Db,
  DsFxI,
  DiscreteLindley,
  DiscreteRayleigh,
  DiscreteBurrHatke,
};

enum class Setting {
  Complete,
  Censored,
  CureMixture,
};

std::string family_name(Family f);
std::string setting_name(Setting s);
Family parse_family(const std::string& name);
Setting parse_setting(const std::string& name);

// One subject: integer follow-up time and status (1 = event, 0 = right-censored).
struct Observation {
  int time{};
  int status{};
};

// Paired integer times and event indicators. Construction validates t >= 0 and
// status in {0,1}; at least one record. All-censored datasets are representable
// (Kaplan-Meier accepts them) but rejected by the estimation entry points.
class SurvivalDataset {
 public:
  explicit SurvivalDataset(std::vector<Observation> records);
  static SurvivalDataset from_arrays(std::span<const int> times,
                                     std::span<const int> status);

  const std::vector<Observation>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  std::size_t event_count() const { return events_; }
  bool all_events() const { return events_ == records_.size(); }
  bool has_event() const { return events_ > 0; }

 private:
  std::vector<Observation> records_;
  std::size_t events_{};
};

}  // namespace dbsurv

#endif  // DBSURV_TYPES_HPP_
