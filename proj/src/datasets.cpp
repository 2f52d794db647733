#include "dbsurv/datasets.hpp"

#include <array>
#include <stdexcept>

namespace dbsurv {

namespace {

constexpr std::array<int, 21> kLeukemiaTimes = {1,  1,  2,  2,  3,  4,  4,
                                                5,  5,  8,  8,  8,  8,  11,
                                                11, 12, 12, 15, 17, 22, 23};

constexpr std::array<int, 21> kPelvicTimes = {3,  7,  11, 18, 22, 25, 28,
                                              32, 34, 35, 35, 36, 40, 40,
                                              41, 54, 66, 76, 84, 88, 92};
constexpr std::array<int, 21> kPelvicStatus = {1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0,
                                               0, 0, 0, 1, 0, 0, 0, 0, 0, 0};

}  // namespace

NamedDataset load_builtin(std::string_view id) {
  if (id == "leukemia") {
    std::vector<Observation> recs;
    recs.reserve(kLeukemiaTimes.size());
    for (int t : kLeukemiaTimes) recs.push_back({t, 1});
    return {"leukemia",
            "Remission times (weeks) of 21 acute leukemia patients on placebo; "
            "all observed.",
            "Freireich et al. (1963), 6-MP clinical trial, placebo arm",
            SurvivalDataset(std::move(recs))};
  }
  if (id == "pelvic") {
    std::vector<Observation> recs;
    recs.reserve(kPelvicTimes.size());
    for (std::size_t i = 0; i < kPelvicTimes.size(); ++i) {
      recs.push_back({kPelvicTimes[i], kPelvicStatus[i]});
    }
    return {"pelvic",
            "Recurrence times (months) of 21 pelvic tumors resected with "
            "marginal or intracapsular margins; 14 right-censored.",
            "Wang et al. (2015), Musculoskeletal Oncology Center, Sun Yat-Sen "
            "University",
            SurvivalDataset(std::move(recs))};
  }
  throw std::invalid_argument("unknown builtin dataset '" + std::string(id) +
                              "' (known: leukemia, pelvic)");
}

std::vector<std::string> builtin_ids() { return {"leukemia", "pelvic"}; }

}  // namespace dbsurv
