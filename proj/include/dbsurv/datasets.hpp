#ifndef DBSURV_DATASETS_HPP_
#define DBSURV_DATASETS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "dbsurv/types.hpp"

namespace dbsurv {

struct NamedDataset {
  std::string id;
  std::string description;
  std::string source_citation;
  SurvivalDataset data;
};

// Bundled fixtures; known ids: "leukemia", "pelvic". The same records ship as
// CSV files under data/ for external tools. There is no bundled COVID-19
// hospital dataset: the only public form of those times is digitized plot
// data without authoritative values.
NamedDataset load_builtin(std::string_view id);
std::vector<std::string> builtin_ids();

}  // namespace dbsurv

#endif  // DBSURV_DATASETS_HPP_
