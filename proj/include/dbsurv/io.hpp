#ifndef DBSURV_IO_HPP_
#define DBSURV_IO_HPP_

#include <iosfwd>
#include <string>

#include "dbsurv/types.hpp"

namespace dbsurv {

// Column selection by header name or 0-based index written as digits.
// Rows whose status equals censored_value are censored; status 1 is an event;
// anything else is an InputError (with its line number).
struct CsvSpec {
  std::string time_col{"time"};
  std::string status_col{"status"};
  long censored_value{0};
};

// Reads a header + data CSV. Times must be integral (no silent rounding:
// "3.0" is accepted, "3.5" is a line-numbered error).
SurvivalDataset ingest_csv(std::istream& is, const CsvSpec& spec = {});
SurvivalDataset ingest_csv_file(const std::string& path, const CsvSpec& spec = {});

// Writes the canonical "time,status" form (status 1 = event, 0 = censored).
void write_dataset_csv(std::ostream& os, const SurvivalDataset& data);

}  // namespace dbsurv

#endif  // DBSURV_IO_HPP_
