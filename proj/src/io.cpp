#include "dbsurv/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace dbsurv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

std::size_t resolve_column(const std::vector<std::string>& header,
                           const std::string& sel) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == sel) return i;
  }
  // fall back to a numeric index
  std::size_t idx{};
  const auto [ptr, ec] = std::from_chars(sel.data(), sel.data() + sel.size(), idx);
  if (ec == std::errc() && ptr == sel.data() + sel.size() && idx < header.size()) {
    return idx;
  }
  throw InputError("column '" + sel + "' not found in header");
}

std::optional<long> parse_integral(const std::string& field) {
  long v{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec == std::errc() && ptr == field.data() + field.size()) return v;
  // accept decimal representations of exact integers ("3.0"), reject "3.5"
  try {
    std::size_t pos{};
    const double d = std::stod(field, &pos);
    if (pos == field.size() && std::isfinite(d) && d == std::floor(d) &&
        std::abs(d) < 1e15) {
      return static_cast<long>(d);
    }
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace

SurvivalDataset ingest_csv(std::istream& is, const CsvSpec& spec) {
  std::string line;
  if (!std::getline(is, line)) {
    throw InputError("empty input: missing header row");
  }
  const auto header = split_csv_line(line);
  const std::size_t time_idx = resolve_column(header, spec.time_col);
  const std::size_t status_idx = resolve_column(header, spec.status_col);

  std::vector<Observation> recs;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() <= std::max(time_idx, status_idx)) {
      throw InputError("line " + std::to_string(lineno) + ": expected at least " +
                       std::to_string(std::max(time_idx, status_idx) + 1) + " fields");
    }
    const auto t = parse_integral(fields[time_idx]);
    if (!t || *t < 0) {
      throw InputError("line " + std::to_string(lineno) + ": time '" +
                       fields[time_idx] + "' is not a non-negative integer");
    }
    const auto s = parse_integral(fields[status_idx]);
    if (!s) {
      throw InputError("line " + std::to_string(lineno) + ": status '" +
                       fields[status_idx] + "' is not an integer");
    }
    int status;
    if (*s == spec.censored_value) {
      status = 0;
    } else if (*s == 1) {
      status = 1;
    } else {
      throw InputError("line " + std::to_string(lineno) + ": status '" +
                       fields[status_idx] + "' is neither 1 (event) nor " +
                       std::to_string(spec.censored_value) + " (censored)");
    }
    recs.push_back({static_cast<int>(*t), status});
  }
  if (recs.empty()) {
    throw InputError("no data rows found");
  }
  return SurvivalDataset(std::move(recs));
}

SurvivalDataset ingest_csv_file(const std::string& path, const CsvSpec& spec) {
  std::ifstream is(path);
  if (!is) {
    throw InputError("cannot open file '" + path + "'");
  }
  try {
    return ingest_csv(is, spec);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_dataset_csv(std::ostream& os, const SurvivalDataset& data) {
  os << "time,status\n";
  for (const auto& r : data.records()) {
    os << r.time << ',' << r.status << '\n';
  }
}

}  // namespace dbsurv
