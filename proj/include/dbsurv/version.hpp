#ifndef DBSURV_VERSION_HPP_
#define DBSURV_VERSION_HPP_

namespace dbsurv {

inline constexpr const char* kToolName = "dbsurv";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

}  // namespace dbsurv

#endif  // DBSURV_VERSION_HPP_
