// CSV ingestion for lifetime data: one value per line, optional header
// auto-detected, LF or CRLF endings.
#ifndef LG_CSV_HPP
#define LG_CSV_HPP

#include <string>

#include "lg/sample.hpp"

namespace lg {

// Throws std::runtime_error on I/O failure and std::invalid_argument on
// validation failure (message lists the offending line numbers).
Sample ingest_csv(const std::string& path);

}  // namespace lg

#endif
