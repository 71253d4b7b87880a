#pragma once

#include <optional>
#include <string>
#include <vector>

#include "telesim/trace.hpp"

namespace telesim {

struct MscFilter {
  std::optional<std::string> node;  // keep records touching this node
  std::optional<std::string> kind;  // keep records whose msg kind matches
};

// Text message-sequence chart: one column per node (sorted ids), one row
// per record with an arrow from source to destination column.
std::string render_msc(const std::vector<TraceRecord>& records,
                       const MscFilter& filter = {});

}  // namespace telesim
