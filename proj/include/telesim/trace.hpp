#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "telesim/time_types.hpp"

namespace telesim {

enum class TraceKind : std::uint8_t { Control, Data };

// One line of the trace file. Records in a trace are sorted by t with the
// monotone seq breaking ties; msg is the rendered message (key=value text,
// no tabs or newlines).
struct TraceRecord {
  SimTime t = 0;
  std::string src;
  std::string dst;
  TraceKind kind = TraceKind::Control;
  std::uint64_t wire_bytes = 0;
  std::string msg;

  bool operator==(const TraceRecord&) const = default;
};

// Tab-separated, field order: t, src, dst, kind, wire_bytes, msg.
std::string encode_record(const TraceRecord& rec);
TraceRecord decode_record(std::string_view line, std::size_t line_no = 0);

struct TraceLog {
  std::vector<TraceRecord> records;

  void append(TraceRecord rec) { records.push_back(std::move(rec)); }
  std::string to_text() const;
};

std::vector<TraceRecord> read_trace_text(std::string_view text);
std::vector<TraceRecord> read_trace_file(const std::string& path);
void write_trace_file(const std::string& path, const TraceLog& log);

// Splits a rendered msg into its kind (first token) and key=value pairs.
// Duplicate keys keep the last value; keys are unique in practice.
std::string message_kind(std::string_view msg);
std::map<std::string, std::string> parse_kv(std::string_view msg);

}  // namespace telesim
