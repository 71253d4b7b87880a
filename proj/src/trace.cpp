#include "telesim/trace.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "telesim/errors.hpp"

namespace telesim {

namespace {

std::int64_t to_int(std::string_view s, std::size_t line_no) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("bad integer field: " + std::string(s), line_no);
  return v;
}

}  // namespace

std::string encode_record(const TraceRecord& rec) {
  std::string out = std::to_string(rec.t);
  out += '\t';
  out += rec.src;
  out += '\t';
  out += rec.dst;
  out += '\t';
  out += rec.kind == TraceKind::Control ? "control" : "data";
  out += '\t';
  out += std::to_string(rec.wire_bytes);
  out += '\t';
  out += rec.msg;
  return out;
}

TraceRecord decode_record(std::string_view line, std::size_t line_no) {
  TraceRecord rec;
  std::size_t pos = 0;
  auto next_field = [&](const char* what) -> std::string_view {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos)
      throw ParseError(std::string("missing field: ") + what, line_no);
    std::string_view fld = line.substr(pos, tab - pos);
    pos = tab + 1;
    return fld;
  };
  rec.t = to_int(next_field("t"), line_no);
  rec.src = std::string(next_field("src"));
  rec.dst = std::string(next_field("dst"));
  std::string_view kind = next_field("kind");
  if (kind == "control") rec.kind = TraceKind::Control;
  else if (kind == "data") rec.kind = TraceKind::Data;
  else throw ParseError("bad kind: " + std::string(kind), line_no);
  rec.wire_bytes = static_cast<std::uint64_t>(to_int(next_field("wire_bytes"), line_no));
  rec.msg = std::string(line.substr(pos));
  if (rec.msg.empty()) throw ParseError("empty msg field", line_no);
  return rec;
}

std::string TraceLog::to_text() const {
  std::string out;
  for (const auto& rec : records) {
    out += encode_record(rec);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> read_trace_text(std::string_view text) {
  std::vector<TraceRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++line_no;
    if (!line.empty()) out.push_back(decode_record(line, line_no));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::vector<TraceRecord> read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError("cannot open trace file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_trace_text(ss.str());
}

void write_trace_file(const std::string& path, const TraceLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot write trace file: " + path);
  out << log.to_text();
}

std::string message_kind(std::string_view msg) {
  std::size_t sp = msg.find(' ');
  return std::string(msg.substr(0, sp));
}

std::map<std::string, std::string> parse_kv(std::string_view msg) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < msg.size()) {
    std::size_t sp = msg.find(' ', pos);
    std::string_view tok =
        msg.substr(pos, sp == std::string_view::npos ? sp : sp - pos);
    std::size_t eq = tok.find('=');
    if (eq != std::string_view::npos)
      out[std::string(tok.substr(0, eq))] = std::string(tok.substr(eq + 1));
    if (sp == std::string_view::npos) break;
    pos = sp + 1;
  }
  return out;
}

}  // namespace telesim
