#include "telesim/metrics.hpp"

#include <cmath>
#include <cstdio>

namespace telesim {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> metrics_summary(const Metrics& m) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("duration_ns", std::to_string(m.duration));
  double dur_s = m.duration > 0 ? static_cast<double>(m.duration) / 1e9 : 0.0;

  for (const auto& [label, ch] : m.channels) {
    auto key = [&](const char* suffix) { return "channel." + label + "." + suffix; };
    out.emplace_back(key("offered"), std::to_string(ch.offered));
    out.emplace_back(key("delivered"), std::to_string(ch.delivered));
    std::uint64_t lost = ch.offered >= ch.delivered ? ch.offered - ch.delivered : 0;
    out.emplace_back(key("lost"), std::to_string(lost));
    out.emplace_back(key("payload_bytes"), std::to_string(ch.payload_bytes));
    out.emplace_back(key("packets_in"), std::to_string(ch.packets_in));
    out.emplace_back(key("packets_out"), std::to_string(ch.packets_out));
    out.emplace_back(key("control_bytes_in"), std::to_string(ch.control_bytes_in));
    out.emplace_back(key("control_bytes_out"), std::to_string(ch.control_bytes_out));
    double goodput = dur_s > 0 ? 8.0 * static_cast<double>(ch.payload_bytes) / dur_s : 0.0;
    double channel_bps =
        dur_s > 0 ? 8.0 * static_cast<double>(ch.control_bytes_in) / dur_s : 0.0;
    out.emplace_back(key("goodput_bps"), fmt_double(goodput));
    out.emplace_back(key("channel_bps"), fmt_double(channel_bps));
    double loss_fraction =
        ch.offered > 0 ? static_cast<double>(lost) / static_cast<double>(ch.offered)
                       : 0.0;
    out.emplace_back(key("loss_fraction"), fmt_double(loss_fraction));
    out.emplace_back(key("jitter_ns"), fmt_double(ch.jitter_ns()));
    if (!ch.latency_samples.empty()) {
      double mean = 0;
      for (SimTime s : ch.latency_samples) mean += static_cast<double>(s);
      mean /= static_cast<double>(ch.latency_samples.size());
      out.emplace_back(key("latency_mean_ns"), fmt_double(mean));
    }
  }
  for (const auto& [k, v] : m.counters) out.emplace_back(k, std::to_string(v));
  return out;
}

std::string metrics_to_text(const Metrics& m) {
  std::string out;
  for (const auto& [k, v] : metrics_summary(m)) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace telesim
