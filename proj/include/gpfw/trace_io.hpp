#ifndef GPFW_TRACE_IO_HPP_
#define GPFW_TRACE_IO_HPP_

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gpfw/solvers.hpp"

namespace gpfw {

namespace detail {

// 17 significant digits: enough for a bit-exact double round trip
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// RFC-4180: quote when the field contains a comma, quote, or newline
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// Optional descriptive fields for the trace header.
struct TraceHeaderInfo {
  std::string problem;
  std::string algorithm;
  std::map<std::string, std::string> config_echo;
};

inline void emit_trace_jsonl(const Trace& trace, std::ostream& out,
                             const TraceHeaderInfo& info = {}) {
  nlohmann::ordered_json header;
  header["record"] = "header";
  if (!info.problem.empty()) header["problem"] = info.problem;
  if (!info.algorithm.empty()) header["algorithm"] = info.algorithm;
  header["termination"] = to_string(trace.termination);
  header["iterations"] = trace.records.size();
  if (!info.config_echo.empty()) header["config"] = info.config_echo;
  nlohmann::ordered_json consts = nlohmann::ordered_json::object();
  for (const auto& [k, v] : trace.constants) consts[k] = v;
  header["constants"] = consts;
  out << header.dump() << '\n';

  for (const auto& rec : trace.records) {
    nlohmann::ordered_json j;
    j["k"] = rec.k;
    j["f"] = rec.f;
    j["proj_grad_norm"] = rec.proj_grad_norm;
    j["step_norm"] = rec.step_norm;
    if (rec.residual_z) j["residual_z"] = *rec.residual_z;
    if (rec.newton_residual) j["newton_residual"] = *rec.newton_residual;
    if (rec.phase) j["phase"] = to_string(*rec.phase);
    out << j.dump() << '\n';
  }
}

inline void emit_trace_csv(const Trace& trace, std::ostream& out) {
  out << "k,f,proj_grad_norm,step_norm,residual_z,phase\n";
  for (const auto& rec : trace.records) {
    out << rec.k << ',' << detail::fmt17(rec.f) << ',' << detail::fmt17(rec.proj_grad_norm)
        << ',' << detail::fmt17(rec.step_norm) << ','
        << (rec.residual_z ? detail::fmt17(*rec.residual_z) : std::string())
        << ','
        << (rec.phase ? detail::csv_field(to_string(*rec.phase)) : std::string()) << '\n';
  }
}

enum class TraceFormat { jsonl, csv };

inline void emit_trace(const Trace& trace, TraceFormat format, const std::string& path,
                       const TraceHeaderInfo& info = {}) {
  std::ofstream out(path, std::ios::binary);  // binary: byte-identical across runs
  if (!out) throw IoError("cannot open trace output: " + path);
  if (format == TraceFormat::jsonl)
    emit_trace_jsonl(trace, out, info);
  else
    emit_trace_csv(trace, out);
  out.flush();
  if (!out) throw IoError("write failure on trace output: " + path);
}

}  // namespace gpfw

#endif  // GPFW_TRACE_IO_HPP_
