#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bpmnc/trace.hpp"

namespace bpmnc {

struct EventLog {
  std::vector<Trace> traces;
  friend bool operator==(const EventLog&, const EventLog&) = default;
};

// Line format, one event per line:
//   trace_id,seq,label,assignments        assignments like P=1;Q=0 (may be empty)
// Directives and comments:
//   #!weight <trace_id>=<n>               occurrence count of a distinct trace
//   # anything
// An optional header line "trace_id,seq,label,assignments" is skipped. Events
// of one trace must carry seq 0,1,2,... in order. Throws Error(MalformedLog)
// naming the line.
EventLog parse_log(std::string_view text);
std::string write_log(const EventLog& log);

EventLog read_log_file(const std::string& path);
void write_log_file(const std::string& path, const EventLog& log);

}  // namespace bpmnc
