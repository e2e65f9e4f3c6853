#pragma once

#include <string>

#include "json.hpp"

#include "aag/classify.hpp"
#include "aag/protocol.hpp"
#include "aag/topology.hpp"
#include "aag/trace.hpp"
#include "aag/verify.hpp"

// JSON forms of the artifact's data. Parsers throw InvalidInput on malformed
// documents.
namespace aag {

using Json = nlohmann::ordered_json;

Json to_json(const ScheduleOutcome& s);
Json to_json(const RoundAdversary& a);
Json to_json(const TraceSchedule& s);
Json to_json(const ExecutionTrace& tr);
Json to_json(const Labelling& lab);
Json to_json(const ClassReport& r);
Json to_json(const Verdict& v);
Json to_json(const VerdictBundle& b);
Json to_json(const SearchResult& r);
Json to_json(const ProtocolMetadata& m);

ScheduleOutcome schedule_from_json(const Json& j);
RoundAdversary adversary_from_json(const Json& j);
ExecutionTrace trace_from_json(const Json& j);
Labelling labelling_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace aag
