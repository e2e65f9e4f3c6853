#pragma once

#include <optional>

#include "aag/protocol.hpp"
#include "aag/trace.hpp"

namespace aag {

/// Executes `p` on `g` with one process per input under schedule `s`.
/// Throws InvalidInput when the schedule breaks the protocol's wait rule or
/// crash bound. Pure: the same arguments always give the same trace.
ExecutionTrace run(const ProtocolSpec& p, const Graph& g, const std::vector<Vertex>& inputs,
                   const ScheduleOutcome& s, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace aag
