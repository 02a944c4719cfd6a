#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dynmatch/edge.hpp"

namespace dynmatch {

struct UpdateEvent {
    enum class Kind { Insert, Delete };
    Kind kind;
    Edge edge;

    static UpdateEvent insert(Edge e) { return {Kind::Insert, e}; }
    static UpdateEvent remove(Edge e) { return {Kind::Delete, e}; }

    friend bool operator==(const UpdateEvent&, const UpdateEvent&) = default;
};

/// An update stream: header vertex count plus ordered events. Annotations are
/// comment lines attached *after* the event with the given 0-based index
/// (index SIZE_MAX = before the first event); they round-trip through the
/// text format as `# ...` lines and are ignored by replay.
struct UpdateStream {
    std::size_t n = 0;
    std::vector<UpdateEvent> events;
    std::vector<std::pair<std::size_t, std::string>> annotations;
};

/// Text format, one item per line:
///   n <N>
///   + <u> <v>
///   - <u> <v>
///   # comment
/// Throws ParseError naming the offending line.
UpdateStream parseUpdateStream(std::istream& in);
UpdateStream loadUpdateStream(const std::string& path);

void writeUpdateStream(std::ostream& out, const UpdateStream& s);
void saveUpdateStream(const std::string& path, const UpdateStream& s);

/// Checks the generator contract: no insert of a present edge, no delete of
/// an absent edge, all endpoints in range. Returns the 0-based index of the
/// first offending event, or the event count if the stream is clean.
std::size_t firstIllegalEvent(const UpdateStream& s);

} // namespace dynmatch
