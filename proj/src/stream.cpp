#include "dynmatch/stream.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "dynmatch/errors.hpp"

namespace dynmatch {

UpdateStream parseUpdateStream(std::istream& in) {
    UpdateStream s;
    std::string line;
    std::size_t lineNo = 0;
    bool haveHeader = false;
    while (std::getline(in, line)) {
        ++lineNo;
        // trim trailing CR from files written on other platforms
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t firstNonSpace = line.find_first_not_of(" \t");
        if (firstNonSpace == std::string::npos) continue;
        if (line[firstNonSpace] == '#') {
            std::size_t at = s.events.empty() ? std::numeric_limits<std::size_t>::max()
                                              : s.events.size() - 1;
            s.annotations.emplace_back(at, line.substr(firstNonSpace + 1));
            continue;
        }
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (!haveHeader) {
            if (tok != "n") throw ParseError(lineNo, "expected header 'n <N>'");
            long long n = -1;
            if (!(ls >> n) || n < 0) throw ParseError(lineNo, "bad vertex count");
            s.n = static_cast<std::size_t>(n);
            haveHeader = true;
            continue;
        }
        if (tok != "+" && tok != "-")
            throw ParseError(lineNo, "expected '+' or '-', got '" + tok + "'");
        long long u = -1, v = -1;
        if (!(ls >> u >> v) || u < 0 || v < 0)
            throw ParseError(lineNo, "expected two vertex ids");
        std::string extra;
        if (ls >> extra) throw ParseError(lineNo, "trailing tokens");
        if (u == v) throw ParseError(lineNo, "self-loop");
        if (static_cast<std::size_t>(u) >= s.n || static_cast<std::size_t>(v) >= s.n)
            throw ParseError(lineNo, "vertex id out of range");
        Edge e(static_cast<VertexId>(u), static_cast<VertexId>(v));
        s.events.push_back(tok == "+" ? UpdateEvent::insert(e) : UpdateEvent::remove(e));
    }
    if (!haveHeader) throw ParseError(lineNo == 0 ? 1 : lineNo, "missing 'n <N>' header");
    return s;
}

UpdateStream loadUpdateStream(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open stream file: " + path);
    return parseUpdateStream(f);
}

void writeUpdateStream(std::ostream& out, const UpdateStream& s) {
    auto annotation = s.annotations.begin();
    auto flush = [&](std::size_t idx) {
        while (annotation != s.annotations.end() && annotation->first == idx) {
            out << "#" << annotation->second << "\n";
            ++annotation;
        }
    };
    out << "n " << s.n << "\n";
    flush(std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const UpdateEvent& ev = s.events[i];
        out << (ev.kind == UpdateEvent::Kind::Insert ? "+" : "-") << " " << ev.edge.u
            << " " << ev.edge.v << "\n";
        flush(i);
    }
}

void saveUpdateStream(const std::string& path, const UpdateStream& s) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write stream file: " + path);
    writeUpdateStream(f, s);
}

std::size_t firstIllegalEvent(const UpdateStream& s) {
    std::unordered_set<Edge, EdgeHash> present;
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const UpdateEvent& ev = s.events[i];
        if (ev.edge.v >= s.n) return i;
        if (ev.kind == UpdateEvent::Kind::Insert) {
            if (!present.insert(ev.edge).second) return i;
        } else {
            if (present.erase(ev.edge) == 0) return i;
        }
    }
    return s.events.size();
}

} // namespace dynmatch
