#include "lcmod/trace.hpp"

#include <map>
#include <sstream>

namespace lcmod {

std::string KernelTrace::serialize(const Instance& original) const {
    std::ostringstream out;
    out << "trace " << kind << '\n';
    for (const auto& s : steps) {
        out << "rule " << s.rule << " remove-v";
        if (s.removed_vertices.empty()) out << " -";
        for (int v : s.removed_vertices) out << ' ' << v;
        out << " remove-c";
        if (s.removed_colors.empty()) out << " -";
        for (int c : s.removed_colors) out << ' ' << original.color_labels[c];
        out << " witness";
        if (s.witness.empty()) out << " -";
        for (auto [a, b] : s.witness) out << ' ' << a << ':' << b;
        out << '\n';
    }
    out << "map";
    for (int v : vertex_map) out << ' ' << v;
    out << '\n';
    return out.str();
}

KernelTrace KernelTrace::parse(const std::string& text, const Instance& original) {
    std::map<int, int> dense;
    for (int c = 0; c < original.num_colors; ++c) dense[original.color_labels[c]] = c;

    KernelTrace t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "trace") {
            ls >> t.kind;
        } else if (key == "rule") {
            TraceStep s;
            std::string tok;
            if (!(ls >> s.rule >> tok) || tok != "remove-v")
                throw ParseError("trace line " + std::to_string(lineno) + ": malformed rule line");
            while (ls >> tok && tok != "remove-c")
                if (tok != "-") s.removed_vertices.push_back(std::stoi(tok));
            while (ls >> tok && tok != "witness")
                if (tok != "-") {
                    auto it = dense.find(std::stoi(tok));
                    if (it == dense.end())
                        throw ParseError("trace line " + std::to_string(lineno) + ": unknown color label");
                    s.removed_colors.push_back(it->second);
                }
            while (ls >> tok)
                if (tok != "-") {
                    auto colon = tok.find(':');
                    if (colon == std::string::npos)
                        throw ParseError("trace line " + std::to_string(lineno) + ": malformed witness pair");
                    s.witness.push_back({std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))});
                }
            t.steps.push_back(std::move(s));
        } else if (key == "map") {
            int v;
            while (ls >> v) t.vertex_map.push_back(v);
        } else {
            throw ParseError("trace line " + std::to_string(lineno) + ": unknown section '" + key + "'");
        }
    }
    return t;
}

} // namespace lcmod
