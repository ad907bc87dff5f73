#include "polcomp/graph.hpp"

#include <sstream>

namespace polcomp {

namespace {

std::string edge_key(const std::string& from, const std::string& to) {
    return from + "\x1f" + to;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

const char* edge_color(const std::string& label) {
    if (label == "success") return "green";
    if (label == "running") return "orange";
    if (label == "failure") return "red";
    return nullptr;
}

}  // namespace

void DirectedGraph::add_node(const std::string& id, const std::string& label) {
    auto [it, inserted] = labels_.emplace(id, label);
    if (inserted) {
        nodes_.push_back(id);
        out_degree_.emplace(id, 0);
    } else if (!label.empty() && it->second.empty()) {
        it->second = label;
    }
}

bool DirectedGraph::add_edge(const std::string& from, const std::string& to,
                             const std::string& label) {
    if (!has_node(from) || !has_node(to)) {
        throw GraphError("edge endpoint not in graph: " + from + " -> " + to);
    }
    if (!edge_keys_.insert(edge_key(from, to)).second) {
        return false;
    }
    edges_.push_back({from, to, label});
    ++out_degree_[from];
    return true;
}

bool DirectedGraph::has_node(const std::string& id) const {
    return labels_.count(id) > 0;
}

bool DirectedGraph::has_edge(const std::string& from, const std::string& to) const {
    return edge_keys_.count(edge_key(from, to)) > 0;
}

const std::string& DirectedGraph::node_label(const std::string& id) const {
    auto it = labels_.find(id);
    if (it == labels_.end()) throw GraphError("unknown node: " + id);
    return it->second;
}

std::size_t DirectedGraph::out_degree(const std::string& id) const {
    auto it = out_degree_.find(id);
    if (it == out_degree_.end()) throw GraphError("unknown node: " + id);
    return it->second;
}

std::size_t DirectedGraph::sink_count() const {
    std::size_t sinks = 0;
    for (const auto& id : nodes_) {
        if (out_degree_.at(id) == 0) ++sinks;
    }
    return sinks;
}

std::string to_dot(const DirectedGraph& graph, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << quote(name) << " {\n";
    for (const auto& id : graph.nodes()) {
        out << "  " << quote(id);
        const std::string& label = graph.node_label(id);
        if (!label.empty()) out << " [label=" << quote(label) << "]";
        out << ";\n";
    }
    for (const auto& e : graph.edges()) {
        out << "  " << quote(e.from) << " -> " << quote(e.to);
        if (!e.label.empty()) {
            out << " [label=" << quote(e.label);
            if (const char* color = edge_color(e.label)) out << ", color=" << color;
            out << "]";
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

struct DotCursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() &&
               (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                text[pos] == '\r')) {
            ++pos;
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) {
            throw GraphError(std::string("expected '") + c + "' in DOT input");
        }
    }

    bool eat_word(const std::string& word) {
        skip_ws();
        if (text.compare(pos, word.size(), word) == 0) {
            pos += word.size();
            return true;
        }
        return false;
    }

    std::string quoted() {
        skip_ws();
        if (pos >= text.size() || text[pos] != '"') {
            throw GraphError("expected quoted identifier in DOT input");
        }
        ++pos;
        std::string out;
        while (pos < text.size() && text[pos] != '"') {
            if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
            out.push_back(text[pos]);
            ++pos;
        }
        if (pos >= text.size()) throw GraphError("unterminated string in DOT input");
        ++pos;
        return out;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
};

// Parses an optional [key=value, ...] attribute list; returns the label value.
std::string parse_attrs(DotCursor& cur) {
    std::string label;
    if (!cur.eat('[')) return label;
    while (!cur.eat(']')) {
        cur.skip_ws();
        std::string key;
        while (cur.pos < cur.text.size() && (std::isalnum(static_cast<unsigned char>(cur.text[cur.pos])) || cur.text[cur.pos] == '_')) {
            key.push_back(cur.text[cur.pos]);
            ++cur.pos;
        }
        cur.expect('=');
        cur.skip_ws();
        std::string value;
        if (cur.pos < cur.text.size() && cur.text[cur.pos] == '"') {
            value = cur.quoted();
        } else {
            while (cur.pos < cur.text.size() && cur.text[cur.pos] != ',' &&
                   cur.text[cur.pos] != ']') {
                value.push_back(cur.text[cur.pos]);
                ++cur.pos;
            }
        }
        if (key == "label") label = value;
        cur.eat(',');
    }
    return label;
}

}  // namespace

DirectedGraph parse_dot(const std::string& text) {
    DotCursor cur{text};
    if (!cur.eat_word("digraph")) throw GraphError("DOT input must start with 'digraph'");
    cur.skip_ws();
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == '"') {
        cur.quoted();
    } else {
        while (cur.pos < cur.text.size() && cur.text[cur.pos] != '{') ++cur.pos;
    }
    cur.expect('{');

    DirectedGraph graph;
    while (true) {
        if (cur.eat('}')) break;
        if (cur.at_end()) throw GraphError("unexpected end of DOT input");
        std::string id = cur.quoted();
        cur.skip_ws();
        if (cur.text.compare(cur.pos, 2, "->") == 0) {
            cur.pos += 2;
            std::string to = cur.quoted();
            std::string label = parse_attrs(cur);
            graph.add_node(id);
            graph.add_node(to);
            graph.add_edge(id, to, label);
        } else {
            std::string label = parse_attrs(cur);
            graph.add_node(id, label);
        }
        cur.eat(';');
    }
    return graph;
}

}  // namespace polcomp
