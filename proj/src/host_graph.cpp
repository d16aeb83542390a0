#include "gp2/host_graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "gp2/diagnostics.hpp"
#include "gp2/lexer.hpp"

namespace gp2 {

std::string atom_to_text(const Atom& a) {
    if (std::holds_alternative<std::int64_t>(a)) return std::to_string(std::get<std::int64_t>(a));
    return "\"" + std::get<std::string>(a) + "\"";
}

std::string list_to_text(const ListValue& v) {
    if (v.items.empty()) return "empty";
    std::string out;
    for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (i) out += ":";
        out += atom_to_text(v.items[i]);
    }
    return out;
}

std::string_view node_mark_name(NodeMark m) {
    switch (m) {
        case NodeMark::None: return "none";
        case NodeMark::Grey: return "grey";
        case NodeMark::Red: return "red";
        case NodeMark::Green: return "green";
        case NodeMark::Blue: return "blue";
    }
    return "none";
}

std::string_view edge_mark_name(EdgeMark m) {
    switch (m) {
        case EdgeMark::None: return "none";
        case EdgeMark::Dashed: return "dashed";
        case EdgeMark::Red: return "red";
        case EdgeMark::Green: return "green";
        case EdgeMark::Blue: return "blue";
    }
    return "none";
}

std::optional<NodeMark> node_mark_from_name(std::string_view name) {
    if (name == "none") return NodeMark::None;
    if (name == "grey") return NodeMark::Grey;
    if (name == "red") return NodeMark::Red;
    if (name == "green") return NodeMark::Green;
    if (name == "blue") return NodeMark::Blue;
    return std::nullopt;
}

std::optional<EdgeMark> edge_mark_from_name(std::string_view name) {
    if (name == "none") return EdgeMark::None;
    if (name == "dashed") return EdgeMark::Dashed;
    if (name == "red") return EdgeMark::Red;
    if (name == "green") return EdgeMark::Green;
    if (name == "blue") return EdgeMark::Blue;
    return std::nullopt;
}

bool id_less(const std::string& a, const std::string& b) {
    auto numeric = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isdigit(c);
        });
    };
    bool na = numeric(a), nb = numeric(b);
    if (na && nb) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
    if (na != nb) return na; // numeric ids sort before symbolic ones
    return a < b;
}

struct HostGraph::Data {
    std::vector<HostNode> nodes;
    std::vector<HostEdge> edges;
    std::map<std::string, int> node_by_id;
    long fresh = 1;

    mutable std::once_flag canon_once;
    mutable std::string canon;
};

namespace {
const std::shared_ptr<const HostGraph::Data>& empty_data() {
    static const std::shared_ptr<const HostGraph::Data> d = std::make_shared<HostGraph::Data>();
    return d;
}
} // namespace

HostGraph::HostGraph() : data_(empty_data()) {}
HostGraph::HostGraph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

int HostGraph::node_count() const { return static_cast<int>(data_->nodes.size()); }
int HostGraph::edge_count() const { return static_cast<int>(data_->edges.size()); }
const HostNode& HostGraph::node(int index) const { return data_->nodes.at(index); }
const HostEdge& HostGraph::edge(int index) const { return data_->edges.at(index); }
const std::vector<HostNode>& HostGraph::nodes() const { return data_->nodes; }
const std::vector<HostEdge>& HostGraph::edges() const { return data_->edges; }

std::optional<int> HostGraph::node_index(const std::string& id) const {
    auto it = data_->node_by_id.find(id);
    if (it == data_->node_by_id.end()) return std::nullopt;
    return it->second;
}

int HostGraph::indegree(int node_index) const {
    int n = 0;
    for (const HostEdge& e : data_->edges)
        if (e.target == node_index) ++n;
    return n;
}

int HostGraph::outdegree(int node_index) const {
    int n = 0;
    for (const HostEdge& e : data_->edges)
        if (e.source == node_index) ++n;
    return n;
}

long HostGraph::fresh_counter() const { return data_->fresh; }

bool operator==(const HostGraph& a, const HostGraph& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->nodes == b.data_->nodes && a.data_->edges == b.data_->edges;
}

GraphBuilder::GraphBuilder() : data_(std::make_shared<HostGraph::Data>()) {}

GraphBuilder::GraphBuilder(const HostGraph& g) : data_(std::make_shared<HostGraph::Data>()) {
    data_->nodes = g.nodes();
    data_->edges = g.edges();
    data_->fresh = g.fresh_counter();
    for (int i = 0; i < static_cast<int>(data_->nodes.size()); ++i)
        data_->node_by_id.emplace(data_->nodes[i].id, i);
}

void GraphBuilder::require_open() const {
    if (!data_) throw EngineError("GraphBuilder used after freeze");
}

bool GraphBuilder::has_id(const std::string& id) const {
    require_open();
    if (data_->node_by_id.count(id)) return true;
    for (const HostEdge& e : data_->edges)
        if (e.id == id) return true;
    return false;
}

std::optional<int> GraphBuilder::node_index(const std::string& id) const {
    require_open();
    auto it = data_->node_by_id.find(id);
    if (it == data_->node_by_id.end()) return std::nullopt;
    return it->second;
}

int GraphBuilder::node_count() const {
    require_open();
    return static_cast<int>(data_->nodes.size());
}

int GraphBuilder::add_node(std::string id, ListValue label, NodeMark mark, bool rooted) {
    require_open();
    if (data_->node_by_id.count(id)) throw ParseError("duplicate node id '" + id + "'", {});
    int index = static_cast<int>(data_->nodes.size());
    data_->node_by_id.emplace(id, index);
    data_->nodes.push_back(HostNode{std::move(id), std::move(label), mark, rooted});
    return index;
}

int GraphBuilder::add_edge(std::string id, int source, int target, ListValue label, EdgeMark mark) {
    require_open();
    for (const HostEdge& e : data_->edges)
        if (e.id == id) throw ParseError("duplicate edge id '" + id + "'", {});
    if (source < 0 || source >= node_count() || target < 0 || target >= node_count())
        throw EngineError("edge endpoint out of range");
    int index = static_cast<int>(data_->edges.size());
    data_->edges.push_back(HostEdge{std::move(id), source, target, std::move(label), mark});
    return index;
}

std::string GraphBuilder::fresh_node_id() {
    require_open();
    for (;;) {
        std::string candidate = "n" + std::to_string(data_->fresh++);
        if (!has_id(candidate)) return candidate;
    }
}

std::string GraphBuilder::fresh_edge_id() {
    require_open();
    for (;;) {
        std::string candidate = "e" + std::to_string(data_->fresh++);
        if (!has_id(candidate)) return candidate;
    }
}

void GraphBuilder::seed_fresh(long counter) {
    require_open();
    data_->fresh = std::max(data_->fresh, counter);
}

HostGraph GraphBuilder::freeze() {
    require_open();
    HostGraph g{std::shared_ptr<const HostGraph::Data>(std::move(data_))};
    data_.reset();
    return g;
}

namespace {

ListValue parse_constant_list(TokenCursor& cur) {
    if (cur.accept_ident("empty")) return ListValue::empty();
    ListValue out;
    for (;;) {
        const Token& t = cur.peek();
        if (t.kind == TokKind::Int) {
            cur.next();
            out.items.emplace_back(t.int_value);
        } else if (t.kind == TokKind::Str) {
            cur.next();
            out.items.emplace_back(t.text);
        } else if (cur.is_sym("-")) {
            cur.next();
            if (cur.peek().kind != TokKind::Int) cur.fail("expected integer after '-'");
            out.items.emplace_back(-cur.next().int_value);
        } else {
            cur.fail("expected list atom");
        }
        if (!cur.accept_sym(":")) break;
    }
    return out;
}

std::string parse_item_id(TokenCursor& cur) {
    const Token& t = cur.peek();
    if (t.kind == TokKind::Ident || t.kind == TokKind::Int) {
        cur.next();
        return t.text;
    }
    cur.fail("expected node or edge id");
}

} // namespace

HostGraph parse_host_graph(std::string_view text) {
    TokenCursor cur(tokenize(text));
    GraphBuilder b;
    cur.expect_sym("[");
    while (!cur.is_sym("|")) {
        SourceLoc loc = cur.peek().loc;
        cur.expect_sym("(");
        std::string id = parse_item_id(cur);
        cur.expect_sym(",");
        ListValue label = parse_constant_list(cur);
        NodeMark mark = NodeMark::None;
        bool rooted = false;
        if (cur.accept_sym("#")) {
            const Token& m = cur.expect_ident();
            auto parsed = node_mark_from_name(m.text);
            if (!parsed) throw ParseError("unknown node mark '" + m.text + "'", m.loc);
            mark = *parsed;
        }
        if (cur.is_sym("(") && cur.is_ident("R", 1)) {
            cur.next();
            cur.next();
            cur.expect_sym(")");
            rooted = true;
        }
        cur.expect_sym(")");
        if (b.node_index(id)) throw ParseError("duplicate node id '" + id + "'", loc);
        b.add_node(std::move(id), std::move(label), mark, rooted);
    }
    cur.expect_sym("|");
    while (!cur.is_sym("]")) {
        SourceLoc loc = cur.peek().loc;
        cur.expect_sym("(");
        std::string id = parse_item_id(cur);
        cur.expect_sym(",");
        std::string src = parse_item_id(cur);
        cur.expect_sym(",");
        std::string tgt = parse_item_id(cur);
        cur.expect_sym(",");
        ListValue label = parse_constant_list(cur);
        EdgeMark mark = EdgeMark::None;
        if (cur.accept_sym("#")) {
            const Token& m = cur.expect_ident();
            auto parsed = edge_mark_from_name(m.text);
            if (!parsed) throw ParseError("unknown edge mark '" + m.text + "'", m.loc);
            mark = *parsed;
        }
        cur.expect_sym(")");
        if (b.has_id(id)) throw ParseError("duplicate edge id '" + id + "'", loc);
        auto si = b.node_index(src);
        if (!si) throw ParseError("unknown source node " + src, loc);
        auto ti = b.node_index(tgt);
        if (!ti) throw ParseError("unknown target node " + tgt, loc);
        b.add_edge(std::move(id), *si, *ti, std::move(label), mark);
    }
    cur.expect_sym("]");
    if (!cur.at_end()) cur.fail("trailing input after graph");
    return b.freeze();
}

std::string serialize_host_graph(const HostGraph& g) {
    std::vector<int> node_order(g.node_count());
    std::iota(node_order.begin(), node_order.end(), 0);
    std::sort(node_order.begin(), node_order.end(),
              [&](int a, int b) { return id_less(g.node(a).id, g.node(b).id); });
    std::vector<int> edge_order(g.edge_count());
    std::iota(edge_order.begin(), edge_order.end(), 0);
    std::sort(edge_order.begin(), edge_order.end(),
              [&](int a, int b) { return id_less(g.edge(a).id, g.edge(b).id); });

    std::string out = "[";
    for (int i : node_order) {
        const HostNode& n = g.node(i);
        out += " (" + n.id + ", " + list_to_text(n.label);
        if (n.mark != NodeMark::None) out += " # " + std::string(node_mark_name(n.mark));
        if (n.rooted) out += " (R)";
        out += ")";
    }
    out += " |";
    for (int i : edge_order) {
        const HostEdge& e = g.edge(i);
        out += " (" + e.id + "," + g.node(e.source).id + "," + g.node(e.target).id + ", " +
               list_to_text(e.label);
        if (e.mark != EdgeMark::None) out += " # " + std::string(edge_mark_name(e.mark));
        out += ")";
    }
    out += " ]";
    return out;
}

namespace detail {
std::string compute_canonical_key(const HostGraph& g); // isomorphism.cpp
}

const std::string& HostGraph::canonical_key() const {
    const Data& d = *data_;
    std::call_once(d.canon_once, [&] { d.canon = detail::compute_canonical_key(*this); });
    return d.canon;
}

std::string canonical_key(const HostGraph& g) { return g.canonical_key(); }

HostGraph make_comb(int k) {
    if (k < 1) throw EvalError("make_comb requires k >= 1");
    GraphBuilder b;
    std::vector<int> spine, teeth;
    for (int i = 1; i <= k; ++i)
        spine.push_back(b.add_node("s" + std::to_string(i), ListValue::empty()));
    for (int i = 1; i <= k; ++i)
        teeth.push_back(b.add_node("t" + std::to_string(i), ListValue::empty()));
    for (int i = 0; i + 1 < k; ++i)
        b.add_edge("sp" + std::to_string(i + 1), spine[i], spine[i + 1], ListValue::empty());
    for (int i = 0; i < k; ++i)
        b.add_edge("te" + std::to_string(i + 1), teeth[i], spine[i], ListValue::empty());
    return b.freeze();
}

} // namespace gp2
