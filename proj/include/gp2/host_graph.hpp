#ifndef GP2_HOST_GRAPH_HPP
#define GP2_HOST_GRAPH_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gp2/list_value.hpp"

namespace gp2 {

enum class NodeMark { None, Grey, Red, Green, Blue };
enum class EdgeMark { None, Dashed, Red, Green, Blue };

std::string_view node_mark_name(NodeMark m);
std::string_view edge_mark_name(EdgeMark m);
std::optional<NodeMark> node_mark_from_name(std::string_view name);
std::optional<EdgeMark> edge_mark_from_name(std::string_view name);

struct HostNode {
    std::string id;
    ListValue label;
    NodeMark mark = NodeMark::None;
    bool rooted = false;

    friend bool operator==(const HostNode&, const HostNode&) = default;
};

struct HostEdge {
    std::string id;
    int source = -1; // node index
    int target = -1;
    ListValue label;
    EdgeMark mark = EdgeMark::None;

    friend bool operator==(const HostEdge&, const HostEdge&) = default;
};

/// Orders ids numerically when both are unsigned integers, otherwise
/// lexicographically. Keeps `2` before `10` in serialized output.
bool id_less(const std::string& a, const std::string& b);

/// An immutable directed labelled graph with parallel edges, loops,
/// marks, and root flags. Cheap to copy (shared representation); all
/// operations over it are pure, so values can be shared across threads.
class HostGraph {
public:
    HostGraph(); // empty graph

    int node_count() const;
    int edge_count() const;
    const HostNode& node(int index) const;
    const HostEdge& edge(int index) const;
    const std::vector<HostNode>& nodes() const;
    const std::vector<HostEdge>& edges() const;
    std::optional<int> node_index(const std::string& id) const;

    int indegree(int node_index) const;
    int outdegree(int node_index) const;

    /// Counter used to derive fresh ids when a rule inserts items.
    long fresh_counter() const;

    /// Canonical-form certificate: equal for two graphs iff they are
    /// isomorphic. Computed once per value and cached.
    const std::string& canonical_key() const;

    /// Structural equality including ids (not isomorphism).
    friend bool operator==(const HostGraph& a, const HostGraph& b);

private:
    friend class GraphBuilder;
    struct Data;
    explicit HostGraph(std::shared_ptr<const Data> data);
    std::shared_ptr<const Data> data_;
};

/// Builds a HostGraph; `freeze` hands the result over. Ids must be
/// unique and edge endpoints must exist.
class GraphBuilder {
public:
    GraphBuilder();
    /// Starts from a copy of `g` (ids, labels, and fresh counter carried over).
    explicit GraphBuilder(const HostGraph& g);

    int add_node(std::string id, ListValue label, NodeMark mark = NodeMark::None,
                 bool rooted = false);
    int add_edge(std::string id, int source, int target, ListValue label,
                 EdgeMark mark = EdgeMark::None);

    bool has_id(const std::string& id) const;
    std::optional<int> node_index(const std::string& id) const;
    int node_count() const;

    /// Next unused id of the form n<k> / e<k>; advances the counter.
    std::string fresh_node_id();
    std::string fresh_edge_id();
    void seed_fresh(long counter);

    HostGraph freeze();

private:
    std::shared_ptr<HostGraph::Data> data_;
    void require_open() const;
};

/// Parses the host-graph text format:
///   graph := '[' node* '|' edge* ']'
///   node  := '(' id ',' list mark? root? ')'
///   edge  := '(' id ',' id ',' id ',' list mark? ')'
///   list  := 'empty' | atom (':' atom)*       atom := integer | '"' chars '"'
///   mark  := '#' markname                     root := '(R)'
/// Throws ParseError with line/column on bad syntax, a dangling edge
/// endpoint, or a duplicate id.
HostGraph parse_host_graph(std::string_view text);

/// Deterministic single-line rendering; node and edge sections are
/// ordered by ascending id. parse(serialize(g)) == g.
std::string serialize_host_graph(const HostGraph& g);

/// True iff there is a bijection on nodes and on edges preserving
/// incidence, labels, marks, and rootedness. Independent of
/// canonical_key (backtracking with signature pruning).
bool is_isomorphic(const HostGraph& a, const HostGraph& b);

/// Free-function spelling of HostGraph::canonical_key.
std::string canonical_key(const HostGraph& g);

/// The comb graph G_k: a k-node spine path plus one tooth per spine
/// node, tooth i pointing at spine node i. 2k nodes, 2k-1 edges.
HostGraph make_comb(int k);

} // namespace gp2

#endif
