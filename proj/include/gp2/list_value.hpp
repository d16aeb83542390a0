#ifndef GP2_LIST_VALUE_HPP
#define GP2_LIST_VALUE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace gp2 {

/// A single label atom: a 64-bit integer or a character string.
using Atom = std::variant<std::int64_t, std::string>;

/// A host-graph label: a possibly empty list of atoms. Lists of length
/// one are the same thing as their single atom.
struct ListValue {
    std::vector<Atom> items;

    ListValue() = default;
    explicit ListValue(std::vector<Atom> xs) : items(std::move(xs)) {}

    static ListValue empty() { return ListValue{}; }
    static ListValue of_int(std::int64_t v) { return ListValue{{Atom{v}}}; }
    static ListValue of_string(std::string s) { return ListValue{{Atom{std::move(s)}}}; }

    bool is_empty() const { return items.empty(); }

    friend bool operator==(const ListValue&, const ListValue&) = default;
    friend auto operator<=>(const ListValue& a, const ListValue& b) {
        return a.items <=> b.items;
    }
};

std::string atom_to_text(const Atom& a);

/// Renders a list the way the host-graph format spells it: `empty`, or
/// atoms joined with ':'.
std::string list_to_text(const ListValue& v);

} // namespace gp2

#endif
