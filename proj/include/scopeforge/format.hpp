#ifndef SCOPEFORGE_FORMAT_HPP
#define SCOPEFORGE_FORMAT_HPP

#include <string>

#include "scopeforge/core.hpp"

namespace scopeforge {

// Canonical text form of a store. Labels are renamed deterministically from
// structure alone (l_top, l_1, l_2, ...), referents to x1../X1.., unresolved
// slots to ?1... Constraint lines that merely restate the box structure of a
// complex condition are omitted, as are reflexive and identity constraints
// (identities are folded into the renaming). Two stores are isomorphic iff
// their canonical prints are byte-equal.
std::string printUdrs(const UdrsStore& store);

// Parses the text format back into a store over a fresh analysis.
// printUdrs(parseUdrs(text)) == text for canonical input.
UdrsStore parseUdrs(const std::string& text, Analysis& analysis);

// Audit table: one line per stored constraint with its provenance tag.
std::string printAudit(const UdrsStore& store);

// Subordination lattice in DOT syntax; graph_name names the digraph cluster.
std::string printDot(const UdrsStore& store, const std::string& graph_name);

}  // namespace scopeforge

#endif  // SCOPEFORGE_FORMAT_HPP
