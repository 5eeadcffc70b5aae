#ifndef RELAD_RULEMINER_HPP
#define RELAD_RULEMINER_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "relad/relation.hpp"

namespace relad {

/// One API row of the inventory: where it ships, what it is called, and the
/// feature coordinate it occupies.
struct ApiEntry {
    std::string library;
    std::string api;
    std::size_t feature_id = 0;
};

using EquivalenceGroupSet = std::vector<std::vector<std::size_t>>;

/**
 * Groups functionally equivalent APIs by four syntactic patterns:
 *   1. the same name shipped by different libraries,
 *   2. names differing only by a trailing "Ex",
 *   3. names differing only by a trailing "A" or "W" (either against the
 *      bare stem or against each other),
 *   4. names differing only by a trailing "_s".
 * Matches merge transitively; singleton groups are dropped.  Output groups
 * are disjoint, members ascending, groups ordered by first member.
 */
EquivalenceGroupSet extract_groups(const std::vector<ApiEntry>& apis);

/// Wraps mined groups as a relation usable by the rest of the toolkit.
RelationSpec groups_to_relation(const EquivalenceGroupSet& groups);

/// CSV rows "library,api,feature_id"; a leading header row is skipped.
std::vector<ApiEntry> read_api_csv(std::istream& in);

}  // namespace relad

#endif  // RELAD_RULEMINER_HPP
