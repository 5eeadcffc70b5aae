#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "relad/errors.hpp"
#include "relad/relation.hpp"
#include "relad/ruleminer.hpp"
#include "testutil.hpp"

using namespace relad;
using testutil::fv;

TEST_SUITE_BEGIN("ruleminer");

TEST_CASE("the same function shipped by three runtimes forms one group") {
    const std::vector<ApiEntry> apis{
        {"crtdll.dll", "memcpy", 0},
        {"msvcr90.dll", "memcpy", 1},
        {"msvcr110.dll", "memcpy", 2},
        {"kernel32.dll", "CreateProcess", 3},
    };
    const EquivalenceGroupSet groups = extract_groups(apis);
    CHECK(groups == EquivalenceGroupSet{{0, 1, 2}});
}

TEST_CASE("character-width twins group even without the bare stem") {
    const std::vector<ApiEntry> apis{
        {"kernel32.dll", "CreateFileA", 4},
        {"kernel32.dll", "CreateFileW", 9},
    };
    CHECK(extract_groups(apis) == EquivalenceGroupSet{{4, 9}});
}

TEST_CASE("suffix rules match the bare stem too") {
    const std::vector<ApiEntry> apis{
        {"user32.dll", "SendMessage", 0},
        {"user32.dll", "SendMessageW", 1},
        {"msvcrt.dll", "strcpy", 2},
        {"msvcrt.dll", "strcpy_s", 3},
        {"advapi32.dll", "RegQueryValue", 4},
        {"advapi32.dll", "RegQueryValueEx", 5},
    };
    CHECK(extract_groups(apis) ==
          EquivalenceGroupSet{{0, 1}, {2, 3}, {4, 5}});
}

TEST_CASE("unrelated names in one library mine nothing") {
    const std::vector<ApiEntry> apis{
        {"a.dll", "Foo", 0},
        {"a.dll", "Bar", 1},
        {"a.dll", "Baz", 2},
    };
    CHECK(extract_groups(apis).empty());
    // Same name within one library is not a substitution pattern either.
    const std::vector<ApiEntry> twins{{"a.dll", "Foo", 0}, {"a.dll", "Foo", 1}};
    CHECK(extract_groups(twins).empty());
}

TEST_CASE("suffix chains merge transitively into one group") {
    const std::vector<ApiEntry> apis{
        {"a.dll", "GetVersionExW", 0},
        {"a.dll", "GetVersionEx", 1},
        {"a.dll", "GetVersionExA", 2},
        {"b.dll", "GetVersionEx", 3},
    };
    CHECK(extract_groups(apis) == EquivalenceGroupSet{{0, 1, 2, 3}});
}

TEST_CASE("extraction is invariant under input permutation") {
    std::vector<ApiEntry> apis{
        {"crtdll.dll", "memcpy", 0},  {"msvcr90.dll", "memcpy", 1},
        {"a.dll", "CreateFileA", 2},  {"a.dll", "CreateFileW", 3},
        {"a.dll", "CreateFile", 4},   {"b.dll", "lonesome", 5},
        {"c.dll", "strcat_s", 6},     {"c.dll", "strcat", 7},
        {"d.dll", "ReadFileEx", 8},   {"e.dll", "ReadFileEx", 9},
    };
    const EquivalenceGroupSet reference = extract_groups(apis);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(apis.begin(), apis.end(), rng);
        CHECK(extract_groups(apis) == reference);
    }
}

TEST_CASE("mined groups are disjoint, sized two or more, and reject duplicates") {
    const std::vector<ApiEntry> apis{
        {"a.dll", "Alpha", 0}, {"b.dll", "Alpha", 1}, {"c.dll", "AlphaEx", 2},
        {"a.dll", "Beta", 3},  {"b.dll", "BetaW", 4},
    };
    const EquivalenceGroupSet groups = extract_groups(apis);
    std::vector<std::size_t> seen;
    for (const auto& group : groups) {
        CHECK(group.size() >= 2);
        for (std::size_t id : group) seen.push_back(id);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());

    const std::vector<ApiEntry> duplicated{{"a.dll", "X", 7}, {"b.dll", "Y", 7}};
    CHECK_THROWS_AS(extract_groups(duplicated), DuplicateFeatureId);
}

TEST_CASE("groups become a relation whose moves swap within the group") {
    CHECK(groups_to_relation({}).empty());

    const RelationSpec spec = groups_to_relation({{3, 7}});
    FeatureVector x(8);
    x.set(3, true);
    FeatureVector swapped(8);
    swapped.set(7, true);
    const std::vector<FeatureVector> moves = atomic_moves(spec, x);
    CHECK(std::find(moves.begin(), moves.end(), swapped) != moves.end());

    CHECK_THROWS_AS(groups_to_relation({{1, 2}, {2, 3}}), OverlappingGroups);
}

TEST_CASE("csv inventories parse with or without a header") {
    std::istringstream with_header(
        "library,api,feature_id\ncrtdll.dll,memcpy,0\nmsvcr90.dll,memcpy,1\n");
    const std::vector<ApiEntry> parsed = read_api_csv(with_header);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].library == "crtdll.dll");
    CHECK(parsed[0].api == "memcpy");
    CHECK(parsed[1].feature_id == 1);

    std::istringstream headless("a.dll,Foo,3\n");
    CHECK(read_api_csv(headless).size() == 1);

    std::istringstream broken("a.dll;Foo;3\n");
    CHECK_THROWS_AS(read_api_csv(broken), ParseError);
}

TEST_SUITE_END();
