#include "relad/ruleminer.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "relad/errors.hpp"

namespace relad {

namespace {

bool ends_with(const std::string& name, const std::string& suffix) {
    return name.size() > suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct EntryUnionFind {
    std::vector<std::size_t> parent;

    explicit EntryUnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }

    std::size_t find(std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

EquivalenceGroupSet extract_groups(const std::vector<ApiEntry>& apis) {
    std::set<std::size_t> ids;
    for (const ApiEntry& entry : apis) {
        if (entry.api.empty() || entry.library.empty()) {
            throw InvalidConfig("API entry needs non-empty library and api names");
        }
        if (!ids.insert(entry.feature_id).second) {
            throw DuplicateFeatureId("feature id " + std::to_string(entry.feature_id) +
                                     " assigned twice");
        }
    }

    EntryUnionFind uf(apis.size());

    // Name buckets; ordered map keeps the whole extraction order-independent.
    std::map<std::string, std::vector<std::size_t>> by_name;
    for (std::size_t i = 0; i < apis.size(); ++i) by_name[apis[i].api].push_back(i);

    // Pattern 1: identical name, different library.
    for (const auto& [name, bucket] : by_name) {
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            for (std::size_t j = i + 1; j < bucket.size(); ++j) {
                if (apis[bucket[i]].library != apis[bucket[j]].library) {
                    uf.unite(bucket[i], bucket[j]);
                }
            }
        }
    }

    const auto unite_buckets = [&](const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
        for (std::size_t i : a) {
            for (std::size_t j : b) uf.unite(i, j);
        }
    };
    const auto unite_with_name = [&](const std::vector<std::size_t>& bucket,
                                     const std::string& other) {
        auto it = by_name.find(other);
        if (it != by_name.end()) unite_buckets(bucket, it->second);
    };

    // Patterns 2-4: suffix variants of the same stem.
    for (const auto& [name, bucket] : by_name) {
        if (ends_with(name, "Ex")) {
            unite_with_name(bucket, name.substr(0, name.size() - 2));
        }
        if (ends_with(name, "_s")) {
            unite_with_name(bucket, name.substr(0, name.size() - 2));
        }
        if (ends_with(name, "A") || ends_with(name, "W")) {
            const std::string stem = name.substr(0, name.size() - 1);
            unite_with_name(bucket, stem);
            unite_with_name(bucket, stem + (name.back() == 'A' ? 'W' : 'A'));
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> groups_by_root;
    for (std::size_t i = 0; i < apis.size(); ++i) {
        groups_by_root[uf.find(i)].push_back(apis[i].feature_id);
    }
    EquivalenceGroupSet groups;
    for (auto& [root, members] : groups_by_root) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end());
        groups.push_back(std::move(members));
    }
    std::sort(groups.begin(), groups.end());
    return groups;
}

RelationSpec groups_to_relation(const EquivalenceGroupSet& groups) {
    RelationSpec spec;
    spec.equivalence_groups = groups;
    spec.validate();
    return spec;
}

std::vector<ApiEntry> read_api_csv(std::istream& in) {
    std::vector<ApiEntry> entries;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && line == "library,api,feature_id") {
            first = false;
            continue;
        }
        first = false;
        std::istringstream row(line);
        ApiEntry entry;
        std::string id_field;
        if (!std::getline(row, entry.library, ',') || !std::getline(row, entry.api, ',') ||
            !std::getline(row, id_field)) {
            throw ParseError("CSV row needs library,api,feature_id: " + line);
        }
        try {
            entry.feature_id = static_cast<std::size_t>(std::stoull(id_field));
        } catch (const std::exception&) {
            throw ParseError("bad feature id in CSV row: " + line);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace relad
