#pragma once

// Plain-text artifact formats.  Every format is line-oriented, ASCII, and
// deterministic, so artifacts can be diffed and re-verified byte-for-byte:
//
//   field       "p e modulus"         (modulus encoding, 0 when e == 1)
//   point set   "q n m" header, then one comma-separated coordinate row
//               per point
//   hypergraph  "r |V| |E|" header, then one space-separated sorted edge
//               per line
//   containers  one "f1 f2 ... | c1 c2 ..." line per (fingerprint,
//               container) pair
//   tree        one "id parent case_tag {C0} | {C1} | ... | {Cl}" line per
//               node with brace-wrapped vertex lists, then a trailing
//               "stats {json}" line

#include <string>
#include <vector>

#include "evaset/cctree.hpp"
#include "evaset/container.hpp"
#include "evaset/errors.hpp"
#include "evaset/field.hpp"
#include "evaset/geom.hpp"
#include "evaset/hypergraph.hpp"

namespace evaset {

std::string pointset_to_string(const PointSet& P);
PointSet pointset_from_string(const FieldCtx& ctx, const std::string& text);

std::string hypergraph_to_string(const Hypergraph& H);
Hypergraph hypergraph_from_string(const std::string& text);

std::string containers_to_string(const ContainerFamily& fam);
struct ParsedContainers {
    std::vector<std::vector<std::uint32_t>> fingerprints;
    std::vector<std::vector<std::uint32_t>> containers;
};
ParsedContainers containers_from_string(const std::string& text);

std::string cctree_to_string(const CCTree& T, const TreeStats& stats);
CCTree cctree_from_string(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace evaset
