#pragma once

// Partition files:
//
//   p 61169
//   block 1 2 3 4 5 6 7 8 61133
//
// one `block` line per block, in block order. The inline form used on the
// command line and in table data is "1+2+3;4+5+6" (blocks separated by ';').

#include "randsurf/partitions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace randsurf {

struct PartitionFile {
    std::optional<std::int64_t> p;
    PartitionSolution solution;
};

PartitionFile parse_partition(std::string_view text);
std::string serialize_partition(std::int64_t p, const PartitionSolution& sol);

PartitionSolution parse_partition_inline(std::string_view text);
std::string format_partition_inline(const PartitionSolution& sol);

} // namespace randsurf
