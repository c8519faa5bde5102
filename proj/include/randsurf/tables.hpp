#pragma once

// Reference tables compiled into the library, and their re-computation.
//
// Table text format:
//   name NAME            alias ALIAS          title free text
//   arrangement GENERATOR [PARAMS...]
//   columns KEY...
//   row p=P mu=1+2+...;... KEY=VALUE KEY~VALUE ...
// KEY is c1_sq, c2, chi, ratio_c or ratio_chi. VALUE is an integer, a fraction
// (exact comparison) or a decimal: '=' truncates the computed value to the same
// number of places, '~' rounds it.

#include "randsurf/arrangement.hpp"
#include "randsurf/covers.hpp"
#include "randsurf/partitions.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace randsurf {

namespace detail {
struct EmbeddedTable {
    const char* name;
    const char* text;
};
const std::vector<EmbeddedTable>& embedded_tables();
} // namespace detail

enum class CompareMode { Exact, Truncated, Rounded };

struct TableExpectation {
    std::string key;
    std::string value;
    CompareMode mode = CompareMode::Exact;
};

struct TableRow {
    std::size_t line = 0;
    std::int64_t p = 0;
    PartitionSolution partition;
    std::vector<TableExpectation> expect;
};

struct TableSpec {
    std::string name;
    std::vector<std::string> aliases;
    std::string title;
    std::string generator;
    std::vector<std::int64_t> generator_params;
    std::vector<std::string> columns;
    std::vector<TableRow> rows;

    Arrangement arrangement() const;
};

TableSpec parse_table(std::string_view text);

/// Canonical names of the embedded tables.
std::vector<std::string> table_names();

/// Looks up an embedded table by name or alias. Throws PreconditionError.
TableSpec load_table(std::string_view name);

struct TableCheck {
    std::string key;
    std::string expected;
    std::string computed;
    bool pass = false;
};

/// Renders a report field the way `exp` is written (integer, fraction or decimal).
TableCheck compare_expectation(const TableExpectation& exp, const ChernReport& r);

struct TableRowResult {
    TableRow row;
    ChernReport report;
    std::vector<TableCheck> checks;
    bool pass = false;
};

struct TableResult {
    TableSpec spec;
    std::vector<TableRowResult> rows;
    bool pass() const;
};

/// Rows run in parallel; results keep row order.
TableResult run_table(const TableSpec& spec, unsigned workers = 0);

} // namespace randsurf
