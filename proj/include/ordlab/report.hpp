#pragma once

// Report documents shared by the C API and the command-line driver. A report
// is an ordered list of fields ending in a status; listing commands carry
// prebuilt documents per format instead.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlab/canonical.hpp"
#include "ordlab/verify.hpp"

namespace ordlab {

enum class Format { kText, kCsv, kDot };

Format parse_format(std::string_view s);  // Error(kUsage) when unknown
const char* format_name(Format f);

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> fields;
  bool holds = true;
  std::map<Format, std::string> documents;

  void add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
};

/// Throws Error(kUsage) when the report has no rendering for the format.
std::string render(const Report& r, Format f);

/// 0 when the property holds, 1 otherwise.
int exit_status(const Report& r);

/// Recovers the exit status from a rendered text or csv report: the value
/// of its status field, 0 when it has none.
int exit_status_of(std::string_view rendered);

Report triangles_report(const TriangleReport& r);
Report lowerbound_report(const LowerBoundStepReport& r);
Report witness_report(const std::string& colouring, const Truncation& t,
                      std::size_t p, std::size_t q, std::uint32_t max_rank,
                      const std::optional<ClosedGridWitness>& w);
Report audit_report(const std::string& colouring, const AuditReport& r);
Report tables_report(const std::string& colouring, std::uint32_t deficiency,
                     const CanonicalTables& tables);
Report upper_report(const std::string& colouring, const UpperParams& params,
                    const UpperOutcome& outcome);
Report edge_report(const Ordinal& a, const Ordinal& b, const Colouring& col);
Report enumerate_report(const std::vector<Ordinal>& members);
Report tree_report(const Ordinal& root, std::uint32_t depth,
                   std::uint32_t fanout);

}  // namespace ordlab
