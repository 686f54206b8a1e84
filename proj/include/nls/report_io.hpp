#pragma once
// Canonical report serialization. JSON is the canonical format: reports are
// ordered objects dumped with a fixed 2-space indent, so identical inputs
// produce byte-identical files. The only nondeterministic field, the
// timestamp, is isolated inside the "header" object; comparing two reports
// with that one field erased is an exact byte comparison.
//
// CSV is the plot-ready companion with one fixed schema for every report
// kind:
//
//   series,index,value
//
// where `series` names a quantity (e.g. "ratio", "max_ratio"), `index` is
// the 0-based position for vector series and 0 for scalars, and `value` is
// printed with 17 significant digits (round-trip exact). Snapshot dumps from
// the solver use their own documented header (see write_snapshots_csv).

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "nls/exponents.hpp"
#include "nls/lab.hpp"

namespace nls::report {

using ordered_json = nlohmann::ordered_json;

// Single library version embedded in every report header.
inline constexpr const char* kVersion = "1.0.0";

ordered_json to_json(const InequalityReport& rep);
ordered_json to_json(const TrilinearReport& rep);
ordered_json to_json(const UniquenessReport& rep);
ordered_json to_json(const exponents::ValidationReport& rep);
// Exponents carry both the exact rational string and the double value.
ordered_json to_json(const exponents::ExponentTuple& tuple);
ordered_json to_json(const IterationTrace& trace);

// header (tool, version, timestamp) + resolved config + report payload.
ordered_json envelope(ordered_json config, ordered_json reports);

// Fixed-format dump: 2-space indent, trailing newline.
std::string canonical_dump(const ordered_json& doc);

// CSV emission in the series,index,value schema.
void csv_header(std::ostream& os);
void csv_series(std::ostream& os, const std::string& series, const std::vector<double>& values);
void csv_scalar(std::ostream& os, const std::string& series, double value);

// Flatten a report payload into CSV: every number and array of numbers in
// the (possibly nested) object becomes a series named by its dotted path.
void csv_from_json(std::ostream& os, const ordered_json& reports);

// Solver snapshot dump: header "snapshot,t,x,re,im", one row per spatial
// point per kept snapshot.
void write_snapshots_csv(std::ostream& os, const SpaceTimeField& u);

}  // namespace nls::report
