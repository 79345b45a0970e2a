#pragma once

// CSV, config and JSON serialization. Doubles are written with 17
// significant digits so a table survives a write/read cycle bit for bit;
// NaN is written as "nan".
//
// Sweep CSV columns: axis names, then delta when it is not an axis, then
// meanN,g2,g3,log10g2,log10g3,residual. Converge-mode tables append
// fockCutoff,drift. A row whose solve failed has every metric set to nan.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "blockade/dressed.hpp"
#include "blockade/model.hpp"
#include "blockade/steady_state.hpp"
#include "blockade/sweep.hpp"

#include "json.hpp"

namespace blockade {

std::string format_double(double v);
/// Accepts anything format_double writes, plus inf/-inf. Throws std::invalid_argument.
double parse_double(std::string_view s);

std::vector<std::string> csv_header(const SweepTable& t);
void write_csv(std::ostream& os, const SweepTable& t);
/// Throws std::runtime_error on malformed input, naming the line.
SweepTable read_csv(std::istream& is);

void write_dressed_csv(std::ostream& os, const std::vector<SpectrumRow>& rows);

/// Writes to path via a temporary sibling file, then renames. Throws std::runtime_error.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// key=value lines; '#' starts a comment; blank lines ignored. Throws
/// std::runtime_error naming the line on syntax errors and duplicate keys.
std::map<std::string, std::string> parse_config(std::istream& is);

/// Keys: delta, g, phiZ, J, omegaP, omegaD, gammaGE, gammaSE, gammaGS, fockCutoff.
/// Throws std::invalid_argument naming the offending key.
void apply_config(SystemParams& p, const std::map<std::string, std::string>& kv);

nlohmann::json to_json(const SystemParams& p);
nlohmann::json to_json(const PointResult& r);

}  // namespace blockade
