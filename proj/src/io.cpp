#include "blockade/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace blockade {

namespace {

const std::vector<std::string> kMetrics = {"meanN", "g2", "g3", "log10g2", "log10g3", "residual"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool has_axis(const SweepTable& t, const std::string& name) {
  for (const auto& a : t.axes)
    if (a == name) return true;
  return false;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s) {
  const std::string t = trim(s);
  if (t == "nan" || t == "NaN" || t == "-nan") return std::numeric_limits<double>::quiet_NaN();
  if (t == "inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty())
    throw std::invalid_argument("not a number: '" + t + "'");
  return v;
}

std::vector<std::string> csv_header(const SweepTable& t) {
  std::vector<std::string> h = t.axes;
  if (!has_axis(t, "delta")) h.push_back("delta");
  h.insert(h.end(), kMetrics.begin(), kMetrics.end());
  if (t.converge) {
    h.push_back("fockCutoff");
    h.push_back("drift");
  }
  return h;
}

void write_csv(std::ostream& os, const SweepTable& t) {
  const auto header = csv_header(t);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  const bool deltaColumn = !has_axis(t, "delta");
  for (const auto& row : t.rows) {
    std::vector<double> cells = row.coords;
    const auto& r = row.result;
    if (deltaColumn) cells.push_back(r.delta);
    for (double v : {r.meanN, r.g2, r.g3, r.log10g2, r.log10g3, r.residual}) cells.push_back(v);
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << format_double(cells[i]);
    if (t.converge) os << ',' << row.fockCutoff << ',' << format_double(row.drift);
    os << '\n';
  }
}

SweepTable read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
  const auto header = split(line);
  std::size_t m = 0;
  while (m < header.size() && header[m] != "meanN") ++m;
  if (m == 0 || m == header.size()) throw std::runtime_error("csv: header has no axis or no meanN column");
  for (std::size_t k = 0; k < kMetrics.size(); ++k)
    if (m + k >= header.size() || header[m + k] != kMetrics[k])
      throw std::runtime_error("csv: expected column '" + kMetrics[k] + "'");

  SweepTable t;
  std::vector<std::string> pre(header.begin(), header.begin() + static_cast<std::ptrdiff_t>(m));
  if (pre.back() != "delta" && std::find(pre.begin(), pre.end(), "delta") == pre.end())
    throw std::runtime_error("csv: no delta column");
  std::vector<std::vector<std::string>> body;
  std::vector<std::size_t> lineNos;
  for (std::size_t lineNo = 2; std::getline(is, line); ++lineNo) {
    if (trim(line).empty()) continue;
    body.push_back(split(line));
    lineNos.push_back(lineNo);
    if (body.back().size() != header.size())
      throw std::runtime_error("csv line " + std::to_string(lineNo) + ": expected " + std::to_string(header.size()) +
                               " cells, got " + std::to_string(body.back().size()));
  }
  // A trailing delta column is an axis in a long-format 2D table (first
  // column repeats) and a per-point value otherwise.
  bool deltaColumn = pre.size() == 3;
  if (pre.size() == 2 && pre[1] == "delta") {
    std::vector<std::string> firsts;
    for (const auto& cells : body) firsts.push_back(cells[0]);
    std::sort(firsts.begin(), firsts.end());
    deltaColumn = std::adjacent_find(firsts.begin(), firsts.end()) == firsts.end();
  }
  if (deltaColumn) {
    if (pre.back() != "delta") throw std::runtime_error("csv: expected delta after the axis columns");
    pre.pop_back();
  }
  if (pre.empty() || pre.size() > 2) throw std::runtime_error("csv: expected one or two axis columns");
  t.axes = pre;
  if (!deltaColumn && std::find(pre.begin(), pre.end(), "delta") == pre.end())
    throw std::runtime_error("csv: no delta column");
  const std::size_t tail = m + kMetrics.size();
  if (header.size() == tail + 2 && header[tail] == "fockCutoff" && header[tail + 1] == "drift") t.converge = true;
  else if (header.size() != tail) throw std::runtime_error("csv: unexpected trailing columns");

  for (std::size_t b = 0; b < body.size(); ++b) {
    const auto& cells = body[b];
    try {
      SweepRow row;
      std::size_t c = 0;
      for (; c < t.axes.size(); ++c) row.coords.push_back(parse_double(cells[c]));
      auto& r = row.result;
      if (deltaColumn) {
        r.delta = parse_double(cells[c++]);
      } else {
        const auto k = static_cast<std::size_t>(std::find(t.axes.begin(), t.axes.end(), "delta") - t.axes.begin());
        r.delta = row.coords[k];
      }
      double* metrics[] = {&r.meanN, &r.g2, &r.g3, &r.log10g2, &r.log10g3, &r.residual};
      for (double* dst : metrics) *dst = parse_double(cells[c++]);
      r.lowSignal = !(r.meanN > kLowSignal);
      row.error = std::isnan(r.residual);
      if (t.converge) {
        row.fockCutoff = static_cast<int>(parse_double(cells[c++]));
        row.drift = parse_double(cells[c++]);
      }
      t.rows.push_back(std::move(row));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("csv line " + std::to_string(lineNos[b]) + ": " + e.what());
    }
  }
  return t;
}

void write_dressed_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
  os << "J,omegaD,g,phiZ,omegaC,manifold,level,numeric,closedForm\n";
  for (const auto& r : rows) {
    const auto& p = r.params;
    os << format_double(p.J) << ',' << format_double(p.omegaD) << ',' << format_double(p.g) << ','
       << format_double(p.phiZ) << ',' << format_double(p.omegaC) << ',' << to_string(r.manifold) << ',' << r.level
       << ',' << format_double(r.numeric) << ',' << format_double(r.closedForm) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << contents;
    if (!f.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  for (std::size_t lineNo = 1; std::getline(is, line); ++lineNo) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::runtime_error("config line " + std::to_string(lineNo) + ": expected key=value");
    const auto key = trim(std::string_view(t).substr(0, eq));
    const auto value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineNo) + ": empty key");
    if (!kv.emplace(key, value).second)
      throw std::runtime_error("config line " + std::to_string(lineNo) + ": duplicate key '" + key + "'");
  }
  return kv;
}

void apply_config(SystemParams& p, const std::map<std::string, std::string>& kv) {
  static const char* keys[] = {"delta",   "g",       "phiZ",    "J",       "omegaP",
                               "omegaD",  "gammaGE", "gammaSE", "gammaGS", "fockCutoff"};
  for (const auto& [key, value] : kv) {
    if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys))
      throw std::invalid_argument("unknown config key '" + key + "'");
    double v = 0.0;
    try {
      v = parse_double(value);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("config key '" + key + "': invalid value '" + value + "'");
    }
    try {
      set_param(p, key, v);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config key '" + key + "': " + e.what());
    }
  }
}

nlohmann::json to_json(const SystemParams& p) {
  return {{"delta", p.delta},     {"g", p.g},           {"phiZ", p.phiZ},       {"J", p.J},
          {"omegaP", p.omegaP},   {"omegaD", p.omegaD}, {"kappa", p.kappa},     {"gammaGE", p.gammaGE},
          {"gammaSE", p.gammaSE}, {"gammaGS", p.gammaGS}, {"fockCutoff", p.fockCutoff}};
}

nlohmann::json to_json(const PointResult& r) {
  // nlohmann writes non-finite numbers as null
  return {{"delta", r.delta},       {"meanN", r.meanN},       {"g2", r.g2},
          {"g3", r.g3},             {"log10g2", r.log10g2},   {"log10g3", r.log10g3},
          {"residual", r.residual}, {"lowSignal", r.lowSignal}, {"negative", r.negative},
          {"topFockPopulation", r.topFockPopulation}, {"blockade", std::string(to_string(classify(r.g2, r.g3)))}};
}

}  // namespace blockade
