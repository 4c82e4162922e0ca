#pragma once

// File formats spoken by the CLI and reusable from tests:
//   Signal JSON:  {"p": int, "re": [float; p], "im": [float; p]}
//   Signal CSV:   p lines of "re,im"
//   FrameReport / spectrum / group diagnostics: JSON documents below.
// Parse errors carry the offending line or field name.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zpframe/frame.hpp"
#include "zpframe/group.hpp"
#include "zpframe/numtheory.hpp"
#include "zpframe/signal.hpp"

namespace zpframe {

using nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json signal_to_json(const Signal& x) {
  json j;
  j["p"] = x.p();
  std::vector<double> re, im;
  re.reserve(x.values.size());
  im.reserve(x.values.size());
  for (const cd& v : x.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline Signal signal_from_json(const json& j) {
  for (const char* field : {"p", "re", "im"}) {
    if (!j.contains(field)) throw ParseError(std::string("signal: missing field \"") + field + "\"");
  }
  if (!j["p"].is_number_integer()) throw ParseError("signal: field \"p\" must be an integer");
  if (!j["re"].is_array()) throw ParseError("signal: field \"re\" must be an array");
  if (!j["im"].is_array()) throw ParseError("signal: field \"im\" must be an array");
  const int64_t p = j["p"].get<int64_t>();
  if (p < 1) throw ParseError("signal: field \"p\" must be positive");
  const auto& re = j["re"];
  const auto& im = j["im"];
  if (static_cast<int64_t>(re.size()) != p) {
    throw ParseError("signal: field \"re\" has " + std::to_string(re.size()) +
                     " entries, expected p = " + std::to_string(p));
  }
  if (static_cast<int64_t>(im.size()) != p) {
    throw ParseError("signal: field \"im\" has " + std::to_string(im.size()) +
                     " entries, expected p = " + std::to_string(p));
  }
  Signal x = Signal::zeros(p);
  for (int64_t k = 0; k < p; ++k) {
    const auto& r = re[static_cast<std::size_t>(k)];
    const auto& i = im[static_cast<std::size_t>(k)];
    if (!r.is_number() || !i.is_number()) {
      throw ParseError("signal: non-numeric entry at index " + std::to_string(k));
    }
    x[k] = cd{r.get<double>(), i.get<double>()};
  }
  if (!x.finite()) throw ParseError("signal: entries must be finite");
  return x;
}

inline std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

inline std::string signal_to_csv(const Signal& x) {
  std::string out;
  for (const cd& v : x.values) {
    out += format_double(v.real());
    out += ',';
    out += format_double(v.imag());
    out += '\n';
  }
  return out;
}

inline Signal signal_from_csv(std::istream& in) {
  std::vector<cd> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("signal csv: line " + std::to_string(line_no) + ": expected \"re,im\"");
    }
    char* end = nullptr;
    const std::string re_str = line.substr(0, comma);
    const std::string im_str = line.substr(comma + 1);
    const double re = std::strtod(re_str.c_str(), &end);
    if (end == re_str.c_str() || *end != '\0') {
      throw ParseError("signal csv: line " + std::to_string(line_no) + ": bad real part");
    }
    const double im = std::strtod(im_str.c_str(), &end);
    if (end == im_str.c_str() || (*end != '\0' && *end != '\r')) {
      throw ParseError("signal csv: line " + std::to_string(line_no) + ": bad imaginary part");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw ParseError("signal csv: line " + std::to_string(line_no) + ": entries must be finite");
    }
    values.emplace_back(re, im);
  }
  if (values.empty()) throw ParseError("signal csv: no rows");
  return Signal(std::move(values));
}

/// Reads a signal from disk, sniffing JSON ('{' first) vs CSV, and checks
/// the length against the expected prime.
inline Signal load_signal(const std::string& path, int64_t expect_p) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError(path + ": empty file");

  Signal x;
  if (text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(path + ": " + e.what());
    }
    try {
      x = signal_from_json(j);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  } else {
    std::istringstream stream(text);
    try {
      x = signal_from_csv(stream);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  if (expect_p > 0 && x.p() != expect_p) {
    throw ParseError(path + ": signal has length " + std::to_string(x.p()) +
                     ", expected p = " + std::to_string(expect_p));
  }
  return x;
}

inline json report_to_json(const FrameReport& report) {
  json j;
  j["p"] = report.p;
  j["M"] = report.M;
  j["a"] = report.a;
  j["is_frame"] = report.is_frame;
  j["is_tight"] = report.is_tight;
  j["A"] = report.lower_bound_A;
  j["B"] = report.upper_bound_B;
  j["paper_lower_bound"] = report.paper_lower_bound;
  if (report.alpha_tight) {
    j["alpha"] = *report.alpha_tight;
  } else {
    j["alpha"] = nullptr;
  }
  j["redundancy"] = report.redundancy;
  j["spectrum"] = {{"dc", report.spectrum.dc}, {"cosets", report.spectrum.per_coset}};
  j["y_matrix_rows_nonzero"] = report.y_matrix_row_nonzero;
  j["dc_nonzero"] = report.dc_nonzero;
  j["tolerance"] = report.tolerance;
  return j;
}

/// Group diagnostics: |W_p|, the generator, the subgroup (sorted), and the
/// coset table (rows in generator-power order, as the Y matrix lays them out).
inline json group_to_json(const PrimeContext& ctx, const SubgroupDecomposition& sub) {
  json j;
  j["p"] = ctx.p;
  j["order"] = ctx.p * (ctx.p - 1);
  j["epsilon"] = ctx.primitive_root;
  j["M"] = sub.order_M;
  j["a"] = sub.index_a;
  j["subgroup"] = sub.elements_sorted();
  j["cosets"] = sub.cosets;
  return j;
}

inline json spectrum_to_json(const PrimeContext& ctx, const SubgroupDecomposition& sub,
                             const FrameSpectrum& spectrum) {
  json j;
  j["p"] = ctx.p;
  j["M"] = sub.order_M;
  j["a"] = sub.index_a;
  j["spectrum"] = {{"dc", spectrum.dc}, {"cosets", spectrum.per_coset}};
  j["A"] = spectrum.min_eigenvalue();
  j["B"] = spectrum.max_eigenvalue();
  return j;
}

inline std::string grid_to_csv(const CoefficientGrid& grid, const IndexSet& index_set) {
  std::string out = "m,k,re,im\n";
  for (std::size_t j = 0; j < index_set.elements.size(); ++j) {
    const GroupElement& g = index_set.elements[j];
    out += std::to_string(g.m);
    out += ',';
    out += std::to_string(g.k);
    out += ',';
    out += format_double(grid.values[j].real());
    out += ',';
    out += format_double(grid.values[j].imag());
    out += '\n';
  }
  return out;
}

inline json grid_to_json(const CoefficientGrid& grid, const IndexSet& index_set, int64_t p) {
  json entries = json::array();
  for (std::size_t j = 0; j < index_set.elements.size(); ++j) {
    const GroupElement& g = index_set.elements[j];
    entries.push_back({g.m, g.k, grid.values[j].real(), grid.values[j].imag()});
  }
  json j;
  j["p"] = p;
  j["columns"] = {"m", "k", "re", "im"};
  j["entries"] = entries;
  return j;
}

}  // namespace zpframe
