#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace diophlab::cli {

namespace {

std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "tsv") return Format::tsv;
  if (s == "table") return Format::table;
  throw PreconditionError("unknown format: " + std::string(s));
}

Output::Output(std::string command) { doc["command"] = std::move(command); }

void Output::row(std::vector<json> cells) {
  if (cells.size() != columns.size()) throw std::logic_error("row width does not match columns");
  json r = json::object();
  for (std::size_t i = 0; i < cells.size(); ++i) r[columns[i]] = std::move(cells[i]);
  rows.push_back(std::move(r));
}

void Output::fail(const std::string& what) {
  if (!failed) witness = what;
  failed = true;
}

void emit(const Output& out, Format f, std::ostream& os) {
  if (f == Format::json) {
    json doc = out.doc;
    doc["ok"] = !out.failed;
    if (out.failed) doc["witness"] = out.witness;
    doc["rows"] = out.rows;
    os << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> grid;
  grid.push_back(out.columns);
  for (const auto& r : out.rows) {
    std::vector<std::string> line;
    for (const auto& c : out.columns) line.push_back(cell_text(r.at(c)));
    grid.push_back(std::move(line));
  }
  if (f == Format::tsv) {
    for (const auto& line : grid) {
      for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "\t" : "") << line[i];
      os << '\n';
    }
  } else {
    std::vector<std::size_t> width(out.columns.size(), 0);
    for (const auto& line : grid)
      for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto& line = grid[k];
      for (std::size_t i = 0; i < line.size(); ++i) {
        os << line[i];
        if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
      }
      os << '\n';
      if (k == 0) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i + 1 < width.size() ? 2 : 0);
        os << std::string(total, '-') << '\n';
      }
    }
  }
  if (out.failed) os << "FAIL: " << out.witness << '\n';
}

json rat(const Rational& r) { return to_string(r); }

json integer(const Integer& z) { return z.get_str(); }

json vec(const PrimVec& v) { return json::array({integer(v.p1()), integer(v.p2()), integer(v.q())}); }

json wedge(const Wedge2& w) { return json::array({integer(w.p12), integer(w.p13), integer(w.p23)}); }

json point(const RatPoint& x) { return json::array({rat(x.x1), rat(x.x2)}); }

json log_quantity(const Rational& arg, double value) {
  return json{{"arg", rat(arg)}, {"value", real(value)}};
}

json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

PrimVec parse_vec(std::string_view s) {
  std::vector<Integer> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const std::string tok(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    try {
      parts.emplace_back(tok);
    } catch (const std::invalid_argument&) {
      throw PreconditionError("not an integer: '" + tok + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) throw PreconditionError("expected p1,p2,q: '" + std::string(s) + "'");
  return PrimVec(parts[0], parts[1], parts[2]);
}

}  // namespace diophlab::cli
