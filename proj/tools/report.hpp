#pragma once

// Command output: a JSON document with a flat table of rows that is also
// rendered as TSV or an aligned text table.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "diophlab/core.hpp"

namespace diophlab::cli {

using json = nlohmann::ordered_json;

enum class Format { json, tsv, table };

Format parse_format(std::string_view s);

struct Output {
  json doc = json::object();
  std::vector<std::string> columns;
  json rows = json::array();
  bool failed = false;
  std::string witness;

  explicit Output(std::string command);

  void set_columns(std::vector<std::string> cols) { columns = std::move(cols); }
  void row(std::vector<json> cells);
  /// Marks the output as an audit failure, keeping the first witness.
  void fail(const std::string& what);
  void check(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

void emit(const Output& out, Format f, std::ostream& os);

/// "num/den" strings keep rationals exact across tools.
json rat(const Rational& r);
json integer(const Integer& z);
json vec(const PrimVec& v);
json wedge(const Wedge2& w);
json point(const RatPoint& x);
/// A logarithmic quantity log(arg) / k: the exact argument and the binary64 value.
json log_quantity(const Rational& arg, double value);
/// Non-finite doubles become null.
json real(double x);

PrimVec parse_vec(std::string_view s);

}  // namespace diophlab::cli
