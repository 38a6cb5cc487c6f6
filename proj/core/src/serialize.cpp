#include "fracseq/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fracseq/errors.hpp"

namespace fracseq {
namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  std::string s(buffer);
  // Keep integral floats recognisable as floats on re-read.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void dump_into(const Json& value, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump_into(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& v : value) scalars = scalars && !v.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i) out += ", ";
          dump_into(value[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_into(value[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

std::string mode_name(CoefficientMode mode) {
  return mode == CoefficientMode::exact ? "exact" : "floating";
}

double number_at(const Json& json, const std::string& field) {
  if (!json.is_number()) throw InvalidArgument("field '" + field + "' must be a number");
  const double v = json.get<double>();
  if (!std::isfinite(v)) throw InvalidArgument("field '" + field + "' must be finite");
  return v;
}

const Json& member(const Json& json, const std::string& key, const std::string& context) {
  if (!json.is_object()) throw InvalidArgument("field '" + context + "' must be an object");
  auto it = json.find(key);
  if (it == json.end()) {
    throw InvalidArgument("missing field '" + (context.empty() ? key : context + "." + key) + "'");
  }
  return *it;
}

std::vector<double> numbers_at(const Json& json, const std::string& field) {
  if (!json.is_array()) throw InvalidArgument("field '" + field + "' must be an array of numbers");
  std::vector<double> out;
  out.reserve(json.size());
  for (std::size_t i = 0; i < json.size(); ++i) {
    out.push_back(number_at(json[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::vector<double>> rows_at(const Json& json, const std::string& field) {
  if (!json.is_array()) throw InvalidArgument("field '" + field + "' must be an array of rows");
  std::vector<std::vector<double>> out;
  out.reserve(json.size());
  for (std::size_t n = 0; n < json.size(); ++n) {
    out.push_back(numbers_at(json[n], field + "[" + std::to_string(n) + "]"));
  }
  return out;
}

std::size_t count_at(const Json& json, const std::string& field) {
  const double v = number_at(json, field);
  if (v < 0 || std::floor(v) != v) {
    throw InvalidArgument("field '" + field + "' must be a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

Json rows_json(const std::vector<std::vector<double>>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(r);
  return out;
}

}  // namespace

std::string dump(const Json& value) {
  std::string out;
  dump_into(value, out, 0);
  out += "\n";
  return out;
}

Json to_json(const CoefficientTable& table) {
  Json out;
  out["order"] = table.order.to_string();
  out["mode"] = mode_name(table.mode);
  Json entries = Json::array();
  if (table.mode == CoefficientMode::exact) {
    for (const auto& c : table.exact_entries) entries.push_back(to_string(c));
  } else {
    for (double c : table.entries) entries.push_back(c);
  }
  out["entries"] = std::move(entries);
  if (table.decay_monotone_from) {
    out["decay_monotone_from"] = *table.decay_monotone_from;
  } else {
    out["decay_monotone_from"] = nullptr;
  }
  return out;
}

Json to_json(const FiniteSequence& sequence) {
  Json out;
  Json entries = Json::array();
  for (double v : sequence.entries()) entries.push_back(v);
  out["entries"] = std::move(entries);
  return out;
}

Json to_json(const NormResult& norm) {
  Json out;
  out["value"] = norm.value;
  Json report;
  report["terms_used"] = norm.report.terms_used;
  report["tail_flagged"] = norm.report.tail_flagged;
  report["tail_estimate"] = norm.report.tail_estimate;
  report["tolerance"] = norm.report.tolerance;
  out["report"] = std::move(report);
  return out;
}

Json to_json(const MatrixSource& source) {
  Json out;
  switch (source.kind()) {
    case MatrixKind::dense_window:
      out["kind"] = "dense-window";
      out["rows"] = rows_json(source.stored_rows());
      out["zero_beyond"] = source.declared_row_bound().has_value();
      break;
    case MatrixKind::banded: {
      out["kind"] = "banded";
      Json band;
      band["lower"] = source.band_lower();
      band["upper"] = source.band_upper();
      band["rows"] = rows_json(source.stored_rows());
      out["band"] = std::move(band);
      break;
    }
    case MatrixKind::generator: {
      out["kind"] = "generator";
      out["rule"] = source.rule();
      Json params = Json::object();
      if (source.rule() == "finite-rows") {
        params["rows"] = rows_json(source.stored_rows());
      } else {
        for (const auto& [key, values] : source.params()) {
          if (key == "values") {
            params[key] = values;
          } else if (values.size() == 1) {
            params[key] = values.front();
          } else {
            params[key] = values;
          }
        }
      }
      out["params"] = std::move(params);
      break;
    }
  }
  return out;
}

Json to_json(const HatMatrixWindow& window) {
  Json out;
  out["rows"] = window.rows();
  out["columns"] = window.cols();
  out["exactness"] = window.exactness() == Exactness::exact ? "exact" : "truncated";
  Json entries = Json::array();
  for (std::size_t n = 0; n < window.rows(); ++n) {
    auto r = window.row(n);
    entries.push_back(std::vector<double>(r.begin(), r.end()));
  }
  out["entries"] = std::move(entries);
  return out;
}

Json to_json(const SubsetSupremum& supremum) {
  Json out;
  out["value"] = supremum.value;
  out["certificate"] = supremum.certificate;
  out["method"] = supremum.method == SubsetMethod::exhaustive ? "exhaustive" : "greedy";
  out["bound"] = supremum.method == SubsetMethod::exhaustive ? "exact" : "lower";
  return out;
}

Json to_json(const CompactnessReport& report) {
  Json out;
  out["criterion_id"] = to_string(report.criterion);
  out["verdict"] = to_string(report.verdict);
  out["lower_value"] = report.lower_value;
  out["upper_value"] = report.upper_value;
  Json grid;
  grid["parameter"] = report.parameter;
  grid["r_values"] = report.grid.r_values;
  grid["values"] = report.grid.values;
  grid["stabilization_window"] = report.grid.stabilization_window;
  grid["tolerance"] = report.grid.tolerance;
  grid["stabilized"] = report.grid.stabilized();
  out["grid"] = std::move(grid);
  Json window;
  window["rows"] = report.row_count;
  window["columns"] = report.column_bound;
  window["exactness"] = report.exactness == Exactness::exact ? "exact" : "truncated";
  out["window"] = std::move(window);
  if (!report.column_limits.empty()) {
    Json limits = Json::array();
    for (const auto& e : report.column_limits) {
      Json item;
      item["k"] = e.k;
      item["estimate"] = e.estimate;
      item["converged"] = e.converged;
      limits.push_back(std::move(item));
    }
    out["column_limits"] = std::move(limits);
  }
  out["notes"] = report.notes;
  return out;
}

FiniteSequence sequence_from_json(const Json& json) {
  return FiniteSequence(numbers_at(member(json, "entries", ""), "entries"));
}

FiniteSequence sequence_from_csv(std::string_view text) {
  std::vector<double> values;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto first = line.find_first_not_of(" \t\r,");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r,");
    const std::string cell = line.substr(first, last - first + 1);
    double v = 0.0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || end != cell.data() + cell.size()) {
      throw InvalidArgument("csv line " + std::to_string(line_number) + " is not a number: '" + cell + "'");
    }
    values.push_back(v);
  }
  return FiniteSequence(std::move(values));
}

std::string to_csv(const FiniteSequence& sequence) {
  std::string out;
  for (double v : sequence.entries()) out += format_double(v) + "\n";
  return out;
}

MatrixSource matrix_from_json(const Json& json) {
  const Json& kind_json = member(json, "kind", "");
  if (!kind_json.is_string()) throw InvalidArgument("field 'kind' must be a string");
  const std::string kind = kind_json.get<std::string>();
  if (kind == "dense-window") {
    bool zero_beyond = true;
    if (auto it = json.find("zero_beyond"); it != json.end()) {
      if (!it->is_boolean()) throw InvalidArgument("field 'zero_beyond' must be a boolean");
      zero_beyond = it->get<bool>();
    }
    return MatrixSource::dense_window(rows_at(member(json, "rows", ""), "rows"), zero_beyond);
  }
  if (kind == "banded") {
    const Json& band = member(json, "band", "");
    return MatrixSource::banded(count_at(member(band, "lower", "band"), "band.lower"),
                                count_at(member(band, "upper", "band"), "band.upper"),
                                rows_at(member(band, "rows", "band"), "band.rows"));
  }
  if (kind == "generator") {
    const Json& rule_json = member(json, "rule", "");
    if (!rule_json.is_string()) throw InvalidArgument("field 'rule' must be a string");
    const std::string rule = rule_json.get<std::string>();
    static const Json kEmpty = Json::object();
    const Json& params = json.contains("params") ? json["params"] : kEmpty;
    if (!params.is_object()) throw InvalidArgument("field 'params' must be an object");
    if (rule == "identity") return MatrixSource::identity();
    if (rule == "diagonal") {
      if (params.contains("values")) {
        return MatrixSource::diagonal(numbers_at(params["values"], "params.values"));
      }
      return MatrixSource::geometric_diagonal(
          number_at(member(params, "scale", "params"), "params.scale"),
          number_at(member(params, "ratio", "params"), "params.ratio"));
    }
    if (rule == "finite-rows") {
      return MatrixSource::finite_rows(rows_at(member(params, "rows", "params"), "params.rows"));
    }
    if (rule == "row-scaled-shift") {
      return MatrixSource::row_scaled_shift(
          count_at(member(params, "shift", "params"), "params.shift"),
          number_at(member(params, "scale", "params"), "params.scale"),
          number_at(member(params, "ratio", "params"), "params.ratio"));
    }
    throw InvalidArgument("field 'rule' names an unknown generator '" + rule +
                          "' (known: identity, diagonal, finite-rows, row-scaled-shift)");
  }
  throw InvalidArgument("field 'kind' must be dense-window, banded or generator, got '" + kind + "'");
}

}  // namespace fracseq
