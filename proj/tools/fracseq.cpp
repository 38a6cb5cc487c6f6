#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracseq/fracseq.hpp"

namespace {

using namespace fracseq;

struct Config {
  std::string order = "0";
  std::string p = "2";
  std::size_t n = 10;
  std::string mode;
  std::string in;
  std::string matrix;
  std::optional<std::size_t> length;
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::string grid = "0:64:8";
  double tolerance = 1e-8;
  double norm_tolerance = 1e-12;
  std::size_t max_terms = 1000000;
  std::size_t window = 4;
  std::string method = "exhaustive";
  std::size_t sargent_columns = 0;
  std::string format = "json";
  std::string out;
};

// What a command produced; each format is optional.
struct Output {
  Json json;
  std::optional<std::string> csv;
  std::optional<std::string> table;
};

// Usage errors raised by the front end itself.
struct UsageError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

std::string read_text(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing required option ") + flag);
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError(std::string(flag) + ": cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

bool looks_like_json(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && (text[first] == '{' || text[first] == '[');
}

Json parse_json(const std::string& text, const char* flag) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string(flag) + ": malformed JSON: " + e.what());
  }
}

FiniteSequence read_sequence(const Config& config) {
  const std::string text = read_text(config.in, "--in");
  return looks_like_json(text) ? sequence_from_json(parse_json(text, "--in")) : sequence_from_csv(text);
}

Rational exact_entry(const Json& value, const std::string& field) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_number()) return Rational(value.get<double>());
  throw InvalidArgument("field '" + field + "' must be a number or a \"p/q\" string");
}

ExactSequence read_exact_sequence(const Config& config) {
  const std::string text = read_text(config.in, "--in");
  std::vector<Rational> values;
  if (looks_like_json(text)) {
    const Json json = parse_json(text, "--in");
    if (!json.is_object() || !json.contains("entries")) throw InvalidArgument("missing field 'entries'");
    const Json& entries = json["entries"];
    if (!entries.is_array()) throw InvalidArgument("field 'entries' must be an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      values.push_back(exact_entry(entries[i], "entries[" + std::to_string(i) + "]"));
    }
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      const auto first = line.find_first_not_of(" \t\r,");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto last = line.find_last_not_of(" \t\r,");
      const std::string cell = line.substr(first, last - first + 1);
      if (cell.find_first_of(".eE") != std::string::npos) {
        values.emplace_back(sequence_from_csv(cell).entries()[0]);
      } else {
        values.push_back(parse_rational(cell));
      }
    }
  }
  return ExactSequence(std::move(values));
}

MatrixSource read_matrix(const Config& config) {
  return matrix_from_json(parse_json(read_text(config.matrix, "--matrix"), "--matrix"));
}

FractionalOrder order_of(const Config& config) {
  try {
    return FractionalOrder::parse(config.order);
  } catch (const Error& e) {
    throw InvalidArgument(std::string("--order: ") + e.what());
  }
}

Exponent exponent_of(const Config& config) {
  try {
    return Exponent::parse(config.p);
  } catch (const Error& e) {
    throw InvalidArgument(std::string("--p: ") + e.what());
  }
}

SubsetMethod method_of(const Config& config) {
  if (config.method == "exhaustive") return SubsetMethod::exhaustive;
  if (config.method == "greedy") return SubsetMethod::greedy;
  throw UsageError("--method must be exhaustive or greedy, got '" + config.method + "'");
}

std::size_t max_subset_rows() {
  const char* env = std::getenv("FRACSEQ_MAX_SUBSET_ROWS");
  if (env == nullptr || *env == '\0') return kDefaultMaxSubsetRows;
  std::size_t value = 0;
  const std::string text(env);
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError("FRACSEQ_MAX_SUBSET_ROWS must be a nonnegative integer, got '" + text + "'");
  }
  return value;
}

EvaluationOptions options_of(const Config& config) {
  EvaluationOptions options;
  options.row_count = config.rows;
  options.column_bound = config.cols;
  try {
    options.grid = IndexGrid::parse(config.grid);
  } catch (const Error& e) {
    throw InvalidArgument(std::string("--r-grid: ") + e.what());
  }
  options.stabilization_window = config.window;
  options.tolerance = config.tolerance;
  options.method = method_of(config);
  options.max_subset_rows = max_subset_rows();
  options.sargent_columns = config.sargent_columns;
  return options;
}

bool exact_mode(const Config& config, const FractionalOrder& order) {
  if (config.mode.empty()) return false;
  if (config.mode == "floating") return false;
  if (config.mode != "exact") throw UsageError("--mode must be exact or floating, got '" + config.mode + "'");
  if (!order.is_exact()) throw InvalidArgument("--mode exact needs an exact order written as p/q or an integer");
  return true;
}

std::string format_number(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  std::string s(buffer);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string indexed_table(const std::vector<std::string>& values) {
  std::string out;
  const std::size_t width = std::to_string(values.empty() ? 0 : values.size() - 1).size();
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::string index = std::to_string(k);
    out += std::string(width - index.size(), ' ') + index + "  " + values[k] + "\n";
  }
  return out;
}

Output sequence_output(const FiniteSequence& x) {
  std::vector<std::string> cells;
  for (double v : x.entries()) cells.push_back(format_number(v));
  return {to_json(x), to_csv(x), indexed_table(cells)};
}

Output sequence_output(const ExactSequence& x) {
  Json json;
  Json entries = Json::array();
  std::vector<std::string> cells;
  for (const auto& v : x.entries()) {
    entries.push_back(to_string(v));
    cells.push_back(to_string(v));
  }
  json["entries"] = std::move(entries);
  std::string csv;
  for (const auto& c : cells) csv += c + "\n";
  return {std::move(json), csv, indexed_table(cells)};
}

Output report_output(const CompactnessReport& report) {
  return {to_json(report), std::nullopt, render_table(report)};
}

Output value_output(Json json, double value) {
  return {std::move(json), format_number(value) + "\n", format_number(value) + "\n"};
}

Output run_coeffs(const Config& config) {
  const auto order = order_of(config);
  const bool exact = config.mode.empty() ? order.is_exact() : exact_mode(config, order);
  const CoefficientMode mode = exact ? CoefficientMode::exact : CoefficientMode::floating;
  const auto table = coefficient_prefix(order, config.n, mode);
  std::vector<std::string> cells;
  for (std::size_t i = 0; i < table.size(); ++i) {
    cells.push_back(mode == CoefficientMode::exact ? to_string(table.exact_entries[i])
                                                   : format_number(table.entries[i]));
  }
  std::string csv;
  for (const auto& c : cells) csv += c + "\n";
  return {to_json(table), csv, indexed_table(cells)};
}

template <class Transform>
Output run_sequence_map(const Config& config, Transform transform) {
  const auto order = order_of(config);
  if (exact_mode(config, order)) {
    const auto x = read_exact_sequence(config);
    return sequence_output(transform(x, order, config.length.value_or(x.size())));
  }
  const auto x = read_sequence(config);
  return sequence_output(transform(x, order, config.length.value_or(x.size())));
}

Output run_transform(const Config& config) {
  return run_sequence_map(config, [](const auto& x, const FractionalOrder& order, std::size_t length) {
    return forward_transform(x, order, length);
  });
}

Output run_inverse(const Config& config) {
  return run_sequence_map(config, [](const auto& x, const FractionalOrder& order, std::size_t length) {
    return inverse_transform(x, order, length);
  });
}

Output run_betadual(const Config& config) {
  return run_sequence_map(config, [](const auto& a, const FractionalOrder& order, std::size_t) {
    return beta_dual_transform(a, order);
  });
}

Output run_norm(const Config& config) {
  TruncationOptions options;
  options.tolerance = config.norm_tolerance;
  options.max_terms = config.max_terms;
  const auto result = space_norm(read_sequence(config), order_of(config), exponent_of(config), options);
  return value_output(to_json(result), result.value);
}

Output run_dualnorm(const Config& config) {
  const double value = dual_norm(read_sequence(config), order_of(config), exponent_of(config));
  Json json;
  json["value"] = value;
  return value_output(std::move(json), value);
}

Output run_hat(const Config& config) {
  const auto hat = hat_matrix(read_matrix(config), order_of(config), config.rows, config.cols);
  std::string csv;
  for (std::size_t n = 0; n < hat.rows(); ++n) {
    auto row = hat.row(n);
    for (std::size_t k = 0; k < row.size(); ++k) csv += (k ? "," : "") + format_number(row[k]);
    csv += "\n";
  }
  return {to_json(hat), csv, std::nullopt};
}

Output run_opnorm_linf(const Config& config) {
  const auto hat = hat_matrix(read_matrix(config), order_of(config), config.rows, config.cols);
  const double value = opnorm_to_linf(hat, exponent_of(config));
  Json json;
  json["value"] = value;
  json["rows"] = hat.rows();
  json["columns"] = hat.cols();
  json["exactness"] = hat.exactness() == Exactness::exact ? "exact" : "truncated";
  return value_output(std::move(json), value);
}

Output run_opnorm_l1(const Config& config) {
  const auto result = opnorm_to_l1(read_matrix(config), order_of(config), exponent_of(config), config.rows,
                                   config.cols, method_of(config), max_subset_rows());
  return value_output(to_json(result), result.value);
}

using Evaluator = std::function<CompactnessReport(const MatrixSource&, const FractionalOrder&,
                                                  const EvaluationOptions&)>;

Output run_report(const Config& config, const Evaluator& evaluate) {
  const auto options = options_of(config);
  return report_output(evaluate(read_matrix(config), order_of(config), options));
}

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

// Cross-module consistency checks on the supplied order, sequence and
// optional matrix.
Output run_verify(const Config& config, bool& all_passed) {
  const auto order = order_of(config);
  const auto p = exponent_of(config);
  const auto x = read_sequence(config);
  const std::size_t n = std::max<std::size_t>(x.size(), 1);
  std::vector<Check> checks;

  {
    const auto c = coefficient_values<double>(order, n);
    const auto d = coefficient_values<double>(order.negated(), n);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i <= k; ++i) sum += c[i] * d[k - i];
      worst = std::max(worst, std::abs(sum - (k == 0 ? 1.0 : 0.0)));
    }
    checks.push_back({"convolution-inverse", worst, 1e-12, worst < 1e-12});
  }
  if (!x.empty()) {
    const auto y = forward_transform(x, order, x.size());
    const auto back = inverse_transform(y, order, x.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(back[k] - x[k]));
    checks.push_back({"round-trip", worst, 1e-12, worst < 1e-12});

    const auto abar = beta_dual_transform(x, order);
    double lhs = 0.0, rhs = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      lhs += x[k] * x[k];
      rhs += abar[k] * y[k];
      scale += std::abs(abar[k] * y[k]);
    }
    const double residual = scale == 0.0 ? std::abs(lhs - rhs) : std::abs(lhs - rhs) / scale;
    checks.push_back({"duality", residual, 1e-12, residual < 1e-12});

    const double fused = dual_norm(x, order, p);
    const double direct = lq_norm(abar.entries(), p.q());
    checks.push_back({"dual-norm", std::abs(fused - direct), 0.0, fused == direct});
  }
  if (!config.matrix.empty()) {
    const auto source = read_matrix(config);
    const auto hat = hat_matrix(source, order, config.rows, config.cols);
    if (hat.exactness() == Exactness::exact) {
      std::vector<double> xs(config.cols, 0.0);
      for (std::size_t k = 0; k < std::min(config.cols, x.size()); ++k) xs[k] = x[k];
      const FiniteSequence window_x(xs);
      const auto ax = apply(source, window_x, config.rows);
      const auto ay = apply(hat, forward_transform(window_x, order, config.cols));
      double worst = 0.0;
      for (std::size_t i = 0; i < ax.size(); ++i) {
        worst = std::max(worst, std::abs(ax[i] - ay[i]) / std::max(1.0, std::abs(ax[i])));
      }
      checks.push_back({"master-consistency", worst, 1e-11, worst < 1e-11});
    }
    EvaluationOptions options;
    options.row_count = config.rows;
    options.column_bound = config.cols;
    options.grid = {0, config.rows, 1};
    options.stabilization_window = 1;
    const double s0 = mnc_c0(hat, p, options).grid.values.front();
    const double norm = opnorm_to_linf(hat, p);
    checks.push_back({"opnorm-agreement", std::abs(s0 - norm), 1e-12, std::abs(s0 - norm) <= 1e-12});
  }

  all_passed = true;
  Json json;
  Json items = Json::array();
  std::string table;
  for (const auto& c : checks) {
    Json item;
    item["name"] = c.name;
    item["value"] = c.value;
    item["tolerance"] = c.tolerance;
    item["passed"] = c.passed;
    items.push_back(std::move(item));
    all_passed = all_passed && c.passed;
    table += (c.passed ? "PASS " : "FAIL ") + c.name + "  " + format_number(c.value) + "\n";
  }
  json["order"] = order.to_string();
  json["p"] = p.to_string();
  json["checks"] = std::move(items);
  json["passed"] = all_passed;
  return {std::move(json), std::nullopt, table};
}

void emit(const Output& output, const Config& config) {
  std::string text;
  if (config.format == "json") {
    text = dump(output.json);
  } else if (config.format == "csv") {
    if (!output.csv) throw UsageError("--format csv is not available for this command");
    text = *output.csv;
  } else if (config.format == "table") {
    if (!output.table) throw UsageError("--format table is not available for this command");
    text = *output.table;
  } else {
    throw UsageError("--format must be json, csv or table, got '" + config.format + "'");
  }
  if (config.out.empty() || config.out == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw UsageError("--out: cannot open '" + config.out + "'");
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  Config config;
  CLI::App app{"Fractional difference sequence spaces: coefficients, transforms, norms and compactness criteria"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::map<std::string, std::function<Output()>> commands;
  bool verified = true;

  auto add = [&](const std::string& name, const std::string& help, std::function<Output()> run) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--format", config.format, "json, csv or table")->capture_default_str();
    sub->add_option("--out", config.out, "Output file (default stdout)");
    commands[name] = std::move(run);
    return sub;
  };
  auto order_flag = [&](CLI::App* sub) {
    sub->add_option("--order", config.order, "Order as p/q, integer or decimal")->required();
  };
  auto p_flag = [&](CLI::App* sub) {
    sub->add_option("--p", config.p, "Exponent p >= 1 or inf")->capture_default_str();
  };
  auto in_flag = [&](CLI::App* sub) {
    sub->add_option("--in", config.in, "Sequence file, JSON {\"entries\": [...]} or CSV; - for stdin")->required();
  };
  auto window_flags = [&](CLI::App* sub) {
    sub->add_option("--matrix", config.matrix, "Matrix JSON file; - for stdin")->required();
    sub->add_option("--rows", config.rows, "Row count of the window")->capture_default_str();
    sub->add_option("--cols", config.cols, "Column bound of the window")->capture_default_str();
  };
  auto criterion_flags = [&](CLI::App* sub, const char* grid_flag) {
    window_flags(sub);
    sub->add_option(grid_flag, config.grid, "Grid start:stop[:step], stop exclusive")->capture_default_str();
    sub->add_option("--tolerance", config.tolerance, "Stabilization and verdict tolerance")->capture_default_str();
    sub->add_option("--window", config.window, "Stabilization window")->capture_default_str();
  };
  auto method_flag = [&](CLI::App* sub) {
    sub->add_option("--method", config.method, "exhaustive or greedy")->capture_default_str();
  };

  auto* coeffs = add("coeffs", "Coefficient prefix c_0 .. c_{n-1}", [&] { return run_coeffs(config); });
  order_flag(coeffs);
  coeffs->add_option("--n", config.n, "Number of coefficients")->capture_default_str();
  coeffs->add_option("--mode", config.mode, "exact or floating (default exact for exact orders)");

  for (const auto& [name, help, run] :
       std::vector<std::tuple<std::string, std::string, std::function<Output()>>>{
           {"transform", "Forward fractional difference", [&] { return run_transform(config); }},
           {"inverse", "Inverse fractional difference", [&] { return run_inverse(config); }},
           {"betadual", "Beta-dual coefficient transform", [&] { return run_betadual(config); }}}) {
    auto* sub = add(name, help, run);
    order_flag(sub);
    in_flag(sub);
    sub->add_option("--mode", config.mode, "exact or floating (default floating)");
    if (name != "betadual") sub->add_option("--length", config.length, "Output length (default input length)");
  }

  auto* norm = add("norm", "Space norm of a sequence", [&] { return run_norm(config); });
  order_flag(norm);
  p_flag(norm);
  in_flag(norm);
  norm->add_option("--tolerance", config.norm_tolerance, "Relative tail tolerance")->capture_default_str();
  norm->add_option("--max-terms", config.max_terms, "Truncation limit")->capture_default_str();

  auto* dualnorm = add("dualnorm", "Dual norm of a coefficient sequence", [&] { return run_dualnorm(config); });
  order_flag(dualnorm);
  p_flag(dualnorm);
  in_flag(dualnorm);

  auto* hat = add("hat", "Transformed matrix window", [&] { return run_hat(config); });
  order_flag(hat);
  window_flags(hat);

  auto* linf = add("opnorm-linf", "Operator norm into c0, c or l_inf", [&] { return run_opnorm_linf(config); });
  order_flag(linf);
  p_flag(linf);
  window_flags(linf);

  auto* l1 = add("opnorm-l1", "Operator norm into l1 by subset supremum", [&] { return run_opnorm_l1(config); });
  order_flag(l1);
  p_flag(l1);
  window_flags(l1);
  method_flag(l1);

  auto with_p = [&](auto fn) {
    return [&, fn] {
      const auto p = exponent_of(config);
      return run_report(config, [&](const MatrixSource& a, const FractionalOrder& o, const EvaluationOptions& e) {
        return fn(a, o, p, e);
      });
    };
  };
  using Fn = CompactnessReport (*)(const MatrixSource&, const FractionalOrder&, const Exponent&,
                                   const EvaluationOptions&);
  for (const auto& [name, help, fn] : std::vector<std::tuple<std::string, std::string, Fn>>{
           {"mnc-c0", "Compactness into c0", mnc_c0},
           {"mnc-c", "Compactness into c", mnc_c},
           {"mnc-l1", "Compactness into l1", mnc_l1},
           {"crit-linf", "Compactness into l_inf, 1 < p < inf", criterion_linf_target}}) {
    auto* sub = add(name, help, with_p(fn));
    order_flag(sub);
    p_flag(sub);
    criterion_flags(sub, "--r-grid");
    method_flag(sub);
  }

  auto* sargent = add("sargent", "Compactness from l1 into l_inf", [&] {
    return run_report(config, [](const MatrixSource& a, const FractionalOrder& o, const EvaluationOptions& e) {
      return sargent_criterion(a, o, e);
    });
  });
  order_flag(sargent);
  criterion_flags(sargent, "--m-grid");
  sargent->add_option("--pair-columns", config.sargent_columns, "Columns entering the pair sup (0 = --cols)")
      ->capture_default_str();

  auto* linfdom = add("crit-linfdom", "Compactness from l_inf into l_inf", [&] {
    return run_report(config, [](const MatrixSource& a, const FractionalOrder& o, const EvaluationOptions& e) {
      return criterion_linf_domain(a, o, e);
    });
  });
  order_flag(linfdom);
  criterion_flags(linfdom, "--r-grid");

  auto* verify = add("verify", "Cross-module consistency checks on the given inputs",
                     [&] { return run_verify(config, verified); });
  order_flag(verify);
  p_flag(verify);
  in_flag(verify);
  verify->add_option("--matrix", config.matrix, "Optional matrix JSON file");
  verify->add_option("--rows", config.rows, "Row count of the window")->capture_default_str();
  verify->add_option("--cols", config.cols, "Column bound of the window")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    emit(commands.at(name)(), config);
  } catch (const CostGuardRefusal& e) {
    std::cerr << "fracseq " << name << ": cost guard: " << e.what()
              << " (raise FRACSEQ_MAX_SUBSET_ROWS or use --method greedy)\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "fracseq " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "fracseq " << name << ": " << e.what() << "\n";
    return 2;
  }
  return verified ? 0 : 1;
}
