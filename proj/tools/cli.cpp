#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>

#include <thetadiv/chow.hpp>
#include <thetadiv/errors.hpp>
#include <thetadiv/io.hpp>
#include <thetadiv/kempf.hpp>
#include <thetadiv/parallel.hpp>
#include <thetadiv/ppav.hpp>

namespace thetadiv::cli {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ArgumentError("not a number: '" + s + "'");
  return value;
}

// Parameter access ---------------------------------------------------------

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& values) : values_(values) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string str(const std::string& key, const std::string& fallback = {}) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  std::string required(const std::string& key) const {
    if (!has(key)) throw ArgumentError("missing required option --" + key);
    return str(key);
  }

  long long integer(const std::string& key, std::optional<long long> fallback = std::nullopt) const {
    if (!has(key)) {
      if (!fallback) throw ArgumentError("missing required option --" + key);
      return *fallback;
    }
    const std::string s = str(key);
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(s, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ArgumentError("--" + key + " expects an integer, got '" + s + "'");
    return value;
  }

  bool flag(const std::string& key) const { return has(key) && str(key) != "false"; }

 private:
  const std::map<std::string, std::string>& values_;
};

int checked_int(long long value, long long lo, long long hi, const std::string& what) {
  if (value < lo || value > hi) {
    throw ArgumentError(what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(value);
}

// Geometry from options ----------------------------------------------------

struct Geometry {
  SiegelMatrix omega;
  std::vector<Complex> product_taus;
};

Geometry geometry_from(const Params& p) {
  const int chosen = p.has("omega") + p.has("product") + p.has("tau") + p.has("seed");
  if (chosen != 1) throw ArgumentError("give exactly one of --omega, --product, --tau, --seed");
  if (p.has("omega")) return {io::siegel_from_json(io::read_file(p.str("omega"))), {}};
  if (p.has("product")) {
    auto taus = parse_complex_list(p.str("product"));
    return {product_ppav(taus), taus};
  }
  if (p.has("tau")) {
    const Complex tau = parse_complex(p.str("tau"));
    return {product_ppav(std::span<const Complex>(&tau, 1)), {tau}};
  }
  const int g = checked_int(p.integer("g"), 1, 3, "--g");
  return {random_siegel(g, static_cast<std::uint64_t>(p.integer("seed"))), {}};
}

// "0" | "equality" | "p=P;q=Q" | comma-separated complex coordinates
AbelianPoint point_from_spec(const std::string& spec, int g) {
  const std::string s = trim(spec);
  if (s == "0") return AbelianPoint::origin(g);
  if (s == "equality") {
    RationalVector half(static_cast<std::size_t>(g), Rational(1, 2));
    return AbelianPoint::rational(half, half);
  }
  if (s.rfind("p=", 0) == 0) {
    const auto parts = split(s, ';');
    if (parts.size() != 2 || parts[1].rfind("q=", 0) != 0) throw ArgumentError("expected p=...;q=..., got '" + s + "'");
    auto pv = parse_rational_vector(parts[0].substr(2));
    auto qv = parse_rational_vector(parts[1].substr(2));
    if (static_cast<int>(pv.size()) != g || static_cast<int>(qv.size()) != g) {
      throw ArgumentError("point '" + s + "' does not have " + std::to_string(g) + " coordinates");
    }
    return AbelianPoint::rational(std::move(pv), std::move(qv));
  }
  const auto coords = parse_complex_list(s);
  if (static_cast<int>(coords.size()) != g) {
    throw ArgumentError("point '" + s + "' does not have " + std::to_string(g) + " coordinates");
  }
  ComplexVector z(g);
  for (int i = 0; i < g; ++i) z(i) = coords[static_cast<std::size_t>(i)];
  return AbelianPoint::complex(z);
}

AbelianPoint point_from_json_value(const json& value, int g) {
  if (value.is_string()) return point_from_spec(value.get<std::string>(), g);
  return io::point_from_json(value.dump());
}

// Coordinates of a point on the i-th factor of a product ppav.
AbelianPoint factor_point(const AbelianPoint& x, int i) {
  AbelianPoint out = AbelianPoint::rational({x.p[static_cast<std::size_t>(i)]}, {x.q[static_cast<std::size_t>(i)]});
  out.extra(0) = x.extra(i);
  return out;
}

void write_artifacts(const Params& p, const std::string& json_text, const std::string& csv_text) {
  if (p.has("json")) io::write_file_atomically(p.str("json"), json_text + "\n");
  if (p.has("csv")) io::write_file_atomically(p.str("csv"), csv_text);
}

// Commands -----------------------------------------------------------------

int count_torsion(const Params& p, const Config& config, std::ostream& out) {
  const Geometry geo = geometry_from(p);
  const int g = geo.omega.genus();
  const int n = checked_int(p.integer("n"), 1, 1000, "--n");
  const AbelianPoint x = point_from_spec(p.str("x", "0"), g);
  const CountReport report = count_torsion_on_theta(geo.omega, n, x, config);
  const std::string text = io::count_report_to_json(report);
  write_artifacts(p, text, io::count_report_to_csv(report));
  out << text << '\n';
  if (!report.indeterminate.empty()) return kAmbiguity;
  return report.count <= report.bound ? kOk : kMismatch;
}

int verify_bound(const Params& p, const Config& config, std::ostream& out) {
  const Geometry geo = geometry_from(p);
  const int g = geo.omega.genus();
  const int n = checked_int(p.integer("n"), 1, 1000, "--n");
  const bool equality = p.flag("equality");
  if (equality && geo.product_taus.empty()) throw ArgumentError("--equality needs --product or --tau");
  const AbelianPoint x = equality ? equality_translate(geo.product_taus, n) : point_from_spec(p.str("x", "0"), g);
  const CountReport report = count_torsion_on_theta(geo.omega, n, x, config);

  json doc = json::parse(io::count_report_to_json(report));
  bool pass = report.count <= report.bound;
  if (!geo.product_taus.empty()) {
    // inclusion-exclusion over the elliptic factors
    mpz_class missing = 1;
    for (int i = 0; i < g; ++i) {
      const SiegelMatrix factor = SiegelMatrix::from_tau(geo.product_taus[static_cast<std::size_t>(i)]);
      const CountReport part = count_torsion_on_theta(factor, n, factor_point(x, i), config);
      if (!part.indeterminate.empty()) return out << doc.dump(2) << '\n', kAmbiguity;
      missing *= n * n - part.count;
    }
    const mpz_class oracle = power(mpz_class(n), static_cast<unsigned>(2 * g)) - missing;
    doc["oracle"] = oracle.get_si();
    pass = pass && oracle == report.count;
  }
  if (equality) pass = pass && report.count == report.bound;
  doc["equality"] = equality;
  doc["pass"] = pass;
  const std::string text = doc.dump(2);
  write_artifacts(p, text, io::count_report_to_csv(report));
  out << text << '\n';
  if (!report.indeterminate.empty()) return kAmbiguity;
  return pass ? kOk : kMismatch;
}

struct CorankJob {
  int a = 1;
  int b = 1;
  AbelianPoint x;
  AbelianPoint y;
  SiegelMatrix omega;
};

CorankJob corank_job_from_json(const json& j) {
  std::map<std::string, std::string> fields;
  for (const char* key : {"tau", "product", "seed", "g"}) {
    if (j.contains(key)) fields[key] = j[key].is_string() ? j[key].get<std::string>() : j[key].dump();
  }
  std::optional<SiegelMatrix> omega;
  if (j.contains("omega")) {
    omega = io::siegel_from_json(j["omega"].dump());
  } else {
    omega = geometry_from(Params(fields)).omega;
  }
  const int g = omega->genus();
  CorankJob job{j.at("a").get<int>(), j.at("b").get<int>(), AbelianPoint::origin(g), AbelianPoint::origin(g), *omega};
  if (j.contains("x")) job.x = point_from_json_value(j["x"], g);
  if (j.contains("y")) job.y = point_from_json_value(j["y"], g);
  return job;
}

int kempf_corank(const Params& p, const Config& config, std::ostream& out) {
  std::vector<CorankJob> jobs;
  if (p.has("batch")) {
    json batch;
    try {
      batch = json::parse(io::read_file(p.str("batch")));
      if (!batch.is_array()) throw ArgumentError("batch file must hold a JSON array of jobs");
      for (const auto& entry : batch) jobs.push_back(corank_job_from_json(entry));
    } catch (const json::exception& e) {
      throw ArgumentError(std::string("invalid batch file: ") + e.what());
    }
  } else {
    const Geometry geo = geometry_from(p);
    const int g = geo.omega.genus();
    jobs.push_back({checked_int(p.integer("a"), 1, 1000, "--a"), checked_int(p.integer("b"), 1, 1000, "--b"),
                    point_from_spec(p.str("x", "0"), g), point_from_spec(p.str("y", "0"), g), geo.omega});
  }

  std::vector<CorankReport> reports;
  for (const auto& job : jobs) reports.push_back(corank(job.a, job.b, job.x, job.y, job.omega, config));

  std::string text;
  std::string csv = io::corank_csv_header();
  bool all_match = true;
  for (const auto& r : reports) {
    csv += io::corank_csv_row(r);
    all_match = all_match && r.match && r.numerical_rank >= r.rank_bound;
  }
  if (p.has("batch")) {
    json array = json::array();
    for (const auto& r : reports) array.push_back(json::parse(io::corank_report_to_json(r)));
    text = array.dump(2);
  } else {
    text = io::corank_report_to_json(reports.front());
  }
  write_artifacts(p, text, csv);
  out << text << '\n';
  return all_match ? kOk : kMismatch;
}

int scan_singular(const Params& p, const Config& config, std::ostream& out) {
  const int a = checked_int(p.integer("a"), 1, 1000, "--a");
  const int b = checked_int(p.integer("b"), 1, 1000, "--b");
  const Complex tau = parse_complex(p.str("tau", "i"));
  const int grid = checked_int(p.integer("grid", 6), 1, 64, "--grid");
  const AbelianPoint x = point_from_spec(p.str("x", "0"), 1);
  const ScanResult scan = singular_locus_scan(a, b, x, tau, grid, config);

  json points = json::array();
  std::int64_t positive = 0;
  std::int64_t predicted = 0;
  for (const auto& point : scan.points) {
    points.push_back({{"y", json::parse(io::point_to_json(point.y))},
                      {"corank", point.corank},
                      {"predicted", point.predicted},
                      {"divisor_predicted", point.divisor_predicted}});
    positive += point.corank > 0;
    predicted += point.predicted;
  }
  const json doc = {{"a", a},          {"b", b},
                    {"grid", grid},    {"x", json::parse(io::point_to_json(x))},
                    {"points", points}, {"positive_corank", positive},
                    {"predicted", predicted}, {"consistent", scan.consistent}};
  const std::string text = doc.dump(2);
  write_artifacts(p, text, io::scan_to_csv(scan));
  out << text << '\n';
  return scan.consistent ? kOk : kMismatch;
}

int chow_report_command(const Params& p, std::ostream& out) {
  ReportRange range;
  range.amax = checked_int(p.integer("amax", range.amax), 1, 50, "--amax");
  range.gmax = checked_int(p.integer("gmax", range.gmax), 1, 50, "--gmax");
  range.nmax = checked_int(p.integer("nmax", range.nmax), 2, 50, "--nmax");
  range.arithmetic_max = checked_int(p.integer("arith-max", range.arithmetic_max), 2, 100, "--arith-max");
  range.random_pairs = checked_int(p.integer("pairs", range.random_pairs), 0, 1000000, "--pairs");
  range.seed = static_cast<std::uint64_t>(p.integer("chow-seed", static_cast<long long>(range.seed)));
  const auto rows = chow_report(range);
  const std::string text = io::identity_table_to_json(rows);
  write_artifacts(p, text, io::identity_table_to_csv(rows));
  out << text << '\n';
  for (const auto& row : rows) {
    if (!row.pass) return kMismatch;
  }
  return kOk;
}

int sweep(const Params& p, const Config& config, std::ostream& out) {
  const int g = checked_int(p.integer("g", 2), 1, 3, "--g");
  const int seeds = checked_int(p.integer("seeds", 20), 1, 100000, "--seeds");
  const long long first = p.integer("seed-start", 1);
  std::vector<int> orders;
  for (const auto& piece : split(p.str("n", "2"), ',')) {
    orders.push_back(checked_int(Params({{"n", piece}}).integer("n"), 1, 1000, "--n"));
  }
  const AbelianPoint x = point_from_spec(p.str("x", "0"), g);

  struct Row {
    std::uint64_t seed;
    int n;
    CountReport report;
  };
  std::vector<Row> rows;
  for (int s = 0; s < seeds; ++s) {
    for (int n : orders) rows.push_back({static_cast<std::uint64_t>(first + s), n, {}});
  }
  Config serial = config;
  serial.workers = 1;
  parallel_for(rows.size(), config.workers, [&](std::size_t i) {
    rows[i].report = count_torsion_on_theta(random_siegel(g, rows[i].seed), rows[i].n, x, serial);
  });

  json array = json::array();
  std::ostringstream csv;
  csv << "seed,g,n,count,bound,indeterminate,ok\n";
  bool ok = true;
  bool ambiguous = false;
  for (const auto& row : rows) {
    const auto& r = row.report;
    const bool within = r.count <= r.bound;
    ok = ok && within;
    ambiguous = ambiguous || !r.indeterminate.empty();
    array.push_back({{"seed", row.seed},
                     {"g", g},
                     {"n", row.n},
                     {"count", r.count},
                     {"bound", r.bound},
                     {"indeterminate", r.indeterminate.size()},
                     {"ok", within}});
    csv << row.seed << ',' << g << ',' << row.n << ',' << r.count << ',' << r.bound << ','
        << r.indeterminate.size() << ',' << (within ? 1 : 0) << '\n';
  }
  const std::string text = array.dump(2);
  write_artifacts(p, text, csv.str());
  out << text << '\n';
  if (ambiguous) return kAmbiguity;
  return ok ? kOk : kMismatch;
}

const std::map<std::string, std::function<int(const Params&, const Config&, std::ostream&)>>& commands() {
  static const std::map<std::string, std::function<int(const Params&, const Config&, std::ostream&)>> table = {
      {"count-torsion", count_torsion},
      {"verify-bound", verify_bound},
      {"kempf-corank", kempf_corank},
      {"scan-singular", scan_singular},
      {"chow-report", [](const Params& p, const Config&, std::ostream& out) { return chow_report_command(p, out); }},
      {"sweep", sweep},
  };
  return table;
}

// Option names per command; every value is kept as a string in JobConfig.
const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& command_options() {
  static const std::vector<std::pair<std::string, std::string>> geometry = {
      {"omega", "SiegelMatrix JSON file"},
      {"product", "comma-separated taus of a product of elliptic curves"},
      {"tau", "period of an elliptic curve"},
      {"g", "dimension of a random period matrix (with --seed)"},
      {"seed", "seed of a random period matrix"},
  };
  static const std::pair<std::string, std::string> json_out{"json", "write the JSON document to this file"};
  static const std::pair<std::string, std::string> csv_out{"csv", "write the CSV table to this file"};
  auto with = [&](std::vector<std::pair<std::string, std::string>> extra, bool geo) {
    if (geo) extra.insert(extra.begin(), geometry.begin(), geometry.end());
    extra.push_back(json_out);
    extra.push_back(csv_out);
    return extra;
  };
  static const std::map<std::string, std::vector<std::pair<std::string, std::string>>> table = {
      {"count-torsion", with({{"n", "torsion order"}, {"x", "translate: 0, equality, p=..;q=.., or complex list"}}, true)},
      {"verify-bound", with({{"n", "torsion order"}, {"x", "translate (ignored with --equality)"}}, true)},
      {"kempf-corank", with({{"a", "first index"},
                             {"b", "second index"},
                             {"x", "point x"},
                             {"y", "point y"},
                             {"batch", "JSON array of jobs {a, b, x, y, tau|omega|product|g+seed}"}},
                            true)},
      {"scan-singular",
       with({{"a", "first index"}, {"b", "second index"}, {"tau", "elliptic period"}, {"grid", "grid size"},
             {"x", "point x"}},
            false)},
      {"chow-report", with({{"amax", "largest a and b"},
                            {"gmax", "largest g"},
                            {"nmax", "largest n of the n-indexed identities"},
                            {"arith-max", "range of the divisibility and Seshadri arithmetic"},
                            {"pairs", "random slope pairs"},
                            {"chow-seed", "seed of the random slope pairs"}},
                           false)},
      {"sweep", with({{"g", "dimension"},
                      {"seeds", "number of random period matrices"},
                      {"seed-start", "first seed"},
                      {"n", "comma-separated torsion orders"},
                      {"x", "translate"}},
                     false)},
  };
  return table;
}

unsigned workers_from_environment() {
  const char* value = std::getenv("THETADIV_WORKERS");
  if (!value || !*value) return 1;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (*end != '\0' || parsed < 1 || parsed > 1024) throw ArgumentError("THETADIV_WORKERS must be an integer in [1, 1024]");
  return static_cast<unsigned>(parsed);
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw ArgumentError("empty complex literal");
  if (s.front() == '(') {
    const auto close = s.find(')');
    if (close == std::string::npos) throw ArgumentError("unbalanced parentheses in '" + s + "'");
    const Complex inner = parse_complex(s.substr(1, close - 1));
    const std::string rest = s.substr(close + 1);
    if (rest.empty()) return inner;
    if (rest.front() != '/') throw ArgumentError("malformed complex literal '" + s + "'");
    const double den = parse_real(rest.substr(1));
    if (den == 0.0) throw ArgumentError("division by zero in '" + s + "'");
    return inner / den;
  }
  // split into at most a real and an imaginary term
  std::size_t cut = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') cut = i;
  }
  auto term = [&](const std::string& t) -> Complex {
    if (t.empty()) throw ArgumentError("malformed complex literal '" + s + "'");
    if (t.back() != 'i') return {parse_real(t), 0.0};
    std::string coeff = t.substr(0, t.size() - 1);
    if (coeff.empty() || coeff == "+") return {0.0, 1.0};
    if (coeff == "-") return {0.0, -1.0};
    return {0.0, parse_real(coeff)};
  };
  if (cut == std::string::npos) return term(s);
  const Complex lhs = term(s.substr(0, cut));
  const Complex rhs = term(s.substr(cut));
  if (lhs.imag() != 0.0 || rhs.real() != 0.0) throw ArgumentError("expected re+im i, got '" + s + "'");
  return lhs + rhs;
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  for (const auto& piece : split(text, ',')) out.push_back(parse_complex(piece));
  return out;
}

std::string job_to_json(const JobConfig& job) {
  return json{{"command", job.command},
              {"parameters", job.parameters},
              {"config", json::parse(io::config_to_json(job.config))}}
      .dump(2);
}

JobConfig job_from_json(std::string_view text) {
  JobConfig job;
  try {
    const json j = json::parse(text);
    job.command = j.at("command").get<std::string>();
    if (j.contains("parameters")) {
      for (const auto& [key, value] : j.at("parameters").items()) {
        job.parameters[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    if (j.contains("config")) job.config = io::config_from_json(j.at("config").dump());
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("invalid job file: ") + e.what());
  }
  return job;
}

int run(const JobConfig& job, std::ostream& out, std::ostream& err) {
  try {
    validate(job.config);
    const auto it = commands().find(job.command);
    if (it == commands().end()) throw ArgumentError("unknown command '" + job.command + "'");
    const auto& known = command_options().at(job.command);
    for (const auto& [key, value] : job.parameters) {
      const bool listed = std::any_of(known.begin(), known.end(), [&](const auto& o) { return o.first == key; });
      const bool flag = job.command == "verify-bound" && key == "equality";
      if (!listed && !flag) throw ArgumentError("option --" + key + " does not apply to " + job.command);
    }
    std::ostringstream buffer;
    const int code = it->second(Params(job.parameters), job.config, buffer);
    out << buffer.str();
    return code;
  } catch (const AmbiguityError& e) {
    err << "ambiguous: " << e.what() << '\n';
    return kAmbiguity;
  } catch (const CalibrationError& e) {
    err << "calibration failed: " << e.what() << '\n';
    return kAmbiguity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torsion points on theta divisors: counts, Kempf coranks and Chow-class identities", "thetadiv"};
  app.require_subcommand(0, 1);

  std::string job_file;
  std::string config_file;
  bool dump_job = false;
  std::map<std::string, std::string> overrides;
  app.add_option("--job", job_file, "run a JobConfig JSON file");
  app.add_flag("--dump-job", dump_job, "print the JobConfig instead of running it");
  app.add_option("--config", config_file, "Config JSON file (tolerances, seeds, caps)");
  const std::vector<std::pair<std::string, std::string>> tolerance_options = {
      {"theta-tol", "truncation tolerance"},     {"rel-tol", "vanishing threshold"},
      {"rank-threshold", "relative rank cutoff"}, {"sample-factor", "samples per target dimension"},
      {"sample-seed", "seed of matrix samples"},  {"reference-seed", "seed of the reference sample"},
      {"enumeration-cap", "maximal n^{2g}"},
  };
  for (const auto& [name, help] : tolerance_options) {
    app.add_option_function<std::string>(
        "--" + name, [&overrides, key = name](const std::string& v) { overrides[key] = v; }, help);
  }

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> descriptions = {
      {"count-torsion", "count n-torsion points on a translated theta divisor"},
      {"verify-bound", "check a count against n^{2g} - (n^2-1)^g"},
      {"kempf-corank", "corank of the multiplication map W_a x W_b -> W_{a+b}"},
      {"scan-singular", "coranks over a grid of translates y on an elliptic curve"},
      {"chow-report", "exact Chow-class identity table"},
      {"sweep", "torsion counts over many seeded period matrices"},
  };
  for (const auto& [command, options] : command_options()) {
    CLI::App* sub = app.add_subcommand(command, descriptions.at(command));
    sub->fallthrough();
    subs[command] = sub;
    for (const auto& [name, help] : options) {
      sub->add_option_function<std::string>(
          "--" + name, [&values, cmd = command, key = name](const std::string& v) { values[cmd][key] = v; }, help);
    }
  }
  subs["verify-bound"]->add_flag_callback(
      "--equality", [&values] { values["verify-bound"]["equality"] = "true"; },
      "use the equality translate of the product");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  JobConfig job;
  try {
    if (!job_file.empty()) {
      job = job_from_json(io::read_file(job_file));
    } else {
      const auto chosen = app.get_subcommands();
      if (chosen.empty()) {
        err << "error: a subcommand is required (try --help)\n";
        return kConfigError;
      }
      job.command = chosen.front()->get_name();
      job.parameters = values[job.command];
    }
    if (!config_file.empty()) job.config = io::config_from_json(io::read_file(config_file));
    const Params o(overrides);
    if (o.has("theta-tol")) job.config.theta_tol = parse_real(o.str("theta-tol"));
    if (o.has("rel-tol")) job.config.rel_tol = parse_real(o.str("rel-tol"));
    if (o.has("rank-threshold")) job.config.rank_threshold = parse_real(o.str("rank-threshold"));
    if (o.has("sample-factor")) job.config.sample_factor = static_cast<int>(o.integer("sample-factor"));
    if (o.has("sample-seed")) job.config.sample_seed = static_cast<std::uint64_t>(o.integer("sample-seed"));
    if (o.has("reference-seed")) job.config.reference_seed = static_cast<std::uint64_t>(o.integer("reference-seed"));
    if (o.has("enumeration-cap")) job.config.enumeration_cap = static_cast<std::size_t>(o.integer("enumeration-cap"));
    job.config.workers = workers_from_environment();
    validate(job.config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  if (dump_job) {
    out << job_to_json(job) << '\n';
    return kOk;
  }
  return run(job, out, err);
}

}  // namespace thetadiv::cli
