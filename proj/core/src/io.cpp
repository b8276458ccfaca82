#include "thetadiv/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "thetadiv/errors.hpp"

namespace thetadiv::io {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from(const json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

json point_json(const AbelianPoint& point) {
  json p = json::array(), q = json::array(), extra = json::array();
  for (const auto& r : point.p) p.push_back(r.get_str());
  for (const auto& r : point.q) q.push_back(r.get_str());
  for (Eigen::Index i = 0; i < point.extra.size(); ++i) extra.push_back(complex_json(point.extra(i)));
  return {{"p", p}, {"q", q}, {"extra", extra}};
}

AbelianPoint point_from(const json& j) {
  RationalVector p, q;
  for (const auto& r : j.at("p")) p.push_back(parse_rational(r.get<std::string>()));
  for (const auto& r : j.at("q")) q.push_back(parse_rational(r.get<std::string>()));
  AbelianPoint out = AbelianPoint::rational(std::move(p), std::move(q));
  if (j.contains("extra")) {
    const auto& extra = j.at("extra");
    if (static_cast<int>(extra.size()) != out.genus()) throw ArgumentError("extra has wrong dimension");
    for (std::size_t i = 0; i < extra.size(); ++i) out.extra(static_cast<Eigen::Index>(i)) = complex_from(extra[i]);
  }
  return out;
}

json index_json(const TorsionIndex& idx) { return {{"n", idx.n}, {"p", idx.p}, {"q", idx.q}}; }

std::string joined(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string siegel_to_json(const SiegelMatrix& omega) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < omega.omega().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < omega.omega().cols(); ++j) row.push_back(complex_json(omega.omega()(i, j)));
    rows.push_back(row);
  }
  return json{{"g", omega.genus()}, {"omega", rows}}.dump(2);
}

SiegelMatrix siegel_from_json(std::string_view text) {
  const json j = parse(text);
  try {
    const int g = j.at("g").get<int>();
    const auto& rows = j.at("omega");
    if (g < 1 || static_cast<int>(rows.size()) != g) throw ArgumentError("omega must have g rows");
    ComplexMatrix omega(g, g);
    for (int r = 0; r < g; ++r) {
      if (static_cast<int>(rows[r].size()) != g) throw ArgumentError("omega must have g columns");
      for (int c = 0; c < g; ++c) omega(r, c) = complex_from(rows[r][c]);
    }
    return SiegelMatrix(omega);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("invalid SiegelMatrix JSON: ") + e.what());
  }
}

std::string config_to_json(const Config& c) {
  return json{{"theta_tol", c.theta_tol},
              {"rel_tol", c.rel_tol},
              {"reference_samples", c.reference_samples},
              {"reference_seed", c.reference_seed},
              {"enumeration_cap", c.enumeration_cap},
              {"target_dim_cap", c.target_dim_cap},
              {"rank_threshold", c.rank_threshold},
              {"ambiguity_factor", c.ambiguity_factor},
              {"sample_factor", c.sample_factor},
              {"sample_seed", c.sample_seed},
              {"workers", c.workers}}
      .dump(2);
}

Config config_from_json(std::string_view text) {
  const json j = parse(text);
  Config c;
  try {
    c.theta_tol = j.value("theta_tol", c.theta_tol);
    c.rel_tol = j.value("rel_tol", c.rel_tol);
    c.reference_samples = j.value("reference_samples", c.reference_samples);
    c.reference_seed = j.value("reference_seed", c.reference_seed);
    c.enumeration_cap = j.value("enumeration_cap", c.enumeration_cap);
    c.target_dim_cap = j.value("target_dim_cap", c.target_dim_cap);
    c.rank_threshold = j.value("rank_threshold", c.rank_threshold);
    c.ambiguity_factor = j.value("ambiguity_factor", c.ambiguity_factor);
    c.sample_factor = j.value("sample_factor", c.sample_factor);
    c.sample_seed = j.value("sample_seed", c.sample_seed);
    c.workers = j.value("workers", c.workers);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("invalid Config JSON: ") + e.what());
  }
  validate(c);
  return c;
}

std::string point_to_json(const AbelianPoint& point) { return point_json(point).dump(); }

AbelianPoint point_from_json(std::string_view text) {
  try {
    return point_from(parse(text));
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("invalid AbelianPoint JSON: ") + e.what());
  }
}

std::string count_report_to_json(const CountReport& r) {
  json hits = json::array(), indeterminate = json::array();
  for (const auto& h : r.hits) hits.push_back(index_json(h));
  for (const auto& h : r.indeterminate) indeterminate.push_back(index_json(h));
  return json{{"n", r.n},
              {"g", r.g},
              {"x", point_json(r.x)},
              {"count", r.count},
              {"bound", r.bound},
              {"hits", hits},
              {"indeterminate", indeterminate},
              {"reference", r.reference},
              {"threshold", r.threshold},
              {"margins", r.margins}}
      .dump(2);
}

std::string count_report_to_csv(const CountReport& r) {
  std::ostringstream out;
  out << "p,q,magnitude,hit\n";
  const auto indices = enumerate_torsion(r.n, r.g, r.margins.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out << joined(indices[i].p) << ',' << joined(indices[i].q) << ',' << format_double(r.margins[i]) << ','
        << (r.margins[i] < r.threshold ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string corank_report_to_json(const CorankReport& r) {
  return json{{"a", r.a},
              {"b", r.b},
              {"n", r.n},
              {"g", r.g},
              {"x", point_json(r.x)},
              {"y", point_json(r.y)},
              {"source_dim", r.source_dim},
              {"target_dim", r.target_dim},
              {"singular_values", r.singular_values},
              {"numerical_rank", r.numerical_rank},
              {"corank", r.corank},
              {"threshold", r.threshold},
              {"min_accepted_sigma", r.min_accepted_sigma},
              {"max_rejected_sigma", r.max_rejected_sigma},
              {"torsion_count", r.torsion_count},
              {"match", r.match},
              {"rank_bound", r.rank_bound},
              {"equality_case", r.equality_case},
              {"samples", r.samples},
              {"seed", r.seed},
              {"twist_side", r.twist_side},
              {"twist", complex_json(r.twist)}}
      .dump(2);
}

std::string corank_csv_header() {
  return "a,b,g,source_dim,target_dim,numerical_rank,corank,torsion_count,match,min_accepted_sigma,"
         "max_rejected_sigma,twist_side\n";
}

std::string corank_csv_row(const CorankReport& r) {
  std::ostringstream out;
  out << r.a << ',' << r.b << ',' << r.g << ',' << r.source_dim << ',' << r.target_dim << ',' << r.numerical_rank
      << ',' << r.corank << ',' << r.torsion_count << ',' << (r.match ? 1 : 0) << ','
      << format_double(r.min_accepted_sigma) << ',' << format_double(r.max_rejected_sigma) << ',' << r.twist_side
      << '\n';
  return out.str();
}

std::string identity_table_to_json(const std::vector<IdentityRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back({{"identity", row.identity},
                   {"parameters", row.parameters},
                   {"expected", row.expected},
                   {"computed", row.computed},
                   {"pass", row.pass}});
  }
  return out.dump(2);
}

std::string identity_table_to_csv(const std::vector<IdentityRow>& rows) {
  std::ostringstream out;
  out << "identity,parameters,expected,computed,pass\n";
  for (const auto& row : rows) {
    out << row.identity << ",\"" << row.parameters << "\",\"" << row.expected << "\",\"" << row.computed << "\","
        << (row.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string scan_to_csv(const ScanResult& scan) {
  std::ostringstream out;
  out << "y_p,y_q,y_extra_re,y_extra_im,corank,predicted,divisor_predicted\n";
  for (const auto& point : scan.points) {
    out << point.y.p[0].get_str() << ',' << point.y.q[0].get_str() << ',' << format_double(point.y.extra(0).real())
        << ',' << format_double(point.y.extra(0).imag()) << ',' << point.corank << ',' << (point.predicted ? 1 : 0)
        << ',' << (point.divisor_predicted ? 1 : 0) << '\n';
  }
  return out.str();
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move artifact into place at " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace thetadiv::io
