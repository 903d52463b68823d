#include "gam/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gam/errors.hpp"

namespace gam::io {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

bool non_gam_scheme(std::string_view s) { return s == "qam" || s == "psk"; }

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw PreconditionError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view s) {
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw PreconditionError("malformed number '" + tmp + "'");
  return v;
}

std::optional<double> to_opt(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return to_double(s);
}

}  // namespace

std::string constellation_to_json(const Constellation& c) {
  std::ostringstream os;
  os << "{\"scheme\": " << json(c.scheme()).dump() << ", \"index_offset\": " << c.index_offset()
     << ", \"avg_power\": " << num(average_power(c)) << ", \"points\": [";
  for (std::size_t k = 0; k < c.size(); ++k) {
    os << (k ? ",\n  " : "\n  ") << "{\"re\": " << num(c.point(k).real()) << ", \"im\": " << num(c.point(k).imag())
       << ", \"p\": " << num(c.probability(k)) << "}";
  }
  os << "\n]}\n";
  return os.str();
}

Constellation constellation_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed constellation JSON: ") + e.what());
  }
  const auto scheme = field<std::string>(j, "scheme");
  const auto offset = field<std::int64_t>(j, "index_offset");
  const auto& pts = j.contains("points") ? j.at("points") : throw PreconditionError("missing field 'points'");
  if (!pts.is_array() || pts.empty()) throw PreconditionError("'points' must be a non-empty array");
  std::vector<ComplexPoint> points;
  std::vector<double> probs;
  for (const auto& e : pts) {
    points.emplace_back(field<double>(e, "re"), field<double>(e, "im"));
    probs.push_back(field<double>(e, "p"));
  }
  Constellation c(std::move(points), std::move(probs), scheme, offset, !non_gam_scheme(scheme));
  if (j.contains("avg_power")) {
    const double stated = field<double>(j, "avg_power");
    detail::require(std::abs(stated - average_power(c)) <= 1e-9 * std::max(1.0, stated),
                    "avg_power does not match the points");
  }
  return c;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PreconditionError("cannot write '" + path.string() + "'");
  out << text;
}

void write_constellation(const std::filesystem::path& path, const Constellation& c) {
  write_text(path, constellation_to_json(c));
}

Constellation read_constellation(const std::filesystem::path& path) {
  return constellation_from_json(read_text(path));
}

OptimizationProblem problem_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed problem JSON: ") + e.what());
  }
  OptimizationProblem p;
  p.formulation = parse_formulation(field<std::string>(j, "formulation"));
  p.n_points = field<std::int64_t>(j, "n_points");
  p.snr = from_db(field<double>(j, "snr_db"));
  if (j.contains("noise_var")) p.noise_var = field<double>(j, "noise_var");
  if (j.contains("papr_cap")) p.papr_cap = field<double>(j, "papr_cap");
  if (j.contains("papr_cap_db")) p.papr_cap = from_db(field<double>(j, "papr_cap_db"));
  if (j.contains("poly_degree")) p.poly_degree = field<int>(j, "poly_degree");
  if (j.contains("max_iters")) p.max_iters = field<int>(j, "max_iters");
  if (j.contains("grad_tol")) p.grad_tol = field<double>(j, "grad_tol");
  if (j.contains("value_tol")) p.value_tol = field<double>(j, "value_tol");
  if (j.contains("starts")) p.starts = field<int>(j, "starts");
  if (j.contains("start_seed")) p.start_seed = field<std::uint64_t>(j, "start_seed");
  if (j.contains("decreasing_pmf")) p.decreasing_pmf = field<bool>(j, "decreasing_pmf");
  if (j.contains("max_points")) p.max_points = field<std::int64_t>(j, "max_points");
  if (j.contains("mi_eval")) {
    const auto& e = j.at("mi_eval");
    const auto method = e.contains("method") ? field<std::string>(e, "method") : std::string("quad");
    if (method == "quad" || method == "quadrature") {
      p.mi_eval.method = MiMethod::quadrature;
    } else if (method == "mc" || method == "monte_carlo") {
      p.mi_eval.method = MiMethod::monte_carlo;
      if (!e.contains("seed")) throw PreconditionError("mi_eval.seed is required for the mc method");
    } else {
      throw PreconditionError("mi_eval.method must be 'quad' or 'mc'");
    }
    if (e.contains("tol")) p.mi_eval.tol = field<double>(e, "tol");
    if (e.contains("k_mc")) p.mi_eval.k_mc = field<std::int64_t>(e, "k_mc");
    if (e.contains("seed")) p.mi_eval.seed = field<std::uint64_t>(e, "seed");
  }
  p.validate();
  return p;
}

std::string problem_to_json(const OptimizationProblem& p) {
  json j;
  j["formulation"] = std::string(to_string(p.formulation));
  j["n_points"] = p.n_points;
  j["snr_db"] = to_db(p.snr);
  if (p.noise_var > 0.0) j["noise_var"] = p.noise_var;
  if (p.papr_cap) j["papr_cap"] = *p.papr_cap;
  j["poly_degree"] = p.poly_degree;
  j["max_iters"] = p.max_iters;
  j["grad_tol"] = p.grad_tol;
  j["value_tol"] = p.value_tol;
  j["starts"] = p.starts;
  j["start_seed"] = p.start_seed;
  j["decreasing_pmf"] = p.decreasing_pmf;
  if (p.max_points > 0) j["max_points"] = p.max_points;
  j["mi_eval"] = {{"method", std::string(to_string(p.mi_eval.method))},
                  {"tol", p.mi_eval.tol},
                  {"k_mc", p.mi_eval.k_mc},
                  {"seed", p.mi_eval.seed}};
  return j.dump(2) + "\n";
}

std::string diagnostics_to_json(const OptimizationProblem& p, const OptimizationResult& r) {
  json j;
  j["formulation"] = std::string(to_string(p.formulation));
  j["n_points"] = p.n_points;
  j["snr_db"] = to_db(p.snr);
  j["mi_bits"] = r.mi_bits;
  if (p.mi_eval.method == MiMethod::monte_carlo) j["mi_std_err"] = r.mi_std_err;
  j["initial_mi_bits"] = r.initial_mi_bits;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["best_start"] = r.best_start;
  j["trace"] = r.objective_trace;
  j["residuals"] = {{"power", r.residuals.power}, {"papr", r.residuals.papr}};
  j["entropy_bits"] = entropy_bits(r.constellation);
  j["papr_db"] = to_db(papr(r.constellation));
  if (r.spiral) {
    j["spiral_coeffs"] = r.spiral->coeffs;
    j["spiral_violation"] = r.spiral_violation;
  }
  if (r.xi) j["xi"] = *r.xi;
  return j.dump(2) + "\n";
}

std::string format_snr_db(double snr_db) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", snr_db);
  return buf;
}

std::string format_row(const ResultRow& r) {
  std::ostringstream os;
  os << format_snr_db(r.snr_db) << ',' << r.scheme << ',' << r.n_points << ',' << opt_num(r.mi_bits) << ','
     << opt_num(r.mi_stderr) << ',' << r.method << ',' << num(r.entropy_bits) << ',' << num(r.papr_db) << ','
     << opt_num(r.ser) << ',' << opt_num(r.ser_stderr) << ',' << r.seed << ',' << r.k_mc;
  return os.str();
}

ResultRow parse_row(std::string_view line) {
  const auto f = split_csv(line);
  if (f.size() != 12) throw PreconditionError("CSV row has " + std::to_string(f.size()) + " fields, expected 12");
  ResultRow r;
  r.snr_db = to_double(f[0]);
  r.scheme = std::string(f[1]);
  r.n_points = static_cast<std::int64_t>(to_double(f[2]));
  r.mi_bits = to_opt(f[3]);
  r.mi_stderr = to_opt(f[4]);
  r.method = std::string(f[5]);
  r.entropy_bits = to_double(f[6]);
  r.papr_db = to_double(f[7]);
  r.ser = to_opt(f[8]);
  r.ser_stderr = to_opt(f[9]);
  r.seed = static_cast<std::uint64_t>(std::stoull(std::string(f[10])));
  r.k_mc = static_cast<std::int64_t>(std::stoll(std::string(f[11])));
  return r;
}

}  // namespace gam::io
