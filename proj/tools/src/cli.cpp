#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "gam/errors.hpp"
#include "gam/io.hpp"
#include "gam/metrics.hpp"
#include "gam/optimizer.hpp"
#include "gam/schemes.hpp"

namespace gam::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct EvalArgs {
  std::string method = "quad";
  double tol = 1e-4;
  std::int64_t k_mc = 100000;
  std::optional<std::uint64_t> seed;

  MiMethod parsed() const {
    if (method == "quad") return MiMethod::quadrature;
    if (method == "mc") return MiMethod::monte_carlo;
    throw PreconditionError("--method must be 'quad' or 'mc'");
  }
  void check() const {
    if (parsed() == MiMethod::monte_carlo) {
      detail::require(seed.has_value(), "--seed is required for the mc method");
      detail::require(k_mc >= 1, "--kmc must be >= 1");
    } else {
      detail::require(tol > 0.0, "--tol must be > 0");
    }
  }
};

void add_scheme_options(CLI::App* cmd, SchemeArgs& a, bool scheme_required) {
  auto* s = cmd->add_option("--scheme", a.scheme, "disc, disc-generalized, gb-hr, pb-se, pb-xi, qam, psk");
  if (scheme_required) s->required();
  cmd->add_option("--n", a.n, "number of points");
  cmd->add_option("--n-low", a.n_low, "first index (disc-generalized)");
  cmd->add_option("--n-high", a.n_high, "last index (disc-generalized)");
  cmd->add_option("--entropy-bits", a.entropy_bits, "entropy target (pb-se)");
  cmd->add_option("--xi", a.xi, "geometric pmf ratio (pb-xi)");
  cmd->add_option("--power", a.power, "average power")->default_val(1.0);
}

void add_eval_options(CLI::App* cmd, EvalArgs& e) {
  cmd->add_option("--method", e.method, "quad or mc")->default_val("quad");
  cmd->add_option("--tol", e.tol, "quadrature tolerance in bits")->default_val(1e-4);
  cmd->add_option("--kmc", e.k_mc, "Monte-Carlo samples")->default_val(100000);
  cmd->add_option("--seed", e.seed, "Monte-Carlo seed (required for mc)");
}

std::int64_t require_n(const SchemeArgs& a) {
  detail::require(a.n != 0, "--n is required for scheme " + a.scheme);
  return a.n;
}

/// Appends rows to a results CSV, writing the header for a new file.
class CsvAppender {
 public:
  explicit CsvAppender(const fs::path& path) {
    bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    if (!fresh) {
      std::ifstream in(path);
      std::string first;
      std::getline(in, first);
      detail::require(first == io::kCsvHeader, "'" + path.string() + "' has a different CSV header");
    }
    out_.open(path, std::ios::app | std::ios::binary);
    detail::require(static_cast<bool>(out_), "cannot write '" + path.string() + "'");
    if (fresh) out_ << io::kCsvHeader << '\n';
  }
  void append(const io::ResultRow& r) {
    out_ << io::format_row(r) << '\n';
    out_.flush();
  }

 private:
  std::ofstream out_;
};

io::ResultRow base_row(const Constellation& c, double snr_db) {
  io::ResultRow r;
  r.snr_db = snr_db;
  r.scheme = c.scheme();
  r.n_points = static_cast<std::int64_t>(c.size());
  r.entropy_bits = entropy_bits(c);
  r.papr_db = to_db(papr(c));
  return r;
}

void fill_mi(io::ResultRow& r, const Constellation& c, double snr_db, const EvalArgs& e) {
  const auto ch = AwgnChannel::for_constellation(c, from_db(snr_db));
  if (e.parsed() == MiMethod::quadrature) {
    r.mi_bits = mi_quadrature(c, ch, e.tol).bits;
    r.method = "quad";
  } else {
    const auto est = mi_monte_carlo(c, ch, e.k_mc, *e.seed);
    r.mi_bits = est.bits;
    r.mi_stderr = est.std_err_bits;
    r.method = "mc";
    r.seed = *e.seed;
    r.k_mc = e.k_mc;
  }
}

std::string summary(const Constellation& c) {
  double mean_mag = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) mean_mag += c.probability(k) * c.radius(k);
  std::ostringstream os;
  os << "scheme=" << c.scheme() << " N=" << c.size() << " entropy_bits=" << fmt17(entropy_bits(c))
     << " papr_db=" << fmt17(to_db(papr(c))) << " mean_magnitude=" << fmt17(mean_mag);
  return os.str();
}

std::string row_key(const io::ResultRow& r) {
  return r.scheme + '|' + std::to_string(r.n_points) + '|' + io::format_snr_db(r.snr_db) + '|' + r.method + '|' +
         std::to_string(r.seed);
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  SchemeArgs scheme;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto c = make_scheme(a.scheme);
  if (!a.out.empty()) io::write_constellation(a.out, c);
  out << summary(c) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- mi

struct MiArgs {
  std::string constellation;
  std::string snr_db;
  EvalArgs eval;
  std::string csv;
};

int cmd_mi(const MiArgs& a, std::ostream& out) {
  a.eval.check();
  const auto c = io::read_constellation(a.constellation);
  const auto snrs = parse_snr_list(a.snr_db);
  std::optional<CsvAppender> csv;
  if (!a.csv.empty()) csv.emplace(a.csv);
  out << io::kCsvHeader << '\n';
  for (double db : snrs) {
    auto row = base_row(c, db);
    fill_mi(row, c, db, a.eval);
    out << io::format_row(row) << '\n';
    if (csv) csv->append(row);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- ser

struct SerArgs {
  SchemeArgs scheme;
  std::string constellation;
  std::string snr_db;
  bool analytic = false;
  bool mc = false;
  std::int64_t k_mc = 100000;
  std::optional<std::uint64_t> seed;
  std::string csv;
};

int cmd_ser(const SerArgs& a, std::ostream& out) {
  detail::require(a.analytic || a.mc, "choose --analytic and/or --mc");
  detail::require(a.scheme.scheme.empty() != a.constellation.empty(), "give exactly one of --scheme or --const");
  if (a.mc) {
    detail::require(a.seed.has_value(), "--seed is required for --mc");
    detail::require(a.k_mc >= 1, "--kmc must be >= 1");
  }
  const auto c = a.constellation.empty() ? make_scheme(a.scheme) : io::read_constellation(a.constellation);
  std::function<double(double)> analytic;
  if (a.analytic) {
    const auto n = static_cast<std::int64_t>(c.size());
    if (c.scheme() == "disc" && c.index_offset() == 1) {
      analytic = [n](double s) { return ser_disc_analytic(n, s); };
    } else if (c.scheme() == "gb-hr") {
      analytic = [n](double s) { return ser_gb_analytic(n, s); };
    } else {
      throw PreconditionError("analytic SER is available for disc and gb-hr only");
    }
  }
  const auto snrs = parse_snr_list(a.snr_db);
  std::optional<CsvAppender> csv;
  if (!a.csv.empty()) csv.emplace(a.csv);
  out << io::kCsvHeader << '\n';
  auto emit = [&](const io::ResultRow& row) {
    out << io::format_row(row) << '\n';
    if (csv) csv->append(row);
  };
  for (double db : snrs) {
    const double s = from_db(db);
    if (analytic) {
      auto row = base_row(c, db);
      row.method = "analytic";
      row.ser = analytic(s);
      emit(row);
    }
    if (a.mc) {
      auto row = base_row(c, db);
      row.method = "mc";
      const auto est = ser_monte_carlo(c, AwgnChannel::for_constellation(c, s), a.k_mc, *a.seed);
      row.ser = est.ser;
      row.ser_stderr = est.std_err;
      row.seed = *a.seed;
      row.k_mc = a.k_mc;
      emit(row);
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string config;
  std::string formulation;
  std::int64_t n = 0;
  double snr_db = 0.0;
  int poly_order = 3;
  double papr_cap_db = 0.0;
  EvalArgs eval;
  int max_iters = 300;
  int starts = 3;
  bool decreasing_pmf = false;
  std::string out;
  std::string diag;
};

int cmd_optimize(const OptimizeArgs& a, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  OptimizationProblem p;
  if (!a.config.empty()) p = io::problem_from_json(io::read_text(a.config));
  if (given("--formulation")) p.formulation = parse_formulation(a.formulation);
  if (given("--n")) p.n_points = a.n;
  if (given("--snr-db")) p.snr = from_db(a.snr_db);
  if (given("--poly-order")) p.poly_degree = a.poly_order;
  if (given("--papr-cap-db")) p.papr_cap = from_db(a.papr_cap_db);
  if (given("--max-iters")) p.max_iters = a.max_iters;
  if (given("--starts")) p.starts = a.starts;
  if (given("--decreasing-pmf")) p.decreasing_pmf = a.decreasing_pmf;
  if (given("--method")) p.mi_eval.method = a.eval.parsed();
  if (given("--tol")) p.mi_eval.tol = a.eval.tol;
  if (given("--kmc")) p.mi_eval.k_mc = a.eval.k_mc;
  if (given("--seed")) p.mi_eval.seed = *a.eval.seed;
  if (a.config.empty()) {
    detail::require(given("--formulation") && given("--n") && given("--snr-db"),
                    "--formulation, --n and --snr-db are required without --config");
  }
  if (p.mi_eval.method == MiMethod::monte_carlo && a.config.empty()) {
    detail::require(given("--seed"), "--seed is required for the mc method");
  }
  p.validate();
  const auto r = optimize(p);
  if (!a.out.empty()) io::write_constellation(a.out, r.constellation);
  if (!a.diag.empty()) io::write_text(a.diag, io::diagnostics_to_json(p, r));
  out << "formulation=" << to_string(p.formulation) << " N=" << p.n_points << " snr_db=" << fmt17(to_db(p.snr))
      << " mi_bits=" << fmt17(r.mi_bits) << " initial_mi_bits=" << fmt17(r.initial_mi_bits)
      << " iterations=" << r.iterations << " converged=" << (r.converged ? "true" : "false") << '\n';
  if (!r.converged) err << "warning: iteration limit reached before the convergence test passed\n";
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::vector<std::string> schemes;
  std::vector<std::int64_t> n_points;
  std::string snr_db;
  EvalArgs eval;
  std::optional<double> entropy_bits;
  std::optional<double> xi;
  bool with_ser = false;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  a.eval.check();
  if (a.with_ser) detail::require(a.eval.seed.has_value(), "--seed is required with --ser");
  const auto snrs = parse_snr_list(a.snr_db);
  detail::require(!a.schemes.empty() && !a.n_points.empty(), "--schemes and --n must be non-empty");

  // Resume: keep the complete rows of an earlier run, drop a torn last line.
  std::set<std::string> done;
  const fs::path path(a.out);
  if (fs::exists(path)) {
    std::string text = io::read_text(path);
    const auto last_nl = text.rfind('\n');
    text.resize(last_nl == std::string::npos ? 0 : last_nl + 1);
    if (!text.empty()) {
      std::istringstream in(text);
      std::string line;
      std::getline(in, line);
      detail::require(line == io::kCsvHeader, "'" + a.out + "' has a different CSV header");
      while (std::getline(in, line)) {
        if (!line.empty()) done.insert(row_key(io::parse_row(line)));
      }
    }
    io::write_text(path, text);
  }
  CsvAppender csv(path);

  std::size_t computed = 0;
  std::size_t skipped = 0;
  for (const auto& scheme : a.schemes) {
    for (auto n : a.n_points) {
      SchemeArgs sa;
      sa.scheme = scheme;
      sa.n = n;
      sa.entropy_bits = a.entropy_bits;
      sa.xi = a.xi;
      const auto c = make_scheme(sa);
      for (double db : snrs) {
        auto row = base_row(c, db);
        row.method = a.eval.parsed() == MiMethod::quadrature ? "quad" : "mc";
        if (a.eval.seed) row.seed = *a.eval.seed;
        if (row.method == "mc") row.k_mc = a.eval.k_mc;
        if (done.contains(row_key(row))) {
          ++skipped;
          continue;
        }
        fill_mi(row, c, db, a.eval);
        if (a.eval.seed) row.seed = *a.eval.seed;
        if (a.with_ser) {
          const auto est = ser_monte_carlo(c, AwgnChannel::for_constellation(c, from_db(db)), a.eval.k_mc, *a.eval.seed);
          row.ser = est.ser;
          row.ser_stderr = est.std_err;
          row.k_mc = a.eval.k_mc;
        }
        csv.append(row);
        ++computed;
      }
    }
  }
  out << "sweep: " << computed << " rows computed, " << skipped << " already present\n";
  return kExitOk;
}

// ---------------------------------------------------------------- tables

struct TablesArgs {
  int table = 1;
  std::string csv;
};

struct TableCell {
  std::string label;
  std::string tag;
  std::vector<double> reference;
};

int cmd_tables(const TablesArgs& a, std::ostream& out) {
  detail::require(a.table == 1 || a.table == 2, "--table must be 1 or 2");
  const std::int64_t n = a.table == 1 ? 16 : 256;
  const std::vector<double> snrs = a.table == 1 ? std::vector<double>{3.0, 15.0, std::pow(10.0, 1.5)}
                                                : std::vector<double>{3.0, 15.0, 255.0, std::pow(10.0, 3.3)};
  std::vector<TableCell> cols;
  if (a.table == 1) {
    cols = {{"HR", "gb-hr", {1.921, 3.440, 3.828}},
            {"G1", "g1", {1.961, 3.549, 3.926}},
            {"G2", "g2", {1.947, 3.542, 3.921}}};
  } else {
    cols = {{"HR", "gb-hr", {1.997, 3.972, 7.403, 7.999}}, {"G2", "g2", {1.997, 3.965, 7.528, 8.000}}};
  }
  std::optional<std::ofstream> csv;
  if (!a.csv.empty()) {
    csv.emplace(a.csv, std::ios::binary | std::ios::trunc);
    detail::require(static_cast<bool>(*csv), "cannot write '" + a.csv + "'");
    *csv << io::kCsvHeader << '\n';
  }
  out << "Table " << a.table << ": N=" << n << "\n";
  out << std::left << std::setw(10) << "snr_db" << std::setw(10) << "S" << std::setw(10) << "capacity" << std::setw(6)
      << "col" << std::setw(10) << "computed" << std::setw(10) << "reference" << "delta\n";
  for (std::size_t i = 0; i < snrs.size(); ++i) {
    const double s = snrs[i];
    for (const auto& col : cols) {
      Constellation c;
      double mi = 0.0;
      if (col.tag == "gb-hr") {
        c = gen_gb_hr(n, PowerBudget(1.0));
        mi = mi_quadrature(c, AwgnChannel::unit_power(s), 1e-6).bits;
      } else {
        OptimizationProblem p;
        p.formulation = parse_formulation(col.tag);
        p.n_points = n;
        p.snr = s;
        const auto r = optimize(p);
        c = r.constellation;
        mi = r.mi_bits;
      }
      const double ref = col.reference[i];
      out << std::left << std::setw(10) << fixed(to_db(s), 3) << std::setw(10) << fixed(s, 2) << std::setw(10)
          << fixed(std::log2(1.0 + s), 3) << std::setw(6) << col.label << std::setw(10) << fixed(mi, 4)
          << std::setw(10) << fixed(ref, 3) << (mi - ref >= 0 ? "+" : "") << fixed(mi - ref, 4) << '\n';
      out.flush();
      if (csv) {
        auto row = base_row(c, to_db(s));
        row.scheme = col.tag;
        row.mi_bits = mi;
        row.method = "quad";
        *csv << io::format_row(row) << '\n';
      }
    }
  }
  return kExitOk;
}

}  // namespace

std::vector<double> parse_snr_list(std::string_view text) {
  auto to_d = [](std::string_view s) {
    std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    detail::require(!tmp.empty() && end == tmp.c_str() + tmp.size() && std::isfinite(v),
                    "invalid SNR value '" + tmp + "'");
    return v;
  };
  detail::require(!text.empty(), "--snr-db is required");
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto p1 = text.find(':');
    const auto p2 = text.find(':', p1 + 1);
    detail::require(p2 != std::string_view::npos && text.find(':', p2 + 1) == std::string_view::npos,
                    "SNR range must be start:step:stop");
    const double start = to_d(text.substr(0, p1));
    const double step = to_d(text.substr(p1 + 1, p2 - p1 - 1));
    const double stop = to_d(text.substr(p2 + 1));
    detail::require(step > 0.0, "SNR step must be > 0");
    detail::require(start <= stop, "SNR start must be <= stop");
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::int64_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(',', start);
    out.push_back(to_d(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Constellation make_scheme(const SchemeArgs& a) {
  const PowerBudget power(a.power);
  if (a.scheme == "disc") return gen_disc(DiscSpec{1, require_n(a), power});
  if (a.scheme == "disc-generalized") {
    detail::require(a.n_low != 0 && a.n_high != 0, "--n-low and --n-high are required for disc-generalized");
    return gen_disc(DiscSpec{a.n_low, a.n_high, power});
  }
  if (a.scheme == "gb-hr") return gen_gb_hr(require_n(a), power);
  if (a.scheme == "pb-se") {
    detail::require(a.entropy_bits.has_value(), "--entropy-bits is required for pb-se");
    return gen_pb_se(require_n(a), *a.entropy_bits, power);
  }
  if (a.scheme == "pb-xi") {
    detail::require(a.xi.has_value(), "--xi is required for pb-xi");
    return gen_geometric_pmf_disc(require_n(a), *a.xi, a.power, 1.0);
  }
  if (a.scheme == "qam") {
    const auto n = require_n(a);
    const auto side = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    detail::require(side * side == n, "qam needs a square --n");
    return gen_qam(side, power);
  }
  if (a.scheme == "psk") return gen_psk(require_n(a), power);
  throw PreconditionError("unknown scheme '" + a.scheme + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Golden angle modulation toolkit", "gam"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a constellation");
  add_scheme_options(gen_cmd, gen.scheme, true);
  gen_cmd->add_option("--out", gen.out, "constellation JSON path");

  MiArgs mi;
  auto* mi_cmd = app.add_subcommand("mi", "mutual information of a constellation file");
  mi_cmd->add_option("--const", mi.constellation, "constellation JSON")->required();
  mi_cmd->add_option("--snr-db", mi.snr_db, "SNR in dB: value, list or start:step:stop")->required();
  add_eval_options(mi_cmd, mi.eval);
  mi_cmd->add_option("--csv", mi.csv, "append rows to this CSV");

  SerArgs ser;
  auto* ser_cmd = app.add_subcommand("ser", "symbol error rate");
  add_scheme_options(ser_cmd, ser.scheme, false);
  ser_cmd->add_option("--const", ser.constellation, "constellation JSON");
  ser_cmd->add_option("--snr-db", ser.snr_db, "SNR in dB: value, list or start:step:stop")->required();
  ser_cmd->add_flag("--analytic", ser.analytic, "closed-form SER");
  ser_cmd->add_flag("--mc", ser.mc, "Monte-Carlo SER");
  ser_cmd->add_option("--kmc", ser.k_mc, "Monte-Carlo samples")->default_val(100000);
  ser_cmd->add_option("--seed", ser.seed, "Monte-Carlo seed");
  ser_cmd->add_option("--csv", ser.csv, "append rows to this CSV");

  OptimizeArgs opt;
  auto* opt_cmd = app.add_subcommand("optimize", "maximize MI for a formulation");
  opt_cmd->add_option("--config", opt.config, "problem JSON (flags take precedence)");
  opt_cmd->add_option("--formulation", opt.formulation, "g1, g2, p1, p2 or gp1");
  opt_cmd->add_option("--n", opt.n, "number of points");
  opt_cmd->add_option("--snr-db", opt.snr_db, "SNR in dB");
  opt_cmd->add_option("--poly-order", opt.poly_order, "G2 polynomial degree");
  opt_cmd->add_option("--papr-cap-db", opt.papr_cap_db, "PAPR bound in dB");
  add_eval_options(opt_cmd, opt.eval);
  opt_cmd->add_option("--max-iters", opt.max_iters, "iteration limit per start");
  opt_cmd->add_option("--starts", opt.starts, "number of starting points");
  opt_cmd->add_flag("--decreasing-pmf", opt.decreasing_pmf, "constrain p_(n+1) <= p_n");
  opt_cmd->add_option("--out", opt.out, "optimized constellation JSON");
  opt_cmd->add_option("--diag", opt.diag, "diagnostics JSON");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "MI (and SER) over schemes x sizes x SNR; resumable");
  sweep_cmd->add_option("--schemes", sweep.schemes, "scheme list")->delimiter(',')->required();
  sweep_cmd->add_option("--n", sweep.n_points, "size list")->delimiter(',')->required();
  sweep_cmd->add_option("--snr-db", sweep.snr_db, "start:step:stop or list")->required();
  add_eval_options(sweep_cmd, sweep.eval);
  sweep_cmd->add_option("--entropy-bits", sweep.entropy_bits, "entropy target for pb-se");
  sweep_cmd->add_option("--xi", sweep.xi, "pmf ratio for pb-xi");
  sweep_cmd->add_flag("--ser", sweep.with_ser, "also estimate SER by Monte-Carlo");
  sweep_cmd->add_option("--out", sweep.out, "results CSV")->required();

  TablesArgs tables;
  auto* tables_cmd = app.add_subcommand("tables", "reproduce the MI tables");
  tables_cmd->add_option("--table", tables.table, "1 or 2")->required();
  tables_cmd->add_option("--csv", tables.csv, "write rows to this CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (mi_cmd->parsed()) return cmd_mi(mi, out);
    if (ser_cmd->parsed()) return cmd_ser(ser, out);
    if (opt_cmd->parsed()) return cmd_optimize(opt, *opt_cmd, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out);
    if (tables_cmd->parsed()) return cmd_tables(tables, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace gam::cli
