#include "vgprod/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "vgprod/errors.hpp"
#include "vgprod/format.hpp"
#include "vgprod/product_normal.hpp"
#include "vgprod/tabulate.hpp"
#include "vgprod/variance_gamma.hpp"
#include "vgprod/verification.hpp"

namespace vgprod {
namespace {

// Invalid flag values; reported with exit code 2 like every other user error.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DistFlags {
  std::string dist;
  std::string r, theta, sigma, mu;
  std::string sigma_x, sigma_y, rho, n;
};

void add_dist_flags(CLI::App* cmd, DistFlags& f) {
  cmd->add_option("--dist", f.dist, "vg, product or mean")->required();
  cmd->add_option("--r", f.r, "VG shape");
  cmd->add_option("--theta", f.theta, "VG skew (default 0)");
  cmd->add_option("--sigma", f.sigma, "VG scale");
  cmd->add_option("--mu", f.mu, "VG location (default 0)");
  cmd->add_option("--sigma-x", f.sigma_x, "standard deviation of X");
  cmd->add_option("--sigma-y", f.sigma_y, "standard deviation of Y");
  cmd->add_option("--rho", f.rho, "correlation of X and Y");
  cmd->add_option("--n", f.n, "number of averaged products (mean only)");
}

double number(const std::string& flag, const std::string& text) {
  double v = 0.0;
  if (!parse_number(text, v)) {
    throw UsageError(flag + ": not a decimal number: '" + text + "'");
  }
  return v;
}

double required_number(const std::string& flag, const std::string& text) {
  if (text.empty()) throw UsageError(flag + " is required for this distribution");
  return number(flag, text);
}

std::uint64_t unsigned_integer(const std::string& flag, const std::string& text) {
  if (text.empty()) throw UsageError(flag + " is required");
  std::uint64_t v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw UsageError(flag + ": not a non-negative integer: '" + text + "'");
  }
  return v;
}

enum class Kind { kVg, kProduct, kMean };

struct Dist {
  Kind kind = Kind::kVg;
  std::optional<VarianceGamma> vg;  // law of the variable in every case
  std::optional<BivariateNormalZeroMean> bv;
  std::size_t n = 1;
  std::string meta;
};

Dist resolve(const DistFlags& f) {
  Dist d;
  if (f.dist == "vg") {
    const double theta = f.theta.empty() ? 0.0 : number("--theta", f.theta);
    const double mu = f.mu.empty() ? 0.0 : number("--mu", f.mu);
    d.vg = make_vg(required_number("--r", f.r), theta, required_number("--sigma", f.sigma), mu);
    d.meta = "vg";
    return d;
  }
  if (f.dist != "product" && f.dist != "mean") {
    throw UsageError("--dist must be vg, product or mean (got '" + f.dist + "')");
  }
  d.bv.emplace(required_number("--sigma-x", f.sigma_x), required_number("--sigma-y", f.sigma_y),
               required_number("--rho", f.rho));
  if (f.dist == "product") {
    d.kind = Kind::kProduct;
    d.vg = product_distribution(*d.bv);
  } else {
    d.kind = Kind::kMean;
    d.n = unsigned_integer("--n", f.n);
    if (d.n == 0) throw UsageError("--n must be at least 1");
    d.vg = mean_distribution({*d.bv, d.n});
  }
  d.meta = f.dist;
  return d;
}

double evaluate(const Dist& d, const std::string& fn, double x) {
  if (fn == "pdf") {
    switch (d.kind) {
      case Kind::kVg:
        return pdf(*d.vg, x);
      case Kind::kProduct:
        return pdf_product(*d.bv, x);
      case Kind::kMean:
        return d.n == 1 ? pdf_product(*d.bv, x) : pdf_mean({*d.bv, d.n}, x);
    }
  }
  if (fn == "logpdf") return log_pdf(*d.vg, x);
  if (fn == "cdf") return cdf(*d.vg, x);
  throw UsageError("--fn must be pdf, logpdf or cdf (got '" + fn + "')");
}

std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  auto file = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*file) throw UsageError("cannot open output file '" + path + "'");
  file->imbue(std::locale::classic());
  return file;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variance-gamma laws of products of zero-mean correlated normals", "vgprod"};
  app.require_subcommand(1);

  DistFlags eval_flags;
  std::string x_text;
  CLI::App* eval_cmds[3] = {app.add_subcommand("pdf", "density at --x"),
                            app.add_subcommand("logpdf", "log density at --x"),
                            app.add_subcommand("cdf", "distribution function at --x")};
  for (CLI::App* cmd : eval_cmds) {
    add_dist_flags(cmd, eval_flags);
    cmd->add_option("--x", x_text, "evaluation point")->required();
  }

  DistFlags table_flags;
  std::string from_text, to_text, steps_text, table_out, table_fn = "pdf";
  CLI::App* table_cmd = app.add_subcommand("table", "tabulate a function on a grid as CSV");
  add_dist_flags(table_cmd, table_flags);
  table_cmd->add_option("--from", from_text, "first grid point")->required();
  table_cmd->add_option("--to", to_text, "last grid point")->required();
  table_cmd->add_option("--steps", steps_text, "number of grid points, at least 2")->required();
  table_cmd->add_option("--out", table_out, "output CSV file")->required();
  table_cmd->add_option("--fn", table_fn, "pdf (default), logpdf or cdf");

  DistFlags sample_flags;
  std::string count_text, seed_text, stream_text, sample_out;
  CLI::App* sample_cmd = app.add_subcommand("sample", "draw a seeded sample as CSV");
  add_dist_flags(sample_cmd, sample_flags);
  sample_cmd->add_option("--count", count_text, "number of draws")->required();
  sample_cmd->add_option("--seed", seed_text, "64-bit generator seed")->required();
  sample_cmd->add_option("--stream", stream_text, "independent stream id under the seed")->required();
  sample_cmd->add_option("--out", sample_out, "output file (default: standard output)");

  std::string config_path, json_path;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  verify_cmd->add_option("--config", config_path, "suite config JSON, or 'default'");
  verify_cmd->add_option("--json", json_path, "write the report list as JSON");

  std::vector<const char*> argv{"vgprod"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "vgprod: " << e.what() << '\n';
      return 2;
    }

    for (CLI::App* cmd : eval_cmds) {
      if (!cmd->parsed()) continue;
      const Dist d = resolve(eval_flags);
      out << format_number(evaluate(d, cmd->get_name(), number("--x", x_text))) << '\n';
      return 0;
    }

    if (table_cmd->parsed()) {
      const Dist d = resolve(table_flags);
      const std::uint64_t steps = unsigned_integer("--steps", steps_text);
      const TabulatedFunction t =
          tabulate([&](double x) { return evaluate(d, table_fn, x); }, number("--from", from_text),
                   number("--to", to_text), static_cast<std::size_t>(steps), d.meta);
      auto file = open_output(table_out);
      write_csv(*file, t);
      if (!*file) throw UsageError("failed writing '" + table_out + "'");
      return 0;
    }

    if (sample_cmd->parsed()) {
      const Dist d = resolve(sample_flags);
      const std::uint64_t count = unsigned_integer("--count", count_text);
      RngStream rng(unsigned_integer("--seed", seed_text),
                    unsigned_integer("--stream", stream_text));
      SampleBatch batch;
      switch (d.kind) {
        case Kind::kVg:
          batch = sample(*d.vg, rng, count);
          break;
        case Kind::kProduct:
          batch = sample_product(*d.bv, rng, count);
          break;
        case Kind::kMean:
          batch = sample_mean({*d.bv, d.n}, rng, count);
          break;
      }
      std::unique_ptr<std::ofstream> file;
      std::ostream* dst = &out;
      if (!sample_out.empty()) {
        file = open_output(sample_out);
        dst = file.get();
      }
      *dst << "value\n";
      for (double v : batch.values) *dst << format_number(v) << '\n';
      if (!*dst) throw UsageError("failed writing sample output");
      return 0;
    }

    if (verify_cmd->parsed()) {
      const SuiteConfig cfg = (config_path.empty() || config_path == "default")
                                  ? SuiteConfig{}
                                  : parse_suite_config(read_file(config_path));
      const std::vector<GofReport> reports = run_suite(cfg);
      for (const auto& r : reports) {
        const bool ok = is_negative_control(r) ? !r.passed : r.passed;
        out << (ok ? "ok   " : "FAIL ") << r.test_name << " statistic=" << format_number(r.statistic)
            << " threshold=" << format_number(r.threshold) << " verdict=" << (r.passed ? "pass" : "fail")
            << '\n';
      }
      if (!json_path.empty()) {
        auto file = open_output(json_path);
        *file << to_json(reports).dump(2) << '\n';
      }
      const bool passed = suite_passed(reports);
      out << (passed ? "suite passed" : "suite FAILED") << '\n';
      return passed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "vgprod: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace vgprod
