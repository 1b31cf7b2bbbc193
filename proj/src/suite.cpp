#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "vgprod/errors.hpp"
#include "vgprod/format.hpp"
#include "vgprod/product_normal.hpp"
#include "vgprod/special_functions.hpp"
#include "vgprod/verification.hpp"

namespace vgprod {
namespace {

using nlohmann::json;

// FNV-1a; gives every named check its own stream independent of run order.
std::uint64_t stream_for(const std::string& name) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string grid_label(double sx, double sy, double rho) {
  return "sx=" + format_short(sx) + ",sy=" + format_short(sy) + ",rho=" + format_short(rho);
}

double shifted_rho(double rho, double shift) {
  return rho + shift < 1.0 ? rho + shift : rho - shift;
}

template <class Fn>
void for_each_grid_point(const SuiteConfig& cfg, Fn&& fn) {
  for (double sx : cfg.sigma_x) {
    for (double sy : cfg.sigma_y) {
      for (double rho : cfg.rho) {
        fn(BivariateNormalZeroMean(sx, sy, rho), grid_label(sx, sy, rho));
      }
    }
  }
}

// ---- config parsing ------------------------------------------------------

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw ConfigError("suite config: " + path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) config_error(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) config_error(path + key, "unknown key");
  }
}

void read(const json& obj, const std::string& path, const char* key, double& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number()) config_error(path + key, "expected a number");
  out = v.get<double>();
}

void read(const json& obj, const std::string& path, const char* key, std::uint64_t& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) config_error(path + key, "expected a non-negative integer");
  out = v.get<std::uint64_t>();
}

void read_count(const json& obj, const std::string& path, const char* key, std::size_t& out,
                std::size_t minimum) {
  std::uint64_t v = out;
  read(obj, path, key, v);
  if (v < minimum) config_error(path + key, "must be at least " + std::to_string(minimum));
  out = static_cast<std::size_t>(v);
}

void read(const json& obj, const std::string& path, const char* key, std::vector<double>& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_array() || v.empty()) config_error(path + key, "expected a non-empty array");
  out.clear();
  for (const auto& e : v) {
    if (!e.is_number()) config_error(path + key, "expected numbers");
    out.push_back(e.get<double>());
  }
}

// "line L, column C" for a byte offset into text.
std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

SuiteConfig parse_suite_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("suite config: parse error at " + position(text, e.byte) + ": " + e.what());
  }
  SuiteConfig cfg;
  check_keys(doc, "",
             {"seed", "alpha", "ks_samples", "grid", "mean_law", "closure", "moments", "bessel",
              "normalization_tol", "density_points", "identity_tol", "oracle_tol", "collapse",
              "negative_shift"});
  read(doc, "", "seed", cfg.seed);
  read(doc, "", "alpha", cfg.alpha);
  if (cfg.alpha != 0.01 && cfg.alpha != 0.05) config_error("alpha", "must be 0.01 or 0.05");
  read_count(doc, "", "ks_samples", cfg.ks_samples, 100);

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    check_keys(g, "grid.", {"sigma_x", "sigma_y", "rho"});
    read(g, "grid.", "sigma_x", cfg.sigma_x);
    read(g, "grid.", "sigma_y", cfg.sigma_y);
    read(g, "grid.", "rho", cfg.rho);
  }
  if (doc.contains("mean_law")) {
    const json& m = doc.at("mean_law");
    check_keys(m, "mean_law.", {"sigma_x", "sigma_y", "rho", "n", "blocks"});
    read(m, "mean_law.", "sigma_x", cfg.mean_sigma_x);
    read(m, "mean_law.", "sigma_y", cfg.mean_sigma_y);
    read(m, "mean_law.", "rho", cfg.mean_rho);
    if (m.contains("n")) {
      const json& ns = m.at("n");
      if (!ns.is_array() || ns.empty()) config_error("mean_law.n", "expected a non-empty array");
      cfg.mean_n.clear();
      for (const auto& e : ns) {
        if (!e.is_number_unsigned() || e.get<std::uint64_t>() < 2) {
          config_error("mean_law.n", "expected integers >= 2");
        }
        cfg.mean_n.push_back(e.get<std::size_t>());
      }
    }
    read_count(m, "mean_law.", "blocks", cfg.mean_blocks, 100);
  }
  if (doc.contains("closure")) {
    const json& c = doc.at("closure");
    check_keys(c, "closure.", {"params", "samples"});
    if (c.contains("params")) {
      const json& ps = c.at("params");
      if (!ps.is_array() || ps.empty()) config_error("closure.params", "expected a non-empty array");
      cfg.closure_params.clear();
      for (const auto& p : ps) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
          config_error("closure.params", "expected [theta, sigma] pairs");
        }
        cfg.closure_params.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
    }
    read_count(c, "closure.", "samples", cfg.closure_samples, 100);
  }
  if (doc.contains("moments")) {
    const json& m = doc.at("moments");
    check_keys(m, "moments.", {"sigma_x", "sigma_y", "rho", "samples", "k_sigma"});
    read(m, "moments.", "sigma_x", cfg.moment_sigma_x);
    read(m, "moments.", "sigma_y", cfg.moment_sigma_y);
    read(m, "moments.", "rho", cfg.moment_rho);
    read_count(m, "moments.", "samples", cfg.moment_samples, 10'000);
    read(m, "moments.", "k_sigma", cfg.k_sigma);
  }
  if (doc.contains("bessel")) {
    const json& b = doc.at("bessel");
    check_keys(b, "bessel.", {"orders", "args", "tol"});
    read(b, "bessel.", "orders", cfg.bessel_orders);
    read(b, "bessel.", "args", cfg.bessel_args);
    read(b, "bessel.", "tol", cfg.bessel_tol);
  }
  read(doc, "", "normalization_tol", cfg.normalization_tol);
  read(doc, "", "density_points", cfg.density_points);
  read(doc, "", "identity_tol", cfg.identity_tol);
  read(doc, "", "oracle_tol", cfg.oracle_tol);
  if (doc.contains("collapse")) {
    const json& c = doc.at("collapse");
    check_keys(c, "collapse.", {"points", "from", "to", "tol"});
    read_count(c, "collapse.", "points", cfg.collapse_points, 2);
    read(c, "collapse.", "from", cfg.collapse_from);
    read(c, "collapse.", "to", cfg.collapse_to);
    read(c, "collapse.", "tol", cfg.collapse_tol);
  }
  read(doc, "", "negative_shift", cfg.negative_shift);
  if (!(cfg.negative_shift > 0.0)) config_error("negative_shift", "must be positive");
  return cfg;
}

std::vector<GofReport> check_bessel_oracle(const SuiteConfig& cfg) {
  double worst = 0.0;
  std::string where = "none";
  for (double nu : cfg.bessel_orders) {
    for (double x : cfg.bessel_args) {
      const double reference = bessel_k_by_quadrature(nu, x);
      const double rel = std::fabs(bessel_k(nu, x) - reference) / reference;
      if (!(rel <= worst)) {
        worst = rel;
        where = "nu=" + format_short(nu) + ",x=" + format_short(x);
      }
    }
  }
  return {make_report("bessel_oracle", worst, cfg.bessel_tol,
                      cfg.bessel_orders.size() * cfg.bessel_args.size(), 0,
                      "max relative error vs integral quadrature at " + where)};
}

std::vector<GofReport> check_normalization_grid(const SuiteConfig& cfg) {
  std::vector<GofReport> out;
  for_each_grid_point(cfg, [&](const BivariateNormalZeroMean& bv, const std::string& label) {
    const VarianceGamma d = product_distribution(bv);
    out.push_back(check_normalization([&d](double x) { return pdf(d, x); }, 0.0,
                                      cfg.normalization_tol, "normalization/" + label));
  });
  const BivariateNormalZeroMean base(cfg.mean_sigma_x, cfg.mean_sigma_y, cfg.mean_rho);
  for (std::size_t n : cfg.mean_n) {
    const MeanLawRequest req{base, n};
    out.push_back(check_normalization([&req](double x) { return pdf_mean(req, x); }, 0.0,
                                      cfg.normalization_tol,
                                      "normalization/mean," +
                                          grid_label(cfg.mean_sigma_x, cfg.mean_sigma_y,
                                                     cfg.mean_rho) +
                                          ",n=" + std::to_string(n)));
  }
  return out;
}

std::vector<GofReport> check_product_law(const SuiteConfig& cfg) {
  std::vector<GofReport> out;
  for_each_grid_point(cfg, [&](const BivariateNormalZeroMean& bv, const std::string& label) {
    const std::string name = "product_law_ks/" + label;
    RngStream rng(cfg.seed, stream_for(name));
    const SampleBatch batch = sample_product(bv, rng, cfg.ks_samples);
    out.push_back(ks_test(batch, vg_cdf_function(product_distribution(bv)), cfg.alpha, name));

    const BivariateNormalZeroMean wrong(bv.sigma_x(), bv.sigma_y(),
                                        shifted_rho(bv.rho(), cfg.negative_shift));
    GofReport neg = ks_test(batch, vg_cdf_function(product_distribution(wrong)), cfg.alpha,
                            "negative/" + name);
    neg.details += " compared_rho=" + format_short(wrong.rho());
    out.push_back(std::move(neg));
  });
  return out;
}

std::vector<GofReport> check_mean_law(const SuiteConfig& cfg) {
  std::vector<GofReport> out;
  const BivariateNormalZeroMean base(cfg.mean_sigma_x, cfg.mean_sigma_y, cfg.mean_rho);
  for (std::size_t n : cfg.mean_n) {
    const std::string name = "mean_law_ks/" +
                             grid_label(cfg.mean_sigma_x, cfg.mean_sigma_y, cfg.mean_rho) +
                             ",n=" + std::to_string(n);
    const MeanLawRequest req{base, n};
    RngStream rng(cfg.seed, stream_for(name));
    const SampleBatch batch = sample_mean(req, rng, cfg.mean_blocks);
    out.push_back(ks_test(batch, vg_cdf_function(mean_distribution(req)), cfg.alpha, name));
  }
  return out;
}

std::vector<GofReport> check_closed_forms(const SuiteConfig& cfg) {
  double worst = 0.0;
  std::string where = "none";
  std::size_t count = 0;
  const auto track = [&](double closed, double general, const std::string& at) {
    ++count;
    const double rel = std::fabs(closed - general) / std::fabs(general);
    if (!(rel <= worst)) {
      worst = rel;
      where = at;
    }
  };
  for_each_grid_point(cfg, [&](const BivariateNormalZeroMean& bv, const std::string& label) {
    const VarianceGamma z = product_distribution(bv);
    std::vector<VarianceGamma> means;
    for (std::size_t n : cfg.mean_n) means.push_back(mean_distribution({bv, n}));
    for (double x : cfg.density_points) {
      const std::string at = label + ",x=" + format_short(x);
      track(pdf_product(bv, x), pdf(z, x), at);
      for (std::size_t k = 0; k < cfg.mean_n.size(); ++k) {
        track(pdf_mean({bv, cfg.mean_n[k]}, x), pdf(means[k], x),
              at + ",n=" + std::to_string(cfg.mean_n[k]));
      }
    }
  });
  return {make_report("closed_form_identity", worst, cfg.identity_tol, count, 0,
                      "max relative difference closed form vs general density at " + where)};
}

std::vector<GofReport> check_density_oracle(const SuiteConfig& cfg) {
  double worst = 0.0;
  std::string where = "none";
  std::size_t count = 0;
  for_each_grid_point(cfg, [&](const BivariateNormalZeroMean& bv, const std::string& label) {
    for (double x : cfg.density_points) {
      ++count;
      const double diff = std::fabs(pdf_product(bv, x) - oracle_pdf_product(bv, x));
      if (!(diff <= worst)) {
        worst = diff;
        where = label + ",x=" + format_short(x);
      }
    }
  });
  return {make_report("density_oracle", worst, cfg.oracle_tol, count, 0,
                      "max absolute difference vs change-of-variables quadrature at " + where)};
}

std::vector<GofReport> check_mean_collapse(const SuiteConfig& cfg) {
  const MeanLawRequest req{BivariateNormalZeroMean(1.0, 1.0, 0.0), 2};
  const std::size_t steps = cfg.collapse_points;
  double worst = 0.0;
  double where = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double x = (cfg.collapse_from * static_cast<double>(steps - 1 - i) +
                      cfg.collapse_to * static_cast<double>(i)) /
                     static_cast<double>(steps - 1);
    const double diff = std::fabs(pdf_mean(req, x) - std::exp(-2.0 * std::fabs(x)));
    if (!(diff <= worst)) {
      worst = diff;
      where = x;
    }
  }
  return {make_report("mean_collapse", worst, cfg.collapse_tol, steps, 0,
                      "max |pdf_mean - exp(-2|x|)| at x=" + format_number(where))};
}

std::vector<GofReport> check_closure(const SuiteConfig& cfg) {
  std::vector<GofReport> out;
  for (const auto& [theta, sigma] : cfg.closure_params) {
    const std::string label = "theta=" + format_short(theta) + ",sigma=" + format_short(sigma);
    const VarianceGamma one = make_vg(1.0, theta, sigma, 0.0);

    const std::string two_normal_name = "two_normal_ks/" + label;
    RngStream rng(cfg.seed, stream_for(two_normal_name));
    std::vector<double> values;
    values.reserve(cfg.closure_samples);
    for (std::size_t i = 0; i < cfg.closure_samples; ++i) {
      const double u = rng.normal();
      const double v = rng.normal();
      values.push_back(theta * u * u + sigma * u * v);
    }
    const SampleBatch two_normal =
        make_sample_batch(std::move(values), cfg.seed, rng.stream_id(), "theta_u2_plus_sigma_uv");
    out.push_back(ks_test(two_normal, vg_cdf_function(one), cfg.alpha, two_normal_name));

    const std::string convolution_name = "convolution_ks/" + label;
    RngStream first(cfg.seed, stream_for(convolution_name + "#1"));
    RngStream second(cfg.seed, stream_for(convolution_name + "#2"));
    SampleBatch sums = sample(one, first, cfg.closure_samples);
    const SampleBatch other = sample(one, second, cfg.closure_samples);
    for (std::size_t i = 0; i < sums.values.size(); ++i) sums.values[i] += other.values[i];
    sums.generator = "variance_gamma_pair_sum";
    out.push_back(ks_test(sums, vg_cdf_function(convolve(one, one)), cfg.alpha, convolution_name));
  }
  return out;
}

std::vector<GofReport> check_moments(const SuiteConfig& cfg) {
  const BivariateNormalZeroMean bv(cfg.moment_sigma_x, cfg.moment_sigma_y, cfg.moment_rho);
  const std::string name =
      "moments/" + grid_label(cfg.moment_sigma_x, cfg.moment_sigma_y, cfg.moment_rho);
  RngStream rng(cfg.seed, stream_for(name));
  const SampleBatch batch = sample_product(bv, rng, cfg.moment_samples);
  const Moments expected = moments(product_distribution(bv));

  const BivariateNormalZeroMean wrong(bv.sigma_x(), bv.sigma_y(),
                                      shifted_rho(bv.rho(), cfg.negative_shift));
  const Moments wrong_moments = moments(product_distribution(wrong));
  return {moment_check(batch, expected.mean, expected.variance, cfg.k_sigma, name),
          moment_check(batch, wrong_moments.mean, wrong_moments.variance, cfg.k_sigma,
                       "negative/" + name)};
}

std::vector<GofReport> run_suite(const SuiteConfig& cfg) {
  std::vector<GofReport> all;
  for (auto* group : {&check_bessel_oracle, &check_normalization_grid, &check_product_law,
                      &check_mean_law, &check_closed_forms, &check_density_oracle,
                      &check_mean_collapse, &check_closure, &check_moments}) {
    auto reports = group(cfg);
    std::move(reports.begin(), reports.end(), std::back_inserter(all));
  }
  std::stable_sort(all.begin(), all.end(), [](const GofReport& a, const GofReport& b) {
    return a.test_name < b.test_name;
  });
  return all;
}

bool suite_passed(std::span<const GofReport> reports) {
  if (reports.empty()) return false;
  return std::all_of(reports.begin(), reports.end(), [](const GofReport& r) {
    return is_negative_control(r) ? !r.passed : r.passed;
  });
}

}  // namespace vgprod
