// Command-line surface: evaluate models, inspect the expansion, list exact
// coefficient tables, run verification suites, and emit CSV tables.
//
// Exit codes: 0 success, 1 assertion/computation failure, 2 usage or parse
// error, 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <future>
#include <string>
#include <vector>

#include "mrl/csv.hpp"
#include "mrl/expansion.hpp"
#include "mrl/model.hpp"
#include "mrl/oracle.hpp"
#include "verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<mrl::HazardModel> resolve_models(const std::string& spec) {
  if (spec == "all") return mrl::default_catalog();
  return {mrl::parse_model(spec)};
}

int cmd_eval(const std::string& spec, const std::vector<double>& times, int order, double tol) {
  mrl::HazardModel model = mrl::parse_model(spec);
  std::printf("model: %s\n", model.spec().c_str());
  std::printf("%12s %14s %14s %18s %12s %16s %14s %12s\n", "t", "r", "s", "m_quad", "±err",
              ("m_exp(" + std::to_string(order) + ")").c_str(), "m_closed", "r*m_quad");
  for (double t : times) {
    double r = model.hazard(t);
    mrl::QuadResult quad = mrl::mrl_quadrature(model, t, tol);
    double m_exp = mrl::mrl_expansion(model, t, order).value;
    std::string closed = "-";
    if (model.has_closed_form_mrl()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.10g", model.mrl_closed_form(t));
      closed = buf;
    }
    std::printf("%12.6g %14.8g %14.8g %18.12g %12.3g %16.10g %14s %12.8g\n", t, r, 1 / r,
                quad.value, quad.abs_error_estimate, m_exp, closed.c_str(), r * quad.value);
  }
  return kExitOk;
}

int cmd_expand(const std::string& spec, double t, int order) {
  mrl::HazardModel model = mrl::parse_model(spec);
  double r = model.hazard(t);
  mrl::ThetaSequence seq = mrl::theta_terms(model, t, order);
  std::printf("model: %s   t = %.10g   r(t) = %.10g\n", model.spec().c_str(), t, r);
  std::printf("%3s %18s %18s %18s %18s %7s\n", "k", "theta_k", "partial_sum", "c_k",
              "c_k*r^-(k+1)", "agree");
  for (int k = 0; k <= order; ++k) {
    double via = mrl::theta_via_coefficients(model, t, k);
    bool agree = std::abs(seq.terms[k] - via) <= 1e-9 * std::max(1.0, std::abs(seq.terms[k]));
    std::printf("%3d %18.12g %18.12g %18.12g %18.12g %7s\n", k, seq.terms[k], seq.partial_sums[k],
                mrl::c_value(model, t, k), mrl::c_term(model, t, k), agree ? "ok" : "DIFF");
  }
  mrl::QuadResult quad = mrl::mrl_quadrature(model, t, 1e-9);
  std::printf("m_quad = %.12g ± %.3g   (partial sum residual %.3g)\n", quad.value,
              quad.abs_error_estimate, quad.value - seq.partial_sums[order]);
  return kExitOk;
}

int cmd_coeffs(int order, const std::string& form) {
  if (form == "theta") {
    std::printf("theta^%d(s) = %s\n", order, mrl::theta_polynomial_text(order).c_str());
  } else {
    std::printf("c_%d = %s\n", order, mrl::c_polynomial_text(order).c_str());
  }
  return kExitOk;
}

int cmd_table(const std::string& spec, double t_start, double t_end, int steps, int order,
              const std::string& path) {
  mrl::HazardModel model = mrl::parse_model(spec);

  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) {
    grid[i] = steps == 1 ? t_start : t_start + (t_end - t_start) * i / (steps - 1);
  }

  // rows are independent; compute them in parallel, write in index order
  std::vector<std::vector<double>> rows(grid.size());
  std::vector<std::future<void>> jobs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    jobs.push_back(std::async(std::launch::async | std::launch::deferred, [&, i] {
      double t = grid[i];
      double r = model.hazard(t);
      mrl::QuadResult quad = mrl::mrl_quadrature(model, t, 1e-9);
      mrl::ThetaSequence seq = mrl::theta_terms(model, t, order);
      std::vector<double>& row = rows[i];
      row = {t, r, 1 / r, quad.value, quad.abs_error_estimate, seq.partial_sums[order],
             r * quad.value};
      row.insert(row.end(), seq.terms.begin(), seq.terms.end());
    }));
  }
  for (auto& job : jobs) job.get();

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n", path.c_str());
    return kExitIo;
  }
  mrl::CsvWriter writer(out);
  std::vector<std::string> header = {"t", "r", "s", "m_quad", "m_quad_err", "m_exp", "rm_product"};
  for (int k = 0; k <= order; ++k) header.push_back("theta_" + std::to_string(k));
  writer.header(header);
  for (const auto& row : rows) writer.row(row);
  out.flush();
  if (!out) {
    std::fprintf(stderr, "error: short write to '%s'\n", path.c_str());
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mean residual life toolkit: quadrature oracle and asymptotic expansion"};
  app.require_subcommand(1);

  std::string model_spec;
  std::vector<double> times;
  double t = 1.0;
  int order = 4;
  double tol = 1e-9;
  std::string form = "theta";
  std::string suite = "all";
  std::string level = "fast";
  double t_start = 0, t_end = 10;
  int steps = 11;
  std::string csv_path;

  CLI::App* eval = app.add_subcommand("eval", "evaluate r, s, m (quadrature, expansion, closed form)");
  eval->add_option("--model", model_spec, "model spec, name:key=value,...")->required();
  eval->add_option("--t", times, "evaluation time(s)")->required()->delimiter(',');
  eval->add_option("--order", order, "expansion truncation order");
  eval->add_option("--tol", tol, "quadrature relative tolerance");

  CLI::App* expand = app.add_subcommand("expand", "term-by-term expansion table at one time point");
  expand->add_option("--model", model_spec, "model spec")->required();
  expand->add_option("--t", t, "evaluation time")->required();
  expand->add_option("--order", order, "highest term")->check(CLI::Range(0, 8));

  CLI::App* coeffs = app.add_subcommand("coeffs", "exact coefficient tables");
  coeffs->add_option("--order", order, "table order")->required();
  coeffs->add_option("--form", form, "theta|c")->check(CLI::IsMember({"theta", "c"}));

  CLI::App* verify = app.add_subcommand("verify", "run the numerical verification suites");
  verify->add_option("--model", model_spec, "model spec or 'all'")->default_val("all");
  verify->add_option("--suite", suite, "limits|expansion|de1|all")
      ->check(CLI::IsMember({"limits", "expansion", "de1", "all"}));
  verify->add_option("--level", level, "fast|full")->check(CLI::IsMember({"fast", "full"}));

  CLI::App* table = app.add_subcommand("table", "emit a CSV table over a time grid");
  table->add_option("--model", model_spec, "model spec")->required();
  table->add_option("--t-start", t_start, "grid start")->required();
  table->add_option("--t-end", t_end, "grid end")->required();
  table->add_option("--steps", steps, "row count")->check(CLI::PositiveNumber);
  table->add_option("--order", order, "expansion order (theta_0..theta_K columns)");
  table->add_option("--csv", csv_path, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(model_spec, times, order, tol);
    if (*expand) return cmd_expand(model_spec, t, order);
    if (*coeffs) return cmd_coeffs(order, form);
    if (*verify) {
      mrl::verify::Options options;
      options.models = resolve_models(model_spec);
      options.suite = suite;
      options.full = level == "full";
      return mrl::verify::run(options) == 0 ? kExitOk : kExitFailure;
    }
    if (*table) return cmd_table(model_spec, t_start, t_end, steps, order, csv_path);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
