// Copyright 2026 The finitepop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "finitepop/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "finitepop/csv.hpp"
#include "finitepop/eig.hpp"
#include "finitepop/error.hpp"
#include "finitepop/matrices.hpp"
#include "finitepop/stats.hpp"
#include "finitepop/tw.hpp"

namespace finitepop::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

// Writes `doc` to `path`, or to `out` when path is empty.
void emit_json(const json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

class Manifest {
 public:
  explicit Manifest(std::string command)
      : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

  json finish(json config, const std::optional<sampling::SeedSpec>& seed,
              const std::optional<std::string>& input_text) const {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json m = {{"command", command_},
              {"version", FINITEPOP_VERSION},
              {"config", std::move(config)},
              {"duration_seconds", secs},
              {"threads", stats::thread_count()}};
    m["seed"] = seed ? json(std::to_string(seed->master_seed)) : json(nullptr);
    m["input_checksum"] =
        input_text ? json("fnv1a64:" + hex64(tw::checksum(*input_text))) : json(nullptr);
    return m;
  }

 private:
  std::string command_;
  std::chrono::steady_clock::time_point start_;
};

struct PaOptions {
  std::string input;
  std::string method = "tw";
  std::string variant = "b2";
  double percentile = 0.95;
  std::size_t perms = 1000;
  std::optional<std::size_t> kmax;
  std::string seed = "0";
  bool transpose = false;
  std::string out;
  std::string scree;
};

void cmd_pa(const PaOptions& o, std::ostream& out) {
  Manifest manifest("pa");
  const std::string text = csv::read_file(o.input);
  const DataMatrix b = csv::parse(text, o.transpose).matrix;
  pa::PaConfig cfg;
  cfg.method = o.method == "mc" ? pa::Method::kMonteCarlo : pa::Method::kTwDirect;
  cfg.variant = o.variant == "raw"  ? pa::Variant::kRaw
                : o.variant == "b1" ? pa::Variant::kCenteredB1
                                    : pa::Variant::kStandardizedB2;
  cfg.percentile = o.percentile;
  cfg.num_permutations = o.perms;
  cfg.max_factors = o.kmax.value_or(std::min<std::size_t>({10, b.rows(), b.cols()}));
  cfg.seed = sampling::parse_seed(o.seed);
  const pa::PaResult r = pa::run(b, cfg);

  if (!o.scree.empty()) {
    std::string csv = "factor,observed,threshold\n";
    for (std::size_t j = 0; j < r.observed.size(); ++j) {
      csv += std::to_string(j + 1) + "," + fmt(r.observed[j]) + "," + fmt(r.thresholds[j]) + "\n";
    }
    write_text(o.scree, csv);
  }
  json config = {{"input", o.input},
                 {"method", pa::to_string(cfg.method)},
                 {"variant", pa::to_string(cfg.variant)},
                 {"percentile", cfg.percentile},
                 {"num_permutations", cfg.num_permutations},
                 {"max_factors", cfg.max_factors},
                 {"transpose", o.transpose}};
  json doc = {{"manifest", manifest.finish(std::move(config), cfg.seed, text)},
              {"result", to_json(r)}};
  emit_json(doc, o.out, out);
}

struct NullOptions {
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t perms = 1000;
  std::string seed = "0";
  std::string percentiles = "0.05,0.5,0.95";
  std::string out;
  std::string csv;
};

void cmd_simulate_null(const NullOptions& o, std::ostream& out) {
  Manifest manifest("simulate-null");
  const std::vector<double> levels = csv::parse_numbers(o.percentiles);
  const sampling::SeedSpec seed = sampling::parse_seed(o.seed);
  const pa::NullTable t = pa::null_percentile_table(o.p, o.n, levels, o.perms, seed);
  if (!o.csv.empty()) write_text(o.csv, null_table_csv(t));
  json config = {{"p", o.p}, {"n", o.n}, {"num_permutations", o.perms}, {"percentiles", levels}};
  json doc = {{"manifest", manifest.finish(std::move(config), seed, std::nullopt)},
              {"table", to_json(t)}};
  emit_json(doc, o.out, out);
}

struct EdgeOptions {
  std::string tvals;
  bool identity = false;
  double c = 0.0;
  double y = 1.0;
  std::string out;
};

void cmd_edge(const EdgeOptions& o, std::ostream& out) {
  Manifest manifest("edge");
  std::optional<std::string> text;
  std::vector<double> t{1.0};
  if (!o.tvals.empty()) {
    text = csv::read_file(o.tvals);
    t = csv::parse_numbers(*text);
  }
  const edge::PopulationShape shape(t, o.c, o.y);
  const edge::EdgeParams ep = edge::edge_params(shape);
  json config = {{"c_n", o.c},
                 {"y_n", o.y},
                 {"tvals", o.tvals.empty() ? json("identity") : json(o.tvals)},
                 {"p", t.size()}};
  json doc = {{"manifest", manifest.finish(std::move(config), std::nullopt, text)},
              {"edge", to_json(ep)}};
  emit_json(doc, o.out, out);
}

struct TwOptions {
  std::optional<double> quantile;
  std::optional<double> cdf;
  std::optional<double> pvalue;
};

void cmd_tw(const TwOptions& o, std::ostream& out) {
  const int given = o.quantile.has_value() + o.cdf.has_value() + o.pvalue.has_value();
  if (given != 1) throw InputError("tw needs exactly one of --quantile, --cdf, --pvalue");
  double v = 0.0;
  if (o.quantile) v = tw::tw1_quantile(*o.quantile);
  if (o.cdf) v = tw::tw1_cdf(*o.cdf);
  if (o.pvalue) v = tw::tw1_pvalue(*o.pvalue);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out << buf << "\n";
}

struct SpectrumOptions {
  std::string input;
  std::string matrix = "scov";
  bool transpose = false;
  bool overlay = false;
  std::size_t grid = 2000;
  std::string out;
  std::string density;
  std::string manifest;
};

void cmd_spectrum(const SpectrumOptions& o, std::ostream& out) {
  Manifest manifest("spectrum");
  const std::string text = csv::read_file(o.input);
  const DataMatrix y = csv::parse(text, o.transpose).matrix;
  const std::size_t p = y.rows();
  const std::size_t n = y.cols();
  SymMatrix m = o.matrix == "spatial-sign" ? spatial_sign(y)
                : o.matrix == "spearman"   ? spearman(y)
                                           : scov(y, n);
  const eig::Spectrum spec = eig::eigs_sym(m);

  std::string csv = "index,eigenvalue\n";
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    csv += std::to_string(i + 1) + "," + fmt(spec.values[i]) + "\n";
  }
  if (o.out.empty()) {
    out << csv;
  } else {
    write_text(o.out, csv);
  }

  json summary = {{"p", p}, {"n", n}, {"largest_eigenvalue", spec.values.front()}};
  if (o.overlay) {
    std::vector<double> t(p, 1.0);
    if (o.matrix == "scov") {
      for (std::size_t i = 0; i < p; ++i) t[i] = m(i, i);
    }
    const edge::PopulationShape shape(t, static_cast<double>(p) / static_cast<double>(n));
    const edge::LimitingCdf cdf(shape, o.grid);
    std::vector<double> ascending(spec.values.rbegin(), spec.values.rend());
    summary["ks_distance"] = stats::ks_distance(ascending, [&](double x) { return cdf(x); });
    summary["limiting_mass"] = cdf.raw_mass();
    if (!o.density.empty()) {
      std::string dcsv = "x,density\n";
      for (std::size_t i = 0; i < cdf.grid().size(); ++i) {
        dcsv += fmt(cdf.grid()[i]) + "," + fmt(cdf.density()[i]) + "\n";
      }
      write_text(o.density, dcsv);
    }
  }
  // The manifest goes to its own file, or to stdout when the eigenvalues
  // were written to a file; a pure stdout pipeline gets the CSV only.
  if (!o.manifest.empty() || !o.out.empty()) {
    json config = {{"input", o.input},
                   {"matrix", o.matrix},
                   {"transpose", o.transpose},
                   {"density_overlay", o.overlay}};
    json doc = {{"manifest", manifest.finish(std::move(config), std::nullopt, text)},
                {"spectrum", summary}};
    emit_json(doc, o.manifest, out);
  }
}

}  // namespace

json to_json(const edge::EdgeParams& ep) {
  json j = {{"xi_plus", ep.xi_plus},
            {"e_plus", ep.e_plus},
            {"gamma0", ep.gamma0},
            {"convention_note", ep.convention_note}};
  j["warning"] = ep.warning ? json(*ep.warning) : json(nullptr);
  return j;
}

json to_json(const pa::PaResult& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"factor_index", s.factor_index},
                     {"observed_eigenvalue", s.observed},
                     {"threshold", s.threshold},
                     {"normalized_stat", number_or_null(s.normalized_stat)},
                     {"p_value", s.p_value},
                     {"selected", s.selected}});
  }
  json j = {{"k_selected", r.k_selected},
            {"p", r.p},
            {"n", r.n},
            {"method", pa::to_string(r.config.method)},
            {"variant", pa::to_string(r.config.variant)},
            {"percentile", r.config.percentile},
            {"max_factors", r.config.max_factors},
            {"seed", std::to_string(r.config.seed.master_seed)},
            {"steps", std::move(steps)}};
  j["num_permutations"] = r.config.method == pa::Method::kMonteCarlo
                              ? json(r.config.num_permutations)
                              : json(nullptr);
  j["edge"] = r.edge ? to_json(*r.edge) : json(nullptr);
  return j;
}

json to_json(const pa::NullTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    rows.push_back({{"percentile", row.percentile}, {"empirical", row.empirical}, {"tw", row.tw}});
  }
  return {{"p", t.p},
          {"n", t.n},
          {"num_permutations", t.num_permutations},
          {"seed", std::to_string(t.seed.master_seed)},
          {"edge", to_json(t.edge)},
          {"rows", std::move(rows)}};
}

std::string null_table_csv(const pa::NullTable& t) {
  std::string csv = "percentile,empirical,tw_law\n";
  for (const auto& row : t.rows) {
    csv += fmt(row.percentile) + "," + fmt(row.empirical) + "," + fmt(row.tw) + "\n";
  }
  return csv;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-population sample covariance spectra and parallel analysis"};
  app.require_subcommand(1);
  std::function<void()> action;

  PaOptions pa_opts;
  auto* pa_cmd = app.add_subcommand("pa", "select the number of factors by parallel analysis");
  pa_cmd->add_option("input", pa_opts.input, "CSV data, rows are variables")->required();
  pa_cmd->add_option("--method", pa_opts.method, "mc (permutations) or tw (direct threshold)")
      ->check(CLI::IsMember({"mc", "tw"}));
  pa_cmd->add_option("--variant", pa_opts.variant, "raw, b1 (centered) or b2 (standardized)")
      ->check(CLI::IsMember({"raw", "b1", "b2"}));
  pa_cmd->add_option("--percentile", pa_opts.percentile, "threshold percentile in (0, 1)");
  pa_cmd->add_option("--perms", pa_opts.perms, "number of permutations (mc)");
  pa_cmd->add_option("--kmax", pa_opts.kmax, "maximum number of factors examined");
  pa_cmd->add_option("--seed", pa_opts.seed, "master seed, decimal or 0x hex");
  pa_cmd->add_flag("--transpose", pa_opts.transpose, "input rows are observations");
  pa_cmd->add_option("--out", pa_opts.out, "JSON output file (default stdout)");
  pa_cmd->add_option("--scree", pa_opts.scree, "write observed eigenvalues and thresholds as CSV");
  pa_cmd->callback([&] { action = [&] { cmd_pa(pa_opts, out); }; });

  NullOptions null_opts;
  auto* null_cmd =
      app.add_subcommand("simulate-null", "percentiles of the permuted largest eigenvalue");
  null_cmd->add_option("--p", null_opts.p, "variables")->required();
  null_cmd->add_option("--n", null_opts.n, "observations")->required();
  null_cmd->add_option("--perms", null_opts.perms, "number of permutations");
  null_cmd->add_option("--seed", null_opts.seed, "master seed, decimal or 0x hex");
  null_cmd->add_option("--percentiles", null_opts.percentiles, "comma-separated levels in (0, 1)");
  null_cmd->add_option("--out", null_opts.out, "JSON output file (default stdout)");
  null_cmd->add_option("--csv", null_opts.csv, "CSV table output file");
  null_cmd->callback([&] { action = [&] { cmd_simulate_null(null_opts, out); }; });

  EdgeOptions edge_opts;
  auto* edge_cmd = app.add_subcommand("edge", "edge location and TW scale of the limiting law");
  auto* tv = edge_cmd->add_option("--tvals", edge_opts.tvals, "file of population variances");
  auto* id = edge_cmd->add_flag("--identity", edge_opts.identity, "population covariance I");
  tv->excludes(id);
  edge_cmd->add_option("--c", edge_opts.c, "dimension ratio p/n")->required();
  edge_cmd->add_option("--y", edge_opts.y, "sampling ratio n/N");
  edge_cmd->add_option("--out", edge_opts.out, "JSON output file (default stdout)");
  edge_cmd->callback([&] {
    action = [&] {
      if (edge_opts.tvals.empty() && !edge_opts.identity) {
        throw InputError("edge needs --tvals FILE or --identity");
      }
      cmd_edge(edge_opts, out);
    };
  });

  TwOptions tw_opts;
  auto* tw_cmd = app.add_subcommand("tw", "type-1 Tracy-Widom distribution");
  tw_cmd->add_option("--quantile", tw_opts.quantile, "quantile at level q");
  tw_cmd->add_option("--cdf", tw_opts.cdf, "CDF at s");
  tw_cmd->add_option("--pvalue", tw_opts.pvalue, "upper tail 1 - CDF at s");
  tw_cmd->callback([&] { action = [&] { cmd_tw(tw_opts, out); }; });

  SpectrumOptions spec_opts;
  auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of a data-derived matrix");
  spec_cmd->add_option("input", spec_opts.input, "CSV data, rows are variables")->required();
  spec_cmd->add_option("--matrix", spec_opts.matrix, "scov, spatial-sign or spearman")
      ->check(CLI::IsMember({"scov", "spatial-sign", "spearman"}));
  spec_cmd->add_flag("--transpose", spec_opts.transpose, "input rows are observations");
  spec_cmd->add_flag("--density-overlay", spec_opts.overlay,
                     "compare with the limiting density of the matching population shape");
  spec_cmd->add_option("--grid", spec_opts.grid, "density grid points");
  spec_cmd->add_option("--out", spec_opts.out, "eigenvalue CSV file (default stdout)");
  spec_cmd->add_option("--density", spec_opts.density, "density curve CSV file");
  spec_cmd->add_option("--manifest", spec_opts.manifest, "JSON manifest file");
  spec_cmd->callback([&] { action = [&] { cmd_spectrum(spec_opts, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const csv::ParseError& e) {
    err << "error: parse failure at line " << e.line() << ", column " << e.column() << ": "
        << e.what() << "\n";
    return kExitInput;
  } catch (const DegenerateError& e) {
    err << "error: degenerate data: " << e.what() << "\n";
    if (!e.rows().empty()) {
      err << "rows (1-based):";
      for (std::size_t r : e.rows()) err << " " << r + 1;
      err << "\n";
    }
    return kExitDegenerate;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << " (residual " << e.residual() << ", "
        << e.iterations() << " iterations)\n";
    return kExitNumerical;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace finitepop::cli
