#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "lcap/capacity.hpp"
#include "lcap/error.hpp"
#include "lcap/invariants.hpp"
#include "lcap/machines.hpp"
#include "lcap/montecarlo.hpp"
#include "lcap/pmf.hpp"

namespace lcap::cli {

namespace {

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    auto col = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      const Cell& cell = row[c];
      if (const auto* i = std::get_if<long long>(&cell)) {
        col.push_back(*i);
      } else if (const auto* d = std::get_if<double>(&cell)) {
        // Same 10 significant digits as the CSV.
        col.push_back(std::stod(format_double(*d)));
      } else {
        col.push_back(std::get<std::string>(cell));
      }
    }
    doc[t.columns[c]] = std::move(col);
  }
  os << doc.dump(2) << '\n';
}

struct Options {
  std::vector<int> m;
  int trials = 1000;
  std::uint64_t seed = 42;
  double phi = 0.5;
  int grid = 0;
  int alphabet = 0;
  std::string machine = "empirical_average";
  std::string out;
  std::string format = "csv";
};

std::vector<int> or_default(const std::vector<int>& m, std::vector<int> fallback) {
  return m.empty() ? fallback : m;
}

Table table1(const Options& o) {
  McConfig cfg;
  cfg.m_values = or_default(o.m, {10, 25, 50, 100, 200});
  cfg.trials = o.trials;
  cfg.master_seed = o.seed;
  Table t{{"m", "R_emp_mc", "stderr", "capacity_exact"}, {}};
  for (const McRow& r : simulate_majority(cfg).rows) {
    t.rows.push_back({static_cast<long long>(r.m), r.empirical_risk_mean, r.standard_error, r.capacity});
  }
  return t;
}

Table table2(const Options& o) {
  McConfig cfg;
  cfg.m_values = or_default(o.m, {10, 25, 50, 100, 200});
  cfg.trials = o.trials;
  cfg.master_seed = o.seed;
  Table t{{"m", "R_emp_mc", "stderr", "bound_det", "bound_rand", "true_risk"}, {}};
  for (const McRow& r : simulate_randomized_classifier(cfg).rows) {
    t.rows.push_back(
        {static_cast<long long>(r.m), r.empirical_risk_mean, r.standard_error, r.bound_det, r.bound_rand, 0.5});
  }
  return t;
}

Table fig1(const Options& o) {
  const int points = o.grid > 0 ? o.grid : 101;
  if (points < 2) throw ArgumentError("--grid must be >= 2 for fig1");
  const Pmf reference = Pmf::bernoulli(o.phi);
  Table t{{"s", "tv_exact", "approx_T1", "approx_T2", "approx_T3"}, {}};
  for (int i = 0; i < points; ++i) {
    const double s = static_cast<double>(i) / (points - 1);
    const Pmf p = Pmf::bernoulli(s);
    std::vector<Cell> row{s, tv_distance(p, reference)};
    for (std::size_t steps = 1; steps <= 3; ++steps) row.emplace_back(lemma1_product(p, reference, steps, 0.0).approximation);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table fig3(const Options& o) {
  const int points = o.grid > 0 ? o.grid : 201;
  if (points < 2) throw ArgumentError("--grid must be >= 2 for fig3");
  const std::vector<int> ms = or_default(o.m, {11, 51});
  for (int m : ms) {
    if (m % 2 == 0) throw ArgumentError("fig3 needs odd m");
  }
  Table t{{"m", "phi", "affinity_avg_machine", "affinity_majority"}, {}};
  for (int m : ms) {
    for (int i = 0; i < points; ++i) {
      const double phi = static_cast<double>(i) / (points - 1);
      t.rows.push_back({static_cast<long long>(m), phi, bernoulli_affinity_closed(phi, m),
                        majority_affinity_closed(phi, m)});
    }
  }
  return t;
}

LearningMachine machine_by_name(const std::string& name, std::size_t n) {
  if (name == "empirical_average" || name == "majority") {
    if (n != 2) throw ArgumentError("machine '" + name + "' needs --alphabet 2");
    return name == "majority" ? make_majority_machine() : make_empirical_average_machine();
  }
  if (name == "randomized_label") return make_randomized_label_machine(n);
  if (name == "lazy") return make_lazy_learner(n);
  return make_constant_machine(n);
}

std::string join_distribution(const Pmf& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + format_double(p[i]);
  return s;
}

Table capacity(const Options& o) {
  const std::size_t n = o.alphabet > 0 ? static_cast<std::size_t>(o.alphabet) : 2;
  const LearningMachine machine = machine_by_name(o.machine, n);
  CapacitySearchOptions opts;
  if (o.grid > 0) opts.grid_resolution = 1.0 / o.grid;
  Table t{{"machine", "m", "grid_resolution", "capacity_estimate", "argmax"}, {}};
  for (int m : or_default(o.m, {10})) {
    const CapacityReport r = capacity_search(machine, m, opts);
    t.rows.push_back({r.machine_id, static_cast<long long>(r.m), r.grid_resolution, r.capacity_estimate,
                      join_distribution(r.argmax_distribution)});
  }
  return t;
}

Table sqrt_law(const Options& o) {
  const std::size_t n = o.alphabet > 0 ? static_cast<std::size_t>(o.alphabet) : 4;
  const Pmf p = Pmf::uniform(n);
  Table t{{"m", "lazy_affinity", "sqrt_law_bound"}, {}};
  for (int m : or_default(o.m, {10, 25, 50, 100, 200})) {
    t.rows.push_back({static_cast<long long>(m), lazy_affinity(p, m), sqrt_law_bound(p, m)});
  }
  return t;
}

Table check(const Options& o, bool& all_passed) {
  Table t{{"suite", "instances", "failures", "status"}, {}};
  all_passed = true;
  for (const SuiteResult& r : run_invariant_suites(o.seed, static_cast<std::size_t>(o.trials))) {
    all_passed = all_passed && r.passed();
    t.rows.push_back({r.name, static_cast<long long>(r.instances), static_cast<long long>(r.failures),
                      std::string(r.passed() ? "pass" : "fail")});
  }
  return t;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learning capacity calculator: tables, figure data and inequality checks"};
  app.name("lcap");
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the result to this file instead of stdout");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_m = [&](CLI::App* sub) {
    sub->add_option("--m", o.m, "Training set size (repeatable)")->check(CLI::PositiveNumber)->take_all();
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--trials", o.trials, "Monte Carlo trials per m")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Master seed");
  };

  CLI::App* t1 = app.add_subcommand("table1", "Majority machine: Monte Carlo training error and exact capacity");
  add_m(t1), add_mc(t1), add_common(t1);
  CLI::App* t2 = app.add_subcommand("table2", "Randomized classifier: Monte Carlo training error and bounds");
  add_m(t2), add_mc(t2), add_common(t2);
  CLI::App* f1 = app.add_subcommand("fig1", "Infinite-product approximations of total variation");
  f1->add_option("--grid", o.grid, "Number of s values in [0, 1]")->check(CLI::Range(2, 1000000));
  f1->add_option("--phi", o.phi, "Parameter of the reference Bernoulli")->check(CLI::Range(0.0, 1.0));
  add_common(f1);
  CLI::App* f3 = app.add_subcommand("fig3", "Affinity of the average and majority machines over phi");
  add_m(f3);
  f3->add_option("--grid", o.grid, "Number of phi values in [0, 1]")->check(CLI::Range(2, 1000000));
  add_common(f3);
  CLI::App* cap = app.add_subcommand("capacity", "Grid search for a machine's learning capacity");
  add_m(cap);
  cap->add_option("--machine", o.machine, "Machine")
      ->check(CLI::IsMember({"empirical_average", "majority", "randomized_label", "lazy", "constant"}));
  cap->add_option("--alphabet", o.alphabet, "Observation alphabet size")->check(CLI::Range(1, 6));
  cap->add_option("--grid", o.grid, "Coarse grid subdivisions per unit")->check(CLI::Range(1, 100000));
  add_common(cap);
  CLI::App* sq = app.add_subcommand("sqrt-law", "Lazy learner affinity against the square-root law");
  add_m(sq);
  sq->add_option("--alphabet", o.alphabet, "Alphabet size (uniform distribution)")->check(CLI::Range(1, 64));
  add_common(sq);
  CLI::App* chk = app.add_subcommand("check", "Run the seeded inequality suites");
  chk->add_option("--seed", o.seed, "Master seed");
  chk->add_option("--trials", o.trials, "Instances per suite")->check(CLI::PositiveNumber);
  add_common(chk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  int status = kOk;
  Table table;
  try {
    if (*t1) table = table1(o);
    else if (*t2) table = table2(o);
    else if (*f1) table = fig1(o);
    else if (*f3) table = fig3(o);
    else if (*cap) table = capacity(o);
    else if (*sq) table = sqrt_law(o);
    else {
      bool passed = true;
      table = check(o, passed);
      if (!passed) status = kCheckFailed;
    }
  } catch (const ResourceError& e) {
    err << "lcap: " << e.what() << '\n';
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "lcap: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      err << "lcap: cannot open " << o.out << '\n';
      return kUsage;
    }
    sink = &file;
  }
  if (o.format == "json") write_json(table, *sink);
  else write_csv(table, *sink);
  return status;
}

}  // namespace lcap::cli
