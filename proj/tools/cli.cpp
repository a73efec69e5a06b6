#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "obsel/catalog.hpp"
#include "obsel/errors.hpp"
#include "obsel/fermi.hpp"
#include "obsel/scenario_format.hpp"

namespace obsel::cli {
namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string decimal(const Quantity& q) { return q.as_magnitude().to_string(4); }

// Display forms of the posterior probabilities; magnitude-mode posteriors
// are renormalized in log10 form so tiny probabilities survive.
std::vector<Quantity> posterior_values(const Posterior& p) {
  if (p.exact_probs()) return {p.exact_probs()->begin(), p.exact_probs()->end()};
  std::vector<Magnitude> w;
  for (const auto& q : p.weights()) w.push_back(q.as_magnitude());
  const Magnitude total = mag_sum(w);
  std::vector<Quantity> out;
  for (const auto& m : w) out.emplace_back(m / total);
  return out;
}

struct Table {
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream& out, std::string_view indent = "") const {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows) {
      std::string line(indent);
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      out << line << "\n";
    }
  }
};

void print_posterior(std::ostream& out, const Posterior& p) {
  const auto values = posterior_values(p);
  Table t;
  for (std::size_t i = 0; i < p.size(); ++i) t.rows.push_back({p.names()[i], to_display(values[i])});
  out << "posterior:\n";
  t.print(out, "  ");

  Table l;
  std::vector<std::string> header{"stage"};
  for (const auto& n : p.names()) header.push_back(n);
  header.push_back("");
  l.rows.push_back(header);
  std::vector<std::string> prior{"prior"};
  for (const auto& q : p.prior()) prior.push_back(q.to_literal());
  l.rows.push_back(prior);
  for (const auto& s : p.ledger()) {
    std::vector<std::string> row{s.label};
    for (const auto& q : s.multipliers) row.push_back(q.to_literal());
    row.push_back(s.note.empty() ? "" : "(" + s.note + ")");
    l.rows.push_back(row);
  }
  out << "odds ledger:\n";
  l.print(out, "  ");

  if (p.size() == 2) {
    const auto& n = p.names();
    out << fmt::format("odds {} : {} after each stage:", n[0], n[1]);
    try {
      for (const auto& q : p.cumulative_odds(n[0], n[1])) out << " " << q.to_literal();
    } catch (const DomainError&) {
      out << " (undefined: " << n[1] << " has zero weight)";
    }
    out << "\n";
  }
}

void print_posterior_csv(std::ostream& out, const Posterior& p) {
  const auto values = posterior_values(p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << fmt::format("posterior,,{},{},{}\n", csv_field(p.names()[i]), csv_field(values[i].to_literal()),
                       decimal(values[i]));
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << fmt::format("ledger,prior,{},{},{}\n", csv_field(p.names()[i]), p.prior()[i].to_literal(),
                       decimal(p.prior()[i]));
  }
  for (const auto& s : p.ledger()) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      out << fmt::format("ledger,{},{},{},{}\n", csv_field(s.label), csv_field(p.names()[i]),
                         s.multipliers[i].to_literal(), decimal(s.multipliers[i]));
    }
  }
}

// ---- run ----

struct RunOptions {
  std::string target;
  std::string rule;
  std::string cls;
  std::vector<std::string> params;
  std::string format = "text";
  bool fnc_limit = false;
};

int run_entry_command(const CatalogEntry& entry, const RunOptions& o, std::ostream& out) {
  Params params;
  auto has_param = [&](std::string_view name) {
    return std::any_of(entry.params.begin(), entry.params.end(), [&](const ParamSpec& s) { return s.name == name; });
  };
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigurationError("--param expects key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (!o.rule.empty()) {
    if (!has_param("rule")) throw ConfigurationError(entry.name + " has no rule parameter");
    params["rule"] = o.rule;
  }
  if (!o.cls.empty()) {
    if (!has_param("class")) throw ConfigurationError(entry.name + " has no class parameter");
    params["class"] = o.cls;
  }
  const RunResult r = run_entry(entry, params);

  if (o.format == "csv") {
    out << "kind,stage,name,value,decimal\n";
    for (const auto& x : r.outputs) {
      out << fmt::format("output,,{},{},{}\n", csv_field(x.name),
                         csv_field(x.value ? x.value->to_literal() : x.text), x.value ? decimal(*x.value) : "");
    }
    if (r.posterior) print_posterior_csv(out, *r.posterior);
    return kExitOk;
  }

  std::string args;
  for (const auto& spec : entry.params) {
    auto it = params.find(spec.name);
    args += fmt::format("{}{}={}", args.empty() ? "" : ", ", spec.name, it == params.end() ? spec.default_value : it->second);
  }
  out << entry.name << " (" << args << ")\n";
  for (const auto& x : r.outputs) out << x.name << " = " << x.text << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  if (r.posterior) {
    out << "\n";
    print_posterior(out, *r.posterior);
  }
  return kExitOk;
}

int run_file_command(const RunOptions& o, std::ostream& out) {
  if (!o.params.empty()) throw ConfigurationError("--param applies to catalog entries, not scenario files");
  std::ifstream in(o.target);
  if (!in) throw ConfigurationError("cannot read '" + o.target + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const ScenarioDocument doc = parse_scenario(buf.str());

  Rule rule;
  if (!o.rule.empty()) {
    rule = parse_rule(o.rule);
  } else if (doc.rule) {
    rule = *doc.rule;
  } else {
    throw ConfigurationError("no rule given: pass --rule or add 'rule = ...' to the file");
  }
  std::string cls;
  if (!o.cls.empty()) {
    cls = o.cls;
  } else if (doc.class_name) {
    cls = *doc.class_name;
  } else if (doc.scenario.classes().size() == 1) {
    cls = doc.scenario.classes().front().name;
  } else {
    throw ConfigurationError("no reference class given: pass --class or add 'class = ...' to the file");
  }
  const auto likelihood = o.fnc_limit ? FncLikelihood::kSmallProbabilityLimit : FncLikelihood::kAtLeastOne;
  const Posterior p = posterior_under(rule, doc.scenario, cls, likelihood);

  if (o.format == "csv") {
    out << "kind,stage,name,value,decimal\n";
    print_posterior_csv(out, p);
    return kExitOk;
  }
  out << (doc.name.empty() ? o.target : doc.name) << " (rule=" << to_string(rule) << ", class=" << cls << ")\n";
  const auto values = posterior_values(p);
  for (std::size_t i = 0; i < p.size(); ++i) out << "P(" << p.names()[i] << ") = " << to_display(values[i]) << "\n";
  out << "\n";
  print_posterior(out, p);
  return kExitOk;
}

int run_command(const RunOptions& o, std::ostream& out) {
  for (const auto& e : catalog()) {
    if (e.name == o.target) return run_entry_command(e, o, out);
  }
  if (!std::filesystem::exists(o.target)) {
    throw ConfigurationError("'" + o.target + "' is neither a catalog entry nor a scenario file (see 'obsel list')");
  }
  return run_file_command(o, out);
}

// ---- list / check ----

int list_command(std::ostream& out) {
  for (const auto& e : catalog()) {
    out << e.name << "  " << e.summary << "\n";
    Table t;
    for (const auto& p : e.params) t.rows.push_back({p.name + "=" + p.default_value, p.description});
    t.print(out, "    ");
  }
  return kExitOk;
}

std::string describe_params(const Params& p) {
  std::string s;
  for (const auto& [k, v] : p) s += fmt::format("{}{}={}", s.empty() ? "" : " ", k, v);
  return s.empty() ? "defaults" : s;
}

int check_command(bool verbose, std::ostream& out) {
  const auto outcomes = check_catalog();
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_entry;
  std::size_t passed = 0;
  for (const auto& o : outcomes) {
    auto& [ok, total] = per_entry[o.entry];
    ++total;
    if (o.passed) {
      ++ok;
      ++passed;
    }
    if (verbose || !o.passed) {
      out << fmt::format("{} {} {} [{}]: got {}, want {}{}\n", o.passed ? "PASS" : "FAIL", o.entry, o.expected->output,
                         describe_params(o.expected->params), o.actual.empty() ? "-" : o.actual, o.expected->expected,
                         o.message.empty() ? "" : " (" + o.message + ")");
    }
  }
  Table t;
  t.rows.push_back({"entry", "checks", "result"});
  for (const auto& e : catalog()) {
    const auto [ok, total] = per_entry[e.name];
    t.rows.push_back({e.name, fmt::format("{}/{}", ok, total), ok == total ? "PASS" : "FAIL"});
  }
  t.print(out);
  out << fmt::format("{}/{} checks passed\n", passed, outcomes.size());
  return passed == outcomes.size() ? kExitOk : kExitInternal;
}

// ---- fermi ----

struct FermiOptions {
  double V = 0.0;
  std::uint64_t samples = 200000;
  std::uint64_t seed = 1;
  std::string factor;
  std::string plot;
  bool include_prior = false;
  std::size_t threads = 1;
  double factor_mean10 = -1.0;
  double factor_sd10 = 0.2;
};

int fermi_command(const FermiOptions& o, std::ostream& out) {
  const FermiPrior prior;
  SamplerOptions so;
  so.threads = o.threads;
  const FermiSampleSet s = sample_posterior(prior, {o.V}, o.samples, o.seed, so);

  out << fmt::format("V = {}\nseed = {}\naccepted = {}\nproposals = {}\nacceptance rate = {:.4g}\n", o.V, o.seed,
                     s.accepted_count, s.proposal_count, s.acceptance_rate());
  const Moments mp = log10_p_moments(s);
  const Moments mf = log10_f_moments(s);
  out << fmt::format("log10 p: mean {:.4f} sd {:.4f} (se {:.2g})\n", mp.mean, mp.sd, mp.mean_se);
  out << fmt::format("log10 f: mean {:.4f} sd {:.4f} (se {:.2g})\n", mf.mean, mf.sd, mf.mean_se);

  std::vector<FactorParent> parents;
  if (o.factor.empty() || o.factor == "p") parents.push_back(FactorParent::kP);
  if (o.factor.empty() || o.factor == "f") parents.push_back(FactorParent::kF);
  for (const auto parent : parents) {
    const FactorSpec spec{o.factor_mean10, o.factor_sd10, parent, {}};
    const char* name = parent == FactorParent::kP ? "p1" : "f1";
    if (o.V == 0.0) {
      const FactorSummary a = factor_posterior_analytic(prior, spec);
      out << fmt::format("{} (closed form): mean10 {:.4f} (10^mean10 = {:.4g}) sd10 {:.4f} mean {:.4g}\n", name, a.mean10,
                         std::pow(10.0, a.mean10), a.sd10, a.mean_value);
    } else {
      const FactorSummary f = factor_posterior(prior, spec, s);
      out << fmt::format("{}: mean10 {:.4f} (se {:.2g}) sd10 {:.4f} mean {:.4f} (se {:.2g})\n", name, f.mean10,
                         f.mean10_se, f.sd10, f.mean_value, f.mean_value_se);
    }
  }
  if (!o.plot.empty()) {
    std::ofstream file(o.plot);
    if (!file) throw ConfigurationError("cannot write '" + o.plot + "'");
    file << emit_plot_points(s, prior, o.include_prior).to_csv();
    out << "plot data written to " << o.plot << "\n";
  }
  return kExitOk;
}

// ---- table ----

int marochnik_command(const std::string& regime, double f, const std::string& format, std::ostream& out) {
  std::vector<MarochnikRegime> regimes;
  if (regime.empty() || regime == "few") regimes.push_back(MarochnikRegime::kFew);
  if (regime.empty() || regime == "many") regimes.push_back(MarochnikRegime::kMany);
  struct Col {
    MarochnikClass cls;
    Rule rule;
  };
  const Col cols[] = {{MarochnikClass::kOwnType, Rule::kSsaMinusSia},
                      {MarochnikClass::kOwnType, Rule::kSsaPlusSia},
                      {MarochnikClass::kCombined, Rule::kSsaMinusSia},
                      {MarochnikClass::kCombined, Rule::kSsaPlusSia}};
  if (format == "csv") out << "regime,class,rule,observer,stage,symbol,value\n";
  bool first = true;
  for (const auto r : regimes) {
    std::vector<MarochnikColumn> data;
    for (const auto& c : cols) data.push_back(marochnik_table(r, c.rule, c.cls, f));
    const char* rname = r == MarochnikRegime::kFew ? "few" : "many";
    if (format == "csv") {
      for (std::size_t c = 0; c < 4; ++c) {
        for (int being = 0; being < 2; ++being) {
          const auto& cells = being == 0 ? data[c].planet : data[c].star;
          for (std::size_t i = 0; i < 5; ++i) {
            out << fmt::format("{},{},{},{},{},{},{}\n", rname,
                               cols[c].cls == MarochnikClass::kOwnType ? "own" : "combined", to_string(cols[c].rule),
                               being == 0 ? "planet" : "star", csv_field(kMarochnikStages[i]),
                               cells[i].symbol.value_or(""),
                               cells[i].symbol ? fmt::format("{:.6g}", cells[i].value) : "");
          }
        }
      }
      continue;
    }
    if (!first) out << "\n";
    first = false;
    out << fmt::format("star-beings much {} numerous than planet-beings (f = {})\n",
                       r == MarochnikRegime::kFew ? "less" : "more", f);
    Table t;
    t.rows.push_back({"", "own-type class", "", "", "", "combined class", "", "", ""});
    t.rows.push_back({"", "SSA-SIA", "", "SSA+SIA", "", "SSA-SIA", "", "SSA+SIA", ""});
    t.rows.push_back({"", "planet", "star", "planet", "star", "planet", "star", "planet", "star"});
    for (std::size_t i = 0; i < 5; ++i) {
      std::vector<std::string> row{std::string(kMarochnikStages[i])};
      for (const auto& col : data) {
        row.push_back(col.planet[i].symbol.value_or("-"));
        row.push_back(col.star[i].symbol.value_or("-"));
      }
      t.rows.push_back(row);
    }
    t.print(out);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Observation selection: posteriors under SSA, SIA and FNC, the example catalog and the Fermi model"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List catalog entries and their parameters");

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Run a catalog entry or a scenario file");
  run->add_option("target", ro.target, "Catalog entry name or scenario file")->required();
  run->add_option("--rule", ro.rule, "ssa (= ssa-sia), ssa+sia, fnc or sia");
  run->add_option("--class", ro.cls, "Reference class");
  run->add_option("--param", ro.params, "Entry parameter as key=value (repeatable)");
  run->add_option("--format", ro.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
  run->add_flag("--fnc-limit", ro.fnc_limit, "Use eps*|C| in place of 1-(1-eps)^|C| for scenario files");

  bool verbose = false;
  auto* check = app.add_subcommand("check", "Check every catalog entry against its expected results");
  check->add_flag("-v,--verbose", verbose, "Print every check, not only failures");

  FermiOptions fo;
  auto* fermi = app.add_subcommand("fermi", "Sample the Fermi-model posterior");
  fermi->add_option("--V", fo.V, "Interference opportunity V")->check(CLI::NonNegativeNumber);
  fermi->add_option("--samples", fo.samples, "Accepted samples")->check(CLI::PositiveNumber);
  fermi->add_option("--seed", fo.seed, "Random seed");
  fermi->add_option("--factor", fo.factor, "Report only the sub-factor of p or of f")->check(CLI::IsMember({"p", "f"}));
  fermi->add_option("--factor-mean10", fo.factor_mean10, "Prior mean of log10 of the sub-factor");
  fermi->add_option("--factor-sd10", fo.factor_sd10, "Prior sd of log10 of the sub-factor");
  fermi->add_option("--emit-plot", fo.plot, "Write plot points as CSV to this path");
  fermi->add_flag("--include-prior", fo.include_prior, "Add prior draws to the plot data");
  fermi->add_option("--threads", fo.threads, "Worker threads (results do not depend on this)")->check(CLI::PositiveNumber);

  std::string table_name;
  std::string regime;
  double f = 0.1;
  std::string table_format = "text";
  auto* table = app.add_subcommand("table", "Print a table");
  table->add_option("name", table_name, "Table name")->required()->check(CLI::IsMember({"marochnik"}));
  table->add_option("--regime", regime, "few or many star-beings (default both)")->check(CLI::IsMember({"few", "many"}));
  table->add_option("--f", f, "Fraction of the galaxy where Marochnik's theory allows planets");
  table->add_option("--format", table_format, "Output format")->check(CLI::IsMember({"text", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*list) return list_command(out);
    if (*run) return run_command(ro, out);
    if (*check) return check_command(verbose, out);
    if (*fermi) return fermi_command(fo, out);
    if (*table) return marochnik_command(regime, f, table_format, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"obsel"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace obsel::cli
