// bppctl: command-line harness for the bonus-penalty payment library.
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bpp/csv.hpp"
#include "bpp/datasets.hpp"
#include "bpp/dominance.hpp"
#include "bpp/ecdf.hpp"
#include "bpp/errors.hpp"
#include "bpp/experiments.hpp"
#include "bpp/ising.hpp"
#include "bpp/model_config.hpp"
#include "bpp/payments.hpp"
#include "bpp/strategies.hpp"
#include "bpp/uniqueness.hpp"

using namespace bpp;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::string output;
  std::string format = "csv";
  double shift = 0.0;
  std::optional<double> prior;
  double beta = 0.1;
  std::vector<std::string> beta_edges;
  double alpha = 0.0;
};

// Writes to --output when given, otherwise stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw RuntimeError("cannot open output file " + path);
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

// An argument that is either a file holding the values or the comma-separated values themselves.
std::string values_or_file(const std::string& arg) {
  std::ifstream probe(arg);
  return probe ? slurp(arg) : arg;
}

IsingModel build_ising(const Globals& g, const std::string& edge_path) {
  IsingModel m = IsingModel::uniform(load_edge_list(edge_path), g.beta, g.alpha);
  for (const auto& spec : g.beta_edges) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string field;
    while (std::getline(ss, field, ',')) parts.push_back(field);
    if (parts.size() != 3) throw ValidationError("--beta-edge expects u,v,value; got '" + spec + "'");
    const auto u = static_cast<std::size_t>(parse_integer(parts[0], "--beta-edge"));
    const auto v = static_cast<std::size_t>(parse_integer(parts[1], "--beta-edge"));
    if (u >= m.graph.size() || v >= m.graph.size() || !m.graph.has_edge(u, v))
      throw ValidationError("--beta-edge names a pair that is not an edge: " + spec);
    m.beta[m.graph.edge_index(u, v)] = parse_real(parts[2], "--beta-edge");
  }
  m.validate();
  return m;
}

void print_kv(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
}

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

std::string triple_str(const std::optional<ItemTriple>& t) {
  if (!t) return "";
  return std::to_string((*t)[0]) + " " + std::to_string((*t)[1]) + " " + std::to_string((*t)[2]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bonus-penalty payment mechanisms for comparison and network data"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Trials per agent or sample count")->capture_default_str();
  app.add_option("--output,-o", g.output, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv"}))->capture_default_str();
  app.add_option("--shift", g.shift, "Constant added to every payment")->capture_default_str();
  app.add_option("--prior", g.prior, "Pr[report = 1] for uninformed reports");
  app.add_option("--beta", g.beta, "Uniform Ising coupling")->capture_default_str();
  app.add_option("--beta-edge", g.beta_edges, "Per-edge coupling override u,v,value (repeatable)");
  app.add_option("--alpha", g.alpha, "Uniform Ising bias")->capture_default_str();

  // model
  auto* model_cmd = app.add_subcommand("model", "Summarize a comparison model fixture");
  std::string model_path;
  model_cmd->add_option("config", model_path, "key=value model file")->required();

  // check-sst
  auto* sst_cmd = app.add_subcommand("check-sst", "Check strong stochastic transitivity of a model or dataset");
  std::string sst_config, sst_rankings;
  auto* sst_cfg_opt = sst_cmd->add_option("--config", sst_config, "Model fixture");
  auto* sst_rank_opt = sst_cmd->add_option("--rankings", sst_rankings, "Rankings CSV for empirical transitivity");
  sst_cfg_opt->excludes(sst_rank_opt);

  // check-ud
  auto* ud_cmd = app.add_subcommand("check-ud", "Check uniform dominance of a signal triple");
  std::string ud_triple, ud_config;
  std::vector<std::size_t> ud_items;
  auto* ud_triple_opt = ud_cmd->add_option("--triple", ud_triple, "8 probabilities, or a file holding them");
  auto* ud_cfg_opt = ud_cmd->add_option("--config", ud_config, "Model fixture");
  ud_cmd->add_option("--items", ud_items, "Items a a' a'' for --config")->expected(3)->delimiter(',');
  ud_triple_opt->excludes(ud_cfg_opt);

  // pay
  auto* pay_cmd = app.add_subcommand("pay", "Compute bonus-penalty payments from reports");
  std::string pay_assignment, pay_edges, pay_reports;
  bool pay_random = false;
  auto* pay_as_opt = pay_cmd->add_option("--assignment", pay_assignment, "agent_id,item_u,item_v CSV");
  auto* pay_edge_opt = pay_cmd->add_option("--edges", pay_edges, "Edge list for network payments");
  pay_cmd->add_option("--reports", pay_reports, "agent_id,report CSV")->required();
  pay_cmd->add_flag("--random", pay_random, "Uniform peer tuples from --seed instead of the smallest ids");
  pay_as_opt->excludes(pay_edge_opt);

  // equilibria
  auto* eq_cmd = app.add_subcommand("equilibria", "Classify symmetric equilibria on a strategy grid");
  std::string eq_triple;
  std::size_t eq_resolution = 101;
  eq_cmd->add_option("--triple", eq_triple, "8 probabilities, or a file holding them")->required();
  eq_cmd->add_option("--resolution", eq_resolution, "Grid points per axis")->capture_default_str();

  // ising
  auto* ising_cmd = app.add_subcommand("ising", "Ising coupling condition, exact dominance, or Glauber samples");
  std::string ising_edges;
  std::size_t ising_samples = 0, ising_burn = 200, ising_thin = 1;
  ising_cmd->add_option("--edges", ising_edges, "Edge list CSV")->required();
  ising_cmd->add_option("--samples", ising_samples, "Emit this many Glauber configurations instead of a report");
  ising_cmd->add_option("--burn-in", ising_burn, "Glauber burn-in sweeps")->capture_default_str();
  ising_cmd->add_option("--thin", ising_thin, "Sweeps between samples")->capture_default_str();

  // uniqueness audit
  auto* uniq_cmd = app.add_subcommand("uniqueness", "Payment-function uniqueness tools");
  auto* audit_cmd = uniq_cmd->add_subcommand("audit", "Certify or refute a payment function");
  uniq_cmd->require_subcommand(1);
  std::string audit_payment, audit_triple;
  std::size_t audit_random = 10'000;
  audit_cmd->add_option("--payment", audit_payment, "8 payment values, or a file holding them")->required();
  audit_cmd->add_option("--triple", audit_triple, "Also audit truthfulness on this distribution");
  audit_cmd->add_option("--random-trials", audit_random, "Random dominant laws to try")->capture_default_str();

  // experiment comparison | network
  auto* exp_cmd = app.add_subcommand("experiment", "Run the payment pipelines");
  exp_cmd->require_subcommand(1);
  std::vector<std::string> settings{"truth", "uninformed", "deviation"};
  auto* cmp_cmd = exp_cmd->add_subcommand("comparison", "Ranking data pipeline");
  std::string cmp_rankings;
  bool cmp_check = false;
  cmp_cmd->add_option("--rankings", cmp_rankings, "Rankings CSV")->required();
  cmp_cmd->add_option("--setting", settings, "Settings to run")->check(CLI::IsMember({"truth", "uninformed", "deviation"}));
  cmp_cmd->add_flag("--check-orientation", cmp_check, "Verify the NAE identity on every trial");
  auto* net_cmd = exp_cmd->add_subcommand("network", "Social network pipeline");
  std::string net_edges, net_labels;
  std::size_t net_burn = 200, net_thin = 10;
  net_cmd->add_option("--edges", net_edges, "Edge list CSV")->required();
  auto* net_label_opt = net_cmd->add_option("--labels", net_labels, "agent_id,label CSV; omit to sample labels "
                                                                    "from the Ising model per trial");
  net_cmd->add_option("--setting", settings, "Settings to run")->check(CLI::IsMember({"truth", "uninformed", "deviation"}));
  net_cmd->add_option("--burn-in", net_burn, "Glauber burn-in when sampling labels")->capture_default_str();
  net_cmd->add_option("--thin", net_thin, "Sweeps between trials when sampling labels")->capture_default_str();

  // ecdf
  auto* ecdf_cmd = app.add_subcommand("ecdf", "Empirical CDF or summary of a payments CSV");
  std::string ecdf_input, ecdf_setting;
  bool ecdf_summary = false;
  ecdf_cmd->add_option("input", ecdf_input, "agent_id,setting,payment or agent_id,payment CSV")->required();
  ecdf_cmd->add_option("--setting", ecdf_setting, "Only rows with this setting");
  ecdf_cmd->add_flag("--summary", ecdf_summary, "Emit mean and fraction positive per setting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Sink sink(g.output);
    std::ostream& out = sink.out();
    out << std::setprecision(12);

    if (*model_cmd) {
      const ModelConfig cfg = load_model_config(model_path);
      const bool finite = has_finite_support(cfg.model);
      std::vector<std::pair<std::string, std::string>> rows{
          {"variant", cfg.variant},
          {"n_items", std::to_string(item_count(cfg.model))},
          {"finite_support", finite ? "true" : "false"},
      };
      const auto ap = check_apriori_similar(cfg.model, 20'000, g.seed);
      rows.emplace_back("apriori_similar", ap.pass ? "true" : "false");
      rows.emplace_back("apriori_exact", ap.exact ? "true" : "false");
      rows.emplace_back("apriori_residual", num(ap.residual));
      if (finite) {
        rows.emplace_back("support_size", std::to_string(finite_support(cfg.model).size()));
        if (item_count(cfg.model) >= 3) {
          const auto p = triple_from_model(cfg.model, 0, 1, 2);
          const auto d = is_uniformly_dominant(p);
          rows.emplace_back("triple_0_1_2", p.to_string());
          rows.emplace_back("delta_plus", num(d.delta_plus));
          rows.emplace_back("delta_minus", num(d.delta_minus));
        }
      }
      print_kv(out, rows);
      return 0;
    }

    if (*sst_cmd) {
      if (!sst_rankings.empty()) {
        const auto t = empirical_transitivity(load_rankings(sst_rankings));
        print_kv(out, {{"triples", std::to_string(t.triples)},
                       {"ties", std::to_string(t.ties)},
                       {"weak_fraction", num(t.weak_fraction)},
                       {"strong_fraction", num(t.strong_fraction)},
                       {"mean_gap", num(t.mean_gap)}});
        return 0;
      }
      if (sst_config.empty()) throw ValidationError("check-sst needs --config or --rankings");
      const ModelConfig cfg = load_model_config(sst_config);
      out << "theta,weight,sst,sst_witness,weak_st,weak_st_witness\n";
      auto row = [&](std::size_t id, double w, const PairwiseMatrix& q) {
        const auto s = check_sst(q);
        const auto ws = check_weak_st(q);
        out << id << ',' << w << ',' << (s ? "fail" : "pass") << ',' << triple_str(s) << ','
            << (ws ? "fail" : "pass") << ',' << triple_str(ws) << '\n';
        return !s;
      };
      bool all = true;
      if (has_finite_support(cfg.model)) {
        const auto support = finite_support(cfg.model);
        for (std::size_t n = 0; n < support.size(); ++n) all = row(n, support[n].weight, support[n].q) && all;
      } else {
        Rng rng(derive_seed(g.seed, cfg.seed));
        for (std::size_t n = 0; n < g.trials; ++n)
          all = row(n, 1.0 / static_cast<double>(g.trials), pairwise_matrix(cfg.model, sample_theta(cfg.model, rng))) &&
                all;
      }
      std::cerr << (all ? "SST holds on every theta\n" : "SST violated\n");
      return 0;
    }

    if (*ud_cmd) {
      TripleDistribution p;
      if (!ud_config.empty()) {
        if (ud_items.size() != 3) throw ValidationError("--config needs --items a,a',a''");
        const ModelConfig cfg = load_model_config(ud_config);
        p = has_finite_support(cfg.model)
                ? triple_from_model(cfg.model, ud_items[0], ud_items[1], ud_items[2])
                : triple_from_model_sampled(cfg.model, ud_items[0], ud_items[1], ud_items[2],
                                            std::max<std::size_t>(g.trials, 1000), g.seed)
                      .p;
      } else if (!ud_triple.empty()) {
        p = TripleDistribution::parse(values_or_file(ud_triple));
      } else {
        throw ValidationError("check-ud needs --triple or --config");
      }
      const auto d = is_uniformly_dominant(p);
      print_kv(out, {{"triple", p.to_string()},
                     {"delta_plus", num(d.delta_plus)},
                     {"delta_minus", num(d.delta_minus)},
                     {"dominant", d.dominant ? "true" : "false"}});
      return 0;
    }

    if (*pay_cmd) {
      Rng rng(g.seed);
      Rng* r = pay_random ? &rng : nullptr;
      const auto reports = load_reports(pay_reports);
      PeerSelection sel;
      if (!pay_assignment.empty()) {
        const Assignment as = load_assignment(pay_assignment);
        for (const auto& [agent, pair] : as.entries) sel[agent].push_back(select_peers_comparison(as, agent, r));
      } else if (!pay_edges.empty()) {
        std::size_t n = 0;
        for (const auto& [agent, rep] : reports) n = std::max(n, agent + 1);
        const Graph graph = load_edge_list(pay_edges, n);
        for (const auto& [agent, rep] : reports) sel[agent].push_back(select_peers_network(graph, agent, r));
      } else {
        throw ValidationError("pay needs --assignment or --edges");
      }
      write_payments(out, pay_all(reports, sel), g.shift);
      return 0;
    }

    if (*eq_cmd) {
      const auto p = TripleDistribution::parse(values_or_file(eq_triple));
      const auto rep = classify_symmetric_equilibria(p, eq_resolution);
      write_equilibria_csv(out, rep);
      std::cerr << "only truthful, flip, or uninformed equilibria: " << (rep.only_permutation_or_uninformed ? "yes" : "no")
                << "\n";
      return 0;
    }

    if (*ising_cmd) {
      const IsingModel m = build_ising(g, ising_edges);
      if (ising_samples > 0) {
        const auto samples = glauber_sample(m, ising_samples, ising_burn, g.seed, ising_thin);
        out << "sample";
        for (std::size_t v = 0; v < m.graph.size(); ++v) out << ",s" << v;
        out << '\n';
        for (std::size_t n = 0; n < samples.size(); ++n) {
          out << n;
          for (int s : samples[n]) out << ',' << s;
          out << '\n';
        }
        return 0;
      }
      const std::size_t d = std::max<std::size_t>(m.graph.max_degree(), 1);
      const auto c = theorem4_condition(m.beta_min(), m.beta_max(), d);
      std::vector<std::pair<std::string, std::string>> rows{
          {"nodes", std::to_string(m.graph.size())}, {"edges", std::to_string(m.graph.edge_count())},
          {"max_degree", std::to_string(d)},         {"beta_min", num(m.beta_min())},
          {"beta_max", num(m.beta_max())},           {"condition_lhs", num(c.lhs)},
          {"condition_rhs", num(c.rhs)},             {"condition_holds", c.holds ? "true" : "false"},
      };
      if (m.graph.size() <= kExactIsingLimit && m.unbiased()) {
        const auto table = exact_joint(m);
        std::size_t tuples = 0, failing = 0;
        for (std::size_t i = 0; i < m.graph.size(); ++i)
          for (std::size_t j : m.graph.neighbors(i))
            for (std::size_t k = 0; k < m.graph.size(); ++k) {
              if (k == i || m.graph.has_edge(i, k)) continue;
              ++tuples;
              failing += !uniform_dominance_network(m, table, i, j, k).dominant;
            }
        rows.emplace_back("exact_tuples", std::to_string(tuples));
        rows.emplace_back("exact_failing_tuples", std::to_string(failing));
      }
      print_kv(out, rows);
      return 0;
    }

    if (*audit_cmd) {
      const auto u = PaymentFunction::parse(values_or_file(audit_payment));
      SearchOptions opt;
      opt.seed = g.seed;
      opt.random_trials = audit_random;
      const auto r = uniqueness_search(u, opt);
      std::vector<std::pair<std::string, std::string>> rows;
      switch (r.outcome) {
        case SearchOutcome::Certificate:
          rows = {{"outcome", "certificate"}, {"lambda", num(r.certificate->lambda)}};
          for (int sj : {-1, 1})
            for (int sk : {-1, 1})
              rows.emplace_back("mu(" + std::to_string(sj) + " " + std::to_string(sk) + ")",
                                num(r.certificate->mu(sj, sk)));
          break;
        case SearchOutcome::Counterexample:
          rows = {{"outcome", "counterexample"},
                  {"family", r.family},
                  {"parameter", num(r.parameter)},
                  {"triple", r.counterexample->to_string()},
                  {"verdict", to_string(r.verdict.overall)},
                  {"gap_plus", num(r.verdict.gap_plus)},
                  {"gap_minus", num(r.verdict.gap_minus)}};
          break;
        case SearchOutcome::Inconclusive: rows = {{"outcome", "inconclusive"}}; break;
      }
      if (!audit_triple.empty()) {
        const auto v = truthfulness_audit(u, TripleDistribution::parse(values_or_file(audit_triple)));
        rows.emplace_back("audit_verdict", to_string(v.overall));
        rows.emplace_back("audit_gap_plus", num(v.gap_plus));
        rows.emplace_back("audit_gap_minus", num(v.gap_minus));
      }
      print_kv(out, rows);
      return 0;
    }

    if (*cmp_cmd) {
      const auto data = load_rankings(cmp_rankings);
      ComparisonOptions opt;
      opt.trials = g.trials;
      opt.seed = g.seed;
      opt.check_orientation = cmp_check;
      bool header = true;
      for (const auto& s : settings) {
        const Setting setting = parse_setting(s);
        write_setting_payments(out, data.agent_ids, experiment_comparison(data, setting, opt), setting, g.shift, header);
        header = false;
      }
      return 0;
    }

    if (*net_cmd) {
      std::optional<NetworkDataset> data;
      std::optional<IsingModel> model;
      if (!net_label_opt->empty()) {
        data = load_network(net_edges, net_labels);
        for (const auto& w : data->warnings) std::cerr << "warning: " << w << '\n';
      } else {
        model = build_ising(g, net_edges);
      }
      bool header = true;
      for (const auto& s : settings) {
        const Setting setting = parse_setting(s);
        NetworkPayments r;
        if (data) {
          NetworkOptions opt;
          opt.trials = g.trials;
          opt.seed = g.seed;
          opt.prior = g.prior;
          r = experiment_network(*data, setting, opt);
        } else {
          IsingExperimentOptions opt;
          opt.trials = g.trials;
          opt.seed = g.seed;
          opt.burn_in = net_burn;
          opt.thin = net_thin;
          opt.prior = g.prior;
          r = experiment_network_model(*model, setting, opt);
        }
        if (header && !r.skipped.empty()) std::cerr << "skipped " << r.skipped.size() << " agents without a friend or non-friend\n";
        write_setting_payments(out, r.agents, r.payments, setting, g.shift, header);
        header = false;
      }
      return 0;
    }

    if (*ecdf_cmd) {
      std::map<std::string, std::vector<double>> groups;
      for (const CsvRow& row : read_csv(ecdf_input)) {
        if (looks_like_header(row)) continue;
        const std::string where = location(ecdf_input, row.line);
        if (row.fields.size() == 2) {
          groups["all"].push_back(parse_real(row.fields[1], where));
        } else if (row.fields.size() == 3) {
          if (!ecdf_setting.empty() && row.fields[1] != ecdf_setting) continue;
          groups[ecdf_setting.empty() ? row.fields[1] : ecdf_setting].push_back(parse_real(row.fields[2], where));
        } else {
          throw ValidationError(where + ": expected 2 or 3 fields");
        }
      }
      if (groups.empty()) throw ValidationError("no payments in " + ecdf_input);
      if (ecdf_summary) {
        out << "setting,mean,fraction_positive,count\n";
        for (const auto& [name, xs] : groups) {
          const auto s = summarize(xs);
          out << name << ',' << s.mean << ',' << s.fraction_positive << ',' << s.count << '\n';
        }
        return 0;
      }
      if (groups.size() == 1) {
        write_ecdf_csv(out, Ecdf(groups.begin()->second));
        return 0;
      }
      out << "setting,payment,cdf\n";
      for (const auto& [name, xs] : groups)
        for (const auto& [x, f] : Ecdf(xs).steps()) out << name << ',' << x << ',' << f << '\n';
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
