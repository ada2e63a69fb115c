// ccnlab: desk-scale experiments comparing stateful (PIT) and stateless
// (routable-backward-name) content-centric forwarding. Emits CSV for
// external plotting; all randomness comes from explicit seeds.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccnlab/collapse_model.hpp"
#include "ccnlab/sim.hpp"
#include "ccnlab/topology.hpp"

namespace {

using namespace ccnlab;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Topology load_topology(const std::string& spec, std::uint64_t seed) {
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    Topology topo = Topology::parse(buffer.str());
    topo.validate();
    return topo;
  }
  return generate_topology(spec, seed);
}

struct RunOptions {
  std::string topo_spec = "dfn_like";
  std::string mode;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double duration = 10.0;
  double rate = 10.0;
  std::size_t classes = 4;
  bool unique_suffix = true;
  bool reusable_names = false;
  std::size_t catalog = 1;
  std::size_t pit_capacity = 1 << 20;
  std::string pit_policy = "drop";
  double pit_lifetime = 4.0;
  std::size_t cs_capacity = 65536;
  double cache_hint = 10.0;
  std::size_t payload = 1024;
  double cost_cs = 2e-6, cost_pit = 2e-6, cost_fib = 2e-6, cost_cs_insert = 2e-6;
  std::string out;
  std::size_t jobs = 1;
  std::size_t replicas = 1;
};

void add_run_options(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("--topo", opt.topo_spec,
                  "topology file, or generator spec (line:<n>, tree:<d>,<f>, dfn_like, att_like)");
  cmd->add_option("--mode", opt.mode, "force stateful|stateless|hybrid on every router")
      ->check(CLI::IsMember({"stateful", "stateless", "hybrid", ""}));
  cmd->add_option("--seed", opt.seed, "run seed (required; no wall-clock entropy)")
      ->required();
  cmd->add_option("--duration", opt.duration, "simulated seconds");
  cmd->add_option("--rate", opt.rate, "interests per second per consumer");
  cmd->add_option("--classes", opt.classes, "popularity classes (rate halves per class)");
  cmd->add_flag("--reusable-names", opt.reusable_names,
                "request a small per-class catalog instead of unique suffixes");
  cmd->add_option("--catalog", opt.catalog, "objects per class with --reusable-names");
  cmd->add_option("--pit-capacity", opt.pit_capacity, "PIT entries per router");
  cmd->add_option("--pit-policy", opt.pit_policy, "full-PIT policy")
      ->check(CLI::IsMember({"drop", "evict", "nack"}));
  cmd->add_option("--pit-lifetime", opt.pit_lifetime, "PIT entry lifetime, seconds");
  cmd->add_option("--cs-capacity", opt.cs_capacity, "content store entries per router");
  cmd->add_option("--cache-hint", opt.cache_hint, "producer cache hint, seconds");
  cmd->add_option("--payload", opt.payload, "content payload bytes");
  cmd->add_option("--cost-cs", opt.cost_cs, "modeled CS lookup cost, seconds");
  cmd->add_option("--cost-cs-insert", opt.cost_cs_insert, "modeled CS insert cost, seconds");
  cmd->add_option("--cost-pit", opt.cost_pit, "modeled PIT op cost, seconds");
  cmd->add_option("--cost-fib", opt.cost_fib, "modeled FIB lookup cost, seconds");
  cmd->add_option("--out", opt.out, "output CSV path ('-' for stdout)");
  cmd->add_option("--jobs", opt.jobs, "worker threads for seed replicas");
  cmd->add_option("--replicas", opt.replicas, "consecutive seeds starting at --seed");
}

SimConfig config_from(const RunOptions& opt, std::uint64_t seed) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.duration_s = opt.duration;
  if (!opt.mode.empty()) cfg.mode_override = parse_mode(opt.mode);
  cfg.traffic.rate_per_consumer = opt.rate;
  cfg.traffic.num_classes = opt.classes;
  cfg.traffic.unique_suffix = !opt.reusable_names;
  cfg.traffic.catalog_per_class = opt.catalog;
  cfg.pit_capacity = opt.pit_capacity;
  cfg.pit_full_policy = opt.pit_policy == "evict"  ? PitFullPolicy::EvictOldest
                        : opt.pit_policy == "nack" ? PitFullPolicy::NackNew
                                                   : PitFullPolicy::DropNew;
  cfg.pit_lifetime_s = opt.pit_lifetime;
  cfg.cs_capacity = opt.cs_capacity;
  cfg.cache_hint_s = opt.cache_hint;
  cfg.payload_bytes = opt.payload;
  cfg.costs.cs_lookup_s = opt.cost_cs;
  cfg.costs.cs_insert_s = opt.cost_cs_insert;
  cfg.costs.pit_op_s = opt.cost_pit;
  cfg.costs.fib_lookup_s = opt.cost_fib;
  return cfg;
}

std::string config_echo(const RunOptions& opt, const std::optional<AttackSpec>& attack) {
  std::ostringstream h;
  h << "ccnlab topo=" << opt.topo_spec << " mode=" << (opt.mode.empty() ? "per-node" : opt.mode)
    << " seed=" << opt.seed << " duration=" << fmt(opt.duration) << "\n";
  h << "traffic rate=" << fmt(opt.rate) << " classes=" << opt.classes
    << " unique_suffix=" << (opt.reusable_names ? 0 : 1) << " catalog=" << opt.catalog << "\n";
  h << "tables pit_capacity=" << opt.pit_capacity << " pit_policy=" << opt.pit_policy
    << " pit_lifetime=" << fmt(opt.pit_lifetime) << " cs_capacity=" << opt.cs_capacity
    << " cache_hint=" << fmt(opt.cache_hint) << "\n";
  h << "costs cs=" << fmt(opt.cost_cs) << " cs_insert=" << fmt(opt.cost_cs_insert)
    << " pit=" << fmt(opt.cost_pit) << " fib=" << fmt(opt.cost_fib)
    << " payload=" << opt.payload << "\n";
  if (attack) {
    h << "attack rate=" << fmt(attack->rate) << " start=" << fmt(attack->start_s)
      << " stop=" << fmt(attack->stop_s) << " attackers=";
    for (std::size_t i = 0; i < attack->attackers.size(); ++i) {
      h << (i ? "+" : "") << attack->attackers[i];
    }
    h << "\n";
  }
  return h.str();
}

/// Runs (mode x seed) replicas, fanning across --jobs workers, and merges
/// CSV deterministically in (mode, seed) order.
std::string run_batch(const RunOptions& opt, const std::vector<std::string>& modes,
                      const std::optional<AttackSpec>& attack, std::vector<RunMetrics>* collected) {
  Topology topo = load_topology(opt.topo_spec, opt.seed);
  struct Job {
    std::string run_id;
    SimConfig cfg;
  };
  std::vector<Job> jobs;
  for (const std::string& mode : modes) {
    for (std::size_t r = 0; r < opt.replicas; ++r) {
      RunOptions local = opt;
      local.mode = mode;
      Job job;
      job.cfg = config_from(local, opt.seed + r);
      job.cfg.attack = attack;
      job.run_id = (mode.empty() ? "per-node" : mode) + "-" + std::to_string(opt.seed + r);
      jobs.push_back(std::move(job));
    }
  }

  std::vector<RunMetrics> results(jobs.size());
  std::size_t workers = std::max<std::size_t>(1, opt.jobs);
  std::size_t next = 0;
  while (next < jobs.size()) {
    std::size_t batch = std::min(workers, jobs.size() - next);
    std::vector<std::future<RunMetrics>> futures;
    for (std::size_t i = 0; i < batch; ++i) {
      const SimConfig& cfg = jobs[next + i].cfg;
      futures.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred,
                                   [&topo, &cfg] { return run_simulation(topo, cfg); }));
    }
    for (std::size_t i = 0; i < batch; ++i) results[next + i] = futures[i].get();
    next += batch;
  }

  std::ostringstream out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    RunOptions local = opt;
    local.mode = jobs[i].run_id.substr(0, jobs[i].run_id.rfind('-'));
    if (local.mode == "per-node") local.mode.clear();
    out << results[i].to_csv(jobs[i].run_id, config_echo(local, attack));
    if (i + 1 < jobs.size()) out << "\n";
  }
  if (collected) *collected = std::move(results);
  return out.str();
}

struct OpsSummary {
  double interest_ops_per_interest = 0;
  double content_ops_per_content = 0;
  std::uint64_t interests = 0;
  std::uint64_t contents = 0;
};

OpsSummary router_ops(const Topology& topo, const RunMetrics& m) {
  OpsSummary s;
  std::uint64_t interest_ops = 0, content_ops = 0;
  for (const NodeSpec& node : topo.nodes) {
    if (node.role != NodeRole::Router) continue;
    const NodeMetrics& nm = m.nodes.at(node.id);
    interest_ops += nm.interest_ops;
    content_ops += nm.content_ops;
    s.interests += nm.interests_rx;
    s.contents += nm.contents_rx;
  }
  if (s.interests) s.interest_ops_per_interest = static_cast<double>(interest_ops) / s.interests;
  if (s.contents) s.content_ops_per_content = static_cast<double>(content_ops) / s.contents;
  return s;
}

void print_summary(const Topology& topo, const std::string& run_id, const RunMetrics& m) {
  OpsSummary ops = router_ops(topo, m);
  std::cout << "== " << run_id << " ==\n";
  std::cout << "issued " << m.issued << "  delivered " << m.delivered << "  dropped " << m.dropped
            << "  nacked_unrecovered " << m.nacked_unrecovered << "  in_flight " << m.in_flight
            << "\n";
  if (m.issued_attack) {
    std::cout << "attack issued " << m.issued_attack << "  dropped " << m.dropped_attack
              << "  in_flight " << m.in_flight_attack << "\n";
    std::cout << "legit drop rate during attack " << fmt(m.legit_drop_rate_during_attack) << "\n";
  }
  std::cout << "router ops/interest " << fmt(ops.interest_ops_per_interest) << "  ops/content "
            << fmt(ops.content_ops_per_content) << "\n";
  std::cout << "mean RTT " << fmt(m.mean_rtt_s) << " s";
  if (m.recovered_deliveries) {
    std::cout << "  (baseline " << fmt(m.mean_rtt_baseline_s) << ", recovered "
              << fmt(m.mean_rtt_recovered_s) << ")";
  }
  std::cout << "\nhops,mean_rtt_s,stddev,count\n";
  for (const RttRow& r : m.rtt_by_hops()) {
    std::cout << r.hops << ',' << fmt(r.mean_rtt_s) << ',' << fmt(r.stddev) << ',' << r.count
              << "\n";
  }
}

int cmd_model(double lambda1, std::size_t classes, double max_delay_ms, std::size_t steps,
              const std::vector<double>& hit_rates, const std::string& out_path) {
  if (!hit_rates.empty() && hit_rates.size() != classes) {
    std::cerr << "error: --hit-rates needs one value per class\n";
    return 2;
  }
  std::vector<double> rates = zipf_rates(classes, lambda1);
  std::ostringstream out;
  out << "# ccnlab model lambda1=" << fmt(lambda1) << " classes=" << classes
      << " max_delay_ms=" << fmt(max_delay_ms) << " steps=" << steps << "\n";
  out << "delay_ms,class,probability\n";
  for (std::size_t step = 0; step <= steps; ++step) {
    double delay_ms = max_delay_ms * static_cast<double>(step) / static_cast<double>(steps);
    for (std::size_t k = 0; k < classes; ++k) {
      CollapseParams p;
      p.lambda = rates[k];
      p.delta = delay_ms * 1e-3;
      p.p_hit = hit_rates.empty() ? 0.0 : hit_rates[k];
      out << fmt(delay_ms) << ',' << (k + 1) << ',' << fmt(collapse_prob_single(p)) << "\n";
    }
  }
  write_output(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stateful vs stateless content-centric forwarding laboratory"};
  app.require_subcommand(1);

  // --- model ---------------------------------------------------------------
  double lambda1 = 40.0;
  std::size_t model_classes = 4;
  double max_delay_ms = 4.0;
  std::size_t steps = 40;
  std::vector<double> hit_rates;
  std::string model_out;
  CLI::App* model = app.add_subcommand("model", "interest-collapsing probability curves");
  model->add_option("--lambda1", lambda1, "class-1 arrival rate, per second");
  model->add_option("--classes", model_classes, "number of popularity classes");
  model->add_option("--max-delay-ms", max_delay_ms, "collapse-window sweep end");
  model->add_option("--steps", steps, "sweep resolution");
  model->add_option("--hit-rates", hit_rates, "per-class cache hit probabilities")
      ->delimiter(',');
  model->add_option("--out", model_out, "output CSV path ('-' for stdout)");

  // --- run -----------------------------------------------------------------
  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "one traffic experiment");
  add_run_options(run, run_opt);

  // --- attack --------------------------------------------------------------
  RunOptions atk_opt;
  std::vector<std::string> attackers{"c0"};
  double attack_rate = 1000.0;
  double attack_start = 2.0, attack_stop = 8.0;
  CLI::App* attack = app.add_subcommand("attack", "interest-flooding experiment");
  add_run_options(attack, atk_opt);
  attack->add_option("--attackers", attackers, "consumer node ids flooding the producer prefix")
      ->delimiter(',');
  attack->add_option("--attack-rate", attack_rate, "flood interests per second per attacker");
  attack->add_option("--attack-start", attack_start, "attack window start, seconds");
  attack->add_option("--attack-stop", attack_stop, "attack window end, seconds");

  // --- compare ---------------------------------------------------------------
  RunOptions cmp_opt;
  CLI::App* compare = app.add_subcommand("compare", "stateful vs stateless on one workload");
  add_run_options(compare, cmp_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (model->parsed()) {
      return cmd_model(lambda1, model_classes, max_delay_ms, steps, hit_rates, model_out);
    }
    if (run->parsed()) {
      std::vector<RunMetrics> results;
      std::string csv = run_batch(run_opt, {run_opt.mode}, std::nullopt, &results);
      write_output(run_opt.out, csv);
      Topology topo = load_topology(run_opt.topo_spec, run_opt.seed);
      for (std::size_t i = 0; i < results.size(); ++i) {
        print_summary(topo, run_opt.mode.empty() ? "per-node" : run_opt.mode, results[i]);
        if (!results[i].conservation_ok) return 1;
      }
      return 0;
    }
    if (attack->parsed()) {
      AttackSpec spec;
      spec.attackers = attackers;
      spec.rate = attack_rate;
      spec.start_s = attack_start;
      spec.stop_s = attack_stop;
      std::vector<RunMetrics> results;
      std::string csv = run_batch(atk_opt, {atk_opt.mode}, spec, &results);
      write_output(atk_opt.out, csv);
      Topology topo = load_topology(atk_opt.topo_spec, atk_opt.seed);
      for (auto& m : results) {
        print_summary(topo, atk_opt.mode.empty() ? "per-node" : atk_opt.mode, m);
        if (!m.conservation_ok) return 1;
      }
      return 0;
    }
    if (compare->parsed()) {
      std::vector<RunMetrics> results;
      std::string csv = run_batch(cmp_opt, {"stateful", "stateless"}, std::nullopt, &results);
      write_output(cmp_opt.out, csv);
      Topology topo = load_topology(cmp_opt.topo_spec, cmp_opt.seed);
      OpsSummary sf, sl;
      for (std::size_t i = 0; i < results.size(); ++i) {
        std::string run_id = (i < cmp_opt.replicas ? "stateful-" : "stateless-") +
                             std::to_string(cmp_opt.seed + i % cmp_opt.replicas);
        print_summary(topo, run_id, results[i]);
        if (!results[i].conservation_ok) return 1;
        OpsSummary ops = router_ops(topo, results[i]);
        (i < cmp_opt.replicas ? sf : sl) = ops;
      }
      if (sf.interest_ops_per_interest > 0) {
        std::cout << "stateless/stateful interest-op ratio "
                  << fmt(sl.interest_ops_per_interest / sf.interest_ops_per_interest) << "\n";
        std::cout << "stateless/stateful content-op ratio "
                  << fmt(sl.content_ops_per_content / sf.content_ops_per_content) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
