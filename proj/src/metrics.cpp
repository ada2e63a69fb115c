#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "ccnlab/sim.hpp"

namespace ccnlab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

void row(std::ostringstream& out, const std::string& run_id, const std::string& node,
         const char* metric, std::uint64_t value) {
  out << run_id << ',' << node << ',' << metric << ',' << value << '\n';
}

void row(std::ostringstream& out, const std::string& run_id, const std::string& node,
         const char* metric, double value) {
  out << run_id << ',' << node << ',' << metric << ',' << fmt(value) << '\n';
}

}  // namespace

std::vector<RttRow> RunMetrics::rtt_by_hops() const {
  std::map<int, std::vector<double>> groups;
  for (const RttSample& s : rtt_samples) groups[s.hops].push_back(s.rtt_s);
  std::vector<RttRow> rows;
  for (const auto& [hops, values] : groups) {
    RttRow r;
    r.hops = hops;
    r.count = values.size();
    double sum = 0;
    for (double v : values) sum += v;
    r.mean_rtt_s = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
      double dev = 0;
      for (double v : values) dev += (v - r.mean_rtt_s) * (v - r.mean_rtt_s);
      r.stddev = std::sqrt(dev / static_cast<double>(values.size() - 1));
    }
    rows.push_back(r);
  }
  return rows;
}

std::string RunMetrics::to_csv(const std::string& run_id,
                               const std::string& header_comment) const {
  std::ostringstream out;
  if (!header_comment.empty()) {
    std::istringstream lines(header_comment);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << '\n';
  }
  out << "run_id,node,metric,value\n";
  for (const auto& [node, nm] : nodes) {
    row(out, run_id, node, "cs_lookups", nm.ops.cs_lookups);
    row(out, run_id, node, "cs_inserts", nm.ops.cs_inserts);
    row(out, run_id, node, "pit_lookups", nm.ops.pit_lookups);
    row(out, run_id, node, "pit_inserts", nm.ops.pit_inserts);
    row(out, run_id, node, "pit_deletes", nm.ops.pit_deletes);
    row(out, run_id, node, "fib_lookups", nm.ops.fib_lookups);
    row(out, run_id, node, "nacks_sent", nm.ops.nacks_sent);
    row(out, run_id, node, "interests_rx", nm.interests_rx);
    row(out, run_id, node, "contents_rx", nm.contents_rx);
    row(out, run_id, node, "nacks_rx", nm.nacks_rx);
    row(out, run_id, node, "drops", nm.drops);
    row(out, run_id, node, "collapses", nm.collapses);
    row(out, run_id, node, "cs_hits", nm.cs_hits);
    row(out, run_id, node, "pit_expired", nm.pit_expired);
    row(out, run_id, node, "interest_ops", nm.interest_ops);
    row(out, run_id, node, "content_ops", nm.content_ops);
    row(out, run_id, node, "nack_ops", nm.nack_ops);
  }
  const std::string total = "_run";
  row(out, run_id, total, "issued", issued);
  row(out, run_id, total, "delivered", delivered);
  row(out, run_id, total, "dropped", dropped);
  row(out, run_id, total, "nacked_unrecovered", nacked_unrecovered);
  row(out, run_id, total, "in_flight", in_flight);
  row(out, run_id, total, "issued_attack", issued_attack);
  row(out, run_id, total, "delivered_attack", delivered_attack);
  row(out, run_id, total, "dropped_attack", dropped_attack);
  row(out, run_id, total, "nacked_unrecovered_attack", nacked_unrecovered_attack);
  row(out, run_id, total, "in_flight_attack", in_flight_attack);
  row(out, run_id, total, "collapsed_interests", collapsed_interests);
  row(out, run_id, total, "cs_hits", cs_hits);
  row(out, run_id, total, "recovered_deliveries", recovered_deliveries);
  row(out, run_id, total, "issued_before_attack", issued_before_attack);
  row(out, run_id, total, "delivered_before_attack", delivered_before_attack);
  row(out, run_id, total, "dropped_before_attack", dropped_before_attack);
  row(out, run_id, total, "issued_during_attack", issued_during_attack);
  row(out, run_id, total, "delivered_during_attack", delivered_during_attack);
  row(out, run_id, total, "dropped_during_attack", dropped_during_attack);
  row(out, run_id, total, "issued_after_attack", issued_after_attack);
  row(out, run_id, total, "delivered_after_attack", delivered_after_attack);
  row(out, run_id, total, "dropped_after_attack", dropped_after_attack);
  row(out, run_id, total, "legit_drop_rate_during_attack", legit_drop_rate_during_attack);
  row(out, run_id, total, "mean_rtt_s", mean_rtt_s);
  row(out, run_id, total, "mean_rtt_baseline_s", mean_rtt_baseline_s);
  row(out, run_id, total, "mean_rtt_recovered_s", mean_rtt_recovered_s);
  row(out, run_id, total, "conservation_ok", static_cast<std::uint64_t>(conservation_ok ? 1 : 0));

  out << '\n';
  out << "hops,mean_rtt_s,stddev,count\n";
  for (const RttRow& r : rtt_by_hops()) {
    out << r.hops << ',' << fmt(r.mean_rtt_s) << ',' << fmt(r.stddev) << ',' << r.count << '\n';
  }
  return out.str();
}

}  // namespace ccnlab
