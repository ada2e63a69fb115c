#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccnlab/collapse_model.hpp"
#include "ccnlab/fib.hpp"
#include "ccnlab/message.hpp"
#include "ccnlab/sim.hpp"
#include "ccnlab/topology.hpp"

namespace py = pybind11;
using namespace ccnlab;

namespace {

Name name_from_text(const std::string& text) { return parse_lci(text); }

py::bytes encode_py(const Message& msg) {
  auto wire = encode(msg);
  return py::bytes(reinterpret_cast<const char*>(wire.data()), wire.size());
}

Message decode_py(const py::bytes& wire) {
  std::string buf = wire;
  return decode(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(buf.data()), buf.size()));
}

py::bytes validation_input_py(const Message& msg) {
  auto wire = validation_input(msg);
  return py::bytes(reinterpret_cast<const char*>(wire.data()), wire.size());
}

PathSpec path_from(const std::vector<double>& lengths, const std::vector<double>& alphas,
                   const std::optional<std::vector<double>>& per_hop_hit) {
  if (lengths.size() != alphas.size()) {
    throw std::invalid_argument("lengths and alphas must have equal size");
  }
  PathSpec path;
  for (std::size_t i = 0; i < lengths.size(); ++i) path.links.push_back({lengths[i], alphas[i]});
  path.per_hop_hit = per_hop_hit;
  return path;
}

py::dict metrics_to_dict(const RunMetrics& m, const std::string& run_id,
                         const std::string& header) {
  py::dict d;
  d["issued"] = m.issued;
  d["delivered"] = m.delivered;
  d["dropped"] = m.dropped;
  d["nacked_unrecovered"] = m.nacked_unrecovered;
  d["in_flight"] = m.in_flight;
  d["issued_attack"] = m.issued_attack;
  d["dropped_attack"] = m.dropped_attack;
  d["collapsed_interests"] = m.collapsed_interests;
  d["cs_hits"] = m.cs_hits;
  d["recovered_deliveries"] = m.recovered_deliveries;
  d["legit_drop_rate_during_attack"] = m.legit_drop_rate_during_attack;
  d["mean_rtt_s"] = m.mean_rtt_s;
  d["mean_rtt_baseline_s"] = m.mean_rtt_baseline_s;
  d["mean_rtt_recovered_s"] = m.mean_rtt_recovered_s;
  d["conservation_ok"] = m.conservation_ok;
  py::dict nodes;
  for (const auto& [id, nm] : m.nodes) {
    py::dict node;
    node["cs_lookups"] = nm.ops.cs_lookups;
    node["cs_inserts"] = nm.ops.cs_inserts;
    node["pit_lookups"] = nm.ops.pit_lookups;
    node["pit_inserts"] = nm.ops.pit_inserts;
    node["pit_deletes"] = nm.ops.pit_deletes;
    node["fib_lookups"] = nm.ops.fib_lookups;
    node["nacks_sent"] = nm.ops.nacks_sent;
    node["interests_rx"] = nm.interests_rx;
    node["contents_rx"] = nm.contents_rx;
    node["drops"] = nm.drops;
    node["collapses"] = nm.collapses;
    node["interest_ops"] = nm.interest_ops;
    node["content_ops"] = nm.content_ops;
    nodes[py::str(id)] = node;
  }
  d["nodes"] = nodes;
  py::list rtt;
  for (const RttRow& r : m.rtt_by_hops()) {
    rtt.append(py::make_tuple(r.hops, r.mean_rtt_s, r.stddev, r.count));
  }
  d["rtt_by_hops"] = rtt;
  d["csv"] = m.to_csv(run_id, header);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "stateful vs stateless content-centric forwarding laboratory";

  py::register_exception<MalformedName>(m, "MalformedNameError");
  py::register_exception<MalformedMessage>(m, "MalformedMessageError");
  py::register_exception<MessageTooLarge>(m, "MessageTooLargeError");
  py::register_exception<TopologyError>(m, "TopologyErrorException");

  py::class_<Name>(m, "Name")
      .def(py::init<>())
      .def(py::init(&name_from_text), py::arg("text"))
      .def_property_readonly("components", &Name::components)
      .def("is_prefix_of", &Name::is_prefix_of)
      .def("__str__", [](const Name& n) { return format_lci(n); })
      .def("__repr__", [](const Name& n) { return "Name('" + format_lci(n) + "')"; })
      .def("__eq__", [](const Name& a, const Name& b) { return a == b; })
      .def("__len__", &Name::size);

  m.def("parse_lci", &parse_lci, py::arg("text"), "Parse an lci:/... textual name");
  m.def("format_lci", &format_lci, py::arg("name"));
  m.def("aggregate_prefixes",
        [](const std::vector<Name>& names) { return aggregate_prefixes(names); },
        py::arg("names"), "Longest common prefix of a batch of names");

  py::enum_<MessageType>(m, "MessageType")
      .value("Interest", MessageType::Interest)
      .value("ContentObject", MessageType::ContentObject)
      .value("Nack", MessageType::Nack);

  py::enum_<NackReason>(m, "NackReason")
      .value("NoSupportingName", NackReason::NoSupportingName)
      .value("PitFull", NackReason::PitFull);

  py::class_<Message>(m, "Message")
      .def(py::init<>())
      .def_readwrite("type", &Message::type)
      .def_readwrite("name", &Message::name)
      .def_readwrite("supporting_name", &Message::supporting_name)
      .def_property(
          "payload",
          [](const Message& msg) -> py::object {
            if (!msg.payload) return py::none();
            return py::bytes(*msg.payload);
          },
          [](Message& msg, const std::optional<std::string>& v) { msg.payload = v; })
      .def_readwrite("validation_alg", &Message::validation_alg)
      .def_readwrite("validation_payload", &Message::validation_payload)
      .def_readwrite("nack_reason", &Message::nack_reason)
      .def("__eq__", [](const Message& a, const Message& b) { return a == b; })
      .def_static("interest", &Message::interest, py::arg("name"),
                  py::arg("rbn") = std::nullopt)
      .def_static("nack", &Message::nack, py::arg("interest"), py::arg("reason"));

  m.def("make_content", &make_content, py::arg("interest"), py::arg("payload"));
  m.def("encode", &encode_py, py::arg("message"));
  m.def("decode", &decode_py, py::arg("wire"));
  m.def("validation_input", &validation_input_py, py::arg("message"));

  py::class_<Fib>(m, "Fib")
      .def(py::init<>())
      .def("insert",
           [](Fib& fib, const std::string& prefix, InterfaceId iface) {
             fib.insert(parse_lci(prefix), iface);
           })
      .def("lookup",
           [](const Fib& fib, const std::string& name) { return fib.lookup(parse_lci(name)); })
      .def("dump", &Fib::dump)
      .def_static("load", [](const std::string& text) { return Fib::load(text); })
      .def("__len__", &Fib::size);

  m.def(
      "collapse_probability",
      [](double lam, double sigma, double delta) {
        return collapse_prob_general({lam, sigma, delta, 0.0});
      },
      py::arg("lam"), py::arg("sigma"), py::arg("delta"),
      "Multi-segment collapse probability (cache ignored)");
  m.def(
      "collapse_probability_cached",
      [](double lam, double delta, double p_hit) {
        return collapse_prob_single({lam, 1.0, delta, p_hit});
      },
      py::arg("lam"), py::arg("delta"), py::arg("p_hit"),
      "Single-segment collapse probability attenuated by the local cache");
  m.def(
      "collapse_window_from_path",
      [](const std::vector<double>& lengths, const std::vector<double>& alphas,
         const std::optional<std::vector<double>>& per_hop_hit) {
        return delta_from_path(path_from(lengths, alphas, per_hop_hit));
      },
      py::arg("lengths_m"), py::arg("alphas"), py::arg("per_hop_hit") = std::nullopt);
  m.def(
      "collapse_probability_over_path",
      [](double lam, double p_hit, const std::vector<double>& lengths,
         const std::vector<double>& alphas) {
        return collapse_prob_over_path(lam, p_hit, path_from(lengths, alphas, std::nullopt));
      },
      py::arg("lam"), py::arg("p_hit"), py::arg("lengths_m"), py::arg("alphas"));
  m.def("zipf_halving_rates", &zipf_rates, py::arg("classes"), py::arg("lambda1"));
  m.def(
      "estimate_collapse_probability",
      [](double lam, double sigma, double delta, double p_hit, std::uint64_t trials,
         std::uint64_t seed) {
        auto est = monte_carlo_collapse({lam, sigma, delta, p_hit}, trials, seed);
        return py::make_tuple(est.probability, est.stderr_);
      },
      py::arg("lam"), py::arg("sigma"), py::arg("delta"), py::arg("p_hit"), py::arg("trials"),
      py::arg("seed"), "Monte-Carlo estimate, returns (probability, stderr)");

  m.def("generate_topology",
        [](const std::string& kind, std::uint64_t seed) {
          return generate_topology(kind, seed).serialize();
        },
        py::arg("kind"), py::arg("seed"), "Topology text for line:/tree:/dfn_like/att_like");

  m.def(
      "run_simulation",
      [](const std::string& topology_text, const std::string& mode, std::uint64_t seed,
         double duration, double rate, bool unique_suffix, std::size_t classes,
         std::size_t pit_capacity, double pit_lifetime, const std::string& pit_policy,
         std::optional<py::dict> attack) {
        Topology topo = Topology::parse(topology_text);
        topo.validate();
        SimConfig cfg;
        cfg.seed = seed;
        cfg.duration_s = duration;
        if (!mode.empty()) cfg.mode_override = parse_mode(mode);
        cfg.traffic.rate_per_consumer = rate;
        cfg.traffic.unique_suffix = unique_suffix;
        cfg.traffic.num_classes = classes;
        cfg.pit_capacity = pit_capacity;
        cfg.pit_lifetime_s = pit_lifetime;
        cfg.pit_full_policy = pit_policy == "evict"  ? PitFullPolicy::EvictOldest
                              : pit_policy == "nack" ? PitFullPolicy::NackNew
                                                     : PitFullPolicy::DropNew;
        if (attack) {
          AttackSpec spec;
          for (auto item : (*attack)["attackers"].cast<py::list>()) {
            spec.attackers.push_back(item.cast<std::string>());
          }
          spec.rate = (*attack)["rate"].cast<double>();
          spec.start_s = (*attack)["start"].cast<double>();
          spec.stop_s = (*attack)["stop"].cast<double>();
          cfg.attack = spec;
        }
        RunMetrics metrics = run_simulation(topo, cfg);
        std::string run_id = (mode.empty() ? "per-node" : mode) + "-" + std::to_string(seed);
        return metrics_to_dict(metrics, run_id, "ccnlab python run");
      },
      py::arg("topology"), py::arg("mode") = "", py::arg("seed") = 1,
      py::arg("duration") = 10.0, py::arg("rate") = 10.0, py::arg("unique_suffix") = true,
      py::arg("classes") = 4, py::arg("pit_capacity") = std::size_t{1} << 20,
      py::arg("pit_lifetime") = 4.0, py::arg("pit_policy") = "drop",
      py::arg("attack") = std::nullopt,
      "Run one deterministic simulation and return a metrics dict (with CSV)");
}
