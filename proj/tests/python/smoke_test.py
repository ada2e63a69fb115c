"""Smoke tests for the python bindings: codec round trip, model numbers,
and one tiny deterministic simulation."""

import math
import sys

import ccnlab


def test_names():
    name = ccnlab.parse_lci("lci:/edu/uci/ics/bob")
    assert len(name) == 4
    assert str(name) == "lci:/edu/uci/ics/bob"
    assert ccnlab.parse_lci("lci:/edu/uci").is_prefix_of(name)
    agg = ccnlab.aggregate_prefixes(
        [ccnlab.parse_lci("lci:/edu/uci/ics/bob"), ccnlab.parse_lci("lci:/edu/uci/ics/alice")]
    )
    assert str(agg) == "lci:/edu/uci/ics"
    try:
        ccnlab.parse_lci("lci:/a//b")
    except ccnlab.MalformedNameError:
        pass
    else:
        raise AssertionError("empty component accepted")


def test_codec_round_trip():
    interest = ccnlab.Message.interest(
        ccnlab.Name("lci:/bbc/news/today"), ccnlab.Name("lci:/edu/uci/ics/bob")
    )
    content = ccnlab.make_content(interest, "hello")
    wire = ccnlab.encode(content)
    back = ccnlab.decode(wire)
    assert back == content
    assert back.payload == b"hello"

    moved = ccnlab.decode(wire)
    moved.supporting_name = ccnlab.Name("lci:/edu/uci/ics/alice")
    assert ccnlab.validation_input(content) == ccnlab.validation_input(moved)


def test_fib():
    fib = ccnlab.Fib()
    fib.insert("lci:/edu/uci", 4)
    fib.insert("lci:/edu/uci/ics", 9)
    assert fib.lookup("lci:/edu/uci/ics/bob") == 9
    assert fib.lookup("lci:/edu/uci/stats") == 4
    assert fib.lookup("lci:/com") is None


def test_collapse_model():
    p = ccnlab.collapse_probability_cached(40.0, 0.004, 0.0)
    assert abs(p - (1.0 - math.exp(-0.16))) < 1e-12

    rates = ccnlab.zipf_halving_rates(4, 40.0)
    assert rates == [40.0, 20.0, 10.0, 5.0]

    window = ccnlab.collapse_window_from_path([300e3], [1.0])
    assert abs(window - 2e-3) < 1e-15

    over_path = ccnlab.collapse_probability_over_path(40.0, 0.0, [300e3], [1.0])
    composed = ccnlab.collapse_probability_cached(40.0, window, 0.0)
    assert abs(over_path - composed) <= 1e-12

    est, err = ccnlab.estimate_collapse_probability(40.0, 1.0, 0.004, 0.0, 200000, 7)
    assert abs(est - p) <= 3 * err


def test_simulation():
    topo = ccnlab.generate_topology("line:4", seed=1)
    a = ccnlab.run_simulation(topo, mode="stateless", seed=5, duration=2.0, rate=5.0)
    b = ccnlab.run_simulation(topo, mode="stateless", seed=5, duration=2.0, rate=5.0)
    assert a["csv"] == b["csv"]
    assert a["conservation_ok"]
    assert a["delivered"] > 0
    assert all(node["pit_inserts"] == 0 for node in a["nodes"].values())

    c = ccnlab.run_simulation(topo, mode="stateful", seed=5, duration=2.0, rate=5.0)
    assert c["delivered"] > 0
    assert any(node["pit_inserts"] > 0 for node in c["nodes"].values())


def test_attack_run():
    topo = ccnlab.generate_topology("dfn_like", seed=2)
    r = ccnlab.run_simulation(
        topo,
        mode="hybrid",
        seed=3,
        duration=4.0,
        rate=5.0,
        pit_capacity=100,
        attack={"attackers": ["c0"], "rate": 800.0, "start": 1.0, "stop": 3.0},
    )
    assert r["conservation_ok"]
    assert r["issued_attack"] > 0
    assert r["dropped"] == 0
    assert r["legit_drop_rate_during_attack"] == 0.0
    assert r["recovered_deliveries"] > 0
    assert r["mean_rtt_recovered_s"] > r["mean_rtt_baseline_s"]


def main():
    for test in (test_names, test_codec_round_trip, test_fib, test_collapse_model,
                 test_simulation, test_attack_run):
        test()
        print(f"ok {test.__name__}")
    print("python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
