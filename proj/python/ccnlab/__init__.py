"""Stateful vs stateless content-centric forwarding laboratory.

The heavy lifting lives in the compiled `_core` extension; this package
re-exports its public surface.
"""

from ._core import (  # noqa: F401
    Fib,
    MalformedMessageError,
    MalformedNameError,
    Message,
    MessageType,
    MessageTooLargeError,
    NackReason,
    Name,
    TopologyErrorException,
    aggregate_prefixes,
    collapse_probability,
    collapse_probability_cached,
    collapse_probability_over_path,
    collapse_window_from_path,
    decode,
    encode,
    estimate_collapse_probability,
    format_lci,
    generate_topology,
    make_content,
    parse_lci,
    run_simulation,
    validation_input,
    zipf_halving_rates,
)

__all__ = [
    "Fib",
    "MalformedMessageError",
    "MalformedNameError",
    "Message",
    "MessageType",
    "MessageTooLargeError",
    "NackReason",
    "Name",
    "TopologyErrorException",
    "aggregate_prefixes",
    "collapse_probability",
    "collapse_probability_cached",
    "collapse_probability_over_path",
    "collapse_window_from_path",
    "decode",
    "encode",
    "estimate_collapse_probability",
    "format_lci",
    "generate_topology",
    "make_content",
    "parse_lci",
    "run_simulation",
    "validation_input",
    "zipf_halving_rates",
]
