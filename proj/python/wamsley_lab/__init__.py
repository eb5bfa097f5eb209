"""Prime-by-prime structure checks for W(alpha, alpha, gamma)."""

import json

from ._core import (
    WamsleyError,
    classify,
    derived_length_W,
    fp_text,
    general_fp_text,
    hall_identity,
    nilpotency_class,
    order_of_W,
    pc_json,
    relevant_primes,
    v_exponent,
    verify_instance_json,
    witt_rank,
    witt_table,
)

__all__ = [
    "WamsleyError",
    "classify",
    "derived_length_W",
    "fp_text",
    "general_fp_text",
    "hall_identity",
    "nilpotency_class",
    "order_W",
    "order_of_W",
    "pc_json",
    "relevant_primes",
    "v_exponent",
    "verify_instance",
    "witt_rank",
    "witt_table",
]


def verify_instance(alpha, gamma, p, **options):
    """Structure report for one prime as a dict (the CLI JSON schema)."""
    return json.loads(verify_instance_json(alpha, gamma, p, **options))


def order_W(alpha, gamma):
    """|W(alpha, alpha, gamma)| from the per-prime exponents."""
    total = 1
    for q, v in order_of_W(alpha, gamma):
        total *= q**v
    return total
