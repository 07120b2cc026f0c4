"""Exact-rational SRPT simulation on identical machines, with potential-function checks."""

from ._srptlab import (
    DomainError,
    InputError,
    Instance,
    Job,
    OracleLimitError,
    Segment,
    Trace,
    brute_force_opt,
    generate,
    objectives,
    parse_instance,
    simulate,
    sweep_csv,
    verify,
)

__all__ = [
    "DomainError",
    "InputError",
    "Instance",
    "Job",
    "OracleLimitError",
    "Segment",
    "Trace",
    "brute_force_opt",
    "generate",
    "objectives",
    "parse_instance",
    "simulate",
    "sweep_csv",
    "verify",
]
