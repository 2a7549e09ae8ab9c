"""Shared test configuration.

Hypothesis runs with a fixed modest budget so the whole suite stays fast
and deterministic across machines.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
