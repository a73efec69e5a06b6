"""Observer-selection inference.

Exact posteriors under SSA, SIA and FNC, scenario files, the worked-example
catalog, and the Fermi interference model.
"""

from ._obsel import (
    Error,
    ExactProb,
    ParseError,
    Posterior,
    RegimeViolationError,
    Rule,
    Scenario,
    ScenarioDocument,
    catalog_names,
    check_catalog,
    fermi,
    parse_rule,
    parse_scenario,
    run_entry,
    serialize_scenario,
)

__all__ = [
    "Error",
    "ExactProb",
    "ParseError",
    "Posterior",
    "RegimeViolationError",
    "Rule",
    "Scenario",
    "ScenarioDocument",
    "catalog_names",
    "check_catalog",
    "fermi",
    "parse_rule",
    "parse_scenario",
    "run_entry",
    "serialize_scenario",
]
