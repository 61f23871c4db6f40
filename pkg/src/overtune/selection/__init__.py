"""Counterfactual incumbent selection."""

from overtune.selection.rules import (
    RuleKind,
    RuleSummary,
    RuleSweep,
    ScatterPoint,
    SelectionOutcome,
    SelectionRule,
    apply_rule,
    parse_rule,
    rule_sweep,
)

__all__ = [
    "RuleKind",
    "RuleSummary",
    "RuleSweep",
    "ScatterPoint",
    "SelectionOutcome",
    "SelectionRule",
    "apply_rule",
    "parse_rule",
    "rule_sweep",
]
