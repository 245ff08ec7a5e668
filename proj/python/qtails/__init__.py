"""Thin convenience layer over the _qtails extension module."""

import json

from _qtails import (
    catalog_ids,
    diagnose_json,
    eval_coeffs,
    ideal_count_list,
    named_series_ids,
    rank_count_map,
    run_script,
    sequence_coeffs,
    series_coeffs,
    verify_json,
)

__all__ = [
    "catalog_ids",
    "diagnose",
    "diagnose_json",
    "eval_coeffs",
    "ideal_count_list",
    "named_series_ids",
    "rank_count_map",
    "run_script",
    "sequence_coeffs",
    "series_coeffs",
    "verify",
    "verify_json",
]


def verify(identity_id, order):
    """Verify a catalog identity; returns the report as a dict."""
    return json.loads(verify_json(identity_id, order))


def diagnose(identity_id, order):
    """Diagnose a failing catalog identity; returns the report as a dict."""
    return json.loads(diagnose_json(identity_id, order))
