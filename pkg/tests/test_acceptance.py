"""Acceptance suite: every criterion at its full sweep bound, timed.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion, or equivalently ``qsym verify``.
"""

import time

import pytest

from qsym.verification import (
    check_antipode,
    check_basis_round_trip,
    check_eta_coproduct,
    check_eta_product_rule,
    check_golden_examples,
    check_peak_conversion,
    check_shuffle_products,
    check_signed_subset_sum,
    check_specializations,
    check_u_expansion,
)

CRITERIA = [
    ("criterion 1: golden worked examples", check_golden_examples, 10.0),
    ("criterion 2: M/eta basis round trips, n <= 7", check_basis_round_trip, 10.0),
    ("criterion 3: eta product rule, |a|+|b| <= 7", check_eta_product_rule, 60.0),
    ("criterion 4: eta coproduct, n <= 6, 20 splits", check_eta_coproduct, 30.0),
    ("criterion 5: antipode identities and Hopf axiom", check_antipode, 30.0),
    ("criterion 6: P-partition specializations, n <= 5", check_specializations, 120.0),
    ("criterion 7: shuffle/coshuffle products, n+m <= 6", check_shuffle_products, 120.0),
    ("criterion 8: chain-to-eta expansion, S_4, parts <= 3", check_u_expansion, 60.0),
    ("criterion 9: peak-function conversion, odd |a| <= 7", check_peak_conversion, 30.0),
    ("criterion 10: signed subset sums over [5]", check_signed_subset_sum, 5.0),
]


@pytest.mark.parametrize(
    "label,check,budget", CRITERIA, ids=[f"c{k}" for k in range(1, 11)]
)
def test_acceptance_criterion(label, check, budget):
    start = time.perf_counter()
    result = check(None)
    elapsed = time.perf_counter() - start
    status = "PASS" if result.passed else "FAIL"
    print(f"{status}  {label}: {result.detail} [{elapsed:.2f}s]")
    assert result.passed, "\n".join(result.lines())
    assert elapsed < budget, f"{label} took {elapsed:.2f}s, budget {budget}s"
