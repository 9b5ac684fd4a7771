"""Docstring examples stay correct."""

import doctest

import pytest

import qsym.combinatorics
import qsym.core


@pytest.mark.parametrize("module", [qsym.combinatorics, qsym.core])
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
    assert result.attempted > 0
