"""Posets, enriched assignments, generating functions, splits."""

import itertools
import math
import random

import pytest

from qsym.combinatorics import (
    composition_of_subset,
    descent_set_of_permutation,
    odd_composition_of_peak_set,
    peak_set_of_permutation,
    shuffles,
)
from qsym.core import K_to_eta, QSymElement, convert
from qsym.expansion import expand, poly_add, poly_mul
from qsym.ppartitions import (
    LabelledWeightedPoset,
    chain_poset,
    coshuffle_product,
    enumerate_assignments,
    gamma,
    is_enriched_partition,
    positive_alphabet,
    signed_alphabet,
    signed_order_key,
    split_incomparable,
    universal_gamma,
    universal_to_eta,
    weighted_chain,
)
from qsym.ppartitions import _gamma_chain, _gamma_dfs


def test_signed_order():
    values = [3, -1, 2, -3, 1, -2]
    assert sorted(values, key=signed_order_key) == [-1, 1, -2, 2, -3, 3]
    with pytest.raises(ValueError):
        signed_order_key(0)


def test_alphabets():
    assert positive_alphabet(3) == (1, 2, 3)
    assert signed_alphabet(2) == (-1, 1, -2, 2)
    assert signed_alphabet(0) == ()


def test_poset_construction():
    p = LabelledWeightedPoset(3, [(1, 2), (2, 3)])
    assert p.less(1, 3)  # closure
    assert not p.less(3, 1)
    assert p.covers() == [(1, 2), (2, 3)]
    assert p.weights == (1, 1, 1)
    with pytest.raises(ValueError):
        LabelledWeightedPoset(2, [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        LabelledWeightedPoset(2, [(1, 1)])
    with pytest.raises(ValueError):
        LabelledWeightedPoset(2, [(1, 3)])
    with pytest.raises(ValueError):
        LabelledWeightedPoset(2, weights=(1, 0))


def test_poset_json_round_trip():
    p = LabelledWeightedPoset(4, [(1, 2), (2, 4), (3, 4)], (2, 1, 1, 3))
    data = p.to_json_dict()
    assert data == {"n": 4, "covers": [[1, 2], [2, 4], [3, 4]], "weights": [2, 1, 1, 3]}
    assert LabelledWeightedPoset.from_json_dict(data) == p


def test_chain_poset():
    p = chain_poset((1, 2))
    assert p.less(1, 2) and not p.less(2, 1)
    p = chain_poset((2, 1))
    assert p.less(2, 1)
    p = chain_poset((1, 3, 2))
    assert p.less(1, 3) and p.less(3, 2) and p.less(1, 2)
    assert p.chain_order() == (1, 3, 2)
    assert chain_poset(()).n == 0


def test_weighted_chain():
    p = weighted_chain((1, 2), (2, 2))
    assert p.weights == (2, 2)
    p = weighted_chain((2, 1), (3, 1))
    assert p.weight(2) == 3 and p.weight(1) == 1
    p = weighted_chain((1,), (5,))
    assert p.weights == (5,)
    with pytest.raises(ValueError):
        weighted_chain((1, 2), (1,))


def test_is_enriched_partition():
    up = chain_poset((1, 2))
    down = chain_poset((2, 1))
    assert is_enriched_partition(up, (3, 3))
    assert not is_enriched_partition(down, (3, 3))
    assert is_enriched_partition(down, (-3, -3))
    assert is_enriched_partition(up, (-1, 1))
    assert not is_enriched_partition(up, (1, -1))
    assert not is_enriched_partition(up, (-1, -1))
    with pytest.raises(ValueError):
        is_enriched_partition(up, (1,))


def test_enumerate_assignments_small():
    single = LabelledWeightedPoset(1)
    assert len(enumerate_assignments(single, signed_alphabet(4))) == 8
    assert enumerate_assignments(chain_poset((1, 2)), (1,)) == [(1, 1)]
    assert enumerate_assignments(chain_poset((2, 1)), (1,)) == []
    assert enumerate_assignments(LabelledWeightedPoset(0), (1, -1)) == [()]


def _random_poset(rng, max_n=6, weighted=False):
    n = rng.randint(1, max_n)
    theta = list(range(1, n + 1))
    rng.shuffle(theta)
    relations = [
        (theta[i], theta[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < 0.35
    ]
    weights = tuple(rng.randint(1, 3) for _ in range(n)) if weighted else None
    return LabelledWeightedPoset(n, relations, weights)


def test_enumerate_matches_brute_force():
    rng = random.Random(3)
    for _ in range(25):
        poset = _random_poset(rng, max_n=4)
        zs = signed_alphabet(2)
        got = enumerate_assignments(poset, zs)
        want = sorted(
            (
                values
                for values in itertools.product(zs, repeat=poset.n)
                if is_enriched_partition(poset, values)
            ),
            key=lambda t: tuple(signed_order_key(v) for v in t),
        )
        assert got == want


def test_positive_restriction_is_plain_partition():
    # A plain P-partition weakly increases along the order, strictly when
    # the labels decrease; over the positive alphabet the enriched
    # conditions degenerate to exactly that.
    def plain_ok(poset, values):
        for i, j in poset.relations:
            if values[i - 1] > values[j - 1]:
                return False
            if i > j and values[i - 1] >= values[j - 1]:
                return False
        return True

    rng = random.Random(5)
    for _ in range(25):
        poset = _random_poset(rng, max_n=4)
        zs = positive_alphabet(3)
        got = set(enumerate_assignments(poset, zs))
        want = {
            values
            for values in itertools.product(zs, repeat=poset.n)
            if plain_ok(poset, values)
        }
        assert got == want


def test_gamma_single_vertex():
    single = LabelledWeightedPoset(1)
    p = gamma(single, positive_alphabet(4))
    assert dict(p.terms) == {((i, 1),): 1 for i in range(1, 5)}
    p = gamma(single, signed_alphabet(4))
    assert dict(p.terms) == {((i, 1),): 2 for i in range(1, 5)}
    heavy = LabelledWeightedPoset(1, weights=(3,))
    p = gamma(heavy, signed_alphabet(4))
    assert p == expand(QSymElement.term("eta", (3,)), 4, 3)


def test_gamma_degenerate_cases():
    assert dict(gamma(LabelledWeightedPoset(0), signed_alphabet(2)).terms) == {(): 1}
    assert gamma(LabelledWeightedPoset(2, [(1, 2)]), ()).is_zero
    with pytest.raises(ValueError):
        gamma(LabelledWeightedPoset(1), signed_alphabet(3), nvars=2)
    with pytest.raises(ValueError):
        gamma(LabelledWeightedPoset(1), (0, 1))


def test_gamma_chain_matches_dfs():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(1, 5)
        word = list(range(1, n + 1))
        rng.shuffle(word)
        alpha = tuple(rng.randint(1, 3) for _ in range(n))
        poset = weighted_chain(tuple(word), alpha)
        zs = signed_alphabet(3)
        fast = _gamma_chain(poset.chain_order(), poset.weights, zs, 3, sum(alpha))
        slow = _gamma_dfs(poset, zs, 3, sum(alpha))
        assert fast == slow


@pytest.mark.parametrize("n", range(1, 6))
def test_chain_functions_match_descent_and_peak_classes(n):
    pos = positive_alphabet(5)
    sgn = signed_alphabet(5)
    for word in itertools.permutations(range(1, n + 1)):
        chain = chain_poset(word)
        l_comp = composition_of_subset(n, descent_set_of_permutation(word))
        assert gamma(chain, pos) == expand(QSymElement.term("L", l_comp), 5, n)
        k_comp = odd_composition_of_peak_set(n, peak_set_of_permutation(word))
        assert gamma(chain, sgn) == expand(QSymElement.term("K", k_comp), 5, n)


def test_split_incomparable():
    antichain = LabelledWeightedPoset(2, weights=(2, 3))
    p1, p2 = split_incomparable(antichain, 1, 2)
    assert p1.less(1, 2) and p2.less(2, 1)
    zs = signed_alphabet(3)
    assert gamma(antichain, zs) == poly_add(gamma(p1, zs), gamma(p2, zs))
    with pytest.raises(ValueError):
        split_incomparable(p1, 1, 2)


def test_split_soundness_random():
    rng = random.Random(17)
    zs = signed_alphabet(3)
    done = 0
    while done < 50:
        poset = _random_poset(rng, max_n=6, weighted=True)
        pairs = poset.incomparable_pairs()
        if not pairs:
            continue
        i, j = rng.choice(pairs)
        p1, p2 = split_incomparable(poset, i, j)
        assert gamma(poset, zs) == poly_add(gamma(p1, zs), gamma(p2, zs))
        done += 1


def test_split_two_chains_terminates_in_shuffles():
    n, m = 2, 2
    pi, sigma = (2, 1), (1, 2)
    relations = [(pi[0], pi[1])] + [(n + sigma[0], n + sigma[1])]
    start = LabelledWeightedPoset(n + m, relations)
    stack, chains = [start], []
    while stack:
        poset = stack.pop()
        pairs = poset.incomparable_pairs()
        if not pairs:
            chains.append(poset)
            continue
        stack.extend(split_incomparable(poset, *pairs[0]))
    assert len(chains) == math.comb(n + m, n)
    assert len(set(chains)) == len(chains)
    zs = signed_alphabet(2)
    total = None
    for chain in chains:
        piece = gamma(chain, zs)
        total = piece if total is None else poly_add(total, piece)
    assert total == gamma(start, zs)


def test_universal_gamma_specializations():
    word, alpha = (1, 3, 2), (2, 1, 2)
    assert universal_gamma(word, (1, 1, 1), positive_alphabet(5)) == expand(
        QSymElement.term("L", (2, 1)), 5, 3
    )
    assert universal_gamma((1, 2, 3), alpha, signed_alphabet(4)) == expand(
        QSymElement.term("eta", alpha), 4, 5
    )
    assert universal_gamma((3, 2, 1), alpha, positive_alphabet(4)) == expand(
        QSymElement.term("M", alpha), 4, 5
    )


def test_universal_to_eta():
    assert universal_to_eta((1, 2, 3), (2, 1, 2)) == QSymElement.term("eta", (2, 1, 2))
    assert universal_to_eta((1, 3, 2), (1, 1, 1)) == QSymElement(
        "eta", {(1, 1, 1): 1, (3,): -1}
    )
    assert universal_to_eta((1, 3, 2), (1, 1, 1)) == K_to_eta((3,))
    with pytest.raises(ValueError):
        universal_to_eta((1, 2), (1,))


@pytest.mark.parametrize("n", range(1, 4))
def test_universal_to_eta_matches_gamma(n):
    sgn = signed_alphabet(4)
    for word in itertools.permutations(range(1, n + 1)):
        for alpha in itertools.product((1, 2, 3), repeat=n):
            symbolic = universal_to_eta(word, alpha)
            assert expand(symbolic, 4, sum(alpha)) == universal_gamma(
                word, alpha, sgn, 4
            )


def test_coshuffle_product():
    pairs = coshuffle_product((1,), (2,), (1,), (1,))
    assert set(pairs) == {((1, 2), (2, 1)), ((2, 1), (1, 2))}
    zs = signed_alphabet(3)
    lhs = poly_mul(
        universal_gamma((1,), (2,), zs), universal_gamma((1,), (1,), zs)
    )
    rhs = None
    for tau, comp in pairs:
        piece = universal_gamma(tau, comp, zs)
        rhs = piece if rhs is None else poly_add(rhs, piece)
    assert lhs == rhs
    assert coshuffle_product((), (), (1,), (3,)) == [((1,), (3,))]
    assert ((1, 3, 2), (2, 1, 2)) in coshuffle_product((1, 2), (2, 2), (1,), (1,))


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_shuffle_product_identity(n, m):
    for zs in (positive_alphabet(4), signed_alphabet(4)):
        for pi in itertools.permutations(range(1, n + 1)):
            for sigma in itertools.permutations(range(1, m + 1)):
                lhs = poly_mul(
                    gamma(chain_poset(pi), zs, 4), gamma(chain_poset(sigma), zs, 4)
                )
                rhs = None
                for word in shuffles(pi, sigma):
                    piece = gamma(chain_poset(word), zs, 4)
                    rhs = piece if rhs is None else poly_add(rhs, piece)
                assert lhs == rhs


def test_enumeration_is_memoization_safe():
    # cached gamma results must not leak mutable state between calls
    chain = chain_poset((1, 2))
    first = gamma(chain, signed_alphabet(2))
    again = gamma(chain, signed_alphabet(2))
    assert first == again and first.terms == again.terms
