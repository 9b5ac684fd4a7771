"""Compositions, permutations, descent and peak statistics, shuffles.

Conventions used throughout the package:

- A *composition* is a tuple of positive ints; the empty tuple is the empty
  composition.  ``sum(alpha)`` is its size, ``len(alpha)`` its length.
- A *permutation* of [n] is its one-line word, a tuple containing each of
  1..n exactly once.  The empty tuple is the unique permutation of [0].
- A *subset of [n-1]* is a strictly increasing tuple of ints; the ambient n
  is always passed alongside where it matters.

All functions are pure and all values are immutable.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, NamedTuple, Sequence

Composition = tuple[int, ...]
Permutation = tuple[int, ...]
Subset = tuple[int, ...]


def check_composition(alpha: Iterable[int]) -> Composition:
    """Coerce to a tuple and verify every part is a positive integer."""
    parts = tuple(alpha)
    for a in parts:
        if not isinstance(a, int) or isinstance(a, bool) or a < 1:
            raise ValueError(f"composition parts must be positive integers, got {parts!r}")
    return parts


def check_permutation(pi: Iterable[int]) -> Permutation:
    """Coerce to a tuple and verify it is a rearrangement of 1..n."""
    word = tuple(pi)
    if sorted(word) != list(range(1, len(word) + 1)):
        raise ValueError(f"not a permutation of 1..{len(word)}: {word!r}")
    return word


def identity_permutation(n: int) -> Permutation:
    """1 2 ... n in one-line notation."""
    return tuple(range(1, n + 1))


def reversed_identity(n: int) -> Permutation:
    """n n-1 ... 1 in one-line notation."""
    return tuple(range(n, 0, -1))


def subsets(items: Sequence) -> Iterator[tuple]:
    """All subsets of ``items`` as tuples, by increasing size.

    >>> list(subsets((1, 2)))
    [(), (1,), (2,), (1, 2)]
    """
    return itertools.chain.from_iterable(
        itertools.combinations(items, r) for r in range(len(items) + 1)
    )


def is_peak_lacunar(s: Iterable[int]) -> bool:
    """True iff the set neither contains 1 nor two consecutive integers.

    >>> is_peak_lacunar((4, 7))
    True
    >>> is_peak_lacunar((1, 3))
    False
    >>> is_peak_lacunar((3, 4))
    False
    """
    elems = sorted(s)
    if 1 in elems:
        return False
    return all(b - a >= 2 for a, b in zip(elems, elems[1:]))


# ---------------------------------------------------------------------------
# compositions <-> subsets of [n-1]


def descent_set(alpha: Iterable[int]) -> Subset:
    """Proper partial sums of a composition.

    >>> descent_set((1, 1, 3, 3, 1))
    (1, 2, 5, 8)
    >>> descent_set((5,))
    ()
    """
    parts = check_composition(alpha)
    out = []
    total = 0
    for a in parts[:-1]:
        total += a
        out.append(total)
    return tuple(out)


def composition_of_subset(n: int, s: Iterable[int]) -> Composition:
    """The unique composition of n whose descent set is ``s``.

    Inverse of :func:`descent_set`.

    >>> composition_of_subset(9, (1, 2, 5, 8))
    (1, 1, 3, 3, 1)
    >>> composition_of_subset(4, ())
    (4,)
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    elems = sorted(s)
    if any(not 1 <= x <= n - 1 for x in elems):
        raise ValueError(f"subset {tuple(elems)!r} not contained in [1, {n - 1}]")
    if any(a == b for a, b in zip(elems, elems[1:])):
        raise ValueError(f"repeated element in {tuple(elems)!r}")
    if n == 0:
        return ()
    bounds = [0] + elems + [n]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def compositions(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, ordered by their descent subsets.

    >>> list(compositions(3))
    [(3,), (1, 2), (2, 1), (1, 1, 1)]
    """
    if n == 0:
        yield ()
        return
    for s in subsets(tuple(range(1, n))):
        yield composition_of_subset(n, s)


def odd_compositions(n: int) -> Iterator[Composition]:
    """All compositions of n with every part odd."""
    return (alpha for alpha in compositions(n) if all(a % 2 == 1 for a in alpha))


# ---------------------------------------------------------------------------
# odd compositions <-> peak-lacunar subsets


def odd_part_refinement(alpha: Iterable[int]) -> Composition:
    """Replace each odd part 2i+1 by i twos followed by a one.

    >>> odd_part_refinement((1, 1, 3, 3, 1))
    (1, 1, 2, 1, 2, 1, 1)
    """
    parts = check_composition(alpha)
    out: list[int] = []
    for a in parts:
        if a % 2 == 0:
            raise ValueError(f"all parts must be odd, got {parts!r}")
        out.extend([2] * (a // 2))
        out.append(1)
    return tuple(out)


def peak_set_of_composition(alpha: Iterable[int]) -> Subset:
    """Peak set of an odd composition, via its refinement into twos and ones.

    The peaks are the partial sums of the refinement taken at each part
    equal to 2; the result is peak-lacunar in [n-1].

    >>> peak_set_of_composition((1, 1, 3, 3, 1))
    (4, 7)
    >>> peak_set_of_composition((3,))
    (2,)
    """
    refined = odd_part_refinement(alpha)
    peaks = []
    total = 0
    for part in refined:
        total += part
        if part == 2:
            peaks.append(total)
    return tuple(peaks)


def odd_composition_of_peak_set(n: int, s: Iterable[int]) -> Composition:
    """The unique odd composition of n whose peak set is ``s``.

    Inverse of :func:`peak_set_of_composition`.

    >>> odd_composition_of_peak_set(9, (4, 7))
    (1, 1, 3, 3, 1)
    >>> odd_composition_of_peak_set(3, (2,))
    (3,)
    """
    elems = sorted(s)
    if not is_peak_lacunar(elems):
        raise ValueError(f"{tuple(elems)!r} is not peak-lacunar")
    if any(not 1 <= x <= n - 1 for x in elems):
        raise ValueError(f"subset {tuple(elems)!r} not contained in [1, {n - 1}]")
    refined: list[int] = []
    prev = 0
    for x in elems:
        refined.extend([1] * (x - prev - 2))
        refined.append(2)
        prev = x
    refined.extend([1] * (n - prev))
    parts = []
    twos = 0
    for part in refined:
        if part == 2:
            twos += 1
        else:
            parts.append(2 * twos + 1)
            twos = 0
    return tuple(parts)


# ---------------------------------------------------------------------------
# permutation statistics


def descent_set_of_permutation(pi: Iterable[int]) -> Subset:
    """Positions i with pi(i) > pi(i+1).

    >>> descent_set_of_permutation((1, 4, 2, 5, 3))
    (2, 4)
    """
    word = check_permutation(pi)
    return tuple(i for i in range(1, len(word)) if word[i - 1] > word[i])


def peak_set_of_permutation(pi: Iterable[int]) -> Subset:
    """Interior positions i with pi(i-1) < pi(i) > pi(i+1); always peak-lacunar.

    >>> peak_set_of_permutation((1, 3, 2))
    (2,)
    >>> peak_set_of_permutation((1, 4, 2, 5, 3))
    (2, 4)
    """
    word = check_permutation(pi)
    return tuple(
        i for i in range(2, len(word)) if word[i - 2] < word[i - 1] > word[i]
    )


# ---------------------------------------------------------------------------
# shuffles and coshuffles


def shuffles(pi: Iterable[int], sigma: Iterable[int]) -> list[Permutation]:
    """All interleavings of pi and the shifted word n+sigma, as permutations.

    The result has C(n+m, n) entries, pairwise distinct as words, ordered by
    the positions chosen for the shifted letters.

    >>> shuffles((1, 2), (1,))
    [(3, 1, 2), (1, 3, 2), (1, 2, 3)]
    """
    left = check_permutation(pi)
    right = check_permutation(sigma)
    n = len(left)
    shifted = tuple(n + x for x in right)
    return [word for word, _, _ in _interleavings(left, shifted)]


class CoshufflePair(NamedTuple):
    """A simultaneous shuffle of two permutation words and their weights."""

    perm: Permutation
    comp: Composition
    right_positions: Subset  # 1-based positions of the second word's entries


def coshuffles(
    pi: Iterable[int],
    alpha: Iterable[int],
    sigma: Iterable[int],
    beta: Iterable[int],
) -> list[CoshufflePair]:
    """Shuffle (pi, alpha) with (sigma, beta) using the same interleaving.

    For each of the C(n+m, n) interleaving patterns the permutation letters
    of pi and n+sigma and the parts of alpha and beta are placed in the same
    slots; ``right_positions`` records where beta's parts land.

    >>> coshuffles((1, 2), (2, 2), (1,), (1,))[1]
    CoshufflePair(perm=(1, 3, 2), comp=(2, 1, 2), right_positions=(2,))
    """
    left_word = check_permutation(pi)
    right_word = check_permutation(sigma)
    left_parts = check_composition(alpha)
    right_parts = check_composition(beta)
    if len(left_word) != len(left_parts) or len(right_word) != len(right_parts):
        raise ValueError("each composition must have one part per permutation letter")
    n = len(left_word)
    shifted = tuple(n + x for x in right_word)
    out = []
    for word, positions, _ in _interleavings(left_word, shifted):
        comp = _interleave_values(left_parts, right_parts, positions, n + len(shifted))
        out.append(CoshufflePair(word, comp, positions))
    return out


def _interleavings(left: tuple, right: tuple):
    """Yield (merged word, 1-based positions of right's letters, positions set)."""
    total = len(left) + len(right)
    for positions in itertools.combinations(range(1, total + 1), len(right)):
        yield (
            _interleave_values(left, right, positions, total),
            positions,
            frozenset(positions),
        )


def _interleave_values(left: tuple, right: tuple, positions: Sequence[int], total: int):
    pos = set(positions)
    word = []
    li = ri = 0
    for k in range(1, total + 1):
        if k in pos:
            word.append(right[ri])
            ri += 1
        else:
            word.append(left[li])
            li += 1
    return tuple(word)


def quasi_shuffles(alpha: Composition, beta: Composition) -> Iterator[Composition]:
    """All quasi-shuffles of two compositions, one per interleaving pattern.

    Adjacent parts coming one from each composition may merge by addition,
    so the same composition can be yielded several times.

    >>> sorted(quasi_shuffles((1,), (1,)))
    [(1, 1), (1, 1), (2,)]
    """
    if not alpha:
        yield beta
        return
    if not beta:
        yield alpha
        return
    for tail in quasi_shuffles(alpha[1:], beta):
        yield (alpha[0],) + tail
    for tail in quasi_shuffles(alpha, beta[1:]):
        yield (beta[0],) + tail
    for tail in quasi_shuffles(alpha[1:], beta[1:]):
        yield (alpha[0] + beta[0],) + tail


# ---------------------------------------------------------------------------
# contraction and the antipode index maps


def contract(alpha: Iterable[int], i: int) -> Composition:
    """Merge the parts at positions i-1, i, i+1 (1-based) into their sum.

    >>> contract((2, 1, 4, 3, 2), 3)
    (2, 8, 2)
    """
    parts = check_composition(alpha)
    if not 2 <= i <= len(parts) - 1:
        raise ValueError(f"index {i} not in [2, {len(parts) - 1}]")
    return parts[: i - 2] + (parts[i - 2] + parts[i - 1] + parts[i],) + parts[i + 1 :]


def contract_set(alpha: Iterable[int], indices: Iterable[int]) -> Composition:
    """Apply :func:`contract` at a peak-lacunar index set, largest index first.

    Because no two indices are consecutive, every index is still a valid
    interior position at its turn; the size is preserved and the length
    drops by two per index.

    >>> contract_set((2, 1, 4, 3, 2), (2, 4))
    (12,)
    >>> contract_set((2, 1, 4, 3, 2), ())
    (2, 1, 4, 3, 2)
    """
    parts = check_composition(alpha)
    elems = sorted(indices, reverse=True)
    if not is_peak_lacunar(elems):
        raise ValueError(f"{tuple(sorted(elems))!r} is not peak-lacunar")
    if elems and elems[0] > len(parts) - 1:
        raise ValueError(f"index {elems[0]} not in [2, {len(parts) - 1}]")
    for i in elems:
        parts = contract(parts, i)
    return parts


def reverse(alpha: Iterable[int]) -> Composition:
    """The parts in reverse order."""
    return tuple(reversed(check_composition(alpha)))


def complement(alpha: Iterable[int]) -> Composition:
    """The composition whose descent set complements that of the reversal.

    This is the index map of the antipode on the fundamental basis:
    Des(complement(alpha)) = [n-1] \\ Des(reverse(alpha)).

    >>> complement((2, 1))
    (2, 1)
    >>> complement((4,))
    (1, 1, 1, 1)
    """
    parts = check_composition(alpha)
    if not parts:
        raise ValueError("the empty composition has no complement")
    n = sum(parts)
    rev_descents = set(descent_set(reverse(parts)))
    return composition_of_subset(n, [i for i in range(1, n) if i not in rev_descents])
