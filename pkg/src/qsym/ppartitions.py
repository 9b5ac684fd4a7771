"""Labelled weighted posets and Z-enriched P-partitions.

Values live in the signed alphabet {..., -2, 2, -1, 1} ordered as
-1 < 1 < -2 < 2 < -3 < ...; a value is a nonzero int whose sign and
absolute value are the SignedValue's sign and magnitude.  An enriched
P-partition of a labelled poset assigns such a value to every vertex so
that along every relation i <_P j the values weakly increase, with ties
positive when the labels increase and negative when they decrease.

The generating function gamma sums x_|f(i)|^weight(i) over all such
assignments into a finite alphabet; with a weighted chain this produces,
at the right specializations, the monomial, fundamental, peak and
enriched monomial quasisymmetric functions.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .combinatorics import (
    Composition,
    Permutation,
    check_composition,
    check_permutation,
    contract_set,
    coshuffles,
    peak_set_of_permutation,
    subsets,
)
from .core import QSymElement
from .expansion import Monomial, TruncatedPoly, _raw_poly

SignedValue = int  # nonzero: -n is (-, n), +n is (+, n)

Assignment = tuple[SignedValue, ...]  # position i-1 holds the value of label i


def signed_order_key(value: SignedValue) -> tuple[int, int]:
    """Sort key realizing -1 < 1 < -2 < 2 < -3 < ..."""
    if value == 0:
        raise ValueError("0 is not a signed value")
    return (abs(value), 0 if value < 0 else 1)


def positive_alphabet(n: int) -> tuple[SignedValue, ...]:
    """{1, 2, ..., n}, already in signed order."""
    return tuple(range(1, n + 1))


def signed_alphabet(n: int) -> tuple[SignedValue, ...]:
    """{-1, 1, -2, 2, ..., -n, n} in signed order."""
    out: list[int] = []
    for i in range(1, n + 1):
        out.extend((-i, i))
    return tuple(out)


def _check_alphabet(alphabet: Iterable[SignedValue]) -> tuple[SignedValue, ...]:
    values = set()
    for z in alphabet:
        if not isinstance(z, int) or isinstance(z, bool) or z == 0:
            raise ValueError(f"alphabet entries must be nonzero ints, got {z!r}")
        values.add(z)
    return tuple(sorted(values, key=signed_order_key))


class LabelledWeightedPoset:
    """A strict partial order on labels 1..n with a positive weight per vertex.

    Relations are stored transitively closed; construction rejects cycles.
    Instances are immutable and hashable.
    """

    __slots__ = ("n", "weights", "_less")

    def __init__(
        self,
        n: int,
        relations: Iterable[tuple[int, int]] = (),
        weights: Sequence[int] | None = None,
    ):
        if n < 0:
            raise ValueError("n must be nonnegative")
        if weights is None:
            weights = (1,) * n
        weights = tuple(weights)
        if len(weights) != n:
            raise ValueError(f"expected {n} weights, got {len(weights)}")
        if any(not isinstance(w, int) or isinstance(w, bool) or w < 1 for w in weights):
            raise ValueError("weights must be positive integers")
        succ: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
        for i, j in relations:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"relation ({i}, {j}) outside labels 1..{n}")
            if i == j:
                raise ValueError(f"relation ({i}, {j}) is reflexive")
            succ[i].add(j)
        for k in range(1, n + 1):
            for i in range(1, n + 1):
                if k in succ[i]:
                    succ[i] |= succ[k]
        for v in range(1, n + 1):
            if v in succ[v]:
                raise ValueError("relations contain a cycle; not a partial order")
        less = frozenset((i, j) for i in succ for j in succ[i])
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_less", less)

    def __setattr__(self, name, value):
        raise AttributeError("LabelledWeightedPoset is immutable")

    def less(self, i: int, j: int) -> bool:
        return (i, j) in self._less

    def comparable(self, i: int, j: int) -> bool:
        return (i, j) in self._less or (j, i) in self._less

    @property
    def relations(self) -> frozenset:
        return self._less

    def weight(self, i: int) -> int:
        return self.weights[i - 1]

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
            if not self.comparable(i, j)
        ]

    def covers(self) -> list[tuple[int, int]]:
        """Covering relations: i < j with no k strictly between."""
        return sorted(
            (i, j)
            for i, j in self._less
            if not any((i, k) in self._less and (k, j) in self._less for k in range(1, self.n + 1))
        )

    def with_relation(self, i: int, j: int) -> "LabelledWeightedPoset":
        if self.less(j, i):
            raise ValueError(f"adding {i} < {j} would contradict {j} < {i}")
        return LabelledWeightedPoset(self.n, list(self._less) + [(i, j)], self.weights)

    def linear_extension(self) -> tuple[int, ...]:
        """Smallest-label-first topological order."""
        placed: list[int] = []
        remaining = set(range(1, self.n + 1))
        while remaining:
            v = min(
                u for u in remaining if all(p not in remaining for p, q in self._less if q == u)
            )
            placed.append(v)
            remaining.remove(v)
        return tuple(placed)

    def chain_order(self) -> tuple[int, ...] | None:
        """The labels along the chain when the order is total, else None."""
        counts = {v: 0 for v in range(1, self.n + 1)}
        for i, _ in self._less:
            counts[i] += 1
        order = sorted(counts, key=lambda v: -counts[v])
        for a, b in zip(order, order[1:]):
            if not self.less(a, b):
                return None
        return tuple(order)

    def __eq__(self, other):
        if not isinstance(other, LabelledWeightedPoset):
            return NotImplemented
        return (
            self.n == other.n
            and self.weights == other.weights
            and self._less == other._less
        )

    def __hash__(self):
        return hash((self.n, self.weights, self._less))

    def __repr__(self):
        return (
            f"LabelledWeightedPoset(n={self.n}, covers={self.covers()}, "
            f"weights={list(self.weights)})"
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "covers": [list(c) for c in self.covers()],
            "weights": list(self.weights),
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "LabelledWeightedPoset":
        return cls(
            int(data["n"]),
            [tuple(pair) for pair in data.get("covers", ())],
            data.get("weights"),
        )


def chain_poset(pi: Iterable[int]) -> LabelledWeightedPoset:
    """The total order pi_1 <_P pi_2 <_P ... <_P pi_n with unit weights."""
    word = check_permutation(pi)
    relations = [
        (word[i], word[j]) for i in range(len(word)) for j in range(i + 1, len(word))
    ]
    return LabelledWeightedPoset(len(word), relations)


def weighted_chain(pi: Iterable[int], alpha: Iterable[int]) -> LabelledWeightedPoset:
    """The chain of pi with the vertex labelled pi_i weighted by alpha_i."""
    word = check_permutation(pi)
    parts = check_composition(alpha)
    if len(parts) != len(word):
        raise ValueError("need exactly one weight part per permutation letter")
    weights = [0] * len(word)
    for label, w in zip(word, parts):
        weights[label - 1] = w
    relations = [
        (word[i], word[j]) for i in range(len(word)) for j in range(i + 1, len(word))
    ]
    return LabelledWeightedPoset(len(word), relations, weights)


def _respects(label_i: int, label_j: int, fi: SignedValue, fj: SignedValue) -> bool:
    """Condition along a relation i <_P j: increase, or an allowed tie."""
    if signed_order_key(fi) < signed_order_key(fj):
        return True
    if fi == fj:
        return fj > 0 if label_i < label_j else fj < 0
    return False


def is_enriched_partition(
    poset: LabelledWeightedPoset, values: Sequence[SignedValue]
) -> bool:
    """Check the enriched conditions for a full assignment (values[i-1] = f(i))."""
    if len(values) != poset.n:
        raise ValueError(f"expected {poset.n} values, got {len(values)}")
    for v in values:
        signed_order_key(v)  # validates nonzero
    return all(
        _respects(i, j, values[i - 1], values[j - 1]) for i, j in poset.relations
    )


def enumerate_assignments(
    poset: LabelledWeightedPoset, alphabet: Iterable[SignedValue]
) -> list[Assignment]:
    """All enriched assignments into a finite alphabet, canonically ordered.

    Brute force with pruning along a linear extension; the output order is
    by signed order of the values at labels 1, 2, ....
    """
    zs = _check_alphabet(alphabet)
    n = poset.n
    if n == 0:
        return [()]
    order = poset.linear_extension()
    preds = [
        [j for j in range(k) if poset.less(order[j], order[k])] for k in range(n)
    ]
    out: list[Assignment] = []
    vals: list[SignedValue] = [0] * n

    def rec(k: int) -> None:
        if k == n:
            by_label = [0] * n
            for pos, label in enumerate(order):
                by_label[label - 1] = vals[pos]
            out.append(tuple(by_label))
            return
        label = order[k]
        for z in zs:
            if all(_respects(order[j], label, vals[j], z) for j in preds[k]):
                vals[k] = z
                rec(k + 1)

    rec(0)
    out.sort(key=lambda t: tuple(signed_order_key(v) for v in t))
    return out


# ---------------------------------------------------------------------------
# generating functions


def gamma(
    poset: LabelledWeightedPoset,
    alphabet: Iterable[SignedValue],
    nvars: int | None = None,
) -> TruncatedPoly:
    """Sum of prod_i x_|f(i)|^weight(i) over all enriched assignments into Z.

    The result lives in x_1..x_nvars (default: the largest magnitude in Z)
    with degree bound equal to the total weight.
    """
    zs = _check_alphabet(alphabet)
    top = max((abs(z) for z in zs), default=0)
    if nvars is None:
        nvars = top
    if top > nvars:
        raise ValueError(f"alphabet magnitude {top} exceeds the variable count {nvars}")
    return _gamma_cached(poset, zs, nvars)


@lru_cache(maxsize=None)
def _gamma_cached(
    poset: LabelledWeightedPoset, zs: tuple, nvars: int
) -> TruncatedPoly:
    degree = sum(poset.weights)
    if poset.n == 0:
        return _raw_poly(nvars, 0, {(): 1})
    if not zs:
        return _raw_poly(nvars, degree, {})
    chain = poset.chain_order()
    if chain is not None:
        return _gamma_chain(chain, poset.weights, zs, nvars, degree)
    return _gamma_dfs(poset, zs, nvars, degree)


def _mono_mul_var(key: Monomial, var: int, exp: int) -> Monomial:
    out = []
    inserted = False
    for v, e in key:
        if v == var:
            out.append((v, e + exp))
            inserted = True
        else:
            if not inserted and v > var:
                out.append((var, exp))
                inserted = True
            out.append((v, e))
    if not inserted:
        out.append((var, exp))
    return tuple(out)


def _gamma_chain(labels, weights, zs, nvars, degree) -> TruncatedPoly:
    """Transfer-matrix pass along a chain.

    For consecutive chain vertices the allowed previous values form a
    prefix of the signed order (plus an equality case depending on the
    label direction), so one running prefix sum per step replaces the
    |Z|^2 transition scan.
    """
    first = labels[0]
    w0 = weights[first - 1]
    states: list[dict] = [{((abs(z), w0),): 1} for z in zs]
    for prev_label, cur_label in zip(labels, labels[1:]):
        eq_positive = prev_label < cur_label
        w = weights[cur_label - 1]
        running: dict = {}
        new_states: list[dict] = []
        for zi, z in enumerate(zs):
            base = dict(running)
            if (z > 0) == eq_positive:
                for key, c in states[zi].items():
                    base[key] = base.get(key, 0) + c
            var = abs(z)
            new_states.append(
                {_mono_mul_var(key, var, w): c for key, c in base.items()}
            )
            for key, c in states[zi].items():
                running[key] = running.get(key, 0) + c
        states = new_states
    acc: dict = {}
    for state in states:
        for key, c in state.items():
            acc[key] = acc.get(key, 0) + c
    return _raw_poly(nvars, degree, {k: v for k, v in acc.items() if v})


def _gamma_dfs(poset, zs, nvars, degree) -> TruncatedPoly:
    order = poset.linear_extension()
    n = poset.n
    preds = [
        [j for j in range(k) if poset.less(order[j], order[k])] for k in range(n)
    ]
    weights = poset.weights
    acc: dict = {}
    vals: list[SignedValue] = [0] * n

    def rec(k: int) -> None:
        if k == n:
            exps: dict[int, int] = {}
            for pos, label in enumerate(order):
                var = abs(vals[pos])
                exps[var] = exps.get(var, 0) + weights[label - 1]
            key = tuple(sorted(exps.items()))
            acc[key] = acc.get(key, 0) + 1
            return
        label = order[k]
        for z in zs:
            if all(_respects(order[j], label, vals[j], z) for j in preds[k]):
                vals[k] = z
                rec(k + 1)

    rec(0)
    return _raw_poly(nvars, degree, acc)


def universal_gamma(
    pi: Iterable[int],
    alpha: Iterable[int],
    alphabet: Iterable[SignedValue],
    nvars: int | None = None,
) -> TruncatedPoly:
    """Generating function of the weighted chain of (pi, alpha).

    Specializations: unit weights over the positive alphabet give the
    fundamental function of pi; unit weights over the signed alphabet give
    its peak function; the identity permutation over the signed alphabet
    gives the enriched monomial of alpha; the reversed identity over the
    positive alphabet gives the monomial function of alpha.
    """
    return gamma(weighted_chain(pi, alpha), alphabet, nvars)


def universal_to_eta(pi: Iterable[int], alpha: Iterable[int]) -> QSymElement:
    """Exact expansion of the weighted-chain generating function over the
    full signed alphabet into enriched monomials:

        sum over I inside Peak(pi) of (-1)^|I| eta_{alpha contracted at I}.
    """
    word = check_permutation(pi)
    parts = check_composition(alpha)
    if len(parts) != len(word):
        raise ValueError("need exactly one weight part per permutation letter")
    peaks = peak_set_of_permutation(word)
    terms = []
    for chosen in subsets(peaks):
        sign = -1 if len(chosen) % 2 else 1
        terms.append((contract_set(parts, chosen), sign))
    return QSymElement("eta", terms)


def coshuffle_product(
    pi: Iterable[int],
    alpha: Iterable[int],
    sigma: Iterable[int],
    beta: Iterable[int],
) -> list[tuple[Permutation, Composition]]:
    """The coshuffle expansion of a product of two weighted-chain functions.

    For every finite alphabet Z the generating functions satisfy
    gamma(pi, alpha) * gamma(sigma, beta) = sum over the returned pairs.
    """
    return [(cp.perm, cp.comp) for cp in coshuffles(pi, alpha, sigma, beta)]


def split_incomparable(
    poset: LabelledWeightedPoset, i: int, j: int
) -> tuple[LabelledWeightedPoset, LabelledWeightedPoset]:
    """Split on an incomparable pair: the two one-relation-richer posets.

    Their generating functions sum to the original's for every finite
    alphabet (the two added relations cover mutually exclusive, exhaustive
    cases of the enriched conditions).
    """
    if poset.comparable(i, j):
        raise ValueError(f"labels {i} and {j} are comparable")
    if not (1 <= i <= poset.n and 1 <= j <= poset.n) or i == j:
        raise ValueError(f"invalid pair ({i}, {j})")
    return poset.with_relation(i, j), poset.with_relation(j, i)
