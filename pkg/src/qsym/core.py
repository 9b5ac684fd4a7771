"""Sparse exact linear combinations in the bases M, L, K and eta.

Elements are immutable basis-tagged dictionaries mapping compositions to
nonzero rational coefficients.  The eta basis (enriched monomials) is
defined by eta_alpha = sum of 2^len(beta) * M_beta over all beta whose
descent set is contained in that of alpha; it is a basis of QSym over any
ring in which 2 is invertible, so coefficients here are Fractions whose
denominators are powers of 2 under all conversions.

Conversion, product, coproduct and antipode rules implemented per basis:

- M:   quasi-shuffle product, deconcatenation coproduct, signed
       reversed-refinement antipode.
- L:   product/coproduct through M; antipode is sign-and-complement.
- eta: closed product rule through shuffles with contractions,
       deconcatenation coproduct, sign-and-reverse antipode.
- K:   a basis of the peak subalgebra only (odd compositions); product,
       coproduct and antipode route through eta and return eta-tagged
       results.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .combinatorics import (
    Composition,
    check_composition,
    check_permutation,
    complement,
    composition_of_subset,
    compositions,
    contract_set,
    descent_set,
    descent_set_of_permutation,
    odd_composition_of_peak_set,
    peak_set_of_composition,
    peak_set_of_permutation,
    quasi_shuffles,
    reverse,
    subsets,
)

BASES = ("M", "L", "K", "eta")

_ZERO = Fraction(0)


def term_sort_key(comp: Composition):
    """Canonical composition order: by degree, then length, then parts."""
    return (sum(comp), len(comp), comp)


def _coerce_coeff(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {value!r}")


def format_rational(value: Fraction) -> str:
    """p/q with q omitted when 1 and the sign on the numerator."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class NotInPeakSpanError(ValueError):
    """Raised when converting into K an element outside the peak subalgebra."""

    def __init__(self, residual: "QSymElement"):
        self.residual = residual
        super().__init__(f"not in the span of the peak functions; residual {residual}")


def _check_index(basis: str, comp) -> Composition:
    comp = check_composition(comp)
    if basis == "K" and any(a % 2 == 0 for a in comp):
        raise ValueError(f"K is indexed by odd compositions only, got {comp!r}")
    return comp


class QSymElement:
    """A finite linear combination of basis elements of one fixed basis.

    Values are immutable; all arithmetic returns new elements.  Equality is
    per-basis dictionary equality; use expansion.certify_equal to compare
    elements expressed in different bases.
    """

    __slots__ = ("basis", "_terms")

    def __init__(self, basis: str, terms: Mapping | Iterable = ()):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Composition, Fraction] = {}
        for comp, coeff in items:
            comp = _check_index(basis, comp)
            coeff = _coerce_coeff(coeff)
            new = acc.get(comp, _ZERO) + coeff
            if new:
                acc[comp] = new
            else:
                acc.pop(comp, None)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_terms", acc)

    def __setattr__(self, name, value):
        raise AttributeError("QSymElement is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def term(cls, basis: str, comp: Iterable[int], coeff=1) -> "QSymElement":
        return cls(basis, [(tuple(comp), coeff)])

    @classmethod
    def unit(cls, basis: str) -> "QSymElement":
        return cls(basis, [((), 1)])

    @classmethod
    def zero(cls, basis: str) -> "QSymElement":
        return cls(basis)

    # -- accessors ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Composition, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, comp: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(comp), _ZERO)

    def counit(self) -> Fraction:
        """Coefficient of the empty composition."""
        return self.coefficient(())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Max size of an indexing composition; 0 for the zero element."""
        return max((sum(c) for c in self._terms), default=0)

    def sorted_terms(self) -> list[tuple[Composition, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: term_sort_key(kv[0]))

    # -- arithmetic --------------------------------------------------------

    def _require_same_basis(self, other: "QSymElement"):
        if self.basis != other.basis:
            raise ValueError(
                f"basis mismatch: {self.basis} vs {other.basis}; convert first"
            )

    def __add__(self, other):
        if not isinstance(other, QSymElement):
            return NotImplemented
        self._require_same_basis(other)
        acc = dict(self._terms)
        for comp, coeff in other._terms.items():
            new = acc.get(comp, _ZERO) + coeff
            if new:
                acc[comp] = new
            else:
                acc.pop(comp, None)
        return _raw(self.basis, acc)

    def __sub__(self, other):
        if not isinstance(other, QSymElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return _raw(self.basis, {c: -v for c, v in self._terms.items()})

    def scale(self, scalar) -> "QSymElement":
        scalar = _coerce_coeff(scalar)
        if not scalar:
            return _raw(self.basis, {})
        return _raw(self.basis, {c: v * scalar for c, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, QSymElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, QSymElement):
            return NotImplemented
        return self.basis == other.basis and self._terms == other._terms

    def __hash__(self):
        return hash((self.basis, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"QSymElement({self.basis!r}, 0)"
        body = " + ".join(
            f"{format_rational(v)}*{self.basis}{list(c)}" for c, v in self.sorted_terms()
        )
        return f"QSymElement({body})"

    # -- linear extension ---------------------------------------------------

    def map_terms(
        self, fn: Callable[[Composition], "QSymElement"], basis: str
    ) -> "QSymElement":
        """Apply a basis-term map linearly; ``basis`` tags the (possibly zero) result."""
        acc: dict[Composition, Fraction] = {}
        for comp, coeff in self._terms.items():
            image = fn(comp)
            if image.basis != basis:
                raise ValueError(f"term map returned basis {image.basis}, expected {basis}")
            for comp2, coeff2 in image._terms.items():
                new = acc.get(comp2, _ZERO) + coeff * coeff2
                if new:
                    acc[comp2] = new
                else:
                    acc.pop(comp2, None)
        return _raw(basis, acc)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [
                {"comp": list(comp), "coeff": format_rational(coeff)}
                for comp, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "QSymElement":
        return cls(
            data["basis"],
            [(tuple(t["comp"]), Fraction(t["coeff"])) for t in data["terms"]],
        )


def _raw(basis: str, acc: dict) -> QSymElement:
    """Internal constructor for already-normalized term dictionaries."""
    elem = QSymElement.__new__(QSymElement)
    object.__setattr__(elem, "basis", basis)
    object.__setattr__(elem, "_terms", acc)
    return elem


class TensorElement:
    """A linear combination of pure tensors of basis elements."""

    __slots__ = ("bases", "_terms")

    def __init__(self, bases: tuple[str, str], terms: Mapping | Iterable = ()):
        left, right = bases
        if left not in BASES or right not in BASES:
            raise ValueError(f"unknown basis pair {bases!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[Composition, Composition], Fraction] = {}
        for (cl, cr), coeff in items:
            key = (_check_index(left, cl), _check_index(right, cr))
            coeff = _coerce_coeff(coeff)
            new = acc.get(key, _ZERO) + coeff
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        object.__setattr__(self, "bases", (left, right))
        object.__setattr__(self, "_terms", acc)

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self):
        return sorted(
            self._terms.items(),
            key=lambda kv: (term_sort_key(kv[0][0]), term_sort_key(kv[0][1])),
        )

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.bases == other.bases and self._terms == other._terms

    def __hash__(self):
        return hash((self.bases, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"TensorElement({self.bases!r}, 0)"
        lb, rb = self.bases
        body = " + ".join(
            f"{format_rational(v)}*{lb}{list(l)}(x){rb}{list(r)}"
            for (l, r), v in self.sorted_terms()
        )
        return f"TensorElement({body})"

    def map_legs(
        self,
        left_fn: Callable[[Composition], QSymElement],
        right_fn: Callable[[Composition], QSymElement],
        bases: tuple[str, str],
    ) -> "TensorElement":
        """Apply basis-term maps to both legs, linearly extended."""
        acc: dict[tuple[Composition, Composition], Fraction] = {}
        for (cl, cr), coeff in self._terms.items():
            left = left_fn(cl)
            right = right_fn(cr)
            if (left.basis, right.basis) != tuple(bases):
                raise ValueError("leg maps returned unexpected bases")
            for l2, vl in left.terms.items():
                for r2, vr in right.terms.items():
                    key = (l2, r2)
                    new = acc.get(key, _ZERO) + coeff * vl * vr
                    if new:
                        acc[key] = new
                    else:
                        acc.pop(key, None)
        out = TensorElement.__new__(TensorElement)
        object.__setattr__(out, "bases", tuple(bases))
        object.__setattr__(out, "_terms", acc)
        return out

    def multiply_legs(self) -> QSymElement:
        """Multiply the two legs of every tensor and sum the results."""
        left, right = self.bases
        if left != right:
            raise ValueError("legs must share a basis to be multiplied")
        out = QSymElement.zero(left if left != "K" else "eta")
        for (cl, cr), coeff in self._terms.items():
            prod = multiply(QSymElement.term(left, cl), QSymElement.term(right, cr))
            out = out + prod.scale(coeff)
        return out

    def to_json_dict(self) -> dict:
        return {
            "basis": list(self.bases),
            "terms": [
                {
                    "comp_left": list(l),
                    "comp_right": list(r),
                    "coeff": format_rational(v),
                }
                for (l, r), v in self.sorted_terms()
            ],
        }


# ---------------------------------------------------------------------------
# single-term basis conversions


def eta_to_M(alpha: Iterable[int]) -> QSymElement:
    """eta_alpha as sum of 2^len(beta) M_beta over Des(beta) <= Des(alpha).

    >>> eta_to_M((1, 3, 1)) == QSymElement("M", {(5,): 2, (1, 4): 4, (4, 1): 4, (1, 3, 1): 8})
    True
    """
    alpha = check_composition(alpha)
    n = sum(alpha)
    terms = {}
    for s in subsets(descent_set(alpha)):
        beta = composition_of_subset(n, s)
        terms[beta] = Fraction(2 ** len(beta))
    return _raw("M", terms)


def M_to_eta(beta: Iterable[int]) -> QSymElement:
    """M_beta in the eta basis: signed sum over coarsenings, scaled by 2^-len.

    Every coefficient is dyadic; inverting 2 is the only demand this basis
    places on the coefficient ring.
    """
    beta = check_composition(beta)
    n = sum(beta)
    scale = Fraction(1, 2 ** len(beta))
    assert scale.denominator & (scale.denominator - 1) == 0
    terms = {}
    for s in subsets(descent_set(beta)):
        alpha = composition_of_subset(n, s)
        sign = -1 if (len(beta) - len(alpha)) % 2 else 1
        terms[alpha] = sign * scale
    return _raw("eta", terms)


def L_to_M(alpha: Iterable[int]) -> QSymElement:
    """L_alpha as the sum of M_beta over refinements Des(alpha) <= Des(beta)."""
    alpha = check_composition(alpha)
    n = sum(alpha)
    base = set(descent_set(alpha))
    rest = [i for i in range(1, n) if i not in base]
    terms = {}
    for extra in subsets(rest):
        beta = composition_of_subset(n, sorted(base.union(extra)))
        terms[beta] = Fraction(1)
    return _raw("M", terms)


def M_to_L(beta: Iterable[int]) -> QSymElement:
    """M_beta as the signed sum of L_gamma over refinements (Moebius inversion)."""
    beta = check_composition(beta)
    n = sum(beta)
    base = set(descent_set(beta))
    rest = [i for i in range(1, n) if i not in base]
    terms = {}
    for extra in subsets(rest):
        gamma = composition_of_subset(n, sorted(base.union(extra)))
        terms[gamma] = Fraction(-1 if len(extra) % 2 else 1)
    return _raw("L", terms)


def eta_to_L(alpha: Iterable[int]) -> QSymElement:
    """eta_alpha in the fundamental basis: coefficient +-2 on every L_gamma."""
    alpha = check_composition(alpha)
    n = sum(alpha)
    if n == 0:
        return QSymElement.unit("L")
    des = set(descent_set(alpha))
    terms = {}
    for gamma in compositions(n):
        missing = sum(1 for i in descent_set(gamma) if i not in des)
        terms[gamma] = Fraction(-2 if missing % 2 else 2)
    return _raw("L", terms)


def _peak_sign(n: int, length: int) -> int:
    return -1 if ((n - length) // 2) % 2 else 1


def K_to_eta(alpha: Iterable[int]) -> QSymElement:
    """K_alpha as a signed sum of eta_beta over Peak(beta) <= Peak(alpha).

    The sign (-1)^((n - len(beta))/2) compensates for the sign carried by
    the classical odd-indexed monomial peak functions, which the eta basis
    drops.

    >>> K_to_eta((3,)) == QSymElement("eta", {(1, 1, 1): 1, (3,): -1})
    True
    """
    alpha = check_composition(alpha)
    n = sum(alpha)
    peaks = peak_set_of_composition(alpha)  # validates oddness
    terms = {}
    for s in subsets(peaks):
        beta = odd_composition_of_peak_set(n, s)
        terms[beta] = Fraction(_peak_sign(n, len(beta)))
    return _raw("eta", terms)


def K_to_M(alpha: Iterable[int]) -> QSymElement:
    """K_alpha in the monomial basis (through eta)."""
    return K_to_eta(alpha).map_terms(eta_to_M, "M")


def signed_subset_sum(s: Iterable, t: Iterable) -> int:
    """Sum over subsets I of s of (-1)^|I \\ t|, computed literally.

    Equals 2^|s| when s is contained in t and 0 otherwise.

    >>> signed_subset_sum({1, 2}, {1, 2, 3})
    4
    >>> signed_subset_sum({1, 4}, {1})
    0
    """
    s = set(s)
    t = set(t)
    return sum(-1 if len(set(i) - t) % 2 else 1 for i in subsets(sorted(s)))


def L_of_permutation(pi: Iterable[int]) -> QSymElement:
    """The fundamental function indexed by the descent composition of pi."""
    word = check_permutation(pi)
    comp = composition_of_subset(len(word), descent_set_of_permutation(word))
    return QSymElement.term("L", comp)


def K_of_permutation(pi: Iterable[int]) -> QSymElement:
    """The peak function indexed by the odd composition with Peak = Peak(pi)."""
    word = check_permutation(pi)
    comp = odd_composition_of_peak_set(len(word), peak_set_of_permutation(word))
    return QSymElement.term("K", comp)


# ---------------------------------------------------------------------------
# products


def eta_product(alpha: Iterable[int], beta: Iterable[int]) -> QSymElement:
    """Product of two enriched monomials.

    Sum over the C(n+m, m) ways of interleaving the parts of alpha and
    beta; for each interleaving gamma, the positions where a beta part is
    immediately followed by an alpha part (excluding the first and last
    slot) contribute an inclusion-exclusion over contractions:

        sum over I of (-1)^|I| eta_{gamma contracted at I}.

    The same index composition can arise from several interleavings; like
    terms are combined.

    >>> eta_product((1, 2), (2,)) == QSymElement(
    ...     "eta", {(2, 1, 2): 1, (1, 2, 2): 2, (5,): -1})
    True
    """
    alpha = check_composition(alpha)
    beta = check_composition(beta)
    total = len(alpha) + len(beta)
    terms: dict[Composition, Fraction] = {}
    for positions in itertools.combinations(range(1, total + 1), len(beta)):
        taken = set(positions)
        gamma = []
        ai = bi = 0
        for k in range(1, total + 1):
            if k in taken:
                gamma.append(beta[bi])
                bi += 1
            else:
                gamma.append(alpha[ai])
                ai += 1
        gamma = tuple(gamma)
        boundary = [
            i for i in positions if i + 1 not in taken and i != 1 and i != total
        ]
        for chosen in subsets(boundary):
            idx = contract_set(gamma, chosen)
            sign = -1 if len(chosen) % 2 else 1
            new = terms.get(idx, _ZERO) + sign
            if new:
                terms[idx] = new
            else:
                terms.pop(idx, None)
    return _raw("eta", terms)


def multiply(a: QSymElement, b: QSymElement) -> QSymElement:
    """Product of two elements expressed in the same basis.

    The result carries the operand basis, except for K whose product is
    returned in eta (K only spans the peak subalgebra).
    """
    if a.basis != b.basis:
        raise ValueError(f"basis mismatch: {a.basis} vs {b.basis}; convert first")
    basis = a.basis
    if basis == "M":
        acc: dict[Composition, Fraction] = {}
        for ca, va in a.terms.items():
            for cb, vb in b.terms.items():
                coeff = va * vb
                for gamma in quasi_shuffles(ca, cb):
                    new = acc.get(gamma, _ZERO) + coeff
                    if new:
                        acc[gamma] = new
                    else:
                        acc.pop(gamma, None)
        return _raw("M", acc)
    if basis == "eta":
        out = QSymElement.zero("eta")
        for ca, va in a.terms.items():
            for cb, vb in b.terms.items():
                out = out + eta_product(ca, cb).scale(va * vb)
        return out
    if basis == "L":
        prod = multiply(convert(a, "M"), convert(b, "M"))
        return convert(prod, "L")
    # K: multiply in eta; the result need not lie in the K span
    return multiply(convert(a, "eta"), convert(b, "eta"))


# ---------------------------------------------------------------------------
# coproduct and antipode


def coproduct(a: QSymElement) -> TensorElement:
    """Coproduct; deconcatenation in the M and eta bases.

    L input returns an (L, L)-tensor through M; K input returns an
    (eta, eta)-tensor.
    """
    if a.basis in ("M", "eta"):
        acc: dict[tuple[Composition, Composition], Fraction] = {}
        for comp, coeff in a.terms.items():
            for k in range(len(comp) + 1):
                key = (comp[:k], comp[k:])
                new = acc.get(key, _ZERO) + coeff
                if new:
                    acc[key] = new
                else:
                    acc.pop(key, None)
        out = TensorElement.__new__(TensorElement)
        object.__setattr__(out, "bases", (a.basis, a.basis))
        object.__setattr__(out, "_terms", acc)
        return out
    if a.basis == "L":
        inner = coproduct(convert(a, "M"))
        return inner.map_legs(M_to_L, M_to_L, ("L", "L"))
    return coproduct(convert(a, "eta"))


def _antipode_M_term(alpha: Composition) -> QSymElement:
    n = sum(alpha)
    sign = -1 if len(alpha) % 2 else 1
    base = set(descent_set(reverse(alpha)))
    terms = {}
    for s in subsets(sorted(base)):
        gamma = composition_of_subset(n, s)
        terms[gamma] = Fraction(sign)
    return _raw("M", terms)


def antipode(a: QSymElement) -> QSymElement:
    """The Hopf antipode, per basis.

    M:   S(M_alpha) = (-1)^len(alpha) * sum of M_gamma over coarsenings of
         the reversal.
    eta: S(eta_alpha) = (-1)^len(alpha) * eta_reversed(alpha).
    L:   S(L_alpha) = (-1)^|alpha| * L_complement(alpha).
    K:   routed through eta; the result carries the eta tag.
    """
    if a.basis == "M":
        return a.map_terms(_antipode_M_term, "M")
    if a.basis == "eta":
        acc = {}
        for comp, coeff in a.terms.items():
            sign = -1 if len(comp) % 2 else 1
            key = reverse(comp)
            new = acc.get(key, _ZERO) + sign * coeff
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        return _raw("eta", acc)
    if a.basis == "L":
        acc = {}
        for comp, coeff in a.terms.items():
            if not comp:
                key, sign = comp, 1
            else:
                key = complement(comp)
                sign = -1 if sum(comp) % 2 else 1
            new = acc.get(key, _ZERO) + sign * coeff
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        return _raw("L", acc)
    return antipode(convert(a, "eta"))


# ---------------------------------------------------------------------------
# generic conversion


_TERM_ROUTES = {
    ("eta", "M"): eta_to_M,
    ("M", "eta"): M_to_eta,
    ("L", "M"): L_to_M,
    ("M", "L"): M_to_L,
    ("eta", "L"): eta_to_L,
    ("K", "eta"): K_to_eta,
    ("K", "M"): K_to_M,
}


def _eta_to_K(a: QSymElement) -> QSymElement:
    """Triangular elimination of an eta element against the K images.

    K_beta expands as +-eta_beta plus terms with strictly smaller peak
    sets, so repeatedly stripping an odd term of maximal peak count
    terminates; whatever survives is outside the peak subalgebra.
    """
    remaining = dict(a.terms)
    out: dict[Composition, Fraction] = {}
    while True:
        cands = [c for c in remaining if all(p % 2 == 1 for p in c)]
        if not cands:
            break
        beta = max(cands, key=lambda c: (len(peak_set_of_composition(c)), c))
        coeff = remaining[beta] * _peak_sign(sum(beta), len(beta))
        out[beta] = coeff
        for comp, val in K_to_eta(beta).terms.items():
            new = remaining.get(comp, _ZERO) - coeff * val
            if new:
                remaining[comp] = new
            else:
                remaining.pop(comp, None)
    if remaining:
        raise NotInPeakSpanError(_raw("eta", remaining))
    return _raw("K", out)


def convert(a: QSymElement, target: str) -> QSymElement:
    """Rewrite an element in another basis, exactly.

    Raises NotInPeakSpanError (carrying the eta residual) when the target
    is K and the element does not lie in the peak subalgebra.
    """
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}; expected one of {BASES}")
    if a.basis == target:
        return a
    route = _TERM_ROUTES.get((a.basis, target))
    if route is not None:
        return a.map_terms(route, target)
    if target == "K":
        return _eta_to_K(convert(a, "eta"))
    # remaining pairs: L -> eta and K -> L, both through M
    return convert(convert(a, "M"), target)
