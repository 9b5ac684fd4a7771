"""Named identity checks: the suite behind ``qsym verify``.

Every check runs exact arithmetic at desk scale and reports pass/fail with
counterexamples.  The acceptance tests call the same functions at their
full sweep bounds; the CLI can cap the bounds with --max-degree for a
quicker run.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .combinatorics import (
    compositions,
    contract,
    contract_set,
    descent_set,
    odd_compositions,
    odd_part_refinement,
    peak_set_of_composition,
    identity_permutation,
    reversed_identity,
    shuffles,
)
from .core import (
    K_of_permutation,
    K_to_M,
    L_of_permutation,
    M_to_eta,
    QSymElement,
    antipode,
    convert,
    coproduct,
    eta_product,
    eta_to_M,
    multiply,
    signed_subset_sum,
)
from .expansion import (
    alphabet_split_eval,
    certify_equal,
    embed,
    expand,
    poly_add,
    poly_mul,
    poly_scale,
)
from .ppartitions import (
    chain_poset,
    coshuffle_product,
    gamma,
    positive_alphabet,
    signed_alphabet,
    universal_gamma,
    universal_to_eta,
)

_SEED = 20260810
_MAX_REPORTED = 5


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    failures: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        status = "PASS" if self.passed else "FAIL"
        out = [f"{status}  {self.name}: {self.detail}"]
        out.extend(f"      counterexample: {f}" for f in self.failures[:_MAX_REPORTED])
        if len(self.failures) > _MAX_REPORTED:
            out.append(f"      ... and {len(self.failures) - _MAX_REPORTED} more")
        return out


class _Recorder:
    def __init__(self):
        self.count = 0
        self.failures: list[str] = []

    def check(self, ok: bool, describe: str) -> None:
        self.count += 1
        if not ok:
            self.failures.append(describe)

    def result(self, name: str, what: str) -> CheckResult:
        return CheckResult(
            name, not self.failures, f"{self.count} {what}", self.failures
        )


def _cap(bound: int, max_degree: int | None) -> int:
    return bound if max_degree is None else min(bound, max_degree)


def check_golden_examples(max_degree: int | None = None) -> CheckResult:
    """Worked examples reproduced term for term."""
    r = _Recorder()
    r.check(
        eta_to_M((1, 3, 1))
        == QSymElement("M", {(5,): 2, (1, 4): 4, (4, 1): 4, (1, 3, 1): 8}),
        "eta_to_M((1,3,1))",
    )
    r.check(
        eta_product((1, 2), (2,))
        == QSymElement("eta", {(2, 1, 2): 1, (1, 2, 2): 2, (5,): -1}),
        "eta_product((1,2),(2))",
    )
    r.check(
        eta_product((1, 1), (2, 3))
        == QSymElement(
            "eta",
            {
                (1, 1, 2, 3): 1,
                (1, 2, 1, 3): 1,
                (4, 3): -1,
                (2, 1, 1, 3): 1,
                (1, 2, 3, 1): 1,
                (1, 6): -1,
                (2, 1, 3, 1): 1,
                (2, 5): -1,
                (2, 3, 1, 1): 1,
                (6, 1): -1,
            },
        ),
        "eta_product((1,1),(2,3))",
    )
    r.check(descent_set((1, 1, 3, 3, 1)) == (1, 2, 5, 8), "descent_set((1,1,3,3,1))")
    r.check(
        odd_part_refinement((1, 1, 3, 3, 1)) == (1, 1, 2, 1, 2, 1, 1),
        "odd_part_refinement((1,1,3,3,1))",
    )
    r.check(
        peak_set_of_composition((1, 1, 3, 3, 1)) == (4, 7),
        "peak_set_of_composition((1,1,3,3,1))",
    )
    r.check(contract((2, 1, 4, 3, 2), 3) == (2, 8, 2), "contract((2,1,4,3,2), 3)")
    r.check(contract_set((2, 1, 4, 3, 2), (2, 4)) == (12,), "contract_set((2,1,4,3,2), {2,4})")
    m21 = expand(QSymElement.term("M", (2, 1)), 3, 3)
    r.check(
        dict(m21.terms)
        == {((1, 2), (2, 1)): 1, ((1, 2), (3, 1)): 1, ((2, 2), (3, 1)): 1},
        "expand(M_(2,1), 3, 3)",
    )
    l21 = expand(QSymElement.term("L", (2, 1)), 3, 3)
    r.check(
        dict(l21.terms)
        == {
            ((1, 2), (2, 1)): 1,
            ((1, 2), (3, 1)): 1,
            ((1, 1), (2, 1), (3, 1)): 1,
            ((2, 2), (3, 1)): 1,
        },
        "expand(L_(2,1), 3, 3)",
    )
    return r.result("golden examples", "worked examples")


def check_basis_round_trip(max_degree: int | None = None) -> CheckResult:
    """M <-> eta conversions are mutually inverse on all basis elements."""
    top = _cap(7, max_degree)
    r = _Recorder()
    for n in range(top + 1):
        for alpha in compositions(n):
            back = convert(eta_to_M(alpha), "eta")
            r.check(
                back == QSymElement.term("eta", alpha),
                f"M_to_eta(eta_to_M({alpha})) = {back}",
            )
            back = convert(M_to_eta(alpha), "M")
            r.check(
                back == QSymElement.term("M", alpha),
                f"eta_to_M(M_to_eta({alpha})) = {back}",
            )
    return r.result(f"basis round trips (n <= {top})", "round trips")


def check_eta_product_rule(max_degree: int | None = None) -> CheckResult:
    """Closed eta product rule vs the M quasi-shuffle, certified by expansion."""
    top = _cap(7, max_degree)
    r = _Recorder()
    for total in range(top + 1):
        for na in range(total + 1):
            for alpha in compositions(na):
                for beta in compositions(total - na):
                    direct = eta_product(alpha, beta)
                    via_m = multiply(eta_to_M(alpha), eta_to_M(beta))
                    r.check(
                        certify_equal(direct, via_m),
                        f"eta_{alpha} * eta_{beta}",
                    )
    return r.result(f"eta product rule (|a|+|b| <= {top})", "products certified")


def check_eta_coproduct(max_degree: int | None = None, samples: int = 20) -> CheckResult:
    """Deconcatenation coproduct of eta, against the M route and the oracle."""
    top = _cap(6, max_degree)
    r = _Recorder()
    for n in range(top + 1):
        for alpha in compositions(n):
            lhs = coproduct(QSymElement.term("eta", alpha)).map_legs(
                eta_to_M, eta_to_M, ("M", "M")
            )
            rhs = coproduct(eta_to_M(alpha))
            r.check(lhs == rhs, f"coproduct(eta_{alpha}) through M")
    rng = random.Random(_SEED)
    degree_cap = _cap(5, max_degree)
    for _ in range(samples):
        elem = _random_element(rng, degree_cap)
        d = max(elem.degree, 1)
        lhs = alphabet_split_eval(elem, 2, 2, d)
        tens = coproduct(elem)
        lb, rb = tens.bases
        rhs = None
        for (cl, cr), coeff in tens.terms.items():
            left = embed(expand(QSymElement.term(lb, cl), 2, d), 4, 0)
            right = embed(expand(QSymElement.term(rb, cr), 2, d), 4, 2)
            piece = poly_scale(poly_mul(left, right), coeff)
            rhs = piece if rhs is None else poly_add(rhs, piece)
        ok = rhs is not None and lhs == rhs and not rhs.truncated
        r.check(ok, f"alphabet split of {elem}")
    return r.result(
        f"eta coproduct (n <= {top}) + {samples} alphabet splits", "coproducts"
    )


def _random_element(rng: random.Random, degree_cap: int) -> QSymElement:
    basis = rng.choice(("M", "eta"))
    terms = []
    for _ in range(rng.randint(1, 3)):
        n = rng.randint(1, max(degree_cap, 1))
        comp = rng.choice(list(compositions(n)))
        coeff = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2]))
        terms.append((comp, coeff))
    return QSymElement(basis, terms)


def check_antipode(max_degree: int | None = None) -> CheckResult:
    """Involution, eta-vs-M route agreement, and the Hopf antipode axiom."""
    top = _cap(6, max_degree)
    hopf_top = _cap(5, max_degree)
    r = _Recorder()
    for n in range(top + 1):
        for alpha in compositions(n):
            for basis in ("M", "eta"):
                elem = QSymElement.term(basis, alpha)
                r.check(
                    antipode(antipode(elem)) == elem, f"S(S({basis}_{alpha}))"
                )
            direct = convert(antipode(QSymElement.term("eta", alpha)), "M")
            routed = antipode(eta_to_M(alpha))
            r.check(direct == routed, f"antipode routes for eta_{alpha}")
    for n in range(hopf_top + 1):
        for alpha in compositions(n):
            elem = QSymElement.term("eta", alpha)
            folded = coproduct(elem).map_legs(
                lambda c: antipode(QSymElement.term("eta", c)),
                lambda c: QSymElement.term("eta", c),
                ("eta", "eta"),
            ).multiply_legs()
            expected = QSymElement.unit("eta").scale(elem.counit())
            r.check(
                certify_equal(folded, expected),
                f"Hopf axiom on eta_{alpha}: {folded}",
            )
    return r.result(
        f"antipode (S^2, routes n <= {top}; Hopf axiom n <= {hopf_top})", "identities"
    )


def check_specializations(max_degree: int | None = None) -> CheckResult:
    """Weighted-chain generating functions against the four basis series."""
    top = _cap(5, max_degree)
    nvars = 5
    pos = positive_alphabet(nvars)
    sgn = signed_alphabet(nvars)
    r = _Recorder()
    for n in range(1, top + 1):
        ones = (1,) * n
        for word in itertools.permutations(range(1, n + 1)):
            u = universal_gamma(word, ones, pos, nvars)
            r.check(
                u == expand(L_of_permutation(word), nvars, n),
                f"positive alphabet, unit weights, pi={word}",
            )
            u = universal_gamma(word, ones, sgn, nvars)
            r.check(
                u == expand(K_of_permutation(word), nvars, n),
                f"signed alphabet, unit weights, pi={word}",
            )
        for alpha in itertools.product((1, 2), repeat=n):
            d = sum(alpha)
            u = universal_gamma(identity_permutation(n), alpha, sgn, nvars)
            r.check(
                u == expand(QSymElement.term("eta", alpha), nvars, d),
                f"signed alphabet, id, alpha={alpha}",
            )
            u = universal_gamma(reversed_identity(n), alpha, pos, nvars)
            r.check(
                u == expand(QSymElement.term("M", alpha), nvars, d),
                f"positive alphabet, reversed id, alpha={alpha}",
            )
    return r.result(f"P-partition specializations (n <= {top})", "specializations")


def check_shuffle_products(max_degree: int | None = None) -> CheckResult:
    """Chain generating functions multiply by (co)shuffling, at both alphabets."""
    top = _cap(6, max_degree)
    nvars = 4
    alphabets = (positive_alphabet(nvars), signed_alphabet(nvars))
    r = _Recorder()
    for n in range(1, top):
        for m in range(1, top - n + 1):
            for pi in itertools.permutations(range(1, n + 1)):
                for sigma in itertools.permutations(range(1, m + 1)):
                    for zs in alphabets:
                        lhs = poly_mul(
                            gamma(chain_poset(pi), zs, nvars),
                            gamma(chain_poset(sigma), zs, nvars),
                        )
                        rhs = None
                        for word in shuffles(pi, sigma):
                            piece = gamma(chain_poset(word), zs, nvars)
                            rhs = piece if rhs is None else poly_add(rhs, piece)
                        r.check(
                            lhs == rhs,
                            f"shuffle product pi={pi} sigma={sigma} |Z|={len(zs)}",
                        )
    rng = random.Random(_SEED)
    weighted = [((1, 2), (2, 2), (1,), (1,))]
    for _ in range(40):
        n = rng.randint(1, max(1, min(3, top - 1)))
        m = rng.randint(1, max(1, min(3, top - n)))
        pi = tuple(rng.sample(range(1, n + 1), n))
        sigma = tuple(rng.sample(range(1, m + 1), m))
        alpha = tuple(rng.randint(1, 2) for _ in range(n))
        beta = tuple(rng.randint(1, 2) for _ in range(m))
        weighted.append((pi, alpha, sigma, beta))
    for pi, alpha, sigma, beta in weighted:
        for zs in alphabets:
            lhs = poly_mul(
                universal_gamma(pi, alpha, zs, nvars),
                universal_gamma(sigma, beta, zs, nvars),
            )
            rhs = None
            for tau, gamma_comp in coshuffle_product(pi, alpha, sigma, beta):
                piece = universal_gamma(tau, gamma_comp, zs, nvars)
                rhs = piece if rhs is None else poly_add(rhs, piece)
            r.check(
                lhs == rhs,
                f"coshuffle product ({pi},{alpha}) x ({sigma},{beta}) |Z|={len(zs)}",
            )
    return r.result(
        f"shuffle/coshuffle products (n+m <= {top}, both alphabets)", "products"
    )


def check_u_expansion(max_degree: int | None = None) -> CheckResult:
    """Signed-alphabet chain functions as signed sums of enriched monomials."""
    n = _cap(4, max_degree)
    nvars = 4
    sgn = signed_alphabet(nvars)
    r = _Recorder()
    for word in itertools.permutations(range(1, n + 1)):
        for alpha in itertools.product((1, 2, 3), repeat=n):
            symbolic = universal_to_eta(word, alpha)
            numeric = universal_gamma(word, alpha, sgn, nvars)
            r.check(
                expand(symbolic, nvars, sum(alpha)) == numeric,
                f"pi={word} alpha={alpha}",
            )
    return r.result(f"chain-to-eta expansion (S_{n}, parts <= 3)", "expansions")


def check_peak_conversion(max_degree: int | None = None) -> CheckResult:
    """Signed K-to-eta conversion against the peak functions' defining series."""
    top = _cap(7, max_degree)
    r = _Recorder()
    for n in range(top + 1):
        for alpha in odd_compositions(n):
            r.check(
                certify_equal(K_to_M(alpha), QSymElement.term("K", alpha)),
                f"K_{alpha}",
            )
    return r.result(f"peak function conversion (odd |a| <= {top})", "conversions")


def check_signed_subset_sum(max_degree: int | None = None) -> CheckResult:
    """The inclusion-exclusion kernel, exhaustively over subsets of [5]."""
    universe = (1, 2, 3, 4, 5)
    r = _Recorder()
    from .combinatorics import subsets

    for s in subsets(universe):
        for t in subsets(universe):
            got = signed_subset_sum(s, t)
            want = 2 ** len(s) if set(s) <= set(t) else 0
            r.check(got == want, f"S={s} T={t}: {got} != {want}")
    return r.result("signed subset sums (S, T within [5])", "pairs")


ALL_CHECKS = (
    check_golden_examples,
    check_basis_round_trip,
    check_eta_product_rule,
    check_eta_coproduct,
    check_antipode,
    check_specializations,
    check_shuffle_products,
    check_u_expansion,
    check_peak_conversion,
    check_signed_subset_sum,
)


def run_all(max_degree: int | None = None) -> list[CheckResult]:
    return [check(max_degree) for check in ALL_CHECKS]
