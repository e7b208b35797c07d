"""Closed-form extraction-error bounds and the reduction-loss comparison.

Values are computed with mpmath at 60 significant digits; the simplified
bounds are additionally returned as exact fractions whenever the logarithms
involved are integers.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

DPS = 60


def parse_prob(x) -> Fraction:
    """Fractions, ints, floats, decimal strings, "a/b" and "2^-128" style exponents."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    s = str(x).strip().replace("**", "^")
    if "^" in s:
        base, exp = s.split("^", 1)
        return Fraction(int(base)) ** int(exp)
    return Fraction(s)


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _log2_exact(x):
    """log2 of a positive int if it is a power of two, else None."""
    return x.bit_length() - 1 if x > 0 and x & (x - 1) == 0 else None


@dataclass
class Bound:
    name: str
    simplified: mpmath.mpf
    unsimplified: mpmath.mpf = None
    exact: Fraction = None

    @property
    def simplified_dominates(self):
        """The simplified bound is at least the unsimplified one (checked, not assumed)."""
        return self.unsimplified is None or self.simplified >= self.unsimplified

    @property
    def log2(self):
        return float(mpmath.log(self.simplified, 2)) if self.simplified > 0 else -math.inf


def _capacity(ell_eff, q, n, p_triv):
    q, two_n = mpmath.mpf(q), mpmath.mpf(2) ** n
    first = 2 * mpmath.e * q ** mpmath.mpf(1.5) / mpmath.sqrt(two_n)
    second = q * mpmath.sqrt(10 * max(q * ell_eff / two_n, _mpf(p_triv)))
    return first + second


def capacity_bound(ell, q, n, p_triv, variant="ordinary"):
    """Bound on the chance that the recorded database ends in SUC or CL.

    The Merkle variant doubles ell inside the max.
    """
    p_triv = parse_prob(p_triv)
    with mpmath.workdps(DPS):
        ell_eff = mpmath.mpf(ell) * (2 if variant == "merkle" else 1)
        if variant not in ("ordinary", "merkle"):
            raise ValueError(f"unknown variant {variant!r}")
        return +_capacity(ell_eff, q, n, p_triv)


def _simplified(coef, q, n, p_term):
    with mpmath.workdps(DPS):
        return _mpf(coef) * mpmath.mpf(q) ** 3 / mpmath.mpf(2) ** n + 20 * mpmath.mpf(q) ** 2 * _mpf(p_term)


def _exact_simplified(coef, q, n, p_term):
    return Fraction(coef) * q ** 3 / Fraction(2) ** n + 20 * q ** 2 * p_term


def eps_ex_ordinary(ell, q, n, p_triv, kappa=1) -> Bound:
    p_triv = parse_prob(p_triv)
    coef = 22 * ell + 60
    with mpmath.workdps(DPS):
        cap = _capacity(mpmath.mpf(ell), q, n, p_triv)
        uns = 2 * (kappa + 1) / mpmath.mpf(2) ** n + cap ** 2
        simp = _simplified(coef, q, n, p_triv)
    return Bound("ordinary", simp, uns, _exact_simplified(coef, q, n, p_triv))


def eps_ex_merkle(ell, q, n, p_triv, kappa=1) -> Bound:
    p_triv = parse_prob(p_triv)
    lg = _log2_exact(ell)
    with mpmath.workdps(DPS):
        log_ell = mpmath.mpf(lg) if lg is not None else mpmath.log(ell, 2)
        coef = 22 * ell * log_ell + 60
        cap = _capacity(2 * mpmath.mpf(ell), q, n, p_triv)
        uns = 2 * (kappa * log_ell + 1) / mpmath.mpf(2) ** n + cap ** 2
        simp = _simplified(coef, q, n, p_triv)
    exact = _exact_simplified(22 * ell * lg + 60, q, n, p_triv) if lg is not None else None
    return Bound("merkle", simp, uns, exact)


def eps_unruh(ell0, r, q, n, p_triv) -> Bound:
    """Unruh transform with r repetitions; the unsimplified value substitutes
    ell = r*ell0, kappa = r and p_triv^r into the ordinary bound."""
    p = parse_prob(p_triv) ** r
    b = eps_ex_ordinary(r * ell0, q, n, p, kappa=r)
    b.name = "unruh"
    return b


def eps_mppu(ell0, r, q, n, p_triv) -> Bound:
    p = parse_prob(p_triv) ** r
    b = eps_ex_merkle(r * ell0, q, n, p, kappa=r)
    b.name = "merkle-unruh"
    return b


def coefficient_ordinary(ell):
    return 22 * ell + 60


def coefficient_merkle(ell):
    lg = _log2_exact(ell)
    return 22 * ell * lg + 60 if lg is not None else 22 * ell * math.log2(ell) + 60


@dataclass
class Table1Row:
    name: str
    value: mpmath.mpf
    vacuous: bool
    asymptotic: bool

    @property
    def log2(self):
        return float(mpmath.log(self.value, 2)) if self.value > 0 else -math.inf


def table1_compare(eps, q, r, n, C, ell=None, merkle=False):
    """Guaranteed extraction success for a prover that succeeds with probability eps.

    The rewinding and generic-FS rows are O(.) expressions rendered with
    constant 1. The online-extraction row subtracts the exact error bound,
    with p_triv = 1/C per repetition (special soundness) and ell = r*C
    committed messages unless given.
    """
    eps = parse_prob(eps)
    ell = r * C if ell is None else ell
    with mpmath.workdps(DPS):
        e, qq = _mpf(eps), mpmath.mpf(q)
        floor = mpmath.mpf(2) ** -n
        p = Fraction(1, C) ** r
        h = (eps_ex_merkle if merkle else eps_ex_ordinary)(ell, q, n, p, kappa=r).simplified
        rows = [
            ("rewinding+generic FS: eps^3/q^6", e ** 3 / qq ** 6, True),
            ("generic FS: eps/q^2", e / qq ** 2, True),
            ("online extraction: eps - h(q,r,n)", e - h, False),
        ]
        return [Table1Row(name, +v, v <= floor, asym) for name, v, asym in rows]


# names accepted on the command line
FORMULAS = ("thm3", "thm4", "cor2", "cor3", "lemma3", "lemma4", "table1")


def evaluate(formula, *, l=1, q=0, n=128, ptriv=0, r=1, l0=2, kappa=1, eps=1, C=2):
    """Dispatch used by the command line; returns (label, Bound or list of rows)."""
    if formula == "thm3":
        return eps_ex_ordinary(l, q, n, ptriv, kappa)
    if formula == "thm4":
        return eps_ex_merkle(l, q, n, ptriv, kappa)
    if formula == "cor2":
        return eps_unruh(l0, r, q, n, ptriv)
    if formula == "cor3":
        return eps_mppu(l0, r, q, n, ptriv)
    if formula == "lemma3":
        return Bound("capacity", capacity_bound(l, q, n, ptriv, "ordinary"))
    if formula == "lemma4":
        return Bound("capacity-merkle", capacity_bound(l, q, n, ptriv, "merkle"))
    if formula == "table1":
        return table1_compare(eps, q, r, n, C)
    raise ValueError(f"unknown formula {formula!r}")
