"""Torus-link states, colored invariants, reductions and the cross-checks on them.

Every comparison here is "up to a unit": ``a == sign * x^m * b`` for a single
Laurent monomial ``x^m``.  Absolute gradings are never asserted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Optional, Tuple

from .errors import NonPolynomialResult
from .formatting import to_latex, to_text
from .hecke import homfly_torus
from .ratfield import (
    ONE, A, LaurentPoly, Monomial, RatFunc, equal_up_to_monomial, gaussian_factorial,
    product, rf_div_exact, rf_subst, rf_swap_QT, to_json,
)
from .recursion import MemoTable, p_column, p_row
from .symmetric import Permutation, State, Theory

Unit = Tuple[int, Monomial]


@dataclass(frozen=True)
class TorusLinkSpec:
    """Positive torus link ``T(m, n)``; the first component carries color ``k``."""

    m: int
    n: int
    k: int = 1
    theory: Theory = Theory.COLUMN

    def __post_init__(self):
        for name in ("m", "n", "k"):
            val = getattr(self, name)
            if not isinstance(val, int) or val < 1:
                raise ValueError(f"{name} must be a positive integer, got {val!r}")
        object.__setattr__(self, "theory", Theory(self.theory))

    @property
    def d(self) -> int:
        return gcd(self.m, self.n)

    @property
    def components(self) -> int:
        return self.d

    @property
    def is_knot(self) -> bool:
        return self.d == 1


@dataclass
class InvariantReport:
    spec: TorusLinkSpec
    value: RatFunc
    reduced: Optional[RatFunc] = None
    note: str = "graded dimension up to an overall unit (sign times monomial)"
    unit_vs_mirror: Optional[Unit] = None

    def to_dict(self) -> dict:
        unit = None
        if self.unit_vs_mirror is not None:
            sign, mono = self.unit_vs_mirror
            unit = {"sign": sign, "monomial": list(mono)}
        return {
            "m": self.spec.m,
            "n": self.spec.n,
            "k": self.spec.k,
            "theory": self.spec.theory.value,
            "value": to_json(self.value),
            "reduced": to_json(self.reduced) if self.reduced is not None else None,
            "unit_vs_mirror": unit,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        s = self.spec
        lines = [f"T({s.m},{s.n}) k={s.k} theory={s.theory.value}", f"  value   = {to_text(self.value)}"]
        if self.reduced is not None:
            lines.append(f"  reduced = {to_text(self.reduced)}")
        return "\n".join(lines)

    def to_latex(self) -> str:
        s = self.spec
        body = to_latex(self.reduced if self.reduced is not None else self.value)
        kind = "reduced" if self.reduced is not None else "unreduced"
        return f"% T({s.m},{s.n}), k={s.k}, {s.theory.value}, {kind}\n{body}"


def torus_state(spec: TorusLinkSpec) -> State:
    m, n, k, d = spec.m, spec.n, spec.k, spec.d
    v = "1" * k + "0" * ((m // d) * (d - 1) + k * (m // d - 1))
    w = "1" * k + "0" * ((n // d) * (d - 1) + k * (n // d - 1))
    return State(v, w, Permutation.identity(k), spec.theory)


def color_prefactor(k: int, theory: Theory) -> RatFunc:
    """``prod_{i=2..k} 1/(1 - Q^(1-i) T)``, or its ``Q <-> T`` image for rows.

    The row form is used for links as well as knots; mirror symmetry fails
    with the other choice.
    """
    theory = Theory(theory)
    factors = []
    for i in range(2, k + 1):
        d = (0, 1 - i, 1) if theory is Theory.COLUMN else (0, 1, 1 - i)
        factors.append(RatFunc(ONE, [(d, 1)]))
    return product(factors)


def invariant(spec: TorusLinkSpec, memo: Optional[MemoTable] = None) -> RatFunc:
    s = torus_state(spec)
    p = p_column(s, memo) if spec.theory is Theory.COLUMN else p_row(s, memo)
    return color_prefactor(spec.k, spec.theory) * p


def column_invariant(m: int, n: int, k: int = 1, memo: Optional[MemoTable] = None) -> RatFunc:
    return invariant(TorusLinkSpec(m, n, k, Theory.COLUMN), memo)


def row_invariant(m: int, n: int, k: int = 1, memo: Optional[MemoTable] = None) -> RatFunc:
    return invariant(TorusLinkSpec(m, n, k, Theory.ROW), memo)


def uncolored_invariant(m: int, n: int, theory: Theory = Theory.COLUMN,
                        memo: Optional[MemoTable] = None) -> RatFunc:
    """``p_e(0^m, 0^n)`` evaluated directly, without the torus-state shortcut."""
    s = State("0" * m, "0" * n, Permutation(()), Theory(theory))
    return p_column(s, memo) if s.theory is Theory.COLUMN else p_row(s, memo)


def reduced_invariant(value: RatFunc, components: int) -> RatFunc:
    """``value * (1-T)^r * (1-Q) / (1+A)``; the division must be exact."""
    if components < 1:
        raise ValueError("a link has at least one component")
    factor = (ONE - LaurentPoly.var(2)) ** components * (ONE - LaurentPoly.var(1))
    return rf_div_exact(value * RatFunc(factor), ONE + A).simplify()


def is_nonnegative_polynomial(value: RatFunc) -> bool:
    value = value.simplify()
    return value.is_polynomial() and all(c >= 0 for _, c in value.num.items())


def colored_unknot_column(k: int) -> RatFunc:
    """Closed form ``prod_{i=1..k} (Q^(i-1) + A) / ((1-Q)(1 - Q^(1-i) T))``."""
    return product(
        RatFunc(LaurentPoly.monomial((0, i - 1, 0)) + A, [((0, 1, 0), 1), ((0, 1 - i, 1), 1)])
        for i in range(1, k + 1)
    )


def colored_unknot_row(k: int) -> RatFunc:
    return product(
        RatFunc(LaurentPoly.monomial((0, 0, i - 1)) + A, [((0, 0, 1), 1), ((0, 1, i - 1), 1)])
        for i in range(1, k + 1)
    )


# -- verification -------------------------------------------------------------

@dataclass
class CheckReport:
    label: str
    unit: Optional[Unit]
    passed: bool
    detail: str = ""


def _positive_unit(unit: Optional[Unit]) -> bool:
    return unit is not None and unit[0] == 1


def mirror_verify(m: int, n: int, k: int = 1, memo: Optional[MemoTable] = None) -> CheckReport:
    col = column_invariant(m, n, k, memo)
    row = row_invariant(m, n, k, memo)
    unit = equal_up_to_monomial(rf_swap_QT(row), col)
    return CheckReport(f"mirror T({m},{n}) k={k}", unit, _positive_unit(unit))


def invariance_verify(m: int, n: int, k: int = 1, memo: Optional[MemoTable] = None) -> CheckReport:
    unit = equal_up_to_monomial(column_invariant(m, n, k, memo), column_invariant(n, m, k, memo))
    return CheckReport(f"invariance T({m},{n})~T({n},{m}) k={k}", unit, _positive_unit(unit))


def uncolored_mirror_verify(m: int, n: int, memo: Optional[MemoTable] = None) -> CheckReport:
    p = uncolored_invariant(m, n, Theory.COLUMN, memo)
    unit = equal_up_to_monomial(p, rf_swap_QT(p))
    return CheckReport(f"uncolored mirror T({m},{n})", unit, _positive_unit(unit))


def hrw_reference(k: int) -> RatFunc:
    """``[k]! * prod_{i=1..k} (1 + A Q^(1-i)) / ((1 - Q^i)(1 - T Q^(1-i)))``."""
    terms = [
        RatFunc(ONE + LaurentPoly.monomial((1, 1 - i, 0)), [((0, i, 0), 1), ((0, 1 - i, 1), 1)])
        for i in range(1, k + 1)
    ]
    return RatFunc(gaussian_factorial(k)) * product(terms)


def hrw_ratio_check(k: int, memo: Optional[MemoTable] = None) -> CheckReport:
    if k < 1:
        raise ValueError("k must be >= 1")
    unit = equal_up_to_monomial(column_invariant(1, 1, k, memo), hrw_reference(k))
    return CheckReport(f"HRW ratio k={k}", unit, _positive_unit(unit))


# -- HOMFLYPT specialization ---------------------------------------------------

def specialize_homfly(value: RatFunc) -> RatFunc:
    """Substitute ``T -> Q^-1``; raises ZeroDenominator if a ``(1 - (QT)^j)`` factor survives."""
    return rf_subst(value.simplify(), 2, (0, -1, 0))


def twist_A(value: RatFunc, sign: int) -> RatFunc:
    """``A -> sign * A``."""
    if sign == 1:
        return value
    if any(d[0] % 2 for d, _ in value.den):
        raise ValueError("A -> -A is not a monomial substitution on this denominator")
    num = LaurentPoly({m: (c if m[0] % 2 == 0 else -c) for m, c in value.num.items()})
    return RatFunc(num, value.den)


def _halve(m: Monomial) -> Monomial:
    if m[0] % 2 or m[1] % 2:
        raise NonPolynomialResult(f"oracle term a^{m[0]} q^{m[1]} has an odd exponent")
    return (m[0] // 2, m[1] // 2, 0)


def oracle_in_AQ(m: int, n: int, invert_q: bool = False) -> RatFunc:
    """HOMFLYPT of ``T(m, n)`` with ``a^2 -> A`` and ``q^2 -> Q`` (or ``Q^-1``)."""
    h = homfly_torus(m, n).simplify()
    if not h.is_polynomial():
        raise NonPolynomialResult(f"T({m},{n}) is a link; the oracle comparison needs a knot")
    sgn = -1 if invert_q else 1
    num = LaurentPoly({(hm[0], sgn * hm[1], 0): c for hm, c in
                       ((_halve(mono), c) for mono, c in h.num.items())})
    return RatFunc(num)


def _specialized_reduced(m: int, n: int, memo: Optional[MemoTable]) -> RatFunc:
    return specialize_homfly(reduced_invariant(column_invariant(m, n, 1, memo), 1))


@dataclass(frozen=True)
class HomflyCalibration:
    a_sign: int
    invert_q: bool


@lru_cache(maxsize=1)
def calibrate_homfly() -> HomflyCalibration:
    """Pick the sign twist (and q orientation) matching unknot and trefoil; then frozen."""
    samples = [(1, 1), (2, 3)]
    specialized = {mn: _specialized_reduced(*mn, None) for mn in samples}
    for a_sign in (1, -1):
        for invert_q in (False, True):
            if all(equal_up_to_monomial(twist_A(specialized[mn], a_sign), oracle_in_AQ(*mn, invert_q))
                   for mn in samples):
                return HomflyCalibration(a_sign, invert_q)
    raise NonPolynomialResult("no sign/orientation twist matches the oracle on unknot and trefoil")


@dataclass
class HomflyComparison:
    m: int
    n: int
    specialized: RatFunc
    oracle: RatFunc
    unit: Optional[Unit]
    calibration: HomflyCalibration = field(default_factory=lambda: HomflyCalibration(1, False))

    @property
    def passed(self) -> bool:
        return self.unit is not None


def homfly_compare(m: int, n: int, memo: Optional[MemoTable] = None) -> HomflyComparison:
    if gcd(m, n) != 1:
        raise ValueError(f"T({m},{n}) is not a knot")
    cal = calibrate_homfly()
    spec = twist_A(_specialized_reduced(m, n, memo), cal.a_sign)
    oracle = oracle_in_AQ(m, n, cal.invert_q)
    return HomflyComparison(m, n, spec, oracle, equal_up_to_monomial(spec, oracle), cal)


def report(spec: TorusLinkSpec, *, reduced: bool = False, with_mirror: bool = False,
           memo: Optional[MemoTable] = None) -> InvariantReport:
    value = invariant(spec, memo).simplify()
    red = reduced_invariant(value, spec.components) if reduced else None
    unit = None
    if with_mirror:
        other = TorusLinkSpec(spec.m, spec.n, spec.k,
                              Theory.ROW if spec.theory is Theory.COLUMN else Theory.COLUMN)
        unit = equal_up_to_monomial(rf_swap_QT(invariant(other, memo)), value)
    return InvariantReport(spec, value, red, unit_vs_mirror=unit)
