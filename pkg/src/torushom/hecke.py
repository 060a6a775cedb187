"""Type A Hecke algebra, the Jones-Ocneanu trace and HOMFLYPT of braid closures.

This is the decategorified oracle: it shares only the Laurent arithmetic with
the recursion engine.  Variables ``a`` and ``q`` occupy the first two
monomial slots.  The quadratic relation is ``T_i^2 = (q - q^-1) T_i + 1`` and
the trace satisfies ``chi(1) = 1``, ``chi(xy) = chi(yx)`` and
``chi(u T_{n-1} v) = z chi(uv)`` for ``u, v`` in ``H_{n-1}``, with
``z = (q - q^-1) / (1 - a^2)``.  With ``mu = (1 - a^2) / (a (q - q^-1))``,
``P = a^e mu^(n-1) chi(beta)`` is invariant under both Markov moves and obeys
``a^-1 P(L+) - a P(L-) = (q - q^-1) P(L0)`` with ``P(unknot) = 1``.
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import IndexOutOfRange, NonPolynomialResult
from .ratfield import ONE, LaurentPoly, RatFunc

Images = Tuple[int, ...]

NAMES_AQ = ("a", "q", "")

DELTA = LaurentPoly({(0, 1, 0): 1, (0, -1, 0): -1})
Z = RatFunc(DELTA, [((2, 0, 0), 1)])
# 1/(q - q^-1) = -q / (1 - q^2)
MU = RatFunc((ONE - LaurentPoly.monomial((2, 0, 0))) * LaurentPoly.monomial((-1, 1, 0), -1), [((0, 2, 0), 1)])
LAMBDA = RatFunc(LaurentPoly.monomial((1, 0, 0)))


class HeckeElement:
    """Linear combination of standard basis elements ``T_sigma`` of ``H_n``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Images, LaurentPoly] | None = None):
        self.n = n
        self.terms: Dict[Images, LaurentPoly] = {}
        for perm, c in (terms or {}).items():
            perm = tuple(perm)
            if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
                raise ValueError(f"{perm} is not a permutation of 1..{n}")
            if not c.is_zero():
                self.terms[perm] = c

    @classmethod
    def one(cls, n: int) -> "HeckeElement":
        return cls(n, {tuple(range(1, n + 1)): ONE})

    @classmethod
    def basis(cls, perm: Sequence[int]) -> "HeckeElement":
        perm = tuple(perm)
        return cls(len(perm), {perm: ONE})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        _same_n(self, other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, LaurentPoly()) + c
        return HeckeElement(self.n, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, c: LaurentPoly) -> "HeckeElement":
        return HeckeElement(self.n, {p: v * c for p, v in self.terms.items()})

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        _same_n(self, other)
        out = HeckeElement(self.n)
        for perm, c in other.terms.items():
            acc = self
            for i in reduced_word(perm):
                acc = hecke_mul_gen(acc, i)
            out = out + acc.scale(c)
        return out

    def __repr__(self) -> str:
        body = " + ".join(f"({c.to_str(NAMES_AQ)})T{list(p)}" for p, c in sorted(self.terms.items()))
        return f"HeckeElement(n={self.n}: {body or '0'})"


def _same_n(x: HeckeElement, y: HeckeElement) -> None:
    if x.n != y.n:
        raise ValueError(f"elements of H_{x.n} and H_{y.n} do not mix")


def reduced_word(perm: Sequence[int]) -> list:
    """Generators ``i_1..i_r`` with ``perm = s_{i_1} ... s_{i_r}`` (right factor applied first)."""
    p = list(perm)
    word = []
    # bubble sort p to the identity by right multiplication; record the swaps
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i + 1)
                changed = True
    return word[::-1]


def hecke_mul_gen(x: HeckeElement, i: int) -> HeckeElement:
    """Right multiplication by ``T_{s_i}``."""
    if not 1 <= i <= x.n - 1:
        raise IndexOutOfRange(f"generator s_{i} is not in H_{x.n}")
    out: Dict[Images, LaurentPoly] = defaultdict(LaurentPoly)
    for perm, c in x.terms.items():
        swapped = perm[: i - 1] + (perm[i], perm[i - 1]) + perm[i + 1:]
        if perm[i - 1] < perm[i]:
            out[swapped] = out[swapped] + c
        else:
            out[perm] = out[perm] + c * DELTA
            out[swapped] = out[swapped] + c
    return HeckeElement(x.n, out)


def hecke_mul_gen_inv(x: HeckeElement, i: int) -> HeckeElement:
    """Right multiplication by ``T_{s_i}^{-1} = T_{s_i} - (q - q^-1)``."""
    return hecke_mul_gen(x, i) - x.scale(DELTA)


def braid_element(word: Iterable[int], n: int) -> HeckeElement:
    x = HeckeElement.one(n)
    for g in word:
        if g == 0:
            raise IndexOutOfRange("generator index 0 is not allowed")
        x = hecke_mul_gen(x, g) if g > 0 else hecke_mul_gen_inv(x, -g)
    return x


def _strip_fixed_tail(perm: Images) -> Images:
    n = len(perm)
    while n and perm[n - 1] == n:
        n -= 1
    return perm[:n]


@lru_cache(maxsize=None)
def _trace_basis(perm: Images) -> RatFunc:
    perm = _strip_fixed_tail(perm)
    n = len(perm)
    if n == 0:
        return RatFunc(1)
    j = perm.index(n) + 1
    # perm = u * c with u fixing n and c = s_{n-1} ... s_j the minimal coset
    # representative: c sends j -> n and shifts j+1..n down by one
    c = tuple(list(range(1, j)) + [n] + list(range(j, n)))
    c_inv = [0] * n
    for k, img in enumerate(c, 1):
        c_inv[img - 1] = k
    u = tuple(perm[c_inv[k] - 1] for k in range(n))
    x = HeckeElement.basis(u[:-1])
    for g in range(n - 2, j - 1, -1):
        x = hecke_mul_gen(x, g)
    return Z * jones_trace(x)


def jones_trace(x: HeckeElement) -> RatFunc:
    total = RatFunc(0)
    for perm, c in sorted(x.terms.items()):
        total = total + RatFunc.from_poly(c) * _trace_basis(perm)
    return total


def closure_components(word: Sequence[int], n: int) -> int:
    """Number of components of the closure: cycles of the underlying permutation."""
    perm = list(range(n))
    for g in word:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, cycles = set(), 0
    for start in range(n):
        if start in seen:
            continue
        cycles += 1
        k = start
        while k not in seen:
            seen.add(k)
            k = perm[k]
    return cycles


def homfly_braid_closure(word: Sequence[int], n: int) -> RatFunc:
    """HOMFLYPT polynomial in ``(a, q)`` of the closure of a braid word on ``n`` strands.

    Knots give Laurent polynomials.  A ``c``-component link carries exactly
    ``(q - q^-1)^(1-c)``, so the only denominator tolerated is
    ``(1 - q^2)^(c-1)``; anything else raises :class:`NonPolynomialResult`.
    """
    if n < 1:
        raise ValueError("a braid needs at least one strand")
    for g in word:
        if not 1 <= abs(g) <= n - 1:
            raise IndexOutOfRange(f"generator {g} out of range for {n} strands")
    writhe = sum(1 if g > 0 else -1 for g in word)
    chi = jones_trace(braid_element(word, n))
    value = (RatFunc(LaurentPoly.monomial((writhe, 0, 0))) * _power(MU, n - 1) * chi).simplify()
    c = closure_components(word, n)
    allowed = {(0, 2, 0): c - 1}
    if any(k > allowed.get(d, 0) for d, k in value.den):
        raise NonPolynomialResult(
            f"closure of {list(word)} on {n} strands ({c} components) left denominator {value}"
        )
    return value


def homfly_knot_polynomial(word: Sequence[int], n: int) -> LaurentPoly:
    value = homfly_braid_closure(word, n)
    if not value.is_polynomial():
        raise NonPolynomialResult(f"closure of {list(word)} is not a knot: {value}")
    return value.num


def _power(x: RatFunc, k: int) -> RatFunc:
    out = RatFunc(1)
    for _ in range(k):
        out = out * x
    return out


def torus_braid(m: int, n: int) -> Tuple[list, int]:
    """``(sigma_1 ... sigma_{m-1})^n`` on ``m`` strands."""
    return list(range(1, m)) * n, m


def homfly_torus(m: int, n: int) -> RatFunc:
    word, strands = torus_braid(m, n)
    return homfly_braid_closure(word, strands)


def parse_braid(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    return [int(tok) for tok in text.split(",")]
