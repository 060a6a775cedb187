"""Exact arithmetic over Z[x1^±1, x2^±1, x3^±1] and its localisation at binomials.

Homology values live in the variables (A, Q, T); the Hecke oracle reuses the
first two slots for (a, q).  A :class:`RatFunc` is a Laurent polynomial
numerator over a product of factors ``(1 - x^d)^mult`` with every ``d``
lexicographically positive, which is exactly the shape of everything the
torus-link recursion produces.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import NotDivisible, ZeroDenominator

Monomial = Tuple[int, int, int]
DenomFactor = Tuple[Monomial, int]

ONE_EXP: Monomial = (0, 0, 0)
NVARS = 3
VARS_AQT = ("A", "Q", "T")


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])


def mono_inv(m: Monomial) -> Monomial:
    return (-m[0], -m[1], -m[2])


def mono_scale(m: Monomial, k: int) -> Monomial:
    return (m[0] * k, m[1] * k, m[2] * k)


def is_lex_positive(d: Monomial) -> bool:
    return d > ONE_EXP


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients in three variables.

    Instances are immutable; the term dictionary is never exposed for
    mutation and zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        if terms is None:
            self._terms: Dict[Monomial, int] = {}
        else:
            self._terms = {tuple(m): int(c) for m, c in terms.items() if c}

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, int]) -> "LaurentPoly":
        # trusted constructor: caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._wrap({ONE_EXP: int(c)} if c else {})

    @classmethod
    def monomial(cls, exp: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        exp = tuple(exp)
        if len(exp) != NVARS:
            raise ValueError(f"monomial needs {NVARS} exponents, got {exp!r}")
        return cls._wrap({exp: int(coeff)} if coeff else {})

    @classmethod
    def var(cls, index: int, power: int = 1) -> "LaurentPoly":
        exp = [0, 0, 0]
        exp[index] = power
        return cls.monomial(exp)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading_term(self) -> Tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms)
        return m, self._terms[m]

    def trailing_term(self) -> Tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no trailing term")
        m = min(self._terms)
        return m, self._terms[m]

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(tuple(m), 0)

    def exponent_box(self) -> Tuple[Monomial, Monomial]:
        keys = self._terms.keys()
        lo = tuple(min(k[i] for k in keys) for i in range(NVARS))
        hi = tuple(max(k[i] for k in keys) for i in range(NVARS))
        return lo, hi  # type: ignore[return-value]

    # -- ring operations --------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap({m: -c for m, c in self._terms.items()})

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return LaurentPoly.const(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            return LaurentPoly._wrap({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            return LaurentPoly._wrap(
                {(m[0] + mb[0], m[1] + mb[1], m[2] + mb[2]): c * cb for m, c in a.items()}
            )
        out: Dict[Monomial, int] = defaultdict(int)
        for mb, cb in b.items():
            b0, b1, b2 = mb
            for ma, ca in a.items():
                out[(ma[0] + b0, ma[1] + b1, ma[2] + b2)] += ca * cb
        return LaurentPoly._wrap({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (m, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient is not invertible")
            return LaurentPoly.monomial(mono_scale(m, k), c ** -k)
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, m: Monomial, c: int = 1) -> "LaurentPoly":
        return LaurentPoly._wrap(
            {(k[0] + m[0], k[1] + m[1], k[2] + m[2]): v * c for k, v in self._terms.items()}
        )

    def map_exponents(self, f) -> "LaurentPoly":
        out: Dict[Monomial, int] = defaultdict(int)
        for m, c in self._terms.items():
            out[f(m)] += c
        return LaurentPoly._wrap({m: c for m, c in out.items() if c})

    # -- division ---------------------------------------------------------
    def div_one_minus(self, d: Monomial) -> Optional["LaurentPoly"]:
        """Quotient by ``1 - x^d`` if it is exact, else ``None``.

        Terms are grouped into chains ``base + k*d``; along each chain the
        quotient coefficients are the prefix sums of the dividend, and the
        division is exact iff every chain sums to zero.
        """
        i0 = next(i for i in range(NVARS) if d[i])
        step = d[i0]
        if step < 0:
            raise ValueError("binomial exponent must be lexicographically positive")
        chains: Dict[Monomial, Dict[int, int]] = defaultdict(dict)
        for m, c in self._terms.items():
            k = m[i0] // step
            base = (m[0] - k * d[0], m[1] - k * d[1], m[2] - k * d[2])
            chains[base][k] = c
        out: Dict[Monomial, int] = {}
        for base, chain in chains.items():
            ks = sorted(chain)
            acc = 0
            for idx, k in enumerate(ks):
                acc += chain[k]
                if idx + 1 == len(ks):
                    if acc:
                        return None
                    break
                if acc:
                    for j in range(k, ks[idx + 1]):
                        out[(base[0] + j * d[0], base[1] + j * d[1], base[2] + j * d[2])] = acc
        return LaurentPoly._wrap(out)

    def div_exact(self, p: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / p``; raises :class:`NotDivisible` otherwise."""
        if p.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        if p.is_monomial():
            (mp, cp), = p._terms.items()
            out = {}
            for m, c in self._terms.items():
                qc, r = divmod(c, cp)
                if r:
                    raise NotDivisible(f"coefficient {c} not divisible by {cp}")
                out[(m[0] - mp[0], m[1] - mp[1], m[2] - mp[2])] = qc
            return LaurentPoly._wrap(out)
        # Newton polytopes add under multiplication, so every quotient term
        # must lie in this box.
        (alo, ahi), (plo, phi) = self.exponent_box(), p.exponent_box()
        qlo = tuple(alo[i] - plo[i] for i in range(NVARS))
        qhi = tuple(ahi[i] - phi[i] for i in range(NVARS))
        lead_m, lead_c = p.leading_term()
        rest = [(m, c) for m, c in p._terms.items() if m != lead_m]
        rem = dict(self._terms)
        heap = [mono_inv(m) for m in rem]
        heapq.heapify(heap)
        quot: Dict[Monomial, int] = {}
        while heap:
            m = mono_inv(heapq.heappop(heap))
            c = rem.pop(m, 0)
            if not c:
                continue
            qm = (m[0] - lead_m[0], m[1] - lead_m[1], m[2] - lead_m[2])
            qc, r = divmod(c, lead_c)
            if r or any(qm[i] < qlo[i] or qm[i] > qhi[i] for i in range(NVARS)):
                raise NotDivisible("polynomial long division left a remainder")
            quot[qm] = qc
            for pm, pc in rest:
                t = (qm[0] + pm[0], qm[1] + pm[1], qm[2] + pm[2])
                old = rem.get(t)
                if old is None:
                    heapq.heappush(heap, mono_inv(t))
                    old = 0
                rem[t] = old - qc * pc
        return LaurentPoly._wrap(quot)

    # -- display ----------------------------------------------------------
    def to_str(self, names: Tuple[str, ...] = VARS_AQT) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items(), reverse=True):
            mono = format_monomial(m, names)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_str()})"


def format_monomial(m: Monomial, names: Tuple[str, ...] = VARS_AQT) -> str:
    factors = []
    for name, e in zip(names, m):
        if e == 0:
            continue
        if not name:
            raise ValueError(f"exponent {e} on an unnamed variable")
        factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors) if factors else "1"


A = LaurentPoly.var(0)
Q = LaurentPoly.var(1)
T = LaurentPoly.var(2)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def _normalize_den(num: LaurentPoly, den: Iterable[DenomFactor]) -> Tuple[LaurentPoly, Tuple[DenomFactor, ...]]:
    mult: Dict[Monomial, int] = defaultdict(int)
    for d, k in den:
        d = tuple(d)
        if k < 0:
            raise ValueError("denominator multiplicity must be positive")
        if not k:
            continue
        if d == ONE_EXP:
            raise ZeroDenominator("denominator factor (1 - 1)")
        if not is_lex_positive(d):
            # 1/(1 - x^d) = -x^{-d} / (1 - x^{-d})
            num = num.mul_monomial(mono_scale(d, -k), (-1) ** k)
            d = mono_inv(d)
        mult[d] += k
    return num, tuple(sorted(mult.items()))


class RatFunc:
    """Numerator over a product of canonically oriented ``(1 - x^d)`` factors.

    Construction canonicalises factor orientation and greedily cancels any
    factor that divides the numerator.  The representation is not a full
    canonical form, so equality is decided by cross-multiplication and the
    type is deliberately unhashable.
    """

    __slots__ = ("num", "den")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, num: LaurentPoly | int = 0, den: Iterable[DenomFactor] = (), *, simplify: bool = True):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        num, den = _normalize_den(num, den)
        if num.is_zero():
            den = ()
        self.num: LaurentPoly = num
        self.den: Tuple[DenomFactor, ...] = den
        if simplify:
            self._simplify_in_place()

    @classmethod
    def _raw(cls, num: LaurentPoly, den: Tuple[DenomFactor, ...]) -> "RatFunc":
        r = object.__new__(cls)
        r.num = num
        r.den = den if not num.is_zero() else ()
        return r

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFunc":
        return cls._raw(p, ())

    @classmethod
    def inverse_binomial(cls, d: Iterable[int], mult: int = 1) -> "RatFunc":
        """``1 / (1 - x^d)^mult``."""
        return cls(ONE, [(tuple(d), mult)])

    def _simplify_in_place(self) -> None:
        num = self.num
        if num.is_zero():
            self.den = ()
            return
        kept = []
        for d, k in self.den:
            while k:
                q = num.div_one_minus(d)
                if q is None:
                    break
                num = q
                k -= 1
            if k:
                kept.append((d, k))
        self.num = num
        self.den = tuple(kept)

    def simplify(self) -> "RatFunc":
        r = RatFunc._raw(self.num, self.den)
        r._simplify_in_place()
        return r

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def den_poly(self) -> LaurentPoly:
        out = ONE
        for d, k in self.den:
            out = out * (ONE - LaurentPoly.monomial(d)) ** k
        return out

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return RatFunc.from_poly(x)
        if isinstance(x, int):
            return RatFunc.from_poly(LaurentPoly.const(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    def __add__(self, other) -> "RatFunc":
        try:
            other = RatFunc._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        da, db = dict(self.den), dict(other.den)
        lcd = {d: max(da.get(d, 0), db.get(d, 0)) for d in set(da) | set(db)}
        na, nb = self.num, other.num
        for d, k in lcd.items():
            binom = ONE - LaurentPoly.monomial(d)
            if k > da.get(d, 0):
                na = na * binom ** (k - da.get(d, 0))
            if k > db.get(d, 0):
                nb = nb * binom ** (k - db.get(d, 0))
        return RatFunc(na + nb, lcd.items())

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        try:
            other = RatFunc._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        try:
            other = RatFunc._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc()
        num = self.num * other.num
        if not other.den:
            return RatFunc(num, self.den)
        if not self.den:
            return RatFunc(num, other.den)
        return RatFunc(num, self.den + other.den)

    __rmul__ = __mul__

    def mul_monomial(self, m: Monomial, c: int = 1) -> "RatFunc":
        return RatFunc._raw(self.num.mul_monomial(m, c), self.den)

    def __eq__(self, other: object) -> bool:
        try:
            other = RatFunc._coerce(other)
        except TypeError:
            return NotImplemented
        left, right = _cross(self, other)
        return left == right

    def __str__(self) -> str:
        from .formatting import to_text

        return to_text(self)

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _cross(a: RatFunc, b: RatFunc) -> Tuple[LaurentPoly, LaurentPoly]:
    """Numerators of ``a`` and ``b`` brought over their least common denominator."""
    da, db = dict(a.den), dict(b.den)
    na, nb = a.num, b.num
    for d in set(da) | set(db):
        ka, kb = da.get(d, 0), db.get(d, 0)
        binom = ONE - LaurentPoly.monomial(d)
        if ka < kb:
            na = na * binom ** (kb - ka)
        elif kb < ka:
            nb = nb * binom ** (ka - kb)
    return na, nb


# -- named operations ---------------------------------------------------------

def rf_add(a: RatFunc, b: RatFunc) -> RatFunc:
    return a + b


def rf_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    return a * b


def rf_div_exact(a: RatFunc, p: LaurentPoly) -> RatFunc:
    """Divide by a Laurent polynomial that must divide the numerator exactly.

    Binomial factors of the denominator are multiplied back into the
    numerator before giving up, so ``p`` may share factors with them.
    """
    if p.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a = a.simplify()
    try:
        return RatFunc(a.num.div_exact(p), a.den)
    except NotDivisible:
        pass
    # p may cancel against denominator factors: try absorbing them one at a time
    num, den = a.num, dict(a.den)
    for d in sorted(den):
        while den[d]:
            num = num * (ONE - LaurentPoly.monomial(d))
            den[d] -= 1
            try:
                return RatFunc(num.div_exact(p), den.items())
            except NotDivisible:
                continue
    raise NotDivisible(f"{p} does not divide {a}")


def _subst_exp(var: int, repl: Monomial):
    def f(m: Monomial) -> Monomial:
        e = m[var]
        out = list(m)
        out[var] = 0
        return (out[0] + e * repl[0], out[1] + e * repl[1], out[2] + e * repl[2])

    return f


def rf_subst(a: RatFunc, var: int, replacement: Monomial) -> RatFunc:
    """Substitute ``x_var -> x^replacement``; raises ZeroDenominator on (1 - 1)."""
    f = _subst_exp(var, tuple(replacement))
    num = a.num.map_exponents(f)
    den = []
    for d, k in a.den:
        nd = f(d)
        if nd == ONE_EXP:
            raise ZeroDenominator(f"factor (1 - x^{d}) becomes (1 - 1) under substitution")
        den.append((nd, k))
    return RatFunc(num, den)


def _swap_qt(m: Monomial) -> Monomial:
    return (m[0], m[2], m[1])


def rf_swap_QT(a: RatFunc) -> RatFunc:
    return RatFunc(a.num.map_exponents(_swap_qt), [(_swap_qt(d), k) for d, k in a.den])


def equal_up_to_monomial(a: RatFunc, b: RatFunc) -> Optional[Tuple[int, Monomial]]:
    """Return ``(sign, m)`` with ``a == sign * x^m * b``, or ``None``."""
    if a.is_zero() or b.is_zero():
        return (1, ONE_EXP) if a.is_zero() and b.is_zero() else None
    left, right = _cross(a, b)
    if len(left) != len(right):
        return None
    lm, lc = left.leading_term()
    rm, rc = right.leading_term()
    if lc == rc:
        sign = 1
    elif lc == -rc:
        sign = -1
    else:
        return None
    m = (lm[0] - rm[0], lm[1] - rm[1], lm[2] - rm[2])
    if right.mul_monomial(m, sign) != left:
        return None
    return sign, m


def gaussian_factorial(k: int) -> LaurentPoly:
    """``prod_{j=1..k} (1 + Q + ... + Q^{j-1})``."""
    if k < 1:
        raise ValueError("gaussian_factorial needs k >= 1")
    out = ONE
    for j in range(1, k + 1):
        out = out * LaurentPoly({(0, i, 0): 1 for i in range(j)})
    return out


def product(values: Iterable[RatFunc]) -> RatFunc:
    out = RatFunc(1)
    for v in values:
        out = out * v
    return out


# -- JSON -------------------------------------------------------------------

def to_json(a: RatFunc) -> dict:
    return {
        "num": [[m[0], m[1], m[2], str(c)] for m, c in a.num.items()],
        "den": [[d[0], d[1], d[2], k] for d, k in a.den],
    }


def from_json(obj: Mapping) -> RatFunc:
    try:
        num = LaurentPoly({(int(e1), int(e2), int(e3)): int(c) for e1, e2, e3, c in obj["num"]})
        den = [((int(d1), int(d2), int(d3)), int(k)) for d1, d2, d3, k in obj["den"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed RatFunc JSON: {exc}") from exc
    return RatFunc(num, den, simplify=False)
