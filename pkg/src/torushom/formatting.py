"""Text and LaTeX rendering of rational functions, and a parser for the text form.

Text form::

    NUM                              (no denominator)
    (NUM) / ((1 - MONO)^k*(1 - MONO))

with ``NUM`` a signed sum of ``coeff*A^i*Q^j*T^k`` terms in descending lex
order.  Output is deterministic so reruns are byte-identical.
"""
from __future__ import annotations

import re
from typing import Dict, List, Tuple

from .ratfield import VARS_AQT, LaurentPoly, Monomial, RatFunc, format_monomial


def to_text(value: RatFunc, names: Tuple[str, ...] = VARS_AQT) -> str:
    num = value.num.to_str(names)
    if not value.den:
        return num
    factors = []
    for d, k in value.den:
        f = f"(1 - {format_monomial(d, names)})"
        factors.append(f if k == 1 else f"{f}^{k}")
    return f"({num}) / ({'*'.join(factors)})"


def _latex_monomial(m: Monomial, names: Tuple[str, ...]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{{{e}}}")
    return " ".join(parts) if parts else "1"


def _latex_poly(p: LaurentPoly, names: Tuple[str, ...]) -> str:
    if p.is_zero():
        return "0"
    out = ""
    for i, (m, c) in enumerate(sorted(p.terms.items(), reverse=True)):
        mono = _latex_monomial(m, names)
        mag = abs(c)
        body = str(mag) if mono == "1" else (mono if mag == 1 else f"{mag} {mono}")
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def to_latex(value: RatFunc, names: Tuple[str, ...] = VARS_AQT) -> str:
    """Displayed fraction with the denominator kept in factored form."""
    num = _latex_poly(value.num, names)
    if not value.den:
        return f"\\[ {num} \\]"
    factors = []
    for d, k in value.den:
        f = f"(1 - {_latex_monomial(d, names)})"
        factors.append(f if k == 1 else f"{f}^{{{k}}}")
    return f"\\[ \\frac{{{num}}}{{{''.join(factors)}}} \\]"


_FACTOR = re.compile(r"([A-Za-z]\w*)(?:\^(-?\d+))?")


def _parse_monomial(text: str, names: Tuple[str, ...]) -> Monomial:
    exp = [0, 0, 0]
    text = text.strip("*")
    if not text or text == "1":
        return (0, 0, 0)
    for piece in text.split("*"):
        m = _FACTOR.fullmatch(piece)
        if not m or m.group(1) not in names:
            raise ValueError(f"bad monomial factor {piece!r}")
        exp[names.index(m.group(1))] += int(m.group(2) or 1)
    return tuple(exp)  # type: ignore[return-value]


def parse_poly(text: str, names: Tuple[str, ...] = VARS_AQT) -> LaurentPoly:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return LaurentPoly()
    tokens = re.findall(r"[+-]?[^+-]+", text.replace("^-", "^~"))
    terms: Dict[Monomial, int] = {}
    for tok in tokens:
        tok = tok.replace("^~", "^-")
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        m = re.fullmatch(r"(\d+)(?:\*(.+))?|(.+)", tok)
        if m is None:
            raise ValueError(f"bad term {tok!r}")
        if m.group(1) is not None:
            coeff = int(m.group(1))
            mono = _parse_monomial(m.group(2) or "", names)
        else:
            coeff = 1
            mono = _parse_monomial(m.group(3), names)
        terms[mono] = terms.get(mono, 0) + sign * coeff
    return LaurentPoly(terms)


def parse_text(text: str, names: Tuple[str, ...] = VARS_AQT) -> RatFunc:
    """Inverse of :func:`to_text`."""
    text = text.strip()
    if " / " not in text:
        return RatFunc(parse_poly(text, names), simplify=False)
    num_part, den_part = text.split(" / ", 1)
    num = parse_poly(num_part.strip()[1:-1], names)
    den_part = den_part.strip()[1:-1]
    den: List[Tuple[Monomial, int]] = []
    for m in re.finditer(r"\(1 - ([^)]+)\)(?:\^(\d+))?", den_part):
        den.append((_parse_monomial(m.group(1).replace(" ", ""), names), int(m.group(2) or 1)))
    return RatFunc(num, den, simplify=False)
