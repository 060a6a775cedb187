"""Memoised rule engines for the column and row state recursions.

Every non-base state is rewritten by exactly one of seven rules, selected
syntactically from the last bit of each word, the ones-count and whether
``sigma`` fixes its last letter.  The row engine is the column engine with
every coefficient pushed through ``Q <-> T``.
"""
from __future__ import annotations

import enum
import hashlib
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import CycleDetected, DepthExceeded, InvalidState
from .ratfield import ONE, A, LaurentPoly, RatFunc, rf_swap_QT
from .symmetric import Permutation, State, Theory, compose, cyc, ones, tr_perm


class RuleId(str, enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    R6 = "R6"
    R7 = "R7"
    BASE = "Base"


@dataclass(frozen=True)
class Conventions:
    """The permutation bookkeeping the rules leave implicit.

    ``cycle4``/``cycle5``: the l-cycle multiplied in by rules 4 and 5
    (``"up"`` is ``i -> i+1``, ``"down"`` its inverse); rule 4 composes it on
    the right of sigma and rule 5 on the left.  The strand read off the
    bottom word wraps the opposite way to the one read off the top word,
    hence the two cycles are mutually inverse.  ``embed``: where rule 7
    inserts the strand its first branch creates; ``"first"`` matches the
    ``1`` being prepended to both words.  Only the defaults pass the
    topological invariance and HOMFLYPT checks; the fields exist so the
    cache fingerprint records them and tests can show the alternatives fail.
    """

    cycle4: str = "down"
    cycle5: str = "up"
    embed: str = "first"
    compose: str = "right-first"

    def fingerprint(self) -> str:
        text = (f"cycle4={self.cycle4};cycle5={self.cycle5};embed={self.embed};"
                f"compose={self.compose};rules=v1")
        return hashlib.sha256(text.encode()).hexdigest()[:16]


DEFAULT_CONVENTIONS = Conventions()


def _cycle(l: int, direction: str) -> Permutation:
    c = cyc(l)
    return c if direction == "up" else c.inverse()


def _embed(sigma: Permutation, conv: Conventions) -> Permutation:
    if conv.embed == "last":
        return sigma.extend()
    return Permutation((1,) + tuple(i + 1 for i in sigma.images))


class MemoTable:
    """Map from state keys to values; inserts are write-once."""

    def __init__(self, conventions: Conventions = DEFAULT_CONVENTIONS):
        self.conventions = conventions
        self._data: Dict[tuple, RatFunc] = {}
        self._lock = threading.Lock()

    def get(self, key: tuple) -> Optional[RatFunc]:
        return self._data.get(key)

    def insert(self, key: tuple, value: RatFunc) -> RatFunc:
        # a concurrent duplicate computation keeps the first value; both are equal
        with self._lock:
            return self._data.setdefault(key, value)

    def __contains__(self, key: tuple) -> bool:
        return key in self._data

    def __len__(self) -> int:
        return len(self._data)

    def items(self) -> Iterator[Tuple[tuple, RatFunc]]:
        return iter(list(self._data.items()))

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


def dispatch(s: State) -> RuleId:
    v, w = s.v, s.w
    if not v and not w:
        return RuleId.BASE
    if not v or not w:
        raise InvalidState(f"exactly one word is empty in {s}")
    lv, lw = v[-1], w[-1]
    l = s.l
    if lv == "1" and lw == "1":
        if l == 1:
            return RuleId.R1
        return RuleId.R2 if s.sigma(l) == l else RuleId.R3
    if lv == "0" and lw == "1":
        return RuleId.R4
    if lv == "1" and lw == "0":
        return RuleId.R5
    return RuleId.R7 if l >= 1 else RuleId.R6


@lru_cache(maxsize=None)
def _coefficient(theory: Theory, rule: RuleId, l: int, branch: int = 0) -> RatFunc:
    """Coefficient of the rule in the column theory, swapped for the row theory."""
    if rule is RuleId.R1:
        c = RatFunc(ONE + A, [((0, 1, 0), 1), ((0, 0, 1), 1)])
    elif rule is RuleId.R2:
        c = RatFunc(LaurentPoly.monomial((0, l, 0)) + A, [((0, 1, 0), 1)])
    elif rule is RuleId.R3:
        c = RatFunc(LaurentPoly.monomial((0, l, 0)) + A)
    elif rule is RuleId.R7:
        c = RatFunc(LaurentPoly.monomial((0, -l, branch)))
    else:
        c = RatFunc(1)
    return rf_swap_QT(c) if theory is Theory.ROW else c


Children = List[Tuple[RatFunc, State]]


def expand(s: State, conv: Conventions = DEFAULT_CONVENTIONS) -> Tuple[RuleId, Children]:
    """One rewriting step: ``p(s) = sum(coeff * p(child))``."""
    rule = dispatch(s)
    v, w, sigma, th = s.v, s.w, s.sigma, s.theory
    l = s.l
    if rule is RuleId.BASE:
        return rule, []
    if rule is RuleId.R1:
        return rule, [(_coefficient(th, rule, 0), State(v[:-1], w[:-1], Permutation(()), th))]
    if rule in (RuleId.R2, RuleId.R3):
        return rule, [(_coefficient(th, rule, l - 1), State(v[:-1], w[:-1], tr_perm(sigma), th))]
    if rule is RuleId.R4:
        child = State(v[:-1], "1" + w[:-1], compose(sigma, _cycle(l, conv.cycle4)), th)
        return rule, [(_coefficient(th, rule, l), child)]
    if rule is RuleId.R5:
        child = State("1" + v[:-1], w[:-1], compose(_cycle(l, conv.cycle5), sigma), th)
        return rule, [(_coefficient(th, rule, l), child)]
    if rule is RuleId.R6:
        child = State("1" + v[1:], "1" + w[1:], Permutation((1,)), th)
        return rule, [(_coefficient(th, rule, 0), child)]
    return rule, [
        (_coefficient(th, rule, l, 0), State("1" + v[:-1], "1" + w[:-1], _embed(sigma, conv), th)),
        (_coefficient(th, rule, l, 1), State("0" + v[:-1], "0" + w[:-1], sigma, th)),
    ]


class Engine:
    """Evaluates states, sharing one :class:`MemoTable` across calls.

    With ``memoize=False`` the rules are unfolded by plain recursion with no
    caching at all, which is exponential but independent of the memo path.
    """

    def __init__(self, memo: Optional[MemoTable] = None, *, memoize: bool = True,
                 max_depth: Optional[int] = None):
        self.memo = memo if memo is not None else MemoTable()
        self.conventions = self.memo.conventions
        self.memoize = memoize
        self.max_depth = max_depth

    def _depth_bound(self, s: State) -> int:
        if self.max_depth is not None:
            return self.max_depth
        return (len(s.v) + len(s.w) + 1) ** 3

    def evaluate(self, s: State) -> RatFunc:
        if not self.memoize:
            return self._evaluate_plain(s, self._depth_bound(s), set())
        key = s.key()
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        bound = self._depth_bound(s)
        conv = self.conventions
        # explicit stack: (state, children or None)
        stack: List[Tuple[State, Optional[Children]]] = [(s, None)]
        on_stack = {key}
        while stack:
            cur, children = stack[-1]
            if children is None:
                _, children = expand(cur, conv)
                stack[-1] = (cur, children)
            pending = [c for _, c in children if c.key() not in self.memo]
            if pending:
                child = pending[0]
                ck = child.key()
                if ck in on_stack:
                    raise CycleDetected(f"{child} recurs while evaluating {s}")
                if len(stack) >= bound:
                    raise DepthExceeded(f"recursion deeper than {bound} while evaluating {s}")
                on_stack.add(ck)
                stack.append((child, None))
                continue
            if children:
                value = RatFunc(0)
                for coeff, child in children:
                    value = value + coeff * self.memo.get(child.key())
            else:
                value = RatFunc(1)
            self.memo.insert(cur.key(), value)
            on_stack.discard(cur.key())
            stack.pop()
        return self.memo.get(key)

    def _evaluate_plain(self, s: State, budget: int, active: set) -> RatFunc:
        key = s.key()
        if key in active:
            raise CycleDetected(f"{s} recurs on the active path")
        if len(active) >= budget:
            raise DepthExceeded(f"recursion deeper than {budget}")
        rule, children = expand(s, self.conventions)
        if rule is RuleId.BASE:
            return RatFunc(1)
        active.add(key)
        try:
            value = RatFunc(0)
            for coeff, child in children:
                value = value + coeff * self._evaluate_plain(child, budget, active)
        finally:
            active.discard(key)
        return value


_default_engine = Engine()


def default_engine() -> Engine:
    return _default_engine


def _as_theory(s: State, theory: Theory) -> State:
    if s.theory is theory:
        return s
    return State(s.v, s.w, s.sigma, theory)


def p_column(s: State, memo: Optional[MemoTable] = None) -> RatFunc:
    engine = Engine(memo) if memo is not None else _default_engine
    return engine.evaluate(_as_theory(s, Theory.COLUMN))


def p_row(s: State, memo: Optional[MemoTable] = None) -> RatFunc:
    engine = Engine(memo) if memo is not None else _default_engine
    return engine.evaluate(_as_theory(s, Theory.ROW))


@dataclass
class Derivation:
    """Node of a derivation tree: the state, the rule applied, and the
    coefficient attached to the edge from the parent."""

    state: State
    rule: RuleId
    coefficient: RatFunc
    children: List["Derivation"] = field(default_factory=list)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}{self.rule.value} {self.state}  coeff={self.coefficient}"]
        for child in self.children:
            lines.append(child.render(indent + 1))
        return "\n".join(lines)


def explain(s: State, conv: Conventions = DEFAULT_CONVENTIONS, *, max_nodes: int = 10_000) -> Derivation:
    """Full (unshared) derivation tree of ``s``; refuses trees above ``max_nodes``."""
    count = 0

    def build(cur: State, coeff: RatFunc, active: frozenset) -> Derivation:
        nonlocal count
        count += 1
        if count > max_nodes:
            raise DepthExceeded(f"derivation tree exceeds {max_nodes} nodes")
        if cur.key() in active:
            raise CycleDetected(f"{cur} recurs on the active path")
        rule, children = expand(cur, conv)
        node = Derivation(cur, rule, coeff)
        inner = active | {cur.key()}
        node.children = [build(child, c, inner) for c, child in children]
        return node

    return build(s, RatFunc(1), frozenset())


def evaluate_tree(node: Derivation) -> RatFunc:
    if node.rule is RuleId.BASE:
        return RatFunc(1)
    total = RatFunc(0)
    for child in node.children:
        total = total + child.coefficient * evaluate_tree(child)
    return total
