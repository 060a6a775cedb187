"""Exact graded dimensions of y-ified colored triply-graded homology of torus links."""
from __future__ import annotations

from .errors import (
    CycleDetected, DepthExceeded, FingerprintMismatch, IndexOutOfRange, InternalContradiction,
    InvalidState, NonPolynomialResult, NotDivisible, SizeMismatch, TorusHomError, ZeroDenominator,
)
from .ratfield import (
    A, ONE, Q, T, LaurentPoly, RatFunc, equal_up_to_monomial, gaussian_factorial, rf_add,
    rf_div_exact, rf_mul, rf_subst, rf_swap_QT,
)
from .symmetric import Permutation, State, Theory, compose, cyc, state, tr_perm
from .recursion import Conventions, Engine, MemoTable, RuleId, dispatch, explain, p_column, p_row
from .invariants import (
    InvariantReport, TorusLinkSpec, column_invariant, hrw_ratio_check, mirror_verify,
    reduced_invariant, row_invariant, specialize_homfly, torus_state,
)

__version__ = "0.1.0"
