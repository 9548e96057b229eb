"""Dense two-phase simplex solver with Bland's rule.

Self-contained and deterministic: the feasibility and separation queries in
this package involve at most a few hundred rows and columns, so a plain
tableau implementation is both fast enough and exactly reproducible.  No
external solver is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, IterationLimit

__all__ = [
    "LE",
    "EQ",
    "GE",
    "LinearProgram",
    "LpOutcome",
    "LpStatus",
    "solve",
]

LE = "<="
EQ = "="
GE = ">="
_RELATIONS = (LE, EQ, GE)


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    """maximize objective . x  subject to row constraints and variable bounds.

    constraints: list of (coefficients, relation, rhs) with relation one of
    "<=", "=", ">=".  Bounds default to the classic 0 <= x < +inf; pass
    -inf/+inf entries for free or one-sided variables.
    """

    objective: np.ndarray
    constraints: list[tuple[np.ndarray, str, float]] = field(default_factory=list)
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.objective = np.asarray(self.objective, dtype=float)
        if self.objective.ndim != 1 or self.objective.size == 0:
            raise DimensionMismatch("objective must be a nonempty vector")
        nv = self.objective.size
        canon = []
        for i, (row, rel, rhs) in enumerate(self.constraints):
            row = np.asarray(row, dtype=float)
            if row.shape != (nv,):
                raise DimensionMismatch(
                    f"constraint {i} has {row.size} coefficients, expected {nv}"
                )
            if rel not in _RELATIONS:
                raise DimensionMismatch(f"constraint {i} has unknown relation {rel!r}")
            canon.append((row, rel, float(rhs)))
        self.constraints = canon
        self.lower = (
            np.zeros(nv) if self.lower is None else np.asarray(self.lower, dtype=float)
        )
        self.upper = (
            np.full(nv, np.inf)
            if self.upper is None
            else np.asarray(self.upper, dtype=float)
        )
        if self.lower.shape != (nv,) or self.upper.shape != (nv,):
            raise DimensionMismatch("bounds must have one entry per variable")
        finite = np.isfinite(self.lower) & np.isfinite(self.upper)
        if np.any(self.lower[finite] > self.upper[finite]):
            raise DimensionMismatch("some lower bound exceeds its upper bound")

    @property
    def num_vars(self) -> int:
        return self.objective.size


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    solution: np.ndarray | None = None
    objective_value: float | None = None


def _standardize(lp: LinearProgram):
    """Rewrite with all variables >= 0.

    Variables with lower bound 0 pass through; positive lower bounds are
    shifted out; anything that can go negative is split into a nonnegative
    pair.  Finite bounds not absorbed by the rewrite become explicit rows.
    Returns (c, rows, rels, rhs, S, shift) with x = S @ x_std + shift.
    """
    nv = lp.num_vars
    cols: list[tuple[int, float]] = []  # (original var, sign)
    shift = np.zeros(nv)
    extra: list[tuple[dict[int, float], str, float]] = []  # sparse std-space rows

    for j in range(nv):
        lo, hi = lp.lower[j], lp.upper[j]
        if lo == 0.0 or (np.isfinite(lo) and lo > 0.0):
            shift[j] = lo
            cols.append((j, 1.0))
            if np.isfinite(hi):
                extra.append(({len(cols) - 1: 1.0}, LE, hi - lo))
        else:
            # lo < 0 or lo = -inf: split into a nonnegative pair
            cols.append((j, 1.0))
            cols.append((j, -1.0))
            p, m = len(cols) - 2, len(cols) - 1
            if np.isfinite(hi):
                extra.append(({p: 1.0, m: -1.0}, LE, hi))
            if np.isfinite(lo):
                extra.append(({p: -1.0, m: 1.0}, LE, -lo))

    ns = len(cols)
    S = np.zeros((nv, ns))
    for k, (j, sign) in enumerate(cols):
        S[j, k] = sign

    c = lp.objective @ S
    rows, rels, rhs = [], [], []
    for row, rel, b in lp.constraints:
        rows.append(row @ S)
        rels.append(rel)
        rhs.append(b - float(row @ shift))
    for sparse, rel, b in extra:
        r = np.zeros(ns)
        for k, v in sparse.items():
            r[k] = v
        rows.append(r)
        rels.append(rel)
        rhs.append(b)
    A = np.array(rows) if rows else np.zeros((0, ns))
    return c, A, rels, np.array(rhs), S, shift


class _PivotBudget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self) -> None:
        self.used += 1
        if self.used > self.cap:
            raise IterationLimit(f"simplex exceeded {self.cap} pivots")


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])


def _run_simplex(T: np.ndarray, basis: list[int], tol: float, budget: _PivotBudget) -> str:
    """Bland's rule: smallest improving column, ratio ties broken by
    smallest basic variable index.  Returns 'optimal' or 'unbounded'."""
    m = T.shape[0] - 1
    while True:
        improving = np.flatnonzero(T[-1, :-1] < -tol)
        if improving.size == 0:
            return "optimal"
        col = int(improving[0])
        pos = np.flatnonzero(T[:m, col] > tol)
        if pos.size == 0:
            return "unbounded"
        ratios = T[pos, -1] / T[pos, col]
        best = ratios.min()
        ties = pos[ratios == best]
        row = int(ties[np.argmin([basis[i] for i in ties])])
        _pivot(T, row, col)
        basis[row] = col
        budget.spend()


def solve(lp: LinearProgram, tol: float = 1e-10, max_pivots: int = 20_000) -> LpOutcome:
    """Solve ``lp`` by two-phase simplex.

    Optimal outcomes are feasible within ``tol``; infeasibility means the
    phase-1 optimum exceeded ``tol``.  Identical inputs produce bit-identical
    outcomes.  Raises IterationLimit past ``max_pivots`` total pivots.
    """
    c, A, rels, rhs, S, shift = _standardize(lp)
    m, ns = A.shape

    # orient all rows to nonnegative rhs; >= rows with rhs 0 become <= rows
    # so that they need no artificial variable
    A = A.copy()
    rhs = rhs.copy()
    rels = list(rels)
    for i in range(m):
        if rhs[i] < 0 or (rhs[i] == 0.0 and rels[i] == GE):
            A[i] = -A[i]
            rhs[i] = -rhs[i]
            rels[i] = {LE: GE, GE: LE, EQ: EQ}[rels[i]]

    n_slack = sum(1 for r in rels if r != EQ)
    n_art = sum(1 for r in rels if r != LE)
    total = ns + n_slack + n_art
    T = np.zeros((m + 1, total + 1))
    T[:m, :ns] = A
    T[:m, -1] = rhs

    basis: list[int] = []
    art_cols: list[int] = []
    si, ai = ns, ns + n_slack
    for i, rel in enumerate(rels):
        if rel == LE:
            T[i, si] = 1.0
            basis.append(si)
            si += 1
        elif rel == GE:
            T[i, si] = -1.0
            si += 1
            T[i, ai] = 1.0
            basis.append(ai)
            art_cols.append(ai)
            ai += 1
        else:
            T[i, ai] = 1.0
            basis.append(ai)
            art_cols.append(ai)
            ai += 1

    budget = _PivotBudget(max_pivots)

    if n_art:
        # phase 1: maximize -(sum of artificials)
        art_rows = [i for i in range(m) if basis[i] in art_cols]
        T[-1, :] = -T[art_rows].sum(axis=0)
        for j in art_cols:
            T[-1, j] += 1.0
        status = _run_simplex(T, basis, tol, budget)
        if status != "optimal":
            raise IterationLimit("phase 1 reported unbounded; numerical breakdown")
        if T[-1, -1] < -tol:
            return LpOutcome(status=LpStatus.INFEASIBLE)
        # drive leftover artificials out of the basis, dropping redundant rows
        art_set = set(art_cols)
        keep = []
        for i in range(m):
            if basis[i] in art_set:
                candidates = np.flatnonzero(np.abs(T[i, :ns]) > tol)
                if candidates.size:
                    _pivot(T, i, int(candidates[0]))
                    basis[i] = int(candidates[0])
                    budget.spend()
                    keep.append(i)
                # else: redundant row, drop it
            else:
                keep.append(i)
        T = np.vstack([T[keep], T[-1:]])
        basis = [basis[i] for i in keep]
        m = len(keep)
        # remove artificial columns
        mask = np.ones(total + 1, dtype=bool)
        mask[ns + n_slack : total] = False
        T = T[:, mask]

    # phase 2
    c_ext = np.zeros(T.shape[1] - 1)
    c_ext[:ns] = c
    T[-1, :-1] = -c_ext
    T[-1, -1] = 0.0
    for i in range(m):
        cb = c_ext[basis[i]]
        if cb != 0.0:
            T[-1] += cb * T[i]
    status = _run_simplex(T, basis, tol, budget)
    if status == "unbounded":
        return LpOutcome(status=LpStatus.UNBOUNDED)

    x_std = np.zeros(T.shape[1] - 1)
    x_std[basis] = T[:m, -1]
    x = S @ x_std[:ns] + shift
    return LpOutcome(
        status=LpStatus.OPTIMAL,
        solution=x,
        objective_value=float(lp.objective @ x),
    )
