"""Disjointness oracles, pole witnesses, and the witness wedge.

Two spherical bodies are disjoint exactly when some pole P sees all of the
first body at positive dot and all of the second at negative dot; the set of
such poles (the witness wedge) is itself spherical convex.  This module
provides both directions of that equivalence plus an independent third
route:

  * primal_intersect    -- cone feasibility: do the spherical hulls meet?
  * dual_witness        -- margin-maximizing pole via LP
  * wedge_membership    -- direct generator dot-product test for a pole
  * proof_path_witness  -- constructive route: project, fatten, pull back,
                           separate the Euclidean hulls by a hyperplane, and
                           contract its offset to zero
  * wedge_openness_probe -- perturbation check that the wedge is open

The proof-path route never consults dual_witness, which makes the two
witness constructions independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .convexity import (
    EuclideanHullBody,
    MembershipResult,
    SphericalBody,
    fatten,
    hemisphericity_witness,
    project_body,
    pullback,
)
from .errors import (
    ContractionStalled,
    DimensionMismatch,
    EpsilonSearchFailed,
    NumericallyAmbiguous,
)
from .geometry import (
    DEFAULT_CONFIG,
    ToleranceConfig,
    normalize,
    orthonormal_frame,
)
from .lp import EQ, GE, LE, LinearProgram, LpStatus, solve

__all__ = [
    "Hyperplane",
    "Intersection",
    "ProofTrace",
    "SeparationCertificate",
    "dual_witness",
    "primal_intersect",
    "proof_path_witness",
    "wedge_membership",
    "wedge_openness_probe",
]


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : normal . x = offset}, with unit normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self) -> None:
        nrm = np.asarray(self.normal, dtype=float)
        if abs(np.linalg.norm(nrm) - 1.0) > 1e-9:
            raise DimensionMismatch("hyperplane normal must be a unit vector")
        nrm = nrm.copy()
        nrm.flags.writeable = False
        object.__setattr__(self, "normal", nrm)
        object.__setattr__(self, "offset", float(self.offset))


@dataclass(frozen=True)
class Intersection:
    """Constructive proof that two spherical hulls share a point."""

    common_point: np.ndarray
    lam: np.ndarray
    mu: np.ndarray


@dataclass(frozen=True)
class SeparationCertificate:
    """Outcome of a disjointness query.

    kind "disjoint": ``witness`` is a unit pole with witness . Q >= margin on
    body 1 and witness . R <= -margin on body 2, margin > 0.
    kind "intersecting": ``common_point`` = normalize(sum lam Q) =
    normalize(sum mu R) with nonnegative coefficients.
    """

    kind: str
    witness: np.ndarray | None = None
    margin: float | None = None
    common_point: np.ndarray | None = None
    lam: np.ndarray | None = None
    mu: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("disjoint", "intersecting"):
            raise ValueError(f"unknown certificate kind {self.kind!r}")


@dataclass
class ProofTrace:
    """Record of the constructive separation run.

    epsilon0 is the fattening radius that kept the fattened bodies disjoint;
    hyperplane_sequence carries strictly decreasing |offset|, ending below
    offset_tol; delta_sequence lists the contraction factors; iterations
    counts contraction rounds.
    """

    epsilon0: float
    hyperplane_sequence: list[Hyperplane] = field(default_factory=list)
    delta_sequence: list[float] = field(default_factory=list)
    iterations: int = 0

    @property
    def offsets(self) -> list[float]:
        return [abs(h.offset) for h in self.hyperplane_sequence]


def _require_same_dimension(b1: SphericalBody, b2: SphericalBody) -> None:
    if b1.n != b2.n:
        raise DimensionMismatch(
            f"bodies live on different spheres: S^{b1.n} vs S^{b2.n}"
        )


def primal_intersect(
    b1: SphericalBody,
    b2: SphericalBody,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    w1: np.ndarray | None = None,
    w2: np.ndarray | None = None,
) -> Intersection | None:
    """Do the closed spherical hulls meet?  None means provably disjoint.

    Solves the cone feasibility system

        lambda, mu >= 0,   sum lambda_j Q_j - sum mu_k R_k = 0,
        P1 . (sum lambda_j Q_j) = 1

    where P1 is a hemisphericity witness of b1.  A common hull point is a
    common cone ray; the last row pins its scale (valid because any point of
    hull(b1) has positive dot with P1).  Infeasibility of this system is the
    disjointness certificate.

    Precomputed hemisphericity witnesses may be passed to skip their LPs;
    both bodies are otherwise checked (NotHemispherical propagates).
    """
    _require_same_dimension(b1, b2)
    p1 = hemisphericity_witness(b1, cfg) if w1 is None else w1
    if w2 is None:
        hemisphericity_witness(b2, cfg)  # precondition check only
    g1, g2 = b1.generators, b2.generators
    m1, m2 = g1.shape[0], g2.shape[0]
    d = g1.shape[1]

    obj = np.zeros(m1 + m2)
    cons = []
    for i in range(d):
        cons.append((np.concatenate([g1[:, i], -g2[:, i]]), EQ, 0.0))
    cons.append((np.concatenate([g1 @ p1, np.zeros(m2)]), EQ, 1.0))
    out = solve(
        LinearProgram(objective=obj, constraints=cons),
        tol=cfg.lp_tol,
        max_pivots=100 * cfg.max_iter,
    )
    if out.status is not LpStatus.OPTIMAL:
        return None
    lam, mu = out.solution[:m1], out.solution[m1:]
    return Intersection(
        common_point=normalize(g1.T @ lam, cfg), lam=lam, mu=mu
    )


def _intersection_certificate(inter: Intersection) -> SeparationCertificate:
    return SeparationCertificate(
        kind="intersecting",
        common_point=inter.common_point,
        lam=inter.lam,
        mu=inter.mu,
    )


def wedge_membership(
    b1: SphericalBody,
    b2: SphericalBody,
    p,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> MembershipResult:
    """Is pole p in the witness wedge of (b1, b2)?

    Membership needs p . Q > margin_tol on every generator of b1 and
    p . R < -margin_tol on every generator of b2.  Since dots are linear,
    generator inequalities already cover the whole hulls -- no LP.  The
    reported margin min(min p.Q, -max p.R) is meaningful (negative) for
    non-members too.
    """
    pv = np.asarray(p, dtype=float)
    margin = float(
        min(np.min(b1.generators @ pv), -np.max(b2.generators @ pv))
    )
    return MembershipResult(member=margin > cfg.margin_tol, margin=margin)


def dual_witness(
    b1: SphericalBody,
    b2: SphericalBody,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    w1: np.ndarray | None = None,
    w2: np.ndarray | None = None,
) -> SeparationCertificate:
    """Margin-maximizing pole, or an intersection certificate.

    Solves: maximize t subject to P . Q_j >= t, P . R_k <= -t, |P_m| <= 1,
    t free.  Optimum t > margin_tol certifies disjointness; the pole is
    renormalized to the sphere (sign conditions survive).  Otherwise the
    primal oracle is consulted: a feasible intersection yields the
    intersecting certificate, while primal disjointness together with a
    marginal optimum (|t| <= margin_tol) is reported as NumericallyAmbiguous
    -- the strict inequalities are undecidable at this tolerance.
    """
    _require_same_dimension(b1, b2)
    if w1 is None:
        w1 = hemisphericity_witness(b1, cfg)
    if w2 is None:
        w2 = hemisphericity_witness(b2, cfg)
    g1, g2 = b1.generators, b2.generators
    d = g1.shape[1]

    # variables: P_1..P_d, t
    obj = np.zeros(d + 1)
    obj[-1] = 1.0
    cons = []
    for q in g1:
        cons.append((np.concatenate([q, [-1.0]]), GE, 0.0))
    for r in g2:
        cons.append((np.concatenate([-r, [-1.0]]), GE, 0.0))
    lower = np.concatenate([-np.ones(d), [-np.inf]])
    upper = np.concatenate([np.ones(d), [np.inf]])
    out = solve(
        LinearProgram(objective=obj, constraints=cons, lower=lower, upper=upper),
        tol=cfg.lp_tol,
        max_pivots=100 * cfg.max_iter,
    )
    t = out.objective_value if out.status is LpStatus.OPTIMAL else 0.0
    if t > cfg.margin_tol:
        witness = normalize(out.solution[:d], cfg)
        margin = float(min(np.min(g1 @ witness), -np.max(g2 @ witness)))
        return SeparationCertificate(kind="disjoint", witness=witness, margin=margin)
    inter = primal_intersect(b1, b2, cfg, w1=w1, w2=w2)
    if inter is not None:
        return _intersection_certificate(inter)
    raise NumericallyAmbiguous(
        f"separation margin {t:.3e} within the tolerance band "
        f"{cfg.margin_tol:.1e} but cone feasibility says disjoint"
    )


def _separating_hyperplane(
    v1: np.ndarray, v2: np.ndarray, cfg: ToleranceConfig, scale: float = 1.0
) -> tuple[Hyperplane, float]:
    """Max-slack hyperplane with hull(v1) on the positive side.

    Solves: maximize t subject to P . y >= r + t on v1, P . y <= r - t on
    v2, |P_m| <= 1, |r| <= 1, t free.  Returns the hyperplane normalized to
    unit normal (offset and slack rescale with it), plus the geometric slack.

    ``scale`` is the smallest vertex magnitude in play: once contracted
    copies shrink the corridor between the hulls, the achievable slack
    shrinks proportionally, so the no-slack guard must be judged relative
    to it.
    """
    d = v1.shape[1]
    # variables: P_1..P_d, r, t
    obj = np.zeros(d + 2)
    obj[-1] = 1.0
    cons = []
    for y in v1:
        cons.append((np.concatenate([y, [-1.0, -1.0]]), GE, 0.0))
    for y in v2:
        cons.append((np.concatenate([-y, [1.0, -1.0]]), GE, 0.0))
    lower = np.concatenate([-np.ones(d + 1), [-np.inf]])
    upper = np.concatenate([np.ones(d + 1), [np.inf]])
    out = solve(
        LinearProgram(objective=obj, constraints=cons, lower=lower, upper=upper),
        tol=cfg.lp_tol,
        max_pivots=100 * cfg.max_iter,
    )
    if out.status is not LpStatus.OPTIMAL or out.objective_value <= cfg.lp_tol * scale:
        raise ContractionStalled(
            "hull separation LP found no positive slack; hulls touch within tolerance"
        )
    p, r, t = out.solution[:d], out.solution[d], out.solution[d + 1]
    nrm = float(np.linalg.norm(p))
    if nrm <= cfg.lp_tol:
        raise ContractionStalled("degenerate zero normal in hull separation")
    return Hyperplane(normal=p / nrm, offset=r / nrm), t / nrm


def _separating_hyperplane_contracted(
    v1: np.ndarray, v2: np.ndarray, sigma: float, cfg: ToleranceConfig
) -> tuple[Hyperplane, float]:
    """Max-slack hyperplane between hull(v1 u sigma v1) and hull(v2 u sigma v2).

    Listing the contracted copies as explicit vertex rows makes the tableau
    two-scale (rows at magnitude 1 and at magnitude sigma), and once sigma
    is small the optimum slack -- proportional to sigma -- drowns in the
    roundoff that dividing by sigma-sized pivots produces.  So the union is
    solved without materializing it.  For a fixed direction P, writing
    a = min over v1 of P . y and b = max over v2 of P . y, a pair (r, t)
    separates both scales exactly when

        r + t <= min(a, sigma a)   and   r - t >= max(b, sigma b),

    so the best slack for that P is [min(a, sigma a) - max(b, sigma b)] / 2,
    capped by the |r| <= 1 box.  Splitting on the signs of a and b removes
    the mins: three sign regimes (a<=0 with b>=0 can never give positive
    slack) each become an LP whose vertex rows are all unit-scale and where
    sigma enters only as a coefficient on the a/b columns.  The best of the
    three equals the vertex-union optimum.
    """
    d = v1.shape[1]
    # variables: P_1..P_d, a, b, t
    ia, ib, it = d, d + 1, d + 2
    nv = d + 3
    obj = np.zeros(nv)
    obj[it] = 1.0

    base_rows = []
    for y in v1:
        r0 = np.zeros(nv)
        r0[:d] = -y
        r0[ia] = 1.0
        base_rows.append((r0, LE, 0.0))  # a <= P . y
    for y in v2:
        r0 = np.zeros(nv)
        r0[:d] = y
        r0[ib] = -1.0
        base_rows.append((r0, LE, 0.0))  # b >= P . y

    def regime(ca: float, cb: float, a_sign: int, b_sign: int):
        """Solve one sign regime; alpha = ca * a, beta = cb * b there."""
        cons = list(base_rows)
        gap = np.zeros(nv)
        gap[it], gap[ia], gap[ib] = 2.0, -ca, cb
        cons.append((gap, LE, 0.0))  # 2t <= alpha - beta
        cap1 = np.zeros(nv)
        cap1[it], cap1[ia] = 1.0, -ca
        cons.append((cap1, LE, 1.0))  # t <= alpha + 1   (r >= -1)
        cap2 = np.zeros(nv)
        cap2[it], cap2[ib] = 1.0, cb
        cons.append((cap2, LE, 1.0))  # t <= 1 - beta    (r <= 1)
        lower = np.full(nv, -np.inf)
        upper = np.full(nv, np.inf)
        lower[:d] = -1.0
        upper[:d] = 1.0
        if a_sign > 0:
            lower[ia] = 0.0
        else:
            upper[ia] = 0.0
        if b_sign > 0:
            lower[ib] = 0.0
        else:
            upper[ib] = 0.0
        out = solve(
            LinearProgram(objective=obj, constraints=cons, lower=lower, upper=upper),
            tol=cfg.lp_tol,
            max_pivots=100 * cfg.max_iter,
        )
        if out.status is not LpStatus.OPTIMAL:
            return None
        return out

    best = None
    best_coeff = None
    # regimes: (alpha coeff, beta coeff, sign of a, sign of b); the generic
    # disjoint-cone case a > 0 > b comes first
    for ca, cb, sa, sb in ((sigma, sigma, 1, -1), (sigma, 1.0, 1, 1), (1.0, sigma, -1, -1)):
        out = regime(ca, cb, sa, sb)
        if out is not None and (best is None or out.objective_value > best.objective_value):
            best = out
            best_coeff = (ca, cb)
    if best is None or best.objective_value <= cfg.lp_tol * sigma:
        raise ContractionStalled(
            "contracted hull separation LP found no positive slack"
        )
    p, a, b, t = best.solution[:d], best.solution[ia], best.solution[ib], best.solution[it]
    alpha, beta = best_coeff[0] * a, best_coeff[1] * b
    r = (max(beta + t, -1.0) + min(alpha - t, 1.0)) / 2.0
    nrm = float(np.linalg.norm(p))
    if nrm <= cfg.lp_tol:
        raise ContractionStalled("degenerate zero normal in hull separation")
    return Hyperplane(normal=p / nrm, offset=r / nrm), t / nrm


def proof_path_witness(
    b1: SphericalBody,
    b2: SphericalBody,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    w1: np.ndarray | None = None,
    w2: np.ndarray | None = None,
) -> tuple[SeparationCertificate, ProofTrace]:
    """Witness pole built the constructive way, for provably disjoint bodies.

    Pipeline: (1) hemisphericity witnesses and tangent frames; central
    projection of both bodies.  (2) Halving search for a fattening radius
    epsilon0 whose fattened pullbacks stay disjoint (starting at 0.5).
    (3) Max-slack hyperplane between the Euclidean hulls of the fattened
    pullback generators.  (4) While the offset magnitude is >= offset_tol:
    adjoin a contracted copy of each vertex set (factor = current offset
    magnitude) and re-separate; the offset strictly decreases each round.
    (5) The final normal, oriented toward body 1, is the witness; it is
    validated by wedge_membership on the original bodies, with a few extra
    contraction rounds if the margins are not yet strict.

    The contracted copies compose: round k's vertex set is V0 together with
    (delta_1 ... delta_k) V0, whose hull equals the iterated adjoin-and-hull
    (intermediate scales are convex combinations of the endpoints), so the
    vertex count stays at 2|V0|.

    Raises EpsilonSearchFailed when no radius keeps the fattened bodies
    disjoint (hulls touch within tolerance -- also the symptom when the
    precondition "primal_intersect is None" is violated) and
    ContractionStalled when offsets stop decreasing.
    """
    _require_same_dimension(b1, b2)
    if w1 is None:
        w1 = hemisphericity_witness(b1, cfg)
    if w2 is None:
        w2 = hemisphericity_witness(b2, cfg)
    f1 = orthonormal_frame(w1, cfg)
    f2 = orthonormal_frame(w2, cfg)
    poly1 = project_body(b1, f1, cfg)
    poly2 = project_body(b2, f2, cfg)

    # (2) fattening radius search by halving
    eps = 0.5
    x1 = x2 = None
    for _ in range(cfg.max_iter):
        cand1 = pullback(fatten(poly1, eps, cfg), cfg)
        cand2 = pullback(fatten(poly2, eps, cfg), cfg)
        if primal_intersect(cand1, cand2, cfg, w1=f1.base, w2=f2.base) is None:
            x1, x2 = cand1, cand2
            break
        eps *= 0.5
    if x1 is None:
        raise EpsilonSearchFailed(
            f"no fattening radius in {cfg.max_iter} halvings kept the bodies "
            "disjoint; the spherical hulls touch within tolerance"
        )
    epsilon0 = eps

    # (3) separate the Euclidean hulls
    v1_base, v2_base = x1.generators, x2.generators
    hyp, _ = _separating_hyperplane(v1_base, v2_base, cfg)
    trace = ProofTrace(epsilon0=epsilon0, hyperplane_sequence=[hyp])

    # (4) offset contraction; sigma accumulates the composed factors.  Any
    # separator of the contracted union has |offset| < sigma, so driving
    # sigma down drives the offset down.  sigma is floored at offset_tol/10:
    # scales below that add nothing to termination (one floored round
    # already forces the offset below the floor) while they would push the
    # LP toward its pivot tolerance.
    delta_floor = cfg.offset_tol / 10.0
    sigma_floor = cfg.offset_tol / 10.0
    sigma = 1.0

    def contract(delta_eff: float) -> Hyperplane:
        nonlocal sigma
        prev_sigma = sigma
        sigma = max(sigma * delta_eff, sigma_floor)
        new_hyp, _ = _separating_hyperplane_contracted(v1_base, v2_base, sigma, cfg)
        prev = abs(trace.hyperplane_sequence[-1].offset)
        if abs(new_hyp.offset) >= prev * (1.0 - cfg.lp_tol):
            raise ContractionStalled(
                f"offset magnitude stalled at {prev:.3e} after "
                f"{trace.iterations + 1} contraction rounds"
            )
        trace.hyperplane_sequence.append(new_hyp)
        trace.delta_sequence.append(sigma / prev_sigma)
        trace.iterations += 1
        return new_hyp

    while abs(hyp.offset) >= cfg.offset_tol and abs(hyp.offset) > 0.0:
        if trace.iterations >= cfg.max_iter:
            raise ContractionStalled(
                f"offset still {abs(hyp.offset):.3e} after {cfg.max_iter} rounds"
            )
        hyp = contract(max(abs(hyp.offset), delta_floor))

    # (5) orient toward body 1 (already positive side by construction) and
    # validate strict wedge margins on the original generators; squeeze the
    # offset further in the rare case the margins are not yet strict
    witness = hyp.normal
    check = wedge_membership(b1, b2, witness, cfg)
    while not check.member:
        if trace.iterations >= cfg.max_iter or abs(hyp.offset) == 0.0:
            raise ContractionStalled(
                "wedge margins not strict and offset cannot shrink further"
            )
        hyp = contract(max(abs(hyp.offset), 1e-15))
        witness = hyp.normal
        check = wedge_membership(b1, b2, witness, cfg)

    cert = SeparationCertificate(
        kind="disjoint", witness=witness, margin=check.margin
    )
    return cert, trace


def wedge_openness_probe(
    b1: SphericalBody,
    b2: SphericalBody,
    p,
    k: int,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    rng: np.random.Generator | None = None,
) -> float:
    """Minimum wedge margin over k random perturbations of member p.

    Each sample rotates p by angle margin/2 along a uniformly random tangent
    direction, so the chord displacement stays below margin/2.  For closed
    input bodies the wedge is open, which this realizes quantitatively: all
    perturbed margins must stay positive (>= margin/2 by Lipschitzness of
    dot products).  k = 0 returns +inf (vacuous).
    """
    if k <= 0:
        return np.inf
    if rng is None:
        rng = np.random.default_rng(0)
    pv = normalize(np.asarray(p, dtype=float), cfg)
    base = wedge_membership(b1, b2, pv, cfg)
    if not base.member:
        raise NumericallyAmbiguous(
            "openness probe requires a wedge member with positive margin"
        )
    theta = base.margin / 2.0
    worst = np.inf
    for _ in range(k):
        raw = rng.standard_normal(pv.size)
        raw -= (raw @ pv) * pv
        tangent = normalize(raw, cfg)
        perturbed = np.cos(theta) * pv + np.sin(theta) * tangent
        worst = min(worst, wedge_membership(b1, b2, perturbed, cfg).margin)
    return worst
