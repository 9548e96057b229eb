"""Spherical bodies and their tangent-plane images.

A body is the closed spherical hull of finitely many unit generators: the set
of normalized nonnegative combinations.  Everything here stays polytopal so
that hull membership, hemisphericality, and interiority can all be certified
by small linear programs:

  * hemisphericity_witness  -- pole with positive dot against every generator
  * project_body / pullback -- move generators through the central projection
  * fatten                  -- Minkowski sum with an epsilon cross-polytope
  * spherical_hull_member   -- cone membership with an LP certificate
  * scale_union_hull        -- adjoin a contracted copy of a Euclidean
                               vertex set (used by the offset-shrinking loop)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DeltaOutOfRange,
    DimensionMismatch,
    NegativeEpsilon,
    NotHemispherical,
)
from .geometry import (
    DEFAULT_CONFIG,
    _SHAPE_TOL,
    TangentFrame,
    ToleranceConfig,
    central_project,
    central_unproject,
    normalize,
)
from .lp import EQ, GE, LE, LinearProgram, LpStatus, solve

__all__ = [
    "EuclideanHullBody",
    "MembershipResult",
    "SphericalBody",
    "TangentPolytope",
    "fatten",
    "hemisphericity_witness",
    "project_body",
    "pullback",
    "scale_union_hull",
    "spherical_hull_member",
]


def _dedupe_rows(rows: np.ndarray, tol: float) -> np.ndarray:
    """Drop rows that repeat an earlier row within tol (max-norm), keeping
    first occurrences in order."""
    keep: list[int] = []
    for i in range(rows.shape[0]):
        if all(np.max(np.abs(rows[i] - rows[k])) > tol for k in keep):
            keep.append(i)
    return rows[keep]


@dataclass(frozen=True)
class SphericalBody:
    """Closed spherical hull of unit generators on S^n (n = ambient - 1).

    Rows of ``generators`` must be unit vectors; duplicates within unit_tol
    are dropped at construction.  Hemisphericality is a semantic requirement
    checked on demand by hemisphericity_witness, not at construction, so that
    the failure surfaces where the certificate is actually needed.
    """

    generators: np.ndarray

    def __post_init__(self) -> None:
        g = np.asarray(self.generators, dtype=float)
        if g.ndim != 2 or g.shape[0] == 0:
            raise DimensionMismatch("generators must be a nonempty 2-D array")
        if g.shape[1] < 2:
            raise DimensionMismatch("ambient dimension must be at least 2 (points on S^1 or higher)")
        if not np.all(np.isfinite(g)):
            raise DimensionMismatch("generators contain non-finite entries")
        norms = np.linalg.norm(g, axis=1)
        if np.max(np.abs(norms - 1.0)) > _SHAPE_TOL:
            raise DimensionMismatch("generators must be unit vectors; use from_points to normalize")
        g = _dedupe_rows(g, DEFAULT_CONFIG.unit_tol)
        g.flags.writeable = False
        object.__setattr__(self, "generators", g)

    @classmethod
    def from_points(
        cls, points, cfg: ToleranceConfig = DEFAULT_CONFIG
    ) -> "SphericalBody":
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        rows = [normalize(p, cfg) for p in pts]
        return cls(generators=np.array(rows))

    @property
    def n(self) -> int:
        """Sphere dimension (ambient dimension minus one)."""
        return self.generators.shape[1] - 1

    @property
    def num_generators(self) -> int:
        return self.generators.shape[0]


@dataclass(frozen=True)
class TangentPolytope:
    """Convex hull of finitely many points in a tangent frame's coordinates."""

    frame: TangentFrame
    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] == 0:
            raise DimensionMismatch("vertices must be a nonempty 2-D array")
        if v.shape[1] != self.frame.n:
            raise DimensionMismatch(
                f"vertices have {v.shape[1]} coordinates, frame expects {self.frame.n}"
            )
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]


@dataclass(frozen=True)
class EuclideanHullBody:
    """Convex hull of finitely many points in the ambient space R^{n+1}."""

    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] == 0:
            raise DimensionMismatch("vertices must be a nonempty 2-D array")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)


class MembershipResult(NamedTuple):
    member: bool
    margin: float


def hemisphericity_witness(
    body: SphericalBody, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """Unit pole P with P . Q > 0 for every generator Q, or NotHemispherical.

    Solves: maximize t subject to P . Q_j >= t for all j, with box bounds
    |P_k| <= 1 and t free.  The body sits inside an open hemisphere exactly
    when the optimum exceeds margin_tol; the maximizing P is normalized to
    the sphere before return (signs of all dots are preserved).
    """
    g = body.generators
    m, d = g.shape
    # variables: P_1..P_d, t
    obj = np.zeros(d + 1)
    obj[-1] = 1.0
    cons = []
    for j in range(m):
        row = np.concatenate([g[j], [-1.0]])
        cons.append((row, GE, 0.0))
    lower = np.concatenate([-np.ones(d), [-np.inf]])
    upper = np.concatenate([np.ones(d), [np.inf]])
    out = solve(
        LinearProgram(objective=obj, constraints=cons, lower=lower, upper=upper),
        tol=cfg.lp_tol,
        max_pivots=100 * cfg.max_iter,
    )
    if out.status is not LpStatus.OPTIMAL or out.objective_value <= cfg.margin_tol:
        raise NotHemispherical(
            f"no open hemisphere contains all {m} generators "
            f"(best margin {0.0 if out.objective_value is None else out.objective_value:.3e})"
        )
    return normalize(out.solution[:d], cfg)


def project_body(
    body: SphericalBody,
    frame: TangentFrame,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> TangentPolytope:
    """Image of the generators under the central projection at frame.base.

    Requires every generator to lie in the open hemisphere of frame.base
    (raises OutsideOpenHemisphere otherwise).  The spherical hull of the body
    corresponds to the affine hull polytope of the output.
    """
    verts = np.array([central_project(frame, q, cfg) for q in body.generators])
    return TangentPolytope(frame=frame, vertices=verts)


def fatten(
    poly: TangentPolytope, eps: float, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> TangentPolytope:
    """Minkowski sum with the eps cross-polytope, as a vertex set.

    Output vertices are v +- eps e_k for every input vertex v and axis k
    (vertex-major order).  For eps > 0 every input vertex lands strictly
    inside the hull of the output; eps = 0 returns the polytope unchanged.
    """
    if eps < 0:
        raise NegativeEpsilon(f"fattening radius must be nonnegative, got {eps}")
    if eps == 0:
        return poly
    n = poly.frame.n
    offsets = np.zeros((2 * n, n))
    for k in range(n):
        offsets[2 * k, k] = eps
        offsets[2 * k + 1, k] = -eps
    fat = (poly.vertices[:, None, :] + offsets[None, :, :]).reshape(-1, n)
    return TangentPolytope(frame=poly.frame, vertices=fat)


def pullback(
    poly: TangentPolytope, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> SphericalBody:
    """Body whose generators are the unprojections of the polytope vertices.

    Always hemispherical with witness frame.base, since every unprojected
    point has dot 1/sqrt(1 + |x|^2) > 0 against the base.
    """
    gens = np.array([central_unproject(poly.frame, x) for x in poly.vertices])
    return SphericalBody.from_points(gens, cfg)


def spherical_hull_member(
    body: SphericalBody,
    q,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    witness: np.ndarray | None = None,
) -> MembershipResult:
    """Is unit point q in the closed spherical hull of the body?

    Membership means q is a normalized nonnegative combination of the
    generators, i.e. the cone feasibility system

        lambda >= 0,  sum_j lambda_j Q_j = s q,  s >= margin_tol,
        P0 . (sum_j lambda_j Q_j) = 1

    is solvable, where P0 is a hemisphericity witness (the last row pins the
    scale and rules out lambda = 0).  On membership the reported margin is
    the max-norm residual of the reconstructed combination -- a certificate
    quality, near zero; non-members carry margin +inf (no certificate).
    """
    qv = np.asarray(q, dtype=float)
    g = body.generators
    m, d = g.shape
    if qv.shape != (d,):
        raise DimensionMismatch(f"query point has shape {qv.shape}, expected ({d},)")
    p0 = hemisphericity_witness(body, cfg) if witness is None else witness

    # variables: lambda_1..lambda_m, s
    obj = np.zeros(m + 1)
    cons = []
    for i in range(d):
        row = np.concatenate([g[:, i], [-qv[i]]])
        cons.append((row, EQ, 0.0))
    cons.append((np.concatenate([g @ p0, [0.0]]), EQ, 1.0))
    lower = np.concatenate([np.zeros(m), [cfg.margin_tol]])
    out = solve(
        LinearProgram(objective=obj, constraints=cons, lower=lower),
        tol=cfg.lp_tol,
        max_pivots=100 * cfg.max_iter,
    )
    if out.status is not LpStatus.OPTIMAL:
        return MembershipResult(member=False, margin=np.inf)
    lam, s = out.solution[:m], out.solution[m]
    combo = g.T @ lam
    residual = max(
        float(np.max(np.abs(combo - s * qv))), abs(float(p0 @ combo) - 1.0)
    )
    return MembershipResult(member=True, margin=residual)


def scale_union_hull(body: EuclideanHullBody, delta: float) -> EuclideanHullBody:
    """Adjoin the delta-contracted copy of the vertex set, 0 < delta < 1.

    The hull of the output contains the hull of the input (vertex-set
    monotonicity); the contracted copy pulls the hull toward the origin.
    """
    if not (0.0 < delta < 1.0):
        raise DeltaOutOfRange(f"contraction factor must be in (0, 1), got {delta}")
    v = body.vertices
    return EuclideanHullBody(vertices=np.vstack([v, delta * v]))
