"""Vector realizations: tetrahedra, the nine-vector stationary configurations, triangles.

Lengths are in units of angular momentum with the half-integer shift
``J = j + 1/2`` already applied by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

Vec3 = np.ndarray

CAUSTIC_SIN = 1e-8
RESIDUAL_TOL = 1e-10


class GeometryError(ValueError):
    """Base class for geometric failures."""


class ClassicallyForbidden(GeometryError):
    """No real Euclidean realization exists."""


class CausticDegenerate(GeometryError):
    """The realization is (numerically) flat or collinear."""


class ConvergenceFailure(GeometryError):
    """Root finding stalled; ``residual`` is the best value reached."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (best residual {residual:.3e})")
        self.residual = residual


def vec3(x: float, y: float, z: float) -> Vec3:
    v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    return v


def _unit_cos(u: Vec3, v: Vec3) -> float:
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise CausticDegenerate("zero-length vector in angle")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def angle_between(u: Vec3, v: Vec3) -> float:
    """Unsigned angle in ``[0, pi]``, computed with atan2 for accuracy near 0 and pi."""
    cr = np.linalg.norm(np.cross(u, v))
    dt = float(np.dot(u, v))
    if cr == 0.0 and dt == 0.0:
        raise CausticDegenerate("zero-length vector in angle")
    return math.atan2(cr, dt)


def plane_angle(axis: Vec3, u: Vec3, v: Vec3) -> float:
    """``pi - arccos`` of the normalized ``(axis x u) . (axis x v)``.

    With ``u`` and ``v`` the far edges of two faces meeting along ``axis``
    this is the internal dihedral angle of the faces ``(axis, u)`` and
    ``(axis, -v)``.
    """
    a, b = np.cross(axis, u), np.cross(axis, v)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    scale = np.linalg.norm(axis) * max(np.linalg.norm(u), np.linalg.norm(v))
    if na < CAUSTIC_SIN * scale or nb < CAUSTIC_SIN * scale:
        raise CausticDegenerate("collinear vectors: plane undefined")
    return math.pi - math.acos(float(np.clip(np.dot(a, b) / (na * nb), -1.0, 1.0)))


def triple(a: Vec3, b: Vec3, c: Vec3) -> float:
    """``a . (b x c)``."""
    return float(np.dot(a, np.cross(b, c)))


# ---------------------------------------------------------------------------
# tetrahedra

# Vertex pairs in the canonical edge order used by ``cm_volume``.
EDGE_PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _cm_matrix(lengths: Sequence[float]) -> np.ndarray:
    m = np.ones((5, 5))
    m[0, 0] = 0.0
    for i in range(4):
        m[i + 1, i + 1] = 0.0
    for (i, j), d in zip(EDGE_PAIRS, lengths):
        m[i + 1, j + 1] = m[j + 1, i + 1] = d * d
    return m


def cayley_menger(lengths: Sequence[float]) -> float:
    """Cayley-Menger determinant; equals ``288 V^2``."""
    return float(np.linalg.det(_cm_matrix(lengths)))


def _triangle_real(a: float, b: float, c: float, tol: float = 0.0) -> bool:
    return a <= b + c + tol and b <= a + c + tol and c <= a + b + tol


def _faces_ok(lengths: Sequence[float]) -> bool:
    d01, d02, d03, d12, d13, d23 = lengths
    tol = 1e-12 * max(lengths)
    return (
        _triangle_real(d01, d02, d12, tol)
        and _triangle_real(d01, d03, d13, tol)
        and _triangle_real(d02, d03, d23, tol)
        and _triangle_real(d12, d13, d23, tol)
    )


def cm_volume(lengths: Sequence[float]) -> float:
    """Volume from the six edge lengths ``(d01, d02, d03, d12, d13, d23)``.

    Raises :class:`ClassicallyForbidden` when no Euclidean tetrahedron has
    these edges. A determinant within roundoff of zero gives ``0.0``.
    """
    lengths = [float(x) for x in lengths]
    if len(lengths) != 6 or min(lengths) <= 0.0:
        raise ValueError("six positive edge lengths required")
    if not _faces_ok(lengths):
        raise ClassicallyForbidden("a face violates the triangle inequality")
    cm = cayley_menger(lengths)
    scale = max(lengths) ** 6
    if cm < -1e-11 * scale:
        raise ClassicallyForbidden(f"negative Cayley-Menger determinant {cm:.6g}")
    return math.sqrt(max(cm, 0.0) / 288.0)


@dataclass(frozen=True)
class EmbeddedTetrahedron:
    """Four vertices in 3-space plus a name for each edge.

    ``edges`` maps an edge name to its vertex pair; ``lengths`` holds the
    prescribed lengths the embedding was built from.
    """

    vertices: np.ndarray
    edges: Mapping[str, tuple[int, int]]
    lengths: Mapping[str, float]

    def edge_vector(self, name: str) -> Vec3:
        i, j = self.edges[name]
        return self.vertices[j] - self.vertices[i]

    def distance(self, name: str) -> float:
        return float(np.linalg.norm(self.edge_vector(name)))

    def signed_volume(self) -> float:
        p = self.vertices
        return triple(p[1] - p[0], p[2] - p[0], p[3] - p[0]) / 6.0

    @property
    def volume(self) -> float:
        return abs(self.signed_volume())

    def reflected(self) -> EmbeddedTetrahedron:
        """Mirror image ``z -> -z`` (signed volume changes sign)."""
        v = self.vertices.copy()
        v[:, 2] *= -1.0
        return EmbeddedTetrahedron(v, self.edges, self.lengths)

    def opposite(self, name: str) -> str:
        pair = set(self.edges[name])
        for other, p in self.edges.items():
            if not pair & set(p):
                return other
        raise KeyError(name)


DEFAULT_EDGE_NAMES = ("01", "02", "03", "12", "13", "23")


def embed_tetrahedron(lengths: Sequence[float], names: Sequence[str] = DEFAULT_EDGE_NAMES) -> EmbeddedTetrahedron:
    """Coordinates for edges ``(d01, d02, d03, d12, d13, d23)``.

    Vertex 0 at the origin, vertex 1 on +x, vertex 2 in the xy-plane with
    ``y >= 0``, vertex 3 with ``z >= 0``.
    """
    cm_volume(lengths)
    d01, d02, d03, d12, d13, d23 = (float(x) for x in lengths)
    x2 = (d01 * d01 + d02 * d02 - d12 * d12) / (2 * d01)
    y2 = math.sqrt(max(d02 * d02 - x2 * x2, 0.0))
    x3 = (d01 * d01 + d03 * d03 - d13 * d13) / (2 * d01)
    if y2 > 0.0:
        # |P3 - P2|^2 = d23^2 with |P3|^2 = d03^2
        y3 = (d03 * d03 - d23 * d23 + x2 * x2 + y2 * y2 - 2 * x2 * x3) / (2 * y2)
    else:
        y3 = math.sqrt(max(d03 * d03 - x3 * x3, 0.0))
    z3 = math.sqrt(max(d03 * d03 - x3 * x3 - y3 * y3, 0.0))
    verts = np.array([[0.0, 0.0, 0.0], [d01, 0.0, 0.0], [x2, y2, 0.0], [x3, y3, z3]])
    return EmbeddedTetrahedron(
        verts,
        dict(zip(names, EDGE_PAIRS)),
        dict(zip(names, (d01, d02, d03, d12, d13, d23))),
    )


def _check_flat(t: EmbeddedTetrahedron) -> None:
    # 6V / (product of three edges at a vertex) is a solid-angle sine
    p = t.vertices
    worst = math.inf
    for k in range(4):
        e = [p[j] - p[k] for j in range(4) if j != k]
        norm = math.prod(float(np.linalg.norm(x)) for x in e)
        if norm == 0.0:
            raise CausticDegenerate("coincident vertices")
        worst = min(worst, abs(triple(*e)) / norm)
    if worst < CAUSTIC_SIN:
        raise CausticDegenerate(f"flat tetrahedron (sine {worst:.2e})")


def dihedral_angles(t: EmbeddedTetrahedron) -> dict[str, tuple[float, float]]:
    """Internal dihedral ``phi`` and external ``psi = pi - phi`` at every edge.

    Computed from the two face directions orthogonal to the edge.
    """
    _check_flat(t)
    p = t.vertices
    out = {}
    for name, (i, j) in t.edges.items():
        k, l = (v for v in range(4) if v not in (i, j))
        e = p[j] - p[i]
        e = e / np.linalg.norm(e)
        u = p[k] - p[i]
        v = p[l] - p[i]
        u = u - np.dot(u, e) * e
        v = v - np.dot(v, e) * e
        phi = angle_between(u, v)
        out[name] = (phi, math.pi - phi)
    return out


def dihedral_angles_gram(lengths: Sequence[float], names: Sequence[str] = DEFAULT_EDGE_NAMES) -> dict[str, tuple[float, float]]:
    """Same angles from cofactors of the Cayley-Menger matrix alone.

    The face opposite vertex ``a`` and the face opposite vertex ``b`` meet
    along the edge joining the other two vertices; ``cos phi`` there is
    ``C_ab / sqrt(C_aa C_bb)`` with ``C`` the cofactor matrix.
    """
    m = _cm_matrix([float(x) for x in lengths])
    if cayley_menger(lengths) <= 0.0:
        raise CausticDegenerate("non-positive Cayley-Menger determinant")
    cof = np.linalg.inv(m).T * np.linalg.det(m)
    out = {}
    for name, (i, j) in zip(names, EDGE_PAIRS):
        a, b = (v for v in range(4) if v not in (i, j))
        c = cof[a + 1, b + 1] / math.sqrt(cof[a + 1, a + 1] * cof[b + 1, b + 1])
        phi = math.acos(float(np.clip(c, -1.0, 1.0)))
        out[name] = (phi, math.pi - phi)
    return out


# ---------------------------------------------------------------------------
# triangle


def triangle_exterior_angle(J2: float, J3: float, J7: float) -> float:
    """Angle between ``J2`` and ``J3`` when ``J2 + J3 + J7 = 0``.

    ``pi - arccos((J2^2 + J3^2 - J7^2) / (2 J2 J3))``.
    """
    if min(J2, J3, J7) <= 0.0:
        raise ValueError("lengths must be positive")
    if not _triangle_real(J2, J3, J7):
        raise ClassicallyForbidden("triangle inequality violated")
    c = (J2 * J2 + J3 * J3 - J7 * J7) / (2 * J2 * J3)
    return math.pi - math.acos(max(-1.0, min(1.0, c)))


# ---------------------------------------------------------------------------
# nine-vector configurations

NINE_J_NAMES = ("J1", "J2", "J3", "J4", "J12", "J34", "J13", "J24", "J7")


@dataclass(frozen=True)
class NineJConfig:
    """Vectors with ``J12 = J1 + J2``, ``J34 = J3 + J4``, ``J13 = J1 + J3``,
    ``J24 = J2 + J4`` and ``J1 + J2 + J3 + J4 + J7 = 0``."""

    J1: Vec3
    J2: Vec3
    J3: Vec3
    J4: Vec3
    J7: Vec3
    branch: int = 1
    twist: float = field(default=0.0, compare=False)

    @property
    def J12(self) -> Vec3:
        return self.J1 + self.J2

    @property
    def J34(self) -> Vec3:
        return self.J3 + self.J4

    @property
    def J13(self) -> Vec3:
        return self.J1 + self.J3

    @property
    def J24(self) -> Vec3:
        return self.J2 + self.J4

    @property
    def J23p(self) -> Vec3:
        """``J3 - J2``: the sixth edge of the tetrahedron on ``J7, J12, J34, J13, J24``."""
        return self.J3 - self.J2

    def vector(self, name: str) -> Vec3:
        return getattr(self, name)

    def V(self, i: int, j: int, k: int) -> float:
        """Triple product ``Ji . (Jj x Jk)`` over the four basic vectors."""
        vs = {1: self.J1, 2: self.J2, 3: self.J3, 4: self.J4}
        return triple(vs[i], vs[j], vs[k])

    def amplitude_determinant(self) -> float:
        """``V123 V432 - V214 V341``."""
        return self.V(1, 2, 3) * self.V(4, 3, 2) - self.V(2, 1, 4) * self.V(3, 4, 1)

    def mirrored(self) -> NineJConfig:
        """Reflection ``y -> -y``; every triple product changes sign."""
        f = np.array([1.0, -1.0, 1.0])
        return NineJConfig(self.J1 * f, self.J2 * f, self.J3 * f, self.J4 * f, self.J7 * f, self.branch, -self.twist)

    def residual(self, lengths: Mapping[str, float]) -> float:
        """Largest relative norm error over the nine lengths, and the closure error."""
        worst = 0.0
        for n in NINE_J_NAMES:
            worst = max(worst, abs(np.linalg.norm(self.vector(n)) - lengths[n]) / lengths[n])
        total = self.J1 + self.J2 + self.J3 + self.J4 + self.J7
        scale = max(lengths.values())
        return max(worst, float(np.linalg.norm(total)) / scale)

    def tetrahedron(self) -> EmbeddedTetrahedron:
        """The tetrahedron O, A = J12, B = J12 + J34, C = J13 as an embedding.

        Edge vectors: ``J12 = OA``, ``J34 = AB``, ``J13 = OC``, ``J24 = CB``,
        ``J23p = AC`` and ``-J7 = OB``.
        """
        o = np.zeros(3)
        a, b, c = self.J12, self.J12 + self.J34, self.J13
        verts = np.array([o, a, b, c])
        edges = {"J12": (0, 1), "J7": (0, 2), "J13": (0, 3), "J34": (1, 2), "J23p": (1, 3), "J24": (3, 2)}
        lengths = {n: float(np.linalg.norm(verts[j] - verts[i])) for n, (i, j) in edges.items()}
        return EmbeddedTetrahedron(verts, edges, lengths)


def _frame(L: Mapping[str, float]):
    # J7 along -z; (J12, J34) in the xz-plane; J13 twisted about z by tau;
    # J1 on the circle |J1| = J1, |J12 - J1| = J2, parametrized by alpha
    J7, J12, J13 = L["J7"], L["J12"], L["J13"]
    z12 = (J7 * J7 + J12 * J12 - L["J34"] ** 2) / (2 * J7)
    x12 = math.sqrt(max(J12 * J12 - z12 * z12, 0.0))
    z13 = (J7 * J7 + J13 * J13 - L["J24"] ** 2) / (2 * J7)
    x13 = math.sqrt(max(J13 * J13 - z13 * z13, 0.0))
    v12 = np.array([x12, 0.0, z12])
    u = v12 / J12
    p = np.array([0.0, 1.0, 0.0])
    q = np.cross(u, p)
    h = (L["J1"] ** 2 + J12 * J12 - L["J2"] ** 2) / (2 * J12)
    r = math.sqrt(max(L["J1"] ** 2 - h * h, 0.0))
    return dict(v12=v12, v34=np.array([-x12, 0.0, J7 - z12]), x13=x13, z13=z13, c1=h * u, p=r * p, q=r * q)


def _vectors(fr, tau, alpha):
    """J1 and J13 for arrays of angles; shapes (..., 3)."""
    tau, alpha = np.asarray(tau, float), np.asarray(alpha, float)
    v1 = fr["c1"] + np.multiply.outer(np.cos(alpha), fr["p"]) + np.multiply.outer(np.sin(alpha), fr["q"])
    v13 = np.stack([fr["x13"] * np.cos(tau), fr["x13"] * np.sin(tau), np.full_like(tau, fr["z13"])], axis=-1)
    return v1, v13


def _equations(fr, L, tau, alpha):
    """Residuals ``|J13 - J1|^2 - J3^2`` and ``|J34 - J13 + J1|^2 - J4^2`` with their Jacobian."""
    v1, v13 = _vectors(fr, tau, alpha)
    d1 = np.multiply.outer(-np.sin(alpha), fr["p"]) + np.multiply.outer(np.cos(alpha), fr["q"])
    d13 = np.stack([-fr["x13"] * np.sin(tau), fr["x13"] * np.cos(tau), np.zeros_like(tau)], axis=-1)
    a = v13 - v1
    w = fr["v34"] - a
    f = np.stack([np.sum(a * a, -1) - L["J3"] ** 2, np.sum(w * w, -1) - L["J4"] ** 2], -1)
    jac = np.empty(f.shape + (2,))
    jac[..., 0, 0] = 2 * np.sum(a * d13, -1)
    jac[..., 0, 1] = -2 * np.sum(a * d1, -1)
    jac[..., 1, 0] = -2 * np.sum(w * d13, -1)
    jac[..., 1, 1] = 2 * np.sum(w * d1, -1)
    return f, jac


def _newton(fr, L, tau, alpha, iters: int = 200):
    """Damped Newton on the torus, vectorized over starting points.

    Points that converge, or that fail to improve for ten iterations, drop
    out of the active set.
    """
    scale = max(L.values()) ** 2
    x = np.stack([np.asarray(tau, float), np.asarray(alpha, float)], -1)
    f, jac = _equations(fr, L, x[:, 0], x[:, 1])
    norm = np.max(np.abs(f), -1)
    active = np.ones(len(x), bool)
    mark = norm.copy()
    for it in range(iters):
        active &= norm >= 1e-13 * scale
        idx = np.nonzero(active)[0]
        if not len(idx):
            break
        xa, fa, ja, na = x[idx], f[idx], jac[idx], norm[idx]
        det = ja[:, 0, 0] * ja[:, 1, 1] - ja[:, 0, 1] * ja[:, 1, 0]
        ok = np.abs(det) > 1e-300
        safe = np.where(ok, det, 1.0)
        dx0 = (ja[:, 1, 1] * fa[:, 0] - ja[:, 0, 1] * fa[:, 1]) / safe
        dx1 = (-ja[:, 1, 0] * fa[:, 0] + ja[:, 0, 0] * fa[:, 1]) / safe
        step = np.stack([dx0, dx1], -1) * ok[:, None]
        # cap the step, then halve until the residual decreases
        big = np.max(np.abs(step), -1)
        step *= np.minimum(1.0, 0.5 / np.maximum(big, 1e-300))[:, None]
        lam = np.ones(len(idx))
        for _ in range(30):
            xn = xa - lam[:, None] * step
            fn, jn = _equations(fr, L, xn[:, 0], xn[:, 1])
            nn = np.max(np.abs(fn), -1)
            worse = nn > na
            if not worse.any():
                break
            lam = np.where(worse, lam / 2, lam)
        accept = nn <= na
        x[idx] = np.where(accept[:, None], xn, xa)
        f[idx] = np.where(accept[:, None], fn, fa)
        jac[idx] = np.where(accept[:, None, None], jn, ja)
        norm[idx] = np.where(accept, nn, na)
        if it % 10 == 9:
            active &= norm < 0.5 * mark
            mark = norm.copy()
    return x, norm / scale


def _scan_starts(fr, L, n: int = 1024) -> tuple[np.ndarray, float]:
    """Approximate roots from a scan over the twist.

    For fixed ``tau`` the condition ``|J13 - J1| = J3`` fixes ``alpha`` up to
    two choices in closed form, leaving one scalar equation in ``tau``. Sign
    changes of that residual along each choice, and where the two choices
    merge, bracket the roots. Also returns the smallest residual seen,
    relative to the squared length scale.
    """
    tau = (np.arange(n) + 0.5) * (2 * np.pi / n) - np.pi
    v13 = np.stack([fr["x13"] * np.cos(tau), fr["x13"] * np.sin(tau), np.full_like(tau, fr["z13"])], -1)
    k = (L["J13"] ** 2 + L["J1"] ** 2 - L["J3"] ** 2) / 2
    a, b = v13 @ fr["p"], v13 @ fr["q"]
    c = k - v13 @ fr["c1"]
    r = np.hypot(a, b)
    valid = np.abs(c) <= r
    base = np.arctan2(b, a)
    half = np.arccos(np.clip(c / np.where(r > 0, r, 1.0), -1.0, 1.0))
    out = []
    gs = []
    for sgn in (1.0, -1.0):
        alpha = base + sgn * half
        f, _ = _equations(fr, L, tau, alpha)
        g = np.where(valid, f[:, 1], np.nan)
        gs.append(g)
        nxt = np.roll(g, -1)
        hit = valid & np.roll(valid, -1) & (np.sign(g) != np.sign(nxt))
        for i in np.nonzero(hit)[0]:
            out.append((tau[i], alpha[i]))
    # the two choices join at the ends of each valid interval
    edge = valid & ~(np.roll(valid, -1) & np.roll(valid, 1))
    for i in np.nonzero(edge & (np.sign(gs[0]) != np.sign(gs[1])))[0]:
        out.append((tau[i], base[i]))
    both = np.abs(np.concatenate(gs))
    closest = float(np.nanmin(both)) / max(L.values()) ** 2 if valid.any() else math.inf
    return np.array(out, float).reshape(-1, 2), closest


def _build(fr, L, tau, alpha, branch) -> NineJConfig:
    v1, v13 = _vectors(fr, tau, alpha)
    v7 = np.array([0.0, 0.0, -L["J7"]])
    v2 = fr["v12"] - v1
    v3 = v13 - v1
    v4 = fr["v34"] - v3
    return NineJConfig(v1, v2, v3, v4, v7, branch, float(tau))


def _wrap(x):
    return (x + np.pi) % (2 * np.pi) - np.pi


def nine_j_solutions(
    J1: float, J2: float, J3: float, J4: float, J12: float, J34: float, J13: float, J24: float, J7: float,
    seeds: int = 8,
) -> list[NineJConfig]:
    """Every real solution (mirror images included) of the nine norms plus closure.

    Gauge: ``J7`` along -z and the ``(J12, J34)`` triangle in the xz-plane.
    The unknowns are the twist ``tau`` of the ``(J13, J24)`` triangle about z
    and the angle ``alpha`` of ``J1`` on its circle about ``J12``; two scalar
    equations remain. Damped Newton runs from a deterministic
    ``seeds x seeds`` grid plus a refined grid when fewer than four roots
    are found.
    """
    L = dict(J1=J1, J2=J2, J3=J3, J4=J4, J12=J12, J34=J34, J13=J13, J24=J24, J7=J7)
    if min(L.values()) <= 0.0:
        raise ValueError("lengths must be positive")
    for a, b, c in (("J12", "J34", "J7"), ("J13", "J24", "J7"), ("J1", "J2", "J12"),
                    ("J3", "J4", "J34"), ("J1", "J3", "J13"), ("J2", "J4", "J24")):
        if not _triangle_real(L[a], L[b], L[c]):
            raise ClassicallyForbidden(f"triangle ({a}, {b}, {c}) violated")
    fr = _frame(L)
    found: list[np.ndarray] = []
    best = math.inf
    starts, closest = _scan_starts(fr, L)
    if len(starts):
        x, res = _newton(fr, L, starts[:, 0], starts[:, 1], iters=60)
        best = float(res.min())
        for xi, ri in zip(_wrap(x), res):
            if ri < 1e-13 and not any(np.max(np.abs(_wrap(xi - y))) < 1e-6 for y in found):
                found.append(xi)
    # far from any root and no bracket: forbidden without a grid search
    if not found and closest > 0.05:
        raise ClassicallyForbidden("no real stationary configuration")
    for n in (() if len(found) >= 4 else (seeds, 4 * seeds)):
        g = (np.arange(n) + 0.5) * (2 * np.pi / n) - np.pi
        tt, aa = np.meshgrid(g, g, indexing="ij")
        x, res = _newton(fr, L, tt.ravel(), aa.ravel())
        best = min(best, float(res.min()))
        for xi, ri in zip(_wrap(x), res):
            if ri < 1e-13 and not any(np.max(np.abs(_wrap(xi - y))) < 1e-6 for y in found):
                found.append(xi)
        if len(found) >= 4:
            break
    if not found:
        if best > 1e-6:
            raise ClassicallyForbidden("no real stationary configuration")
        raise ConvergenceFailure("Newton iteration stalled", best)
    out = []
    for tau, alpha in sorted(found, key=lambda v: (v[0], v[1])):
        c = _build(fr, L, tau, alpha, 0)
        res = c.residual(L)
        if res > RESIDUAL_TOL:
            raise ConvergenceFailure("constraint residual above tolerance", res)
        out.append(c)
    return out


def solve_nine_j_config(
    J1: float, J2: float, J3: float, J4: float, J12: float, J34: float, J13: float, J24: float, J7: float,
) -> tuple[NineJConfig, NineJConfig]:
    """The two inequivalent stationary configurations, branch 1 first.

    Solutions come in mirror pairs; one representative of each pair is
    kept (see :func:`orientation_key`). Branch 1 is the configuration with
    the larger ``V123 V432 - V214 V341``.
    """
    sols = nine_j_solutions(J1, J2, J3, J4, J12, J34, J13, J24, J7)
    reps = [c for c in sols if orientation_key(c) > 0.0]
    if len(reps) != 2:
        raise ConvergenceFailure(f"expected two mirror pairs, found {len(sols)} solutions", 0.0)
    reps.sort(key=lambda c: -c.amplitude_determinant())
    return tuple(NineJConfig(c.J1, c.J2, c.J3, c.J4, c.J7, b, c.twist) for b, c in enumerate(reps, 1))  # type: ignore[return-value]


def orientation_key(c: NineJConfig) -> float:
    """Parity-odd scalar used to pick one member of each mirror pair.

    The signed volume of the ``(J7, J12, J34, J13, J24, J23p)`` tetrahedron;
    it vanishes only where the dihedral angles at ``J12`` and ``J13`` reach
    0 or pi.
    """
    return c.tetrahedron().signed_volume()


def two_small_angles(c: NineJConfig) -> tuple[float, float, float]:
    """``(phi12, phi13, theta)``: internal dihedrals at ``J12``, ``J13`` and their angle."""
    phi12 = plane_angle(c.J12, c.J13, c.J7)
    phi13 = plane_angle(c.J13, c.J12, c.J7)
    theta = angle_between(c.J12, c.J13)
    return phi12, phi13, theta


# Named edges of the three-small tetrahedron: vertices P0..P3 with
# J1 = P0P1, J2 = P1P2, J4 = P2P3, J7 = P3P0, J12 = P0P2, J24 = P1P3.
THREE_SMALL_EDGES = ("J1", "J12", "J7", "J2", "J24", "J4")


def embed_three_small(J1: float, J2: float, J4: float, J7: float, J12: float, J24: float) -> EmbeddedTetrahedron:
    return embed_tetrahedron((J1, J12, J7, J2, J24, J4), THREE_SMALL_EDGES)


def three_small_vectors(t: EmbeddedTetrahedron) -> dict[str, Vec3]:
    """Oriented edge vectors with ``J12 = J1 + J2``, ``J24 = J2 + J4``, ``J1 + J2 + J4 + J7 = 0``."""
    p = t.vertices
    return {
        "J1": p[1] - p[0],
        "J2": p[2] - p[1],
        "J4": p[3] - p[2],
        "J7": p[0] - p[3],
        "J12": p[2] - p[0],
        "J24": p[3] - p[1],
    }


def three_small_angles(t: EmbeddedTetrahedron) -> tuple[float, float, float, float, float, float]:
    """``(phi1, phi12, phi1', phi4', theta1, theta2)`` for the three-small tetrahedron."""
    dih = dihedral_angles(t)
    v = three_small_vectors(t)
    phi1 = dih["J1"][0]
    phi12 = dih["J12"][0]
    phi1p = plane_angle(v["J1"], v["J4"], v["J7"])
    phi4p = plane_angle(v["J4"], v["J1"], v["J7"])
    theta1 = angle_between(v["J1"], v["J4"])
    theta2 = angle_between(v["J1"], v["J12"])
    return phi1, phi12, phi1p, phi4p, theta1, theta2
