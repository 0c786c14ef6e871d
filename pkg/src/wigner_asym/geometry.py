"""Euclidean tetrahedron geometry from edge lengths.

The canonical edge labeling follows the 6j layout {a b c; d e f} with faces
(a,b,c), (a,e,f), (d,b,f), (d,e,c).  Equivalently, for vertices P, Q, R, S:
a = PQ, b = QR, c = PR, d = RS, e = PS, f = QS.  Edge lengths from spins
are always l = j + 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateTriangle,
    DegenerateVertex,
    NotClassicallyAllowed,
)
from .halfint import HalfInt

EDGE_NAMES = ("a", "b", "c", "d", "e", "f")
FACES = ((0, 1, 2), (0, 4, 5), (3, 1, 5), (3, 4, 2))

#: Caustic guard: "classically allowed" needs CM > eps * (mean edge)^6.
DEFAULT_CAUSTIC_EPS = 1e-6

#: Tolerance for arccos arguments that may stick out of [-1, 1] by rounding.
ACOS_CLAMP_TOL = 1e-9

_SINE_TOL = 1e-12


def edge_length_from_spin(j) -> float:
    """l = j + 1/2, the length convention the oscillatory asymptotics need."""
    return float(HalfInt(j)) + 0.5


def _clamped_acos(x: float, exc_type=DegenerateTriangle, context: str = "angle") -> float:
    if abs(x) > 1.0 + ACOS_CLAMP_TOL:
        raise exc_type(f"{context}: cosine {x!r} out of range")
    return math.acos(min(1.0, max(-1.0, x)))


def triangle_angle(la: float, lb: float, lc: float) -> float:
    """Interior angle between the sides of lengths la and lb in the triangle
    (la, lb, lc); lc is the opposite side."""
    if min(la, lb, lc) <= 0.0:
        raise DegenerateTriangle(f"non-positive edge in ({la}, {lb}, {lc})")
    cos_phi = (la * la + lb * lb - lc * lc) / (2.0 * la * lb)
    return _clamped_acos(cos_phi, DegenerateTriangle, f"triangle ({la}, {lb}, {lc})")


# For each edge: its two companions (x, y) at a shared node, and the third
# edges completing the faces (e,x), (e,y) and (x,y).
_DIHEDRAL_TABLE = {
    "a": ("b", "c", "f", "e", "d"),
    "b": ("a", "c", "f", "d", "e"),
    "c": ("a", "b", "e", "d", "f"),
    "d": ("b", "f", "c", "e", "a"),
    "e": ("d", "c", "f", "a", "b"),
    "f": ("d", "b", "e", "a", "c"),
}


@dataclass(frozen=True)
class Tetrahedron:
    """Six edge lengths in the canonical layout (a, b, c, d, e, f)."""

    lengths: tuple

    def __post_init__(self):
        if len(self.lengths) != 6:
            raise ValueError("a tetrahedron has six edges")
        lengths = tuple(float(x) for x in self.lengths)
        if min(lengths) <= 0.0:
            raise ValueError("edge lengths must be positive")
        object.__setattr__(self, "lengths", lengths)
        for face in FACES:
            x, y, z = (lengths[i] for i in face)
            if x > y + z or y > x + z or z > x + y:
                raise DegenerateTriangle(
                    f"face {tuple(EDGE_NAMES[i] for i in face)} violates the triangle inequality"
                )

    @classmethod
    def from_spins(cls, spins: Sequence) -> "Tetrahedron":
        return cls(tuple(edge_length_from_spin(j) for j in spins))

    def length(self, edge: str) -> float:
        return self.lengths[EDGE_NAMES.index(edge)]

    def cayley_menger(self) -> float:
        """The 5x5 Cayley-Menger determinant (= 288 V^2)."""
        a, b, c, d, e, f = self.lengths
        m = np.array(
            [
                [0.0, 1.0, 1.0, 1.0, 1.0],
                [1.0, 0.0, a * a, c * c, e * e],
                [1.0, a * a, 0.0, b * b, f * f],
                [1.0, c * c, b * b, 0.0, d * d],
                [1.0, e * e, f * f, d * d, 0.0],
            ]
        )
        return float(np.linalg.det(m))

    def caustic_tolerance(self, eps: float = DEFAULT_CAUSTIC_EPS) -> float:
        mean = sum(self.lengths) / 6.0
        return eps * mean ** 6

    def status(self, eps: float = DEFAULT_CAUSTIC_EPS) -> str:
        """'allowed' | 'near_caustic' | 'forbidden' by the sign of the
        Cayley-Menger determinant against the scale-covariant guard."""
        cm = self.cayley_menger()
        tol = self.caustic_tolerance(eps)
        if cm < -tol:
            return "forbidden"
        if cm <= tol:
            return "near_caustic"
        return "allowed"


def volume(t: Tetrahedron, eps: float = DEFAULT_CAUSTIC_EPS) -> float:
    """Euclidean volume; 0 on the caustic; NotClassicallyAllowed beyond it."""
    cm = t.cayley_menger()
    if cm < -t.caustic_tolerance(eps):
        raise NotClassicallyAllowed(
            f"Cayley-Menger determinant {cm:.6g} < 0: not classically allowed", cm
        )
    return math.sqrt(max(cm, 0.0) / 288.0)


def dihedral_internal(t: Tetrahedron, edge: str, eps: float = DEFAULT_CAUSTIC_EPS) -> float:
    """Internal dihedral angle at an edge, from the face angles at a shared
    node (spherical law of cosines)."""
    cm = t.cayley_menger()
    if cm < -t.caustic_tolerance(eps):
        raise NotClassicallyAllowed(
            f"dihedral angles undefined: determinant {cm:.6g} < 0", cm
        )
    x, tx, y, ty, txy = _DIHEDRAL_TABLE[edge]
    le, lx, ly = t.length(edge), t.length(x), t.length(y)
    phi_ex = triangle_angle(le, lx, t.length(tx))
    phi_ey = triangle_angle(le, ly, t.length(ty))
    phi_xy = triangle_angle(lx, ly, t.length(txy))
    sin_ex, sin_ey = math.sin(phi_ex), math.sin(phi_ey)
    if sin_ex < _SINE_TOL or sin_ey < _SINE_TOL:
        raise DegenerateVertex(f"face angle sine underflow at edge {edge}")
    cos_theta = (math.cos(phi_xy) - math.cos(phi_ex) * math.cos(phi_ey)) / (sin_ex * sin_ey)
    return _clamped_acos(cos_theta, DegenerateVertex, f"dihedral at edge {edge}")


def dihedral_external(t: Tetrahedron, edge: str, eps: float = DEFAULT_CAUSTIC_EPS) -> float:
    return math.pi - dihedral_internal(t, edge, eps)


def regge_action(t: Tetrahedron, spins: Sequence, eps: float = DEFAULT_CAUSTIC_EPS) -> float:
    """sum_e (j_e + 1/2) * external dihedral, over the six edges."""
    spins = [HalfInt(j) for j in spins]
    if len(spins) != 6:
        raise ValueError("need six spins")
    for j, l in zip(spins, t.lengths):
        if abs(edge_length_from_spin(j) - l) > 1e-9:
            raise ValueError("tetrahedron was not built from these spins (l != j + 1/2)")
    return sum(
        (float(j) + 0.5) * dihedral_external(t, name, eps)
        for j, name in zip(spins, EDGE_NAMES)
    )


def schlafli_residual(t: Tetrahedron, h_rel: float = 1e-5) -> float:
    """Numerical defect of the Schlafli identity sum_e l_e dTheta_e = 0.

    For each edge e0, perturb its length by +-h (h = h_rel * l_e0), and
    evaluate |sum_e l_e (Theta_e(+h) - Theta_e(-h)) / (2h)|; returns the
    maximum over the six choices of e0.
    """
    worst = 0.0
    base = list(t.lengths)
    for i0 in range(6):
        h = h_rel * base[i0]
        plus = list(base)
        minus = list(base)
        plus[i0] += h
        minus[i0] -= h
        t_plus = Tetrahedron(tuple(plus))
        t_minus = Tetrahedron(tuple(minus))
        acc = 0.0
        for i, name in enumerate(EDGE_NAMES):
            d_theta = dihedral_external(t_plus, name) - dihedral_external(t_minus, name)
            acc += base[i] * d_theta / (2.0 * h)
        worst = max(worst, abs(acc))
    return worst


def embed_vertices(t: Tetrahedron) -> np.ndarray:
    """Coordinates (4 x 3) of P, Q, R, S realizing the edge lengths."""
    a, b, c, d, e, f = t.lengths
    p = np.zeros(3)
    q = np.array([a, 0.0, 0.0])
    xr = (a * a + c * c - b * b) / (2.0 * a)
    yr_sq = c * c - xr * xr
    if yr_sq < -ACOS_CLAMP_TOL * c * c:
        raise DegenerateTriangle("face (a, b, c) is not realizable")
    yr = math.sqrt(max(yr_sq, 0.0))
    r = np.array([xr, yr, 0.0])
    xs = (a * a + e * e - f * f) / (2.0 * a)
    if yr < _SINE_TOL:
        raise DegenerateVertex("base face degenerate, embedding undefined")
    ys = (e * e - d * d - 2.0 * xs * xr + xr * xr + yr * yr) / (2.0 * yr)
    zs_sq = e * e - xs * xs - ys * ys
    scale = max(t.lengths) ** 2
    if zs_sq < -1e-9 * scale:
        raise NotClassicallyAllowed(
            f"no Euclidean embedding: apex height^2 = {zs_sq:.6g} < 0", zs_sq
        )
    s = np.array([xs, ys, math.sqrt(max(zs_sq, 0.0))])
    return np.vstack([p, q, r, s])


# ----------------------------------------------------------------------
# Glued-triangle constructions
# ----------------------------------------------------------------------

def euler_from_glued_triangles(phi1: float, theta: float, phin: float):
    """Solve the vertex figure of two triangles glued along a shared edge.

    ``phi1`` and ``phin`` are the apex angles the two triangles make with
    the shared edge, ``theta`` the internal dihedral between their planes.
    Returns (theta_a, phi_mid, theta_b): the dihedral angles at the two
    apex edges and the angle between them, all in [0, pi] (spherical law
    of cosines and its duals).
    """
    for name, val in (("phi1", phi1), ("theta", theta), ("phin", phin)):
        if not -ACOS_CLAMP_TOL <= val <= math.pi + ACOS_CLAMP_TOL:
            raise ValueError(f"{name} = {val!r} out of [0, pi]")
    s1, sn = math.sin(phi1), math.sin(phin)
    if s1 < _SINE_TOL or sn < _SINE_TOL:
        raise DegenerateVertex("apex angle sine underflow (input 0 or pi)")
    cos_mid = math.cos(phi1) * math.cos(phin) + s1 * sn * math.cos(theta)
    phi_mid = _clamped_acos(cos_mid, DegenerateVertex, "glued mid-angle")
    s_mid = math.sin(phi_mid)
    if s_mid < _SINE_TOL:
        raise DegenerateVertex("mid-angle sine underflow, dihedrals undefined")
    theta_a = _clamped_acos(
        (math.cos(phin) - math.cos(phi1) * cos_mid) / (s1 * s_mid),
        DegenerateVertex,
        "glued dihedral A",
    )
    theta_b = _clamped_acos(
        (math.cos(phi1) - math.cos(phin) * cos_mid) / (sn * s_mid),
        DegenerateVertex,
        "glued dihedral B",
    )
    return theta_a, phi_mid, theta_b


def build_sigma_tet(tri_a: Sequence[float], tri_b: Sequence[float], theta_shared: float) -> Tetrahedron:
    """Tetrahedron from two triangles glued along a shared edge.

    Each triangle is (shared, apex, base): ``shared`` is the common edge,
    ``apex`` runs from the apex node of the shared edge, ``base`` closes the
    triangle from the other node.  ``theta_shared`` is the internal dihedral
    along the shared edge.  The sixth edge (between the two far corners) is
    computed by explicit embedding: shared edge on the z-axis, second
    triangle rotated by the dihedral.
    """
    sa, apex_a, base_a = (float(x) for x in tri_a)
    sb, apex_b, base_b = (float(x) for x in tri_b)
    if abs(sa - sb) > 1e-12 * max(sa, sb):
        raise ValueError("triangles do not share an edge of equal length")
    if not -ACOS_CLAMP_TOL <= theta_shared <= math.pi + ACOS_CLAMP_TOL:
        raise ValueError(f"dihedral {theta_shared!r} out of [0, pi]")
    theta_shared = min(math.pi, max(0.0, theta_shared))
    phi_a = triangle_angle(sa, apex_a, base_a)
    phi_b = triangle_angle(sa, apex_b, base_b)
    corner_a = apex_a * np.array([math.sin(phi_a), 0.0, math.cos(phi_a)])
    corner_b = apex_b * np.array(
        [
            math.sin(phi_b) * math.cos(theta_shared),
            math.sin(phi_b) * math.sin(theta_shared),
            math.cos(phi_b),
        ]
    )
    ab = float(np.linalg.norm(corner_a - corner_b))
    if ab <= 0.0:
        raise DegenerateTriangle("glued corners coincide")
    return Tetrahedron((sa, apex_a, base_a, ab, base_b, apex_b))


# ----------------------------------------------------------------------
# Sign configurations
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SignConfig:
    """One +-1 assignment in the expansion of a product of oscillatory
    factors, with its accumulated z-rotation angle and case data."""

    sigma: tuple
    omega: float           # normalized to [-2pi, 2pi)
    case_id: str           # "I".."IV"
    theta_k1: float        # gluing dihedral for this configuration, in [0, pi]
    extra_phase: int       # +1, or (-1)^(2 j1) on the wrapped branches
    boundary: bool         # omega within tolerance of a case boundary


_TWO_PI = 2.0 * math.pi
_FOUR_PI = 4.0 * math.pi


def omega_classify(n: int, m_small: int, theta_k1_list: Sequence[float], sigma: Sequence[int], j1) -> SignConfig:
    """Classify omega = (n+M) pi - sum_p sigma_p Theta_p (mod 4 pi).

    ``theta_k1_list`` holds the external dihedrals at the shared edge of the
    oscillatory tetrahedra.  The returned gluing angle theta_k1 always lies
    in [0, pi]; the wrapped branches (II and IV) carry the extra phase
    (-1)^(2 j1), which the phase function also absorbs as +2 pi j1.
    """
    j1 = HalfInt(j1)
    sigma = tuple(int(s) for s in sigma)
    if len(sigma) != len(theta_k1_list):
        raise ValueError("sigma and dihedral list lengths differ")
    if any(s not in (-1, 1) for s in sigma):
        raise ValueError("sigma entries must be +-1")
    raw = (n + m_small) * math.pi - sum(s * th for s, th in zip(sigma, theta_k1_list))
    omega = raw - _FOUR_PI * math.floor((raw + _TWO_PI) / _FOUR_PI)
    wrap_phase = -1 if j1.twice % 2 else 1
    if 0.0 <= omega < math.pi:
        case_id, theta, extra = "I", math.pi - omega, 1
    elif -_TWO_PI <= omega < -math.pi:
        case_id, theta, extra = "II", -math.pi - omega, wrap_phase
    elif -math.pi <= omega < 0.0:
        case_id, theta, extra = "III", math.pi + omega, 1
    else:
        case_id, theta, extra = "IV", omega - math.pi, wrap_phase
    theta = min(math.pi, max(0.0, theta))
    boundary = min(
        abs(omega - b) for b in (-_TWO_PI, -math.pi, 0.0, math.pi, _TWO_PI)
    ) < 1e-12
    return SignConfig(sigma, omega, case_id, theta, extra, boundary)


def f_phase(cfg: SignConfig, mu, nu, theta_l1: float, theta_ln: float, j1) -> float:
    """Residual phase of a sign configuration.

    -+ (mu theta_l1 + nu theta_ln), with +2 pi j1 added on the wrapped
    branches (omega in [-2pi, -pi) and [pi, 2pi)).
    """
    mu, nu, j1 = HalfInt(mu), HalfInt(nu), HalfInt(j1)
    base = float(mu) * theta_l1 + float(nu) * theta_ln
    if cfg.case_id == "I":
        return -base
    if cfg.case_id == "II":
        return -base + _TWO_PI * float(j1)
    if cfg.case_id == "III":
        return base
    return base + _TWO_PI * float(j1)
