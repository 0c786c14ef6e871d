"""Semiclassical asymptotics of Wigner symbols with mixed small/large spins.

Oscillatory 6j factors follow the stationary-tetrahedron form
cos(S_R + pi/4)/sqrt(12 pi V); 6j factors with one small spin reduce to a
small-d matrix element at a triangle angle.  Chaining these through the 6j
decomposition of a 3nj symbol and resumming the intermediate-spin sum as an
SU(2) rotation yields one secondary (glued-triangle) tetrahedron per sign
configuration of the oscillatory factors; the general driver and the
closed 9j/15j forms below all follow that construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .errors import (
    CaseAngleOutOfRange,
    DegenerateTriangle,
    HypothesisViolation,
    InternalConsistencyError,
    NotClassicallyAllowed,
)
from .exact import Symbol3nj, Symbol9j
from .geometry import (
    DEFAULT_CAUSTIC_EPS,
    Tetrahedron,
    build_sigma_tet,
    dihedral_external,
    dihedral_internal,
    edge_length_from_spin,
    euler_from_glued_triangles,
    f_phase,
    omega_classify,
    regge_action,
    triangle_angle,
    volume,
)
from .halfint import HalfInt, halfint_sum, phase_complex
from .wigner_d import small_d

QUARTER_PI = math.pi / 4.0

#: Declared-small spins larger than this fraction of the median large spin
#: trigger a warning: the asymptotic separation of scales is doubtful.
DEFAULT_SMALL_RATIO = 0.15


@dataclass
class AsymDiagnostics:
    """Geometry backing an asymptotic value, for validation and plotting."""

    volumes: dict = field(default_factory=dict)
    regge_actions: dict = field(default_factory=dict)
    angles: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    sign_configs: list = field(default_factory=list)


@dataclass(frozen=True)
class Violation:
    code: str
    severity: str          # "error" | "warning"
    message: str


def _tet_from_spins_strict(spins, label: str) -> Tetrahedron:
    """Length-level triangle failures count as deep classically-forbidden."""
    try:
        return Tetrahedron.from_spins(spins)
    except DegenerateTriangle as exc:
        raise NotClassicallyAllowed(
            f"{label}: edge lengths do not close into a tetrahedron ({exc})",
            float("-inf"),
        ) from exc


# ----------------------------------------------------------------------
# 6j asymptotics
# ----------------------------------------------------------------------

def pr_6j(spins, caustic_eps: float = DEFAULT_CAUSTIC_EPS):
    """Oscillatory 6j asymptotics cos(S_R + pi/4)/sqrt(12 pi V) for six
    large spins in the standard layout {a b c; d e f}."""
    spins = [HalfInt(j) for j in spins]
    tet = _tet_from_spins_strict(spins, "tetrahedron")
    status = tet.status(caustic_eps)
    if status == "forbidden":
        raise NotClassicallyAllowed(
            "tetrahedron not classically allowed", tet.cayley_menger()
        )
    vol = volume(tet, caustic_eps)
    if vol <= 0.0:
        raise NotClassicallyAllowed("tetrahedron volume is zero", tet.cayley_menger())
    action = regge_action(tet, spins, caustic_eps)
    value = math.cos(action + QUARTER_PI) / math.sqrt(12.0 * math.pi * vol)
    diag = AsymDiagnostics(
        volumes={"tet": vol},
        regge_actions={"tet": action},
        angles={},
        flags=["near_caustic:tet"] if status == "near_caustic" else [],
    )
    return value, diag


def edmonds_6j(a, b, c, m, n, f, lengths: str = "half") -> float:
    """One-small-spin 6j asymptotics for {a b c; b+m a+n f}:
    (-1)^(a+b+c+f+m) d^(f)_{mn}(phi_ab) / sqrt(d_a d_b),
    with phi_ab the angle between the a and b edges of the triangle
    (a, b, c).  ``lengths`` picks l = j + 1/2 ("half") or sqrt(j(j+1))
    ("sqrt"); the two differ at sub-leading order only.
    """
    a, b, c, f = HalfInt(a), HalfInt(b), HalfInt(c), HalfInt(f)
    m, n = HalfInt(m), HalfInt(n)
    for proj in (m, n):
        if abs(proj.twice) > f.twice or (f.twice - proj.twice) % 2 != 0:
            raise ValueError(f"projection {proj} invalid for small spin {f}")
    if lengths == "half":
        la, lb, lc = (edge_length_from_spin(x) for x in (a, b, c))
    elif lengths == "sqrt":
        la, lb, lc = (math.sqrt(float(x) * (float(x) + 1.0)) for x in (a, b, c))
    else:
        raise ValueError("lengths must be 'half' or 'sqrt'")
    phi = triangle_angle(la, lb, lc)
    phase = _int_phase(halfint_sum([a, b, c, f, m]), "edmonds phase a+b+c+f+m")
    return phase * small_d(f, m, n, phi) / math.sqrt(a.dim * b.dim)


# ----------------------------------------------------------------------
# 9j with one small spin
# ----------------------------------------------------------------------

def asym_9j_one_small(
    sym: Symbol9j,
    caustic_eps: float = DEFAULT_CAUSTIC_EPS,
    small_ratio: float = DEFAULT_SMALL_RATIO,
):
    """Asymptotics of a 9j symbol with a single small spin in the s slot.

    The eight large spins define a reference tetrahedron (the 6j
    {j1 j2 j12; j34 j5 j24}); a companion tetrahedron is glued from its
    faces (1,5,24) and (2,34,24) with the external dihedral at 24 as the
    new internal gluing angle, and supplies the residual rotation angles.
    """
    diag = AsymDiagnostics()
    mu = sym.j13 - sym.j1
    nu = sym.j34 - sym.j4
    if not sym.is_valid():
        diag.flags.append("invalid_symbol")
        return 0.0, diag
    if abs(mu.twice) > sym.s.twice or abs(nu.twice) > sym.s.twice:
        diag.flags.append("invalid_symbol")
        return 0.0, diag

    large = [float(getattr(sym, name)) for name in
             ("j1", "j2", "j12", "j4", "j34", "j13", "j24", "j5")]
    med = sorted(large)[len(large) // 2]
    if med > 0 and float(sym.s) / med > small_ratio:
        diag.warnings.append(
            f"declared small spin s={sym.s} is {float(sym.s) / med:.2f} of the "
            f"median large spin; asymptotics may be poor"
        )

    tet1_spins = (sym.j1, sym.j2, sym.j12, sym.j34, sym.j5, sym.j24)
    tet1 = _tet_from_spins_strict(tet1_spins, "reference tetrahedron")
    if tet1.status(caustic_eps) == "forbidden":
        raise NotClassicallyAllowed(
            "reference tetrahedron not classically allowed", tet1.cayley_menger()
        )
    if tet1.status(caustic_eps) == "near_caustic":
        diag.flags.append("near_caustic:tet1")
    vol1 = volume(tet1, caustic_eps)
    if vol1 <= 0.0:
        raise NotClassicallyAllowed("reference tetrahedron is flat", tet1.cayley_menger())
    action = regge_action(tet1, tet1_spins, caustic_eps)
    theta24_ext = dihedral_external(tet1, "f", caustic_eps)

    l1 = edge_length_from_spin(sym.j1)
    l2 = edge_length_from_spin(sym.j2)
    l34 = edge_length_from_spin(sym.j34)
    l5 = edge_length_from_spin(sym.j5)
    l24 = edge_length_from_spin(sym.j24)
    phi_1_24 = triangle_angle(l1, l24, l5)
    phi_34_24 = triangle_angle(l34, l24, l2)
    theta_1, phi_1_34, theta_34 = euler_from_glued_triangles(phi_1_24, theta24_ext, phi_34_24)
    tet2 = build_sigma_tet((l24, l1, l5), (l24, l34, l2), theta24_ext)

    phase = _int_phase(
        halfint_sum([sym.j13, sym.j2, sym.j34, sym.j5, sym.s]),
        "9j phase j13+j2+j34+j5+s",
    )
    argument = action + QUARTER_PI - float(mu) * (math.pi - theta_1) - float(nu) * theta_34
    value = (
        phase
        * math.cos(argument)
        * small_d(sym.s, mu, nu, math.pi - phi_1_34)
        / math.sqrt(sym.j1.dim * sym.j34.dim * 12.0 * math.pi * vol1)
    )

    diag.volumes["tet1"] = vol1
    diag.regge_actions["tet1"] = action
    diag.angles.update(
        {
            "phi_1_24": phi_1_24,
            "phi_34_24": phi_34_24,
            "Theta24_ext": theta24_ext,
            "theta_1": theta_1,
            "phi_1_34": phi_1_34,
            "theta_34": theta_34,
            "companion_sixth_edge": tet2.lengths[3],
        }
    )
    return value, diag


# ----------------------------------------------------------------------
# General 3nj with marked small spins
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SmallSpinMarking:
    """Declares which spins of a first-kind 3nj symbol stay small.

    Exactly one entry of the j/k rows plus any subset of l entries.
    Rows and indices are 1-based, matching the symbol layout.
    """

    small_jk: tuple            # ("j" | "k", index)
    small_l: frozenset = frozenset()

    def __post_init__(self):
        row, idx = self.small_jk
        if row not in ("j", "k") or not isinstance(idx, int) or idx < 1:
            raise ValueError("small_jk must be ('j'|'k', 1-based index)")
        object.__setattr__(self, "small_l", frozenset(int(i) for i in self.small_l))

    def normalized_shift(self, n: int) -> int:
        row, idx = self.small_jk
        if idx > n:
            raise ValueError(f"index {idx} out of range for n={n}")
        return (idx - 1) + (n if row == "k" else 0)


def normalize_marking(sym: Symbol3nj, mark: SmallSpinMarking):
    """Rotate the symbol (a symmetry) so the small j/k spin sits at j1.

    Returns (rotated symbol, small-l index set in the rotated labels).
    """
    shift = mark.normalized_shift(sym.n)
    rotated = sym.rotated(shift)
    ls = shift % sym.n
    small_l = frozenset(((m - 1 - ls) % sym.n) + 1 for m in mark.small_l)
    return rotated, small_l


def validate_hypotheses(
    sym: Symbol3nj,
    mark: SmallSpinMarking,
    caustic_eps: float = DEFAULT_CAUSTIC_EPS,
    small_ratio: float = DEFAULT_SMALL_RATIO,
):
    """Check the applicability conditions for the mixed-spin asymptotics.

    Returns a list of :class:`Violation`; empty means ok.  Error-grade
    entries: a small l adjacent to the small j/k spin (two small spins in
    one decomposition 6j), or an oscillatory tetrahedron beyond the
    caustic.  Warning-grade: near-caustic tetrahedra and doubtful scale
    separation.
    """
    nsym, small_l = normalize_marking(sym, mark)
    n = nsym.n
    out = []
    for m in sorted(small_l):
        if m < 2 or m > n - 1:
            out.append(
                Violation(
                    "small_l_index",
                    "error",
                    f"small l_{m} (after normalization) shares a decomposition "
                    f"6j with the small j/k spin; every small l must have index "
                    f"in 2..n-1",
                )
            )
    declared = [float(nsym.j[0])] + [float(nsym.l[m - 1]) for m in small_l if 1 <= m <= n]
    undeclared = (
        [float(x) for x in nsym.j[1:]]
        + [float(x) for x in nsym.k]
        + [float(nsym.l[i]) for i in range(n) if (i + 1) not in small_l]
    )
    med = sorted(undeclared)[len(undeclared) // 2] if undeclared else 0.0
    if med > 0:
        for v in declared:
            if v / med > small_ratio:
                out.append(
                    Violation(
                        "scale_ratio",
                        "warning",
                        f"declared small spin {v} is {v / med:.2f} of the median "
                        f"large spin {med}",
                    )
                )
        for v in undeclared:
            if v < 0.5 * max(declared + [0.5]):
                out.append(
                    Violation(
                        "undeclared_small",
                        "warning",
                        f"undeclared spin {v} is comparable to the declared small spins",
                    )
                )
    for p in _oscillatory_indices(n, small_l):
        try:
            tet = _chain_tet(nsym, p)
        except DegenerateTriangle as exc:
            out.append(
                Violation(
                    "caustic",
                    "error",
                    f"tetrahedron p={p} has no Euclidean realization ({exc})",
                )
            )
            continue
        status = tet.status(caustic_eps)
        if status == "forbidden":
            out.append(
                Violation(
                    "caustic",
                    "error",
                    f"tetrahedron p={p} is not classically allowed "
                    f"(CM determinant {tet.cayley_menger():.6g})",
                )
            )
        elif status == "near_caustic":
            out.append(Violation("caustic", "warning", f"tetrahedron p={p} is near the caustic"))
    return out


def _oscillatory_indices(n: int, small_l) -> list:
    return [p for p in range(2, n) if p not in small_l]


def _chain_tet(nsym: Symbol3nj, p: int) -> Tetrahedron:
    """Tetrahedron of the all-large decomposition 6j
    {j_p k_p x; k_{p+1} j_{p+1} l_p} at x = k1."""
    return Tetrahedron.from_spins(_chain_tet_spins(nsym, p))


def _chain_tet_spins(nsym: Symbol3nj, p: int):
    j, k, l = nsym.j, nsym.k, nsym.l
    return (j[p - 1], k[p - 1], k[0], k[p], j[p], l[p - 1])


def asym_3nj(
    sym: Symbol3nj,
    mark: SmallSpinMarking,
    caustic_eps: float = DEFAULT_CAUSTIC_EPS,
    small_ratio: float = DEFAULT_SMALL_RATIO,
):
    """General mixed-spin asymptotics of a first-kind 3nj symbol.

    One oscillatory tetrahedron per all-large decomposition 6j, one
    small-d factor per marked small l, and a sum over the 2^P sign
    configurations, each with its own glued secondary tetrahedron and
    residual phase.
    """
    diag = AsymDiagnostics()
    violations = validate_hypotheses(sym, mark, caustic_eps, small_ratio)
    hard = [v for v in violations if v.severity == "error" and v.code != "caustic"]
    if hard:
        raise HypothesisViolation("marking violates applicability conditions", hard)
    diag.warnings.extend(v.message for v in violations if v.severity == "warning")

    nsym, small_l = normalize_marking(sym, mark)
    n = nsym.n
    j, k, l = nsym.j, nsym.k, nsym.l
    j1 = j[0]
    m_count = len(small_l)
    p_set = _oscillatory_indices(n, small_l)
    p_count = len(p_set)

    mu = j[1] - l[0]
    nu = k[n - 1] - l[n - 1]
    if not _projection_ok(mu, j1) or not _projection_ok(nu, j1):
        diag.flags.append("invalid_symbol")
        return 0.0, diag
    etas, kappas = {}, {}
    for m in sorted(small_l):
        etas[m] = j[m] - j[m - 1]
        kappas[m] = k[m] - k[m - 1]
        if not _projection_ok(etas[m], l[m - 1]) or not _projection_ok(kappas[m], l[m - 1]):
            diag.flags.append("invalid_symbol")
            return 0.0, diag

    lk1 = edge_length_from_spin(k[0])
    phi1 = triangle_angle(lk1, edge_length_from_spin(l[0]), edge_length_from_spin(k[1]))
    phin = triangle_angle(lk1, edge_length_from_spin(l[n - 1]), edge_length_from_spin(j[n - 1]))
    diag.angles["phi1"] = phi1
    diag.angles["phin"] = phin

    volumes, actions, thetas_ext = {}, {}, {}
    for p in p_set:
        spins = _chain_tet_spins(nsym, p)
        tet = _tet_from_spins_strict(spins, f"tetrahedron p={p}")
        if tet.status(caustic_eps) == "forbidden":
            raise NotClassicallyAllowed(
                f"tetrahedron p={p} not classically allowed", tet.cayley_menger()
            )
        if tet.status(caustic_eps) == "near_caustic":
            diag.flags.append(f"near_caustic:tet_{p}")
        volumes[p] = volume(tet, caustic_eps)
        if volumes[p] <= 0.0:
            raise NotClassicallyAllowed(f"tetrahedron p={p} is flat", tet.cayley_menger())
        actions[p] = regge_action(tet, spins, caustic_eps)
        thetas_ext[p] = dihedral_external(tet, "c", caustic_eps)
        diag.volumes[f"tet_{p}"] = volumes[p]
        diag.regge_actions[f"tet_{p}"] = actions[p]
        diag.angles[f"Theta_k1_{p}"] = thetas_ext[p]

    small_factor = 1.0
    for m in sorted(small_l):
        phi_m = triangle_angle(
            edge_length_from_spin(j[m - 1]), edge_length_from_spin(k[m - 1]), lk1
        )
        diag.angles[f"phi_{m}"] = phi_m
        small_factor *= small_d(l[m - 1], kappas[m], etas[m], phi_m) / math.sqrt(
            j[m - 1].dim * k[m - 1].dim
        )

    theta_list = [thetas_ext[p] for p in p_set]
    config_sum = 0.0
    for sigma in product((1, -1), repeat=p_count):
        cfg = omega_classify(n, m_count, theta_list, sigma, j1)
        theta_l1, phi_mid, theta_ln = euler_from_glued_triangles(phi1, cfg.theta_k1, phin)
        f_val = f_phase(cfg, mu, nu, theta_l1, theta_ln, j1)
        argument = (
            sum(s * (actions[p] + QUARTER_PI) for s, p in zip(sigma, p_set))
            + math.pi * (n + m_count) * float(j1)
            + f_val
        )
        sigma_tet = build_sigma_tet(
            (lk1, edge_length_from_spin(l[0]), edge_length_from_spin(k[1])),
            (lk1, edge_length_from_spin(l[n - 1]), edge_length_from_spin(j[n - 1])),
            cfg.theta_k1,
        )
        config_sum += math.cos(argument) * small_d(j1, mu, nu, phi_mid)
        diag.sign_configs.append(
            {
                "sigma": cfg.sigma,
                "omega": cfg.omega,
                "case": cfg.case_id,
                "theta_k1": cfg.theta_k1,
                "theta_l1": theta_l1,
                "phi_l1_ln": phi_mid,
                "theta_ln": theta_ln,
                "f": f_val,
                "boundary": cfg.boundary,
                "glued_sixth_edge": sigma_tet.lengths[3],
            }
        )

    amplitude = small_factor / (2.0 ** p_count * math.sqrt(l[0].dim * l[n - 1].dim))
    for p in p_set:
        amplitude /= math.sqrt(12.0 * math.pi * volumes[p])

    r_exp = _chain_sign_exponent(nsym, small_l, mu)
    value = _apply_half_integer_phase(r_exp, amplitude * config_sum)
    return value, diag


def asym_3nj_xi_sum(
    sym: Symbol3nj,
    mark: SmallSpinMarking,
    caustic_eps: float = DEFAULT_CAUSTIC_EPS,
    small_ratio: float = DEFAULT_SMALL_RATIO,
) -> float:
    """The same asymptotics before the sign-configuration resummation: a
    direct sum over the residual intermediate-spin offset.  Agrees with
    :func:`asym_3nj` to machine precision; kept as an independent route
    through the angle bookkeeping."""
    violations = validate_hypotheses(sym, mark, caustic_eps, small_ratio)
    hard = [v for v in violations if v.severity == "error" and v.code != "caustic"]
    if hard:
        raise HypothesisViolation("marking violates applicability conditions", hard)
    nsym, small_l = normalize_marking(sym, mark)
    n = nsym.n
    j, k, l = nsym.j, nsym.k, nsym.l
    j1 = j[0]
    m_count = len(small_l)
    p_set = _oscillatory_indices(n, small_l)

    mu = j[1] - l[0]
    nu = k[n - 1] - l[n - 1]
    if not _projection_ok(mu, j1) or not _projection_ok(nu, j1):
        return 0.0
    lk1 = edge_length_from_spin(k[0])
    phi1 = triangle_angle(lk1, edge_length_from_spin(l[0]), edge_length_from_spin(k[1]))
    phin = triangle_angle(lk1, edge_length_from_spin(l[n - 1]), edge_length_from_spin(j[n - 1]))

    volumes, actions, thetas_ext = {}, {}, {}
    for p in p_set:
        spins = _chain_tet_spins(nsym, p)
        tet = _tet_from_spins_strict(spins, f"tetrahedron p={p}")
        volumes[p] = volume(tet, caustic_eps)
        if volumes[p] <= 0.0:
            raise NotClassicallyAllowed(f"tetrahedron p={p} is flat", tet.cayley_menger())
        actions[p] = regge_action(tet, spins, caustic_eps)
        thetas_ext[p] = dihedral_external(tet, "c", caustic_eps)

    small_factor = 1.0
    for m in sorted(small_l):
        eta = j[m] - j[m - 1]
        kappa = k[m] - k[m - 1]
        if not _projection_ok(eta, l[m - 1]) or not _projection_ok(kappa, l[m - 1]):
            return 0.0
        phi_m = triangle_angle(
            edge_length_from_spin(j[m - 1]), edge_length_from_spin(k[m - 1]), lk1
        )
        small_factor *= small_d(l[m - 1], kappa, eta, phi_m) / math.sqrt(
            j[m - 1].dim * k[m - 1].dim
        )

    total = 0.0
    for t_xi in range(-j1.twice, j1.twice + 1, 2):
        xi = HalfInt.from_twice(t_xi)
        wrap = (n + m_count) * ((j1.twice - t_xi) // 2)
        sign = -1.0 if wrap % 2 else 1.0
        prod = 1.0
        for p in p_set:
            prod *= math.cos(actions[p] + float(xi) * thetas_ext[p] + QUARTER_PI)
            prod /= math.sqrt(12.0 * math.pi * volumes[p])
        total += sign * small_d(j1, mu, xi, phi1) * small_d(j1, xi, nu, phin) * prod

    amplitude = small_factor / math.sqrt(l[0].dim * l[n - 1].dim)
    r_exp = _chain_sign_exponent(nsym, small_l, mu)
    return _apply_half_integer_phase(r_exp, amplitude * total)


def _projection_ok(m: HalfInt, j: HalfInt) -> bool:
    return abs(m.twice) <= j.twice and (j.twice - m.twice) % 2 == 0


def _chain_sign_exponent(nsym: Symbol3nj, small_l, mu: HalfInt) -> HalfInt:
    """Global sign exponent of the mixed-spin formula (integer on valid
    symbols): R_n + (n+M-1)(k1+j1) + (mu-j1) + (k1+k2+l1) + (k1+jn+ln)
    + sum_m (j_m + l_m + k_{m+1})."""
    n = nsym.n
    j, k, l = nsym.j, nsym.k, nsym.l
    j1 = j[0]
    terms = [nsym.r_total(), (k[0] + j1) * (n + len(small_l) - 1), mu - j1,
             k[0] + k[1] + l[0], k[0] + j[n - 1] + l[n - 1]]
    for m in sorted(small_l):
        terms.append(j[m - 1] + l[m - 1] + k[m])
    return halfint_sum(terms)


def _apply_half_integer_phase(exponent: HalfInt, magnitude: float) -> float:
    """(-1)**exponent * magnitude, tolerating a (never expected) half-integer
    exponent as a complex phase whose imaginary part must cancel."""
    if exponent.twice % 2 == 0:
        sign = -1.0 if (exponent.twice // 2) % 2 else 1.0
        return sign * magnitude
    out = phase_complex(exponent) * magnitude
    if abs(out.imag) > 1e-9 * (abs(out.real) + 1e-300):
        raise InternalConsistencyError(
            f"half-integer sign exponent {exponent} left an imaginary part"
        )
    return out.real


def _int_phase(e: HalfInt, context: str) -> int:
    if e.twice % 2 != 0:
        raise InternalConsistencyError(f"{context}: exponent {e} is not an integer")
    return -1 if (e.twice // 2) % 2 else 1


# ----------------------------------------------------------------------
# 15j special cases (closed forms, independent of the general driver)
# ----------------------------------------------------------------------

def _require_pattern(sym: Symbol3nj, mark: SmallSpinMarking, expected_l):
    if sym.n != 5:
        raise ValueError("15j wrappers need n = 5")
    if mark.small_jk != ("j", 1):
        raise ValueError("15j wrappers expect the small spin at j1 (normalize first)")
    if mark.small_l != frozenset(expected_l):
        raise ValueError(f"marking must declare small l indices {set(expected_l)}")


def _wrapper_offsets(sym: Symbol3nj, small_l, diag: AsymDiagnostics):
    """mu, nu and the per-small-l offsets, or None when the symbol vanishes."""
    j, k, l = sym.j, sym.k, sym.l
    mu = j[1] - l[0]
    nu = k[4] - l[4]
    if not _projection_ok(mu, j[0]) or not _projection_ok(nu, j[0]):
        diag.flags.append("invalid_symbol")
        return None
    etas, kappas = {}, {}
    for m in sorted(small_l):
        etas[m] = j[m] - j[m - 1]
        kappas[m] = k[m] - k[m - 1]
        if not _projection_ok(etas[m], l[m - 1]) or not _projection_ok(kappas[m], l[m - 1]):
            diag.flags.append("invalid_symbol")
            return None
    return mu, nu, etas, kappas


def _phi_mid_triangle(sym: Symbol3nj) -> float:
    """Angle between the j2 and k2 edges in the triangle (j2, k2, k1)."""
    return triangle_angle(
        edge_length_from_spin(sym.j[1]),
        edge_length_from_spin(sym.k[1]),
        edge_length_from_spin(sym.k[0]),
    )


def _oscillatory_tet(sym: Symbol3nj, p: int, caustic_eps: float, diag: AsymDiagnostics):
    spins = _chain_tet_spins(sym, p)
    tet = _tet_from_spins_strict(spins, f"tetrahedron p={p}")
    status = tet.status(caustic_eps)
    if status == "forbidden":
        raise NotClassicallyAllowed(
            f"tetrahedron p={p} not classically allowed", tet.cayley_menger()
        )
    if status == "near_caustic":
        diag.flags.append(f"near_caustic:tet_{p}")
    vol = volume(tet, caustic_eps)
    if vol <= 0.0:
        raise NotClassicallyAllowed(f"tetrahedron p={p} is flat", tet.cayley_menger())
    action = regge_action(tet, spins, caustic_eps)
    diag.volumes[f"tet_{p}"] = vol
    diag.regge_actions[f"tet_{p}"] = action
    return tet, vol, action


def asym_15j_four_small(sym: Symbol3nj, mark: SmallSpinMarking,
                        caustic_eps: float = DEFAULT_CAUSTIC_EPS):
    """15j with j1, l2, l3, l4 small: all decomposition 6js carry one small
    spin, no oscillation survives, and every relevant triangle degenerates
    to (j2, k2, k1)."""
    _require_pattern(sym, mark, {2, 3, 4})
    diag = AsymDiagnostics()
    offsets = _wrapper_offsets(sym, {2, 3, 4}, diag)
    if offsets is None:
        return 0.0, diag
    mu, nu, etas, kappas = offsets
    j, k, l = sym.j, sym.k, sym.l
    phi2 = _phi_mid_triangle(sym)
    diag.angles["phi2"] = phi2
    value = 1.0 / (j[1].dim ** 2 * k[1].dim ** 2)
    for m in (2, 3, 4):
        value *= small_d(l[m - 1], kappas[m], etas[m], phi2)
    value *= small_d(j[0], mu, -nu, phi2)
    return value, diag


def asym_15j_three_small(sym: Symbol3nj, mark: SmallSpinMarking,
                         caustic_eps: float = DEFAULT_CAUSTIC_EPS):
    """15j with j1, l2, l3 small: one oscillatory tetrahedron (p = 4); the
    secondary tetrahedron glues its faces at k1 with the external dihedral
    as the new internal angle."""
    _require_pattern(sym, mark, {2, 3})
    diag = AsymDiagnostics()
    offsets = _wrapper_offsets(sym, {2, 3}, diag)
    if offsets is None:
        return 0.0, diag
    mu, nu, etas, kappas = offsets
    j, k, l = sym.j, sym.k, sym.l

    tet4, vol4, action4 = _oscillatory_tet(sym, 4, caustic_eps, diag)
    theta_ext = dihedral_external(tet4, "c", caustic_eps)
    phi_a = triangle_angle(
        edge_length_from_spin(k[0]), edge_length_from_spin(j[3]), edge_length_from_spin(k[3])
    )
    phi_b = triangle_angle(
        edge_length_from_spin(k[0]), edge_length_from_spin(k[4]), edge_length_from_spin(j[4])
    )
    theta_j4, phi_mid, theta_k5 = euler_from_glued_triangles(phi_a, theta_ext, phi_b)
    diag.angles.update(
        {"phi_a": phi_a, "phi_b": phi_b, "theta_k1_ext": theta_ext,
         "theta_j4": theta_j4, "phi_j4_k5": phi_mid, "theta_k5": theta_k5}
    )

    phi2 = _phi_mid_triangle(sym)
    diag.angles["phi2"] = phi2
    phase = _int_phase(
        halfint_sum([sym.k[0], sym.j[3], sym.l[3], sym.k[4], 2 * sym.j[0], mu]),
        "three-small phase",
    )
    value = (
        phase
        / (j[1].dim * k[1].dim * math.sqrt(12.0 * math.pi * vol4 * j[1].dim * k[4].dim))
        * small_d(l[1], kappas[2], etas[2], phi2)
        * small_d(l[2], kappas[3], etas[3], phi2)
        * small_d(j[0], mu, nu, phi_mid)
        * math.cos(
            action4 + QUARTER_PI - float(mu) * theta_j4 - float(nu) * theta_k5
            + math.pi * float(j[0])
        )
    )
    return value, diag


def asym_15j_two_small(sym: Symbol3nj, mark: SmallSpinMarking,
                       caustic_eps: float = DEFAULT_CAUSTIC_EPS):
    """15j with j1, l2 small: two oscillatory tetrahedra (p = 3, 4), two
    distinct sign configurations.  Assumes the combined gluing angles stay
    in [0, pi] (near-regular tetrahedra); raises CaseAngleOutOfRange
    otherwise, in which case the general driver applies."""
    _require_pattern(sym, mark, {2})
    diag = AsymDiagnostics()
    offsets = _wrapper_offsets(sym, {2}, diag)
    if offsets is None:
        return 0.0, diag
    mu, nu, etas, kappas = offsets
    j, k, l = sym.j, sym.k, sym.l

    tet3, vol3, action3 = _oscillatory_tet(sym, 3, caustic_eps, diag)
    tet4, vol4, action4 = _oscillatory_tet(sym, 4, caustic_eps, diag)
    theta3 = dihedral_internal(tet3, "c", caustic_eps)
    theta4 = dihedral_internal(tet4, "c", caustic_eps)

    theta_pp = math.pi - (theta3 + theta4)
    if theta_pp < -1e-12:
        raise CaseAngleOutOfRange(
            f"pi - (theta3 + theta4) = {theta_pp:.4f} < 0: outside the "
            f"near-regular regime; use the general mixed-spin driver"
        )
    theta_pp = max(0.0, theta_pp)
    # Convention theta3 >= theta4; otherwise swap the roles of the two
    # oscillatory tetrahedra in the difference term.
    if theta3 >= theta4:
        action_diff = action3 - action4
        theta_pm = math.pi - (theta3 - theta4)
    else:
        action_diff = action4 - action3
        theta_pm = math.pi - (theta4 - theta3)

    phi_a = triangle_angle(
        edge_length_from_spin(k[0]), edge_length_from_spin(j[2]), edge_length_from_spin(k[2])
    )
    phi_b = triangle_angle(
        edge_length_from_spin(k[0]), edge_length_from_spin(k[4]), edge_length_from_spin(j[4])
    )
    theta_j3_pp, mid_pp, theta_k5_pp = euler_from_glued_triangles(phi_a, theta_pp, phi_b)
    theta_j3_pm, mid_pm, theta_k5_pm = euler_from_glued_triangles(phi_a, theta_pm, phi_b)
    diag.angles.update(
        {"phi_a": phi_a, "phi_b": phi_b, "theta3": theta3, "theta4": theta4,
         "theta_pp": theta_pp, "theta_pm": theta_pm,
         "phi_j3_k5_pp": mid_pp, "phi_j3_k5_pm": mid_pm}
    )

    phi2 = _phi_mid_triangle(sym)
    phase = _int_phase(
        halfint_sum([j[2], l[2], j[3], k[3], l[3], k[4], j[0], mu, 2 * k[0]]),
        "two-small phase",
    )
    wrap = -1.0 if j[0].twice % 2 else 1.0
    bracket = (
        -small_d(j[0], mu, nu, mid_pp)
        * math.sin(action3 + action4 - float(mu) * theta_j3_pp - float(nu) * theta_k5_pp)
        + wrap
        * small_d(j[0], mu, nu, mid_pm)
        * math.cos(action_diff - float(mu) * theta_j3_pm - float(nu) * theta_k5_pm)
    )
    value = (
        phase
        / (24.0 * math.pi * j[2].dim * math.sqrt(k[2].dim * k[4].dim * vol3 * vol4))
        * small_d(l[1], kappas[2], etas[2], phi2)
        * bracket
    )
    return value, diag


def asym_15j_one_small(sym: Symbol3nj, mark: SmallSpinMarking,
                       caustic_eps: float = DEFAULT_CAUSTIC_EPS):
    """15j with only j1 small: three oscillatory tetrahedra (p = 2, 3, 4)
    and four distinct sign configurations, with gluing angles combined
    from the three internal dihedrals at k1 (near-regular regime)."""
    _require_pattern(sym, mark, set())
    diag = AsymDiagnostics()
    offsets = _wrapper_offsets(sym, set(), diag)
    if offsets is None:
        return 0.0, diag
    mu, nu, _, _ = offsets
    j, k, l = sym.j, sym.k, sym.l

    tets = {}
    vols = {}
    actions = {}
    thetas = {}
    for p in (2, 3, 4):
        tets[p], vols[p], actions[p] = _oscillatory_tet(sym, p, caustic_eps, diag)
        thetas[p] = dihedral_internal(tets[p], "c", caustic_eps)
    t2, t3, t4 = thetas[2], thetas[3], thetas[4]
    combos = {
        "ppp": t2 + t3 + t4 - math.pi,
        "ppm": math.pi - t2 - t3 + t4,
        "pmp": math.pi - t2 + t3 - t4,
        "mpp": math.pi + t2 - t3 - t4,
    }
    for name, theta in combos.items():
        if theta < -1e-12 or theta > math.pi + 1e-12:
            raise CaseAngleOutOfRange(
                f"combined angle {name} = {theta:.4f} outside [0, pi]: outside "
                f"the near-regular regime; use the general mixed-spin driver"
            )
        combos[name] = min(math.pi, max(0.0, theta))

    phi_a = triangle_angle(
        edge_length_from_spin(k[0]), edge_length_from_spin(j[1]), edge_length_from_spin(k[1])
    )
    phi_b = triangle_angle(
        edge_length_from_spin(k[0]), edge_length_from_spin(k[4]), edge_length_from_spin(j[4])
    )
    euler = {name: euler_from_glued_triangles(phi_a, theta, phi_b)
             for name, theta in combos.items()}
    diag.angles.update({"phi_a": phi_a, "phi_b": phi_b})
    diag.angles.update({f"theta_{name}": th for name, th in combos.items()})

    s2, s3, s4 = actions[2], actions[3], actions[4]
    pj1 = math.pi * float(j[0])
    terms = []
    for name, signs, extra in (
        ("ppm", (1, 1, -1), QUARTER_PI),
        ("pmp", (1, -1, 1), QUARTER_PI),
        ("mpp", (-1, 1, 1), QUARTER_PI),
    ):
        theta_j2, mid, theta_k5 = euler[name]
        arg = (
            signs[0] * s2 + signs[1] * s3 + signs[2] * s4 + extra
            - float(mu) * theta_j2 - float(nu) * theta_k5 + pj1
        )
        terms.append(small_d(j[0], mu, nu, mid) * math.cos(arg))
    theta_j2, mid, theta_k5 = euler["ppp"]
    arg = (
        s2 + s3 + s4 + 3.0 * QUARTER_PI
        + float(mu) * theta_j2 + float(nu) * theta_k5 + pj1
    )
    terms.append(small_d(j[0], mu, nu, mid) * math.cos(arg))

    phase = _int_phase(
        halfint_sum([j[1], l[1], j[2], k[2], l[2], k[3], j[3], l[3], k[4], -k[0], mu]),
        "one-small phase",
    )
    # The amplitude follows the general driver: 1/(2^2 (12 pi)^(3/2))
    # with the dimension factors of l1 ~ j2 and l5 ~ k5.
    value = (
        phase
        / (48.0 * math.pi * math.sqrt(12.0 * math.pi * j[1].dim * k[4].dim
                                      * vols[2] * vols[3] * vols[4]))
        * sum(terms)
    )
    return value, diag
