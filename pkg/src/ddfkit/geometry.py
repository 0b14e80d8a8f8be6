"""PG(n, q), the cyclic projectivity fixing a hyperplane and a point, and the
parallel-flat construction of partition-type difference families.

Points are tuples of n+1 field element indices normalised so that the last
nonzero coordinate is 1; two tuples are the same point iff they are equal.
H_inf is the hyperplane x_n = 0 and ``inf`` the point (0, ..., 0, 1).
Projectivities act on row vectors from the right.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import (
    FieldSpec,
    Matrix,
    Poly,
    block_diag_one,
    companion_matrix,
    is_invertible,
    is_primitive,
    mat_pow,
    vec_mat,
)
from .ddf import DifferenceFamily, ddf_equivalent, spectrum
from .errors import BadBasePoint, BadK, NotCoprime, NotPrimitive, NotTransitive
from .lfsr import LfsrSpec, impulse_response, lg_construct

Point = tuple[int, ...]


def normalize(field: FieldSpec, coords: Sequence[int]) -> Point:
    for c in reversed(coords):
        if c:
            inv = field.inv(c)
            return tuple(field.mul(inv, x) for x in coords)
    raise ValueError("the zero vector is not a projective point")


def infinity(n: int) -> Point:
    return (0,) * n + (1,)


def all_points(n: int, field: FieldSpec) -> list[Point]:
    """Every point of PG(n, q), each once."""
    out = []
    q = field.q
    for lead in range(n + 1):
        # last nonzero coordinate sits at position ``lead``
        for head in itertools.product(range(q), repeat=lead):
            out.append(tuple(head) + (1,) + (0,) * (n - lead))
    return out


def pg_affine_points(n: int, field: FieldSpec) -> list[Point]:
    """The q^n - 1 points with x_n = 1 other than ``inf``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [
        tuple(head) + (1,)
        for head in itertools.product(range(field.q), repeat=n)
        if any(head)
    ]


@dataclass(frozen=True)
class Projectivity:
    matrix: Matrix

    def __post_init__(self):
        if not is_invertible(self.matrix):
            raise ValueError("projectivity matrix must be invertible")

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    @property
    def dim(self) -> int:
        return self.matrix.shape[0] - 1

    def __call__(self, point: Sequence[int]) -> Point:
        return normalize(self.field, vec_mat(self.field, point, self.matrix))

    def power(self, e: int) -> "Projectivity":
        return Projectivity(mat_pow(self.matrix, e))

    def fixes_frame(self) -> bool:
        """True when H_inf and ``inf`` are both fixed."""
        rows = self.matrix.rows
        n = self.dim
        return all(rows[i][n] == 0 for i in range(n)) and all(rows[n][j] == 0 for j in range(n))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "Projectivity":
        return cls(Matrix.from_ints(field, rows))


def projectivity_from_poly(fpoly: Poly) -> Projectivity:
    """diag(C, 1) with C the companion matrix of a primitive ``fpoly``."""
    if fpoly.coeffs[0] == 0 or not is_primitive(fpoly):
        raise NotPrimitive(f"{fpoly} is not primitive")
    return Projectivity(block_diag_one(companion_matrix(fpoly)))


def coordinate_frame(field: FieldSpec, n: int, order: Sequence[int]) -> Projectivity:
    """Permutation frame with new coordinate j equal to old coordinate order[j].

    ``order`` permutes 0..n-1; the last coordinate is left alone.
    """
    if sorted(order) != list(range(n)):
        raise ValueError(f"{list(order)} does not permute 0..{n - 1}")
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    for j, src in enumerate(order):
        rows[src][j] = 1
    rows[n][n] = 1
    return Projectivity(Matrix(field, tuple(tuple(r) for r in rows)))


def frame_for_direction(field: FieldSpec, n: int, direction: Sequence[int]) -> Projectivity:
    """Frame whose line class (k = n-1) runs through the unit point ``direction`` of H_inf.

    The free coordinate of each line becomes the last affine coordinate, so
    (0, ..., 0, 1, 0) gives the identity frame.
    """
    direction = tuple(direction)
    nz = [i for i, x in enumerate(direction) if x]
    if len(direction) != n + 1 or direction[n] != 0 or len(nz) != 1:
        raise BadBasePoint(f"{list(direction)} is not a coordinate point of H_inf")
    j = nz[0]
    return coordinate_frame(field, n, [i for i in range(n) if i != j] + [j])


# --------------------------------------------------------------------------
# orbit indexing
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitIndex:
    """Bijection between the affine points other than ``inf`` and Z_{q^n-1}."""

    tau: Projectivity
    base: Point
    points: tuple[Point, ...]
    index: dict = dc_field(compare=False, hash=False, repr=False)

    def __getitem__(self, point: Point) -> int:
        return self.index[tuple(point)]


def orbit_index(tau: Projectivity, base: Sequence[int]) -> OrbitIndex:
    field, n = tau.field, tau.dim
    base = normalize(field, base)
    if base[n] == 0 or base == infinity(n):
        raise BadBasePoint(f"{list(base)} is not an affine point other than inf")
    v = field.q ** n - 1
    pts = [base]
    cur = tau(base)
    while cur != base:
        pts.append(cur)
        if len(pts) > v:
            raise NotTransitive("orbit of the base point leaves the affine part")
        cur = tau(cur)
    if len(pts) != v:
        raise NotTransitive(f"orbit of the base point has {len(pts)} points, not {v}")
    return OrbitIndex(tau, base, tuple(pts), {p: i for i, p in enumerate(pts)})


# --------------------------------------------------------------------------
# parallel classes of affine flats
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ParallelClass:
    """Fibres of the affine points under "first k coordinates (after a frame)".

    Each fibre is an (n-k)-dimensional affine flat; all of them share the same
    (n-k-1)-flat at infinity.  Classes are ordered by their key tuple, key 0
    first; ``inf`` is left out of class 0.
    """

    k: int
    keys: tuple[tuple[int, ...], ...]
    classes: tuple[frozenset[Point], ...]


def parallel_class(
    n: int, field: FieldSpec, k: int, frame: Projectivity | None = None
) -> ParallelClass:
    if not 1 <= k <= n - 1:
        raise BadK(f"k must satisfy 1 <= k <= n-1 = {n - 1}, got {k}")
    if frame is not None and not frame.fixes_frame():
        raise ValueError("frame must fix H_inf and inf")
    fibres: dict[tuple[int, ...], set[Point]] = {}
    for pt in pg_affine_points(n, field):
        image = frame(pt) if frame is not None else pt
        fibres.setdefault(image[:k], set()).add(pt)
    keys = tuple(sorted(fibres))
    return ParallelClass(k, keys, tuple(frozenset(fibres[key]) for key in keys))


def fmm_construct(
    field: FieldSpec,
    n: int,
    k: int,
    fpoly: Poly | None = None,
    base: Sequence[int] | None = None,
    frame: Projectivity | None = None,
    tau: Projectivity | None = None,
) -> DifferenceFamily:
    """Partition-type family from a parallel class of (n-k)-flats.

    Points are numbered along the orbit of ``base`` under ``tau`` (default:
    diag(C, 1) for ``fpoly``), and each flat of the class becomes the set of
    its point numbers.  ``base`` defaults to the LFSR impulse state
    (0, ..., 0, 1, 1).
    """
    if tau is None:
        if fpoly is None:
            raise ValueError("need a primitive polynomial or an explicit projectivity")
        tau = projectivity_from_poly(fpoly)
    if base is None:
        base = (0,) * (n - 1) + (1, 1)
    idx = orbit_index(tau, base)
    pc = parallel_class(n, field, k, frame)
    return DifferenceFamily(
        field.q ** n - 1, tuple(tuple(sorted(idx[p] for p in cls)) for cls in pc.classes)
    )


def multiplier_of_generator(
    field: FieldSpec,
    n: int,
    k: int,
    fpoly: Poly,
    i: int,
    base: Sequence[int] | None = None,
    frame: Projectivity | None = None,
    tau: Projectivity | None = None,
) -> int:
    """Least unit w with w * (family from tau) = (family from tau^i)."""
    v = field.q ** n - 1
    if math.gcd(i, v) != 1:
        raise NotCoprime(f"gcd({i}, {v}) != 1")
    if tau is None:
        tau = projectivity_from_poly(fpoly)
    f1 = fmm_construct(field, n, k, base=base, frame=frame, tau=tau)
    f2 = fmm_construct(field, n, k, base=base, frame=frame, tau=tau.power(i % v))
    hit = ddf_equivalent(f1, f2, offsets=[0])
    if hit is None:
        raise RuntimeError("generator change did not act as a multiplier")
    return hit[0]


def multiplier_pairing(
    f1: DifferenceFamily, f2: DifferenceFamily, w: int
) -> tuple[int, ...] | None:
    """pi with f2.classes[i] = w * f1.classes[pi[i]] for every i, else None."""
    lookup = {frozenset(c): j for j, c in enumerate(f1.classes)}
    pi = []
    for cls in f2.classes:
        j = lookup.get(frozenset((x * pow(w, -1, f1.v)) % f1.v for x in cls))
        if j is None:
            return None
        pi.append(j)
    return tuple(pi)


def relabel_by_least(f: DifferenceFamily) -> tuple[int, ...]:
    """Class order that sorts ``f`` by least element (class 0 stays first)."""
    rest = sorted(range(1, f.q), key=lambda i: f.classes[i][0])
    return (0, *rest)


def reorder(f: DifferenceFamily, order: Sequence[int]) -> DifferenceFamily:
    return DifferenceFamily(f.v, tuple(f.classes[i] for i in order))


# --------------------------------------------------------------------------
# LFSR <-> geometry correspondence
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrespondenceReport:
    states_match: bool
    families_equal: bool
    translations_ok: bool

    @property
    def ok(self) -> bool:
        return self.states_match and self.families_equal and self.translations_ok

    def __bool__(self) -> bool:
        return self.ok


def correspondence_report(field: FieldSpec, n: int, k: int, fpoly: Poly) -> CorrespondenceReport:
    """Compare the sigma_k family with the parallel-flat family for ``fpoly``.

    Three checks: tau carries P_t = (s_t, ..., s_{t+n-1}, 1) to P_{t+1} along
    the whole impulse response; the two families coincide as sets of classes;
    re-basing the geometry at P_0^{tau^d} translates every class by -d.
    """
    tau = projectivity_from_poly(fpoly)
    v = field.q ** n - 1
    s = impulse_response(LfsrSpec.from_poly(fpoly), v + n)
    states = [tuple(s[t : t + n]) + (1,) for t in range(v)]
    idx = orbit_index(tau, states[0])
    states_match = all(idx[p] == t for t, p in enumerate(states))

    _, lg_family = lg_construct(field, n, k, fpoly)
    geo = fmm_construct(field, n, k, base=states[0], tau=tau)
    families_equal = lg_family.same_classes(geo)

    translations_ok = True
    for d in sorted({1, v // 2, v - 1}):
        moved = fmm_construct(field, n, k, base=states[d % v], tau=tau)
        if not moved.same_classes(geo.translate(-d)):
            translations_ok = False
    return CorrespondenceReport(states_match, families_equal, translations_ok)


def correspondence_check(field: FieldSpec, n: int, k: int, fpoly: Poly) -> bool:
    return correspondence_report(field, n, k, fpoly).ok


# --------------------------------------------------------------------------
# line-orbit intersection verifier
# --------------------------------------------------------------------------

@dataclass
class IntersectionReport:
    q: int
    n: int
    type_one: list[int] = dc_field(default_factory=list)
    type_two: list[int] = dc_field(default_factory=list)
    external: dict[int, int] = dc_field(default_factory=dict)
    violations: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "type_I": self.type_one,
            "type_II_count": len(self.type_two),
            "external": sorted(set(self.external.values())),
            "violations": self.violations,
        }


def _point_perm(tau: Projectivity, pts: list[Point]) -> dict[Point, Point]:
    return {p: tau(p) for p in pts}


def verify_orbit_intersections(field: FieldSpec, n: int, fpoly: Poly) -> IntersectionReport:
    """Check the line-orbit structure of the cyclic projectivity exhaustively.

    Uses the parallel class of affine lines through (0, ..., 0, 1, 0).  For
    every nonzero d it decides whether tau^d fixes the line L_0 through
    ``inf`` (type I) or not (type II) and checks the projective intersections
    L_i^{tau^d} & L_i as well as the affine cross counts
    |(Q_i + d) & Q_j| that make up the external differences.
    """
    q = field.q
    v = q ** n - 1
    rep = IntersectionReport(q, n)
    bad = rep.violations.append

    tau = projectivity_from_poly(fpoly)
    pts = all_points(n, field)
    inf = infinity(n)
    p_inf = (0,) * (n - 1) + (1, 0)
    step = _point_perm(tau, pts)

    # point orbits: {inf}, H_inf, and one regular orbit on the rest
    seen: set[Point] = set()
    orbits = []
    for p in pts:
        if p in seen:
            continue
        orb = [p]
        seen.add(p)
        x = step[p]
        while x != p:
            orb.append(x)
            seen.add(x)
            x = step[x]
        orbits.append(frozenset(orb))
    h_inf = frozenset(p for p in pts if p[n] == 0)
    affine = frozenset(p for p in pts if p[n] != 0 and p != inf)
    if frozenset({inf}) not in orbits:
        bad("orbit: inf is not fixed")
    if affine not in orbits:
        bad("orbit: affine points do not form a single orbit")
    if set(orbits) - {frozenset({inf}), affine} != {h_inf} and set(orbits) - {frozenset({inf}), affine}:
        bad("orbit: H_inf is not a single orbit")

    idx = orbit_index(tau, (0,) * (n - 1) + (1, 1))
    pc = parallel_class(n, field, n - 1)
    lines = [frozenset(cls | {p_inf}) for cls in pc.classes]
    lines[0] = lines[0] | {inf}
    qsets = [frozenset(idx[p] for p in cls) for cls in pc.classes]
    m = len(lines)

    # line orbits of the parallel class under <tau>
    orbit_of: dict[int, int] = {}
    line_pos = {ln: i for i, ln in enumerate(lines)}
    for i, ln in enumerate(lines[1:], start=1):
        if i in orbit_of:
            continue
        cur = ln
        for _ in range(v):
            cur = frozenset(step[p] for p in cur)
            j = line_pos.get(cur)
            if j is not None and j not in orbit_of:
                orbit_of[j] = i
    groups: dict[int, list[int]] = {}
    for j, rep_i in orbit_of.items():
        groups.setdefault(rep_i, []).append(j)
    if len(groups) != (q ** (n - 1) - 1) // (q - 1):
        bad(f"line orbits: {len(groups)} orbits meet the parallel class")
    if any(len(g) != q - 1 for g in groups.values()):
        bad("line orbits: some orbit does not contribute q-1 parallel lines")

    power = dict(step)
    for d in range(1, v):
        if d > 1:
            power = {p: step[power[p]] for p in pts}
        images = [frozenset(power[p] for p in ln) for ln in lines]
        fixes_l0 = images[0] == lines[0]
        (rep.type_one if fixes_l0 else rep.type_two).append(d)
        shifted = [frozenset((x + d) % v for x in s) for s in qsets]
        cross = [[len(shifted[i] & qsets[j]) for j in range(m)] for i in range(m)]
        rep.external[d] = sum(cross[i][j] for i in range(m) for j in range(m) if i != j)

        if fixes_l0:
            for i in range(1, m):
                if images[i] & lines[i] != {p_inf}:
                    bad(f"type I d={d}: L_{i} meets its image in {len(images[i] & lines[i])} points")
            for i in range(1, m):
                if cross[0][i] or cross[i][0]:
                    bad(f"type I d={d}: Q_0 meets Q_{i}")
            full = [(i, j) for i in range(1, m) for j in range(1, m) if i != j and cross[i][j]]
            if any(cross[i][j] != q for i, j in full):
                bad(f"type I d={d}: partial line overlap")
            if len(full) != q ** (n - 1) - 1:
                bad(f"type I d={d}: {len(full)} full overlaps, expected {q ** (n - 1) - 1}")
        else:
            if images[0] & lines[0] != {inf}:
                bad(f"type II d={d}: L_0 meets its image outside inf")
            selfs = [i for i in range(1, m) if len(images[i] & lines[i]) == 1]
            if any(len(images[i] & lines[i]) > 1 for i in range(1, m)):
                bad(f"type II d={d}: a line meets its image twice")
            if len(selfs) != q - 1:
                bad(f"type II d={d}: {len(selfs)} self-intersections, expected {q - 1}")
            elif len({orbit_of[i] for i in selfs}) != 1:
                bad(f"type II d={d}: self-intersections spread over several orbits")
            if any(c > 1 for row in cross for c in row):
                bad(f"type II d={d}: two points of one class land in one class")
            hits0 = sum(1 for i in range(1, m) if cross[0][i] == 1)
            if hits0 != q - 1:
                bad(f"type II d={d}: Q_0 meets {hits0} classes, expected {q - 1}")
            units = sum(cross[i][j] for i in range(1, m) for j in range(m))
            if units != (q ** (n - 1) - 1) * q:
                bad(f"type II d={d}: {units} unit intersections, expected {(q ** (n - 1) - 1) * q}")
            own = sum(cross[i][i] for i in range(1, m))
            if own != q - 1:
                bad(f"type II d={d}: {own} self unit intersections, expected {q - 1}")
        if rep.external[d] != q * (q ** (n - 1) - 1):
            bad(f"d={d}: |E(d)| = {rep.external[d]}, expected {q * (q ** (n - 1) - 1)}")

    if len(rep.type_one) != q - 2:
        bad(f"{len(rep.type_one)} type I differences, expected {q - 2}")
    # cross-check the external tally against the spectrum routine
    fam = DifferenceFamily(v, tuple(tuple(sorted(s)) for s in qsets))
    ext = spectrum(fam).external
    if any(ext[d] != rep.external[d] for d in range(1, v)):
        bad("external tally disagrees with the difference spectrum")
    return rep
