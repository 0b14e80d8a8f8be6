"""Reference vectors with known answers, and a runner that recomputes them.

Every check returns ``(ok, detail)``; :func:`run_golden` collects them by
identifier.  ``taps`` lets a caller feed a deliberately wrong register to
see the sequence vectors fail.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import (
    Poly,
    companion_matrix,
    enumerate_primitive,
    euler_phi,
    field_make,
    is_primitive,
    poly_from_taps,
)
from .ddf import classify, ddf_equivalent, ddf_new, spectrum, application_predicates
from .fhs import (
    Fhs,
    Permutation,
    conjugate_shift,
    ddf_to_fhs,
    fhs_equivalent,
    fhs_to_ddf,
    is_in_normalizer,
    max_auto,
    min_distance,
    normalizer_elements,
    phi_gamma,
    rotate,
    rotational_closure,
)
from .geometry import (
    Projectivity,
    correspondence_check,
    fmm_construct,
    frame_for_direction,
    multiplier_of_generator,
    multiplier_pairing,
    projectivity_from_poly,
    relabel_by_least,
    reorder,
    verify_orbit_intersections,
)
from .lfsr import LfsrSpec, impulse_response, is_m_sequence, lg_construct, lg_transform

# --- LFSR example over GF(3): s_{t+3} = 2 s_t + s_{t+2} ----------------------
LFSR_TAPS = (2, 0, 1)
IMPULSE = "00111021121010022201221202"
SIGMA3 = (9, 12, 13, 4, 19, 15, 14, 22, 16, 5, 10, 3, 1, 18, 24, 26, 8, 11, 21, 25, 17, 23, 7, 20, 6, 2)
SIGMA2 = (0, 3, 4, 4, 1, 6, 5, 4, 7, 5, 1, 3, 1, 0, 6, 8, 8, 2, 3, 7, 8, 5, 7, 2, 6, 2)
SIGMA1 = (0, 0, 1, 1, 1, 0, 2, 1, 1, 2, 1, 0, 1, 0, 0, 2, 2, 2, 0, 1, 2, 2, 1, 2, 0, 2)
LG_K2 = (
    (0, 13), (1, 11, 18), (5, 14, 24), (4, 10, 12), (2, 3, 7),
    (8, 19, 22), (17, 23, 25), (6, 9, 21), (15, 16, 20),
)
LG_K1 = (
    (0, 1, 5, 11, 13, 14, 18, 24),
    (2, 3, 4, 7, 8, 10, 12, 19, 22),
    (6, 9, 15, 16, 17, 20, 21, 23, 25),
)
STATE_MATRIX = ((0, 0, 2), (1, 0, 0), (0, 1, 1))

# --- geometric example: f = x^3 - x^2 - 2x - 2 --------------------------------
GEO_POLY = "x^3-x^2-2x-2"
GEO_C = ((0, 0, 2), (1, 0, 2), (0, 1, 1))
# the 4x4 matrix written out for the example; same characteristic polynomial
# as the companion form but a different basis
GEO_A = ((0, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0), (0, 0, 0, 1))
GEO_Q = (
    (0, 13), (1, 19, 4), (2, 22, 23), (3, 5, 12), (6, 14, 17),
    (7, 11, 21), (8, 24, 20), (9, 10, 15), (16, 18, 25),
)
GEO_Q5 = (
    (0, 13), (6, 9, 21), (16, 20, 15), (11, 1, 18), (22, 8, 19),
    (17, 23, 25), (12, 10, 4), (2, 3, 7), (24, 14, 5),
)
GEO_Q5_PAIRING = (0, 3, 4, 7, 8, 5, 6, 1, 2)
GEO_W = 7
GEO_QPP = (
    (10, 23), (1, 24, 16), (2, 0, 9), (3, 14, 11), (4, 8, 18),
    (5, 17, 21), (6, 7, 12), (13, 15, 22), (19, 20, 25),
)

# --- small families ------------------------------------------------------------
EX11 = (7, ((0, 1, 3), (2, 4, 5, 6)))
EX12 = (25, ((1, 2, 3, 4, 6, 15), (5, 9, 10, 14, 17, 24)))
EX12_INTERNAL = {
    d: 4 if d in (1, 24) else 2 if d in (7, 9, 10, 15, 16, 18) else 1 if d in (6, 8, 17, 19) else 3
    for d in range(1, 25)
}
Z5_F1 = (5, ((1,), (0, 2), (3, 4)))
Z5_F2 = (5, ((0,), (1, 4), (2, 3)))

# --- hopping sequences ---------------------------------------------------------
W7 = (0, 0, 0, 1, 0, 1, 1)
W7_ROT = (
    (0, 0, 0, 1, 0, 1, 1), (1, 0, 0, 0, 1, 0, 1), (1, 1, 0, 0, 0, 1, 0),
    (0, 1, 1, 0, 0, 0, 1), (1, 0, 1, 1, 0, 0, 0), (0, 1, 0, 1, 1, 0, 0),
    (0, 0, 1, 0, 1, 1, 0),
)
W5 = (1, 1, 2, 3, 2)
W5_IMAGE = (3, 1, 2, 2, 1)


@dataclass(frozen=True)
class GoldenResult:
    ident: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"id": self.ident, "ok": self.ok, "detail": self.detail}


def _eq(got, want) -> tuple[bool, str]:
    return got == want, "" if got == want else f"got {got!r}, want {want!r}"


def _family_set(classes) -> frozenset:
    return frozenset(frozenset(c) for c in classes)


def _gf3():
    return field_make(3)


def check_impulse(taps) -> tuple[bool, str]:
    s = impulse_response(LfsrSpec(_gf3(), taps), 26)
    return _eq("".join(map(str, s)), IMPULSE)


def check_m_sequence(taps) -> tuple[bool, str]:
    spec = LfsrSpec(_gf3(), taps)
    return _eq(is_m_sequence(spec), True)


def check_sigma(taps, k, want) -> tuple[bool, str]:
    spec = LfsrSpec(_gf3(), taps)
    try:
        got = lg_transform(spec, k).symbols
    except Exception as exc:  # a corrupted register is not primitive
        return False, f"{type(exc).__name__}: {exc}"
    return _eq(tuple(got), want)


def check_lg_family(taps, k, want) -> tuple[bool, str]:
    F = _gf3()
    try:
        _, fam = lg_construct(F, 3, k, poly_from_taps(F, taps), order="window")
    except Exception as exc:
        return False, f"{type(exc).__name__}: {exc}"
    return _eq(fam.classes, tuple(tuple(sorted(c)) for c in want))


def check_state_matrix() -> tuple[bool, str]:
    F = _gf3()
    return _eq(companion_matrix(poly_from_taps(F, LFSR_TAPS)).to_list(), [list(r) for r in STATE_MATRIX])


def check_geo_companion() -> tuple[bool, str]:
    F = _gf3()
    return _eq(companion_matrix(Poly.parse(F, GEO_POLY)).to_list(), [list(r) for r in GEO_C])


def check_primitive_examples() -> tuple[bool, str]:
    F = _gf3()
    got = (is_primitive(Poly.parse(F, "x^3-x^2-2")), is_primitive(Poly.parse(F, GEO_POLY)))
    return _eq(got, (True, True))


def _geo_setup():
    F = _gf3()
    f = Poly.parse(F, GEO_POLY)
    return F, f, frame_for_direction(F, 3, (1, 0, 0, 0))


def check_geo_table() -> tuple[bool, str]:
    F, f, frame = _geo_setup()
    fam = fmm_construct(F, 3, 2, f, base=(1, 0, 0, 1), frame=frame)
    fam = reorder(fam, relabel_by_least(fam))
    return _eq(fam.classes, tuple(tuple(sorted(c)) for c in GEO_Q))


def check_geo_explicit_matrix() -> tuple[bool, str]:
    F, f, frame = _geo_setup()
    A = Projectivity.from_rows(F, GEO_A)
    fam = fmm_construct(F, 3, 2, base=(1, 0, 0, 1), frame=frame, tau=A)
    return _eq(fam.as_set(), _family_set(GEO_Q))


def check_geo_multiplier() -> tuple[bool, str]:
    F, f, frame = _geo_setup()
    w = multiplier_of_generator(F, 3, 2, f, 5, base=(1, 0, 0, 1), frame=frame)
    if w != GEO_W:
        return False, f"w = {w}, want {GEO_W}"
    tau = projectivity_from_poly(f)
    q1 = fmm_construct(F, 3, 2, base=(1, 0, 0, 1), frame=frame, tau=tau)
    q5 = fmm_construct(F, 3, 2, base=(1, 0, 0, 1), frame=frame, tau=tau.power(5))
    order = relabel_by_least(q1)
    q1, q5 = reorder(q1, order), reorder(q5, order)
    ok, detail = _eq(q5.classes, tuple(tuple(sorted(c)) for c in GEO_Q5))
    if not ok:
        return ok, "tau^5 family: " + detail
    return _eq(multiplier_pairing(q1, q5, w), GEO_Q5_PAIRING)


def check_geo_other_direction() -> tuple[bool, str]:
    F, f, _ = _geo_setup()
    A = Projectivity.from_rows(F, GEO_A)
    fam = fmm_construct(F, 3, 2, base=(1, 0, 0, 1), frame=frame_for_direction(F, 3, (0, 0, 1, 0)), tau=A)
    ok, detail = _eq(fam.as_set(), _family_set(GEO_QPP))
    if not ok:
        return ok, detail
    return _eq(fam.as_set(), ddf_new(26, GEO_Q).translate(10).as_set())


def check_geo_state_base() -> tuple[bool, str]:
    F, f, frame = _geo_setup()
    fam = fmm_construct(F, 3, 2, f, base=(0, 0, 1, 1), frame=frame)
    return _eq(fam.as_set(), ddf_new(26, GEO_Q).translate(-1).as_set())


def check_lg_equals_geometry() -> tuple[bool, str]:
    F = _gf3()
    f = Poly.parse(F, "x^3-x^2-2")
    fam = fmm_construct(F, 3, 2, f, base=(0, 0, 1, 1))
    ok, detail = _eq(fam.classes, LG_K2)
    return (ok, detail) if not ok else _eq(correspondence_check(F, 3, 1, f), True)


def check_verifier() -> tuple[bool, str]:
    F = _gf3()
    rep = verify_orbit_intersections(F, 3, Poly.parse(F, "x^3-x^2-2"))
    got = (rep.ok, len(rep.type_one), len(rep.type_two), set(rep.external.values()))
    return _eq(got, (True, 1, 24, {24}))


def check_ex11() -> tuple[bool, str]:
    f = ddf_new(*EX11)
    sp = spectrum(f)
    ok = (
        set(sp.internal.values()) == {3}
        and set(sp.external.values()) == {4}
        and {sp.internal_by_class[(0, d)] for d in range(1, 7)} == {1}
        and {sp.internal_by_class[(1, d)] for d in range(1, 7)} == {2}
        and set(sp.external_by_class.values()) == {2}
    )
    cl = classify(f, sp)
    ok = ok and cl.partition_type and cl.perfect_internal and cl.perfect_external and not cl.uniform
    single = application_predicates(ddf_new(7, [EX11[1][0]]))
    ok = ok and single.bounded_lambda == 1
    return ok, "" if ok else "complement-pair spectrum mismatch"


def check_ex12() -> tuple[bool, str]:
    f = ddf_new(*EX12)
    sp = spectrum(f)
    if set(sp.external.values()) != {3}:
        return False, f"external {sp.external}"
    cl = classify(f, sp)
    if not cl.perfect_external or cl.perfect_internal:
        return False, f"classification {cl}"
    return _eq(sp.internal, EX12_INTERNAL)


def check_z5_equivalence() -> tuple[bool, str]:
    return _eq(ddf_equivalent(ddf_new(*Z5_F1), ddf_new(*Z5_F2), multipliers=[1]), (1, 4))


def check_words() -> tuple[bool, str]:
    rho = Permutation.rho(7)
    g = Permutation.from_cycles("(2 4 3 7 5 6)", 7)
    got = (
        max_auto(W7),
        max_auto((1, 0, 0, 1, 0, 1, 0)),
        tuple(rotate(W7, rho)),
        tuple(rotate(W7, g)),
        rotational_closure(Fhs.of([W7])).words == frozenset(W7_ROT),
        min_distance(rotational_closure(Fhs.of([W7]))),
    )
    return _eq(got, (3, 5, (1, 0, 0, 0, 1, 0, 1), (0, 1, 1, 0, 1, 0, 0), True, 4))


def check_normalizer() -> tuple[bool, str]:
    g = Permutation.from_cycles("(2 5 3)(4 6 7)", 7)
    rho = Permutation.rho(7)
    elems = normalizer_elements(7)
    got = (
        is_in_normalizer(g),
        g * rho * g.inverse() == rho ** 2,
        phi_gamma(g).a,
        len(elems),
        Permutation.from_cycles("(2 4 3 7 5 6)", 7) in elems,
        is_in_normalizer(Permutation.from_cycles("(1 2)", 7)),
    )
    return _eq(got, (True, True, 4, 42, True, False))


def check_phi_z5() -> tuple[bool, str]:
    g = Permutation.from_cycles("(1 5 3 4)", 5)
    ap = phi_gamma(g)
    got = (
        conjugate_shift(g).cycle_string(),
        (ap.a, ap.b),
        tuple(rotate(W5, g)),
        fhs_to_ddf(W5)[0].classes,
        fhs_to_ddf(rotate(W5, g))[0].same_classes(fhs_to_ddf(W5)[0].affine_image(ap.a, ap.b)),
    )
    return _eq(got, ("(1 3 5 2 4)", (2, 4), W5_IMAGE, ((0, 1), (2, 4), (3,)), True))


def check_fhs_ddf() -> tuple[bool, str]:
    word = (0, 0, 1, 0, 1, 1, 1)
    got = (fhs_to_ddf(word)[0].classes, tuple(ddf_to_fhs(ddf_new(*EX11)).symbols))
    return _eq(got, (EX11[1], word))


def check_fhs_equivalence() -> tuple[bool, str]:
    a = fhs_equivalent(Fhs.of([W5]), Fhs.of([W5_IMAGE]))
    b = fhs_equivalent(Fhs.of([W7]), Fhs.of([(0, 1, 1, 0, 1, 0, 0)]))
    return (a is not None and b is not None), "" if a and b else "no witness"


PRIMITIVE_GRID = tuple(
    [(2, n) for n in range(1, 6)] + [(3, n) for n in range(1, 4)] + [(4, 1), (4, 2), (5, 1), (5, 2)]
)


def check_primitive_counts() -> tuple[bool, str]:
    bad = []
    for q, n in PRIMITIVE_GRID:
        F = field_make(2, 2) if q == 4 else field_make(q)
        got = len(enumerate_primitive(F, n))
        if got != euler_phi(q ** n - 1) // n:
            bad.append(f"q={q} n={n}: {got}")
    return not bad, "; ".join(bad)


def correspondence_grid() -> list[tuple[str, object, int, int, Poly]]:
    """Every (field, n, k, f) with q^n - 1 <= 80 over GF(2), GF(3), GF(4), GF(5)."""
    out = []
    for label, F in (("2", field_make(2)), ("3", field_make(3)), ("4", field_make(2, 2)), ("5", field_make(5))):
        n = 2
        while F.q ** n - 1 <= 80:
            for f in enumerate_primitive(F, n):
                for k in range(1, n):
                    out.append((label, F, n, k, f))
            n += 1
    return out


def check_correspondence_grid() -> tuple[bool, str]:
    bad = [
        f"GF({lab}) n={n} k={k} f={f}"
        for lab, F, n, k, f in correspondence_grid()
        if not correspondence_check(F, n, k, f)
    ]
    return not bad, "; ".join(bad[:5])


def checks(taps: Sequence[int] = LFSR_TAPS) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    taps = tuple(taps)
    return [
        ("lfsr.impulse_response", lambda: check_impulse(taps)),
        ("lfsr.m_sequence", lambda: check_m_sequence(taps)),
        ("lfsr.sigma3", lambda: check_sigma(taps, 3, SIGMA3)),
        ("lfsr.sigma2", lambda: check_sigma(taps, 2, SIGMA2)),
        ("lfsr.sigma1", lambda: check_sigma(taps, 1, SIGMA1)),
        ("lfsr.family_k2", lambda: check_lg_family(taps, 2, LG_K2)),
        ("lfsr.family_k1", lambda: check_lg_family(taps, 1, LG_K1)),
        ("algebra.state_matrix", check_state_matrix),
        ("algebra.geometry_companion", check_geo_companion),
        ("algebra.primitive_examples", check_primitive_examples),
        ("algebra.primitive_counts", check_primitive_counts),
        ("geometry.table", check_geo_table),
        ("geometry.explicit_matrix", check_geo_explicit_matrix),
        ("geometry.multiplier", check_geo_multiplier),
        ("geometry.other_direction", check_geo_other_direction),
        ("geometry.state_base", check_geo_state_base),
        ("geometry.lfsr_match", check_lg_equals_geometry),
        ("geometry.verifier", check_verifier),
        ("geometry.correspondence_grid", check_correspondence_grid),
        ("ddf.example_1_1", check_ex11),
        ("ddf.example_1_2", check_ex12),
        ("ddf.z5_translation", check_z5_equivalence),
        ("fhs.words", check_words),
        ("fhs.normalizer", check_normalizer),
        ("fhs.phi_z5", check_phi_z5),
        ("fhs.word_family", check_fhs_ddf),
        ("fhs.equivalence", check_fhs_equivalence),
    ]


def run_golden(taps: Sequence[int] = LFSR_TAPS) -> list[GoldenResult]:
    out = []
    for ident, fn in checks(taps):
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(GoldenResult(ident, bool(ok), detail))
    return out


def timed_golden(taps: Sequence[int] = LFSR_TAPS) -> tuple[list[GoldenResult], float]:
    t0 = time.perf_counter()
    res = run_golden(taps)
    return res, time.perf_counter() - t0
