"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line; the lines are printed as they happen
(visible with ``-s``) and again in the terminal summary.
"""
import contextlib
import itertools
import random
import time

from ddfkit.algebra import enumerate_primitive, euler_phi, field_make
from ddfkit.ddf import classify, ddf_new, spectrum
from ddfkit.fhs import (
    Fhs,
    Permutation,
    apply_to_scheme,
    fhs_to_ddf,
    is_rotationally_closed,
    max_auto,
    max_correlation,
    min_distance,
    normalizer_elements,
    phi_gamma,
    rotate,
    rotation_distance,
    rotational_closure,
)
from ddfkit.geometry import correspondence_check, verify_orbit_intersections
from ddfkit.golden import (
    EX11,
    EX12,
    EX12_INTERNAL,
    PRIMITIVE_GRID,
    W5,
    W5_IMAGE,
    checks,
    correspondence_grid,
)
from ddfkit.lfsr import lg_construct

RESULTS: dict[int, str] = {}


@contextlib.contextmanager
def criterion(num, title):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"criterion {num:2d} FAIL  {title}  ({type(exc).__name__})"
        RESULTS[num] = line
        print("\n" + line)
        raise
    line = f"criterion {num:2d} PASS  {title}  [{time.perf_counter() - t0:.2f}s]"
    RESULTS[num] = line
    print("\n" + line)


def _run_checks(prefixes):
    bad = []
    for ident, fn in checks():
        if ident.startswith(prefixes):
            ok, detail = fn()
            if not ok:
                bad.append(f"{ident}: {detail}")
    return bad


def test_criterion_01_lfsr_golden():
    with criterion(1, "LFSR golden vectors, under 1 s"):
        t0 = time.perf_counter()
        bad = _run_checks(("lfsr.",))
        elapsed = time.perf_counter() - t0
        assert not bad, bad
        assert elapsed < 1.0, elapsed


def test_criterion_02_geometry_golden():
    names = (
        "geometry.table",
        "geometry.explicit_matrix",
        "geometry.multiplier",
        "geometry.other_direction",
        "geometry.state_base",
    )
    with criterion(2, "geometry golden vectors, under 1 s"):
        t0 = time.perf_counter()
        bad = _run_checks(names)
        elapsed = time.perf_counter() - t0
        assert not bad, bad
        assert elapsed < 1.0, elapsed


GRID = correspondence_grid()


def test_criterion_03_correspondence():
    with criterion(3, f"LG and FMM families coincide on {len(GRID)} cases"):
        labels = {lab for lab, *_ in GRID}
        assert labels == {"2", "3", "4", "5"}
        cubics = [c for c in GRID if c[0] == "3" and c[2] == 3]
        assert len(cubics) == 4 * 2
        bad = [(lab, n, k, str(f)) for lab, F, n, k, f in GRID if not correspondence_check(F, n, k, f)]
        assert not bad, bad


def test_criterion_04_spectrum_laws():
    with criterion(4, "partition type with constant internal and external spectra"):
        for _, F, n, k, f in GRID:
            q = F.q
            _, fam = lg_construct(F, n, k, f)
            sp = spectrum(fam)
            lam = q ** (n - k) - 1
            assert classify(fam, sp).partition_type
            assert set(sp.internal.values()) == {lam}
            assert set(sp.external.values()) == {q ** n - 1 - lam}
            if k == 1:
                assert set(sp.external.values()) == {q ** (n - 1) * (q - 1)}
            if k == n - 1:
                # classes are affine lines
                assert set(sp.external.values()) == {q * (q ** (n - 1) - 1)}


def test_criterion_05_example_spectra():
    with criterion(5, "example spectra"):
        f = ddf_new(*EX11)
        sp = spectrum(f)
        assert set(sp.internal.values()) == {3}
        assert set(sp.external.values()) == {4}
        g = ddf_new(*EX12)
        sp = spectrum(g)
        assert set(sp.external.values()) == {3}
        assert sp.internal == EX12_INTERNAL


def _random_word(rng, n, q):
    return tuple(rng.randrange(q) for _ in range(n))


def _edge_word(n):
    return (1, 1) + (0,) * (n - 2)


def test_criterion_06_rotation_theorems():
    rng = random.Random(20240601)
    with criterion(6, "closure distance theorems and normalizer closure"):
        for _ in range(500):
            n, q = rng.randint(2, 12), rng.randint(2, 4)
            w = _random_word(rng, n, q)
            S = Fhs.of([w], q)
            rot = rotational_closure(S)
            h = max_auto(w)
            assert h == n - rotation_distance(S)
            if rot.M < n:
                assert h == n
            else:
                assert h == n - min_distance(rot)
        for _ in range(100):
            n, q, M = rng.randint(2, 12), rng.randint(2, 4), rng.randint(1, 3)
            S = Fhs.of([_random_word(rng, n, q) for _ in range(M)], q)
            rot = rotational_closure(S)
            assert max_correlation(S) == n - rotation_distance(S)
            if rot.M == S.M * n:
                assert max_correlation(S) == n - min_distance(rot)
            for g in normalizer_elements(n):
                assert is_rotationally_closed(apply_to_scheme(rot, g))
        # an affine image of a closed set stays closed; anything else breaks
        # the closure of the adjacent-pair word
        for n in range(4, 13):
            affine = set(p.images for p in normalizer_elements(n))
            rot = rotational_closure(Fhs.of([_edge_word(n)], 2))
            tried = 0
            while tried < 20:
                perm = list(range(n))
                rng.shuffle(perm)
                if tuple(perm) in affine:
                    continue
                tried += 1
                assert not is_rotationally_closed(apply_to_scheme(rot, Permutation(tuple(perm))))


def _brute_normalizer(n):
    rho = Permutation.rho(n)
    powers = {(rho ** k).images for k in range(n)}
    out = set()
    for imgs in itertools.permutations(range(n)):
        g = Permutation(imgs)
        if (g * rho * g.inverse()).images in powers:
            out.add(imgs)
    return out


def test_criterion_07_normalizer():
    with criterion(7, "affine maps equal the brute-force normalizer, n = 3..8"):
        for n in range(3, 9):
            listed = [p.images for p in normalizer_elements(n)]
            assert len(listed) == len(set(listed)) == n * euler_phi(n)
            assert set(listed) == _brute_normalizer(n)
        assert len(normalizer_elements(7)) == 42


def test_criterion_08_word_family_round_trip():
    rng = random.Random(7)
    with criterion(8, "rotating a word is an affine map of its family"):
        for _ in range(200):
            n, q = rng.randint(2, 10), rng.randint(2, 4)
            w = _random_word(rng, n, q)
            gammas = normalizer_elements(n)
            g = gammas[rng.randrange(len(gammas))]
            ap = phi_gamma(g)
            left, lsyms = fhs_to_ddf(rotate(w, g))
            right, rsyms = fhs_to_ddf(w)
            right = right.affine_image(ap.a, ap.b)
            assert lsyms == rsyms
            assert [frozenset(c) for c in left.classes] == [frozenset(c) for c in right.classes]
        g = Permutation.from_cycles("(1 5 3 4)", 5)
        ap = phi_gamma(g)
        assert (ap.a, ap.b) == (2, 4)
        assert rotate(W5, g) == W5_IMAGE
        image = fhs_to_ddf(W5)[0].affine_image(ap.a, ap.b)
        assert [frozenset(c) for c in image.classes] == [frozenset(c) for c in fhs_to_ddf(W5_IMAGE)[0].classes]


def test_criterion_09_primitive_counts():
    with criterion(9, "primitive polynomial counts"):
        for q, n in PRIMITIVE_GRID:
            F = field_make(2, 2) if q == 4 else field_make(q)
            assert len(enumerate_primitive(F, n)) == euler_phi(q ** n - 1) // n, (q, n)


def test_criterion_10_intersections():
    with criterion(10, "line-orbit intersection verifier"):
        for q, n in [(2, 3), (3, 3), (2, 4)]:
            F = field_make(q)
            for f in enumerate_primitive(F, n):
                rep = verify_orbit_intersections(F, n, f)
                assert rep.violations == [], (q, n, str(f))
                assert len(rep.type_one) == q - 2
                assert set(rep.external.values()) == {q * (q ** (n - 1) - 1)}
