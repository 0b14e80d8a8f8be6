"""Disjoint difference families over Z_v.

A family is a modulus ``v`` and an ordered list of disjoint, nonempty classes
Q_0, ..., Q_{q-1}.  Every difference count (internal, external, per class,
per pair of classes) is read off one tensor ``counts[i, j, d]`` holding the
number of ordered pairs (a, b) with a in Q_i, b in Q_j, a != b and
a - b = d (mod v).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import units_mod
from .errors import ElementOutOfRange, EmptyClass, OverlappingClasses


@dataclass(frozen=True)
class DifferenceFamily:
    v: int
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.v < 1:
            raise ValueError("group order must be >= 1")
        seen: set[int] = set()
        norm = []
        for i, cls in enumerate(self.classes):
            cls = tuple(sorted(int(x) for x in cls))
            if not cls:
                raise EmptyClass(f"class {i} is empty")
            if len(set(cls)) != len(cls):
                raise OverlappingClasses(f"class {i} repeats an element")
            for x in cls:
                if not 0 <= x < self.v:
                    raise ElementOutOfRange(f"{x} is not in Z_{self.v}")
                if x in seen:
                    raise OverlappingClasses(f"{x} occurs in more than one class")
                seen.add(x)
            norm.append(cls)
        object.__setattr__(self, "classes", tuple(norm))

    @property
    def q(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @cached_property
    def labels(self) -> np.ndarray:
        """Class index of each group element, -1 where uncovered."""
        lab = np.full(self.v, -1, dtype=np.int64)
        for i, cls in enumerate(self.classes):
            lab[list(cls)] = i
        return lab

    def as_set(self) -> frozenset[frozenset[int]]:
        """The family as an unordered set of classes."""
        return frozenset(frozenset(c) for c in self.classes)

    def same_classes(self, other: "DifferenceFamily") -> bool:
        return self.v == other.v and self.as_set() == other.as_set()

    def is_partition(self) -> bool:
        return sum(self.sizes) == self.v

    def affine_image(self, a: int, b: int = 0) -> "DifferenceFamily":
        """The family {a*Q_i + b}, class order preserved."""
        return DifferenceFamily(
            self.v, tuple(tuple((a * x + b) % self.v for x in c) for c in self.classes)
        )

    def translate(self, b: int) -> "DifferenceFamily":
        return self.affine_image(1, b)

    def sorted_classes(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.classes))

    def to_json(self) -> dict:
        return {"v": self.v, "classes": [list(c) for c in self.classes]}

    @classmethod
    def from_json(cls, obj: dict) -> "DifferenceFamily":
        return cls(int(obj["v"]), tuple(tuple(int(x) for x in c) for c in obj["classes"]))

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, c)) + "}" for c in self.classes)
        return f"(Z_{self.v}; {body})"


def ddf_new(v: int, classes: Iterable[Iterable[int]]) -> DifferenceFamily:
    return DifferenceFamily(v, tuple(tuple(c) for c in classes))


@dataclass(frozen=True, eq=False)
class DifferenceSpectrum:
    v: int
    counts: np.ndarray  # shape (q, q, v)

    @property
    def q(self) -> int:
        return self.counts.shape[0]

    @cached_property
    def _internal_by_class(self) -> np.ndarray:
        return np.einsum("iid->id", self.counts)

    @cached_property
    def _external_by_class(self) -> np.ndarray:
        return self.counts.sum(axis=1) - self._internal_by_class

    def internal_array(self) -> np.ndarray:
        """|I(d)| for d = 0..v-1 (entry 0 is always 0)."""
        return self._internal_by_class.sum(axis=0)

    def external_array(self) -> np.ndarray:
        return self._external_by_class.sum(axis=0)

    @property
    def internal(self) -> dict[int, int]:
        arr = self.internal_array()
        return {d: int(arr[d]) for d in range(1, self.v)}

    @property
    def external(self) -> dict[int, int]:
        arr = self.external_array()
        return {d: int(arr[d]) for d in range(1, self.v)}

    @property
    def internal_by_class(self) -> dict[tuple[int, int], int]:
        arr = self._internal_by_class
        return {(i, d): int(arr[i, d]) for i in range(self.q) for d in range(1, self.v)}

    @property
    def external_by_class(self) -> dict[tuple[int, int], int]:
        arr = self._external_by_class
        return {(i, d): int(arr[i, d]) for i in range(self.q) for d in range(1, self.v)}

    @property
    def external_pairwise(self) -> dict[tuple[int, int, int], int]:
        c = self.counts
        return {
            (i, j, d): int(c[i, j, d])
            for i in range(self.q)
            for j in range(self.q)
            if i != j
            for d in range(1, self.v)
        }

    def rows(self) -> list[dict]:
        ia, ea = self.internal_array(), self.external_array()
        return [{"d": d, "I": int(ia[d]), "E": int(ea[d])} for d in range(1, self.v)]


def spectrum(f: DifferenceFamily) -> DifferenceSpectrum:
    return DifferenceSpectrum(f.v, kernels.pair_difference_counts(f.labels, f.q))


@dataclass(frozen=True)
class Classification:
    uniform: bool
    partition_type: bool
    perfect_internal: bool
    perfect_external: bool
    internal_max: int
    external_min: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _constant(values: np.ndarray) -> bool:
    return values.size == 0 or bool(np.all(values == values[0]))


def classify(f: DifferenceFamily, spec: DifferenceSpectrum | None = None) -> Classification:
    spec = spec or spectrum(f)
    ia = spec.internal_array()[1:]
    ea = spec.external_array()[1:]
    return Classification(
        uniform=len(set(f.sizes)) == 1,
        partition_type=f.is_partition(),
        perfect_internal=_constant(ia),
        perfect_external=_constant(ea),
        internal_max=int(ia.max()) if ia.size else 0,
        external_min=int(ea.min()) if ea.size else 0,
    )


@dataclass(frozen=True)
class ApplicationPredicates:
    """Parameters the family would carry in the standard applications.

    ``edf_lambda`` is the constant |E(d)| of a uniform perfect external family
    (an external difference family); ``bounded_lambda`` is max |I(d)| for a
    single-class family; ``ooc_auto``/``ooc_cross`` are the optical orthogonal
    code bounds max |I_i(d)| and max |E_{i,j}(d)|; ``dss_index`` is
    min |E(d)|.
    """

    is_edf: bool
    edf_lambda: int | None
    bounded_lambda: int | None
    ooc_auto: int
    ooc_cross: int
    dss_index: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def application_predicates(
    f: DifferenceFamily, spec: DifferenceSpectrum | None = None
) -> ApplicationPredicates:
    spec = spec or spectrum(f)
    cl = classify(f, spec)
    ea = spec.external_array()[1:]
    is_edf = cl.uniform and f.q >= 2 and cl.perfect_external
    counts = spec.counts[:, :, 1:]
    auto = int(np.einsum("iid->id", counts).max()) if counts.size else 0
    if f.q > 1:
        off = counts.copy()
        for i in range(f.q):
            off[i, i, :] = 0
        cross = int(off.max()) if off.size else 0
    else:
        cross = 0
    return ApplicationPredicates(
        is_edf=is_edf,
        edf_lambda=int(ea[0]) if is_edf and ea.size else None,
        bounded_lambda=cl.internal_max if f.q == 1 else None,
        ooc_auto=auto,
        ooc_cross=cross,
        dss_index=cl.external_min,
    )


# --------------------------------------------------------------------------
# equivalence under x -> a*x + b
# --------------------------------------------------------------------------

def _internal_multiset(f: DifferenceFamily) -> list[int]:
    return sorted(spectrum(f).internal_array()[1:].tolist())


def ddf_equivalent(
    f1: DifferenceFamily,
    f2: DifferenceFamily,
    multipliers: Sequence[int] | None = None,
    offsets: Sequence[int] | None = None,
) -> tuple[int, int] | None:
    """Find (a, b), gcd(a, v) = 1, with {a*Q_i + b} = classes of ``f2``.

    Candidates are tried with ``a`` then ``b`` increasing; the first match is
    returned.  ``multipliers``/``offsets`` restrict the search (for example
    ``offsets=[0]`` for pure multipliers).  Returns None when no map exists.
    """
    if f1.v != f2.v or sorted(f1.sizes) != sorted(f2.sizes):
        return None
    if _internal_multiset(f1) != _internal_multiset(f2):
        return None
    v = f1.v
    mult = np.array(units_mod(v) if multipliers is None else multipliers, dtype=np.int64)
    offs = np.array(range(v) if offsets is None else offsets, dtype=np.int64)
    src = kernels.relabel_first_occurrence(f1.labels)
    dst = kernels.relabel_first_occurrence(f2.labels)
    a, b = kernels.affine_search(src, dst, mult, offs)
    if a < 0:
        return None
    return int(a), int(b)


def canonical_form(f: DifferenceFamily) -> DifferenceFamily:
    """Lexicographically least sorted image over all maps x -> a*x + b."""
    v = f.v
    best = None
    for a in units_mod(v):
        for b in range(v):
            img = tuple(sorted(tuple(sorted((a * x + b) % v for x in c)) for c in f.classes))
            if best is None or img < best:
                best = img
    return DifferenceFamily(v, best)

