"""Linear feedback shift registers over GF(q) and the sigma_k hop transform.

The register holds (s_t, ..., s_{t+n-1}); each clock outputs s_t, shifts
down and appends s_{t+n} = c_0 s_t + ... + c_{n-1} s_{t+n-1}.  Symbols are
field element indices (see :mod:`ddfkit.algebra`), so windows over GF(p^m)
map to integers digit by digit in radix q.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    FieldSpec,
    Poly,
    enumerate_primitive,
    is_primitive,
    poly_from_taps,
    taps_from_poly,
)
from .ddf import DifferenceFamily
from .errors import BadK, DegenerateTaps, NotPrimitive
from .fhs import HopSequence, fhs_to_ddf


@dataclass(frozen=True)
class LfsrSpec:
    field: FieldSpec
    taps: tuple[int, ...]  # c_0 .. c_{n-1}

    def __post_init__(self):
        if not self.taps:
            raise ValueError("an LFSR needs at least one stage")
        object.__setattr__(self, "taps", tuple(self.field.from_int(c) for c in self.taps))

    @classmethod
    def from_poly(cls, fpoly: Poly) -> "LfsrSpec":
        return cls(fpoly.field, taps_from_poly(fpoly))

    @property
    def n(self) -> int:
        return len(self.taps)

    @property
    def poly(self) -> Poly:
        """Characteristic polynomial x^n - c_{n-1} x^{n-1} - ... - c_0."""
        return poly_from_taps(self.field, self.taps)

    def impulse_state(self) -> "LfsrState":
        return LfsrState(self, (0,) * (self.n - 1) + (1,))


@dataclass(frozen=True)
class LfsrState:
    spec: LfsrSpec
    registers: tuple[int, ...]

    def __post_init__(self):
        if len(self.registers) != self.spec.n:
            raise ValueError(f"state needs {self.spec.n} registers, got {len(self.registers)}")


def feedback(spec: LfsrSpec, registers: Sequence[int]) -> int:
    f = spec.field
    acc = 0
    for c, s in zip(spec.taps, registers):
        if c and s:
            acc = f.add(acc, f.mul(c, s))
    return acc


def lfsr_step(state: LfsrState) -> tuple[int, LfsrState]:
    regs = state.registers
    new = feedback(state.spec, regs)
    return regs[0], LfsrState(state.spec, regs[1:] + (new,))


def run(state: LfsrState, length: int) -> list[int]:
    spec = state.spec
    regs = list(state.registers)
    out = []
    for _ in range(length):
        out.append(regs[0])
        regs.append(feedback(spec, regs))
        del regs[0]
    return out


def impulse_response(spec: LfsrSpec, length: int) -> list[int]:
    """First ``length`` outputs from the initial state (0, ..., 0, 1)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    return run(spec.impulse_state(), length)


def period(spec: LfsrSpec) -> int:
    """Period of the impulse response (the state sequence is purely periodic when c_0 != 0)."""
    if spec.taps[0] == 0:
        raise DegenerateTaps("c_0 = 0: the register is not invertible")
    start = spec.impulse_state().registers
    regs = list(start)
    t = 0
    while True:
        regs.append(feedback(spec, regs))
        del regs[0]
        t += 1
        if tuple(regs) == start:
            return t


def is_m_sequence(spec: LfsrSpec) -> bool:
    return period(spec) == spec.field.q ** spec.n - 1


def sigma_k(window: Sequence[int], field: FieldSpec) -> int:
    """Radix-q value sum_i idx(window[i]) q^i of a length-k window."""
    q = field.q
    return sum(int(s) * q ** i for i, s in enumerate(window))


def lg_transform(spec: LfsrSpec, k: int) -> HopSequence:
    """u_t = sigma_k(s_t, ..., s_{t+k-1}) over one period, indices taken mod the period.

    k = n is accepted (each full state gets its own symbol); the hop-sequence
    construction itself uses 1 <= k <= n-1.
    """
    if not 1 <= k <= spec.n:
        raise BadK(f"k must satisfy 1 <= k <= n = {spec.n}, got {k}")
    if spec.taps[0] == 0 or not is_primitive(spec.poly):
        raise NotPrimitive(f"{spec.poly} is not primitive")
    q = spec.field.q
    v = q ** spec.n - 1
    s = impulse_response(spec, v)
    u = tuple(sigma_k([s[(t + i) % v] for i in range(k)], spec.field) for t in range(v))
    return HopSequence(u, q ** k)


def default_primitive(field: FieldSpec, n: int) -> Poly:
    return enumerate_primitive(field, n)[0]


def window_order(q: int, k: int) -> list[int]:
    """Symbols sorted by their window (s_t, ..., s_{t+k-1}) read lexicographically."""
    return sorted(range(q ** k), key=lambda u: [(u // q ** i) % q for i in range(k)])


def lg_construct(
    field: FieldSpec, n: int, k: int, fpoly: Poly | None = None, order: str = "symbol"
) -> tuple[HopSequence, DifferenceFamily]:
    """Hop sequence sigma_k(m-sequence) and its partition-type family over Z_{q^n-1}.

    With ``order="symbol"`` class i holds the times at which symbol i is
    used; ``order="window"`` lists the classes by window instead (leading
    register first).  Either way class 0 is the all-zero window and has one
    element fewer than the rest.
    """
    if fpoly is None:
        fpoly = default_primitive(field, n)
    if fpoly.degree != n:
        raise ValueError(f"{fpoly} does not have degree {n}")
    if not 1 <= k <= n - 1:
        raise BadK(f"k must satisfy 1 <= k <= n-1 = {n - 1}, got {k}")
    u = lg_transform(LfsrSpec.from_poly(fpoly), k)
    family, _ = fhs_to_ddf(u)
    if order == "window":
        q = field.q
        family = DifferenceFamily(family.v, tuple(family.classes[i] for i in window_order(q, k)))
    elif order != "symbol":
        raise ValueError(f"unknown class order {order!r}")
    return u, family
