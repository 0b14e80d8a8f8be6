"""Frequency-hopping sequences and schemes.

Positions are 0-indexed internally.  Permutations follow the right-action
convention used in cycle notation: a permutation sends the entry at position
i to position sigma(i), so ``(w^sigma)[sigma(i)] = w[i]``, and products are
read left to right (``s * t`` applies ``s`` first).  Cycle strings such as
``"(2 5 3)(4 6 7)"`` are 1-indexed.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import units_mod
from .ddf import DifferenceFamily
from .errors import LengthMismatch, NotInNormalizer, NotPartitionType, TooFewWords


Word = tuple[int, ...]

_CYCLES = re.compile(r"\s*(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)*")


@dataclass(frozen=True)
class HopSequence:
    symbols: Word
    q: int

    def __post_init__(self):
        syms = tuple(int(s) for s in self.symbols)
        if not syms:
            raise ValueError("a hop sequence needs at least one position")
        if min(syms) < 0 or max(syms) >= self.q:
            raise ValueError(f"symbols must lie in [0, {self.q})")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def of(cls, symbols: Sequence[int], q: int | None = None) -> "HopSequence":
        symbols = tuple(int(s) for s in symbols)
        return cls(symbols, q if q is not None else max(symbols) + 1)

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]


@dataclass(frozen=True)
class Fhs:
    """An (n, M, q) scheme: a set of M words of length n over q symbols."""

    n: int
    q: int
    words: frozenset[Word]

    def __post_init__(self):
        words = frozenset(tuple(int(s) for s in w) for w in self.words)
        for w in words:
            if len(w) != self.n:
                raise LengthMismatch(f"word of length {len(w)} in a length-{self.n} scheme")
            if w and (min(w) < 0 or max(w) >= self.q):
                raise ValueError(f"symbols must lie in [0, {self.q})")
        object.__setattr__(self, "words", words)

    @classmethod
    def of(cls, words: Iterable[Sequence[int]], q: int | None = None) -> "Fhs":
        words = [tuple(int(s) for s in w) for w in words]
        if not words:
            raise ValueError("empty scheme")
        n = len(words[0])
        if q is None:
            q = max(max(w) for w in words) + 1
        return cls(n, q, frozenset(words))

    @property
    def M(self) -> int:
        return len(self.words)

    def sorted_words(self) -> list[Word]:
        return sorted(self.words)

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "words": [list(w) for w in self.sorted_words()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Fhs":
        words = [tuple(int(s) for s in w) for w in obj["words"]]
        n = int(obj.get("n", len(words[0])))
        q = int(obj["q"]) if "q" in obj else max(max(w) for w in words) + 1
        return cls(n, q, frozenset(words))


# --------------------------------------------------------------------------
# permutations of positions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """Bijection of {0..n-1}; ``images[i]`` is where position i goes."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"{list(imgs)} is not a permutation")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def rho(cls, n: int) -> "Permutation":
        """The cyclic shift (1 2 ... n)."""
        return cls(tuple((i + 1) % n for i in range(n)))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Permutation":
        """Parse 1-indexed cycle notation, e.g. ``"(2 5 3)(4 6 7)"``."""
        if not _CYCLES.fullmatch(text):
            raise ValueError(f"malformed cycle notation {text!r}")
        imgs = list(range(n))
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if len(set(pts)) != len(pts):
                raise ValueError(f"cycle ({body}) repeats a point")
            for x in pts:
                if not 1 <= x <= n:
                    raise ValueError(f"point {x} outside 1..{n}")
            for k, x in enumerate(pts):
                nxt = pts[(k + 1) % len(pts)]
                if imgs[x - 1] != x - 1:
                    raise ValueError(f"point {x} appears in two cycles")
                imgs[x - 1] = nxt - 1
        return cls(tuple(imgs))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-indexed."""
        seen = set()
        out = []
        for start in range(self.n):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(c + 1 for c in cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise LengthMismatch("permutations of different degree")
        return Permutation(tuple(other.images[self.images[i]] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        out = Permutation.identity(self.n)
        for _ in range(abs(e)):
            out = out * base
        return out

    def __str__(self) -> str:
        return self.cycle_string()


@dataclass(frozen=True)
class AffinePerm:
    """Position map i -> a*i + b (mod n) with gcd(a, n) = 1."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if math.gcd(self.a, self.n) != 1 and self.n > 1:
            raise ValueError(f"multiplier {self.a} is not a unit mod {self.n}")
        object.__setattr__(self, "a", self.a % self.n if self.n > 1 else 1)
        object.__setattr__(self, "b", self.b % self.n)

    def as_permutation(self) -> Permutation:
        return Permutation(tuple((self.a * i + self.b) % self.n for i in range(self.n)))

    def to_json(self) -> dict:
        return {"n": self.n, "a": self.a, "b": self.b}


def _perm(sigma: Permutation | AffinePerm) -> Permutation:
    return sigma.as_permutation() if isinstance(sigma, AffinePerm) else sigma


# --------------------------------------------------------------------------
# correlations
# --------------------------------------------------------------------------

def _syms(x) -> Word:
    return tuple(x.symbols) if isinstance(x, HopSequence) else tuple(int(s) for s in x)


def correlation_table(x, y) -> np.ndarray:
    """H_{x,y}(t) for t = 0..n-1."""
    xs, ys = _syms(x), _syms(y)
    if len(xs) != len(ys):
        raise LengthMismatch(f"lengths {len(xs)} and {len(ys)} differ")
    return kernels.correlation_table(np.array(xs, dtype=np.int64), np.array(ys, dtype=np.int64))


def hamming_correlation(x, y, t: int) -> int:
    """Number of positions i with x_i = y_{i+t mod n}."""
    xs, ys = _syms(x), _syms(y)
    if len(xs) != len(ys):
        raise LengthMismatch(f"lengths {len(xs)} and {len(ys)} differ")
    n = len(xs)
    if not 0 <= t < n:
        raise ValueError(f"delay {t} outside [0, {n})")
    return sum(1 for i in range(n) if xs[i] == ys[(i + t) % n])


def max_auto(x) -> int:
    """Maximum out-of-phase auto-correlation H(x); 0 for length-1 words."""
    table = correlation_table(x, x)
    return int(table[1:].max()) if len(table) > 1 else 0


def max_cross(x, y) -> int:
    return int(correlation_table(x, y).max())


def max_correlation(F: Fhs) -> int:
    """M(F): the largest auto- or cross-correlation inside the scheme."""
    words = F.sorted_words()
    best = max(max_auto(w) for w in words)
    for i, x in enumerate(words):
        for y in words[i + 1:]:
            best = max(best, max_cross(x, y))
    return best


# --------------------------------------------------------------------------
# rotations and closure
# --------------------------------------------------------------------------

def rotate(w, sigma: Permutation | AffinePerm):
    """Coordinate action: the entry at position i moves to position sigma(i)."""
    syms = _syms(w)
    perm = _perm(sigma)
    if perm.n != len(syms):
        raise LengthMismatch(f"permutation of degree {perm.n} on a word of length {len(syms)}")
    out = [0] * len(syms)
    for i, s in enumerate(syms):
        out[perm.images[i]] = s
    if isinstance(w, HopSequence):
        return HopSequence(tuple(out), w.q)
    return tuple(out)


def _shifts(w: Word) -> set[Word]:
    n = len(w)
    return {w[n - k:] + w[: n - k] for k in range(n)}


def rotational_closure(S: Fhs) -> Fhs:
    words = set()
    for w in S.words:
        words |= _shifts(w)
    return Fhs(S.n, S.q, frozenset(words))


def is_rotationally_closed(S: Fhs) -> bool:
    return rotational_closure(S).words == S.words


def hamming_distance(x, y) -> int:
    return sum(1 for a, b in zip(_syms(x), _syms(y)) if a != b)


def min_distance(S: Fhs) -> int:
    if S.M < 2:
        raise TooFewWords("minimum distance needs at least two words")
    return int(kernels.min_pairwise_distance(np.array(S.sorted_words(), dtype=np.int64)))


def rotation_distance(S: Fhs) -> int:
    """Minimum distance of the rotation multiset {w^(rho^i)}, counted with repeats.

    Equal to min_distance(rot(S)) when all M*n rotations are distinct and 0
    otherwise (a repeated rotation is a word at distance 0 from itself).
    """
    if rotational_closure(S).M < S.M * S.n:
        return 0
    if S.M * S.n < 2:
        raise TooFewWords("minimum distance needs at least two words")
    return min_distance(rotational_closure(S))


def apply_to_scheme(S: Fhs, sigma: Permutation | AffinePerm) -> Fhs:
    return Fhs(S.n, S.q, frozenset(rotate(w, sigma) for w in S.words))


# --------------------------------------------------------------------------
# the normaliser of the cyclic shift group
# --------------------------------------------------------------------------

def conjugate_shift(gamma: Permutation) -> Permutation:
    """gamma^-1 rho gamma, the cycle (1^gamma 2^gamma ... n^gamma)."""
    rho = Permutation.rho(gamma.n)
    return gamma.inverse() * rho * gamma


def _shift_exponent(p: Permutation) -> int | None:
    n = p.n
    k = p.images[0] % n
    if all(p.images[i] == (i + k) % n for i in range(n)):
        return k
    return None


def is_in_normalizer(gamma: Permutation) -> bool:
    """True iff gamma rho gamma^-1 is a power of rho."""
    rho = Permutation.rho(gamma.n)
    return _shift_exponent(gamma * rho * gamma.inverse()) is not None


def normalizer_elements(n: int) -> list[Permutation]:
    """All n*phi(n) permutations i -> a*i + b of Z_n, a ascending then b."""
    return [AffinePerm(n, a, b).as_permutation() for a in units_mod(n) for b in range(n)]


def phi_gamma(gamma: Permutation) -> AffinePerm:
    """(a, b) with gamma^-1 rho gamma = rho^a and b = 1^gamma - 1.

    Equivalently gamma itself is the position map i -> a*i + b, so the
    family of gamma-rotated words is the family of the original word under
    x -> a*x + b.
    """
    k = _shift_exponent(conjugate_shift(gamma))
    if k is None:
        raise NotInNormalizer(f"{gamma} does not normalise the cyclic shifts")
    n = gamma.n
    return AffinePerm(n, k if n > 1 else 1, gamma.images[0])


# --------------------------------------------------------------------------
# words <-> partition-type families
# --------------------------------------------------------------------------

def fhs_to_ddf(x) -> tuple[DifferenceFamily, tuple[int, ...]]:
    """Family with Q_i = positions holding the i-th occurring symbol.

    Symbols that never occur get no class; the returned map lists the symbol
    behind each class index.
    """
    syms = _syms(x)
    symbol_map = tuple(sorted(set(syms)))
    classes = tuple(tuple(j for j, s in enumerate(syms) if s == sym) for sym in symbol_map)
    return DifferenceFamily(len(syms), classes), symbol_map


def ddf_to_fhs(f: DifferenceFamily) -> HopSequence:
    if not f.is_partition():
        raise NotPartitionType("classes do not cover the whole group")
    out = [0] * f.v
    for i, cls in enumerate(f.classes):
        for j in cls:
            out[j] = i
    return HopSequence(tuple(out), f.q)


# --------------------------------------------------------------------------
# scheme equivalence
# --------------------------------------------------------------------------

def _complete_symbol_map(partial: dict[int, int], q: int) -> tuple[int, ...]:
    used = set(partial.values())
    free = iter(s for s in range(q) if s not in used)
    return tuple(partial[s] if s in partial else next(free) for s in range(q))


def _extend(fwd: dict[int, int], back: dict[int, int], src: Word, dst: Word):
    """Extend the partial bijection so that src maps onto dst, or return None."""
    fwd, back = dict(fwd), dict(back)
    for s, t in zip(src, dst):
        if fwd.setdefault(s, t) != t or back.setdefault(t, s) != s:
            return None
    return fwd, back


def _match_words(image: list[Word], target: list[Word], fwd, back) -> dict[int, int] | None:
    """Symbol bijection taking the word set ``image`` onto ``target``."""
    if not image:
        return fwd
    x, rest = image[0], image[1:]
    for k, y in enumerate(target):
        ext = _extend(fwd, back, x, y)
        if ext is not None:
            hit = _match_words(rest, target[:k] + target[k + 1 :], *ext)
            if hit is not None:
                return hit
    return None


def fhs_equivalent(F1: Fhs, F2: Fhs) -> tuple[tuple[int, ...], AffinePerm] | None:
    """Symbol permutation and affine coordinate map carrying F1 onto F2.

    The symbol map is returned as a tuple ``pi`` with symbol s -> pi[s]; the
    coordinate map is applied first, then the symbols are renamed.  Returns
    None when the schemes are not equivalent.
    """
    if F1.n != F2.n or F1.M != F2.M:
        return None
    n, q = F1.n, max(F1.q, F2.q)
    if F1.M == 1:
        (w1,), (w2,) = F1.words, F2.words
        src = kernels.relabel_first_occurrence(np.array(w1, dtype=np.int64))
        dst = kernels.relabel_first_occurrence(np.array(w2, dtype=np.int64))
        a, b = kernels.affine_search(
            src, dst, np.array(units_mod(n), dtype=np.int64), np.arange(n, dtype=np.int64)
        )
        if a < 0:
            return None
        g = AffinePerm(n, a, b)
        partial = _match_words([rotate(w1, g)], [w2], {}, {})
        return _complete_symbol_map(partial, q), g

    # symbol-usage profiles must agree before any search
    def profile(F):
        return sorted(tuple(sorted(Counter(w).values())) for w in F.words)

    if profile(F1) != profile(F2):
        return None
    target = F2.sorted_words()
    for a in units_mod(n):
        for b in range(n):
            g = AffinePerm(n, a, b)
            image = sorted(rotate(w, g) for w in F1.words)
            partial = _match_words(image, target, {}, {})
            if partial is not None:
                return _complete_symbol_map(partial, q), g
    return None


def apply_equivalence(F: Fhs, symbol_map: Sequence[int], g: AffinePerm) -> Fhs:
    q = max(F.q, len(symbol_map))
    return Fhs(F.n, q, frozenset(tuple(symbol_map[s] for s in rotate(w, g)) for w in F.words))
