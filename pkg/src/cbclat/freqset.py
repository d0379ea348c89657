"""Frequency sets: data model, generator families, difference sets, file I/O.

A frequency set is a finite set I of integer vectors k in Z^d. Sets are stored
deduplicated and sorted in the natural (lexicographic) order on construction,
which the incremental residue bookkeeping downstream relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# Default guard against runaway enumerations, measured in items/cells as stated
# by each generator. Every generator accepts an explicit override.
SIZE_CAP = 10**8

# Components are capped so that modular products fit 64-bit arithmetic later.
COMPONENT_LIMIT = 2**31 - 1


def _effective_cap(size_cap) -> int:
    cap = SIZE_CAP if size_cap is None else int(size_cap)
    if cap < 1:
        raise ValueError("size cap must be positive")
    return cap


class FrequencySet:
    """Deduplicated, lexicographically sorted set of frequency vectors.

    Wraps an immutable (n, d) int64 array whose rows are the frequencies.
    """

    __slots__ = ("_arr",)

    def __init__(self, rows, d: int | None = None):
        try:
            arr = np.asarray(rows, dtype=np.int64)
        except (OverflowError, ValueError) as exc:
            raise ValueError(f"invalid frequency data: {exc}") from None
        if arr.ndim != 2:
            raise ValueError("expected a sequence of equal-length frequency vectors")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("frequency set must contain at least one frequency, d >= 1")
        if d is not None and arr.shape[1] != d:
            raise ValueError(f"expected dimension {d}, got {arr.shape[1]}")
        if np.any(arr > COMPONENT_LIMIT) or np.any(arr < -COMPONENT_LIMIT):
            raise ValueError(f"frequency components must satisfy |k_t| <= {COMPONENT_LIMIT}")
        arr = np.unique(arr, axis=0)
        arr.setflags(write=False)
        self._arr = arr

    @classmethod
    def _from_sorted_unique(cls, arr: np.ndarray) -> "FrequencySet":
        # Fast path for generators that emit rows already deduped and in
        # natural order; validation is kept, only the re-sort is skipped.
        obj = cls.__new__(cls)
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("frequency set must contain at least one frequency, d >= 1")
        if np.any(arr > COMPONENT_LIMIT) or np.any(arr < -COMPONENT_LIMIT):
            raise ValueError(f"frequency components must satisfy |k_t| <= {COMPONENT_LIMIT}")
        arr = arr.astype(np.int64, copy=False)
        arr.setflags(write=False)
        obj._arr = arr
        return obj

    @property
    def d(self) -> int:
        return self._arr.shape[1]

    @property
    def array(self) -> np.ndarray:
        """Read-only (n, d) int64 view of the frequencies in natural order."""
        return self._arr

    @property
    def items(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self._arr]

    def __len__(self) -> int:
        return self._arr.shape[0]

    def __iter__(self):
        for row in self._arr:
            yield tuple(int(v) for v in row)

    def __contains__(self, k) -> bool:
        target = np.asarray(k, dtype=np.int64)
        if target.shape != (self.d,):
            return False
        return bool(np.any(np.all(self._arr == target, axis=1)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrequencySet):
            return NotImplemented
        return self._arr.shape == other._arr.shape and bool(np.array_equal(self._arr, other._arr))

    def __repr__(self) -> str:
        return f"FrequencySet(d={self.d}, n={len(self)})"


@dataclass(frozen=True)
class WeightSpec:
    """Product weights gamma_j for the weighted hyperbolic cross.

    kind is either "inverse-square-builtin" (gamma_j = j^-2) or
    "explicit-list" with positive, non-increasing rationals.
    """

    kind: str
    gammas: tuple[Fraction, ...] | None = None

    INVERSE_SQUARE = "inverse-square-builtin"
    EXPLICIT = "explicit-list"

    def __post_init__(self):
        if self.kind == self.INVERSE_SQUARE:
            if self.gammas is not None:
                raise ValueError("builtin weights take no gamma list")
        elif self.kind == self.EXPLICIT:
            if not self.gammas:
                raise ValueError("explicit weights need a non-empty gamma list")
            prev = None
            for g in self.gammas:
                if g <= 0:
                    raise ValueError("gamma_j must be positive")
                if prev is not None and g > prev:
                    raise ValueError("gamma_j must be non-increasing")
                prev = g
        else:
            raise ValueError(f"unknown weight kind: {self.kind!r}")

    @classmethod
    def inverse_square(cls) -> "WeightSpec":
        return cls(cls.INVERSE_SQUARE)

    @classmethod
    def explicit(cls, gammas) -> "WeightSpec":
        return cls(cls.EXPLICIT, tuple(Fraction(g) for g in gammas))

    def gamma(self, j: int) -> Fraction:
        """Weight of coordinate j (1-based)."""
        if j < 1:
            raise ValueError("coordinate index is 1-based")
        if self.kind == self.INVERSE_SQUARE:
            return Fraction(1, j * j)
        if j > len(self.gammas):
            raise ValueError(f"explicit weights cover only {len(self.gammas)} coordinates")
        return self.gammas[j - 1]


def gen_cube(d: int, N: int, size_cap=None) -> FrequencySet:
    """Full cube [-N, N]^d."""
    if d < 1 or N < 0:
        raise ValueError("need d >= 1, N >= 0")
    side = 2 * N + 1
    if d * side**d > _effective_cap(size_cap):
        raise ValueError(f"gen_cube(d={d}, N={N}) exceeds the size cap")
    grid = np.indices((side,) * d, dtype=np.int64).reshape(d, -1).T - N
    # np.indices varies the first coordinate slowest, so rows come out in
    # natural order already.
    return FrequencySet._from_sorted_unique(grid)


def gen_axis_cross(d: int, N: int, size_cap=None) -> FrequencySet:
    """Axis cross: at most one nonzero component, of magnitude <= N."""
    if d < 1 or N < 0:
        raise ValueError("need d >= 1, N >= 0")
    n = 2 * d * N + 1
    if n > _effective_cap(size_cap):
        raise ValueError(f"gen_axis_cross(d={d}, N={N}) exceeds the size cap")
    rows = np.zeros((n, d), dtype=np.int64)
    i = 1
    for t in range(d):
        for v in range(1, N + 1):
            rows[i, t] = v
            rows[i + 1, t] = -v
            i += 2
    return FrequencySet(rows)


def gen_superposition2(d: int, N: int, size_cap=None) -> FrequencySet:
    """All k in [-N, N]^d with at most two nonzero components."""
    if d < 2:
        raise ValueError("superposition family needs d >= 2")
    if N < 0:
        raise ValueError("need N >= 0")
    n = 2 * N * d * (1 + (d - 1) * N) + 1
    if n > _effective_cap(size_cap):
        raise ValueError(f"gen_superposition2(d={d}, N={N}) exceeds the size cap")
    rows = np.zeros((n, d), dtype=np.int64)
    i = 1
    for t in range(d):
        for v in range(1, N + 1):
            rows[i, t] = v
            rows[i + 1, t] = -v
            i += 2
    nz = [v for v in range(-N, N + 1) if v != 0]
    for s in range(d):
        for t in range(s + 1, d):
            for v in nz:
                for w in nz:
                    rows[i, s] = v
                    rows[i, t] = w
                    i += 1
    assert i == n
    return FrequencySet(rows)


def gen_weighted_hyperbolic(weights: WeightSpec, threshold, dmax: int, size_cap=None) -> FrequencySet:
    """Weighted hyperbolic cross {k : prod_j max(1, |k_j|/gamma_j) <= threshold}.

    The set is enumerated over the first dmax coordinates and returned as a
    dmax-dimensional set. Enumeration is depth-first with an exact rational
    budget, so membership at the boundary is decided without floating point.
    """
    thr = threshold if isinstance(threshold, Fraction) else Fraction(threshold)
    if thr <= 0:
        raise ValueError("threshold must be positive")
    if thr < 1:
        raise ValueError("threshold < 1 would produce an empty set")
    if dmax < 1:
        raise ValueError("need dmax >= 1")
    cap = _effective_cap(size_cap)
    gammas = [weights.gamma(j) for j in range(1, dmax + 1)]

    rows: list[tuple[int, ...]] = []
    buf = [0] * dmax

    def descend(j: int, budget: Fraction) -> None:
        # budget = threshold / (product of factors fixed so far), always >= 1.
        if j == dmax:
            rows.append(tuple(buf))
            if len(rows) > cap:
                raise ValueError("gen_weighted_hyperbolic exceeds the size cap")
            return
        bound = int(budget * gammas[j])
        for k in range(-bound, bound + 1):
            buf[j] = k
            if k == 0:
                descend(j + 1, budget)
            else:
                descend(j + 1, budget * gammas[j] / abs(k))
        buf[j] = 0

    descend(0, thr)
    return FrequencySet._from_sorted_unique(np.asarray(rows, dtype=np.int64))


def difference_set(I: FrequencySet, size_cap=None) -> FrequencySet:
    """D(I) = {h - k : h, k in I}; contains 0 and is closed under negation."""
    n = len(I)
    if n * n > _effective_cap(size_cap):
        raise ValueError("difference_set exceeds the size cap")
    arr = I.array
    diffs = (arr[:, None, :] - arr[None, :, :]).reshape(n * n, I.d)
    return FrequencySet(diffs)


def expansion(I: FrequencySet) -> int:
    """N_I: the largest per-coordinate spread max k_t - min k_t."""
    arr = I.array
    return int(np.max(arr.max(axis=0) - arr.min(axis=0)))


def max_abs(I: FrequencySet) -> int:
    """max over k in I of the max-norm of k; 0 iff I = {0}."""
    arr = I.array
    return int(max(arr.max(), -arr.min(), 0))


def write_set(I: FrequencySet, path) -> None:
    """Write one frequency per line, components whitespace-separated."""
    with open(path, "w", encoding="utf-8") as fh:
        for row in I.array:
            fh.write(" ".join(str(int(v)) for v in row))
            fh.write("\n")


def read_set(path) -> FrequencySet:
    """Parse the text format written by write_set.

    Lines starting with '#' and blank lines are ignored; the dimension is
    inferred from the first data line and every later line must match it.
    """
    rows = []
    d = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split()
            try:
                row = [int(p) for p in parts]
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed frequency line {stripped!r}") from None
            if d is None:
                d = len(row)
            elif len(row) != d:
                raise ValueError(f"{path}:{lineno}: expected {d} components, got {len(row)}")
            rows.append(row)
    if not rows:
        raise ValueError(f"{path}: no frequencies found")
    return FrequencySet(rows)
