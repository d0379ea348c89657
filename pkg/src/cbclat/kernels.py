"""Incremental per-step exactness checks for the CBC search.

Both kernels test a candidate component y for step l against the residue
vector nu accumulated over steps 1..l-1:

  integration:    accept iff (nu_j + y k_{j,l}) mod M != 0 wherever k_{j,l} != 0
  reconstruction: accept iff the residues of the deduplicated pairs
                  (nu_j, k_{j,l}) are pairwise distinct

Kernels are pure: they return a fresh state and never mutate the input, so
the driver commits a state only when it accepts the candidate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .freqset import FrequencySet
from .lattice import INT64_SAFE_M

MODE_INTEGRATION = "integration"
MODE_RECONSTRUCTION = "reconstruction"
MODES = (MODE_INTEGRATION, MODE_RECONSTRUCTION)


@dataclass(frozen=True)
class ResidueState:
    """nu_j = k_j . (z_1..z_l, 0..) mod M for every frequency k_j, in set order."""

    values: np.ndarray
    M: int

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64)
        if self.M < 1:
            raise ValueError("modulus must be >= 1")
        if v.ndim != 1 or v.shape[0] < 1:
            raise ValueError("residue vector must be one-dimensional and non-empty")
        if np.any(v < 0) or np.any(v >= self.M):
            raise ValueError("residues must lie in [0, M)")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def _shifted(values: np.ndarray, kcol: np.ndarray, M: int, y: int) -> np.ndarray:
    """(values + y * kcol) mod M, exact for any M."""
    y %= M
    if M <= INT64_SAFE_M:
        return (values + y * (kcol % M)) % M
    return np.asarray([(int(v) + y * int(k)) % M for v, k in zip(values, kcol)], dtype=np.int64)


def init_residues(I: FrequencySet, M: int, mode: str) -> tuple[bool, ResidueState]:
    """Step 1 with the fixed choice z_1 = 1.

    Returns whether the first components alone already satisfy the mode's
    property: no k with k_1 != 0 may hit residue 0 (integration), distinct
    first components must keep distinct residues (reconstruction).
    """
    if M < 2:
        raise ValueError("need M >= 2")
    if mode not in MODES:
        raise ValueError(f"unknown mode: {mode!r}")
    first = I.array[:, 0]
    nu = first % M
    if mode == MODE_INTEGRATION:
        ok = not bool(np.any((first != 0) & (nu == 0)))
    else:
        distinct = np.unique(first)
        ok = np.unique(distinct % M).shape[0] == distinct.shape[0]
    return ok, ResidueState(nu, M)


def check_exactness_integration(kcol, state: ResidueState, y: int) -> tuple[bool, ResidueState]:
    """Integration admissibility of candidate y at one CBC step, O(|I|)."""
    kcol = np.asarray(kcol, dtype=np.int64)
    if kcol.shape != state.values.shape:
        raise ValueError("component column length disagrees with residue vector")
    shifted = _shifted(state.values, kcol, state.M, y)
    ok = not bool(np.any((kcol != 0) & (shifted == 0)))
    return ok, ResidueState(shifted, state.M)


def check_exactness_reconstruction(kcol, state: ResidueState, y: int) -> tuple[bool, ResidueState]:
    """Reconstruction admissibility of candidate y, O(|I| log |I|) by sorting.

    Rows with identical (nu_j, k_{j,l}) are one element of the projected set
    and are deduplicated before the collision count; dedup is on the exact
    integer pairs, since pairs congruent mod M but distinct as integers can
    never be separated and must keep the candidate rejected.
    """
    kcol = np.asarray(kcol, dtype=np.int64)
    if kcol.shape != state.values.shape:
        raise ValueError("component column length disagrees with residue vector")
    pairs = np.unique(np.column_stack((state.values, kcol)), axis=0)
    res = _shifted(pairs[:, 0], pairs[:, 1], state.M, y)
    ok = np.unique(res).shape[0] == pairs.shape[0]
    shifted = _shifted(state.values, kcol, state.M, y)
    return ok, ResidueState(shifted, state.M)
