"""The truncated working space used for encoding.

Out of the full register, keep the blocks with total spin j in
Y = {j_min, ..., N/2 - 1}, where j_min defaults to the integer nearest N/3
(ties round up; never an issue for even N).  Within each kept block, keep a
D = 2*j_min + 1 dimensional slice of the rotation factor (the highest-m rows)
and a D_alpha = floor(D / alpha) dimensional slice of the multiplicity factor
(the lexicographically first coupling paths), for a tuning parameter
alpha > 1.  The resulting space has dimension K = |Y| * D * D_alpha and grows
like (2/27) N^3 / alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from framecrypt.repkit import (
    CoupledIndex,
    SchurTransform,
    block_layout,
    coupled_position,
    dim_irrep,
    dim_multiplicity,
    schur_transform,
)


def default_two_j_min(n: int) -> int:
    """Twice the integer nearest to n/3, ties rounded up."""
    return 2 * ((2 * n + 3) // 6)


@dataclass(frozen=True)
class WorkingSpace:
    """Dimensions and index maps of the kept subspace.

    Coordinates are ordered block-major over two_j ascending through ``y``;
    inside a block the kept rotation rows (m descending from j) are the slow
    axis and the kept paths the fast axis.
    """

    n: int
    alpha: float
    two_j_min: int
    y: tuple[int, ...]
    d: int
    d_alpha: int
    k: int
    r_rows: tuple[int, ...]  # kept rotation-row indices within each block
    p_rows: tuple[int, ...]  # kept path indices within each block
    embed_index: tuple[CoupledIndex, ...]
    # dense coupled-basis positions; None once 2^n outgrows int64 addressing
    embed_positions: np.ndarray | None = field(repr=False, compare=False)

    @property
    def d_p(self) -> int:
        """Dimension |Y| * D_alpha of the kept multiplicity space."""
        return len(self.y) * self.d_alpha

    def block_slice(self, i: int) -> slice:
        w = self.d * self.d_alpha
        return slice(i * w, (i + 1) * w)

    def descriptor(self) -> dict:
        """JSON-ready summary (no arrays)."""
        return {
            "n": self.n,
            "alpha": self.alpha,
            "j_min": self.two_j_min // 2,
            "y": [tj // 2 for tj in self.y],
            "d": self.d,
            "d_alpha": self.d_alpha,
            "k": self.k,
            "d_p": self.d_p,
            "multiplicities": {str(tj // 2): dim_multiplicity(self.n, tj) for tj in self.y},
        }


def build_working_space(n: int, alpha: float, two_j_min: int | None = None) -> WorkingSpace:
    """Construct the working space for n qubits at truncation parameter alpha."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"qubit count must be a positive even integer, got {n}")
    if not alpha > 1.0:
        raise ValueError(f"alpha must exceed 1, got {alpha}")
    tjm = default_two_j_min(n) if two_j_min is None else int(two_j_min)
    if tjm % 2 != 0 or tjm < 0:
        raise ValueError(f"two_j_min must be an even nonnegative integer for even n, got {tjm}")
    if tjm >= n:
        raise ValueError(f"j_min={tjm / 2} leaves no blocks below j={n / 2}")

    y = tuple(range(tjm, n, 2))
    d = dim_irrep(tjm)
    d_alpha = math.floor(d / alpha)
    if d_alpha < 1:
        raise ValueError(f"alpha={alpha} truncates the multiplicity slice to zero (d={d})")
    for tj in y:
        if d_alpha > dim_multiplicity(n, tj):
            raise ValueError(
                f"block j={tj / 2} has multiplicity {dim_multiplicity(n, tj)} < d_alpha={d_alpha}"
            )
    k = len(y) * d * d_alpha

    r_rows = tuple(range(d))
    p_rows = tuple(range(d_alpha))
    embed_index = tuple(
        CoupledIndex(tj, tj - 2 * mi, pi) for tj in y for mi in r_rows for pi in p_rows
    )
    if n <= 62:  # 2^n addressable by int64; beyond that only the arithmetic is usable
        positions = np.fromiter(
            (coupled_position(n, ci) for ci in embed_index), dtype=np.int64, count=k
        )
    else:
        positions = None
    return WorkingSpace(
        n=n,
        alpha=float(alpha),
        two_j_min=tjm,
        y=y,
        d=d,
        d_alpha=d_alpha,
        k=k,
        r_rows=r_rows,
        p_rows=p_rows,
        embed_index=embed_index,
        embed_positions=positions,
    )


def asymptotic_k(n: int, alpha: float) -> float:
    """Leading-order size (2/27) n^3 / alpha of the working space."""
    return 2.0 * n**3 / (27.0 * alpha)


def embed_state(
    v: np.ndarray,
    ws: WorkingSpace,
    target: str = "coupled",
    transform: SchurTransform | None = None,
) -> np.ndarray:
    """Isometrically place a working-space vector into the full register.

    ``target`` selects the coupled basis (default) or, with a transform, the
    computational basis.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (ws.k,):
        raise ValueError(f"expected a length-{ws.k} coordinate vector, got shape {v.shape}")
    if ws.embed_positions is None:
        raise ValueError(f"register of 2^{ws.n} amplitudes is too large to embed densely")
    out = np.zeros(2**ws.n, dtype=complex)
    out[ws.embed_positions] = v
    if target == "coupled":
        return out
    if target == "computational":
        t = transform if transform is not None else schur_transform(ws.n)
        return t.matrix @ out
    raise ValueError("target must be 'coupled' or 'computational'")


def restrict_state(
    vec: np.ndarray, ws: WorkingSpace, leak_tol: float = 1e-10
) -> np.ndarray:
    """Inverse of :func:`embed_state` on its image (coupled-basis input).

    Raises if the vector has more than ``leak_tol`` of its squared norm
    outside the working space.
    """
    vec = np.asarray(vec, dtype=complex)
    if vec.shape != (2**ws.n,):
        raise ValueError(f"expected a coupled-basis vector of length {2**ws.n}")
    if ws.embed_positions is None:
        raise ValueError(f"register of 2^{ws.n} amplitudes is too large to restrict densely")
    v = vec[ws.embed_positions]
    leak = float(np.linalg.norm(vec) ** 2 - np.linalg.norm(v) ** 2)
    if leak > leak_tol:
        raise ValueError(f"vector leaks {leak} squared norm outside the working space")
    return v


def workspace_vector(phi: np.ndarray, ws: WorkingSpace, leak_tol: float = 1e-10) -> np.ndarray:
    """Accept either a K-vector or a coupled-basis vector supported on H'."""
    phi = np.asarray(phi, dtype=complex)
    if phi.shape == (ws.k,):
        return phi
    if phi.shape == (2**ws.n,):
        return restrict_state(phi, ws, leak_tol)
    raise ValueError(
        f"state must have length {ws.k} (working-space coordinates) or {2**ws.n} (coupled basis)"
    )
