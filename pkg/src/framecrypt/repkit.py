"""Total-angular-momentum bookkeeping for a register of N qubits.

Coupling the N spin-1/2 systems one at a time (qubit 1, then 2, ...) splits
the register into blocks labelled by the total spin j, each of the form
(rotation factor of dimension 2j+1) x (multiplicity factor).  A basis of the
multiplicity factor is indexed by the admissible coupling histories: step
sequences over {+1, -1} acting on 2j that start at 0 and never go negative.

Half-integers are stored doubled (``two_j = 2j``, ``two_m = 2m``) so all
dimension arithmetic stays exact.  The canonical coupled-basis layout used
throughout the package is: blocks by descending two_j; inside a block the
rotation index is the slow axis (two_m descending from two_j) and the path
index the fast axis (paths in lexicographic order with +1 before -1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

DENSE_QUBIT_LIMIT = 12  # full 2^N transforms above this are refused


class CoupledIndex(NamedTuple):
    two_j: int
    two_m: int
    path_index: int


class EulerAngles(NamedTuple):
    """zyz rotation angles: alpha, gamma in [0, 2*pi), beta in [0, pi]."""

    alpha: float
    beta: float
    gamma: float


@dataclass(frozen=True)
class BlockInfo:
    two_j: int
    offset: int
    dim_r: int  # rotation factor, 2j+1
    dim_p: int  # multiplicity factor


def _require_even(n: int) -> None:
    if n < 2 or n % 2 != 0:
        raise ValueError(f"qubit count must be a positive even integer, got {n}")


def irrep_labels(n: int) -> list[int]:
    """two_j values present for n qubits, largest first (canonical block order)."""
    _require_even(n)
    return list(range(n, -1, -2))


def dim_irrep(two_j: int) -> int:
    if two_j < 0:
        raise ValueError("two_j must be nonnegative")
    return two_j + 1


def dim_multiplicity(n: int, two_j: int) -> int:
    """Number of spin-j blocks for n qubits, as an exact integer.

    Equals binom(n, n/2 - j) * (2j+1) / (n/2 + j + 1); the division is exact.
    """
    _require_even(n)
    if two_j % 2 != 0 or not 0 <= two_j <= n:
        raise ValueError(f"two_j={two_j} is not an integer-spin label in [0, {n}]")
    j = two_j // 2
    num = math.comb(n, n // 2 - j) * (two_j + 1)
    q, r = divmod(num, n // 2 + j + 1)
    assert r == 0, "multiplicity formula must divide exactly"
    return q


def block_layout(n: int) -> list[BlockInfo]:
    """Offsets and factor dimensions of each block in the canonical layout."""
    out: list[BlockInfo] = []
    offset = 0
    for two_j in irrep_labels(n):
        dr, dp = dim_irrep(two_j), dim_multiplicity(n, two_j)
        out.append(BlockInfo(two_j, offset, dr, dp))
        offset += dr * dp
    assert offset == 2**n
    return out


def coupled_position(n: int, index: CoupledIndex) -> int:
    """Global coupled-basis position of (two_j, two_m, path_index)."""
    for b in block_layout(n):
        if b.two_j == index.two_j:
            if (index.two_j - index.two_m) % 2 or abs(index.two_m) > index.two_j:
                raise ValueError(f"two_m={index.two_m} invalid for two_j={index.two_j}")
            if not 0 <= index.path_index < b.dim_p:
                raise ValueError(f"path index {index.path_index} out of range for two_j={index.two_j}")
            m_idx = (index.two_j - index.two_m) // 2
            return b.offset + m_idx * b.dim_p + index.path_index
    raise ValueError(f"two_j={index.two_j} not present for n={n}")


def enumerate_paths(n: int, two_j: int) -> list[tuple[int, ...]]:
    """All coupling histories ending at two_j, in lexicographic order (+1 < -1).

    A history is a tuple of n steps from {+1, -1}; partial sums stay >= 0 and
    the total equals two_j, so the first step is always +1.
    """
    _require_even(n)
    if two_j % 2 != 0 or not 0 <= two_j <= n:
        raise ValueError(f"two_j={two_j} is not reachable for n={n}")
    paths: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def extend(cur: int) -> None:
        k = len(prefix)
        if k == n:
            if cur == two_j:
                paths.append(tuple(prefix))
            return
        rem = n - k - 1  # steps remaining after the one about to be taken
        for step in (1, -1):
            nxt = cur + step
            if nxt < 0 or abs(two_j - nxt) > rem or (two_j - nxt - rem) % 2:
                continue
            prefix.append(step)
            extend(nxt)
            prefix.pop()

    extend(0)
    return paths


# ---------------------------------------------------------------------------
# sequential coupling and the full change of basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchurTransform:
    """Unitary change of basis from the computational to the coupled basis.

    ``matrix`` columns are coupled-basis states expressed in the
    computational basis, ordered per ``ordering`` (the canonical layout).
    """

    n: int
    matrix: np.ndarray
    ordering: tuple[CoupledIndex, ...]
    blocks: dict[int, BlockInfo]

    def block_columns(self, two_j: int) -> np.ndarray:
        b = self.blocks[two_j]
        return self.matrix[:, b.offset : b.offset + b.dim_r * b.dim_p]


def _couple_up(mat: np.ndarray, two_j: int) -> np.ndarray:
    """Attach one qubit and raise: spin two_j/2 -> (two_j+1)/2.

    Columns of ``mat`` are |j, m> for two_m = two_j, two_j-2, ..., -two_j in
    the computational basis of the qubits coupled so far; the new qubit is
    appended as the last tensor factor.
    """
    dim, cols = mat.shape
    t = two_j
    out = np.zeros((2 * dim, t + 2), dtype=complex)
    for col in range(t + 2):
        two_m = t + 1 - 2 * col
        if abs(two_m - 1) <= t:  # parent m = M - 1/2, new qubit up
            c = math.sqrt((t + two_m + 1) / (2 * (t + 1)))
            out[0::2, col] += c * mat[:, (t - (two_m - 1)) // 2]
        if abs(two_m + 1) <= t:  # parent m = M + 1/2, new qubit down
            c = math.sqrt((t - two_m + 1) / (2 * (t + 1)))
            out[1::2, col] += c * mat[:, (t - (two_m + 1)) // 2]
    return out


def _couple_down(mat: np.ndarray, two_j: int) -> np.ndarray:
    """Attach one qubit and lower: spin two_j/2 -> (two_j-1)/2.

    Sign convention: the up-qubit coefficient carries the minus sign, which
    leaves the stretched state of the raised branch with coefficient +1.
    """
    dim, cols = mat.shape
    t = two_j
    out = np.zeros((2 * dim, t), dtype=complex)
    for col in range(t):
        two_m = t - 1 - 2 * col
        c_up = -math.sqrt((t - two_m + 1) / (2 * (t + 1)))
        c_dn = math.sqrt((t + two_m + 1) / (2 * (t + 1)))
        out[0::2, col] += c_up * mat[:, (t - (two_m - 1)) // 2]
        out[1::2, col] += c_dn * mat[:, (t - (two_m + 1)) // 2]
    return out


def schur_transform(n: int, max_qubits: int = DENSE_QUBIT_LIMIT) -> SchurTransform:
    """Build the full 2^n x 2^n change of basis by sequential coupling."""
    _require_even(n)
    if n > max_qubits:
        raise ValueError(f"n={n} exceeds the dense-transform limit of {max_qubits} qubits")

    # sectors: (two_j, path, matrix of |j, m> columns), kept in path-lex order
    sectors: list[tuple[int, tuple[int, ...], np.ndarray]] = [(1, (1,), np.eye(2, dtype=complex))]
    for _ in range(n - 1):
        grown: list[tuple[int, tuple[int, ...], np.ndarray]] = []
        for two_j, path, mat in sectors:
            grown.append((two_j + 1, path + (1,), _couple_up(mat, two_j)))
            if two_j >= 1:
                grown.append((two_j - 1, path + (-1,), _couple_down(mat, two_j)))
        sectors = grown

    by_j: dict[int, list[tuple[tuple[int, ...], np.ndarray]]] = {}
    for two_j, path, mat in sectors:
        by_j.setdefault(two_j, []).append((path, mat))

    layout = block_layout(n)
    matrix = np.zeros((2**n, 2**n), dtype=complex)
    ordering: list[CoupledIndex] = []
    blocks: dict[int, BlockInfo] = {}
    for b in layout:
        blocks[b.two_j] = b
        members = by_j.get(b.two_j, [])
        assert len(members) == b.dim_p
        for m_idx in range(b.dim_r):
            two_m = b.two_j - 2 * m_idx
            for p_idx, (_, mat) in enumerate(members):
                matrix[:, b.offset + m_idx * b.dim_p + p_idx] = mat[:, m_idx]
                ordering.append(CoupledIndex(b.two_j, two_m, p_idx))
    return SchurTransform(n=n, matrix=matrix, ordering=tuple(ordering), blocks=blocks)


# ---------------------------------------------------------------------------
# rotation matrices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _jz_jy(two_j: int):
    """m values (descending) and the eigensystem of Jy for spin two_j/2."""
    j = two_j / 2.0
    m = (two_j - 2 * np.arange(two_j + 1)) / 2.0
    jp = np.zeros((two_j + 1, two_j + 1))
    for i in range(1, two_j + 1):
        mm = m[i]
        jp[i - 1, i] = math.sqrt(j * (j + 1) - mm * (mm + 1))
    jy = (jp - jp.T) / 2j
    evals, evecs = np.linalg.eigh(jy)
    m.flags.writeable = False
    evals.flags.writeable = False
    evecs.flags.writeable = False
    return m, evals, evecs


def check_angles(angles: EulerAngles) -> EulerAngles:
    a, b, g = angles
    if not (0.0 <= a < 2 * math.pi and 0.0 <= b <= math.pi and 0.0 <= g < 2 * math.pi):
        raise ValueError(f"angles out of range: {angles}")
    return EulerAngles(a, b, g)


def wigner_d(two_j: int, angles) -> np.ndarray:
    """Rotation matrix exp(-i a Jz) exp(-i b Jy) exp(-i g Jz) for spin two_j/2.

    Rows and columns are ordered two_m = two_j, two_j-2, ..., -two_j.
    """
    if two_j < 0:
        raise ValueError("two_j must be nonnegative")
    a, b, g = angles
    m, evals, evecs = _jz_jy(two_j)
    expy = (evecs * np.exp(-1j * b * evals)) @ evecs.conj().T
    return np.exp(-1j * a * m)[:, None] * expy * np.exp(-1j * g * m)[None, :]


def rotation_su2(angles) -> np.ndarray:
    """Closed-form 2x2 rotation (the two_j = 1 case of :func:`wigner_d`)."""
    a, b, g = angles
    ch, sh = math.cos(b / 2), math.sin(b / 2)
    return np.array(
        [
            [np.exp(-0.5j * (a + g)) * ch, -np.exp(-0.5j * (a - g)) * sh],
            [np.exp(0.5j * (a - g)) * sh, np.exp(0.5j * (a + g)) * ch],
        ]
    )


def euler_from_su2(u: np.ndarray, tol: float = 1e-12) -> EulerAngles:
    """Angles in the restricted ranges whose rotation equals u up to sign.

    The restricted ranges parameterize rotations of the sphere; u and -u map
    to the same angles, so ``rotation_su2(euler_from_su2(u))`` reproduces u
    only up to a global sign (exactly +/-).
    """
    u = np.asarray(u)
    if u.shape != (2, 2):
        raise ValueError("expected a 2x2 special unitary")
    a, b = u[0, 0], u[1, 0]
    beta = 2.0 * math.atan2(abs(b), abs(a))
    if abs(b) <= tol:  # no middle rotation: only a+g is defined
        return EulerAngles((-2.0 * np.angle(a)) % (2 * math.pi), 0.0, 0.0)
    if abs(a) <= tol:  # half turn: only a-g is defined
        return EulerAngles((2.0 * np.angle(b)) % (2 * math.pi), math.pi, 0.0)
    pa, pb = np.angle(a), np.angle(b)
    alpha = (pb - pa) % (2 * math.pi)
    gamma = (-pb - pa) % (2 * math.pi)
    return EulerAngles(alpha, beta, gamma)


def random_euler(seed) -> EulerAngles:
    """Angles of a rotation drawn from the invariant measure on the sphere.

    Uniform alpha and gamma, uniform cos(beta); this is the right measure for
    averaging conjugation actions, where the overall sign of u is irrelevant.
    """
    from framecrypt.linalg import as_rng

    rng = as_rng(seed)
    return EulerAngles(
        rng.uniform(0.0, 2 * math.pi),
        math.acos(rng.uniform(-1.0, 1.0)),
        rng.uniform(0.0, 2 * math.pi),
    )


def projector(n: int, two_j: int, transform: SchurTransform | None = None) -> np.ndarray:
    """Orthogonal projector onto the spin-(two_j/2) block, computational basis."""
    t = transform if transform is not None else schur_transform(n)
    cols = t.block_columns(two_j)
    return cols @ cols.conj().T
