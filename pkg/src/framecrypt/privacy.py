"""Distinguishability experiments on random encoding subspaces.

The central quantity is, for a unit vector phi in the working space,

    f(phi) = || E(|phi><phi|) - rho_0 ||_1,

the trace distance between the channel output and the fixed reference
output.  Small f over a whole subspace S means states encoded in S are
nearly indistinguishable to anyone watching the channel output, while the
dimensions of the working space leave room for many such subspaces.  The
helpers here evaluate f two independent ways, estimate its maximum over a
subspace (with a certified bound for tiny subspaces via a covering net),
and run the mean / concentration / smoothness experiments that the theory
predicts:

- the mean of f is at most sqrt(D_alpha / D) <= 1 / sqrt(alpha);
- f is 2-Lipschitz in the Euclidean metric on state vectors;
- deviations of f from its median decay like exp2(-C (K-1) gamma^2 / 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from framecrypt.linalg import derived_rng, haar_unitary, random_pure_state, trace_norm
from framecrypt.channel import reduced_map_f, reference_states, twirl_working_state
from framecrypt.workspace import WorkingSpace, workspace_vector

LIPSCHITZ_BOUND = 2.0
_ASSERT_SLACK = 1e-9


@dataclass(frozen=True)
class PrivacyParams:
    """Free parameters of the privacy statements.

    ``delta`` is the privacy level, ``epsilon`` the net resolution used when
    certifying (defaults to delta/3), ``levy_c`` the concentration constant
    used when plotting/reporting the tail bound, and ``c_prime`` the additive
    constant in the subspace-dimension bound.
    """

    delta: float
    epsilon: float | None = None
    gamma: float = 0.2
    levy_c: float = 1.0
    c_prime: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.delta <= 2.0:
            raise ValueError(f"delta must lie in (0, 2], got {self.delta}")
        if self.epsilon is not None and not 0.0 < self.epsilon < self.delta:
            raise ValueError("epsilon must lie in (0, delta)")
        if self.gamma <= 0.0 or self.levy_c <= 0.0:
            raise ValueError("gamma and levy_c must be positive")

    @property
    def net_epsilon(self) -> float:
        return self.delta / 3.0 if self.epsilon is None else self.epsilon


@dataclass(frozen=True)
class SubspaceSample:
    """An encoding subspace drawn from the invariant measure."""

    ambient_dim: int
    dim_s: int
    seed: int
    basis: np.ndarray = field(repr=False)  # ambient_dim x dim_s, orthonormal columns

    def __post_init__(self):
        if self.basis.shape != (self.ambient_dim, self.dim_s):
            raise ValueError("basis shape does not match the declared dimensions")
        gram = self.basis.conj().T @ self.basis
        if not np.allclose(gram, np.eye(self.dim_s), atol=1e-10):
            raise ValueError("basis columns are not orthonormal")


@dataclass(frozen=True)
class EpsNet:
    """A finite covering of the unit sphere of C^dim_s.

    Points are pairwise > epsilon/2 apart, which caps their number by
    (5/epsilon)^(2 dim_s); the covering radius epsilon/2 is certified
    statistically over fresh probes (failures are absorbed into the net, so
    the recorded probe round is clean by construction).
    """

    dim_s: int
    epsilon: float
    points: np.ndarray = field(repr=False)  # n_points x dim_s
    size_bound: int
    max_probe_distance: float

    @property
    def n_points(self) -> int:
        return self.points.shape[0]


@dataclass
class ConcentrationReport:
    """Summary of a batch of f evaluations on random working-space states."""

    n_samples: int
    mean_f: float
    median_f: float
    tail: dict  # gamma -> empirical P(|f - median| > gamma)
    levy_bound: dict  # gamma -> exp2(-levy_c (K-1) gamma^2 / 2)
    fitted_c: float | None
    seeds: list
    std_f: float = 0.0
    stderr_f: float = 0.0
    bound_inv_sqrt_alpha: float = 0.0
    bound_ratio: float = 0.0


def f_eval(phi: np.ndarray, ws: WorkingSpace, debug: bool = False) -> float:
    """Trace distance between the channel output for phi and the reference.

    Computed on the multiplicity space, where both operators live after the
    rotation factors are traced away; block-diagonal structure makes this a
    sum of small eigenvalue problems.  ``debug=True`` recomputes the same
    number from fully materialized channel outputs and insists they agree.
    """
    v = workspace_vector(phi, ws)
    da = ws.d_alpha
    c = 1.0 / ws.d_p
    total = 0.0
    for i in range(len(ws.y)):
        a = v[ws.block_slice(i)].reshape(ws.d, da)
        t = a.T @ a.conj()
        t[np.diag_indices(da)] -= c
        total += float(np.abs(np.linalg.eigvalsh(t)).sum())
    if debug:
        direct = f_eval_direct(phi, ws)
        assert abs(direct - total) <= _ASSERT_SLACK, (direct, total)
    return total


def f_eval_direct(phi: np.ndarray, ws: WorkingSpace) -> float:
    """f via the full channel output: materialize E(|phi><phi|) - rho_0 block
    by block on the complete (2j+1) x multiplicity spaces and sum trace norms."""
    out = twirl_working_state(phi, ws)
    ref, _ = reference_states(ws)
    total = 0.0
    for tj in ws.y:
        total += trace_norm(out.blocks[tj] - ref.blocks[tj])
    return total


def helstrom_distinguish(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """Best success probability of telling two equiprobable states apart."""
    rho1, rho2 = np.asarray(rho1), np.asarray(rho2)
    if rho1.shape != rho2.shape:
        raise ValueError("states must share a dimension")
    return 0.5 + 0.25 * trace_norm(rho1 - rho2)


def sample_subspace(ws: WorkingSpace, dim_s: int, seed: int) -> SubspaceSample:
    """Subspace of the working space drawn from the invariant measure."""
    if not 1 <= dim_s <= ws.k:
        raise ValueError(f"dim_s must lie in [1, {ws.k}], got {dim_s}")
    basis = haar_unitary(ws.k, seed)[:, :dim_s]
    return SubspaceSample(ambient_dim=ws.k, dim_s=dim_s, seed=int(seed), basis=basis)


# ---------------------------------------------------------------------------
# covering nets and certified maxima
# ---------------------------------------------------------------------------

def build_eps_net(
    dim_s: int,
    epsilon: float,
    seed: int,
    stop_rejections: int = 3000,
    certify_probes: int = 10_000,
) -> EpsNet:
    """Greedy epsilon/2-separated net on the unit sphere of C^dim_s.

    Candidates are accepted while farther than epsilon/2 from every kept
    point; after ``stop_rejections`` consecutive rejections the net is probed
    with fresh samples, any probe found uncovered is added, and probing
    repeats until a full clean round certifies the covering radius.
    """
    if not 1 <= dim_s <= 3:
        raise ValueError("net construction is limited to dim_s in {1, 2, 3}")
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    # unit vectors x, y: ||x - y|| > eps/2  <=>  Re<x, y> < 1 - eps^2/8
    accept_thresh = 1.0 - epsilon**2 / 8.0
    cand_rng = derived_rng(seed, 0)
    probe_rng = derived_rng(seed, 1)

    buf = np.empty((1024, dim_s), dtype=complex)
    count = 0

    def push(vec: np.ndarray) -> None:
        nonlocal buf, count
        if count == buf.shape[0]:
            buf = np.concatenate([buf, np.empty_like(buf)])
        buf[count] = vec
        count += 1

    rejections = 0
    batch = 512
    while rejections < stop_rejections:
        cands = random_pure_state(dim_s, cand_rng, size=batch)
        first_new = count
        if count:
            screen = (buf[:count].conj() @ cands.T).real.max(axis=0)
        else:
            screen = np.full(batch, -1.0)
        for i in range(batch):
            if rejections >= stop_rejections:
                break
            worst = screen[i]
            if worst < accept_thresh and count > first_new:
                worst = max(worst, (buf[first_new:count].conj() @ cands[i]).real.max())
            if worst >= accept_thresh:
                rejections += 1
            else:
                push(cands[i])
                rejections = 0

    max_probe = 0.0
    while True:
        probes = random_pure_state(dim_s, probe_rng, size=certify_probes)
        worst_dist = 0.0
        bad: list[np.ndarray] = []
        for lo in range(0, certify_probes, 1024):
            chunk = probes[lo : lo + 1024]
            overlap = (buf[:count].conj() @ chunk.T).real.max(axis=0)
            dist = np.sqrt(np.maximum(2.0 - 2.0 * overlap, 0.0))
            worst_dist = max(worst_dist, float(dist.max()))
            bad.extend(chunk[dist > epsilon / 2.0])
        if not bad:
            max_probe = worst_dist
            break
        for vec in bad:  # uncovered probes stay > eps/2 apart, so separation survives
            if (buf[:count].conj() @ vec).real.max() < accept_thresh:
                push(vec)

    size_bound = math.ceil((5.0 / epsilon) ** (2 * dim_s))
    net = buf[:count].copy()
    if net.shape[0] > size_bound:
        raise AssertionError(f"net size {net.shape[0]} exceeds the packing bound {size_bound}")
    return EpsNet(
        dim_s=dim_s,
        epsilon=float(epsilon),
        points=net,
        size_bound=size_bound,
        max_probe_distance=max_probe,
    )


class MaxFEstimate(tuple):
    """(lower_bound, certified_upper_bound) with named access."""

    def __new__(cls, lower_bound: float, certified_upper_bound: float | None):
        return super().__new__(cls, (lower_bound, certified_upper_bound))

    @property
    def lower_bound(self) -> float:
        return self[0]

    @property
    def certified_upper_bound(self) -> float | None:
        return self[1]


def _lift_apply(w_blocks: list[np.ndarray], mat: np.ndarray, ws: WorkingSpace) -> np.ndarray:
    """Apply sum_j I_D (x) W_j^T columnwise to a K x r matrix."""
    out = np.empty_like(mat)
    da = ws.d_alpha
    for i, w in enumerate(w_blocks):
        s = ws.block_slice(i)
        blk = mat[s].reshape(ws.d, da, -1)
        out[s] = np.einsum("mls,lk->mks", blk, w.T).reshape(ws.d * da, -1)
    return out


def _ascend(c0: np.ndarray, basis: np.ndarray, ws: WorkingSpace, iters: int = 80, tol: float = 1e-12) -> tuple[float, np.ndarray]:
    """Alternating maximization of f over the unit sphere of span(basis).

    f(phi) = max over Hermitian W with ||W||_inf <= 1 of tr[W (F(phi) - ref)],
    so alternating 'best W for phi' (the eigenvalue-sign operator) with 'best
    phi for W' (top eigenvector of the lifted quadratic form) increases f
    monotonically.
    """
    da = ws.d_alpha
    c = c0 / np.linalg.norm(c0)
    best = -np.inf
    cref = 1.0 / ws.d_p
    for _ in range(iters):
        v = basis @ c
        w_blocks = []
        val = 0.0
        for i in range(len(ws.y)):
            a = v[ws.block_slice(i)].reshape(ws.d, da)
            t = a.T @ a.conj()
            t[np.diag_indices(da)] -= cref
            evals, evecs = np.linalg.eigh(t)
            val += float(np.abs(evals).sum())
            w_blocks.append((evecs * np.sign(evals)) @ evecs.conj().T)
        if val <= best + tol:
            best = max(best, val)
            break
        best = val
        quad = basis.conj().T @ _lift_apply(w_blocks, basis, ws)
        evals, evecs = np.linalg.eigh((quad + quad.conj().T) / 2.0)
        c = evecs[:, -1]
    return best, c


def estimate_max_f(
    sample: SubspaceSample,
    ws: WorkingSpace,
    budget: int,
    seed: int,
    net_epsilon: float = 0.3,
    ascent_restarts: int = 4,
) -> MaxFEstimate:
    """Estimate max of f over the unit sphere of the sampled subspace.

    The lower bound comes from ``budget`` random probes refined by alternating
    ascent from the best few.  For dim_s = 1, f is phase invariant and the
    single value is exact; for dim_s = 2 a covering net plus the Lipschitz
    constant yields a certified upper bound as well.
    """
    if sample.ambient_dim != ws.k:
        raise ValueError("subspace does not belong to this working space")
    if budget < 1:
        raise ValueError("budget must be positive")
    basis = sample.basis
    if sample.dim_s == 1:
        val = f_eval(basis[:, 0], ws)
        return MaxFEstimate(val, val)

    probes = random_pure_state(sample.dim_s, derived_rng(seed, 0), size=budget)
    vals = np.array([f_eval(basis @ c, ws) for c in probes])
    lower = float(vals.max())

    order = np.argsort(vals)[::-1][: max(1, ascent_restarts)]
    for idx in order:
        val, _ = _ascend(probes[idx], basis, ws)
        lower = max(lower, val)

    certified = None
    if sample.dim_s == 2:
        net = build_eps_net(2, net_epsilon, derived_rng(seed, 1).integers(2**63))
        net_vals = np.array([f_eval(basis @ c, ws) for c in net.points])
        lower = max(lower, float(net_vals.max()))
        # covering radius eps/2 and |f' | <= 2 give max f <= net max + eps
        certified = float(net_vals.max()) + net.epsilon
    return MaxFEstimate(lower, certified)


# ---------------------------------------------------------------------------
# sampling experiments
# ---------------------------------------------------------------------------

def _sample_f(ws: WorkingSpace, n_samples: int, seed: int) -> np.ndarray:
    """f on n_samples random working-space states, one derived generator each."""
    return np.array(
        [f_eval(random_pure_state(ws.k, derived_rng(seed, i)), ws) for i in range(n_samples)]
    )


def mean_f_experiment(ws: WorkingSpace, n_samples: int, seed: int) -> ConcentrationReport:
    """Sample f and check the mean and median against their predicted bounds.

    Raises AssertionError if the empirical mean exceeds 1/sqrt(alpha) (or the
    tighter sqrt(d_alpha/d)) by more than three standard errors, or if the
    median exceeds twice the mean.
    """
    if n_samples < 2:
        raise ValueError("need at least two samples")
    fs = _sample_f(ws, n_samples, seed)
    mean, median = float(fs.mean()), float(np.median(fs))
    std = float(fs.std(ddof=1))
    se = std / math.sqrt(n_samples)
    bound_alpha = 1.0 / math.sqrt(ws.alpha)
    bound_ratio = math.sqrt(ws.d_alpha / ws.d)
    if mean > bound_alpha + 3.0 * se:
        raise AssertionError(f"mean f {mean} exceeds 1/sqrt(alpha)={bound_alpha} + 3 SE")
    if mean > bound_ratio + 3.0 * se:
        raise AssertionError(f"mean f {mean} exceeds sqrt(d_alpha/d)={bound_ratio} + 3 SE")
    if median > 2.0 * mean + _ASSERT_SLACK:
        raise AssertionError(f"median {median} exceeds twice the mean {mean}")
    return ConcentrationReport(
        n_samples=n_samples,
        mean_f=mean,
        median_f=median,
        tail={},
        levy_bound={},
        fitted_c=None,
        seeds=[int(seed)],
        std_f=std,
        stderr_f=se,
        bound_inv_sqrt_alpha=bound_alpha,
        bound_ratio=bound_ratio,
    )


def concentration_experiment(
    ws: WorkingSpace,
    n_samples: int,
    gamma_grid,
    params: PrivacyParams,
    seed: int,
) -> ConcentrationReport:
    """Empirical tail of |f - median| against the exponential reference curve.

    ``fitted_c`` is the largest constant for which exp2(-c (K-1) gamma^2 / 2)
    majorizes the observed tail on the whole grid (None when every observed
    tail is zero, i.e. no finite constraint).
    """
    if n_samples < 2:
        raise ValueError("need at least two samples")
    gammas = [float(g) for g in gamma_grid]
    if not gammas or min(gammas) <= 0.0:
        raise ValueError("gamma grid must be positive")
    fs = _sample_f(ws, n_samples, seed)
    mean, median = float(fs.mean()), float(np.median(fs))
    dev = np.abs(fs - median)
    tail = {g: float(np.mean(dev > g)) for g in gammas}
    levy = {g: 2.0 ** (-params.levy_c * (ws.k - 1) * g**2 / 2.0) for g in gammas}
    constraints = [
        -2.0 * math.log2(t) / ((ws.k - 1) * g**2) for g, t in tail.items() if t > 0.0
    ]
    fitted = min(constraints) if constraints else None
    return ConcentrationReport(
        n_samples=n_samples,
        mean_f=mean,
        median_f=median,
        tail=tail,
        levy_bound=levy,
        fitted_c=fitted,
        seeds=[int(seed)],
        std_f=float(fs.std(ddof=1)),
        stderr_f=float(fs.std(ddof=1)) / math.sqrt(n_samples),
        bound_inv_sqrt_alpha=1.0 / math.sqrt(ws.alpha),
        bound_ratio=math.sqrt(ws.d_alpha / ws.d),
    )


def lipschitz_check(
    ws: WorkingSpace,
    n_pairs: int,
    seed: int,
    perturbation: float | None = None,
) -> float:
    """Largest |f(phi) - f(psi)| / ||phi - psi|| over sampled pairs.

    With ``perturbation`` set, psi is phi plus Gaussian noise of that scale
    (renormalized), stressing the bound where it is tightest.  Asserts the
    ratio never exceeds 2 (plus roundoff slack); returns the maximum ratio.
    """
    if n_pairs < 1:
        raise ValueError("need at least one pair")
    worst = 0.0
    for i in range(n_pairs):
        rng = derived_rng(seed, i)
        phi = random_pure_state(ws.k, rng)
        if perturbation is None:
            psi = random_pure_state(ws.k, rng)
        else:
            noise = rng.standard_normal(ws.k) + 1j * rng.standard_normal(ws.k)
            psi = phi + perturbation * noise
            psi = psi / np.linalg.norm(psi)
        gap = np.linalg.norm(phi - psi)
        if gap < 1e-13:
            continue
        ratio = abs(f_eval(phi, ws) - f_eval(psi, ws)) / gap
        worst = max(worst, float(ratio))
    if worst > LIPSCHITZ_BOUND + _ASSERT_SLACK:
        raise AssertionError(f"observed Lipschitz ratio {worst} exceeds 2")
    return worst


# ---------------------------------------------------------------------------
# unitary moment checks
# ---------------------------------------------------------------------------

def haar_fourth_moment(k: int, i: int, j: int, kk: int, l: int, m: int, n: int, p: int, q: int) -> float:
    """E[U_ij conj(U_kl) U_mn conj(U_pq)] for a Haar unitary on C^k (0-based).

    The standard two-permutation Weingarten expression for degree-2 moments.
    """
    if k < 2:
        raise ValueError("closed form requires k >= 2")
    d = lambda a, b: 1.0 if a == b else 0.0  # noqa: E731
    term_plus = d(i, kk) * d(j, l) * d(m, p) * d(n, q) + d(i, p) * d(j, q) * d(kk, m) * d(l, n)
    term_minus = d(i, kk) * d(j, q) * d(l, n) * d(m, p) + d(i, p) * d(j, l) * d(kk, m) * d(n, q)
    return (term_plus - term_minus / k) / (k**2 - 1)


def haar_moment_check(k: int, n_samples: int, seed: int, chunk: int = 5000) -> dict:
    """Monte Carlo fourth moments of Haar unitaries against the closed form.

    Checks E|U00|^4, E|U00|^2|U01|^2 and the cross term
    E[U00 conj(U01) U11 conj(U10)], each within four standard errors, plus
    the exact per-sample row normalization.  Returns a report dict.
    """
    if k < 2:
        raise ValueError("need dimension k >= 2")
    if n_samples < 100:
        raise ValueError("need at least 100 samples")
    m_abs4 = np.empty(n_samples)
    m_cross2 = np.empty(n_samples)
    m_loop = np.empty(n_samples, dtype=complex)
    done = 0
    block_idx = 0
    while done < n_samples:
        take = min(chunk, n_samples - done)
        us = haar_unitary(k, derived_rng(seed, block_idx), size=take)
        row_norm = np.abs(us[:, 0, :]) ** 2
        if np.max(np.abs(row_norm.sum(axis=1) - 1.0)) > 1e-10:
            raise AssertionError("sampled unitaries have non-normalized rows")
        u00, u01 = us[:, 0, 0], us[:, 0, 1]
        u10, u11 = us[:, 1, 0], us[:, 1, 1]
        m_abs4[done : done + take] = np.abs(u00) ** 4
        m_cross2[done : done + take] = (np.abs(u00) * np.abs(u01)) ** 2
        m_loop[done : done + take] = u00 * u01.conj() * u11 * u10.conj()
        done += take
        block_idx += 1

    exact = {
        "abs4": haar_fourth_moment(k, 0, 0, 0, 0, 0, 0, 0, 0),
        "abs2abs2": haar_fourth_moment(k, 0, 0, 0, 0, 0, 1, 0, 1),
        "loop": haar_fourth_moment(k, 0, 0, 0, 1, 1, 1, 1, 0),
    }
    report = {"k": k, "n_samples": n_samples, "exact": exact, "estimate": {}, "z": {}}
    for name, samples in (("abs4", m_abs4), ("abs2abs2", m_cross2), ("loop", m_loop.real)):
        est = float(samples.mean())
        se = float(samples.std(ddof=1)) / math.sqrt(n_samples)
        z = abs(est - exact[name]) / se if se > 0 else 0.0
        report["estimate"][name] = est
        report["z"][name] = float(z)
        if z > 4.0:
            raise AssertionError(f"moment {name} off by {z:.2f} standard errors")
    imag_se = float(m_loop.imag.std(ddof=1)) / math.sqrt(n_samples)
    imag_z = abs(float(m_loop.imag.mean())) / imag_se if imag_se > 0 else 0.0
    report["estimate"]["loop_imag"] = float(m_loop.imag.mean())
    report["z"]["loop_imag"] = float(imag_z)
    if imag_z > 4.0:
        raise AssertionError(f"cross moment has spurious imaginary part ({imag_z:.2f} SE)")
    return report


# ---------------------------------------------------------------------------
# the headline experiment
# ---------------------------------------------------------------------------

def theorem1_experiment(
    n: int,
    delta: float,
    params: PrivacyParams,
    n_subspaces: int,
    seed: int,
    budget: int = 200,
) -> dict:
    """Sample subspaces at the dimension the privacy bound permits.

    Uses the canonical parameter choices alpha = 36/delta^2 and net
    resolution delta/3; the subspace dimension is 2^(3 log2 n
    + 3.5 log2 delta + c_prime).  Desk-scale parameters are often
    infeasible (the multiplicity slice truncates to zero, or the dimension
    is below one state or beyond the whole working space); those runs return
    a structured report with ``feasible = False`` rather than raising.
    """
    from framecrypt.workspace import build_working_space

    if n_subspaces < 1:
        raise ValueError("need at least one subspace")
    alpha = 36.0 / delta**2
    bits = 3.0 * math.log2(n) + 3.5 * math.log2(delta) + params.c_prime
    base = {
        "n": n,
        "delta": delta,
        "alpha": alpha,
        "c_prime": params.c_prime,
        "dim_bits": bits,
        "feasible": False,
    }
    try:
        ws = build_working_space(n, alpha)
    except ValueError as exc:
        base["reason"] = str(exc)
        return base
    dim_s = math.floor(2.0**bits)
    base["dim_s"] = dim_s
    base["workspace"] = ws.descriptor()
    if dim_s < 1:
        base["reason"] = "dimension bound is below a single state"
        return base
    if dim_s > ws.k:
        base["reason"] = f"dimension bound {dim_s} exceeds the working space (K={ws.k})"
        return base

    subspaces = []
    n_violating = 0
    probes_over = 0
    probes_total = 0
    for s in range(n_subspaces):
        sub_seed = int(derived_rng(seed, s).integers(2**63))
        sub = sample_subspace(ws, dim_s, sub_seed)
        est = estimate_max_f(sub, ws, budget=budget, seed=sub_seed, net_epsilon=min(params.net_epsilon, 1.0))
        probe_vals = np.array(
            [
                f_eval(sub.basis @ random_pure_state(dim_s, derived_rng(sub_seed, 7, i)), ws)
                for i in range(min(budget, 100))
            ]
        )
        probes_over += int(np.sum(probe_vals > delta))
        probes_total += probe_vals.size
        violated = est.lower_bound > delta
        n_violating += int(violated)
        subspaces.append(
            {
                "seed": sub_seed,
                "lower_bound": est.lower_bound,
                "certified_upper_bound": est.certified_upper_bound,
                "violates_delta": bool(violated),
            }
        )
    base.update(
        feasible=True,
        subspaces=subspaces,
        fraction_violating=n_violating / n_subspaces,
        fraction_probe_states_over_delta=probes_over / probes_total,
    )
    return base
