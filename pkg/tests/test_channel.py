"""Tests for the rotation-averaging channel: exact block action vs quadrature."""

import math

import numpy as np
import pytest

from framecrypt.channel import (
    BlockState,
    QuadratureSpec,
    block_decompose,
    reduced_map_f,
    reference_states,
    su2_quadrature,
    twirl,
    twirl_block,
    twirl_oracle,
    twirl_working_state,
)
from framecrypt.linalg import (
    derived_rng,
    kron_power,
    random_density_matrix,
    trace_norm,
)
from framecrypt.repkit import block_layout, random_euler, rotation_su2, schur_transform, wigner_d
from framecrypt.workspace import build_working_space, embed_state

SINGLET = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def test_quadrature_defaults_are_sufficient():
    for n in (2, 4, 6, 8):
        q = QuadratureSpec.for_qubits(n)
        assert q.is_sufficient(n)
        assert not QuadratureSpec(2 * n, n + 2, 2 * n + 2).is_sufficient(n)
    with pytest.raises(ValueError):
        su2_quadrature(QuadratureSpec(0, 3, 3))


def test_quadrature_integrates_wigner_entries_to_zero():
    # the group average of any D^j entry with j > 0 vanishes
    q = QuadratureSpec.for_qubits(4)
    alphas, betas, w_beta, gammas = su2_quadrature(q)
    assert math.isclose(w_beta.sum() * len(alphas) * len(gammas) / (q.n_alpha * q.n_gamma), 1.0)
    for tj in (2, 4):
        acc = np.zeros((tj + 1, tj + 1), dtype=complex)
        for b, wb in zip(betas, w_beta):
            for a in alphas:
                for g in gammas:
                    acc += wb * wigner_d(tj, (a, b, g))
        acc /= q.n_alpha * q.n_gamma
        np.testing.assert_allclose(acc, 0.0, atol=1e-12)


# ---------------------------------------------------------------------------
# exact block action
# ---------------------------------------------------------------------------

def test_twirl_block_singlet_fixed():
    rho = np.zeros((4, 4), dtype=complex)
    rho[3, 3] = 1.0  # coupled basis: position 3 is the j = 0 state
    np.testing.assert_allclose(twirl_block(rho), rho, atol=1e-14)


def test_twirl_block_stretched_state():
    # |up up> is |j=1, m=1>: the block action spreads it over the triplet
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    out = twirl_block(rho)
    expected = np.diag([1 / 3, 1 / 3, 1 / 3, 0.0]).astype(complex)
    np.testing.assert_allclose(out, expected, atol=1e-14)
    # and through the computational-basis wrapper
    t = schur_transform(2)
    comp = np.zeros((4, 4), dtype=complex)
    comp[0, 0] = 1.0  # |up up><up up|
    np.testing.assert_allclose(
        twirl(comp, t), t.matrix @ expected @ t.matrix.conj().T, atol=1e-13
    )


def test_twirl_block_fixes_maximally_mixed():
    for n in (2, 4):
        rho = np.eye(2**n, dtype=complex) / 2**n
        np.testing.assert_allclose(twirl_block(rho, n), rho, atol=1e-14)


def test_twirl_block_is_a_channel():
    rng = np.random.default_rng(7)
    for n in (2, 4):
        rho = random_density_matrix(2**n, rng)
        out = twirl_block(rho, n)
        assert np.trace(out) == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(out).min() > -1e-12
        # idempotence
        np.testing.assert_allclose(twirl_block(out, n), out, atol=1e-13)
    with pytest.raises(ValueError):
        twirl_block(np.eye(3))


def test_twirl_block_fixes_multiplicity_operators():
    # identity on the rotation factor tensor anything on the multiplicity
    # factor is a fixed point (the protected subsystem)
    n = 4
    rng = np.random.default_rng(3)
    rho = np.zeros((16, 16), dtype=complex)
    for b in block_layout(n):
        sigma = random_density_matrix(b.dim_p, rng)
        s = slice(b.offset, b.offset + b.dim_r * b.dim_p)
        rho[s, s] = np.kron(np.eye(b.dim_r) / b.dim_r, sigma) / len(block_layout(n))
    np.testing.assert_allclose(twirl_block(rho, n), rho, atol=1e-13)


def test_twirl_covariance():
    # E(R rho R^dag) = R E(rho) R^dag for any rotation
    n = 4
    t = schur_transform(n)
    rng = np.random.default_rng(19)
    rho = random_density_matrix(2**n, rng)
    for trial in range(4):
        r = kron_power(rotation_su2(random_euler(rng)), n)
        lhs = twirl(r @ rho @ r.conj().T, t)
        rhs = r @ twirl(rho, t) @ r.conj().T
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)


# ---------------------------------------------------------------------------
# quadrature oracle against the block action
# ---------------------------------------------------------------------------

def test_oracle_singlet_and_stretched():
    rho_singlet = np.outer(SINGLET, SINGLET)
    np.testing.assert_allclose(twirl_oracle(rho_singlet), rho_singlet, atol=1e-12)

    t = schur_transform(2)
    comp = np.zeros((4, 4), dtype=complex)
    comp[0, 0] = 1.0
    np.testing.assert_allclose(twirl_oracle(comp), twirl(comp, t), atol=1e-10)


def test_oracle_matches_block_action_on_random_states():
    for n in (2, 4):
        t = schur_transform(n)
        for i in range(5):
            rho = random_density_matrix(2**n, derived_rng(21, n, i))
            gap = trace_norm(twirl_oracle(rho) - twirl(rho, t))
            assert gap < 1e-10


def test_oracle_preserves_trace():
    rho = random_density_matrix(16, 5)
    out = twirl_oracle(rho)
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
    assert abs(np.trace(out).imag) < 1e-12


def test_oracle_broadcasts_over_stacks():
    stack = np.stack([random_density_matrix(4, s) for s in range(3)])
    outs = twirl_oracle(stack)
    for i in range(3):
        np.testing.assert_allclose(outs[i], twirl_oracle(stack[i]), atol=1e-13)


def test_oracle_warns_when_quadrature_is_too_small():
    rho = random_density_matrix(4, 0)
    with pytest.warns(UserWarning, match="band limit"):
        approx = twirl_oracle(rho, quad=QuadratureSpec(2, 2, 2))
    # the undersized grid still returns something, just not the exact average
    assert trace_norm(approx - twirl_oracle(rho)) > 1e-6


def test_oracle_validation():
    with pytest.raises(ValueError):
        twirl_oracle(np.eye(8))  # odd qubit count
    with pytest.raises(ValueError):
        twirl_oracle(np.eye(3))


# ---------------------------------------------------------------------------
# block containers
# ---------------------------------------------------------------------------

def test_block_decompose_roundtrip():
    rho = random_density_matrix(16, 2)
    bs = block_decompose(rho)
    np.testing.assert_allclose(bs.assemble(), rho, atol=1e-14)
    assert bs.trace() == pytest.approx(1.0, abs=1e-12)
    dropped = block_decompose(rho, keep_cross=False)
    reassembled = dropped.assemble()
    for b in block_layout(4):
        s = slice(b.offset, b.offset + b.dim_r * b.dim_p)
        np.testing.assert_allclose(reassembled[s, s], rho[s, s], atol=1e-14)
    assert trace_norm(reassembled - rho) > 1e-3  # cross blocks really dropped
    with pytest.raises(ValueError):
        block_decompose(np.ones((3, 4)))


def test_block_state_assemble_skips_missing_blocks():
    bs = BlockState(n=2, blocks={0: np.array([[1.0 + 0j]])})
    out = bs.assemble()
    assert out.shape == (4, 4)
    assert out[3, 3] == 1.0
    assert np.abs(out).sum() == 1.0


# ---------------------------------------------------------------------------
# action on the working space
# ---------------------------------------------------------------------------

def test_reduced_map_on_kept_basis_states():
    ws = build_working_space(12, 2.0)
    e0 = np.zeros(ws.k)
    e0[0] = 1.0
    f = reduced_map_f(e0, ws)
    expected = np.zeros((ws.d_p, ws.d_p))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(f, expected, atol=1e-14)


def spread_state(ws):
    """Equal-weight maximal entanglement across every kept block."""
    v = np.zeros(ws.k, dtype=complex)
    for i in range(len(ws.y)):
        blk = np.zeros((ws.d, ws.d_alpha), dtype=complex)
        for l in range(ws.d_alpha):
            blk[l, l] = 1.0
        v[ws.block_slice(i)] = blk.reshape(-1) / math.sqrt(len(ws.y) * ws.d_alpha)
    return v


def test_reduced_map_on_spread_state_is_maximally_mixed():
    ws = build_working_space(12, 2.0)
    f = reduced_map_f(spread_state(ws), ws)
    np.testing.assert_allclose(f, np.eye(ws.d_p) / ws.d_p, atol=1e-13)


def test_reduced_map_is_a_state():
    ws = build_working_space(8, 2.0)
    from framecrypt.linalg import random_pure_state

    for s in range(5):
        f = reduced_map_f(random_pure_state(ws.k, s), ws)
        assert np.trace(f).real == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(f).min() > -1e-12


def test_reference_states_shapes_and_fixed_point():
    ws = build_working_space(4, 2.0)
    rho0, varrho0 = reference_states(ws)
    np.testing.assert_allclose(varrho0, np.eye(ws.d_p) / ws.d_p, atol=1e-15)
    assert complex(rho0.trace()).real == pytest.approx(1.0, abs=1e-12)
    full = rho0.assemble()
    np.testing.assert_allclose(twirl_block(full, ws.n), full, atol=1e-13)


def test_twirl_working_state_matches_full_pipeline():
    # embed -> rotate-average in the computational basis -> back to coupled
    # must equal the direct block construction
    ws = build_working_space(4, 2.0)
    t = schur_transform(4)
    from framecrypt.linalg import random_pure_state

    for s in range(4):
        v = random_pure_state(ws.k, s)
        psi = embed_state(v, ws, target="computational", transform=t)
        exact = t.matrix.conj().T @ twirl(np.outer(psi, psi.conj()), t) @ t.matrix
        np.testing.assert_allclose(twirl_working_state(v, ws).assemble(), exact, atol=1e-12)


def test_twirl_working_state_traces():
    ws = build_working_space(12, 2.0)
    from framecrypt.linalg import random_pure_state

    bs = twirl_working_state(random_pure_state(ws.k, 9), ws)
    assert set(bs.blocks) == set(ws.y)
    assert complex(bs.trace()).real == pytest.approx(1.0, abs=1e-12)
