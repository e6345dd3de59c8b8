"""Command-line driver.

One entry point, one flag per knob, canonical output: JSON is serialized
with sorted keys and a fixed layout so that re-running a command with the
same seed reproduces the output file byte for byte (wall-clock timing is
reported on stderr, never in the file); CSV follows RFC 4180.  Domain errors
come back as a machine-readable error object on stderr with a nonzero exit
status, while parameter regimes that are merely infeasible (for example a
subspace-dimension bound below one state) are ordinary results.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
import time

import numpy as np

import framecrypt
from framecrypt import capacity as cap
from framecrypt import channel, privacy, repkit, workspace

COMMANDS = (
    "decompose",
    "twirl-check",
    "workspace",
    "mean-f",
    "concentration",
    "lipschitz",
    "haar-moments",
    "theorem1",
    "capacity",
    "net",
    "emit-curve",
)

DEFAULT_GAMMA_GRID = (0.05, 0.1, 0.15, 0.2, 0.3, 0.5, 1.0, 2.0)


@dataclasses.dataclass
class RunConfig:
    command: str
    n: int | None = None
    alpha: float = 2.0
    delta: float | None = None
    samples: int | None = None
    seed: int = 0
    out: str | None = None
    fmt: str = "json"
    c_prime: float = 0.0
    levy_c: float = 1.0
    j_min: int | None = None
    quadrature: tuple[int, int, int] | None = None
    dim_s: int | None = None
    epsilon: float | None = None
    inputs: tuple[str, ...] = ()
    x_field: str | None = None
    y_field: str | None = None

    def echo(self) -> dict:
        d = dataclasses.asdict(self)
        d["inputs"] = list(self.inputs)
        d["quadrature"] = list(self.quadrature) if self.quadrature else None
        return d


@dataclasses.dataclass
class RunResult:
    config: dict
    tool_version: str
    payload: dict
    workspace_descriptor: dict | None
    wall_clock_seconds: float

    def document(self) -> dict:
        """The serialized (stable) part; timing stays out of the bytes."""
        return {
            "config": self.config,
            "tool_version": self.tool_version,
            "payload": self.payload,
            "workspace_descriptor": self.workspace_descriptor,
        }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="framecrypt",
        description="rotation-twirl channel toolkit: decompositions, twirl checks, privacy experiments, capacity bounds",
    )
    p.add_argument("--command", required=True, choices=COMMANDS)
    p.add_argument("--n", type=int, help="qubit count (or matrix dimension for haar-moments)")
    p.add_argument("--alpha", type=float, default=2.0, help="working-space truncation parameter")
    p.add_argument("--delta", type=float, help="privacy / distinguishability level")
    p.add_argument("--samples", type=int, help="sample count (per command default otherwise)")
    p.add_argument("--seed", type=int, default=0, help="master seed; all sampling derives from it")
    p.add_argument("--out", help="output file path (stdout otherwise)")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--c-prime", type=float, default=0.0, help="additive constant in the dimension bound")
    p.add_argument("--levy-c", type=float, default=1.0, help="constant in the reported tail curve")
    p.add_argument("--j-min", type=int, help="override the smallest kept total spin (integer)")
    p.add_argument("--quadrature", help="comma-separated grid sizes a,b,g for the twirl oracle")
    p.add_argument("--dim-s", type=int, help="subspace dimension (net command)")
    p.add_argument("--epsilon", type=float, help="net resolution (net command)")
    p.add_argument("--inputs", nargs="*", default=[], help="input JSON results (emit-curve)")
    p.add_argument("--x-field", help="abscissa field (emit-curve)")
    p.add_argument("--y-field", help="ordinate field (emit-curve)")
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    quad = None
    if ns.quadrature:
        parts = [int(x) for x in ns.quadrature.split(",")]
        if len(parts) != 3:
            raise ValueError("--quadrature expects three comma-separated sizes a,b,g")
        quad = tuple(parts)
    return RunConfig(
        command=ns.command,
        n=ns.n,
        alpha=ns.alpha,
        delta=ns.delta,
        samples=ns.samples,
        seed=ns.seed,
        out=ns.out,
        fmt=ns.fmt,
        c_prime=ns.c_prime,
        levy_c=ns.levy_c,
        j_min=ns.j_min,
        quadrature=quad,
        dim_s=ns.dim_s,
        epsilon=ns.epsilon,
        inputs=tuple(ns.inputs),
        x_field=ns.x_field,
        y_field=ns.y_field,
    )


def _need(value, flag: str):
    if value is None:
        raise ValueError(f"this command requires {flag}")
    return value


def _ws_from(config: RunConfig) -> workspace.WorkingSpace:
    n = _need(config.n, "--n")
    two_j_min = None if config.j_min is None else 2 * config.j_min
    return workspace.build_working_space(n, config.alpha, two_j_min)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):  # before int: bool is an int subclass
        return bool(x)
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return v if math.isfinite(v) else None
    if isinstance(x, (np.integer, int)):
        return int(x)
    return x


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------

def _run_decompose(config: RunConfig) -> dict:
    n = _need(config.n, "--n")
    rows = []
    for b in repkit.block_layout(n):
        rows.append(
            {
                "j": b.two_j / 2,
                "two_j": b.two_j,
                "dim_rotation": b.dim_r,
                "dim_multiplicity": b.dim_p,
                "product": b.dim_r * b.dim_p,
            }
        )
    return {"n": n, "blocks": rows, "total": 2**n, "sum_products": sum(r["product"] for r in rows)}


def _run_twirl_check(config: RunConfig) -> dict:
    n = _need(config.n, "--n")
    if n > 8:
        raise ValueError("twirl-check builds dense 2^n operators; use n <= 8")
    samples = config.samples or 10
    quad = (
        channel.QuadratureSpec(*config.quadrature)
        if config.quadrature
        else channel.QuadratureSpec.for_qubits(n)
    )
    t = repkit.schur_transform(n)
    from framecrypt.linalg import random_density_matrix, derived_rng

    worst = 0.0
    for i in range(samples):
        rho = random_density_matrix(2**n, derived_rng(config.seed, i))
        exact = channel.twirl(rho, t)
        quadr = channel.twirl_oracle(rho, n, quad)
        worst = max(worst, framecrypt.trace_norm(exact - quadr))
    return {
        "n": n,
        "n_states": samples,
        "quadrature": dataclasses.asdict(quad),
        "quadrature_sufficient": quad.is_sufficient(n),
        "max_trace_norm_gap": worst,
    }


def _run_workspace(config: RunConfig) -> tuple[dict, dict]:
    ws = _ws_from(config)
    asym = workspace.asymptotic_k(ws.n, ws.alpha)
    payload = {
        "descriptor": ws.descriptor(),
        "asymptotic_k": asym,
        "ratio_k_to_asymptotic": ws.k / asym,
    }
    return payload, ws.descriptor()


def _run_mean_f(config: RunConfig) -> tuple[dict, dict]:
    ws = _ws_from(config)
    report = privacy.mean_f_experiment(ws, config.samples or 2000, config.seed)
    return _jsonable(dataclasses.asdict(report)), ws.descriptor()


def _run_concentration(config: RunConfig) -> tuple[dict, dict]:
    ws = _ws_from(config)
    params = privacy.PrivacyParams(delta=config.delta or 1.0, levy_c=config.levy_c)
    report = privacy.concentration_experiment(
        ws, config.samples or 2000, DEFAULT_GAMMA_GRID, params, config.seed
    )
    d = dataclasses.asdict(report)
    d["tail"] = {f"{g:g}": v for g, v in report.tail.items()}
    d["levy_bound"] = {f"{g:g}": v for g, v in report.levy_bound.items()}
    return _jsonable(d), ws.descriptor()


def _run_lipschitz(config: RunConfig) -> tuple[dict, dict]:
    ws = _ws_from(config)
    n_pairs = config.samples or 2000
    worst = privacy.lipschitz_check(ws, n_pairs, config.seed)
    worst_near = privacy.lipschitz_check(ws, max(n_pairs // 10, 1), config.seed + 1, perturbation=1e-4)
    return (
        {
            "n_pairs": n_pairs,
            "max_ratio": worst,
            "max_ratio_nearby": worst_near,
            "bound": privacy.LIPSCHITZ_BOUND,
        },
        ws.descriptor(),
    )


def _run_haar_moments(config: RunConfig) -> dict:
    k = _need(config.n, "--n (matrix dimension)")
    return _jsonable(privacy.haar_moment_check(k, config.samples or 20000, config.seed))


def _run_theorem1(config: RunConfig) -> dict:
    n = _need(config.n, "--n")
    delta = _need(config.delta, "--delta")
    params = privacy.PrivacyParams(delta=delta, c_prime=config.c_prime, levy_c=config.levy_c)
    report = privacy.theorem1_experiment(
        n, delta, params, n_subspaces=config.samples or 5, seed=config.seed
    )
    return _jsonable(report)


def _run_capacity(config: RunConfig) -> dict:
    n = _need(config.n, "--n")
    delta = config.delta if config.delta is not None else 0.0
    tight, middle, cube = cap.rank_pi_prime_chain(n)
    payload = {
        "n": n,
        "delta": delta,
        "q_perfect": cap.q_perfect(n),
        "c_perfect_asymptotic": cap.c_perfect_asymptotic(n),
        "rank_pi_prime": tight,
        "rank_chain": {"tight": tight, "middle": middle, "cube": cube},
        "min_delta_for_advantage": cap.min_delta_for_advantage(n, config.c_prime),
        "classical_capacity_upper": (
            cap.classical_capacity_upper(n, delta) if 0.0 <= delta <= 0.5 else None
        ),
        "thm1_dim_bound": cap.thm1_dim_bound(n, delta, config.c_prime) if delta > 0 else None,
    }
    return payload


def _run_net(config: RunConfig) -> dict:
    dim_s = _need(config.dim_s, "--dim-s")
    epsilon = _need(config.epsilon, "--epsilon")
    net = privacy.build_eps_net(dim_s, epsilon, config.seed)
    return {
        "dim_s": dim_s,
        "epsilon": epsilon,
        "n_points": net.n_points,
        "size_bound": net.size_bound,
        "max_probe_distance": net.max_probe_distance,
        "covering_radius_target": epsilon / 2.0,
    }


def run(config: RunConfig) -> RunResult:
    start = time.perf_counter()
    ws_descriptor = None
    if config.command == "decompose":
        payload = _run_decompose(config)
    elif config.command == "twirl-check":
        payload = _run_twirl_check(config)
    elif config.command == "workspace":
        payload, ws_descriptor = _run_workspace(config)
    elif config.command == "mean-f":
        payload, ws_descriptor = _run_mean_f(config)
    elif config.command == "concentration":
        payload, ws_descriptor = _run_concentration(config)
    elif config.command == "lipschitz":
        payload, ws_descriptor = _run_lipschitz(config)
    elif config.command == "haar-moments":
        payload = _run_haar_moments(config)
    elif config.command == "theorem1":
        payload = _run_theorem1(config)
    elif config.command == "capacity":
        payload = _run_capacity(config)
    elif config.command == "net":
        payload = _run_net(config)
    else:
        raise ValueError(f"unknown command {config.command!r}")
    return RunResult(
        config=config.echo(),
        tool_version=framecrypt.__version__,
        payload=_jsonable(payload),
        workspace_descriptor=ws_descriptor,
        wall_clock_seconds=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def canonical_json(data: dict) -> str:
    """Sorted keys, fixed indentation, trailing newline; bitwise stable."""
    return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _lookup_field(doc: dict, field: str):
    for root in (doc.get("payload", {}), doc.get("config", {}), doc):
        cur = root
        ok = True
        for part in field.split("."):
            if isinstance(cur, dict) and part in cur:
                cur = cur[part]
            else:
                ok = False
                break
        if ok:
            return cur
    raise KeyError(f"field {field!r} not found in result document")


def emit_curve(results: list[dict], x_field: str, y_field: str) -> str:
    """RFC 4180 CSV with one row per result, sorted by the x field."""
    rows = sorted(
        ((_lookup_field(doc, x_field), _lookup_field(doc, y_field)) for doc in results),
        key=lambda r: r[0],
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow([x_field, y_field])
    for x, y in rows:
        writer.writerow([x, y])
    return buf.getvalue()


def payload_to_csv(payload: dict) -> str:
    """Flatten one payload's scalar fields into a two-column CSV."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["field", "value"])

    def walk(prefix: str, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}.{k}" if prefix else str(k), value[k])
        elif isinstance(value, list):
            for i, v in enumerate(value):
                walk(f"{prefix}[{i}]", v)
        else:
            writer.writerow([prefix, value])

    walk("", payload)
    return buf.getvalue()


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except ValueError as exc:
        print(canonical_json({"error": {"kind": "usage", "message": str(exc)}}), file=sys.stderr, end="")
        return 2

    if config.command == "emit-curve":
        try:
            docs = []
            for path in config.inputs:
                with open(path, "r", encoding="utf-8") as fh:
                    docs.append(json.load(fh))
            text = emit_curve(docs, _need(config.x_field, "--x-field"), _need(config.y_field, "--y-field"))
        except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
            print(canonical_json({"error": {"kind": "domain", "message": str(exc)}}), file=sys.stderr, end="")
            return 1
        if config.out:
            with open(config.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0

    try:
        result = run(config)
    except (ValueError, AssertionError) as exc:
        kind = "assertion" if isinstance(exc, AssertionError) else "domain"
        print(canonical_json({"error": {"kind": kind, "message": str(exc)}}), file=sys.stderr, end="")
        return 1

    doc = result.document()
    if config.fmt == "csv":
        text = payload_to_csv(doc["payload"])
    else:
        text = canonical_json(doc)
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"wall_clock_seconds={result.wall_clock_seconds:.3f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
