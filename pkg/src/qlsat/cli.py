"""Command-line front end: generate instances, run trials, sweep, verify.

Subcommands
    generate  write DIMACS instances plus JSON metadata sidecars
    run       evolve instances and emit one result record per instance
    sweep     aggregate costs along an axis (n, or m/n at fixed n)
    verify    self-checks with measured tolerances; nonzero exit on failure

Records are JSON lines by default; --format csv emits the same values as a
flat table.  Every record embeds the resolved configuration, so re-running
with the same flags reproduces the output byte for byte.

Environment overrides (flags win): QLSAT_SEED, QLSAT_THREADS, QLSAT_FORMAT,
QLSAT_FULL_LIMIT, QLSAT_DENSE_LIMIT.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 capacity
exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import compact as compact_mod
from . import engine as engine_mod
from . import mixer as mixer_mod
from . import phases as phases_mod
from . import sat as sat_mod
from .generate import (
    ENSEMBLE_KINDS,
    EnsembleSpec,
    backtrack_count,
    backtrack_solve,
    gen_max_constrained_1sat,
    gen_random,
    generate as generate_instance,
    instance_metadata,
    instance_seed_sequence,
)
from .mixer import MixerSpec
from .phases import PolicySpec
from .sat import CapacityError, DEFAULT_FULL_LIMIT, SatProblem

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_CAPACITY = 3

ENV_PREFIX = "QLSAT_"


class _UsageError(Exception):
    pass


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    return int(raw) if raw else fallback


def _env_str(name: str, fallback: str) -> str:
    return os.environ.get(ENV_PREFIX + name) or fallback


def _parse_values(text: str) -> list[Fraction]:
    """Comma list of numbers; a:b:c tokens expand to a, a+c, ... up to b."""
    out: list[Fraction] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            fields = token.split(":")
            if len(fields) not in (2, 3):
                raise _UsageError(f"bad range token {token!r}; want start:stop[:step]")
            start, stop = Fraction(fields[0]), Fraction(fields[1])
            step = Fraction(fields[2]) if len(fields) == 3 else Fraction(1)
            if step <= 0:
                raise _UsageError("range step must be positive")
            v = start
            while v <= stop:
                out.append(v)
                v += step
        else:
            out.append(Fraction(token))
    if not out:
        raise _UsageError("empty value list")
    return out


def _policy_from_args(args: argparse.Namespace) -> PolicySpec:
    c_start = Fraction(args.c_start) if args.c_start is not None else None
    return PolicySpec(kind=args.policy, c_start=c_start, n_start=args.n_start)


def _policy_config(args: argparse.Namespace) -> dict:
    return {
        "kind": args.policy,
        "c_start": args.c_start,
        "n_start": args.n_start,
        "j_max": args.j_max,
        "alpha": args.alpha,
    }


def _mixer_for(n: int, alpha: int | None) -> MixerSpec:
    return MixerSpec(n) if alpha is None else MixerSpec(n, alpha)


# --- record emission ----------------------------------------------------------


def _flat(record: dict, prefix: str = "") -> dict:
    """Dotted-key flattening; lists become semicolon-joined repr values."""
    row: dict[str, str] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            row.update(_flat(value, name + "."))
        elif isinstance(value, (list, tuple)):
            row[name] = ";".join(_scalar(v) for v in value)
        else:
            row[name] = _scalar(value)
    return row


def _scalar(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + ";".join(_scalar(v) for v in value) + "]"
    return str(value)


def _emit(records: list[dict], fmt: str, out: str) -> None:
    if fmt == "jsonl":
        text = "".join(json.dumps(r) + "\n" for r in records)
    else:
        rows = [_flat(r) for r in records]
        header: list[str] = []
        for row in rows:
            for key in row:
                if key not in header:
                    header.append(key)
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_csv_cell(row.get(k, "")) for k in header))
        text = "\n".join(lines) + "\n" if rows else ""
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _csv_cell(value: str) -> str:
    if any(ch in value for ch in ",\"\n"):
        return '"' + value.replace('"', '""') + '"'
    return value


# --- generate -------------------------------------------------------------


def _ensemble_from_args(args: argparse.Namespace, seed: int) -> EnsembleSpec:
    if args.ensemble is None:
        raise _UsageError("an inline batch needs --ensemble")
    n, k, m = args.n, args.k, args.m
    if k is None:
        k = 3
    if n is None:
        raise _UsageError("--n is required")
    if args.ensemble == "max-constrained-1sat":
        k = 1
        m = n if m is None else m
    if m is None:
        raise _UsageError("--m is required for this ensemble")
    return EnsembleSpec(n=n, k=k, m=m, kind=args.ensemble, seed=seed, planted=args.planted)


def cmd_generate(args: argparse.Namespace) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for i in range(args.trials):
        spec = _ensemble_from_args(args, instance_seed_sequence(args.seed, i))
        inst = generate_instance(spec, **(
            {"count_solutions": True} if args.count_solutions and spec.kind == "random-soluble" else {}
        ))
        meta = instance_metadata(inst)
        meta["base_seed"] = args.seed
        meta["index"] = i
        soluble = None
        if inst.planted is not None or spec.kind == "random-soluble":
            soluble = True
        elif args.check_soluble:
            soluble = backtrack_solve(inst.problem) is not None
        meta["soluble"] = soluble
        stem = out_dir / f"inst-{i:05d}"
        stem.with_suffix(".cnf").write_text(sat_mod.to_dimacs(inst.problem))
        stem.with_suffix(".json").write_text(json.dumps(meta, indent=2) + "\n")
        records.append(
            {
                "record": "generated",
                "index": i,
                "path": str(stem.with_suffix(".cnf")),
                "n": spec.n,
                "k": spec.k,
                "m": inst.problem.m,
                "kind": spec.kind,
                "soluble": soluble,
                "solution_count": inst.solution_count,
            }
        )
    _emit(records, args.format, args.out)
    return EXIT_OK


# --- run --------------------------------------------------------------------


def _load_instances(args: argparse.Namespace) -> list[tuple[dict, SatProblem | None]]:
    """(descriptor, problem) pairs; a failed parse gives (descriptor, None)."""
    items: list[tuple[dict, SatProblem | None]] = []
    if args.instances:
        for path in args.instances:
            try:
                problem = sat_mod.from_dimacs(Path(path).read_text())
            except (OSError, ValueError) as exc:
                items.append(({"source": path, "error": f"{type(exc).__name__}: {exc}"}, None))
                continue
            desc = {"source": path, "n": problem.n, "k": problem.k, "m": problem.m}
            sidecar = Path(path).with_suffix(".json")
            if sidecar.exists():
                meta = json.loads(sidecar.read_text())
                desc["kind"] = meta.get("kind")
                desc["seed"] = meta.get("seed")
            items.append((desc, problem))
        return items
    for i in range(args.trials):
        spec = _ensemble_from_args(args, instance_seed_sequence(args.seed, i))
        inst = generate_instance(spec)
        desc = {
            "source": "inline",
            "index": i,
            "n": spec.n,
            "k": spec.k,
            "m": inst.problem.m,
            "kind": spec.kind,
            "seed": spec.seed,
            "planted": inst.planted,
        }
        items.append((desc, inst.problem))
    return items


def _run_one(desc_problem, args, config) -> dict:
    desc, problem = desc_problem
    policy = _policy_from_args(args)
    record: dict = {"record": "run", "config": config, "instance": desc}
    if problem is None:
        record["error"] = desc.pop("error")
        return record
    try:
        if args.engine == "compact":
            result = compact_mod.compact_run(
                desc["n"],
                policy,
                j_max=args.j_max,
                m=desc["m"],
                record_histograms=args.histograms,
            )
        else:
            result = engine_mod.run_trial(
                problem,
                policy,
                mixer=_mixer_for(problem.n, args.alpha),
                j_max=args.j_max,
                record_histograms=args.histograms,
                limit=args.full_limit,
            )
    except CapacityError:
        raise
    except Exception as exc:  # per-instance failures stay in the batch
        record["error"] = f"{type(exc).__name__}: {exc}"
        return record
    record["result"] = {
        "engine": result.engine,
        "steps": result.steps,
        "p_soln_by_step": [float(p) for p in result.p_soln_by_step],
        "best_j": result.best_j,
        "best_cost": None if math.isinf(result.best_cost) else float(result.best_cost),
        "final_p": float(result.p_soln_by_step[-1]),
    }
    if args.histograms:
        record["result"]["histograms"] = [
            [float(v) for v in h] for h in result.histograms
        ]
    return record


def _check_run_capacity(args: argparse.Namespace, items) -> None:
    if args.engine != "full":
        return
    for desc, problem in items:
        if problem is not None:
            sat_mod.check_full_capacity(desc["n"], args.full_limit)


def cmd_run(args: argparse.Namespace) -> int:
    if args.engine == "compact":
        if args.alpha is not None:
            raise _UsageError("--alpha only applies to the full engine")
        if args.instances:
            raise _UsageError("the compact engine runs inline planted 1-SAT only")
        if args.ensemble is None:
            args.ensemble = "max-constrained-1sat"
        if args.ensemble != "max-constrained-1sat":
            raise _UsageError("the compact engine needs --ensemble max-constrained-1sat")
        if args.k not in (None, 1):
            raise _UsageError("the compact engine is 1-SAT only")
        args.k = 1
    elif args.k is None:
        args.k = 3
    config = {
        "command": "run",
        "engine": args.engine,
        "policy": _policy_config(args),
        "seed": args.seed,
        "trials": args.trials,
        "threads": args.threads,
        "full_limit": args.full_limit,
        "ensemble": args.ensemble,
        "n": args.n,
        "k": args.k,
        "m": args.m,
        "planted": args.planted,
        "histograms": args.histograms,
    }
    items = _load_instances(args)
    _check_run_capacity(args, items)
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            records = list(pool.map(lambda it: _run_one(it, args, config), items))
    else:
        records = [_run_one(it, args, config) for it in items]
    _emit(records, args.format, args.out)
    return EXIT_OK


# --- sweep -------------------------------------------------------------------


def _sweep_points(args: argparse.Namespace) -> list[dict]:
    values = _parse_values(args.values)
    points = []
    for idx, value in enumerate(values):
        if args.axis == "n":
            n = int(value)
            if value != n:
                raise _UsageError(f"axis n needs integers, got {value}")
            if args.m is not None:
                m = args.m
            elif args.m_ratio is not None:
                m = round(args.m_ratio * n)
            else:
                m = n  # planted 1-SAT default: one clause per variable
        else:
            if args.n is None:
                raise _UsageError("axis m-over-n needs a fixed --n")
            n = args.n
            m = round(float(value) * n)
        points.append({"index": idx, "axis": args.axis, "value": float(value), "n": n, "m": m})
    return points


def _sweep_point_record(point: dict, args: argparse.Namespace, config: dict) -> dict:
    policy = _policy_from_args(args)
    record = {"record": "sweep-point", "config": config, "point": dict(point)}
    trials = 1 if args.engine == "compact" else args.trials
    record["point"]["trials"] = trials
    base = instance_seed_sequence(args.seed, point["index"])
    costs, best_js, finals = [], [], []
    insoluble = 0
    steps_run = None
    try:
        for i in range(trials):
            if args.engine == "compact":
                result = compact_mod.compact_run(
                    point["n"], policy, j_max=args.j_max, m=point["m"]
                )
            else:
                spec = EnsembleSpec(
                    n=point["n"],
                    k=args.k,
                    m=point["m"],
                    kind=args.ensemble,
                    seed=instance_seed_sequence(base, i),
                    planted=args.planted,
                )
                inst = generate_instance(spec)
                result = engine_mod.run_trial(
                    inst.problem,
                    policy,
                    mixer=_mixer_for(point["n"], args.alpha),
                    j_max=args.j_max,
                    limit=args.full_limit,
                )
            steps_run = result.steps
            finals.append(result.p_soln_by_step[-1])
            if result.best_j is None:
                insoluble += 1
            else:
                best_js.append(result.best_j)
                costs.append(result.best_cost)
    except CapacityError:
        raise
    except Exception as exc:
        record["error"] = f"{type(exc).__name__}: {exc}"
        return record
    mean_final = float(np.mean(finals))
    record["result"] = {
        "steps": steps_run,
        "solved_trials": len(costs),
        "unsolved_trials": insoluble,
        "mean_cost": float(np.mean(costs)) if costs else None,
        "sem_cost": (
            float(np.std(costs, ddof=1) / math.sqrt(len(costs)))
            if len(costs) > 1
            else 0.0 if costs else None
        ),
        "mean_best_j": float(np.mean(best_js)) if best_js else None,
        "mean_final_p": mean_final,
        "fixed_step_cost": (steps_run / mean_final) if mean_final > 0 else None,
    }
    return record


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.engine == "compact":
        if args.alpha is not None:
            raise _UsageError("--alpha only applies to the full engine")
        if args.k not in (None, 1):
            raise _UsageError("the compact engine is 1-SAT only")
        args.k = 1
    else:
        if args.ensemble is None:
            raise _UsageError("a full-engine sweep needs --ensemble")
        if args.k is None:
            args.k = 3
    config = {
        "command": "sweep",
        "engine": args.engine,
        "axis": args.axis,
        "values": args.values,
        "policy": _policy_config(args),
        "seed": args.seed,
        "trials": args.trials,
        "threads": args.threads,
        "full_limit": args.full_limit,
        "ensemble": args.ensemble,
        "k": args.k,
        "m": args.m,
        "m_ratio": args.m_ratio,
        "planted": args.planted,
    }
    points = _sweep_points(args)
    if args.engine == "full":
        for point in points:
            sat_mod.check_full_capacity(point["n"], args.full_limit)
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            records = list(
                pool.map(lambda p: _sweep_point_record(p, args, config), points)
            )
    else:
        records = [_sweep_point_record(p, args, config) for p in points]
    _emit(records, args.format, args.out)
    return EXIT_OK


# --- verify --------------------------------------------------------------------

# Reference 4x4 mixing matrix for n=2 at the default split: +1/2 everywhere
# except -1/2 on the anti-diagonal (assignments at Hamming distance 2).
_REFERENCE_U2 = np.array(
    [
        [0.5, 0.5, 0.5, -0.5],
        [0.5, 0.5, -0.5, 0.5],
        [0.5, -0.5, 0.5, 0.5],
        [-0.5, 0.5, 0.5, 0.5],
    ]
)


def _verify_checks(alpha: int | None, dense_limit: int):
    """Yield (name, passed or None for skip, detail) tuples."""
    rng = np.random.default_rng(np.random.SeedSequence(11))

    worst = 0.0
    for n in range(2, 7):
        u = mixer_mod.dense_u(_mixer_for(n, alpha))
        worst = max(worst, float(np.abs(u.T @ u - np.eye(1 << n)).max()))
    yield "unitarity", worst < 1e-12, f"max |U^T U - I| = {worst:.2e} over n=2..6 (bound 1e-12)"

    u2 = mixer_mod.dense_u(_mixer_for(2, alpha))
    dev = float(np.abs(u2 - _REFERENCE_U2).max())
    yield "mixing-table-n2", dev < 1e-12, f"max entry deviation {dev:.2e} (bound 1e-12)"

    worst = 0.0
    for n in range(2, dense_limit + 1):
        spec = _mixer_for(n, alpha)
        dense = mixer_mod.dense_u(spec, limit=dense_limit)
        for _ in range(5):
            x = rng.standard_normal(1 << n)
            worst = max(worst, float(np.abs(mixer_mod.apply_u(spec, x) - dense @ x).max()))
    yield "fast-vs-dense", worst < 1e-10, (
        f"max |fast - dense| = {worst:.2e} over n=2..{dense_limit} (bound 1e-10)"
    )

    if alpha is None:
        for n, target in ((8, 0.27), (20, 0.18)):
            u1 = mixer_mod.u_coefficients(MixerSpec(n))[1]
            ok = abs(u1 - target) < 5e-3
            yield f"first-shell-coefficient-n{n}", ok, f"u_1 = {u1:.6f} vs {target} (tol 5e-3)"
        exact = all(
            mixer_mod.u_numerators(MixerSpec(n))[1] == 2 * math.comb(n - 1, n // 2)
            for n in range(2, 31)
        )
        yield "first-shell-coefficient-exact", exact, "u_1 = 2*C(n-1, n//2)/2^n for n=2..30"

        ok = True
        for n in range(2, 21):
            u = mixer_mod.u_coefficients(MixerSpec(n))
            for d in range(1, n + 1):
                if n % 2 == 0:
                    expect_neg = d % 4 in (2, 3)
                    ok = ok and ((u[d] < 0) == expect_neg) and (u[d] != 0)
                elif d % 2 == 0:
                    ok = ok and abs(u[d]) == 0.0
                else:
                    ok = ok and ((u[d] > 0) == (d % 4 == 1))
        yield "shell-coefficient-signs", ok, "sign pattern by d mod 4 for n=2..20"
    else:
        yield "first-shell-coefficient-n8", None, "skipped (custom --alpha)"
        yield "shell-coefficient-signs", None, "skipped (custom --alpha)"

    worst = 0.0
    for n, m in ((10, 40), (12, 48)):
        spec = EnsembleSpec(n=n, k=3, m=m, kind="random", seed=instance_seed_sequence(23, n))
        problem = gen_random(spec).problem
        for kind in phases_mod.POLICY_KINDS:
            result = engine_mod.run_trial(
                problem, PolicySpec(kind), mixer=_mixer_for(n, alpha), record_states=True
            )
            for state in result.states:
                worst = max(worst, abs(float(np.sum(state**2)) - 1.0))
    comp = compact_mod.compact_run(300, PolicySpec("neighborhood"), record_states=True)
    for state in comp.states:
        worst = max(worst, abs(state.shell_norm() - 1.0))
    yield "norm-drift", worst < 1e-10, f"max per-step |norm - 1| = {worst:.2e} (bound 1e-10)"

    if alpha is None:
        worst = 0.0
        for n in (6, 8, 10):
            for kind in phases_mod.POLICY_KINDS:
                spec = EnsembleSpec(n=n, k=1, m=n, kind="max-constrained-1sat", seed=5)
                problem = gen_max_constrained_1sat(spec).problem
                full = engine_mod.run_trial(problem, PolicySpec(kind))
                shell = compact_mod.compact_run(n, PolicySpec(kind))
                diff = np.abs(
                    np.array(full.p_soln_by_step) - np.array(shell.p_soln_by_step)
                ).max()
                worst = max(worst, float(diff))
        yield "compact-vs-full", worst < 1e-10, (
            f"max per-step probability gap {worst:.2e} over n=6,8,10 (bound 1e-10)"
        )

        ok = True
        for seed in range(3):
            spec = EnsembleSpec(n=2, k=1, m=2, kind="max-constrained-1sat", seed=seed)
            problem = gen_max_constrained_1sat(spec).problem
            simple = engine_mod.run_trial(problem, PolicySpec("simple-threshold"))
            nbr = engine_mod.run_trial(problem, PolicySpec("neighborhood"))
            ok = ok and simple.best_j == 1 and abs(simple.best_cost - 1.0) < 1e-10
            ok = ok and nbr.best_j == 2 and abs(nbr.best_cost - 2.0) < 1e-10
        yield "two-variable-example", ok, "costs 1 (simple) and 2 (neighborhood)"
    else:
        yield "compact-vs-full", None, "skipped (custom --alpha)"
        yield "two-variable-example", None, "skipped (custom --alpha)"

    ok = True
    for seed in range(5):
        spec = EnsembleSpec(n=6, k=3, m=20, kind="random", seed=1000 + seed)
        problem = gen_random(spec).problem
        brute = sum(
            1 for s in range(1 << 6) if sat_mod.count_conflicts(problem, s) == 0
        )
        ok = ok and backtrack_count(problem) == brute
    yield "backtrack-vs-enumeration", ok, "solution counts match over 5 random n=6 instances"


def cmd_verify(args: argparse.Namespace) -> int:
    failed = False
    for name, passed, detail in _verify_checks(args.alpha, args.dense_limit):
        if passed is None:
            status = "SKIP"
        elif passed:
            status = "PASS"
        else:
            status = "FAIL"
            failed = True
        print(f"{status} {name}: {detail}")
    return EXIT_VERIFY if failed else EXIT_OK


# --- parser --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit1(message)


class SystemExit1(Exception):
    def __init__(self, message):
        super().__init__(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qlsat",
        description=__doc__.split("\n\n")[0],
        epilog=(
            "env overrides: QLSAT_SEED QLSAT_THREADS QLSAT_FORMAT "
            "QLSAT_FULL_LIMIT QLSAT_DENSE_LIMIT; "
            "exit codes: 0 ok, 1 usage, 2 verification failure, 3 capacity"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_env_int("SEED", 0))
    common.add_argument("--threads", type=int, default=_env_int("THREADS", 1))
    common.add_argument(
        "--format", choices=("jsonl", "csv"), default=_env_str("FORMAT", "jsonl")
    )
    common.add_argument("--out", default="-", help="output path, - for stdout")

    ensemble = argparse.ArgumentParser(add_help=False)
    ensemble.add_argument("--n", type=int)
    ensemble.add_argument("--k", type=int, help="literals per clause, default 3")
    ensemble.add_argument("--m", type=int)
    ensemble.add_argument("--ensemble", choices=ENSEMBLE_KINDS)
    ensemble.add_argument("--planted", type=int, help="fixed planted assignment")
    ensemble.add_argument("--trials", type=int, default=1)

    policy = argparse.ArgumentParser(add_help=False)
    policy.add_argument(
        "--policy", choices=phases_mod.POLICY_KINDS, default=phases_mod.KIND_SIMPLE
    )
    policy.add_argument("--c-start", help="threshold start, a fraction like 13/4")
    policy.add_argument("--n-start", type=int)
    policy.add_argument("--alpha", type=int, help="mixing split point, default n//2")
    policy.add_argument("--j-max", type=int)
    policy.add_argument("--engine", choices=("full", "compact"), default="full")
    policy.add_argument(
        "--full-limit", type=int, default=_env_int("FULL_LIMIT", DEFAULT_FULL_LIMIT)
    )

    p = sub.add_parser("generate", parents=[common, ensemble], help="write instance files")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--check-soluble", action="store_true")
    p.add_argument("--count-solutions", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run", parents=[common, ensemble, policy], help="run trials")
    p.add_argument("instances", nargs="*", help="DIMACS files; empty means inline ensemble")
    p.add_argument("--histograms", action="store_true", help="record conflict histograms")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", parents=[common, ensemble, policy], help="cost vs axis")
    p.add_argument("--axis", choices=("n", "m-over-n"), required=True)
    p.add_argument("--values", required=True, help="comma list and/or start:stop:step")
    p.add_argument("--m-ratio", type=float, help="m = round(ratio * n) on the n axis")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="self-checks")
    p.add_argument("--alpha", type=int, help="inject a non-default mixing split")
    p.add_argument(
        "--dense-limit", type=int, default=_env_int("DENSE_LIMIT", 8),
        help="largest n for dense comparisons",
    )
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit1 as exc:
        print(f"qlsat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except SystemExit1 as exc:
        print(f"qlsat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (_UsageError, ValueError) as exc:
        print(f"qlsat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"qlsat: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
