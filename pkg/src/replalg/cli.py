"""Command-line interface.

Exit codes: 0 success; 1 a verifier reported a counterexample (or the
machinery flagged a mathematical anomaly, with a machine-readable
payload); 2 input or contract error; 3 budget/resource signal.  Stdout is
byte-identical for identical (inputs, seed, prime, version); wall-clock
timings go to stderr.
"""

import argparse
import json
import math
import os
import sys
import time

from . import __version__
from . import artrans as ar
from . import exactfield as ef
from . import gencog as gc
from . import quiverrep as qr
from . import replicated as rp
from . import verify as vf
from . import windows as w
from .errors import (AnomalyError, BudgetExceeded, ContractError, InputError,
                     OracleUnavailable, WindowOverflow)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", required=True, help="quiver file (text or JSON)")
    common.add_argument("--m", type=int, default=1, help="replication level (>= 1)")
    common.add_argument("--prime", type=int, default=ef.DEFAULT_PRIME,
                        help="prime modulus of the coefficient field")
    common.add_argument("--seed", type=int, default=ef.DEFAULT_SEED)
    common.add_argument("--budget", type=int, default=ar.CATALOG_BUDGET,
                        help="catalog entry budget")
    common.add_argument("--window", type=int, default=3,
                        help="per-vertex dimension bound for windowed checks")
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--cache", default=None, help="catalog cache directory")

    parser = argparse.ArgumentParser(
        prog="replalg",
        description="exact computations with m-replicated algebras of "
                    "hereditary path algebras")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="algebra summary")
    sub.add_parser("indecs", parents=[common], help="catalog of indecomposables")
    arq = sub.add_parser("ar-quiver", parents=[common], help="irreducible maps and meshes")
    arq.add_argument("--dot", default=None, help="write a DOT file here")
    sub.add_parser("tau-orbits", parents=[common], help="tau-orbit table")
    st = sub.add_parser("strata", parents=[common], help="Sigma_k / U_k strata")
    st.add_argument("--k", type=int, required=True)
    sub.add_parser("gldim", parents=[common], help="global dimension of the algebra")
    ge = sub.add_parser("gldim-end", parents=[common],
                        help="gl.dim of the endomorphism algebra of a generator-cogenerator")
    ge.add_argument("--gencog", default=None, help="GenCog JSON file")
    ge.add_argument("--summands", default=None,
                    help="comma-separated catalog ids (with all proj/inj added)")
    co = sub.add_parser("construct", parents=[common],
                        help="build one of the named generator-cogenerators")
    co.add_argument("kind", choices=["thm32", "E", "lem47", "lem48"])
    co.add_argument("--d", type=int, default=None)
    co.add_argument("--i", type=int, default=None)
    co.add_argument("--out", default=None, help="write the GenCog JSON here")
    ve = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ve.add_argument("suite", choices=list(vf.SUITES))
    ve.add_argument("--samples", type=int, default=None)
    ve.add_argument("--d", type=int, default=None)
    ve.add_argument("--mode", choices=["exact", "windowed"], default=None)
    return parser


def _load_quiver(path):
    if not os.path.exists(path):
        raise InputError(f"quiver file not found: {path}")
    return qr.Quiver.load(path)


def _fingerprint(quiver, m, p):
    import hashlib
    return hashlib.sha256(
        (quiver.to_text() + f"|m={m}|p={p}").encode()).hexdigest()[:16]


def _catalog_cached(algebra, args):
    """Catalog with optional on-disk caching keyed by the algebra
    fingerprint; corrupt or stale caches are ignored with a warning."""
    fp = algebra.fingerprint()
    path = None
    if args.cache:
        os.makedirs(args.cache, exist_ok=True)
        path = os.path.join(args.cache, f"catalog_{fp}.json")
        if os.path.exists(path):
            try:
                data = json.load(open(path))
                return ar.IndecCatalog.from_json(algebra, data)
            except (InputError, ValueError, KeyError) as exc:
                print(f"warning: ignoring cache {path}: {exc}", file=sys.stderr)
    catalog = ar.indec_catalog(algebra, budget=args.budget, seed=args.seed)
    if path:
        with open(path, "w") as fh:
            json.dump(catalog.to_json(), fh, sort_keys=True)
    return catalog


def _emit(report, args):
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2, default=_json_default))
    else:
        _emit_text(report)


def _json_default(obj):
    if obj is math.inf:
        return "inf"
    if hasattr(obj, "tolist"):
        return obj.tolist()
    return str(obj)


def _emit_text(report, indent=0):
    pad = "  " * indent
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _emit_text(value, indent + 1)
        elif isinstance(value, list):
            print(f"{pad}{key}:")
            for item in value:
                if isinstance(item, dict):
                    _emit_text(item, indent + 1)
                    print(f"{pad}  -")
                else:
                    print(f"{pad}  {item}")
        else:
            print(f"{pad}{key}: {value}")


def _base_report(command, quiver, args):
    return {
        "command": command,
        "version": __version__,
        "fingerprint": _fingerprint(quiver, args.m, args.prime),
        "inputs": {"m": args.m, "prime": args.prime, "seed": args.seed},
    }


def cmd_info(args):
    quiver = _load_quiver(args.quiver)
    algebra = rp.build_replicated(quiver, args.m, args.prime)
    report = _base_report("info", quiver, args)
    report["results"] = {
        "vertices": quiver.vertices,
        "arrows": [f"{n}: {s} -> {t}" for n, s, t in quiver.arrows],
        "paths": quiver.paths.n,
        "maximal_paths": [quiver.paths.name(q) for q in quiver.paths.maximal],
        "algebra_dim": algebra.dim,
        "components": algebra.n_components,
    }
    _emit(report, args)
    return 0


def cmd_gldim(args):
    quiver = _load_quiver(args.quiver)
    algebra = rp.build_replicated(quiver, args.m, args.prime)
    report = _base_report("gldim", quiver, args)
    report["results"] = {"global_dimension": rp.global_dimension(algebra)}
    _emit(report, args)
    return 0


def cmd_indecs(args):
    quiver = _load_quiver(args.quiver)
    algebra = rp.build_replicated(quiver, args.m, args.prime)
    catalog = _catalog_cached(algebra, args)
    report = _base_report("indecs", quiver, args)
    report["results"] = {
        "count": len(catalog),
        "modules": [{"id": i, "dims": catalog.modules[i].dim_label(),
                     "projective": i in catalog.projective,
                     "injective": i in catalog.injective}
                    for i in range(len(catalog))],
    }
    _emit(report, args)
    return 0


def cmd_tau_orbits(args):
    quiver = _load_quiver(args.quiver)
    algebra = rp.build_replicated(quiver, args.m, args.prime)
    catalog = _catalog_cached(algebra, args)
    table = ar.tau_orbits(catalog)
    report = _base_report("tau-orbits", quiver, args)
    report["results"] = table.to_json()
    _emit(report, args)
    return 0


def cmd_ar_quiver(args):
    quiver = _load_quiver(args.quiver)
    algebra = rp.build_replicated(quiver, args.m, args.prime)
    catalog = _catalog_cached(algebra, args)
    arq = ar.ar_quiver(catalog)
    violations = arq.mesh_violations()
    report = _base_report("ar-quiver", quiver, args)
    report["results"] = {
        "nodes": len(catalog),
        "arrows": [{"from": catalog.label(i), "to": catalog.label(j),
                    "mult": int(arq.mult[i, j])}
                   for i in range(len(catalog)) for j in range(len(catalog))
                   if arq.mult[i, j]],
        "mesh_violations": [catalog.label(z) for z in violations],
    }
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(arq.to_dot())
        report["results"]["dot"] = args.dot
    _emit(report, args)
    return 1 if violations else 0


def cmd_strata(args):
    quiver = _load_quiver(args.quiver)
    algebra = rp.build_replicated(quiver, args.m, args.prime)
    stratum = rp.sigma_stratum(algebra, args.k)
    report = _base_report("strata", quiver, args)
    gd = rp.global_dimension(algebra)
    report["results"] = {
        "k": args.k,
        "sigma": [x.dim_label() for x in stratum.members],
        "u": ([x.dim_label() for x in rp.u_stratum(algebra, args.k)]
              if args.k <= gd - 1 else []),
    }
    _emit(report, args)
    return 0


def cmd_gldim_end(args):
    quiver = _load_quiver(args.quiver)
    algebra = rp.build_replicated(quiver, args.m, args.prime)
    report = _base_report("gldim-end", quiver, args)
    try:
        catalog = _catalog_cached(algebra, args)
    except BudgetExceeded:
        catalog = None
    if catalog is not None:
        engine = gc.MDimEngine.for_catalog(catalog, seed=args.seed)
        extra = set()
        if args.summands:
            extra = {int(t) for t in args.summands.split(",") if t.strip()}
        if args.gencog:
            data = json.load(open(args.gencog))
            if data.get("fingerprint") != algebra.fingerprint():
                raise InputError("GenCog file fingerprint does not match the algebra")
            extra.update(int(i) for i in data.get("summand_ids", []))
            for mod_json in data.get("summands", []):
                extra.add(engine.registry.canon(
                    rp.LayeredModule.from_json(algebra, mod_json)))
        gencog = gc.GenCog(engine, engine.required_ids() | extra)
        res = gc.gldim_end(gencog)
        report["results"] = {"mode": "exact",
                             "value": "inf" if res.value == math.inf else res.value,
                             "summands": len(gencog.summands)}
        _emit(report, args)
        return 0
    engine = gc.MDimEngine.windowed(algebra, seed=args.seed)
    extra_ids = set()
    if args.gencog:
        data = json.load(open(args.gencog))
        if data.get("fingerprint") != algebra.fingerprint():
            raise InputError("GenCog file fingerprint does not match the algebra")
        if data.get("summand_ids"):
            raise InputError("catalog ids need a representation-finite instance")
        for mod_json in data.get("summands", []):
            extra_ids.add(engine.registry.canon(
                rp.LayeredModule.from_json(algebra, mod_json)))
    gencog = gc.GenCog(engine, engine.required_ids() | extra_ids)
    census = w.census_modules(algebra, args.window, args.seed)
    res = gc.gldim_end_windowed(gencog, census)
    report["results"] = {
        "mode": "windowed",
        "lower": "inf" if res.value == math.inf else res.lower,
        "window_checked": res.window_checked,
        "window_bound": args.window,
        "window_size": res.window_size,
        "indeterminate": res.indeterminates,
    }
    _emit(report, args)
    return 0


def cmd_construct(args):
    quiver = _load_quiver(args.quiver)
    algebra = rp.build_replicated(quiver, args.m, args.prime)
    report = _base_report(f"construct {args.kind}", quiver, args)
    results = {}
    if args.kind == "thm32":
        if args.d is None:
            raise InputError("construct thm32 needs --d")
        catalog = _catalog_cached(algebra, args)
        engine = gc.MDimEngine.for_catalog(catalog, seed=args.seed)
        gencog, z = gc.construct_thm32(catalog, args.d, engine=engine)
        res = gc.gldim_end(gencog)
        results = {"d": args.d, "witness": catalog.label(z),
                   "summands": sorted(gencog.summands),
                   "gldim_end": "inf" if res.value == math.inf else res.value}
    elif args.kind == "E":
        if args.i is None:
            raise InputError("construct E needs --i")
        try:
            catalog = _catalog_cached(algebra, args)
            engine = gc.MDimEngine.for_catalog(catalog, seed=args.seed)
        except BudgetExceeded:
            engine = gc.MDimEngine.windowed(algebra, seed=args.seed)
        gencog = gc.construct_E(algebra, args.i, engine=engine)
        results = {"i": args.i, "summand_count": len(gencog.summands),
                   "summands": sorted(engine.registry.modules[s].dim_label()
                                      for s in gencog.summands)}
        if engine.catalog is not None:
            res = gc.gldim_end(gencog)
            results["gldim_end"] = "inf" if res.value == math.inf else res.value
    elif args.kind == "lem47":
        if args.d is None:
            raise InputError("construct lem47 needs --d")
        engine = gc.MDimEngine.windowed(algebra, seed=args.seed)
        gencog, n, z = gc.construct_lem47(algebra, args.d, engine=engine)
        results = {"d": args.d, "witness_Z": list(z.dims),
                   "witness_N": n.dim_label(),
                   "summands": sorted(engine.registry.modules[s].dim_label()
                                      for s in gencog.summands)}
    else:
        engine = gc.MDimEngine.windowed(algebra, seed=args.seed)
        gencog, n0, nprime = gc.construct_lem48(algebra, engine=engine)
        results = {"N": n0.dim_label(), "Nprime": list(nprime.dims),
                   "summands": sorted(engine.registry.modules[s].dim_label()
                                      for s in gencog.summands)}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(gencog.to_json(), fh, sort_keys=True)
        results["out"] = args.out
    report["results"] = results
    _emit(report, args)
    return 0


def cmd_verify(args):
    quiver = _load_quiver(args.quiver)
    params = {"m": args.m, "p": args.prime, "seed": args.seed}
    if args.samples is not None:
        params["samples"] = args.samples
    if args.d is not None:
        params["d"] = args.d
    if args.mode is not None:
        params["mode"] = args.mode
    if args.suite in ("prop41", "cor42") and args.mode == "windowed":
        params["bound"] = args.window
    if args.suite == "lem47":
        params["bound"] = args.window
    report = vf.verify(args.suite, quiver, **params)
    wall = report.pop("wall_ms", None)
    base = _base_report(f"verify {args.suite}", quiver, args)
    base["results"] = report
    _emit(base, args)
    if wall is not None:
        print(f"time: {wall} ms", file=sys.stderr)
    return 0 if report["verdict"] == "pass" else 1


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "info": cmd_info,
        "indecs": cmd_indecs,
        "ar-quiver": cmd_ar_quiver,
        "tau-orbits": cmd_tau_orbits,
        "strata": cmd_strata,
        "gldim": cmd_gldim,
        "gldim-end": cmd_gldim_end,
        "construct": cmd_construct,
        "verify": cmd_verify,
    }
    t0 = time.monotonic()
    try:
        code = handlers[args.command](args)
    except (InputError, ContractError, WindowOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceeded, OracleUnavailable) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return 3
    except AnomalyError as exc:
        print(json.dumps({"anomaly": str(exc)}, sort_keys=True))
        return 1
    finally:
        if args.command != "verify":
            print(f"time: {int((time.monotonic() - t0) * 1000)} ms", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
