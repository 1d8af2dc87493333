"""Command-line entry point: ord, verify, search, bezout, constants.

Reports are JSON with sorted keys so identical inputs give byte-identical output.
Exit codes: 0 ok, 1 parse error, 2 domain or hypothesis error, 3 identity
failure, 4 resource budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from gmpy2 import mpq

from . import __version__
from .calculus import _resolve, identity_suite
from .corpus import SUITE_DATA, suite_instances
from .groebner import Ideal, ResourceError
from .models import (DomainError, ModelError, StabilityError, ValidationError,
                     get_model, load_model, model_validate)
from .order import DEFAULT_TMAX, oracle_agreement, ord_direct
from .poly import DimensionError, ParseError, parse_poly
from .search import (Scenario, ScenarioError, UnsupportedError, bezout_check, chain_search,
                     constants, verify_bound)

FORMAT_VERSION = 1
EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_IDENTITY, EXIT_RESOURCE = 0, 1, 2, 3, 4

SCENARIO_FIELDS = {"format", "model", "poly", "subalgebra", "sigma1", "S", "T", "D", "d0",
                   "theorem", "seed", "budgets", "instances"}
BUDGET_FIELDS = {"groebner_steps", "tmax", "samples"}
INSTANCE_FIELDS = {"ideal", "g", "h", "T", "T2"}


class ParseFailure(ValueError):
    pass


class IdentityFailure(RuntimeError):
    def __init__(self, report: dict, failures: list[str]):
        super().__init__("; ".join(failures))
        self.report = report
        self.failures = failures


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if type(obj) is type(mpq(0)):
        return str(obj)
    return str(obj)


def render(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def _envelope(command: str, inputs: dict, result: dict) -> dict:
    return {"command": command, "inputs": inputs, "result": result,
            "versions": {"multest": __version__, "format": FORMAT_VERSION}}


# ---- scenario files ---------------------------------------------------------

def read_scenario(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(f"cannot read scenario {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ParseFailure("scenario must be a JSON object")
    unknown = set(data) - SCENARIO_FIELDS
    if unknown:
        raise ParseFailure(f"unknown scenario fields: {sorted(unknown)}")
    if data.get("format", FORMAT_VERSION) != FORMAT_VERSION:
        raise ParseFailure(f"unsupported scenario format {data.get('format')}")
    bad = set(data.get("budgets", {})) - BUDGET_FIELDS
    if bad:
        raise ParseFailure(f"unknown budget fields: {sorted(bad)}")
    for inst in data.get("instances", []):
        extra = set(inst) - INSTANCE_FIELDS
        if extra:
            raise ParseFailure(f"unknown instance fields: {sorted(extra)}")
    return data


def _model_from(spec):
    if isinstance(spec, dict):
        return load_model(spec)
    return get_model(str(spec))


def _subalgebra(model, spec):
    if spec is None or isinstance(spec, str):
        return _resolve(model, spec)
    return model.make_subalgebra(spec, None, "custom")


def scenario_from(data: dict, seed: int | None) -> Scenario:
    for key in ("model", "poly", "sigma1", "S", "T", "theorem"):
        if key not in data:
            raise ParseFailure(f"scenario is missing {key!r}")
    model = _model_from(data["model"])
    P = parse_poly(data["poly"], model.nvars)
    b = _subalgebra(model, data.get("subalgebra"))
    pts = [model.parse_point(v) for v in data["sigma1"]]
    return Scenario(model, P, b, pts, int(data["S"]), int(data["T"]),
                    int(data.get("D", P.degree)), int(data["theorem"]),
                    data.get("d0"), data.get("seed", 0) if seed is None else seed)


def _apply_budgets(args, data: dict | None = None):
    budgets = (data or {}).get("budgets", {})
    steps = args.budget_gb if args.budget_gb is not None else budgets.get("groebner_steps")
    if steps is not None:
        os.environ["MULTEST_BUDGET"] = str(int(steps))
    return budgets


# ---- commands ----------------------------------------------------------------

def cmd_ord(args) -> dict:
    if args.scenario:
        data = read_scenario(args.scenario)
        model = _model_from(data["model"])
        poly = data["poly"]
        point = data["sigma1"][0] if data.get("sigma1") else None
        sub = data.get("subalgebra")
        tmax = data.get("budgets", {}).get("tmax", DEFAULT_TMAX)
    else:
        if not args.poly:
            raise ParseFailure("ord needs --poly (or --scenario)")
        model = _model_from(args.model)
        poly, point, sub = args.poly, args.point, args.subalgebra
        tmax = DEFAULT_TMAX
    tmax = args.tmax if args.tmax is not None else tmax
    P = parse_poly(poly, model.nvars)
    g = model.identity if point is None else model.parse_point(point)
    b = _subalgebra(model, sub)
    if model.iG.contains(P):
        raise DomainError("P ∈ I(Ḡ): the polynomial vanishes on the group closure")
    res = ord_direct(g, b, P, model, tmax)
    inputs = {"model": model.name, "point": str(g), "poly": str(P), "subalgebra": b.name,
              "tmax": tmax}
    return _envelope("ord", inputs, {"order": str(res), "finite": res.finite,
                                     "witness": str(res.witness) if res.witness else None})


def _instances_from(data: dict, model) -> list[dict]:
    out = []
    for inst in data.get("instances", []):
        I = Ideal([parse_poly(t, model.nvars) for t in inst["ideal"]], model.nvars)
        out.append({"I": I,
                    "g": model.parse_point(inst["g"]) if "g" in inst else model.identity,
                    "h": model.parse_point(inst["h"]) if "h" in inst else model.identity,
                    "T": int(inst.get("T", 1)), "T2": int(inst.get("T2", 1))})
    return out


def cmd_verify(args) -> dict:
    seed = args.seed or 0
    if args.builtin_suite:
        if args.builtin_suite not in SUITE_DATA:
            raise ParseFailure(f"no built-in suite {args.builtin_suite!r}; "
                               f"choose from {sorted(SUITE_DATA)}")
        model = get_model(args.builtin_suite)
        sub = SUITE_DATA[model.name]["subalgebra"]
        instances = suite_instances(model, seed)
        source = f"builtin:{model.name}"
    elif args.scenario:
        data = read_scenario(args.scenario)
        _apply_budgets(args, data)
        try:
            model = _model_from(data["model"])
        except ValidationError as exc:
            raise IdentityFailure(_envelope("verify", {"scenario": args.scenario},
                                            {"model_checks": {exc.check: str(exc)}}),
                                  [f"model check ({exc.check}): {exc}"]) from None
        sub = data.get("subalgebra")
        instances = _instances_from(data, model)
        source = args.scenario
    else:
        try:
            model = _model_from(args.model)
        except ValidationError as exc:
            raise IdentityFailure(_envelope("verify", {"model": args.model},
                                            {"model_checks": {exc.check: str(exc)}}),
                                  [f"model check ({exc.check}): {exc}"]) from None
        sub = None
        instances = []
        source = f"model:{model.name}"
    checks = model_validate(model, seed=seed)
    b = _subalgebra(model, sub)
    table = identity_suite(model, b, instances)
    oracle = oracle_agreement(model)
    failures = [f"{r['identity']} on instance {r['instance']}" for r in table if not r["passed"]]
    failures += [f"oracle disagreement for {r['poly']}" for r in oracle if not r["passed"]]
    report = _envelope("verify", {"source": source, "model": model.name, "subalgebra": b.name,
                                  "seed": seed},
                       {"model_checks": checks, "identities": table, "oracle": oracle,
                        "passed": not failures})
    if failures:
        raise IdentityFailure(report, failures)
    return report


def cmd_search(args) -> dict:
    if not args.scenario:
        raise ParseFailure("search needs --scenario")
    data = read_scenario(args.scenario)
    _apply_budgets(args, data)
    s = scenario_from(data, args.seed)
    rep = chain_search(s)
    consts = constants(s.model)
    ok = verify_bound(rep, consts)
    result = rep.as_dict()
    result["bound_verified"] = ok
    result["constants"] = consts.as_dict()
    inputs = {k: data[k] for k in sorted(data) if k != "instances"}
    report = _envelope("search", inputs, result)
    if not (ok and rep.ok):
        raise IdentityFailure(report, ["conclusion or bound check failed"])
    return report


def cmd_bezout(args) -> dict:
    model = _model_from(args.model)
    if not args.ideal:
        raise ParseFailure("bezout needs at least one --ideal generator")
    J = Ideal([parse_poly(t, model.nvars) for t in args.ideal], model.nvars)
    rep = bezout_check(J, model, args.D)
    if not rep.supported:
        raise UnsupportedError(rep.note)
    return _envelope("bezout", {"model": model.name, "ideal": J.basis_str(), "D": args.D},
                     rep.as_dict())


def cmd_constants(args) -> dict:
    model = _model_from(args.model)
    return _envelope("constants", {"model": model.name}, constants(model).as_dict())


COMMANDS = {"ord": cmd_ord, "verify": cmd_verify, "search": cmd_search, "bezout": cmd_bezout,
            "constants": cmd_constants}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", default="gm", help="built-in name or model JSON file")
    common.add_argument("--scenario", help="scenario JSON file")
    common.add_argument("--seed", type=int, help="seed for all sampling")
    common.add_argument("--tmax", type=int, help="largest word total tried by the order oracle")
    common.add_argument("--budget-gb", type=int, help="Groebner step budget")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    p = argparse.ArgumentParser(prog="multest", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    o = sub.add_parser("ord", parents=[common], help="vanishing order at a group point")
    o.add_argument("--point", help="group point: scalar, parameter list or matrix (JSON)")
    o.add_argument("--poly", help="homogeneous polynomial in x0..xN")
    o.add_argument("--subalgebra", help="subalgebra name (default: full Lie algebra)")
    v = sub.add_parser("verify", parents=[common], help="identity suite and model checks")
    v.add_argument("--builtin-suite", help="run the built-in corpus of a model")
    sub.add_parser("search", parents=[common], help="obstruction search for a scenario")
    b = sub.add_parser("bezout", parents=[common], help="Bezout inequality check")
    b.add_argument("--ideal", action="append", help="generator (repeatable)")
    b.add_argument("--D", type=int, help="degree bound for the generators")
    sub.add_parser("constants", parents=[common], help="explicit constants of a model")
    return p


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.budget_gb is not None:
        os.environ["MULTEST_BUDGET"] = str(args.budget_gb)
    try:
        report = COMMANDS[args.command](args)
    except (ParseFailure, ParseError, DimensionError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except IdentityFailure as exc:
        _emit(render(exc.report), args.out)
        print("failed: " + "; ".join(exc.failures), file=sys.stderr)
        return EXIT_IDENTITY
    except ResourceError as exc:
        print(f"resource budget exhausted: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ScenarioError, DomainError, StabilityError, UnsupportedError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(render(report), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
