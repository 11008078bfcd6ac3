"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import __version__
from . import av_forms, clifford, exact_linalg as la, lattices as lat, orders, padic_modules as pm
from . import suites, torsion_brauer as tb

SAFE_INT = 2 ** 53


class InputError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


# ---------------------------------------------------------------------------
# output


def to_plain(obj: Any) -> Any:
    """Convert results into JSON-ready values; integers beyond 2^53 become strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if hasattr(obj, "_asdict"):
        return {k: to_plain(v) for k, v in obj._asdict().items()}
    if hasattr(obj, "to_json"):
        return to_plain(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def render_json(payload: dict) -> str:
    return json.dumps(to_plain(payload), sort_keys=True, indent=2) + "\n"


def render_text(payload: dict) -> str:
    lines = [f"# {payload['command']} (seed {payload['seed']})"]
    result = to_plain(payload["result"])
    if isinstance(result, dict):
        for k in sorted(result):
            v = result[k]
            if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
                lines.append(f"{k}:")
                lines.extend(f"  - {json.dumps(x, sort_keys=True)}" for x in v)
            else:
                lines.append(f"{k}: {v if isinstance(v, (str, int)) else json.dumps(v, sort_keys=True)}")
    else:
        lines.append(json.dumps(result, sort_keys=True) if not isinstance(result, (str, int)) else str(result))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# input helpers


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc.msg} (line {exc.lineno})") from exc


def load_lattice(args) -> lat.Lattice:
    if getattr(args, "input", None):
        return lat.Lattice.from_json(load_json(args.input))
    if getattr(args, "name", None):
        params = {}
        if args.d is not None:
            params["d"] = args.d
        if getattr(args, "twist", None):
            params["twist"] = args.twist
        if getattr(args, "entries", None):
            params["entries"] = _int_list(args.entries)
        elif args.name.strip().lower() == "diag":
            raise InputError("--entries is required for a diagonal lattice")
        return lat.named_lattice(args.name, **params)
    raise InputError("give --input FILE or --name NAME")


def load_order(args) -> orders.Order:
    if args.input:
        return orders.Order.from_json(load_json(args.input))
    if args.name:
        table = orders.curated_orders()
        if args.name not in table:
            raise InputError(f"unknown order {args.name!r}; choose from {', '.join(table)}")
        return table[args.name]
    raise InputError("give --input FILE or --name NAME")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _torsion_module(args, gamma_path=None) -> tb.TorsionPairingModule:
    action = ()
    if gamma_path:
        data = load_json(gamma_path)
        items = data["action"] if isinstance(data, dict) else data
        action = tuple((a["matrix"], a.get("multiplier", 1)) for a in items)
    return tb.TorsionPairingModule(args.l, args.n, args.g, None, action)


# ---------------------------------------------------------------------------
# command handlers: each returns a result dict; raise VerificationFailed on failure


def cmd_lattice(args):
    if args.action == "embed-2d":
        if args.d is None:
            raise InputError("--d is required")
        emb = lat.embed_polarization(args.d)
        c = emb.certificate
        if not (c["isometric"] and c["primitive"]):
            raise VerificationFailed(emb.to_json())
        return emb.to_json()
    if args.action in ("complement", "fixed"):
        if not args.input:
            raise InputError("--input is required")
        data = load_json(args.input)
        l = lat.Lattice.from_json(data)
        if args.action == "complement":
            s = lat.Sublattice(l, data["basis"])
            comp = lat.orthogonal_complement(s)
            return {"basis": comp.basis, "rank": comp.rank, "primitive_input": lat.is_primitive(s),
                    "saturation": lat.saturate(s).basis}
        group = lat.IsometryGroup([[[int(x) for x in r] for r in g] for g in data["generators"]])
        fixed, rep = lat.fixed_sublattice(l, group)
        out = {"basis": fixed.basis, **rep.to_json()}
        if not rep.divides:
            raise VerificationFailed(out)
        return out
    l = load_lattice(args)
    if args.action == "discr":
        return {"discriminant": lat.discriminant(l), "rank": l.rank}
    return {"invariants": lat.discriminant_group(l), "order": abs(lat.discriminant(l))}


def cmd_order(args):
    o = load_order(args)
    if args.action == "discr":
        return {"discriminant": orders.reduced_trace_discriminant(o), "rank": o.rank,
                "reduced_gram": orders.reduced_trace_gram(o),
                "intrinsic_gram": orders.intrinsic_trace_form(o),
                "trace_relation": orders.check_trace_relation(o)}
    if args.action == "mod-l":
        if args.l is None:
            raise InputError("--l is required")
        alg = orders.reduce_mod(o, args.l)
        from .fp_algebra import radical
        rad = radical(alg)
        return {"prime": args.l, "dim": alg.dim, "radical": rad, "semisimple": not rad,
                "structure_constants": alg.sc}
    rows = [orders.verify_prop_b1(o, p) for p in orders.primes_up_to(args.lmax)]
    out = {"discriminant": orders.reduced_trace_discriminant(o), "lmax": args.lmax, "table": rows}
    if not all(r["holds"] for r in rows):
        raise VerificationFailed(out)
    return out


def cmd_avforms(args):
    if args.action == "q":
        return {"g": args.g, "Q": av_forms.q_of_g(args.g)}
    if args.action == "dpg":
        return {"p": args.p, "g": args.g, "d_p": av_forms.d_p_of_g(args.p, args.g)}
    if args.end_data:
        e = av_forms.EndData.from_json(load_json(args.end_data))
    elif args.name:
        table = av_forms.standard_end_data()
        if args.name not in table:
            raise InputError(f"unknown end data {args.name!r}; choose from {', '.join(table)}")
        e = table[args.name]
    else:
        raise InputError("give --end-data FILE or --name NAME")
    out = {"base_discr": e.base_discr, "Delta": av_forms.intrinsic_discriminant(e),
           "delta": av_forms.degree_discriminant(e)}
    if e.order is not None:
        rec = av_forms.recompute(e)
        out["direct"] = rec
        if not all(v["match"] for v in rec.values()):
            raise VerificationFailed(out)
    return out


def cmd_clifford(args):
    l = load_lattice(args)
    check = args.check if args.action == "build" else {
        "trace-check": "trace", "symplectic": "symplectic", "index": "index"}[args.action]
    if check is None:
        c = clifford.build(l)
        return {"rank": c.rank, "dim": c.dim, "basis": [list(s) for s in c.basis],
                "associative": True}
    if check == "trace":
        r = clifford.trace_restriction_check(l)
    elif check == "index":
        r = clifford.complement_index(l)
    else:
        if not (args.f1 and args.f2):
            raise InputError("--f1 and --f2 are required for the symplectic check")
        r = clifford.symplectic_form(clifford.build(l), _int_list(args.f1), _int_list(args.f2))
        r["holds"] = r["skew"] and r["det"] != 0
    if not r["holds"]:
        raise VerificationFailed(r)
    return r


def cmd_padic(args):
    if args.action == "verify-16may":
        r = suites.lemma16may(args.trials or 50, args.seed)
    else:
        if not args.input:
            raise InputError("--input is required")
        a = pm.ActionData.from_json(load_json(args.input))
        if args.action == "centralizer":
            gens = pm.centralizer_mod(a, args.n)
            return {"prime": a.prime, "level": args.n, "generators": gens}
        r = pm.check_lemma_13aug(a, args.nmax)
    if not r.get("holds", r.get("passed")):
        raise VerificationFailed(r)
    return r


def cmd_torsion(args):
    if args.action == "decompose":
        return tb.hom_decompose(_torsion_module(args, args.gamma))
    t = _torsion_module(args, args.gamma)
    if args.action == "brauer":
        ns = tb.EndomorphismDatum.from_json(load_json(args.ns)) if args.ns else tb.polarization(args.g)
        return tb.brauer_quotient_invariants(t, ns)
    if args.action == "ker2":
        r = tb.EndomorphismDatum.from_json(load_json(args.r)) if args.r else tb.polarization(args.g)
        out = tb.ker2_exponent_check(t, r)
        if not out["holds"]:
            raise VerificationFailed(out)
        return out
    endos = tb.EndomorphismDatum.from_json(load_json(args.endos)) if args.endos else tb.scalars(args.g)
    out = tb.third_summand_invariants(t, endos)
    if args.multiplier is not None:
        out["multiplier"] = args.multiplier
        out["annihilated"] = tb.annihilates(out["invariants"], args.multiplier)
        if not out["annihilated"]:
            raise VerificationFailed(out)
    return out


def cmd_verify(args):
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in suites.SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from all, {', '.join(suites.SUITES)}")
    reports = [suites.run_suite(n, args.seed, args.trials) for n in names]
    out = {"suites": reports, "passed": all(r["passed"] for r in reports)}
    if args.suite != "all":
        out = reports[0]
    if not out["passed"]:
        raise VerificationFailed(out)
    return out


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--trials", type=int, default=None, help="number of random trials")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--input", help="JSON input file")

    p = argparse.ArgumentParser(prog="latkit", description="Exact lattice, order and torsion-module toolkit.")
    p.add_argument("--version", action="version", version=f"latkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("lattice", parents=[common], help="integral lattices")
    q.add_argument("action", choices=("discr", "disc-group", "complement", "fixed", "embed-2d"))
    q.add_argument("--name", help="named lattice: e8, e8(-1), u, <n>, k3, lambda-2d, lambda-sharp")
    q.add_argument("--d", type=int, help="polarization degree parameter")
    q.add_argument("--twist", type=int)
    q.add_argument("--entries", help="comma-separated diagonal entries for --name diag")
    q.set_defaults(handler=cmd_lattice)

    q = sub.add_parser("order", parents=[common], help="orders and trace forms")
    q.add_argument("action", choices=("discr", "mod-l", "verify-b1"))
    q.add_argument("--name", help="curated order: " + ", ".join(orders.curated_orders()))
    q.add_argument("--l", type=int, help="prime")
    q.add_argument("--lmax", type=int, default=50)
    q.set_defaults(handler=cmd_order)

    q = sub.add_parser("avforms", parents=[common], help="forms on endomorphism data and constants")
    q.add_argument("action", choices=("delta", "q", "dpg"))
    q.add_argument("--end-data", dest="end_data")
    q.add_argument("--name", help="standard end data: Z, Z[i], Mat2(Z)")
    q.add_argument("--g", type=int, default=1)
    q.add_argument("--p", type=int, default=0)
    q.set_defaults(handler=cmd_avforms)

    q = sub.add_parser("clifford", parents=[common], help="Clifford algebras")
    q.add_argument("action", choices=("build", "trace-check", "symplectic", "index"))
    q.add_argument("--lattice", dest="input_lattice", help="lattice JSON file (same as --input)")
    q.add_argument("--name")
    q.add_argument("--d", type=int)
    q.add_argument("--entries", help="comma-separated diagonal entries for --name diag")
    q.add_argument("--check", choices=("trace", "symplectic", "index"))
    q.add_argument("--f1", help="comma-separated coordinates")
    q.add_argument("--f2", help="comma-separated coordinates")
    q.set_defaults(handler=cmd_clifford)

    q = sub.add_parser("padic", parents=[common], help="l-adic module checks")
    q.add_argument("action", choices=("verify-16may", "verify-13aug", "centralizer"))
    q.add_argument("--nmax", type=int, default=4)
    q.add_argument("--n", type=int, default=1)
    q.set_defaults(handler=cmd_padic)

    q = sub.add_parser("torsion", parents=[common], help="torsion modules with pairings")
    q.add_argument("action", choices=("decompose", "brauer", "ker2", "third-summand"))
    q.add_argument("--g", type=int, default=1)
    q.add_argument("--l", type=int, default=3)
    q.add_argument("--n", type=int, default=1)
    q.add_argument("--ns", help="JSON generators of NS (symmetric)")
    q.add_argument("--r", help="JSON generators of R")
    q.add_argument("--endos", help="JSON generators of the endomorphism ring")
    q.add_argument("--gamma", help="JSON list of {matrix, multiplier}")
    q.add_argument("--multiplier", type=int, help="claimed annihilator of the invariants")
    q.set_defaults(handler=cmd_torsion)

    q = sub.add_parser("verify", parents=[common], help="run verification suites")
    q.add_argument("suite", help="all or one of: " + ", ".join(suites.SUITES))
    q.set_defaults(handler=cmd_verify)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "input_lattice", None):
        args.input = args.input_lattice
    command = f"{args.command} {getattr(args, 'action', getattr(args, 'suite', ''))}".strip()
    code = 0
    try:
        result = args.handler(args)
    except VerificationFailed as exc:
        result, code = exc.payload, 1
    except KeyError as exc:
        print(f"latkit: error: missing or unknown key {exc.args[0]!r}", file=stderr)
        return 2
    except (InputError, ValueError, TypeError, ArithmeticError) as exc:
        msg = exc.args[0] if exc.args else type(exc).__name__
        print(f"latkit: error: {msg}", file=stderr)
        return 2
    payload = {"command": command, "seed": args.seed, "version": __version__,
               "status": "ok" if code == 0 else "failed", "result": result}
    stdout.write(render_json(payload) if args.format == "json" else render_text(payload))
    return code


def main() -> None:
    sys.exit(run())
