"""Command-line entry point: ``logreg <command> [options] MONOID``.

Exit codes: 0 success or verdict yes, 1 verdict no, 2 unsupported
hypotheses, 3 usage or parse error, 4 resource budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .algebra import BaseRing
from .certificate import Certificate, dumps, verify_certificate
from .errors import (
    MalformedCertificate,
    NotAFace,
    NotAFaceContraction,
    ParseError,
    ResourceExceeded,
    TorsionInQuotient,
    UnsupportedHypotheses,
)
from .faces import brute_force_faces, enumerate_faces
from .groebner import krull_dim, toric_ideal
from .inputs import TOOL, corpus_index, corpus_root, input_digest, load_monoid, load_prime, load_ring
from .logring import (
    all_monomial_primes,
    face_quotient_certificate,
    is_log_regular,
    is_very_solid,
    localize_log_ring,
    log_ring,
    main_theorem_check,
    resolve_prime,
)
from .monoid import AffineMonoid, localize, reduced_monoid, root_closed_and_saturate
from .spectrum import localized_prime_correspondence, primes, rank_dimension

EXIT = {"yes": 0, "success": 0, "no": 1, "unsupported": 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--plot", metavar="DIR", help="also render figures into DIR")
    p.add_argument("--no-oracle", action="store_true", help="structural certificates only")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=TOOL, description="Affine monoids, monoid algebras and log regularity.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, help_ in (
        ("analyze", "predicates, groupification and dimension of a monoid"),
        ("faces", "face lattice"),
        ("saturate", "Hilbert basis, saturation and root-closedness witness"),
        ("oracle-dim", "Krull dimension of the toric ideal against the face-chain dimension"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("monoid")
        if name == "faces":
            p.add_argument("--brute-force", action="store_true", help="compare with exhaustive subset filtering")
        if name == "oracle-dim":
            p.add_argument("--ring", default="Q", help="coefficient field (Q or Fp)")
        _common(p)
    p = sub.add_parser("localize", help="localize a monoid at a prime")
    p.add_argument("monoid")
    p.add_argument("--prime", default=None)
    _common(p)
    for name, help_ in (
        ("very-solid", "very-solid check of (A[Q], Q, canonical map)"),
        ("logreg", "log regularity of a localized monoid algebra"),
        ("theorem", "the full pipeline with hypothesis checks"),
        ("iso", "certificate that the quotient by a monomial prime is the face algebra"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("monoid")
        p.add_argument("--ring", default="Q", help="Q, Z, Fp, Z/n, QxQ, inline JSON or a file")
        p.add_argument("--prime", default=None, help="prime-spec file, inline JSON, 'max' or 'empty'")
        if name == "theorem":
            p.add_argument("--all-primes", action="store_true", help="run at every monomial prime")
        _common(p)
    p = sub.add_parser("verify", help="re-check the certificate inside a report")
    p.add_argument("report")
    _common(p)
    p = sub.add_parser("corpus", help="run the bundled corpus against its expectations")
    _common(p)
    return parser


# commands


def analyze_monoid(Q: AffineMonoid) -> dict:
    spec = primes(Q)
    rc = root_closed_and_saturate(Q)
    try:
        red, _ = reduced_monoid(Q)
        reduced = red.to_json()
    except TorsionInQuotient as e:
        reduced = {"torsion": list(e.torsion)}
    return {
        "monoid": Q.to_json(),
        "finitely_generated": True,
        "cancellative": True,
        "groupification": {
            "basis": [list(r) for r in Q.gp_basis.rows],
            "rank": Q.rank,
            "torsion_free": not Q.discarded_torsion,
            "discarded_torsion": list(Q.discarded_torsion),
        },
        "reduced": Q.is_reduced,
        "units_basis": [list(r) for r in Q.units_basis.rows],
        "reduced_monoid": reduced,
        "root_closed": rc.root_closed,
        "root_witness": rc.witness,
        "dim": spec.dimension,
        "dim_rank_formula": rank_dimension(Q),
        "faces": len(spec.primes),
    }


def _cmd_analyze(args) -> tuple[dict, str, Certificate | None, list]:
    Q = load_monoid(args.monoid)
    return {"result": analyze_monoid(Q)}, "success", None, [(Q, Path(args.monoid).stem)]


def _cmd_faces(args):
    Q = load_monoid(args.monoid)
    fs = enumerate_faces(Q)
    res: dict[str, Any] = {
        "monoid": Q.to_json(),
        "faces": [{**f.to_json(), "dimension": f.dimension} for f in fs],
        "count": len(fs),
    }
    if args.brute_force:
        res["brute_force_agrees"] = tuple(f.indices for f in fs) == brute_force_faces(Q)
    verdict = "success" if res.get("brute_force_agrees", True) else "no"
    return {"result": res}, verdict, None, [(Q, Path(args.monoid).stem)]


def _cmd_saturate(args):
    Q = load_monoid(args.monoid)
    rc = root_closed_and_saturate(Q)
    res = {
        "monoid": Q.to_json(),
        "hilbert_basis": [list(g) for g in rc.hilbert_basis],
        "unit_basis": [list(u) for u in rc.unit_basis],
        "saturation": rc.saturation.to_json(),
        "root_closed": rc.root_closed,
        "witness": rc.witness,
    }
    return {"result": res}, "success", None, [(Q, Path(args.monoid).stem)]


def _cmd_localize(args):
    Q = load_monoid(args.monoid)
    spec = load_prime(args.prime)
    if spec.polynomials is not None:
        raise UsageError("localize takes a monoid prime")
    P, _, _ = resolve_prime(BaseRing.rationals(), Q, spec)
    L = localize(Q, P)
    corr = localized_prime_correspondence(Q, P)
    res = {
        "monoid": Q.to_json(),
        "prime": P.to_json(),
        "localized": L.monoid.to_json(),
        "root_closed": root_closed_and_saturate(L.monoid).root_closed,
        "dim": primes(L.monoid).dimension,
        "prime_correspondence": [{"face": list(k), "localized_face": list(v)} for k, v in sorted(corr.items())],
    }
    return {"result": res}, "success", None, [(L.monoid, Path(args.monoid).stem + "_localized")]


def _log_inputs(args):
    A = load_ring(args.ring)
    Q = load_monoid(args.monoid)
    return A, Q


def _cmd_very_solid(args):
    A, Q = _log_inputs(args)
    L = log_ring(A, Q)
    if args.prime is not None:
        L = localize_log_ring(L, load_prime(args.prime))
    cert = is_very_solid(L)
    return {"result": {"very_solid": cert.verdict == "yes"}}, cert.verdict, cert, []


def _cmd_logreg(args):
    A, Q = _log_inputs(args)
    L = localize_log_ring(log_ring(A, Q), load_prime(args.prime))
    cert = is_log_regular(L, oracle=not args.no_oracle)
    return {"result": cert.summary}, cert.verdict, cert, []


def _cmd_theorem(args):
    A, Q = _log_inputs(args)
    if args.all_primes:
        runs = []
        for spec in all_monomial_primes(A, Q):
            cert = main_theorem_check(A, Q, spec, oracle=not args.no_oracle)
            runs.append({"prime": spec.to_json(), "verdict": cert.verdict, "certificate": cert.to_json()})
        verdicts = {r["verdict"] for r in runs}
        verdict = "unsupported" if "unsupported" in verdicts else ("no" if "no" in verdicts else "yes")
        return {"result": {"runs": runs}}, verdict, None, []
    cert = main_theorem_check(A, Q, load_prime(args.prime), oracle=not args.no_oracle)
    return {"result": cert.summary}, cert.verdict, cert, []


def _cmd_iso(args):
    A, Q = _log_inputs(args)
    spec = load_prime(args.prime)
    if spec.polynomials is not None:
        raise UsageError("iso takes a monoid prime")
    P, _, _ = resolve_prime(A, Q, spec)
    cert = face_quotient_certificate(A, Q, P)
    return {"result": {"face_generators": list(P.face.indices), "isomorphism": cert.verdict == "yes"}}, cert.verdict, cert, []


def _cmd_oracle_dim(args):
    Q = load_monoid(args.monoid)
    k = load_ring(args.ring)
    I = toric_ideal(Q, k)
    d = krull_dim(I)
    dimQ = primes(Q).dimension
    units = Q.units_basis.nrows
    res = {
        "monoid": Q.to_json(),
        "field": k.to_json(),
        "toric_ideal": I.format(),
        "krull_dim": d,
        "dim": dimQ,
        "unit_rank": units,
        "bridge_holds": d == dimQ + units,
    }
    return {"result": res}, "yes" if res["bridge_holds"] else "no", None, []


def _cmd_verify(args):
    src = Path(args.report)
    try:
        doc = json.loads(src.read_text())
    except OSError as e:
        raise ParseError(f"cannot read {src}: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{src}: invalid JSON ({e.msg})", line=e.lineno) from e
    if isinstance(doc, dict) and "certificate" not in doc and isinstance(doc.get("result"), dict) and "runs" in doc["result"]:
        results = [verify_certificate(r["certificate"]) for r in doc["result"]["runs"]]
        bad = next((i for i, r in enumerate(results) if not r.accepted), None)
        res = {"accepted": bad is None, "runs": [r.to_json() for r in results]}
        return {"result": res}, "yes" if bad is None else "no", None, []
    if not isinstance(doc, dict) or "certificate" not in doc:
        raise MalformedCertificate("report has no certificate")
    v = verify_certificate(doc["certificate"])
    return {"result": v.to_json()}, "yes" if v.accepted else "no", None, []


def _expect(expected: dict, actual: dict) -> list[dict]:
    out = []
    for key, rec in expected.items():
        got = actual.get(key)
        out.append({"property": key, "expected": rec["value"], "actual": got, "provenance": rec["provenance"], "match": got == rec["value"]})
    return out


def run_corpus(oracle: bool = True, plot_dir: str | None = None) -> dict:
    root = corpus_root()
    index = corpus_index()
    entries = []
    plots = []
    for entry in index["monoids"]:
        Q = load_monoid(str(root / entry["file"]))
        a = analyze_monoid(Q)
        actual = {
            "reduced": a["reduced"],
            "root_closed": a["root_closed"],
            "dim": a["dim"],
            "faces": a["faces"],
            "groupification_torsion_free": a["groupification"]["torsion_free"],
            "discarded_torsion": a["groupification"]["discarded_torsion"],
            "reduced_monoid": a["reduced_monoid"] if "torsion" not in a["reduced_monoid"] else None,
            "reduced_monoid_torsion": a["reduced_monoid"].get("torsion"),
            "root_witness": {"x": a["root_witness"]["x"], "n": a["root_witness"]["n"]} if a["root_witness"] else None,
            "hilbert_basis": sorted(list(g) for g in root_closed_and_saturate(Q).hilbert_basis),
        }
        checks = _expect(entry["expected"], actual)
        entries.append({"name": entry["name"], "kind": "monoid", "checks": checks, "match": all(c["match"] for c in checks)})
        if plot_dir:
            from .plotting import render_monoid

            plots += render_monoid(Q, plot_dir, entry["name"])
    for sc in index["scenarios"]:
        A = load_ring(str(root / sc["ring"]))
        Q = load_monoid(str(root / sc["monoid"]))
        actual: dict[str, Any] = {}
        if sc["command"] == "very-solid":
            cert = is_very_solid(log_ring(A, Q))
            certs = [cert]
            actual["expected"] = cert.verdict
        elif sc["command"] == "theorem-all":
            certs = [main_theorem_check(A, Q, s, oracle=oracle) for s in all_monomial_primes(A, Q)]
            vs = {c.verdict for c in certs}
            actual["expected"] = "yes" if vs == {"yes"} else sorted(vs)[0]
        else:
            spec = load_prime(str(root / sc["prime"]))
            if sc["command"] == "logreg":
                cert = is_log_regular(localize_log_ring(log_ring(A, Q), spec), oracle=oracle)
            else:
                cert = main_theorem_check(A, Q, spec, oracle=oracle)
            certs = [cert]
            actual["expected"] = cert.verdict
            s = cert.summary
            if "dim_R" in s:
                actual["dims"] = [s["dim_R"], s["dim_R_mod_I"], s["dim_Q"]]
        expected = {k: v for k, v in sc.items() if k in ("expected", "dims")}
        if not oracle:
            expected.pop("dims", None)
        checks = _expect(expected, actual)
        accepted = all(verify_certificate(c.to_json()).accepted for c in certs)
        checks.append({"property": "certificates_verify", "expected": True, "actual": accepted, "provenance": "trivial", "match": accepted})
        entries.append({"name": sc["name"], "kind": "scenario", "checks": checks, "match": all(c["match"] for c in checks)})
    return {"entries": entries, "all_match": all(e["match"] for e in entries), "plots": plots}


def _cmd_corpus(args):
    res = run_corpus(oracle=not args.no_oracle, plot_dir=args.plot)
    plots = res.pop("plots")
    return {"result": res, "plots": plots}, "yes" if res["all_match"] else "no", None, []


COMMANDS = {
    "analyze": _cmd_analyze,
    "faces": _cmd_faces,
    "saturate": _cmd_saturate,
    "localize": _cmd_localize,
    "very-solid": _cmd_very_solid,
    "logreg": _cmd_logreg,
    "theorem": _cmd_theorem,
    "iso": _cmd_iso,
    "oracle-dim": _cmd_oracle_dim,
    "verify": _cmd_verify,
    "corpus": _cmd_corpus,
}


# rendering


def render_text(doc: dict) -> str:
    lines = [f"{doc['tool']} {doc['version']}  {doc['command']}", f"input digest: {doc['input_digest']}"]

    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_short(v)}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)) and not _flat(v):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_short(v)}")

    walk(doc.get("result", {}))
    cert = doc.get("certificate")
    if cert:
        lines.append("certificate:")
        for s in cert["steps"]:
            mark = {True: "PASS", False: "FAIL", None: "SKIP"}[s["outcome"]]
            lines.append(f"  [{s['index']:>2}] {mark} {s['role']:<11} {s['anchor']}: {s['claim']}")
    for p in doc.get("plots", []):
        lines.append(f"plot: {p}")
    lines.append(f"verdict: {doc['verdict']}")
    return "\n".join(lines) + "\n"


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x)) for x in v)
    return False


def _short(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return json.dumps(v) if isinstance(v, (list, dict)) else str(v)


def _inputs(args) -> dict:
    out = {}
    for key in ("monoid", "ring", "prime", "report"):
        val = getattr(args, key, None)
        if val is None:
            continue
        p = Path(val)
        out[key] = p.read_text() if p.is_file() else val
    out["options"] = {"no_oracle": bool(getattr(args, "no_oracle", False)), "all_primes": bool(getattr(args, "all_primes", False))}
    return out


def run_command(argv: Sequence[str]) -> tuple[int, dict | None, str]:
    """Run one command; returns (exit status, report document, rendered output)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if not args.command:
            raise UsageError("missing command")
        payload, verdict, cert, figures = COMMANDS[args.command](args)
    except UsageError as e:
        return 3, None, f"usage error: {e}\n{parser.format_usage()}"
    except (ParseError, NotAFace, NotAFaceContraction, MalformedCertificate) as e:
        return 3, None, f"error: {type(e).__name__}: {e}\n"
    except UnsupportedHypotheses as e:
        return 2, None, f"unsupported: {e}\n"
    except ResourceExceeded as e:
        return 4, None, f"resource exceeded: {e}\n"
    except ValueError as e:
        return 3, None, f"error: {e}\n"
    plots = list(payload.pop("plots", []))
    if args.plot and figures:
        from .plotting import render_monoid

        for Q, stem in figures:
            plots += render_monoid(Q, args.plot, stem)
    doc = {
        "tool": TOOL,
        "version": __version__,
        "command": args.command,
        "input_digest": input_digest(args.command, _inputs(args)),
        **payload,
        "verdict": verdict,
    }
    if cert is not None:
        doc["certificate"] = cert.to_json()
    if plots:
        doc["plots"] = plots
    text = dumps(doc) + "\n" if args.format == "json" else render_text(doc)
    return EXIT[verdict], doc, text


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, doc, text = run_command(argv)
    out = None
    if doc is not None:
        # find --output without reparsing
        args = list(argv)
        if "--output" in args:
            out = args[args.index("--output") + 1]
        else:
            out = next((a.split("=", 1)[1] for a in args if a.startswith("--output=")), None)
    if out:
        Path(out).write_text(text)
    else:
        stream = sys.stdout if code in (0, 1, 2) or doc is not None else sys.stderr
        stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
