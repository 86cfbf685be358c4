"""Reading monoid, base-ring and prime-spec documents; writing reports.

Parse errors carry the line and the field that failed, so a bad input file
can be fixed without guessing.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .algebra import BasePrime, BaseRing
from .errors import ParseError
from .logring import PrimeSpec
from .monoid import AffineMonoid, PresentedMonoid, from_presentation

TOOL = "logreg"


@dataclass(frozen=True)
class Source:
    text: str
    name: str

    def line_of(self, key: str) -> int | None:
        m = re.search(r'"%s"\s*:' % re.escape(key), self.text)
        return self.text.count("\n", 0, m.start()) + 1 if m else None


def load_text(arg: str) -> Source:
    """A file path, or an inline JSON document when ``arg`` starts with '{'."""
    if arg.lstrip().startswith("{"):
        return Source(arg, "<inline>")
    p = Path(arg)
    if not p.exists():
        corpus = corpus_path(arg)
        if corpus is None:
            raise ParseError(f"no such file: {arg}")
        p = corpus
    return Source(p.read_text(), str(p))


def parse_json(src: Source) -> Any:
    try:
        return json.loads(src.text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{src.name}: invalid JSON ({e.msg})", line=e.lineno) from e


def _int_vector(v, length, field, src: Source, key: str):
    if not isinstance(v, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
        raise ParseError(f"{src.name}: expected a list of integers", src.line_of(key), field)
    if length is not None and len(v) != length:
        raise ParseError(f"{src.name}: expected {length} entries, got {len(v)}", src.line_of(key), field)
    return tuple(v)


def monoid_from_obj(obj: Any, src: Source) -> AffineMonoid:
    if not isinstance(obj, Mapping):
        raise ParseError(f"{src.name}: a monoid is a JSON object", 1)
    if "presentation" in obj:
        pres = obj["presentation"]
        if not isinstance(pres, Mapping):
            raise ParseError(f"{src.name}: expected an object", src.line_of("presentation"), "presentation")
        n = pres.get("n")
        if not isinstance(n, int) or n < 0:
            raise ParseError(f"{src.name}: expected a nonnegative integer", src.line_of("n"), "presentation.n")
        rels = pres.get("relations", [])
        if not isinstance(rels, list):
            raise ParseError(f"{src.name}: expected a list of pairs", src.line_of("relations"), "presentation.relations")
        pairs = []
        for k, r in enumerate(rels):
            f = f"presentation.relations[{k}]"
            if not isinstance(r, list) or len(r) != 2:
                raise ParseError(f"{src.name}: a relation is a pair [u, v]", src.line_of("relations"), f)
            u = _int_vector(r[0], n, f, src, "relations")
            v = _int_vector(r[1], n, f, src, "relations")
            if min(u + v, default=0) < 0:
                raise ParseError(f"{src.name}: relation entries must be nonnegative", src.line_of("relations"), f)
            pairs.append((u, v))
        return from_presentation(PresentedMonoid(n, tuple(pairs)))[0]
    d = obj.get("ambient_rank")
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise ParseError(f"{src.name}: expected a nonnegative integer", src.line_of("ambient_rank"), "ambient_rank")
    gens = obj.get("generators")
    if not isinstance(gens, list):
        raise ParseError(f"{src.name}: expected a list of integer vectors", src.line_of("generators"), "generators")
    vecs = [_int_vector(g, d, f"generators[{k}]", src, "generators") for k, g in enumerate(gens)]
    return AffineMonoid(d, vecs)


def load_monoid(arg: str) -> AffineMonoid:
    src = load_text(arg)
    return monoid_from_obj(parse_json(src), src)


_SHORT = re.compile(r"^(Q|Z|F(\d+)|Z/(\d+)|Z_\((\d+)\)|Q(x[Q])+)$")


def ring_from_obj(obj: Any, src: Source) -> BaseRing:
    if not isinstance(obj, Mapping):
        raise ParseError(f"{src.name}: a base ring is a JSON object", 1)
    kind = obj.get("kind")
    try:
        return BaseRing.from_json(obj)
    except KeyError as e:
        key = e.args[0]
        raise ParseError(f"{src.name}: missing {key!r} for kind {kind!r}", src.line_of("kind"), key) from e
    except (ValueError, TypeError) as e:
        raise ParseError(f"{src.name}: {e}", src.line_of("kind"), "kind") from e


def load_ring(arg: str) -> BaseRing:
    """Shorthand (Q, Z, F2, Z/6, Z_(3), QxQ), inline JSON, or a file."""
    m = _SHORT.match(arg.strip())
    if m:
        s = arg.strip()
        if s == "Q":
            return BaseRing.rationals()
        if s == "Z":
            return BaseRing.integers()
        try:
            if m.group(2):
                return BaseRing.prime_field(int(m.group(2)))
            if m.group(3):
                return BaseRing.mod(int(m.group(3)))
            if m.group(4):
                return BaseRing("localized_integers", int(m.group(4)))
        except ValueError as e:
            raise ParseError(f"ring {s}: {e}", field="ring") from e
        return BaseRing.product(*[BaseRing.rationals()] * (s.count("x") + 1))
    src = load_text(arg)
    return ring_from_obj(parse_json(src), src)


def load_prime(arg: str | None) -> PrimeSpec:
    if arg is None or arg in ("max", "maximal"):
        return PrimeSpec.monomial("maximal")
    if arg == "empty":
        return PrimeSpec.monomial("empty")
    src = load_text(arg)
    obj = parse_json(src)
    try:
        return PrimeSpec.from_json(obj)
    except ParseError as e:
        key = (e.field or "").split(".")[-1].split("[")[0] or None
        raise ParseError(f"{src.name}: {e.args[0]}", src.line_of(key) if key else None, e.field) from e


def input_digest(*parts: Any) -> str:
    blob = json.dumps(parts, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


def corpus_root() -> Path:
    return Path(str(resources.files("logreg") / "corpus"))


def corpus_path(name: str) -> Path | None:
    root = corpus_root()
    for cand in (root / name, root / "monoids" / name, root / "rings" / name, root / "primes" / name):
        if cand.is_file():
            return cand
    return None


def corpus_index() -> dict:
    return json.loads((corpus_root() / "index.json").read_text())
