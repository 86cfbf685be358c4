"""End-to-end acceptance run over the bundled corpus.

Each criterion prints one PASS/FAIL line with its wall time, whether or not
pytest captures output.
"""
import json
import time
from contextlib import contextmanager

import pytest

from oracles import lattice_points_in_cone

from logreg.algebra import BaseRing
from logreg.certificate import verify_certificate
from logreg.cli import run_command
from logreg.faces import brute_force_faces, enumerate_faces
from logreg.groebner import krull_dim, toric_ideal
from logreg.inputs import corpus_index, corpus_root, load_monoid, load_ring
from logreg.logring import (
    all_monomial_primes,
    face_quotient_certificate,
    is_log_regular,
    is_very_solid,
    localize_log_ring,
    log_ring,
    main_theorem_check,
)
from logreg.monoid import AffineMonoid, is_root_closed, localize, membership, root_closed_and_saturate
from logreg.spectrum import primes

ROOT = corpus_root()
INDEX = corpus_index()
MONOIDS = {m["name"]: load_monoid(str(ROOT / m["file"])) for m in INDEX["monoids"]}
RING_FILES = ["rationals", "f2", "integers", "mod6", "qxq"]
RINGS = {name: load_ring(str(ROOT / "rings" / f"{name}.json")) for name in RING_FILES}


@contextmanager
def criterion(capsys, number, title, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = limit is None or elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        bound = f" (limit {limit:g} s)" if limit else ""
        with capsys.disabled():
            print(f"\ncriterion {number}: {status} {title} in {elapsed:.2f} s{bound}")
    assert within, f"criterion {number} took {elapsed:.2f} s, limit {limit} s"


def hypothesis_monoids():
    """Corpus monoids that are root closed with torsion-free groupification."""
    return {k: Q for k, Q in MONOIDS.items() if not Q.discarded_torsion and is_root_closed(Q)}


def test_criterion_1_predicate_suite(capsys):
    with criterion(capsys, 1, "predicate suite on the corpus", 5):
        for entry in INDEX["monoids"]:
            code, doc, _ = run_command(["analyze", str(ROOT / entry["file"])])
            assert code == 0
            r = doc["result"]
            for key in ("reduced", "root_closed", "dim", "faces"):
                if key in entry["expected"]:
                    assert r[key] == entry["expected"][key]["value"], (entry["name"], key)
        r = run_command(["analyze", "numsg23.json"])[1]["result"]
        assert not r["root_closed"] and (r["root_witness"]["x"], r["root_witness"]["n"]) == ([1], 2)
        r = run_command(["analyze", "quadric.json"])[1]["result"]
        assert (r["root_closed"], r["dim"], r["faces"]) == (True, 2, 4)
        for d in (1, 2, 3):
            r = run_command(["analyze", f"n{d}.json"])[1]["result"]
            assert (r["dim"], r["faces"]) == (d, 2**d)
        r = run_command(["analyze", "units.json"])[1]["result"]
        assert not r["reduced"]
        assert r["reduced_monoid"] == {"ambient_rank": 1, "generators": [[1]]}


def test_criterion_2_localization_property(capsys):
    with criterion(capsys, 2, "localization keeps finite generation, cancellation and root-closedness", 30):
        checked = 0
        for name, Q in MONOIDS.items():
            for P in primes(Q).primes:
                loc = localize(Q, P)
                L = loc.monoid
                # finitely generated: Q and the inverses of the face lie in the listed generators' span
                assert all(membership(L, g) for g in Q.generators)
                assert all(membership(L, tuple(-a for a in Q.generators[i])) for i in P.face.indices)
                # cancellation on every generator pair
                for x in L.generators:
                    for y in L.generators:
                        s = tuple(a + b for a, b in zip(x, y))
                        assert membership(L, s) and tuple(a - b for a, b in zip(s, y)) == x
                if is_root_closed(Q):
                    assert is_root_closed(L), (name, P.face.indices)
                checked += 1
        assert checked > 20


def test_criterion_3_face_quotient_isomorphism(capsys, tmp_path):
    with criterion(capsys, 3, "face-quotient isomorphism certificates verify", 30):
        for name, Q in MONOIDS.items():
            for P in primes(Q).primes:
                cert = face_quotient_certificate(BaseRing.integers(), Q, P)
                step = cert.steps[0]
                assert step.outcome is True
                assert len(step.data["pair_checks"]) == Q.ngens * (Q.ngens + 1) // 2
                # basis bijection: generators in the face survive, the rest vanish
                assert [i for i, w in enumerate(step.data["placement"]) if w == "face"] == list(P.face.indices)
                path = tmp_path / f"{name}_{'_'.join(map(str, P.face.indices))}.json"
                path.write_text(json.dumps({"certificate": cert.to_json()}))
                code, doc, _ = run_command(["verify", str(path)])
                assert code == 0 and doc["result"]["accepted"], (name, P.face.indices)


def test_criterion_4_very_solid_suite(capsys):
    with criterion(capsys, 4, "very-solid suite with exit codes 0/0/1", None):
        assert run_command(["very-solid", "--ring", "Z", "n2.json"])[0] == 0
        assert run_command(["very-solid", "--ring", "Q", "quadric.json"])[0] == 0
        code, doc, _ = run_command(["very-solid", "--ring", "QxQ", "n1.json"])
        assert code == 1
        zd = [s for s in doc["certificate"]["steps"] if s["check"] == "zero_divisors"]
        assert zd and zd[0]["data"]["a"] and zd[0]["data"]["b"]
        assert verify_certificate(doc).accepted


def test_criterion_5_oracle_bridge(capsys):
    with criterion(capsys, 5, "toric ideal Krull dimension equals face-chain dimension", 60):
        sharp = {k: Q for k, Q in MONOIDS.items() if Q.is_reduced}
        assert {"quadric", "numsg23"} <= set(sharp)
        for name, Q in sharp.items():
            assert krull_dim(toric_ideal(Q)) == primes(Q).dimension, name
        assert krull_dim(toric_ideal(MONOIDS["quadric"])) == 2
        assert toric_ideal(MONOIDS["quadric"]).format() == ["v^2 - u*w"]
        assert krull_dim(toric_ideal(MONOIDS["numsg23"])) == 1
        assert toric_ideal(MONOIDS["numsg23"]).format() == ["u^3 - v^2"]
        code, doc, _ = run_command(["oracle-dim", "quadric.json"])
        assert code == 0 and doc["result"]["bridge_holds"]


def test_criterion_6_main_theorem_pipeline(capsys):
    with criterion(capsys, 6, "main theorem pipeline over the corpus", 120):
        for sc in INDEX["scenarios"]:
            if sc["command"] != "theorem" or sc["expected"]["value"] != "yes":
                continue
            argv = ["theorem", "--ring", str(ROOT / sc["ring"]), "--prime", str(ROOT / sc["prime"]), str(ROOT / sc["monoid"])]
            code, doc, _ = run_command(argv)
            assert code == 0, sc["name"]
            s = doc["result"]
            assert s["dim_R"] == s["dim_R_mod_I"] + s["dim_Q"], sc["name"]
            assert [s["dim_R"], s["dim_R_mod_I"], s["dim_Q"]] == sc["dims"]["value"], sc["name"]
            assert verify_certificate(doc).accepted, sc["name"]
        quad = run_command(["theorem", "--ring", "Q", "--prime", "max", "quadric.json"])[1]["result"]
        assert (quad["dim_R"], quad["dim_R_mod_I"], quad["dim_Q"]) == (2, 0, 2)
        quad = run_command(["theorem", "--ring", "Z", "--prime", "max_p2.json", "quadric.json"])[1]["result"]
        assert (quad["dim_R"], quad["dim_R_mod_I"], quad["dim_Q"]) == (3, 1, 2)
        # every regular corpus ring with every hypothesis-satisfying monoid, at every monomial prime
        runs = 0
        for A in RINGS.values():
            assert A.is_regular
            for name, Q in hypothesis_monoids().items():
                for spec in all_monomial_primes(A, Q):
                    cert = main_theorem_check(A, Q, spec)
                    assert cert.verdict == "yes", (A.label, name, spec.to_json())
                    assert verify_certificate(cert.to_json()).accepted
                    runs += 1
        assert runs > 50


def test_criterion_7_converse_fails(capsys):
    with criterion(capsys, 7, "product of fields: not very solid, yet log regular at every monomial prime", None):
        for monoid in ("n1.json", "n2.json"):
            assert run_command(["very-solid", "--ring", "QxQ", monoid])[0] == 1
            code, doc, _ = run_command(["theorem", "--ring", "QxQ", "--all-primes", monoid])
            assert code == 0
            assert all(r["verdict"] == "yes" for r in doc["result"]["runs"])
            assert all(verify_certificate(r["certificate"]).accepted for r in doc["result"]["runs"])


def test_criterion_8_dimension_equality_matches_very_solid(capsys):
    with criterion(capsys, 8, "dimension equality agrees with very-solidness", None):
        agree = total = 0
        for A in RINGS.values():
            for Q in MONOIDS.values():
                if Q.discarded_torsion:
                    continue
                for spec in all_monomial_primes(A, Q):
                    L = localize_log_ring(log_ring(A, Q), spec)
                    cert = is_log_regular(L)
                    cond = cert.step("condition-regular-quotient")
                    if cond is None or cond.outcome is not True or "dim_R" not in cert.summary:
                        continue
                    s = cert.summary
                    equal = s["dim_R"] == s["dim_R_mod_I"] + s["dim_Q"]
                    vs = is_very_solid(L).verdict == "yes"
                    total += 1
                    agree += equal == vs
        assert total > 30
        assert agree == total


def test_criterion_9_brute_force_equivalence(capsys):
    with criterion(capsys, 9, "faces and Hilbert bases against brute force", None):
        for name, Q in MONOIDS.items():
            if Q.ngens > 8:
                continue
            assert sorted(f.indices for f in enumerate_faces(Q)) == sorted(brute_force_faces(Q)), name
            rc = root_closed_and_saturate(Q)
            hb = list(rc.hilbert_basis)
            units = list(rc.unit_basis) + [tuple(-a for a in u) for u in rc.unit_basis]
            # minimal: no element is generated by the others
            for h in hb:
                others = [g for g in hb if g != h] + units
                if others:
                    assert not membership(AffineMonoid(Q.ambient_rank, others), h), (name, h)
            # generating: every cone point in a box is in the monoid generated by the output
            sat = rc.saturation
            for x in lattice_points_in_cone(Q.cone.normals, Q.gp_basis.rows, 3, Q.ambient_rank):
                if Q.cone.in_span(x):
                    assert membership(sat, x), (name, x)
