"""Batch command line: parse instance files, run queries, emit JSON answers
with certificates, render 2D cone figures, drive self-tests.

Instance files are JSON with a versioned schema::

    {
      "schema": "desir/1",
      "omega": ["a", "b"],
      "gambles": {"g1": ["1", "-1"], "g2": ["-1", "2"], "zero": [0, 0]},
      "assessment": [["g1", "zero"], ["g2", "zero"]],
      "query": {"kind": "in-extension", "set": ["sum"]}
    }

Vector entries are integers or rational strings ("n", "-n", "n/d"); floats
are rejected. Depending on the subcommand the query carries ``set`` (a list
of gamble names), ``generators``, or ``gamble``.

Exit codes: 0 for a computed answer (even a negative one), 2 when a command
that requires consistency meets an inconsistent assessment, 1 for any input
error (unknown names, dimension mismatches, malformed JSON, exceeded caps),
each with a distinct diagnostic on stderr. Stdout carries exactly one JSON
document; runs are byte-identical for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .cones import (
    Certificate,
    ConeGenerators,
    certificate_valid,
    certificate_valid_strict,
    d_coherent,
    desext_contains,
    desext_contains_strict,
    posi_contains,
    zero_in_desext,
    zero_in_desext_strict,
)
from .extension import (
    Assessment,
    CapExceeded,
    DEFAULT_SEQUENCE_CAP,
    ExtAnswer,
    GambleSet,
    InconsistentAssessment,
    Skip,
    ext_contains,
    is_consistent,
)
from .formulations import ext_contains_indicator, ext_contains_split
from .gambles import (
    DimensionMismatch,
    Gamble,
    PossibilitySpace,
    gamble,
    zero,
)
from .oracle import (
    InstanceGenConfig,
    brute_ext_contains,
    default_space,
    fm_desext_contains,
    fm_desext_contains_strict,
    fm_posi_contains,
    fm_zero_in_desext,
    gen_instance,
    random_gamble,
)
from .ratlp import (
    LEQ,
    EQ,
    Infeasible,
    LinearProgram,
    fm_feasible,
    lp_solve,
    rational,
    verify_outcome,
)
from .representation import DFamilySpec, k_family_contains

SCHEMA = "desir/1"


class InputError(Exception):
    """Bad instance file, unknown name, or malformed invocation."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); 2 is reserved
        raise InputError(message)


@dataclass
class Instance:
    space: PossibilitySpace
    gambles: dict[str, Gamble]
    assessment: Assessment
    query: dict


def _parse_vector(space: PossibilitySpace, name: str, values) -> Gamble:
    if not isinstance(values, list) or len(values) != space.size:
        raise InputError(
            f"gamble {name!r} needs exactly {space.size} entries aligned with omega"
        )
    try:
        return gamble(space, values)
    except (TypeError, ValueError) as exc:
        raise InputError(f"gamble {name!r}: {exc}") from exc


def load_instance(path: str) -> Instance:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return parse_instance(payload)


def parse_instance(payload) -> Instance:
    if not isinstance(payload, dict):
        raise InputError("instance must be a JSON object")
    if payload.get("schema") != SCHEMA:
        raise InputError(f'instance must declare "schema": "{SCHEMA}"')
    omega = payload.get("omega")
    if not isinstance(omega, list) or not omega:
        raise InputError('"omega" must be a nonempty list of atom labels')
    try:
        space = PossibilitySpace(tuple(omega))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    raw_gambles = payload.get("gambles", {})
    if not isinstance(raw_gambles, dict):
        raise InputError('"gambles" must map names to vectors')
    named = {
        name: _parse_vector(space, name, values) for name, values in raw_gambles.items()
    }

    def lookup(name) -> Gamble:
        if name not in named:
            raise InputError(f"unknown gamble name {name!r}")
        return named[name]

    raw_assessment = payload.get("assessment", [])
    if not isinstance(raw_assessment, list):
        raise InputError('"assessment" must be a list of name lists')
    sets = []
    for row in raw_assessment:
        if not isinstance(row, list):
            raise InputError('"assessment" must be a list of name lists')
        sets.append(GambleSet.build(space, tuple(lookup(n) for n in row)))
    assessment = Assessment.build(space, sets)
    query = payload.get("query", {})
    if not isinstance(query, dict):
        raise InputError('"query" must be an object')
    return Instance(space, named, assessment, query)


def _named_list(instance: Instance, field: str) -> list[Gamble]:
    names = instance.query.get(field)
    if not isinstance(names, list):
        raise InputError(f'query needs a {field!r} list for this command')
    out = []
    for n in names:
        if n not in instance.gambles:
            raise InputError(f"unknown gamble name {n!r}")
        out.append(instance.gambles[n])
    return out


def query_set(instance: Instance) -> GambleSet:
    return GambleSet.build(instance.space, _named_list(instance, "set"))


def query_generators(instance: Instance) -> ConeGenerators:
    return ConeGenerators.build(instance.space, _named_list(instance, "generators"))


def query_gamble(instance: Instance) -> Gamble:
    name = instance.query.get("gamble")
    if name is None:
        raise InputError("query needs a 'gamble' name for this command")
    if name not in instance.gambles:
        raise InputError(f"unknown gamble name {name!r}")
    return instance.gambles[name]


# ---------------------------------------------------------------------------
# Payload builders
# ---------------------------------------------------------------------------


def _evidence_entries(answer: ExtAnswer) -> list[dict]:
    entries = []
    for seq, ev in answer.per_sequence.items():
        entry: dict = {"sequence": [g.serialized() for g in seq]}
        if isinstance(ev, Skip):
            entry["kind"] = "skip"
            entry["certificate"] = ev.certificate.serialized()
        else:
            entry["kind"] = "hit"
            entry["gamble"] = ev.gamble.serialized()
            entry["certificate"] = ev.certificate.serialized()
        entries.append(entry)
    return entries


def _ext_payload(
    command: str, instance: Instance, candidate: GambleSet, answer: ExtAnswer
) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "answer": answer.member,
        "strict": answer.strict,
        "omega": list(instance.space.labels),
        "query_set": candidate.serialized(),
        "witness_list": [s.serialized() for s in answer.witness_list],
        "sequences": _evidence_entries(answer),
        "failed_sequence": (
            [g.serialized() for g in answer.failed_sequence]
            if answer.failed_sequence is not None
            else None
        ),
    }


def _cert_fields(cert: Optional[Certificate]) -> dict:
    if cert is None:
        return {"lambdas": None, "remainder": None}
    return {
        "lambdas": [str(v) for v in cert.lambdas],
        "remainder": cert.remainder.serialized(),
    }


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_consistency(args) -> tuple[dict, int]:
    instance = load_instance(args.file)
    empty = GambleSet.build(instance.space, ())
    answer = ext_contains(instance.assessment, empty, strict=args.strict, cap=args.cap)
    payload = _ext_payload("consistency", instance, empty, answer)
    payload["answer"] = not answer.member
    return payload, 0


def _cmd_in_ext(args) -> tuple[dict, int]:
    instance = load_instance(args.file)
    candidate = query_set(instance)
    answer = ext_contains(instance.assessment, candidate, strict=args.strict, cap=args.cap)
    return _ext_payload("in-ext", instance, candidate, answer), 0


def _cmd_in_desext(args) -> tuple[dict, int]:
    instance = load_instance(args.file)
    E = query_generators(instance)
    f = query_gamble(instance)
    check = desext_contains_strict if args.strict else desext_contains
    cert = check(E, f)
    payload = {
        "schema": SCHEMA,
        "command": "in-desext",
        "answer": cert is not None,
        "strict": args.strict,
        "omega": list(instance.space.labels),
        "generators": [g.serialized() for g in E.generators],
        "gamble": f.serialized(),
    }
    payload.update(_cert_fields(cert))
    return payload, 0


def _cmd_zero_in_desext(args) -> tuple[dict, int]:
    instance = load_instance(args.file)
    E = query_generators(instance)
    check = zero_in_desext_strict if args.strict else zero_in_desext
    cert = check(E)
    payload = {
        "schema": SCHEMA,
        "command": "zero-in-desext",
        "answer": cert is not None,
        "strict": args.strict,
        "omega": list(instance.space.labels),
        "generators": [g.serialized() for g in E.generators],
    }
    payload.update(_cert_fields(cert))
    return payload, 0


def _cmd_coherent_d(args) -> tuple[dict, int]:
    instance = load_instance(args.file)
    E = query_generators(instance)
    check = zero_in_desext_strict if args.strict else zero_in_desext
    cert = check(E)
    payload = {
        "schema": SCHEMA,
        "command": "coherent-d",
        "answer": cert is None,
        "strict": args.strict,
        "omega": list(instance.space.labels),
        "generators": [g.serialized() for g in E.generators],
    }
    payload.update(_cert_fields(cert))
    return payload, 0


def _cmd_equiv(args) -> tuple[dict, int]:
    instance = load_instance(args.file)
    candidate = query_set(instance)
    main_answer = ext_contains(instance.assessment, candidate, cap=args.cap)
    split = ext_contains_split(instance.assessment, candidate, cap=args.cap)
    indic = ext_contains_indicator(instance.assessment, candidate, cap=args.cap)
    payload = _ext_payload("equiv", instance, candidate, main_answer)
    payload["formulations"] = {
        "direct": main_answer.member,
        "split": split.member,
        "indicator": indic.member,
    }
    payload["agree"] = main_answer.member == split.member == indic.member
    return payload, 0


def _cmd_repr(args) -> tuple[dict, int]:
    instance = load_instance(args.file)
    candidate = query_set(instance)
    if instance.assessment.is_empty:
        raise InputError("repr needs a nonempty assessment")
    if not is_consistent(instance.assessment, cap=args.cap):
        raise InconsistentAssessment("repr needs a consistent assessment")
    fam = DFamilySpec(instance.assessment.sets)
    family_member = k_family_contains(fam, candidate)
    answer = ext_contains(instance.assessment, candidate, cap=args.cap)
    payload = _ext_payload("repr", instance, candidate, answer)
    payload["ext_member"] = answer.member
    payload["family_member"] = family_member
    payload["answer"] = family_member == answer.member
    return payload, 0


def _cmd_gen(args) -> tuple[dict, int]:
    cfg = InstanceGenConfig(
        seed=args.seed,
        omega_size=args.omega_size,
        num_sets=args.num_sets,
        set_size=args.set_size,
        coeff_range=args.coeff_range,
    )
    assessment, candidate = gen_instance(cfg)
    names: dict[Gamble, str] = {}
    for g in itertools.chain(*(s.members for s in assessment.sets), candidate.members):
        if g not in names:
            names[g] = f"g{len(names)}"
    payload = {
        "schema": SCHEMA,
        "omega": list(assessment.space.labels),
        "gambles": {name: g.serialized() for g, name in names.items()},
        "assessment": [[names[g] for g in s.members] for s in assessment.sets],
        "query": {"kind": "in-extension", "set": [names[g] for g in candidate.members]},
    }
    return payload, 0


def _cmd_render(args) -> tuple[dict, int]:
    instance = load_instance(args.file)
    if instance.space.size != 2:
        raise InputError("render needs a two-atom possibility space")
    if "sequences" in instance.query:
        raw = instance.query["sequences"]
        if not isinstance(raw, list) or not raw:
            raise InputError("query 'sequences' must be a nonempty list of name lists")
        cones = []
        for row in raw:
            if not isinstance(row, list):
                raise InputError("query 'sequences' must be a nonempty list of name lists")
            gambles = []
            for n in row:
                if n not in instance.gambles:
                    raise InputError(f"unknown gamble name {n!r}")
                gambles.append(instance.gambles[n])
            cones.append(ConeGenerators.build(instance.space, gambles))
    else:
        cones = [query_generators(instance)]
    svg, regions = render_cone_svg(instance, cones)
    out = Path(args.out)
    try:
        out.write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc
    payload = {
        "schema": SCHEMA,
        "command": "render",
        "answer": True,
        "path": str(out),
        "regions": regions,
        "region": regions[0]["region"],
        "zero_in_cone": regions[0]["zero_in_cone"],
    }
    return payload, 0


# ---------------------------------------------------------------------------
# Self-test and certificate verification
# ---------------------------------------------------------------------------


def _random_lp(rng: random.Random) -> LinearProgram:
    n = rng.randint(1, 3)
    rows = []
    for _ in range(rng.randint(0, 4)):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        rel = LEQ if rng.random() < 0.8 else EQ
        rows.append((coeffs, rel, Fraction(rng.randint(-3, 3))))
    objective = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
    return LinearProgram.build(objective, rows)


def _fm_rows_for(lp: LinearProgram):
    rows = [(list(c), rel, b) for c, rel, b in lp.constraints]
    for j in range(lp.num_vars):
        rows.append(
            ([Fraction(-1) if i == j else Fraction(0) for i in range(lp.num_vars)], LEQ, Fraction(0))
        )
    return rows


def _selftest(seed: int, trials: int) -> tuple[dict, int]:
    rng = random.Random(seed)
    checks: dict[str, dict] = {}

    bad = 0
    for _ in range(trials):
        lp = _random_lp(rng)
        outcome = lp_solve(lp)
        if not verify_outcome(lp, outcome):
            bad += 1
            continue
        feasible_lp = not isinstance(outcome, Infeasible)
        if fm_feasible(_fm_rows_for(lp)) != feasible_lp:
            bad += 1
    checks["lp_vs_fm"] = {"instances": trials, "disagreements": bad}

    bad = 0
    for _ in range(trials):
        space = default_space(rng.randint(1, 3))
        gens = [random_gamble(rng, space, 2) for _ in range(rng.randint(0, 3))]
        f = random_gamble(rng, space, 2)
        E = ConeGenerators.build(space, gens)
        if (posi_contains(E, f) is not None) != fm_posi_contains(gens, f):
            bad += 1
        if (desext_contains(E, f) is not None) != fm_desext_contains(gens, f):
            bad += 1
        if (zero_in_desext(E) is not None) != fm_zero_in_desext(gens):
            bad += 1
        if (desext_contains_strict(E, f) is not None) != fm_desext_contains_strict(gens, f):
            bad += 1
    checks["cones_vs_fm"] = {"instances": trials, "disagreements": bad}

    bad = 0
    brute_trials = max(1, trials // 3)
    for i in range(brute_trials):
        cfg = InstanceGenConfig(
            seed=rng.randint(0, 10**9),
            omega_size=rng.randint(1, 2),
            num_sets=rng.randint(1, 2),
            set_size=rng.randint(1, 2),
            coeff_range=2,
        )
        assessment, candidate = gen_instance(cfg)
        engine = ext_contains(assessment, candidate).member
        if brute_ext_contains(assessment, candidate) != engine:
            bad += 1
    checks["brute_vs_engine"] = {"instances": brute_trials, "disagreements": bad}

    ok = all(c["disagreements"] == 0 for c in checks.values())
    payload = {
        "schema": SCHEMA,
        "command": "selftest",
        "answer": ok,
        "seed": seed,
        "trials": trials,
        "checks": checks,
    }
    return payload, 0 if ok else 1


def _cert_from_fields(space: PossibilitySpace, entry: dict) -> Certificate:
    cert = entry.get("certificate", entry)
    lambdas = tuple(rational(v) for v in cert["lambdas"])
    remainder = gamble(space, cert["remainder"])
    return Certificate(lambdas, remainder)


def _verify_evidence_payload(payload: dict) -> int:
    """Recheck every certificate in an `in-ext`-shaped payload. Returns the
    number of certificates checked; raises InputError when one fails."""
    space = PossibilitySpace(tuple(payload["omega"]))
    strict = bool(payload.get("strict"))
    valid = certificate_valid_strict if strict else certificate_valid
    candidate_vectors = {tuple(rational(v) for v in row) for row in payload["query_set"]}
    witness_sets = [
        [gamble(space, row) for row in s] for s in payload["witness_list"]
    ]
    expected = {tuple(seq) for seq in itertools.product(*witness_sets)}
    seen = set()
    checked = 0
    for entry in payload["sequences"]:
        seq = tuple(gamble(space, row) for row in entry["sequence"])
        seen.add(seq)
        E = ConeGenerators.build(space, seq)
        cert = _cert_from_fields(space, entry)
        if entry["kind"] == "skip":
            target = zero(space)
        else:
            target = gamble(space, entry["gamble"])
            if target.values not in candidate_vectors:
                raise InputError("hit names a gamble outside the query set")
        if not valid(cert, E, target):
            raise InputError(
                f"certificate for sequence {entry['sequence']} fails substitution"
            )
        checked += 1
    command = payload["command"]
    if command == "consistency":
        claims_membership = payload["answer"] is False  # the empty set got in
    elif command == "repr":
        claims_membership = payload.get("ext_member") is True
    else:
        claims_membership = payload["answer"] is True
    if claims_membership and seen != expected:
        raise InputError("recorded sequences do not cover the witness list")
    return checked


def _verify_single_cert_payload(payload: dict) -> int:
    space = PossibilitySpace(tuple(payload["omega"]))
    if payload.get("lambdas") is None:
        return 0
    strict = bool(payload.get("strict"))
    generators = ConeGenerators.build(
        space, tuple(gamble(space, row) for row in payload["generators"])
    )
    cert = _cert_from_fields(space, payload)
    if payload["command"] == "in-desext":
        target = gamble(space, payload["gamble"])
    else:
        target = zero(space)
    valid = certificate_valid_strict if strict else certificate_valid
    if not valid(cert, generators, target):
        raise InputError("certificate fails substitution")
    return 1


def _cmd_verify(path: str) -> tuple[dict, int]:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "command" not in payload:
        raise InputError("not a recorded answer: missing 'command'")
    command = payload["command"]
    if command in {"in-ext", "equiv", "repr", "consistency"}:
        checked = _verify_evidence_payload(payload)
    elif command in {"in-desext", "zero-in-desext", "coherent-d"}:
        checked = _verify_single_cert_payload(payload)
    elif command in {"render", "selftest"}:
        checked = 0
    else:
        raise InputError(f"cannot verify output of command {command!r}")
    out = {
        "schema": SCHEMA,
        "command": "selftest",
        "answer": True,
        "verified_command": command,
        "certificates_checked": checked,
    }
    return out, 0


def _cmd_selftest(args) -> tuple[dict, int]:
    if args.verify is not None:
        return _cmd_verify(args.verify)
    return _selftest(args.seed, args.trials)


# ---------------------------------------------------------------------------
# 2D cone rendering
# ---------------------------------------------------------------------------

_VIEW = Fraction(22, 10)  # world half-width
_SIZE = 360  # pixels


def _px(x: Fraction) -> str:
    return f"{float((x + _VIEW) * _SIZE / (2 * _VIEW)):.2f}"


def _py(y: Fraction) -> str:
    return f"{float((_VIEW - y) * _SIZE / (2 * _VIEW)):.2f}"


def _cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _dot2(u, v) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def _direction_sorted(vectors) -> list[tuple[Fraction, Fraction]]:
    """Distinct directions sorted counterclockwise from the positive x axis."""
    dirs: list[tuple[Fraction, Fraction]] = []
    for v in vectors:
        if v == (0, 0):
            continue
        if any(_cross(d, v) == 0 and _dot2(d, v) > 0 for d in dirs):
            continue
        dirs.append(v)

    def half(u) -> int:
        return 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1

    import functools

    def cmp(u, v) -> int:
        hu, hv = half(u), half(v)
        if hu != hv:
            return hu - hv
        c = _cross(u, v)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(dirs, key=functools.cmp_to_key(cmp))


def _cone_region(dirs: list[tuple[Fraction, Fraction]]):
    """Classify the positive hull of the directions: ("plane", None),
    ("half-plane", u) with the hull equal to {x : cross(u, x) <= 0}, or
    ("sector", (a, b)) spanning counterclockwise from a to b by less than pi.

    The direction list always contains both indicators here, so at most one
    counterclockwise gap between consecutive directions reaches pi and the
    degenerate line case never arises.
    """
    n = len(dirs)
    if n == 1:
        return "sector", (dirs[0], dirs[0])
    for i in range(n):
        u, w = dirs[i], dirs[(i + 1) % n]
        c = _cross(u, w)
        if c < 0:  # gap beyond pi: hull is the complementary sector
            return "sector", (w, u)
        if c == 0 and _dot2(u, w) < 0:  # gap of exactly pi
            return "half-plane", u
    return "plane", None


def _clip_polygon(poly, inside):
    """Sutherland-Hodgman against one half-plane given by inside(p) >= 0."""
    out = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        a, b = inside(cur), inside(nxt)
        if a >= 0:
            out.append(cur)
        if (a >= 0) != (b >= 0):
            t = a / (a - b)
            out.append(
                (cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1]))
            )
    return out


_REGION_FILLS = ("#bcd6ee", "#c9e7c0", "#f2d3b3", "#e3c7e8", "#f0e6a8")
_REGION_STROKES = ("#4878a8", "#5d9a50", "#c08a40", "#9a5fa5", "#b0a030")


def _region_polygon(E: ConeGenerators):
    """Exact region of the weak-background cone, clipped to the canvas."""
    ind = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    vectors = [tuple(g.values) for g in E.generators] + ind
    dirs = _direction_sorted(vectors)
    kind, data = _cone_region(dirs)
    corners = [
        (-_VIEW, -_VIEW),
        (_VIEW, -_VIEW),
        (_VIEW, _VIEW),
        (-_VIEW, _VIEW),
    ]
    if kind == "plane":
        poly = corners
    elif kind == "half-plane":
        u = data
        poly = _clip_polygon(corners, lambda p: -_cross(u, p))
    else:
        a, b = data
        poly = _clip_polygon(corners, lambda p: _cross(a, p))
        poly = _clip_polygon(poly, lambda p: _cross(p, b))
    deduped = [p for i, p in enumerate(poly) if p != poly[(i - 1) % len(poly)]]
    return kind, deduped or poly[:1]


def render_cone_svg(instance: Instance, cones: Sequence[ConeGenerators]) -> tuple[str, list[dict]]:
    """Deterministic SVG over a two-atom space: axes, generator points, and
    one weak-background cone region per requested picking."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_SIZE}" height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect x="0" y="0" width="{_SIZE}" height="{_SIZE}" fill="#ffffff"/>',
    ]
    regions = []
    for i, E in enumerate(cones):
        kind, poly = _region_polygon(E)
        zero_in = zero_in_desext(E) is not None
        regions.append(
            {
                "generators": [g.serialized() for g in E.generators],
                "region": kind,
                "zero_in_cone": zero_in,
            }
        )
        points = " ".join(f"{_px(x)},{_py(y)}" for x, y in poly)
        fill = _REGION_FILLS[i % len(_REGION_FILLS)]
        stroke = _REGION_STROKES[i % len(_REGION_STROKES)]
        opacity = "0.85" if len(cones) == 1 else "0.45"
        lines.append(
            f'<polygon points="{points}" fill="{fill}" fill-opacity="{opacity}" '
            f'stroke="{stroke}" stroke-width="1"/>'
        )
    lines.append(
        f'<line x1="{_px(-_VIEW)}" y1="{_py(Fraction(0))}" x2="{_px(_VIEW)}" '
        f'y2="{_py(Fraction(0))}" stroke="#333333" stroke-width="1"/>'
    )
    lines.append(
        f'<line x1="{_px(Fraction(0))}" y1="{_py(-_VIEW)}" x2="{_px(Fraction(0))}" '
        f'y2="{_py(_VIEW)}" stroke="#333333" stroke-width="1"/>'
    )
    for t in (-2, -1, 1, 2):
        ft = Fraction(t)
        lines.append(
            f'<line x1="{_px(ft)}" y1="{_py(Fraction(-1, 20))}" x2="{_px(ft)}" '
            f'y2="{_py(Fraction(1, 20))}" stroke="#333333" stroke-width="1"/>'
        )
        lines.append(
            f'<line x1="{_px(Fraction(-1, 20))}" y1="{_py(ft)}" '
            f'x2="{_px(Fraction(1, 20))}" y2="{_py(ft)}" stroke="#333333" stroke-width="1"/>'
        )
    value_to_name = {}
    for name in sorted(instance.gambles):
        value_to_name.setdefault(instance.gambles[name].values, name)
    drawn = set()
    for E in cones:
        for g in E.generators:
            if g.values in drawn:
                continue
            drawn.add(g.values)
            x, y = g.values
            label = value_to_name.get(g.values, "")
            lines.append(
                f'<circle cx="{_px(x)}" cy="{_py(y)}" r="3.5" fill="#1f3d5c"/>'
            )
            if label:
                lines.append(
                    f'<text x="{float((x + _VIEW) * _SIZE / (2 * _VIEW)) + 6:.2f}" '
                    f'y="{float((_VIEW - y) * _SIZE / (2 * _VIEW)) - 6:.2f}" '
                    f'font-family="sans-serif" font-size="12" fill="#1f3d5c">{label}</text>'
                )
    any_zero = any(r["zero_in_cone"] for r in regions)
    origin_fill = "#1f3d5c" if any_zero else "#ffffff"
    lines.append(
        f'<circle cx="{_px(Fraction(0))}" cy="{_py(Fraction(0))}" r="3.5" '
        f'fill="{origin_fill}" stroke="#1f3d5c" stroke-width="1.5"/>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n", regions


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="gamblesets", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        return p

    def add_common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="instance JSON file")
        p.add_argument("--strict", action="store_true", help="strict-dominance mode")
        p.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_SEQUENCE_CAP,
            help="maximum number of pickings to enumerate",
        )

    for name in ("consistency", "in-ext", "in-desext", "zero-in-desext", "coherent-d"):
        add_common(add(name))
    for name in ("equiv", "repr"):
        p = add(name)
        p.add_argument("file")
        p.add_argument("--cap", type=int, default=DEFAULT_SEQUENCE_CAP)
    p = add("render")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="output SVG path")
    p = add("gen")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--omega-size", type=int, default=2)
    p.add_argument("--num-sets", type=int, default=2)
    p.add_argument("--set-size", type=int, default=2)
    p.add_argument("--coeff-range", type=int, default=2)
    p = add("selftest")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=40)
    p.add_argument("--verify", metavar="FILE", help="re-validate a recorded answer")
    return parser


_HANDLERS = {
    "consistency": _cmd_consistency,
    "in-ext": _cmd_in_ext,
    "in-desext": _cmd_in_desext,
    "zero-in-desext": _cmd_zero_in_desext,
    "coherent-d": _cmd_coherent_d,
    "equiv": _cmd_equiv,
    "repr": _cmd_repr,
    "gen": _cmd_gen,
    "render": _cmd_render,
    "selftest": _cmd_selftest,
}


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv))
    payload, code = _HANDLERS[args.command](args)
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except InconsistentAssessment as exc:
        print(f"inconsistent assessment: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 1
    except (DimensionMismatch, ValueError, TypeError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
