"""Command-line interface.

Instances and results are JSON. Probabilities are written as exact
rational strings (``"3/9"``); floats are refused. Exit codes: 0 value or
witness, 1 no witness (or a certificate that fails verification), 2 budget
exhausted, 3 malformed input, 4 command/instance mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import channel, metrics, minentropy, reductions
from .channel import ChannelFamily
from .core import DEFAULT_BITS, Coupling, Distribution, Entropy, as_rational
from .errors import DenominatorOverflow, MalformedInstance, ParseError, SchemaError, TargetExceedsTotal
from .polytope import DEFAULT_LIMIT, TransportationPolytope
from .reductions import Certificate, SubsetSumInstance, ThreePartitionInstance

EXIT_OK, EXIT_NO_WITNESS, EXIT_LIMIT, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3, 4

SCHEMAS = {
    "subset_sum": ("weights", "target"),
    "three_partition": ("weights", "bound"),
    "transportation": ("p", "q"),
    "channel_family": ("p", "m"),
    "metric_pair": ("p", "q"),
}

COMMANDS = (
    "min-entropy", "decide-min", "optimal-channel", "decide-channel", "vi-distance",
    "vi-distance-normalized", "total-variation", "reduce", "verify",
)


@dataclass(frozen=True)
class InstanceFile:
    kind: str
    payload: Any


class CommandMismatch(Exception):
    pass


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(f"{where}: expected an integer, got {json.dumps(value)}")
    if isinstance(value, str):
        text = value.strip()
        if not text.lstrip("-").isdigit():
            raise SchemaError(f"{where}: expected a decimal integer string, got {value!r}")
        value = int(text)
    return value


def _rational(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise ValueError(f"{where}: float literal {value!r} rejected, write probabilities as 'a/b'")
    try:
        return as_rational(value)
    except TypeError as exc:
        raise SchemaError(f"{where}: {exc}") from exc
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from exc


def _list(obj, name: str) -> list:
    value = obj[name]
    if not isinstance(value, list) or not value:
        raise SchemaError(f"field {name!r}: expected a nonempty list")
    return value


def _distribution(obj, name: str) -> Distribution:
    probs = [_rational(x, f"{name}[{i}]") for i, x in enumerate(_list(obj, name))]
    try:
        return Distribution(probs)
    except ValueError as exc:
        raise ValueError(f"field {name!r}: {exc}") from exc


def _build(kind: str, obj: dict):
    if kind == "subset_sum":
        weights = [_integer(w, f"weights[{i}]") for i, w in enumerate(_list(obj, "weights"))]
        return SubsetSumInstance(weights, _integer(obj["target"], "target"))
    if kind == "three_partition":
        weights = [_integer(w, f"weights[{i}]") for i, w in enumerate(_list(obj, "weights"))]
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        return ThreePartitionInstance(weights, _integer(obj["bound"], "bound"))
    if kind in ("transportation", "metric_pair"):
        return TransportationPolytope(_distribution(obj, "p"), _distribution(obj, "q"))
    m = _integer(obj["m"], "m")
    if m < 1:
        raise ValueError("field 'm': must be at least 1")
    return ChannelFamily(_distribution(obj, "p"), m)


def parse_instance(text: bytes | str) -> InstanceFile:
    """Parse and validate one instance document.

    Raises :class:`ParseError` for bad JSON, :class:`SchemaError` for wrong
    or missing fields, and :class:`ValueError` for bad values.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("instance must be a JSON object")
    kind = obj.get("kind")
    if kind not in SCHEMAS:
        raise SchemaError(f"field 'kind': expected one of {sorted(SCHEMAS)}, got {kind!r}")
    fields = SCHEMAS[kind]
    missing = [f for f in fields if f not in obj]
    if missing:
        raise SchemaError(f"{kind}: missing field(s) {missing}")
    extra = sorted(set(obj) - set(fields) - {"kind"})
    if extra:
        raise SchemaError(f"{kind}: unknown field(s) {extra}")
    return InstanceFile(kind, _build(kind, obj))


def _strs(values) -> list:
    return [str(x) for x in values]


def instance_to_json(inst: InstanceFile) -> dict:
    x = inst.payload
    if inst.kind == "subset_sum":
        return {"kind": inst.kind, "weights": list(x.weights), "target": x.target}
    if inst.kind == "three_partition":
        return {"kind": inst.kind, "weights": list(x.weights), "bound": x.bound}
    if inst.kind == "channel_family":
        return {"kind": inst.kind, "p": _strs(x.p), "m": x.m}
    return {"kind": inst.kind, "p": _strs(x.p), "q": _strs(x.q)}


def witness_to_json(s: Coupling) -> list:
    return [_strs(r) for r in s.cells]


def witness_from_json(rows) -> list:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("witness: expected a matrix (list of lists)")
    return [[_rational(c, f"witness[{i}][{j}]") for j, c in enumerate(r)] for i, r in enumerate(rows)]


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def _as_polytope(inst: InstanceFile) -> TransportationPolytope:
    if inst.kind in ("transportation", "metric_pair"):
        return inst.payload
    if inst.kind == "subset_sum":
        return reductions.reduce_subset_sum(inst.payload)
    raise CommandMismatch(f"instance kind {inst.kind!r} does not describe a transportation polytope")


def _as_family(inst: InstanceFile) -> ChannelFamily:
    if inst.kind == "channel_family":
        return inst.payload
    if inst.kind == "three_partition":
        return reductions.reduce_three_partition(inst.payload)
    raise CommandMismatch(f"instance kind {inst.kind!r} does not describe a channel family")


def _interval(e: Entropy) -> dict:
    lo, hi = e.decimal_bounds(12)
    return {"value_interval": [lo, hi], "bound_direction": ["floor", "ceiling"]}


def _search_result(res) -> dict:
    out = {"status": "limit_exceeded" if res.limit_exceeded else "value"}
    out.update(_interval(res.value))
    out["witness"] = witness_to_json(res.best)
    out["optimal"] = res.optimal
    out["stats"] = {"vertices_visited": res.vertices_visited}
    if res.co_minimal:
        out["co_minimal"] = len(res.co_minimal)
    return out


def _metric_result(res) -> dict:
    out = {"status": "value" if res.exact else "limit_exceeded"}
    out.update(_interval(res.value))
    out["witness"] = witness_to_json(res.witness)
    return out


def _decision(w, extra=None) -> dict:
    if not w:
        return {"status": "no_witness", "exhausted": w.exhausted}
    out = {"status": "witness", "witness": witness_to_json(w.coupling)}
    out.update(extra or {})
    return out


def run(command: str, inst: InstanceFile, limit: int = DEFAULT_LIMIT, bits: int = DEFAULT_BITS,
        certificate: dict | None = None) -> dict:
    """Execute ``command`` on ``inst`` and return the result document (without timing)."""
    if command == "min-entropy":
        return _search_result(minentropy.min_joint_entropy_exact(_as_polytope(inst), limit, bits))

    if command == "decide-min":
        if inst.kind == "subset_sum":
            try:
                poly = reductions.reduce_subset_sum(inst.payload)
            except TargetExceedsTotal:
                return {"status": "no_witness", "exhausted": True}
            w = minentropy.decide_entropy_min(poly)
            subset = sorted(i for i, j in w.assignment.items() if j == 0) if w else None
            return _decision(w, {"subset": subset})
        return _decision(minentropy.decide_entropy_min(_as_polytope(inst)))

    if command == "optimal-channel":
        return _search_result(channel.max_mutual_information(_as_family(inst), limit, bits))

    if command == "decide-channel":
        w = channel.decide_optimal_channel(_as_family(inst))
        extra = {"partition": w.groups()} if w and inst.kind == "three_partition" else {}
        return _decision(w, extra)

    if command in ("vi-distance", "vi-distance-normalized"):
        poly = _as_polytope(inst)
        fn = metrics.vi_distance if command == "vi-distance" else metrics.vi_distance_normalized
        return _metric_result(fn(poly.p, poly.q, limit, bits))

    if command == "total-variation":
        if inst.kind not in ("metric_pair", "transportation"):
            raise CommandMismatch("total-variation needs a metric_pair instance")
        tv = metrics.total_variation(inst.payload.p, inst.payload.q)
        out = {"status": "value", "value": str(tv)}
        out.update(_interval(Entropy.exact(tv)))
        return out

    if command == "reduce":
        if inst.kind == "subset_sum":
            poly = reductions.reduce_subset_sum(inst.payload)
            reduced = InstanceFile("transportation", poly)
        elif inst.kind == "three_partition":
            reduced = InstanceFile("channel_family", reductions.reduce_three_partition(inst.payload))
        else:
            raise CommandMismatch("reduce needs a subset_sum or three_partition instance")
        return {"status": "value", "instance": instance_to_json(reduced)}

    if command == "verify":
        if certificate is None or "witness" not in certificate:
            raise SchemaError("verify needs --certificate pointing at a document with a 'witness' field")
        cells = witness_from_json(certificate["witness"])
        if inst.kind in ("channel_family", "three_partition"):
            target, prop = _as_family(inst), reductions.ROW_DETERMINISTIC_UNIFORM_COLS
        else:
            target, prop = _as_polytope(inst), reductions.ROW_DETERMINISTIC_IN
        prop = certificate.get("claimed_property", prop)
        ok = reductions.verify_certificate(Certificate(cells, prop), target)
        return {"status": "value", "valid": ok}

    raise CommandMismatch(f"unknown command {command!r}")


def exit_code(result: dict) -> int:
    if result["status"] == "no_witness" or result.get("valid") is False:
        return EXIT_NO_WITNESS
    if result["status"] == "limit_exceeded":
        return EXIT_LIMIT
    return EXIT_OK


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

def _random_distribution(rng: random.Random, n: int, scale: int) -> list:
    weights = [rng.randint(1, scale) for _ in range(n)]
    total = sum(weights)
    return [str(Fraction(w, total)) for w in weights]


def generate(kind: str, size: int, seed: int | None) -> dict:
    rng = random.Random(seed)
    if kind == "subset_sum":
        weights = [rng.randint(1, 50) for _ in range(size)]
        return {"kind": kind, "weights": weights, "target": rng.randint(1, sum(weights))}
    if kind == "three_partition":
        k = rng.randint(12, 24)
        lo, hi = k // 4 + 1, (k - 1) // 2
        weights = []
        for _ in range(size):
            while True:
                a, b = rng.randint(lo, hi), rng.randint(lo, hi)
                c = k - a - b
                if 4 * c > k and 2 * c < k:
                    break
            weights += [a, b, c]
        rng.shuffle(weights)
        return {"kind": kind, "weights": weights, "bound": k}
    if kind == "channel_family":
        return {"kind": kind, "p": _random_distribution(rng, size, 9), "m": rng.randint(2, 3)}
    return {"kind": kind, "p": _random_distribution(rng, size, 9), "q": _random_distribution(rng, size, 9)}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entropoly", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS + ("generate",))
    parser.add_argument("instance", nargs="?", default="-",
                        help="instance JSON file, '-' for stdin; for 'generate', the instance kind")
    parser.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="vertex/assignment budget")
    parser.add_argument("--precision", type=int, default=DEFAULT_BITS,
                        help="target interval width is 2**-PRECISION bits")
    parser.add_argument("--seed", type=int, default=None, help="seed for 'generate'")
    parser.add_argument("--size", type=int, default=4, help="instance size for 'generate'")
    parser.add_argument("--certificate", help="result JSON holding a 'witness' to check with 'verify'")
    parser.add_argument("-o", "--output", help="write the result here instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        if args.instance not in SCHEMAS:
            print(f"error: unknown instance kind {args.instance!r}", file=sys.stderr)
            return EXIT_INPUT
        result, code = generate(args.instance, args.size, args.seed), EXIT_OK
    else:
        started = time.perf_counter()
        try:
            inst = parse_instance(_read(args.instance))
            cert = json.loads(_read(args.certificate)) if args.certificate else None
            result = run(args.command, inst, args.limit, args.precision, cert)
        except (ParseError, SchemaError, ValueError, DenominatorOverflow, OSError, KeyError) as exc:
            code = EXIT_INPUT
            err = "input_error" if not isinstance(exc, MalformedInstance) else "malformed_instance"
            result = {"status": "error", "error": err, "type": type(exc).__name__, "message": str(exc)}
        except CommandMismatch as exc:
            code = EXIT_MISMATCH
            result = {"status": "error", "error": "command_mismatch", "message": str(exc)}
        else:
            code = exit_code(result)
            result["command"] = args.command
            result.setdefault("stats", {})["elapsed"] = round(time.perf_counter() - started, 6)
    text = json.dumps(result, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
