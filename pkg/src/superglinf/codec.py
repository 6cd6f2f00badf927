"""JSON encodings shared by the library and the command line."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .core import BUILTIN_PARITIES, ParityFunction, SuperMatrix, as_scalar
from .errors import SuperGLError
from .extension import ExtendedElement
from .invariants import BlockParity, Classification, EquivalenceWitness, SpectrumEstimate
from .loops import PeriodicBandMatrix
from .permutations import FinPermutation, MembershipCertificate, TailMap, identity, shift, stretch, tau


class CodecError(SuperGLError, ValueError):
    """Input does not match the expected JSON shape."""


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CodecError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _need(d: Any, key: str, what: str):
    if not isinstance(d, dict) or key not in d:
        raise CodecError(f"{what}: missing key {key!r}")
    return d[key]


def scalar_str(v: Fraction) -> str:
    return str(Fraction(v))


def count_str(v) -> str | int:
    return "inf" if v == math.inf else int(v)


# ---------------------------------------------------------------------------
# parity functions


def _bits(s: Any, what: str) -> tuple[int, ...]:
    if not isinstance(s, str) or not s or set(s) - {"0", "1"}:
        raise CodecError(f"{what}: expected a nonempty string of 0/1, got {s!r}")
    return tuple(int(ch) for ch in s)


def _tail_from_json(t: Any, what: str) -> tuple[int, ...]:
    if isinstance(t, dict) and "const" in t:
        bits = _bits(t["const"], what)
        if len(bits) != 1:
            raise CodecError(f"{what}: const takes a single digit")
        return bits
    if isinstance(t, dict) and "periodic" in t:
        return _bits(t["periodic"], what)
    raise CodecError(f"{what}: expected {{'const': ...}} or {{'periodic': ...}}")


def _tail_to_json(word: tuple[int, ...]) -> dict:
    s = "".join(map(str, word))
    return {"const": s} if len(word) == 1 else {"periodic": s}


def parity_to_json(p: ParityFunction | BlockParity) -> dict:
    if isinstance(p, BlockParity):
        rule = {"geometric": p.geometric} if p.geometric is not None else {"polynomial": p.polynomial}
        return {"blocks": {"start_parity": str(p.start_parity), "rule": rule}}
    return {
        "window_lo": p.window_lo,
        "window": "".join(map(str, p.window)),
        "left_tail": _tail_to_json(p.left_tail),
        "right_tail": _tail_to_json(p.right_tail),
    }


def parity_from_json(d: Any) -> ParityFunction | BlockParity:
    if isinstance(d, str):
        if d not in BUILTIN_PARITIES:
            raise CodecError(f"unknown parity builtin {d!r}; known: {sorted(BUILTIN_PARITIES)}")
        return BUILTIN_PARITIES[d]
    if isinstance(d, dict) and "blocks" in d:
        b = d["blocks"]
        start = _bits(str(_need(b, "start_parity", "blocks")), "start_parity")[0]
        rule = _need(b, "rule", "blocks")
        if isinstance(rule, dict) and "geometric" in rule:
            return BlockParity(start, geometric=int(rule["geometric"]))
        if isinstance(rule, dict) and "polynomial" in rule:
            return BlockParity(start, polynomial=int(rule["polynomial"]))
        raise CodecError("blocks.rule: expected {'geometric': r} or {'polynomial': d}")
    window = _need(d, "window", "parity")
    if not isinstance(window, str) or set(window) - {"0", "1"}:
        raise CodecError(f"parity.window: expected a string of 0/1, got {window!r}")
    return ParityFunction(
        int(d.get("window_lo", 0)),
        tuple(int(ch) for ch in window),
        _tail_from_json(_need(d, "left_tail", "parity"), "parity.left_tail"),
        _tail_from_json(_need(d, "right_tail", "parity"), "parity.right_tail"),
    )


def _parity_ref(p: ParityFunction) -> Any:
    for name, q in BUILTIN_PARITIES.items():
        if q == p:
            return name
    return parity_to_json(p)


# ---------------------------------------------------------------------------
# matrices


def _entries_from_json(rows: Any, what: str) -> dict:
    if not isinstance(rows, list):
        raise CodecError(f"{what}: expected a list of [i, j, value]")
    out = {}
    for n, row in enumerate(rows):
        if not (isinstance(row, list) and len(row) == 3):
            raise CodecError(f"{what}[{n}]: expected [i, j, value]")
        i, j, v = row
        try:
            out[(int(i), int(j))] = out.get((int(i), int(j)), 0) + as_scalar(v)
        except (TypeError, ValueError) as e:
            raise CodecError(f"{what}[{n}]: {e}") from None
    return out


def _entries_to_json(entries) -> list:
    return [[i, j, scalar_str(v)] for (i, j), v in sorted(entries.items())]


def matrix_to_json(a: SuperMatrix) -> dict:
    return {"parity": _parity_ref(a.parity), "entries": _entries_to_json(a.entries)}


def matrix_from_json(d: Any, parity: ParityFunction | None = None) -> SuperMatrix:
    p = parity_from_json(d["parity"]) if isinstance(d, dict) and "parity" in d else parity
    if p is None:
        raise CodecError("matrix: missing key 'parity'")
    return SuperMatrix(p, _entries_from_json(_need(d, "entries", "matrix"), "matrix.entries"))


def extended_to_json(x: ExtendedElement) -> dict:
    out = matrix_to_json(x.mat)
    out["z"] = scalar_str(x.z)
    return out


def extended_from_json(d: Any, parity: ParityFunction | None = None) -> ExtendedElement:
    return ExtendedElement(matrix_from_json(d, parity), as_scalar(d.get("z", "0")))


def periodic_to_json(x: PeriodicBandMatrix) -> dict:
    return {"k": x.k, "band": x.band, "parity": _parity_ref(x.parity), "type": x.type_tag,
            "cells": _entries_to_json(x.cells)}


def periodic_from_json(d: Any) -> PeriodicBandMatrix:
    return PeriodicBandMatrix(
        int(_need(d, "k", "periodic matrix")), int(_need(d, "band", "periodic matrix")),
        parity_from_json(_need(d, "parity", "periodic matrix")), d.get("type", "A"),
        _entries_from_json(_need(d, "cells", "periodic matrix"), "cells"))


# ---------------------------------------------------------------------------
# permutations


def _tailmap_to_json(t: TailMap) -> dict:
    return {"period": t.period, "classes": [list(c) for c in t.classes]}


def _tailmap_from_json(d: Any, what: str) -> TailMap:
    classes = _need(d, "classes", what)
    return TailMap(int(_need(d, "period", what)), tuple((int(c), int(s)) for c, s in classes))


def permutation_to_json(s: FinPermutation) -> dict:
    return {"window_lo": s.window_lo, "exceptions": [list(x) for x in s.exceptions()],
            "left_tail": _tailmap_to_json(s.left), "right_tail": _tailmap_to_json(s.right)}


def permutation_from_json(d: Any) -> FinPermutation:
    """Builtins 'identity', 'tau', 'stretch', 'shift:n', or the table form.

    ``window_lo`` (default: the smallest exception, else 0) is where the
    left tail stops.  Window gaps between listed exceptions follow the left
    tail below 0 and the right tail from 0 on.
    """
    if isinstance(d, str):
        if d == "identity":
            return identity()
        if d == "tau":
            return tau()
        if d == "stretch":
            return stretch()
        if d.startswith("shift:"):
            try:
                return shift(int(d[6:]))
            except ValueError:
                raise CodecError(f"bad shift amount in {d!r}") from None
        raise CodecError(f"unknown permutation builtin {d!r}")
    left = _tailmap_from_json(_need(d, "left_tail", "permutation"), "permutation.left_tail")
    right = _tailmap_from_json(_need(d, "right_tail", "permutation"), "permutation.right_tail")
    exc = {int(i): int(j) for i, j in d.get("exceptions", [])}
    lo = int(d.get("window_lo", min(exc, default=0)))
    if any(i < lo for i in exc):
        raise CodecError("permutation: exception below window_lo")
    hi = max(exc, default=lo - 1)
    table = [exc.get(i, left(i) if i < 0 else right(i)) for i in range(lo, hi + 1)]
    return FinPermutation(lo, table, left, right)


def certificate_to_json(c: MembershipCertificate) -> dict:
    w = c.witness
    if isinstance(w, tuple):
        w = [scalar_str(x) for x in w]
    elif isinstance(w, Fraction):
        w = scalar_str(w)
    return {"group": c.group, "member": c.member, "witness": w, "detail": c.detail}


# ---------------------------------------------------------------------------
# invariants


def classification_to_json(c: Classification) -> dict:
    return {"class": c.label, "finite": c.finite,
            "counts": {k: count_str(v) for k, v in c.counts.as_dict().items()},
            "totals": {"odd": count_str(c.odd_total), "even": count_str(c.even_total)}}


def spectrum_to_json(e: SpectrumEstimate) -> dict:
    return {"side": e.side, "lower": scalar_str(e.lower), "upper": scalar_str(e.upper),
            "lower_decimal": round(float(e.lower), 6), "upper_decimal": round(float(e.upper), 6),
            "exact": e.exact, "samples": e.samples, "drift": scalar_str(e.drift)}


def witness_to_json(w: EquivalenceWitness) -> dict:
    return {"equivalent": w.equivalent, "group": w.group, "via_tau": w.via_tau,
            "sigma": permutation_to_json(w.sigma) if w.sigma is not None else None,
            "reason": w.reason}


__all__ = [
    "CodecError", "certificate_to_json", "classification_to_json", "dumps", "extended_from_json",
    "extended_to_json", "loads", "matrix_from_json", "matrix_to_json", "parity_from_json",
    "parity_to_json", "periodic_from_json", "periodic_to_json", "permutation_from_json",
    "permutation_to_json", "spectrum_to_json", "witness_to_json",
]
