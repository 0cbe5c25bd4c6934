"""Shared JSON encoding of series values and regression fixtures.

Schema: {"p", "m", "q", "modulus", "variable": "1/t~", "latticeDenomExp",
"precisionScaled", "terms": [{"e": scaledExponent, "c": [F_p coords]}, ...]}
with terms sorted by exponent; encodings are canonical, so fixture files are
byte-diffable.
"""

import json

from .fq import make_field_context
from .series import TildeSeries


def series_to_obj(x):
    return {
        "p": x.ctx.p,
        "m": x.ctx.m,
        "q": x.ctx.q,
        "modulus": list(x.ctx.modulus),
        "variable": "1/t~",
        "latticeDenomExp": x.w,
        "precisionScaled": x.prec,
        "terms": [{"e": e, "c": list(c)} for e, c in x.terms()],
    }


def series_from_obj(obj):
    ctx = make_field_context(obj["p"], obj["m"])
    if list(ctx.modulus) != list(obj["modulus"]):
        raise ValueError("field modulus mismatch (non-canonical fixture?)")
    if obj.get("variable", "1/t~") != "1/t~":
        raise ValueError(f"unknown series variable {obj.get('variable')!r}")
    terms = {t["e"]: tuple(t["c"]) for t in obj["terms"]}
    return TildeSeries.from_terms(ctx, terms, obj["precisionScaled"],
                                  w=obj["latticeDenomExp"])


def dumps(obj):
    """Canonical JSON text (sorted keys, fixed separators, trailing newline)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def series_dumps(x):
    return dumps(series_to_obj(x))


def load_path(path):
    with open(path) as fh:
        return json.load(fh)


def format_series(x, max_terms=None):
    """Human-readable rendering: 'c*u^e + ... + O(u^prec)'; exponents are
    rational when the lattice is refined."""
    f = x.ctx.q ** x.w
    parts = []
    for e, c in x.terms()[: max_terms or None]:
        if e % f == 0:
            es = str(e // f)
        else:
            es = f"{e}/{f}"
        cs = str(c[0]) if x.ctx.m == 1 else "(" + ",".join(map(str, c)) + ")"
        parts.append(f"{cs}*u^{es}")
    if max_terms is not None and len(x.terms()) > max_terms:
        parts.append("...")
    prec = (str(x.prec // f) if x.prec % f == 0 else f"{x.prec}/{f}")
    return (" + ".join(parts) or "0") + f" + O(u^{prec})"
