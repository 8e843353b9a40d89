"""JSON descriptors and shorthand strings for the library's carriers.

Schema (version 1):

  {"kind": "step",     "breaks": [...], "values": [...], "domain": {"R": ...}}
  {"kind": "power",    "pieces": [{"lo":.., "hi":.., "c":.., "gamma":..}, ...],
                       "head_gamma": .., "tail_gamma": .., "domain": {"R": ...}}
  {"kind": "qconcave", "jump": d, "scale": c, "alpha": a, "beta": b,
                       "domain": {"R": ...}}
  {"kind": "sampled",  "grid": [...], "values": [...], "domain": {"R": ...}}
  {"kind": "powlog",   "c": .., "gamma": .., "beta": .., "domain": {"R": ...}}
                       (weights only: c * t^gamma * (e+|log t|)^beta)

Infinity is spelled "inf".  Shorthand strings cover the power/log families:
``pow:a``, ``powlog:a,b``, ``jump:d+pow:a`` for profiles and weights, and
``chi:a`` for characteristic-function data.  A string argument that starts
with ``{`` is parsed as inline JSON; otherwise, if it names a file, the file
content is parsed.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .errors import RearToolError
from .funcspace import Domain, PiecewiseFn, StepFn, chi
from .norms import GammaSpace, Weight, weight_power, weight_powlog
from .quasiconcave import ClosedFormQC, SampledQC, closed_form, from_samples

SCHEMA_VERSION = 1


class DescriptorError(RearToolError):
    """A JSON descriptor or shorthand string does not match the schema."""


def _num_out(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _num_in(x) -> float:
    if x == "inf":
        return math.inf
    if x == "-inf":
        return -math.inf
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return float(x)
    raise DescriptorError(f"expected a number or 'inf', got {x!r}")


def domain_to_json(domain: Domain) -> dict:
    return {"R": _num_out(domain.R)}


def parse_domain(doc) -> Domain:
    if not isinstance(doc, dict) or "R" not in doc:
        raise DescriptorError(f"domain must be {{'R': number|'inf'}}, got {doc!r}")
    return Domain(_num_in(doc["R"]))


# ---------------------------------------------------------------------------
# function carriers


def fn_to_json(fn: PiecewiseFn) -> dict:
    if isinstance(fn, StepFn):
        return {
            "kind": "step",
            "breaks": [float(b) for b in fn.breaks],
            "values": [float(v) for v in fn.values],
            "domain": domain_to_json(fn.domain),
        }
    pieces = []
    gammas = []
    for i, terms in enumerate(fn.pieces):
        live = [(c, g, m) for c, g, m in terms if c != 0.0]
        if len(live) > 1 or any(m != 0 for _, _, m in live):
            raise DescriptorError(
                "only single-power pieces fit the descriptor schema")
        c, g = (live[0][0], live[0][1]) if live else (0.0, 0.0)
        pieces.append({"lo": _num_out(float(fn.bounds[i])),
                       "hi": _num_out(float(fn.bounds[i + 1])),
                       "c": float(c), "gamma": float(g)})
        gammas.append(float(g))
    return {
        "kind": "power",
        "pieces": pieces,
        "head_gamma": gammas[0],
        "tail_gamma": gammas[-1],
        "domain": domain_to_json(fn.domain),
    }


def _parse_step(doc: dict) -> StepFn:
    breaks = [float(b) for b in doc.get("breaks", [])]
    values = [float(v) for v in doc.get("values", [])]
    domain = parse_domain(doc.get("domain", {"R": "inf"}))
    if len(values) != len(breaks) + 1:
        raise DescriptorError("a step needs exactly len(breaks)+1 values")
    return StepFn(breaks, values, domain)


def _parse_power(doc: dict) -> PiecewiseFn:
    raw = doc.get("pieces", [])
    if not raw:
        raise DescriptorError("power descriptor needs at least one piece")
    domain = parse_domain(doc.get("domain", {"R": "inf"}))
    bounds = [0.0]
    pieces = []
    for j, pc in enumerate(raw):
        lo, hi = _num_in(pc["lo"]), _num_in(pc["hi"])
        if lo != bounds[-1]:
            raise DescriptorError(
                f"piece {j} starts at {lo}, expected {bounds[-1]}")
        if not hi > lo:
            raise DescriptorError(f"piece {j} has empty interval")
        bounds.append(hi)
        pieces.append(((float(pc["c"]), float(pc["gamma"]), 0),))
    if bounds[-1] != domain.R:
        raise DescriptorError("pieces must cover (0, R) exactly")
    fn = PiecewiseFn(domain, bounds, pieces)
    for key, idx in (("head_gamma", 0), ("tail_gamma", -1)):
        if key in doc and float(doc[key]) != pieces[idx][0][1]:
            raise DescriptorError(
                f"{key}={doc[key]} contradicts the piece exponents")
    return fn


def parse_fn(doc) -> PiecewiseFn:
    doc = _as_doc(doc, role="fn")
    if isinstance(doc, PiecewiseFn):
        return doc
    kind = doc.get("kind")
    if kind == "step":
        return _parse_step(doc)
    if kind == "power":
        return _parse_power(doc)
    raise DescriptorError(f"unknown function kind {kind!r}")


# ---------------------------------------------------------------------------
# quasiconcave profiles


def profile_to_json(phi) -> dict:
    if isinstance(phi, ClosedFormQC):
        return {
            "kind": "qconcave",
            "jump": float(phi.d), "scale": float(phi.c),
            "alpha": float(phi.alpha), "beta": float(phi.beta),
            "domain": domain_to_json(phi.domain),
        }
    if isinstance(phi, SampledQC):
        return {
            "kind": "sampled",
            "grid": [float(t) for t in phi.ts],
            "values": [float(v) for v in phi.vals],
            "domain": domain_to_json(phi.domain),
        }
    raise DescriptorError(f"no descriptor form for {type(phi).__name__}")


def parse_profile(doc, R: float = math.inf):
    doc = _as_doc(doc, role="profile", R=R)
    if not isinstance(doc, dict):
        return doc
    kind = doc.get("kind")
    if kind == "qconcave":
        domain = parse_domain(doc.get("domain", {"R": _num_out(R)}))
        return closed_form(float(doc.get("alpha", 0.0)),
                           float(doc.get("beta", 0.0)),
                           float(doc.get("scale", 1.0)),
                           float(doc.get("jump", 0.0)),
                           R=domain.R)
    if kind == "sampled":
        domain = parse_domain(doc.get("domain", {"R": _num_out(R)}))
        return from_samples(doc["grid"], doc["values"], R=domain.R)
    raise DescriptorError(f"unknown profile kind {kind!r}")


# ---------------------------------------------------------------------------
# weights and spaces


def weight_to_json(w: Weight) -> dict:
    if w.exact is not None:
        return fn_to_json(w.exact)
    params = getattr(w, "powlog", None)
    if params is not None:
        c, gamma, beta = params
        return {"kind": "powlog", "c": c, "gamma": gamma, "beta": beta,
                "domain": domain_to_json(w.domain)}
    raise DescriptorError("only piecewise and power-log weights serialize")


def parse_weight(doc, R: float = math.inf, require_integrable: bool = True) -> Weight:
    doc = _as_doc(doc, role="weight", R=R)
    if isinstance(doc, Weight):
        return doc
    if isinstance(doc, dict) and doc.get("kind") == "powlog":
        domain = parse_domain(doc.get("domain", {"R": _num_out(R)}))
        return weight_powlog(float(doc.get("c", 1.0)), float(doc["gamma"]),
                             float(doc.get("beta", 0.0)), R=domain.R,
                             require_integrable=require_integrable)
    fn = parse_fn(doc)
    return Weight(fn.domain, exact=fn, require_integrable=require_integrable)


def space_to_json(space: GammaSpace) -> dict:
    return {"kind": "gamma-space", "p": float(space.p),
            "weight": weight_to_json(space.weight)}


def parse_space(doc, R: float = math.inf) -> GammaSpace:
    doc = _as_doc(doc, role="space", R=R)
    if isinstance(doc, GammaSpace):
        return doc
    if doc.get("kind") != "gamma-space" or "p" not in doc or "weight" not in doc:
        raise DescriptorError(
            "space descriptor must be {'kind':'gamma-space','p':..,'weight':..}")
    return GammaSpace(float(doc["p"]), parse_weight(doc["weight"], R=R))


# ---------------------------------------------------------------------------
# shorthand strings and argument dispatch


def _shorthand(text: str, role: str, R: float):
    name, _, rest = text.partition(":")
    try:
        if name == "pow":
            a = float(rest)
            if role == "weight":
                return weight_power(1.0, a, R)
            return closed_form(a, R=R)
        if name == "powlog":
            a_str, b_str = rest.split(",", 1)
            a, b = float(a_str), float(b_str)
            if role == "weight":
                return weight_powlog(1.0, a, b, R)
            return closed_form(a, b, R=R)
        if name == "jump":
            d_str, _, pow_part = rest.partition("+")
            d = float(d_str)
            if not pow_part.startswith("pow:"):
                raise DescriptorError(
                    f"jump shorthand is jump:d+pow:a, got {text!r}")
            if role == "weight":
                raise DescriptorError("a weight cannot carry a jump")
            return closed_form(float(pow_part[4:]), 0.0, 1.0, d, R=R)
        if name == "chi":
            if role not in ("fn",):
                raise DescriptorError("chi:a only describes function data")
            return chi(float(rest), Domain(R))
    except (ValueError, TypeError) as e:
        raise DescriptorError(f"malformed shorthand {text!r}: {e}") from e
    raise DescriptorError(f"unknown shorthand {text!r}")


def _as_doc(arg, role: str, R: float = math.inf):
    """Dict passes through; strings resolve as shorthand, inline JSON, or path."""
    if isinstance(arg, dict) or not isinstance(arg, str):
        return arg
    text = arg.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise DescriptorError(f"bad inline JSON: {e}") from e
    if any(text.startswith(k + ":") for k in ("pow", "powlog", "jump", "chi")):
        return _shorthand(text, role, R)
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as e:
                raise DescriptorError(f"bad JSON in {text}: {e}") from e
    raise DescriptorError(f"cannot interpret {arg!r} as a descriptor")


def jsonable(obj):
    """Recursively convert reports to JSON-safe values (inf -> 'inf')."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(float(v)) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        return _num_out(x)
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "__dataclass_fields__"):
        return {k: jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    return str(obj)
