"""Run configuration: a single JSON document per run, exact numbers as text.

Scalars, polynomials, rational functions, and Laurent polynomials appear as
strings in the grammars of `parse_scalar`, `parse_poly`, `parse_rational`,
and `parse_laurent`, so rational data stays exact through the file format.
Floats are accepted only where a quantity is genuinely real-valued (R, beta,
tolerances, slack).
"""

from __future__ import annotations

import json

from .domains import Annulus, PuncturedPlane
from .errors import ConfigError
from .laurent import parse_laurent
from .lagrangian import HolomorphicPair, LagrangianSpec
from .metric import MetricSpec
from .nonorientable import SymmetricLaurentData, build_f
from .rational import parse_rational
from .scalars import parse_scalar
from .sphere import SpherePoint
from .weierstrass import WeierstrassData


def _require(mapping, key, where):
    if key not in mapping:
        raise ConfigError(f"missing key {key!r} in {where}")
    return mapping[key]


def _as_mapping(value, where):
    if not isinstance(value, dict):
        raise ConfigError(f"{where} must be an object")
    return value


def _positive(value, where):
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where} must be a number") from None
    if not out > 0.0:
        raise ConfigError(f"{where} must be positive")
    return out


def parse_domain(block):
    block = _as_mapping(block, "domain")
    kind = _require(block, "kind", "domain")
    punctures = block.get("punctures", [])
    if not isinstance(punctures, list):
        raise ConfigError("domain punctures must be a list")
    try:
        pts = [parse_scalar(str(p)) for p in punctures]
    except ValueError as e:
        raise ConfigError(f"bad puncture: {e}") from None
    if kind == "punctured-plane":
        return PuncturedPlane(pts)
    if kind == "annulus":
        return Annulus(_positive(_require(block, "R", "domain"), "domain R"), pts)
    raise ConfigError(f"unknown domain kind {kind!r}")


def parse_metric(block):
    block = _as_mapping(block, "metric")
    factors_raw = _require(block, "factors", "metric")
    if not isinstance(factors_raw, list) or not factors_raw:
        raise ConfigError("metric factors must be a nonempty list")
    factors = []
    for i, item in enumerate(factors_raw):
        item = _as_mapping(item, f"metric factor {i}")
        g_text = _require(item, "g", f"metric factor {i}")
        m = _require(item, "m", f"metric factor {i}")
        if not isinstance(m, int) or m < 0:
            raise ConfigError(f"metric factor {i}: m must be a nonnegative integer")
        try:
            factors.append((parse_rational(str(g_text)), m))
        except ValueError as e:
            raise ConfigError(f"metric factor {i}: {e}") from None
    try:
        omega = parse_rational(str(_require(block, "omega_hat", "metric")))
    except ValueError as e:
        raise ConfigError(f"metric omega_hat: {e}") from None
    return MetricSpec(factors, omega)


def parse_weierstrass(block):
    block = _as_mapping(block, "weierstrass")
    try:
        g1 = parse_rational(str(_require(block, "g1", "weierstrass")))
        g2 = parse_rational(str(_require(block, "g2", "weierstrass")))
        omega = parse_rational(str(_require(block, "omega_hat", "weierstrass")))
    except ValueError as e:
        raise ConfigError(f"weierstrass data: {e}") from None
    return WeierstrassData(g1, g2, omega)


def parse_lagrangian(block):
    block = _as_mapping(block, "lagrangian")
    try:
        f1 = parse_rational(str(_require(block, "F1", "lagrangian")))
        f2 = parse_rational(str(_require(block, "F2", "lagrangian")))
    except ValueError as e:
        raise ConfigError(f"lagrangian pair: {e}") from None
    beta = block.get("beta", 0.0)
    try:
        beta = float(beta)
    except (TypeError, ValueError):
        raise ConfigError("lagrangian beta must be a real number") from None
    return LagrangianSpec.from_pair(HolomorphicPair(f1, f2), beta=beta)


def parse_nonorientable(block):
    block = _as_mapping(block, "nonorientable")
    phi_raw = _require(block, "phi", "nonorientable")
    if not isinstance(phi_raw, list) or len(phi_raw) != 4:
        raise ConfigError("nonorientable phi must list four Laurent polynomials")
    try:
        phis = [parse_laurent(str(t)) for t in phi_raw]
    except ValueError as e:
        raise ConfigError(f"nonorientable phi: {e}") from None
    try:
        data = SymmetricLaurentData(phis)
    except Exception as e:
        raise ConfigError(f"nonorientable phi: {e}") from None
    b_raw = _require(block, "b", "nonorientable")
    if not isinstance(b_raw, list) or not b_raw:
        raise ConfigError("nonorientable b must be a nonempty coefficient list")
    try:
        b = [parse_scalar(str(x)) for x in b_raw]
    except ValueError as e:
        raise ConfigError(f"nonorientable b: {e}") from None
    k = _require(block, "k", "nonorientable")
    if not isinstance(k, int):
        raise ConfigError("nonorientable k must be an integer")
    R = _positive(_require(block, "R", "nonorientable"), "nonorientable R")
    if not R > 1.0:
        raise ConfigError("nonorientable R must exceed 1")
    declared = block.get("declared_omitted")
    if declared is not None:
        if not isinstance(declared, list) or len(declared) != 2:
            raise ConfigError("declared_omitted must list two point sets")
        declared = [
            [SpherePoint.of(str(p)) for p in points] for points in declared
        ]
    out = {
        "data": data,
        "b": b,
        "k": k,
        "R": R,
        "declared_omitted": declared,
        "samples": block.get("samples", 1000),
        "slack": _positive(block.get("slack", 1e-12), "nonorientable slack"),
        "loop_tol": _positive(block.get("loop_tol", 1e-8), "nonorientable loop_tol"),
        "mesh": block.get("mesh"),
    }
    if not isinstance(out["samples"], int) or out["samples"] < 1:
        raise ConfigError("nonorientable samples must be a positive integer")
    if out["mesh"] is not None:
        out["mesh"] = _as_mapping(out["mesh"], "nonorientable mesh")
    return out


def parse_mesh(block):
    block = _as_mapping(block, "mesh")
    grid = _as_mapping(_require(block, "grid", "mesh"), "mesh grid")
    kind = _require(grid, "kind", "mesh grid")
    if kind == "plane":
        for key in ("x", "y"):
            rng = _require(grid, key, "mesh grid")
            if not (isinstance(rng, list) and len(rng) == 2):
                raise ConfigError(f"mesh grid {key} must be [lo, hi]")
        for key in ("nx", "ny"):
            n = _require(grid, key, "mesh grid")
            if not isinstance(n, int) or n < 2:
                raise ConfigError(f"mesh grid {key} must be an integer >= 2")
    elif kind == "annulus":
        rng = _require(grid, "r", "mesh grid")
        if not (isinstance(rng, list) and len(rng) == 2 and 0 < float(rng[0]) < float(rng[1])):
            raise ConfigError("mesh grid r must be [lo, hi] with 0 < lo < hi")
        for key in ("n_r", "n_theta"):
            n = _require(grid, key, "mesh grid")
            if not isinstance(n, int) or n < 2:
                raise ConfigError(f"mesh grid {key} must be an integer >= 2")
    else:
        raise ConfigError(f"unknown mesh grid kind {kind!r}")
    base = str(block.get("base", "0"))
    try:
        parse_scalar(base)
    except ValueError as e:
        raise ConfigError(f"mesh base: {e}") from None
    return {"grid": grid, "base": base, "filename": block.get("filename", "surface.mesh")}


class RunConfig:
    """Validated run parameters; raw text retained for hashing."""

    __slots__ = (
        "raw_text",
        "raw",
        "seed",
        "tolerance",
        "domain",
        "metric",
        "weierstrass",
        "lagrangian",
        "nonorientable",
        "mesh",
    )

    def __init__(self, raw_text):
        try:
            raw = json.loads(raw_text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"config is not valid JSON: {e}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config root must be an object")
        object.__setattr__(self, "raw_text", raw_text)
        object.__setattr__(self, "raw", raw)
        seed = raw.get("seed", 0)
        if not isinstance(seed, int):
            raise ConfigError("seed must be an integer")
        object.__setattr__(self, "seed", seed)
        tol = raw.get("tolerance", 1e-8)
        object.__setattr__(self, "tolerance", _positive(tol, "tolerance"))
        for name, parser in (
            ("domain", parse_domain),
            ("metric", parse_metric),
            ("weierstrass", parse_weierstrass),
            ("lagrangian", parse_lagrangian),
            ("nonorientable", parse_nonorientable),
            ("mesh", parse_mesh),
        ):
            block = raw.get(name)
            object.__setattr__(self, name, None if block is None else parser(block))

    def __setattr__(self, name, value):
        raise AttributeError("RunConfig is immutable")

    def need(self, name):
        value = getattr(self, name)
        if value is None:
            raise ConfigError(f"config lacks the {name!r} section")
        return value


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config {path!r}: {e}") from None
    return RunConfig(text)
