"""Moebius-strip minimal surfaces from involution-symmetric annulus data.

The fixed-point-free involution I(z) = -1/conj(z) acts on an annulus
A(rho) = {1/rho < |z| < rho}; data invariant in the right way descends to the
quotient Moebius strip. The pipeline checks, on user-supplied finite Laurent
data phi_j (with forms phi_j(z) dz/z):

  * the symmetric coefficient pattern c_{-n} = (-1)^{n+1} conj(c_n), c_0
    purely imaginary, equivalent to conj(phi(-1/conj(z))) = -phi(z);
  * a rational f(z) = sum b_n z^n + (-1)^n conj(b_n) z^{-n} with no zeros on
    the unit circle;
  * vanishing residues of phi_j(z^k) f(z) dz/z for the odd covering degree k;
  * the pulled-back forms psi_j = k f(z) phi_j(z^k) dz/z, their symmetry,
    conformality, loop periods, |f| sandwich bounds, and a half-domain mesh
    with the identification z ~ -1/conj(z) recorded.
"""

from __future__ import annotations

import cmath
import math

from .domains import derive_rng
from .errors import (
    ConditionViolation,
    DomainError,
    KSearchExhausted,
    PeriodObstruction,
    RequiresExactMode,
    StageFailure,
)
from .laurent import LaurentPoly, format_laurent
from .meshing import Mesh
from .poly import Polynomial, roots
from .rational import RationalFunction
from .scalars import GaussianRational, as_scalar, conj, format_scalar, is_exact, to_complex
from .sphere import SpherePoint, antipodal, chordal, dedupe_points, format_point, rp2_count


class InvolutionSpec:
    """I(z) = -1/conj(z); fixed-point-free since |z|^2 = -1 has no solution."""

    __slots__ = ("kind",)

    def __init__(self, kind="annulus"):
        if kind not in ("plane", "annulus"):
            raise DomainError("kind must be 'plane' or 'annulus'")
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("InvolutionSpec is immutable")

    @staticmethod
    def apply(z):
        if is_exact(z):
            v = as_scalar(z)
            if not v:
                raise ZeroDivisionError("involution undefined at 0")
            return -(GaussianRational(1) / v.conjugate())
        zz = to_complex(z)
        return -1.0 / zz.conjugate()


def involution(z):
    return InvolutionSpec.apply(z)


def check_weierstrass_symmetry(w):
    """Exact involution-compatibility of rational Weierstrass data.

    Tests g_i^sigma * g_i = -1 (with g^sigma(z) = conj(g(-1/conj(z)))) and
    omega_hat^sigma(z) = z^2 g1 g2 omega_hat(z). Returns per-condition flags.
    """
    if not w.exact:
        raise RequiresExactMode("symmetry checks are exact identity tests")

    def g_ok(g):
        if g.is_zero():
            return False
        return (g.conj_reflect() * g + 1).is_identically_zero()

    z2 = RationalFunction(Polynomial([0, 0, 1]))
    omega_ok = (
        w.omega_hat.conj_reflect() - z2 * w.g1 * w.g2 * w.omega_hat
    ).is_identically_zero()
    return {
        "g1": g_ok(w.g1),
        "g2": g_ok(w.g2),
        "omega": omega_ok,
    }


def involution_omitted_closure(points, tol=0.0):
    """True iff the set is closed under the antipodal map."""
    pts = dedupe_points(points, tol)
    for p in pts:
        q = antipodal(p)
        if tol == 0.0:
            if not any(q == r for r in pts):
                return False
        elif not any(chordal(q, r) <= tol for r in pts):
            return False
    return True


def validate_symmetric_laurent(phi):
    """coeff(-n) = (-1)^{n+1} conj(coeff(n)) and purely imaginary constant."""
    if not isinstance(phi, LaurentPoly):
        raise DomainError("expected a Laurent polynomial")
    reflected = phi.i0_pullback()
    if phi.exact:
        return reflected == -phi
    diff = reflected + phi
    scale = max((abs(c) for c in phi.coeffs), default=0.0)
    return all(abs(c) <= 1e-12 * max(1.0, scale) for c in diff.coeffs)


class SymmetricLaurentData:
    """Four symmetric Laurent truncations phi_j, the forms being phi_j dz/z."""

    __slots__ = ("phi",)

    def __init__(self, phi, validate=True):
        phi = tuple(phi)
        if len(phi) != 4:
            raise DomainError("need exactly four Laurent components")
        for p in phi:
            if not isinstance(p, LaurentPoly):
                raise DomainError("components must be Laurent polynomials")
        if validate:
            bad = [j for j, p in enumerate(phi) if not validate_symmetric_laurent(p)]
            if bad:
                raise DomainError(
                    f"components {bad} violate the symmetric coefficient pattern"
                )
        object.__setattr__(self, "phi", phi)

    def __setattr__(self, name, value):
        raise AttributeError("SymmetricLaurentData is immutable")

    def a0(self):
        return tuple(p.coeff(0) for p in self.phi)

    def max_index(self):
        return max((max(abs(p.lo), abs(p.hi)) for p in self.phi if not p.is_zero()), default=0)


class FCandidate:
    """f(z) = sum_{n=1}^m (b_n z^n + (-1)^n conj(b_n) z^{-n}), zero-free on
    the unit circle; root moduli of z^m f are kept for the annulus checks."""

    __slots__ = ("b", "m", "f", "root_moduli", "circle_min")

    def __init__(self, b, m, f, root_moduli, circle_min):
        object.__setattr__(self, "b", tuple(b))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "root_moduli", tuple(root_moduli))
        object.__setattr__(self, "circle_min", circle_min)

    def __setattr__(self, name, value):
        raise AttributeError("FCandidate is immutable")


def f_from_coefficients(b):
    terms = {}
    for n, bn in enumerate(b, start=1):
        bn = as_scalar(bn)
        terms[n] = bn
        terms[-n] = -conj(bn) if n % 2 else conj(bn)
    return LaurentPoly.from_dict(terms)


def unit_circle_min(f, samples=4096, refine=60):
    """min |f| on |z| = 1: dense sweep plus ternary refinement."""

    def val(theta):
        return abs(f.eval(cmath.exp(1j * theta)))

    step = 2.0 * math.pi / samples
    best_i = min(range(samples), key=lambda i: val(i * step))
    lo = (best_i - 1) * step
    hi = (best_i + 1) * step
    for _ in range(refine):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if val(m1) <= val(m2):
            hi = m2
        else:
            lo = m1
    return val(0.5 * (lo + hi))


def unit_circle_max(f, samples=4096):
    step = 2.0 * math.pi / samples
    return max(abs(f.eval(cmath.exp(1j * i * step))) for i in range(samples))


ROOT_CIRCLE_TOL = 1e-6


def build_f(b, circle_tol=ROOT_CIRCLE_TOL):
    """Construct the candidate f and verify the zero-free-circle condition.

    Poles sit only at 0 and infinity by shape; the coefficient symmetry holds
    by construction and is re-checked; roots of z^m f must keep their modulus
    away from 1, corroborated by a minimum-modulus sweep of the circle.
    """
    b = [as_scalar(x) for x in b]
    if not b:
        raise DomainError("need at least one coefficient")
    m = len(b)
    if not b[-1]:
        raise DomainError("leading coefficient b_m must be nonzero")
    f = f_from_coefficients(b)
    if not validate_symmetric_f(f):
        raise DomainError("construction lost the f-symmetry (internal)")
    p = f.poly_part()
    moduli = []
    offenders = []
    for root, mult in roots(p):
        moduli.extend([abs(root)] * mult)
        if abs(abs(root) - 1.0) <= circle_tol:
            offenders.append(root)
    cmin = unit_circle_min(f)
    if offenders:
        locs = ", ".join(f"{z:.8g}" for z in offenders)
        raise ConditionViolation(
            f"f has zeros on the unit circle (within {circle_tol}): {locs}; "
            f"circle sweep min |f| = {cmin:.3g}"
        )
    if cmin <= 1e-9:
        raise ConditionViolation(
            f"circle sweep found |f| as small as {cmin:.3g} despite root check"
        )
    return FCandidate(b, m, f, sorted(moduli), cmin)


def validate_symmetric_f(f):
    """f(-1/conj(z)) = conj(f(z)) as a coefficient identity."""
    if f.exact:
        return f.i0_pullback() == f
    diff = f.i0_pullback() - f
    scale = max((abs(c) for c in f.coeffs), default=0.0)
    return all(abs(c) <= 1e-12 * max(1.0, scale) for c in diff.coeffs)


class CoverSpec:
    """Odd covering degree k with k > m of the paired f-candidate."""

    __slots__ = ("k", "m")

    def __init__(self, k, m):
        if not isinstance(k, int) or k < 1:
            raise DomainError("k must be a positive integer")
        if k % 2 == 0:
            raise DomainError("k must be odd")
        if not isinstance(m, int) or m < 1:
            raise DomainError("m must be a positive integer")
        if k <= m:
            raise DomainError(f"need k > m, got k = {k}, m = {m}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("CoverSpec is immutable")


def residue_condition(phi, f, k):
    """Residue at 0 of phi(z^k) f(z) dz/z: the constant Laurent coefficient
    of the product. Returns (vanishes, value). k may be any positive integer
    here so the k = 1 failure mode stays observable; k odd and k > m makes
    the condition automatic."""
    if isinstance(k, CoverSpec):
        k = k.k
    if not isinstance(k, int) or k < 1:
        raise DomainError("k must be a positive integer")
    fc = f.f if isinstance(f, FCandidate) else f
    value = (phi.compose_power(k) * fc).coeff(0)
    if isinstance(value, GaussianRational):
        ok = not value
    else:
        ok = abs(value) <= 1e-12
    return ok, value


def pullback_psi(data, f, cover):
    """psi_j = k f(z) phi_j(z^k) dz/z; returns the coefficient functions
    H_j = k f phi_j(z^k) and verifies they keep the symmetric pattern."""
    if not isinstance(cover, CoverSpec):
        raise DomainError("pullback needs a CoverSpec")
    k = cover.k
    psis = []
    for j, phi in enumerate(data.phi):
        ok, value = residue_condition(phi, f, k)
        if not ok:
            raise PeriodObstruction(
                f"residue condition fails for component {j}: {format_scalar(value)}"
            )
        h = (phi.compose_power(k) * f.f) * k
        psis.append(h)
    symmetric = all(validate_symmetric_laurent(h) for h in psis)
    return tuple(psis), symmetric


class FBounds:
    __slots__ = ("c", "min_mod", "max_mod", "k")

    def __init__(self, c, min_mod, max_mod, k):
        if min_mod <= 0:
            raise DomainError("min modulus must be positive")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "min_mod", min_mod)
        object.__setattr__(self, "max_mod", max_mod)
        object.__setattr__(self, "k", k)

    def __setattr__(self, name, value):
        raise AttributeError("FBounds is immutable")

    def to_dict(self):
        return {"c": self.c, "min_mod": self.min_mod, "max_mod": self.max_mod, "k": self.k}


K_SEARCH_CAP = 99


def _circle_extrema(f, r, samples=2048):
    lo = math.inf
    hi = 0.0
    for i in range(samples):
        v = abs(f.eval(r * cmath.exp(2j * math.pi * i / samples)))
        lo = min(lo, v)
        hi = max(hi, v)
    return lo, hi


def f_bounds(f, R, k, cap=K_SEARCH_CAP):
    """Bounds 1/c < |f| < c on the closed annulus [R^{-1/k}, R^{1/k}].

    The roots of z^m f must avoid the closed annulus; if they intrude, the
    smallest admissible odd k' > k is used instead (the band shrinks as k
    grows) and reported in the result. |f| is bounded by dense sampling of
    the two boundary circles: the maximum principle for f and, since f is
    zero-free on the closed annulus, for 1/f, push both extrema to the
    boundary. A 1% safety margin pads c.
    """
    if not isinstance(f, FCandidate):
        raise DomainError("f_bounds needs a built FCandidate")
    if not R > 1.0:
        raise DomainError("need R > 1")
    if not isinstance(k, int) or k < 1:
        raise DomainError("k must be a positive integer")
    logR = math.log(R)
    k_used = None
    kk = k
    while kk <= cap:
        hi = math.exp(logR / kk)
        lo = 1.0 / hi
        if all(mod < lo - 1e-12 or mod > hi + 1e-12 for mod in f.root_moduli):
            k_used = kk
            break
        kk += 2
    if k_used is None:
        raise KSearchExhausted(
            f"no odd k in [{k}, {cap}] keeps the annulus free of zeros of f"
        )
    hi_r = math.exp(logR / k_used)
    lo_r = 1.0 / hi_r
    mins = []
    maxs = []
    for r in (lo_r, hi_r):
        mn, mx = _circle_extrema(f.f, r)
        mins.append(mn)
        maxs.append(mx)
    min_mod = min(mins)
    max_mod = max(maxs)
    c = max(max_mod, 1.0 / min_mod) * 1.01
    return FBounds(c, min_mod, max_mod, k_used)


# -- assembly ---------------------------------------------------------------------


class StageResult:
    __slots__ = ("name", "status", "details")

    def __init__(self, name, status, details=None):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "status", status)
        object.__setattr__(self, "details", dict(details or {}))

    def __setattr__(self, name, value):
        raise AttributeError("StageResult is immutable")

    def to_dict(self):
        return {"stage": self.name, "status": self.status, "details": self.details}


class MoebiusReport:
    __slots__ = ("stages", "passed", "failed_stage", "k_declared", "k_used", "mesh")

    def __init__(self, stages, passed, failed_stage, k_declared, k_used, mesh=None):
        object.__setattr__(self, "stages", tuple(stages))
        object.__setattr__(self, "passed", passed)
        object.__setattr__(self, "failed_stage", failed_stage)
        object.__setattr__(self, "k_declared", k_declared)
        object.__setattr__(self, "k_used", k_used)
        object.__setattr__(self, "mesh", mesh)

    def __setattr__(self, name, value):
        raise AttributeError("MoebiusReport is immutable")

    def to_dict(self):
        return {
            "stages": [s.to_dict() for s in self.stages],
            "passed": self.passed,
            "failed_stage": self.failed_stage,
            "k_declared": self.k_declared,
            "k_used": self.k_used,
            "mesh": None if self.mesh is None else self.mesh.metadata,
        }


def _sandwich_samples(rho, n, seed):
    rng = derive_rng(seed, n, "sandwich")
    out = []
    lo, hi = math.log(1.0 / rho), math.log(rho)
    for _ in range(n):
        r = math.exp(rng.uniform(lo, hi))
        out.append(r * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))
    return out


def sandwich_check(data, psis, bounds, rho, samples=1000, seed=0, slack=1e-12):
    """(1/c^2) T_k^*(ds^2) <= ds_0^2 <= c^2 T_k^*(ds^2) at random points of
    the open annulus A(rho); densities against |dz|^2:

        lambda_0^2     = sum_j |H_j(z)/z|^2          (the psi metric)
        lambda_pull^2  = sum_j |k phi_j(z^k)/z|^2    (the pulled-back metric)

    Pointwise lambda_0^2 = |f|^2 lambda_pull^2, so the bounds on |f| give the
    sandwich; this re-checks it numerically. Returns (ok, worst_margin).
    """
    k = bounds.k
    c2 = bounds.c * bounds.c
    worst = 0.0
    ok = True
    for z in _sandwich_samples(rho, samples, seed):
        pull = sum(abs(k * phi.eval(z**k) / z) ** 2 for phi in data.phi)
        lam0 = sum(abs(h.eval(z) / z) ** 2 for h in psis)
        if pull == 0.0:
            ok = ok and lam0 == 0.0
            continue
        lo_margin = lam0 - pull / c2 * (1.0 - slack)
        hi_margin = c2 * pull * (1.0 + slack) - lam0
        worst = max(worst, -min(lo_margin, hi_margin) / pull)
        if lo_margin < 0.0 or hi_margin < 0.0:
            ok = False
    return ok, worst


def loop_periods_psi(psis, samples=4096):
    """|∮_{|z|=1} psi_j| via the trapezoid rule on H_j(z) dz/z."""
    out = []
    for h in psis:
        acc = 0j
        for i in range(samples):
            z = cmath.exp(2j * math.pi * i / samples)
            acc += h.eval(z)
        out.append(abs(acc * 2j * math.pi / samples))
    return out


def half_domain_mesh(psis, rho, n_r=8, n_theta=64, metadata=None):
    """Mesh of the fundamental half-annulus {1 <= |z| <= sqrt(rho)} for the
    identification z ~ -1/conj(z), which acts on the unit circle as the
    antipode e^{i t} -> -e^{i t}.

    X(z) = Re int_1^z sum psi; integration runs along the unit circle and
    then radially, with cumulative trapezoid/Gauss steps. n_theta must be
    even so identified circle vertices pair up exactly; pairs are recorded
    in the metadata as vertex index pairs.
    """
    if n_theta % 2:
        raise DomainError("n_theta must be even for the identification pairs")
    r_hi = math.sqrt(rho)

    def form(z):
        return tuple(h.eval(z) / z for h in psis)

    # angular prefix integrals on the unit circle at theta_i = 2 pi i / n
    steps = 4
    prefix = [(0j, 0j, 0j, 0j)]
    for i in range(n_theta):
        t0 = 2.0 * math.pi * i / n_theta
        acc = list(prefix[-1])
        for s in range(steps):
            a = t0 + (2.0 * math.pi / n_theta) * s / steps
            b = t0 + (2.0 * math.pi / n_theta) * (s + 1) / steps
            za, zb = cmath.exp(1j * a), cmath.exp(1j * b)
            fa, fb = form(za), form(zb)
            for j in range(4):
                acc[j] += 0.5 * (fa[j] + fb[j]) * (zb - za)
        prefix.append(tuple(acc))

    def radial(theta_idx, r):
        base = prefix[theta_idx]
        th = 2.0 * math.pi * theta_idx / n_theta
        direction = cmath.exp(1j * th)
        n_steps = 24
        acc = list(base)
        for s in range(n_steps):
            ra = 1.0 + (r - 1.0) * s / n_steps
            rb = 1.0 + (r - 1.0) * (s + 1) / n_steps
            za, zb = ra * direction, rb * direction
            fa, fb = form(za), form(zb)
            for j in range(4):
                acc[j] += 0.5 * (fa[j] + fb[j]) * (zb - za)
        return tuple(v.real for v in acc)

    vertices = []
    for jr in range(n_r):
        r = 1.0 + (r_hi - 1.0) * jr / (n_r - 1)
        for it in range(n_theta):
            vertices.append(radial(it, r))
    faces = []
    for jr in range(n_r - 1):
        for it in range(n_theta):
            i2 = (it + 1) % n_theta
            a = jr * n_theta + it
            b = jr * n_theta + i2
            c = (jr + 1) * n_theta + it
            d = (jr + 1) * n_theta + i2
            faces.append((a, b, d))
            faces.append((a, d, c))
    pairs = [(i, (i + n_theta // 2) % n_theta) for i in range(n_theta // 2)]
    meta = dict(metadata or {})
    meta["identification"] = "z ~ -1/conj(z) on |z| = 1"
    meta["identified-pairs"] = ";".join(f"{a}<->{b}" for a, b in pairs)
    return Mesh(vertices, faces, meta)


def assemble_report(
    data,
    f,
    k,
    R,
    *,
    check_conformality=True,
    declared_omitted=None,
    samples=1000,
    seed=0,
    slack=1e-12,
    loop_tol=1e-8,
    mesh_params=None,
    raise_on_failure=False,
):
    """Run the full Moebius-strip pipeline; stops at the first failing stage.

    data: SymmetricLaurentData; f: FCandidate or coefficient list; k: odd
    covering degree (k > max Laurent index of data); R > 1 the base annulus.
    declared_omitted: optional pair of sphere-point lists, the omitted sets
    of the two Gauss map components on the base data, counted in RP^2.
    """
    stages = []
    failed = None
    k_used = None
    mesh = None
    psis = None
    bounds = None

    def fail(name, details):
        nonlocal failed
        failed = name
        stages.append(StageResult(name, "failed", details))
        if raise_on_failure:
            raise StageFailure(name, str(details))

    def ok(name, details=None):
        stages.append(StageResult(name, "passed", details))

    # stage: f construction (accepts prebuilt candidates)
    if failed is None:
        if isinstance(f, FCandidate):
            ok("f-condition-c", {"m": f.m, "circle_min": f.circle_min})
        else:
            try:
                f = build_f(f)
                ok("f-condition-c", {"m": f.m, "circle_min": f.circle_min})
            except (ConditionViolation, DomainError) as e:
                fail("f-condition-c", {"error": str(e)})

    # stage: covering degree
    if failed is None:
        try:
            cover = CoverSpec(k, f.m)
            if not R > 1.0:
                raise DomainError("need R > 1")
            ok("cover", {"k": k, "m": f.m, "R": R})
        except DomainError as e:
            fail("cover", {"error": str(e)})

    # stage: Laurent symmetry of the four components
    if failed is None:
        bad = [j for j, p in enumerate(data.phi) if not validate_symmetric_laurent(p)]
        if bad:
            fail("laurent-symmetry", {"violating_components": bad})
        else:
            ok("laurent-symmetry", {"a0": [format_scalar(a) for a in data.a0()]})

    # stage: residue conditions and psi assembly
    if failed is None:
        try:
            psis, symmetric = pullback_psi(data, f, cover)
            if not symmetric:
                fail("psi-assembly", {"error": "pullback lost the symmetric pattern"})
            else:
                ok("residue-conditions", {"k": cover.k})
                ok(
                    "psi-assembly",
                    {"components": [format_laurent(h) for h in psis]},
                )
        except PeriodObstruction as e:
            fail("residue-conditions", {"error": str(e)})

    # stage: conformality of the truncations
    if failed is None:
        if not check_conformality:
            stages.append(StageResult("conformality", "skipped", {"flag": "no-conformality"}))
        else:
            total = LaurentPoly()
            for p in data.phi:
                total = total + p * p
            if total.is_zero() if total.exact else all(abs(c) <= 1e-12 for c in total.coeffs):
                ok("conformality", {"identity": "sum phi_j^2 == 0"})
            else:
                fail("conformality", {"residual_terms": format_laurent(total)})

    # stage: |f| bounds on the covering annulus
    if failed is None:
        try:
            bounds = f_bounds(f, R, cover.k)
            k_used = bounds.k
            detail = bounds.to_dict()
            if k_used != cover.k:
                detail["escalated_from"] = cover.k
            ok("f-bounds", detail)
        except (KSearchExhausted, DomainError) as e:
            fail("f-bounds", {"error": str(e)})

    # stages after escalation use the admissible covering degree
    if failed is None and k_used != cover.k:
        try:
            cover = CoverSpec(k_used, f.m)
            psis, symmetric = pullback_psi(data, f, cover)
            if not symmetric:
                fail("psi-assembly", {"error": "escalated pullback lost symmetry"})
        except (PeriodObstruction, DomainError) as e:
            fail("f-bounds", {"error": f"escalated k unusable: {e}"})

    # stage: sandwich inequality
    if failed is None:
        rho = math.exp(math.log(R) / cover.k)
        sandwich_ok, worst = sandwich_check(
            data, psis, bounds, rho, samples=samples, seed=seed, slack=slack
        )
        if sandwich_ok:
            ok("sandwich", {"samples": samples, "worst_margin": worst})
        else:
            fail("sandwich", {"worst_margin": worst})

    # stage: loop periods of psi on |z| = 1
    if failed is None:
        periods = loop_periods_psi(psis)
        if max(periods) < loop_tol:
            ok("loop-periods", {"max_abs": max(periods)})
        else:
            fail("loop-periods", {"periods": periods})

    # stage: RP^2 counts of declared omitted sets
    if failed is None:
        if declared_omitted is None:
            stages.append(StageResult("rp2-count", "skipped", {"reason": "no declared omitted sets"}))
        else:
            detail = {}
            closure_ok = True
            for idx, pts in enumerate(declared_omitted, start=1):
                pts = [SpherePoint.of(p) for p in pts]
                closed = involution_omitted_closure(pts)
                count = rp2_count(pts) if closed else None
                closure_ok = closure_ok and closed
                detail[f"g{idx}"] = {
                    "points": [format_point(p) for p in pts],
                    "antipodally_closed": closed,
                    "rp2_count": count,
                }
            if closure_ok:
                ok("rp2-count", detail)
            else:
                fail("rp2-count", detail)

    # stage: half-domain mesh
    if failed is None and mesh_params is not None:
        rho = math.exp(math.log(R) / cover.k)
        try:
            mesh = half_domain_mesh(
                psis,
                rho,
                n_r=int(mesh_params.get("n_r", 8)),
                n_theta=int(mesh_params.get("n_theta", 64)),
                metadata=mesh_params.get("metadata"),
            )
            ok(
                "mesh",
                {
                    "vertices": len(mesh.vertices),
                    "faces": len(mesh.faces),
                },
            )
        except DomainError as e:
            fail("mesh", {"error": str(e)})

    return MoebiusReport(
        stages,
        failed is None,
        failed,
        k_declared=k,
        k_used=k_used,
        mesh=mesh,
    )
