"""Certified representations n = x^2 + a y^2 + b z^2 + c w^2.

Eight of the nine universal diagonal quaternary forms handled here descend
to a norm computation in one of the bundled quaternion orders:

    find a lattice element of norm p for each prime p | n, move it into the
    diagonal target module with a unit-associate search, read off the four
    coordinates, and combine primes either by composing certificates with
    the exact product law of the form, or (for the two forms without such a
    law) by multiplying inside the order and converting once at the end.

Every step is exact and every output is a checkable certificate; `represent`
never returns an unverified tuple.  The ninth form, x^2+2y^2+5z^2+10w^2,
admits no such pipeline because the lattice it would need has no
pure-imaginary unit (see `quatforms.nonexist` for the explicit obstruction),
so asking for it raises UnsupportedFormError.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional, Sequence

from .algebra import Quat
from .associates import (
    RIGHT,
    TWO_SIDED,
    TWO_SIDED_DOUBLE,
    AssociateWitness,
    find_associate,
)
from .euclid import right_gcd
from .order import DiagonalModule, Order, Vec4, get_order
from .units import norm_box_bounds


class UnsupportedFormError(ValueError):
    """The form has no order-based certificate pipeline."""


class UnsupportedCompositionError(ValueError):
    """The form admits no exact product law, so certificates cannot compose."""


class PrimeElementError(ArithmeticError):
    """The gcd descent failed to produce an element of norm exactly p."""


# -- the nine universal forms ----------------------------------------------

_NINE: tuple[tuple[int, int, int], ...] = (
    (1, 1, 1), (1, 2, 2), (2, 3, 6), (1, 3, 3), (1, 1, 4),
    (1, 2, 8), (2, 2, 4), (2, 4, 8), (2, 5, 10),
)


@dataclass(frozen=True)
class Form:
    """A diagonal quaternary form x^2 + a y^2 + b z^2 + c w^2 from the list of nine."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if (self.a, self.b, self.c) not in _NINE:
            raise ValueError(
                f"(1,{self.a},{self.b},{self.c}) is not one of the nine universal forms"
            )

    @property
    def coeffs(self) -> Vec4:
        return (1, self.a, self.b, self.c)

    def value(self, rep: Sequence[int]) -> int:
        x, y, z, w = (int(v) for v in rep)
        return x * x + self.a * y * y + self.b * z * z + self.c * w * w

    def __str__(self) -> str:
        names = ("x", "y", "z", "w")
        parts = []
        for coef, v in zip(self.coeffs, names):
            parts.append(f"{v}^2" if coef == 1 else f"{coef}{v}^2")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Form":
        """Accepts '1,a,b,c' (optionally parenthesised or spaced)."""
        raw = text.strip().strip("()[]").replace(" ", "")
        parts = raw.split(",")
        if len(parts) != 4 or parts[0] != "1":
            raise ValueError(f"expected a form '1,a,b,c', got {text!r}")
        try:
            a, b, c = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError as err:
            raise ValueError(f"non-integer coefficient in {text!r}") from err
        return cls(a, b, c)


def all_forms() -> tuple[Form, ...]:
    return tuple(Form(*t) for t in _NINE)


def is_norm_quaternionic(form: Form) -> Optional[tuple[int, int, int]]:
    """Integer triple (k_a, k_b, k_c) making the surd products close, or None.

    Closure needs sqrt(bc) = k_a sqrt(a), sqrt(ac) = k_b sqrt(b) and
    sqrt(ab) = k_c sqrt(c) with integer k's, i.e. bc/a, ac/b, ab/c must be
    perfect squares.
    """
    a, b, c = form.a, form.b, form.c
    out = []
    for num, den in ((b * c, a), (a * c, b), (a * b, c)):
        if num % den:
            return None
        k = isqrt(num // den)
        if k * k * den != num:
            return None
        out.append(k)
    return (out[0], out[1], out[2])


# -- certificates -----------------------------------------------------------

@dataclass(frozen=True)
class RepCert:
    """A representation with enough context to re-verify it from scratch."""

    form: Form
    n: int
    rep: Vec4
    audit: dict = field(default_factory=dict, compare=False)

    def verify(self) -> bool:
        return (
            all(isinstance(v, int) and v >= 0 for v in self.rep)
            and self.form.value(self.rep) == self.n
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "form": list(self.form.coeffs),
            "rep": list(self.rep),
            "audit": self.audit,
        }


def _nonneg(rep: Sequence[int]) -> Vec4:
    # the form is even in each variable, so signs are a free choice
    return tuple(abs(int(v)) for v in rep)


def compose(r1: RepCert, r2: RepCert) -> RepCert:
    """Exact product law: a certificate for r1.n * r2.n.

    Only available when the form is norm-quaternionic; the two forms without
    integer surd-product constants raise UnsupportedCompositionError.
    """
    if r1.form != r2.form:
        raise ValueError("certificates belong to different forms")
    form = r1.form
    ks = is_norm_quaternionic(form)
    if ks is None:
        raise UnsupportedCompositionError(
            f"{form} admits no exact product law; multiply inside the order instead"
        )
    ka, kb, kc = ks
    a, b, c = form.a, form.b, form.c
    x1, y1, z1, w1 = r1.rep
    x2, y2, z2, w2 = r2.rep
    x = x1 * x2 - a * y1 * y2 - b * z1 * z2 - c * w1 * w2
    y = x1 * y2 + x2 * y1 - ka * (w1 * z2 - w2 * z1)
    z = x1 * z2 + x2 * z1 + kb * (w1 * y2 - w2 * y1)
    w = x1 * w2 + x2 * w1 + kc * (y1 * z2 - y2 * z1)
    out = RepCert(form, r1.n * r2.n, _nonneg((x, y, z, w)),
                  audit={"op": "compose", "left": list(r1.rep), "right": list(r2.rep)})
    if not out.verify():
        raise AssertionError(f"product law violated for {form}: {r1.rep} x {r2.rep}")
    return out


def euler_halve(cert: RepCert) -> RepCert:
    """From a representation of an even 2n by x^2+y^2+3z^2+3w^2, one of n.

    Parity split: if the coefficient-1 pair has equal parity, so does the
    coefficient-3 pair, and both pairs average directly.  Otherwise a
    rotation (y, z) -> ((y +- 3z)/2, (y -+ z)/2), branch chosen by y mod 4
    against z mod 4, makes everything even first.  The rotation preserves
    y^2 + 3z^2, so the halved output is exact.
    """
    if cert.form != Form(1, 3, 3):
        raise ValueError("halving is specific to x^2+y^2+3z^2+3w^2")
    if not cert.verify():
        raise ValueError("refusing to halve an invalid certificate")
    if cert.n % 2:
        raise ValueError(f"{cert.n} is odd; nothing to halve")
    x, y, z, w = cert.rep
    branch = "direct"
    if (x - y) % 2:
        # mixed parity forces the 3-part to be mixed as well
        if (z - w) % 2 == 0:
            raise AssertionError("parity invariant broken")
        if x % 2:
            x, y = y, x
        if w % 2:
            z, w = w, z
        # now x, w even and y, z odd
        if (y - z) % 4 == 0:
            y, z = (y + 3 * z) // 2, (y - z) // 2
            branch = "rotate+"
        else:
            y, z = (y - 3 * z) // 2, (y + z) // 2
            branch = "rotate-"
    elif (z - w) % 2:
        raise AssertionError("parity invariant broken")
    half = ((x + y) // 2, (x - y) // 2, (z + w) // 2, (z - w) // 2)
    out = RepCert(cert.form, cert.n // 2, _nonneg(half),
                  audit={"op": "halve", "branch": branch, "from": list(cert.rep)})
    if not out.verify():
        raise AssertionError(f"halving failed: {cert.rep} for {cert.n}")
    return out


# -- congruence seeds and prime elements ------------------------------------

def solve_congruence(c1: int, c2: int, c3: int, p: int) -> tuple[int, int]:
    """Smallest (a, b), 0 <= a, b <= (p-1)/2, with c1 a^2 + c2 b^2 + c3 = 0 mod p."""
    if p < 2:
        raise ValueError("modulus must be a prime >= 2")
    half = (p - 1) // 2
    first_b: dict[int, int] = {}
    for b in range(half + 1):
        v = (c2 * b * b) % p
        if v not in first_b:
            first_b[v] = b
    for a in range(half + 1):
        want = (-c3 - c1 * a * a) % p
        if want in first_b:
            return a, first_b[want]
    raise ValueError(f"{c1} a^2 + {c2} b^2 + {c3} = 0 has no solution mod {p}")


def _seed_h111(order: Order, a: int, b: int) -> Quat:
    return Quat(order.params, 1, a, b, 0)


def _seed_h122(order: Order, a: int, b: int) -> Quat:
    return Quat(order.params, 1, 0, -a, b)


def _seed_h236(order: Order, a: int, b: int) -> Quat:
    return Quat(order.params, a, -b, 1, 0)


def _seed_h133(order: Order, a: int, b: int) -> Quat:
    # membership needs the i-coordinate and k-coordinate to match parity-wise:
    # even b rides on doubled i plus the pure-j generator, odd b on i + k
    if b % 2 == 0:
        return Quat(order.params, a, b, 1, 0)
    return Quat(order.params, a, b, 0, 1)


_DESCENT: dict[str, tuple[tuple[int, int, int], object]] = {
    "H111": ((1, 1, 1), _seed_h111),
    "H122": ((2, 2, 1), _seed_h122),
    "H236": ((1, 2, 3), _seed_h236),
    "H133": ((1, 1, 3), _seed_h133),
}


def congruence_for(order: Order) -> tuple[int, int, int]:
    if order.name not in _DESCENT:
        raise KeyError(f"no congruence recipe for order {order.name}")
    return _DESCENT[order.name][0]


def _direct_norm_search(order: Order, p: int) -> Optional[Vec4]:
    """Lexicographically first lattice vector of norm exactly p, box-bounded."""
    bounds = norm_box_bounds(order, p)
    from itertools import product as iproduct
    for a in iproduct(*(range(-bd, bd + 1) for bd in bounds)):
        if order.norm_vec(a) == p:
            return a
    return None


def prime_norm_element(order: Order, p: int) -> tuple[Vec4, dict]:
    """Order element of norm p with an audit of how it was found.

    Small primes (p <= 3) come from a direct box search.  Larger primes use
    the congruence seed: norm(seed) = p*r with 0 < r < p (asserted), and the
    right gcd of (seed, p) has norm exactly p.  Results are cached per order.
    """
    cache: dict[int, tuple[Vec4, dict]] = getattr(order, "_prime_cache", None) or {}
    if not hasattr(order, "_prime_cache"):
        order._prime_cache = cache
    if p in cache:
        return cache[p]

    if p <= 3:
        coords = _direct_norm_search(order, p)
        if coords is None:
            raise PrimeElementError(f"no element of norm {p} in {order.name}")
        result = (coords, {"p": p, "method": "direct"})
        cache[p] = result
        return result

    (c1, c2, c3), seed_fn = _DESCENT[order.name]
    a, b = solve_congruence(c1, c2, c3, p)
    seed = seed_fn(order, a, b)
    seed_coords = order.coords_in(seed)
    if seed_coords is None:
        raise AssertionError(f"congruence seed {seed} escaped {order.name}")
    nrm = seed.norm()
    if nrm.denominator != 1 or int(nrm) % p:
        raise AssertionError(f"seed norm {nrm} is not a multiple of {p}")
    r = int(nrm) // p
    if not (0 < r < p):
        raise AssertionError(f"seed norm {nrm} = {p}*{r} violates 0 < r < p")
    audit = {"p": p, "method": "congruence", "a": a, "b": b,
             "seed": list(seed_coords), "r": r}
    if r == 1:
        d_coords = seed_coords
    else:
        wit = right_gcd(order, seed, Quat.scalar(order.params, p))
        d = wit.d
        if d.norm() != p:
            raise PrimeElementError(
                f"gcd descent for p={p} in {order.name} gave norm {d.norm()}"
            )
        d_coords = order.coords_in(d)
        assert d_coords is not None
        audit["gcd_norm"] = p
    result = (d_coords, audit)
    cache[p] = result
    return result


# -- form plans --------------------------------------------------------------

@dataclass(frozen=True)
class FormPlan:
    """Everything `represent` needs for one form, resolved once."""

    form: Form
    order_name: str
    target_scale: Vec4
    mode: str                       # associate search mode
    modulus: int                    # residue modulus of the covering lemma
    var_perm: Vec4                  # form variable t reads module coordinate var_perm[t]
    nq_triple: Optional[tuple[int, int, int]]
    strategy: str                   # per_prime | whole_n
    post: str                       # none | halve_twice

    @property
    def order(self) -> Order:
        return get_order(self.order_name)

    @property
    def target(self) -> DiagonalModule:
        return DiagonalModule(self.order.params, self.target_scale)


_PLAN_DATA: dict[tuple[int, int, int], tuple] = {
    # (a, b, c): order, scale, mode, modulus, perm, strategy, post
    (1, 1, 1): ("H111", (1, 1, 1, 1), RIGHT, 2, (0, 1, 2, 3), "per_prime", "none"),
    (1, 1, 4): ("H111", (1, 1, 1, 2), RIGHT, 4, (0, 1, 2, 3), "whole_n", "none"),
    (1, 2, 2): ("H122", (1, 1, 1, 1), RIGHT, 2, (0, 1, 2, 3), "per_prime", "none"),
    (1, 2, 8): ("H122", (1, 1, 1, 2), TWO_SIDED, 4, (0, 1, 2, 3), "whole_n", "none"),
    (2, 2, 4): ("H122", (1, 2, 1, 1), TWO_SIDED, 4, (0, 2, 3, 1), "per_prime", "none"),
    (2, 4, 8): ("H122", (1, 2, 1, 2), TWO_SIDED, 4, (0, 2, 1, 3), "per_prime", "none"),
    (2, 3, 6): ("H236", (1, 1, 1, 1), TWO_SIDED, 6, (0, 1, 2, 3), "per_prime", "none"),
    (1, 3, 3): ("H133", (1, 1, 1, 1), TWO_SIDED_DOUBLE, 2, (0, 1, 2, 3), "per_prime",
                "halve_twice"),
}

_PLAN_CACHE: dict[tuple[int, int, int], FormPlan] = {}


def plan_for(form: Form) -> FormPlan:
    """Resolve and sanity-check the pipeline for a supported form."""
    key = (form.a, form.b, form.c)
    if key == (2, 5, 10):
        raise UnsupportedFormError(
            "x^2 + 2y^2 + 5z^2 + 10w^2 has no order-based certificate: the "
            "lattice it would require contains no pure-imaginary unit "
            "(quatforms.nonexist.search_imaginary_unit exhibits the obstruction)"
        )
    if key not in _PLAN_DATA:
        raise UnsupportedFormError(f"no pipeline on record for {form}")
    plan = _PLAN_CACHE.get(key)
    if plan is None:
        order_name, scale, mode, modulus, perm, strategy, post = _PLAN_DATA[key]
        plan = FormPlan(form, order_name, scale, mode, modulus, perm,
                        is_norm_quaternionic(form), strategy, post)
        # the permuted target form must be exactly (1, a, b, c)
        coeffs = plan.target.form_coeffs
        got = tuple(coeffs[p] for p in perm)
        if got != form.coeffs:
            raise AssertionError(f"plan mismatch for {form}: target gives {got}")
        if strategy == "per_prime" and plan.nq_triple is None and post == "none":
            raise AssertionError(f"{form}: per-prime composition needs a product law")
        _PLAN_CACHE[key] = plan
    return plan


def supported_forms() -> tuple[Form, ...]:
    return tuple(Form(*k) for k in _PLAN_DATA)


# -- the main pipeline -------------------------------------------------------

def _factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorisation as (prime, multiplicity), ascending."""
    out: list[tuple[int, int]] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _module_coords_to_rep(plan: FormPlan, coords: Vec4) -> Vec4:
    return _nonneg(tuple(coords[p] for p in plan.var_perm))


def _prime_cert(plan: FormPlan, p: int, keep_audit: bool) -> RepCert:
    """Certificate for a single prime via the order pipeline."""
    cache: dict[int, RepCert] = getattr(plan, "_cert_cache", None) or {}
    if not hasattr(plan, "_cert_cache"):
        object.__setattr__(plan, "_cert_cache", cache)
    hit = cache.get(p)
    if hit is not None:
        return hit

    order = plan.order
    target = plan.target
    d_coords, d_audit = prime_norm_element(order, p)
    d = order.element(d_coords)
    wit = find_associate(order, target, d, plan.mode)
    if wit is None:
        raise AssertionError(
            f"no associate for norm-{p} element in {order.name} -> {target}; "
            f"this refutes the covering certificate"
        )
    value = p * wit.scale * wit.scale
    rep = _module_coords_to_rep(plan, wit.image_coords)
    audit: dict = {}
    if keep_audit:
        audit = {"prime": d_audit, "element": list(d_coords),
                 "associate": wit.to_json()}
    cert = RepCert(plan.form, value, rep, audit)
    if not cert.verify():
        raise AssertionError(f"prime certificate failed for {p} under {plan.form}")
    if plan.post == "halve_twice":
        cert = euler_halve(euler_halve(cert))
        if keep_audit:
            cert = RepCert(plan.form, cert.n, cert.rep,
                           {**audit, "post": "halved twice from 4p"})
    if cert.n != p:
        raise AssertionError(f"pipeline produced {cert.n}, wanted {p}")
    cache[p] = cert
    return cert


def _represent_per_prime(plan: FormPlan, n: int, factors: list[tuple[int, int]],
                         keep_audit: bool) -> RepCert:
    acc = RepCert(plan.form, 1, (1, 0, 0, 0), {"op": "unit"})
    for p, e in factors:
        pc = _prime_cert(plan, p, keep_audit)
        for _ in range(e):
            acc = compose(acc, pc)
    return acc


def _represent_whole(plan: FormPlan, n: int, factors: list[tuple[int, int]],
                     keep_audit: bool) -> RepCert:
    """Multiply prime elements inside the order, associate once at the end."""
    order = plan.order
    target = plan.target
    one = order.coords_in(Quat.one(order.params))
    assert one is not None
    acc: Vec4 = one
    prime_audits = []
    for p, e in factors:
        d_coords, d_audit = prime_norm_element(order, p)
        if keep_audit:
            prime_audits.append(d_audit)
        for _ in range(e):
            acc = order.mul_vec(acc, d_coords)
    q = order.element(acc)
    if q.norm() != n:
        raise AssertionError(f"norm bookkeeping failed: {q.norm()} != {n}")
    wit = find_associate(order, target, q, plan.mode)
    if wit is None:
        raise AssertionError(
            f"no associate for norm-{n} element in {order.name} -> {target}"
        )
    rep = _module_coords_to_rep(plan, wit.image_coords)
    audit: dict = {}
    if keep_audit:
        audit = {"primes": prime_audits, "product_element": list(acc),
                 "associate": wit.to_json()}
    return RepCert(plan.form, n, rep, audit)


def represent(form: Form, n: int, keep_audit: bool = True) -> RepCert:
    """A verified certificate that the form represents n (n >= 1).

    Deterministic: the same n always yields the same certificate.  The audit
    records the factorisation, the per-prime congruence seeds and gcd data,
    and the unit choices of each associate search.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    plan = plan_for(form)
    factors = _factorize(n)
    if n == 1:
        cert = RepCert(form, 1, (1, 0, 0, 0), {"op": "unit"})
    elif plan.strategy == "per_prime":
        cert = _represent_per_prime(plan, n, factors, keep_audit)
    else:
        cert = _represent_whole(plan, n, factors, keep_audit)
    if keep_audit:
        full_audit = {"n": n, "factorization": [[p, e] for p, e in factors],
                      **cert.audit}
        cert = RepCert(form, cert.n, cert.rep, full_audit)
    if cert.n != n or not cert.verify():
        raise AssertionError(f"represent({form}, {n}) produced an invalid certificate")
    return cert


# -- scanning and the brute-force oracle -------------------------------------

@dataclass(frozen=True)
class ScanReport:
    form: Form
    n_max: int
    verified: int
    failures: tuple[int, ...]
    elapsed: float
    certs: Optional[tuple[RepCert, ...]] = None

    @property
    def ok(self) -> bool:
        return not self.failures and self.verified == self.n_max

    def render(self) -> str:
        status = "ok" if self.ok else f"FAILURES at {list(self.failures)[:10]}"
        return (f"{self.form}: n = 1..{self.n_max}, verified {self.verified}, "
                f"{self.elapsed:.2f}s, {status}")

    def to_json(self) -> dict:
        return {
            "form": list(self.form.coeffs),
            "n_max": self.n_max,
            "verified": self.verified,
            "failures": list(self.failures),
            "elapsed_s": round(self.elapsed, 3),
            "ok": self.ok,
        }


def universality_scan(form: Form, n_max: int, keep_certs: bool = False) -> ScanReport:
    """Certify every n in [1, n_max]; per-prime work is cached across n."""
    t0 = time.perf_counter()
    failures: list[int] = []
    certs: list[RepCert] = []
    verified = 0
    for n in range(1, n_max + 1):
        try:
            cert = represent(form, n, keep_audit=False)
        except Exception:
            failures.append(n)
            continue
        if cert.verify() and cert.n == n:
            verified += 1
            if keep_certs:
                certs.append(cert)
        else:
            failures.append(n)
    elapsed = time.perf_counter() - t0
    return ScanReport(form, n_max, verified, tuple(failures), elapsed,
                      tuple(certs) if keep_certs else None)


class BruteTable:
    """Independent representability oracle: direct enumeration, no quaternions.

    Precomputes all values a y^2 + b z^2 + c w^2 <= cap in buckets, so both
    `representable(n)` and the full list of representations of n are cheap.
    """

    def __init__(self, form: Form, cap: int) -> None:
        self.form = form
        self.cap = cap
        a, b, c = form.a, form.b, form.c
        buckets: dict[int, list[tuple[int, int, int]]] = {}
        for y in range(isqrt(cap // a) + 1):
            ay = a * y * y
            if ay > cap:
                break
            for z in range(isqrt((cap - ay) // b) + 1):
                abz = ay + b * z * z
                if abz > cap:
                    break
                for w in range(isqrt((cap - abz) // c) + 1):
                    s = abz + c * w * w
                    if s > cap:
                        break
                    buckets.setdefault(s, []).append((y, z, w))
        self._buckets = buckets

    def representable(self, n: int) -> bool:
        if not (0 <= n <= self.cap):
            raise ValueError(f"n = {n} outside oracle range 0..{self.cap}")
        for x in range(isqrt(n) + 1):
            if (n - x * x) in self._buckets:
                return True
        return False

    def representations(self, n: int) -> list[Vec4]:
        """All nonnegative representations of n, sorted."""
        if not (0 <= n <= self.cap):
            raise ValueError(f"n = {n} outside oracle range 0..{self.cap}")
        out = []
        for x in range(isqrt(n) + 1):
            for (y, z, w) in self._buckets.get(n - x * x, ()):
                out.append((x, y, z, w))
        return sorted(out)
