"""Unit-associate searches between an order and a diagonal target module.

Given q in an order O and a diagonal module M_t in the same algebra, we look
for units u (or unit pairs u1, u2) such that q*u, u1*q*u2, or u1*(2q)*u2
lands in M_t.  Searches run over the canonical unit ordering and return the
first hit, so results are reproducible bit for bit.

`residue_certificate` turns the lemma "every order element has an associate
in the target" into a finite check: it verifies the containment
M * O * units inside the target and then exhibits a witness for every
residue class of O / M*O.  Together these cover all of O.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .algebra import Quat
from .order import DiagonalModule, Order, Vec4, combo_str
from .units import UnitSet, units_of

RIGHT = "right"
LEFT = "left"
TWO_SIDED = "two_sided"
TWO_SIDED_DOUBLE = "two_sided_double"
_MODES = (RIGHT, LEFT, TWO_SIDED, TWO_SIDED_DOUBLE)


class CoverageError(AssertionError):
    """A residue class has no associate in the target; refutes the covering claim."""

    def __init__(self, message: str, missing: list[Vec4]) -> None:
        self.missing = missing
        super().__init__(message)


class ContainmentError(AssertionError):
    """The scaled order does not embed in the target under every unit."""


@dataclass(frozen=True)
class AssociateWitness:
    """One verified associate: u1 * (scale * q) * u2 = image, image in target."""

    u1_coords: Vec4
    u2_coords: Vec4
    image_coords: Vec4   # coordinates in the target module
    scale: int           # 1, or 2 for the doubled two-sided mode

    def u1(self, order: Order) -> Quat:
        return order.element(self.u1_coords)

    def u2(self, order: Order) -> Quat:
        return order.element(self.u2_coords)

    def image(self, target: DiagonalModule) -> Quat:
        return target.element(self.image_coords)

    def verify(self, order: Order, target: DiagonalModule, q: Quat) -> bool:
        prod = self.u1(order) * (q * self.scale) * self.u2(order)
        return prod == self.image(target)

    def to_json(self) -> dict:
        return {
            "u1": list(self.u1_coords),
            "u2": list(self.u2_coords),
            "image": list(self.image_coords),
            "scale": self.scale,
        }


def _tensor(order: Order) -> np.ndarray:
    t = getattr(order, "_assoc_tensor", None)
    if t is None:
        tab = order.mul_table().entries
        t = np.array([[tab[i][j] for j in range(4)] for i in range(4)], dtype=np.int64)
        order._assoc_tensor = t
    return t


def _unit_array(order: Order) -> np.ndarray:
    u = getattr(order, "_unit_array", None)
    if u is None:
        u = np.array(list(units_of(order)), dtype=np.int64)
        order._unit_array = u
    return u


def _membership_mask(order: Order, target: DiagonalModule, images: np.ndarray) -> np.ndarray:
    """images: (..., 4) generator coordinates; True where the element is in target."""
    colT = np.array(order.col_num, dtype=np.int64).T
    alg = images @ colT                           # numerators at denominator order.den
    mods = np.array([order.den * s for s in target.scale], dtype=np.int64)
    return ((alg % mods) == 0).all(axis=-1)


def _target_coords(order: Order, target: DiagonalModule, image: Vec4) -> Vec4:
    q = order.element(image)
    coords = target.coords_in(q)
    if coords is None:
        raise AssertionError("mask said member but coords_in disagreed")
    return coords


def find_associate(order: Order, target: DiagonalModule, q: Quat,
                   mode: str) -> Optional[AssociateWitness]:
    """First associate of q in the canonical unit scan order, or None.

    Modes: right (q*u), left (u*q), two_sided (u1*q*u2), two_sided_double
    (u1*(2q)*u2).  The scan is u1-major then u2-minor over the canonical
    unit ordering, so the returned witness is deterministic.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    qv = order.coords_in(q)
    if qv is None:
        raise ValueError("q must lie in the order")
    return _find_associate_vec(order, target, qv, mode)


def _find_associate_vec(order: Order, target: DiagonalModule, qv: Vec4,
                        mode: str) -> Optional[AssociateWitness]:
    T = _tensor(order)
    U = _unit_array(order)
    scale = 2 if mode == TWO_SIDED_DOUBLE else 1
    q = np.array(qv, dtype=np.int64) * scale

    if mode in (RIGHT, LEFT):
        if mode == RIGHT:
            A = np.tensordot(q, T, axes=(0, 0))       # (j, k)
            images = U @ A                            # (nu, 4): q * u
        else:
            A = np.tensordot(T, q, axes=(1, 0))       # (i, k)
            images = U @ A                            # (nu, 4): u * q
        mask = _membership_mask(order, target, images)
        hits = np.flatnonzero(mask)
        if hits.size == 0:
            return None
        v = int(hits[0])
        image = tuple(int(x) for x in images[v])
        uc = tuple(int(x) for x in U[v])
        one = order.coords_in(Quat.one(order.params))
        assert one is not None
        if mode == RIGHT:
            return AssociateWitness(one, uc, _target_coords(order, target, image), scale)
        return AssociateWitness(uc, one, _target_coords(order, target, image), scale)

    # two-sided variants
    A = np.tensordot(T, q, axes=(1, 0))               # (i, k): rows i of e_i * q
    P1 = U @ A                                        # (nu, 4): u1 * q
    B = np.tensordot(P1, T, axes=(1, 0))              # (nu, j, k)
    images = np.einsum("ujk,vj->uvk", B, U)           # (nu, nu, 4): u1 * q * u2
    mask = _membership_mask(order, target, images)
    flat = np.flatnonzero(mask.reshape(-1))
    if flat.size == 0:
        return None
    nu = U.shape[0]
    pos = int(flat[0])
    a, b = divmod(pos, nu)
    image = tuple(int(x) for x in images[a, b])
    return AssociateWitness(
        tuple(int(x) for x in U[a]),
        tuple(int(x) for x in U[b]),
        _target_coords(order, target, image),
        scale,
    )


# -- residue certificates ---------------------------------------------------

@dataclass(frozen=True)
class ResidueTable:
    """Exhaustive associate witnesses for all residues of O modulo M*O."""

    order_name: str
    target_scale: Vec4
    mode: str
    modulus: int
    containment_factor: int    # M, or 2*M in the doubled mode
    containment_checks: int    # how many scaled products were verified inside
    entries: tuple[tuple[Vec4, AssociateWitness], ...]

    def witness_for(self, residue: Vec4) -> AssociateWitness:
        for res, wit in self.entries:
            if res == tuple(residue):
                return wit
        raise KeyError(residue)

    def render(self, order: Order, target: DiagonalModule, limit: Optional[int] = None) -> str:
        rows = [f"order {self.order_name}, target {target}, mode {self.mode}, "
                f"modulus {self.modulus} ({len(self.entries)} residues, "
                f"containment checks: {self.containment_checks})"]
        names = order.gen_names
        shown = self.entries if limit is None else self.entries[:limit]
        for res, wit in shown:
            q = combo_str(res, names)
            u1 = combo_str(wit.u1_coords, names)
            u2 = combo_str(wit.u2_coords, names)
            img = str(wit.image(target))
            if self.mode == RIGHT:
                rows.append(f"  {q:<28} u = {u2:<24} -> {img}")
            else:
                pre = "2*" if wit.scale == 2 else ""
                rows.append(f"  {pre}({q})  u1 = {u1}, u2 = {u2} -> {img}")
        if limit is not None and len(self.entries) > limit:
            rows.append(f"  ... {len(self.entries) - limit} more rows")
        return "\n".join(rows)

    def to_json(self) -> dict:
        return {
            "order": self.order_name,
            "target_scale": list(self.target_scale),
            "mode": self.mode,
            "modulus": self.modulus,
            "containment_factor": self.containment_factor,
            "entries": [
                {"residue": list(res), **wit.to_json()} for res, wit in self.entries
            ],
        }


def _check_containment(order: Order, target: DiagonalModule, mode: str,
                       factor: int) -> int:
    """Verify factor * (unit * g_i * unit) subset of target, unit-by-unit.

    In right mode the products are (g_i * u) only; two-sided modes check
    u1 * g_i * u2 for every pair.  Returns the number of products checked.
    """
    T = _tensor(order)
    U = _unit_array(order)
    checked = 0
    for i in range(4):
        gi = np.zeros(4, dtype=np.int64)
        gi[i] = factor
        if mode in (RIGHT, LEFT):
            A = np.tensordot(gi, T, axes=(0, 0))
            images = U @ A
        else:
            A = np.tensordot(T, gi, axes=(1, 0))
            P1 = U @ A
            B = np.tensordot(P1, T, axes=(1, 0))
            images = np.einsum("ujk,vj->uvk", B, U).reshape(-1, 4)
        mask = _membership_mask(order, target, images)
        if not mask.all():
            raise ContainmentError(
                f"{factor}*generator {i + 1} leaves {target} under some unit "
                f"({order.name}, mode {mode})"
            )
        checked += images.shape[0] if images.ndim == 2 else 0
    return checked


def residue_certificate(order: Order, target: DiagonalModule, mode: str,
                        modulus: int) -> ResidueTable:
    """Build the full residue table; raises CoverageError if any class misses.

    The covering argument needs (a) the containment of the scaled order in
    the target under all unit multiplications and (b) a witness for every
    residue vector in [0, modulus)^4.  Both are checked explicitly here.
    """
    if mode not in (RIGHT, TWO_SIDED, TWO_SIDED_DOUBLE):
        raise ValueError(f"unsupported certificate mode {mode!r}")
    factor = modulus * (2 if mode == TWO_SIDED_DOUBLE else 1)
    checked = _check_containment(order, target, mode, factor)

    entries: list[tuple[Vec4, AssociateWitness]] = []
    missing: list[Vec4] = []
    rng = range(modulus)
    for d0 in rng:
        for d1 in rng:
            for d2 in rng:
                for d3 in rng:
                    res: Vec4 = (d0, d1, d2, d3)
                    wit = _find_associate_vec(order, target, res, mode)
                    if wit is None:
                        missing.append(res)
                    else:
                        entries.append((res, wit))
    if missing:
        raise CoverageError(
            f"{order.name} -> {target}, mode {mode}: {len(missing)} residue classes "
            f"without associates (first: {missing[0]})",
            missing,
        )
    return ResidueTable(
        order_name=order.name,
        target_scale=target.scale,
        mode=mode,
        modulus=modulus,
        containment_factor=factor,
        containment_checks=checked,
        entries=tuple(entries),
    )


def find_residue_without_one_sided(order: Order, target: DiagonalModule,
                                   modulus: int) -> Optional[tuple[Vec4, AssociateWitness]]:
    """First residue with no one-sided associate but a two-sided one.

    Scans residues of O mod modulus*O in lexicographic order; for each, checks
    every single unit on the right and on the left, then falls back to the
    pair search.  Returns None when one-sided multiplication always suffices.
    """
    rng = range(modulus)
    for d0 in rng:
        for d1 in rng:
            for d2 in rng:
                for d3 in rng:
                    res: Vec4 = (d0, d1, d2, d3)
                    if _find_associate_vec(order, target, res, RIGHT) is not None:
                        continue
                    if _find_associate_vec(order, target, res, LEFT) is not None:
                        continue
                    wit = _find_associate_vec(order, target, res, TWO_SIDED)
                    if wit is not None:
                        return res, wit
    return None
