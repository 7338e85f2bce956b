"""Divisor class group of an SL2/F-embedding by generators and relations.

Generators are the exceptional divisors (exceptional colors and G-stable
divisors) plus the parametric colors with a non-zero coordinate on E; under
the default section the only such color is the distinguished one D^{x_d}.
The relations identify all pullback fibers with a base fiber and add the
single relation coming from the divisor of the weight-lattice generator,
with denominators cleared by u.  The cokernel, adapted-basis images of the
generators, non-negative expressions of classes in the invariant divisors
and the restriction to the character group of F are all computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .embedding import EmbeddingData, InvalidEmbedding
from .exactmath import (
    EmptySolutionSet,
    FinAbGroup,
    IntMatrix,
    cokernel,
    solve_integer,
    solve_nonneg,
)
from .hyperspace import BasePoint, XD, color_vector


@dataclass(frozen=True)
class Generator:
    """One generator of Cl(X): label is unique, pretty mirrors the notation
    E^{x_i}, X^{x_i}_j, X^inf, D^{x_d}."""

    label: str
    kind: str  # "color" | "divisor" | "dominating" | "distinguished"
    point: BasePoint | None
    j: int = 0
    pretty: str = ""


@dataclass(frozen=True)
class ClassGroupResult:
    group: FinAbGroup
    generators: tuple[Generator, ...]
    presentation: IntMatrix
    images: dict  # label -> adapted coordinates (free part, then torsion part)
    point_keys: dict  # BasePoint -> short key like "x0", "x1"

    def image_of(self, combo: dict) -> tuple[int, ...]:
        """Adapted coordinates of an integer combination {label: coeff}."""
        n = self.group.free_rank + len(self.group.torsion)
        acc = [0] * n
        for label, c in combo.items():
            img = self.images[label]
            acc = [a + c * x for a, x in zip(acc, img)]
        return self.group.reduce(acc)


def point_keys(E: EmbeddingData) -> dict:
    keys = {}
    for p in E.canonical_points():
        keys[p] = p.tag
    for i, p in enumerate(E.extra_points):
        keys[p] = f"x{i + 1}"
    return keys


def _sub(i: int | str) -> str:
    s = str(i)
    subs = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
    return s.translate(subs)


def _pretty_point(key: str) -> str:
    if key == "xinf":
        return "x∞"
    if key.startswith("x"):
        return "x" + _sub(key[1:])
    return key


def divisor_generators(E: EmbeddingData) -> list[Generator]:
    """Fixed, documented generator order: the distinguished color first when
    the section gives it a non-zero l, then per exceptional point the color
    followed by the invariant divisors over it, then the dominating divisor."""
    E.require_valid()
    keys = point_keys(E)
    gens: list[Generator] = []
    if E.group.is_cyclic and E.section.kind == "default":
        gens.append(Generator("Dxd", "distinguished", XD, pretty="D^{x_d}"))
    for p in E.exceptional_points():
        k = keys[p]
        gens.append(Generator(f"E[{k}]", "color", p, pretty=f"E^{{{_pretty_point(k)}}}"))
        divs = E.divisors_over(p)
        for j, _ in enumerate(divs):
            suffix = "" if len(divs) == 1 else f"_{j + 1}"
            gens.append(Generator(
                f"X[{k},{j}]", "divisor", p, j,
                pretty=f"X^{{{_pretty_point(k)}}}{suffix}"))
    if E.dominating_divisor() is not None:
        gens.append(Generator("Xdom", "dominating", None, pretty="X^{inf}"))
    return gens


def _fiber(E: EmbeddingData, p: BasePoint, gens: list[Generator]) -> list[int]:
    row = [0] * len(gens)
    for i, g in enumerate(gens):
        if g.point == p:
            if g.kind == "color":
                row[i] = E.color_multiplicity(p)
            elif g.kind == "divisor":
                row[i] = E.divisors_over(p)[g.j].h
            elif g.kind == "distinguished":
                row[i] = 1
    return row


def _l_value(E: EmbeddingData, g: Generator) -> Fraction:
    if g.kind == "distinguished":
        return Fraction(1)
    if g.kind == "color":
        return color_vector(E.group, g.point, E.section).l
    if g.kind == "divisor":
        return E.divisors_over(g.point)[g.j].l
    return E.dominating_divisor().l


def presentation_matrix(E: EmbeddingData) -> tuple[list[Generator], IntMatrix]:
    """Rows: [fiber(x)] - [fiber(base)] per exceptional point, then u * l-row."""
    gens = divisor_generators(E)
    pts = list(E.exceptional_points())
    has_d = any(g.kind == "distinguished" for g in gens)
    rows: list[list[int]] = []
    if has_d:
        base = _fiber(E, XD, gens)
        fiber_pts = pts
    else:
        if pts:
            base = _fiber(E, pts[0], gens)
            fiber_pts = pts[1:]
        else:
            base = None
            fiber_pts = []
    for p in fiber_pts:
        f = _fiber(E, p, gens)
        rows.append([a - b for a, b in zip(f, base)])
    u = E.group.u if E.group.is_cyclic else 1
    lrow = [u * _l_value(E, g) for g in gens]
    if any(x.denominator != 1 for x in lrow):
        raise InvalidEmbedding(["FractionalL: l-row not integral after clearing by u"])
    rows.append([int(x) for x in lrow])
    return gens, IntMatrix(rows, cols=len(gens))


def class_group(E: EmbeddingData) -> ClassGroupResult:
    gens, P = presentation_matrix(E)
    group, proj = cokernel(P)
    images = {g.label: tuple(proj.data[i][j] for i in range(proj.rows))
              for j, g in enumerate(gens)}
    images = {label: group.reduce(img) for label, img in images.items()}
    return ClassGroupResult(group, tuple(gens), P, images, point_keys(E))


def express_in_basis(R: ClassGroupResult, target: dict, basis_labels: list[str]):
    """Integer coefficients writing the target class over the given labels,
    or None; used e.g. to express the exceptional colors in the invariant
    divisors when the latter form a basis."""
    n = R.group.free_rank + len(R.group.torsion)
    cols = [R.images[lbl] for lbl in basis_labels]
    A = IntMatrix([[cols[j][i] for j in range(len(cols))] for i in range(n)], cols=len(cols))
    b = R.image_of(target)
    moduli = [0] * R.group.free_rank + list(R.group.torsion)
    return solve_integer(A, b, moduli)


def express_in_invariant_divisors(
    R: ClassGroupResult, target: dict, bound: int = 128
) -> tuple[list[str], list[tuple[int, ...]]]:
    """Non-negative exponent vectors over the invariant divisors.

    Solves target = sum m_ij [X^{x_i}_j] in Cl(X) (torsion part included;
    the dominating divisor never enters a relation and is excluded).
    Returns (labels, solutions); several solutions signal an ambiguous
    family and all are returned.  Raises EmptySolutionSet when none exists,
    with a torsion-obstruction diagnostic when only the torsion part fails.
    """
    labels = [g.label for g in R.generators if g.kind == "divisor"]
    n = R.group.free_rank + len(R.group.torsion)
    cols = [R.images[lbl] for lbl in labels]
    A = IntMatrix([[cols[j][i] for j in range(len(cols))] for i in range(n)],
                  cols=len(labels))
    b = list(R.image_of(target))
    moduli = [0] * R.group.free_rank + list(R.group.torsion)
    try:
        sols = solve_nonneg(A, b, bound, moduli)
    except EmptySolutionSet:
        if R.group.torsion:
            free_rows = R.group.free_rank
            A_free = IntMatrix(A.data[:free_rows], cols=len(labels))
            try:
                solve_nonneg(A_free, b[:free_rows], bound)
            except EmptySolutionSet:
                raise
            raise EmptySolutionSet(
                "free parts match but the torsion part of the class obstructs")
        raise
    return labels, sols


def restrict_to_Fhat(E: EmbeddingData, combo: dict) -> tuple[int, ...]:
    """Image of a class {label: coeff} in the character group of F.

    Invariant divisors restrict to zero; colors restrict to the F-weight of
    the semi-invariant cutting them out.
    """
    F = E.group
    gens = {g.label: g for g in divisor_generators(E)}
    keys = point_keys(E)
    acc = F.char_zero()
    for label, c in combo.items():
        g = gens[label]
        if g.kind in ("divisor", "dominating"):
            continue
        if g.kind == "distinguished":
            w = F.color_restriction("parametric")
        else:
            tag = keys[g.point]
            w = F.color_restriction(tag if tag in ("x0", "xinf", "xv", "xe", "xf") else "extra")
        acc = F.char_add(acc, F.char_scale(c, w))
    return acc
