"""Combinatorial input data of a normal SL2/F-embedding.

An embedding is described by the finite subgroup F, the exceptional points of
the rational quotient to P^1 (the canonical ones are forced by F, the others
are user-supplied coordinates), the G-stable prime divisors as hyperspace
vectors (x, h, l), an optional divisor dominating P^1, and the section
convention fixing the l-coordinates of the colors.

Validation checks exactly the structural invariants of this data: the
valuation-cone inequalities per divisor, distinctness of points, integrality
of u*l, at most one dominating divisor.  It does not attempt to reconstruct
a hyperfan.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import GaussianRational, gauss, rat
from .groups import DIHEDRAL, FiniteSubgroup, cyclic, dihedral, ICOSA, OCTA, TETRA
from .hyperspace import (
    BasePoint,
    HyperspaceVector,
    Section,
    X0,
    XE,
    XF,
    XINF,
    XV,
    point,
    valuation_cone_contains,
)


class InvalidEmbedding(Exception):
    """Raised by operations that require a valid embedding."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str

    def __str__(self):
        return f"{self.code}: {self.detail}"


@dataclass(frozen=True)
class ExceptionalPointSpec:
    """A canonical tag point or an extra coordinate point of P^1."""

    pt: BasePoint
    kind: str  # "canonical" | "extra"


@dataclass(frozen=True)
class GStableDivisorSpec:
    """G-stable prime divisor: its point (or dominating), h and l."""

    over: BasePoint | None  # None = dominating P^1
    h: int
    l: Fraction

    def __post_init__(self):
        object.__setattr__(self, "l", rat(self.l))

    @property
    def dominating(self) -> bool:
        return self.over is None

    def vector(self) -> HyperspaceVector:
        if self.dominating:
            raise ValueError("a dominating divisor lives in E, not in a slice")
        return HyperspaceVector(self.over, Fraction(self.h), self.l)


@dataclass(frozen=True)
class EmbeddingData:
    group: FiniteSubgroup
    extra_points: tuple[BasePoint, ...] = ()
    divisors: tuple[GStableDivisorSpec, ...] = ()
    section: Section = Section.default()

    # -- point bookkeeping ----------------------------------------------------

    def canonical_points(self) -> tuple[BasePoint, ...]:
        return tuple({"x0": X0, "xinf": XINF, "xv": XV, "xe": XE, "xf": XF}[t]
                     for t in self.group.canonical_tags())

    def exceptional_points(self) -> tuple[BasePoint, ...]:
        return self.canonical_points() + tuple(self.extra_points)

    def color_multiplicity(self, p: BasePoint) -> int:
        mult = self.group.canonical_multiplicities()
        if p.tag is not None and p.tag in mult:
            return mult[p.tag]
        return 1

    def divisors_over(self, p: BasePoint) -> tuple[GStableDivisorSpec, ...]:
        return tuple(d for d in self.divisors if not d.dominating and d.over == p)

    def dominating_divisor(self) -> GStableDivisorSpec | None:
        for d in self.divisors:
            if d.dominating:
                return d
        return None

    def counts(self) -> tuple[int, int]:
        """(N, N'): invariant divisors over canonical points (dominating one
        counts into N) and over extra points."""
        n = sum(len(self.divisors_over(p)) for p in self.canonical_points())
        if self.dominating_divisor() is not None:
            n += 1
        nprime = sum(len(self.divisors_over(p)) for p in self.extra_points)
        return n, nprime

    # -- validation -----------------------------------------------------------

    def validate(self) -> list[Violation]:
        v: list[Violation] = []
        F = self.group
        canon = self.canonical_points()
        canon_coords = {c: canonical_coordinates(F).get(c.tag) for c in canon}

        seen: list[BasePoint] = []
        for p in self.extra_points:
            if p.tag is not None:
                v.append(Violation("ExtraPointIsTag", f"extra point {p} must be coordinates"))
                continue
            if any(p == q for q in seen):
                v.append(Violation("DuplicatePoint", f"extra point {p} repeated"))
            seen.append(p)
            for c, coords in canon_coords.items():
                if coords is not None and p == point(*coords):
                    v.append(Violation(
                        "PointClashesCanonical", f"extra point {p} equals canonical {c}"))

        for p in self.extra_points:
            if p.tag is None and not self.divisors_over(p):
                v.append(Violation(
                    "ExtraPointWithoutDivisor",
                    f"extra point {p} carries no G-stable divisor, so its "
                    f"fiber is parametric and the point is not exceptional"))

        dominating = [d for d in self.divisors if d.dominating]
        if len(dominating) > 1:
            v.append(Violation("TooManyDominating", "at most one divisor dominates P^1"))
        for d in dominating:
            if d.h != 0:
                v.append(Violation("DominatingH", "a dominating divisor has h = 0"))
            if d.l >= 0:
                v.append(Violation("DominatingL", "a dominating divisor has l < 0"))

        exceptional = set(self.exceptional_points())
        for d in self.divisors:
            if d.dominating:
                continue
            if d.over not in exceptional:
                v.append(Violation(
                    "DivisorOverUnknownPoint", f"divisor over {d.over} which is not listed"))
                continue
            if d.h < 1:
                v.append(Violation("NonpositiveH", f"divisor over {d.over} has h = {d.h}"))
                continue
            if F.is_cyclic and (F.u * d.l).denominator != 1:
                v.append(Violation(
                    "FractionalL", f"l = {d.l} over {d.over} not in (1/{F.u})Z"))
            if not F.is_cyclic and d.l.denominator != 1:
                v.append(Violation("FractionalL", f"l = {d.l} over {d.over} not integral"))
            if not valuation_cone_contains(F, d.vector(), self.section):
                v.append(Violation(
                    "ValuationOutsideCone",
                    f"({d.over},{d.h},{d.l}) violates the valuation-cone inequality"))

        if self.section.kind == "color_at":
            if not F.is_cyclic:
                v.append(Violation("SectionNotCyclic",
                                   "the color-at section is only defined for cyclic F"))
            elif self.section.at_point not in exceptional:
                v.append(Violation("SectionPointUnknown",
                                   f"section point {self.section.at_point} is not exceptional"))
            elif self.section.at_point in canon:
                v.append(Violation("SectionAtCanonical",
                                   "the section divisor cannot sit at a canonical color"))

        return sorted(v, key=lambda x: (x.code, x.detail))

    def require_valid(self) -> "EmbeddingData":
        violations = self.validate()
        if violations:
            raise InvalidEmbedding(violations)
        return self


def canonical_coordinates(F: FiniteSubgroup) -> dict[str, tuple]:
    """Homogeneous coordinates of the canonical exceptional points.

    Cyclic (n >= 3): x0 = [0:1], xinf = [-1:0] with respect to the pair of
    exceptional semi-invariants; polyhedral: xv = [0:1], xe = [1:0] and the
    third point placed so that the relation between the three exceptional
    semi-invariants is the fiber relation over it.
    """
    if F.is_cyclic:
        if F.n <= 2:
            return {}
        return {"x0": (gauss(0), gauss(1)), "xinf": (gauss(-1), gauss(0))}
    third = (gauss(-1), gauss(1)) if F.kind == DIHEDRAL else (gauss(-1), gauss(-1))
    return {"xv": (gauss(0), gauss(1)), "xe": (gauss(1), gauss(0)), "xf": third}


def exceptional_relation_scalar(F: FiniteSubgroup):
    """Scalar c with relation  a - b = c * (third semi-invariant power)  ...

    Concretely, for the canonical coordinate choices above, the fiber over
    the third canonical point is cut by beta_f*a - alpha_f*b = lam * s_f^{n_f},
    and this returns lam: 1 for the tetrahedral/octahedral/icosahedral cases,
    4*(-i)^n for the binary dihedral one.
    """
    from .exactmath import GAUSS_ONE, gauss_ipow

    if F.kind == DIHEDRAL:
        return 4 * gauss_ipow(-F.n)
    return GAUSS_ONE


def derive_ap0_input(E: EmbeddingData):
    """Coefficient matrix and exponent vectors of the trinomial model of Cox^U.

    Returns (A, exponent_vectors, m): A is the 2 x (r+1) matrix whose columns
    are the homogeneous coordinates of the exceptional points, the i-th
    exponent vector is (n_i, h_i1, h_i2, ...) over that point, and m flags a
    divisor dominating P^1.
    """
    E.require_valid()
    coords = canonical_coordinates(E.group)
    cols: list[tuple[GaussianRational, GaussianRational]] = []
    exponents: list[tuple[int, ...]] = []
    for p in E.exceptional_points():
        if p.tag is not None:
            cols.append(coords[p.tag])
        else:
            cols.append((p.alpha, p.beta))
        exponents.append((E.color_multiplicity(p),)
                         + tuple(d.h for d in E.divisors_over(p)))
    m = 1 if E.dominating_divisor() is not None else 0
    return cols, exponents, m


def affine_embedding(n: int, h: int, l) -> EmbeddingData:
    """The affine shape: cyclic F, a single divisor (x0, h, l), no extras.

    For n <= 2 the role of x0 is played by the coordinate point [0:1].
    """
    F = cyclic(n)
    lq = rat(l)
    if n >= 3:
        return EmbeddingData(F, (), (GStableDivisorSpec(X0, h, lq),))
    p0 = point(0, 1)
    return EmbeddingData(F, (p0,), (GStableDivisorSpec(p0, h, lq),))


# -- JSON input ----------------------------------------------------------------

_GROUPS = {
    "cyclic": lambda n: cyclic(n),
    "dihedral": lambda n: dihedral(n),
    "tetrahedral": lambda n: TETRA,
    "octahedral": lambda n: OCTA,
    "icosahedral": lambda n: ICOSA,
}

_POINT_REFS = {"x0": X0, "xinf": XINF, "xv": XV, "xe": XE, "xf": XF}


class SchemaError(Exception):
    """Malformed embedding file."""


def _check_keys(obj: dict, allowed: set[str], where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"unknown keys {sorted(unknown)} in {where}")


def _parse_coord(x, where: str) -> GaussianRational:
    if isinstance(x, dict):
        _check_keys(x, {"re", "im"}, where)
    try:
        return gauss(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad coordinate in {where}: {exc}") from exc


def _point_ref(ref: str, extras: list[BasePoint], where: str) -> BasePoint:
    if ref in _POINT_REFS:
        return _POINT_REFS[ref]
    if ref.startswith("extra:"):
        try:
            idx = int(ref.split(":", 1)[1])
            return extras[idx]
        except (ValueError, IndexError) as exc:
            raise SchemaError(f"bad extra-point reference {ref!r} in {where}") from exc
    raise SchemaError(f"bad point reference {ref!r} in {where}")


def embedding_from_dict(doc: dict) -> EmbeddingData:
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    _check_keys(doc, {"group", "extra_points", "divisors", "section"}, "top level")
    gspec = doc.get("group")
    if not isinstance(gspec, dict):
        raise SchemaError("missing or malformed 'group'")
    _check_keys(gspec, {"type", "n"}, "group")
    gtype = gspec.get("type")
    if gtype not in _GROUPS:
        raise SchemaError(f"unknown group type {gtype!r}")
    if gtype in ("cyclic", "dihedral") and not isinstance(gspec.get("n"), int):
        raise SchemaError(f"group type {gtype!r} needs an integer 'n'")
    try:
        group = _GROUPS[gtype](gspec.get("n", 0))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc

    extras: list[BasePoint] = []
    for i, p in enumerate(doc.get("extra_points", [])):
        if not isinstance(p, dict):
            raise SchemaError(f"extra_points[{i}] must be an object")
        _check_keys(p, {"alpha", "beta"}, f"extra_points[{i}]")
        alpha = _parse_coord(p.get("alpha", 0), f"extra_points[{i}].alpha")
        beta = _parse_coord(p.get("beta", 0), f"extra_points[{i}].beta")
        if not alpha and not beta:
            raise SchemaError(f"extra_points[{i}] is [0:0]")
        extras.append(BasePoint(alpha=alpha, beta=beta))

    divisors: list[GStableDivisorSpec] = []
    for i, d in enumerate(doc.get("divisors", [])):
        if not isinstance(d, dict):
            raise SchemaError(f"divisors[{i}] must be an object")
        _check_keys(d, {"over", "h", "l"}, f"divisors[{i}]")
        over = d.get("over")
        if not isinstance(over, str):
            raise SchemaError(f"divisors[{i}].over must be a string reference")
        if not isinstance(d.get("h"), int):
            raise SchemaError(f"divisors[{i}].h must be an integer")
        try:
            l = rat(d.get("l", 0))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"divisors[{i}].l: {exc}") from exc
        if over == "dominating":
            divisors.append(GStableDivisorSpec(None, d["h"], l))
        else:
            divisors.append(GStableDivisorSpec(
                _point_ref(over, extras, f"divisors[{i}]"), d["h"], l))

    section = Section.default()
    if "section" in doc:
        s = doc["section"]
        if not isinstance(s, dict):
            raise SchemaError("'section' must be an object")
        _check_keys(s, {"at"}, "section")
        if "at" in s:
            section = Section.at(_point_ref(s["at"], extras, "section"))

    return EmbeddingData(group, tuple(extras), tuple(divisors), section)


def load_embedding(path: str) -> EmbeddingData:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    return embedding_from_dict(doc)


def _coord_json(x: GaussianRational):
    if x.im == 0:
        return str(x.re)
    return {"re": str(x.re), "im": str(x.im)}


def embedding_to_dict(E: EmbeddingData) -> dict:
    """Inverse of embedding_from_dict, for round-trips and generators."""
    g = E.group
    doc: dict = {"group": {"type": g.kind}}
    if g.kind in ("cyclic", "dihedral"):
        doc["group"]["n"] = g.n
    if E.extra_points:
        doc["extra_points"] = [
            {"alpha": _coord_json(p.alpha), "beta": _coord_json(p.beta)}
            for p in E.extra_points
        ]
    refs: dict[BasePoint, str] = {}
    for t, p in _POINT_REFS.items():
        refs[p] = t
    for i, p in enumerate(E.extra_points):
        refs[p] = f"extra:{i}"
    if E.divisors:
        doc["divisors"] = [
            {"over": "dominating" if d.dominating else refs[d.over],
             "h": d.h, "l": str(d.l)}
            for d in E.divisors
        ]
    if E.section.kind == "color_at":
        doc["section"] = {"at": refs[E.section.at_point]}
    return doc
