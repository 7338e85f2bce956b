"""Graded presentations: variables with degrees, sparse polynomial relations.

Polynomials have Gaussian-rational coefficients and monomials over named
variables; a presentation fixes the variable order, the Cl(X)-degrees in
adapted coordinates and the B-weights.  Every emitted relation must be
homogeneous for both gradings, and the checkers here are what ``--verify``
and the test suite run.
"""

from __future__ import annotations

from dataclasses import dataclass
from .exactmath import FinAbGroup, GAUSS_ONE, GAUSS_ZERO, GaussianRational, gauss

Monomial = tuple[tuple[str, int], ...]  # sorted by variable name, exponents > 0


class SparsePoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, GaussianRational] | None = None):
        self.terms: dict[Monomial, GaussianRational] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @staticmethod
    def zero() -> "SparsePoly":
        return SparsePoly()

    @staticmethod
    def term(coeff, exps: dict[str, int]) -> "SparsePoly":
        coeff = gauss(coeff)
        mono = tuple(sorted((v, e) for v, e in exps.items() if e))
        return SparsePoly({mono: coeff}) if coeff else SparsePoly()

    @staticmethod
    def variable(name: str) -> "SparsePoly":
        return SparsePoly.term(1, {name: 1})

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m, GAUSS_ZERO) + c
            if cur:
                out[m] = cur
            else:
                out.pop(m, None)
        return SparsePoly(out)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + other.scale(-1)

    def scale(self, c) -> "SparsePoly":
        c = gauss(c)
        if not c:
            return SparsePoly()
        return SparsePoly({m: x * c for m, x in self.terms.items()})

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        out: dict[Monomial, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                d = dict(d1)
                for v, e in m2:
                    d[v] = d.get(v, 0) + e
                mono = tuple(sorted(d.items()))
                c = c1 * c2
                cur = out.get(mono, GAUSS_ZERO) + c
                if cur:
                    out[mono] = cur
                else:
                    out.pop(mono, None)
        return SparsePoly(out)

    def pow(self, k: int) -> "SparsePoly":
        out = SparsePoly.term(1, {})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def substitute(self, name: str, value: "SparsePoly") -> "SparsePoly":
        out = SparsePoly()
        for m, c in self.terms.items():
            rest = {v: e for v, e in m if v != name}
            k = dict(m).get(name, 0)
            piece = SparsePoly.term(c, rest)
            if k:
                piece = piece * value.pow(k)
            out = out + piece
        return out

    def kill_variables(self, names) -> "SparsePoly":
        names = set(names)
        out: dict[Monomial, GaussianRational] = {}
        for m, c in self.terms.items():
            if any(v in names for v, _ in m):
                continue
            out[m] = c
        return SparsePoly(out)

    def coefficient_of_linear(self, name: str) -> GaussianRational | None:
        """Coefficient of the bare monomial ``name`` when the variable occurs
        nowhere else in the polynomial; None otherwise."""
        target: Monomial = ((name, 1),)
        if target not in self.terms:
            return None
        for m in self.terms:
            if m != target and any(v == name for v, _ in m):
                return None
        return self.terms[target]

    def __eq__(self, other):
        return isinstance(other, SparsePoly) and self.terms == other.terms

    def __repr__(self):
        return f"SparsePoly({self.terms!r})"


def _mono_key(m: Monomial, order: dict[str, int]):
    deg = sum(e for _, e in m)
    dense = [0] * len(order)
    for v, e in m:
        dense[order[v]] = e
    return (deg, tuple(dense))


def canonicalize(poly: SparsePoly, var_order: list[str]) -> SparsePoly:
    """Normalize the global unit: the leading term (graded-lex in the given
    variable order) gets a coefficient with positive real part (or positive
    imaginary part when the real part vanishes).  Only +-1 is used so
    integrality of coefficients is preserved."""
    if poly.is_zero():
        return poly
    order = {v: i for i, v in enumerate(var_order)}
    lead = max(poly.terms, key=lambda m: _mono_key(m, order))
    c = poly.terms[lead]
    flip = c.re < 0 or (c.re == 0 and c.im < 0)
    return poly.scale(-1) if flip else poly


def canonical_key(poly: SparsePoly, var_order: list[str]):
    """Hashable canonical form for exact comparison of relations."""
    p = canonicalize(poly, var_order)
    order = {v: i for i, v in enumerate(var_order)}
    return tuple(sorted(((_mono_key(m, order), (c.re, c.im))
                         for m, c in p.terms.items()), reverse=True))


@dataclass(frozen=True)
class GradedVariable:
    name: str
    degree: tuple[int, ...]  # adapted coordinates in Cl(X)
    b_weight: int
    module_tag: str = ""
    pretty: str = ""


@dataclass
class GradedPresentation:
    variables: list[GradedVariable]
    relations: list[SparsePoly]
    grading: FinAbGroup

    def var_order(self) -> list[str]:
        return [v.name for v in self.variables]

    def degree_map(self) -> dict[str, tuple[int, ...]]:
        return {v.name: v.degree for v in self.variables}

    def weight_map(self) -> dict[str, int]:
        return {v.name: v.b_weight for v in self.variables}

    def canonical_relations(self) -> list[SparsePoly]:
        order = self.var_order()
        return [canonicalize(r, order) for r in self.relations]


def term_degree(m: Monomial, degrees: dict[str, tuple[int, ...]], group: FinAbGroup):
    n = group.free_rank + len(group.torsion)
    acc = [0] * n
    for v, e in m:
        d = degrees[v]
        acc = [a + e * x for a, x in zip(acc, d)]
    return group.reduce(acc)


def relation_degree(poly: SparsePoly, degrees, group: FinAbGroup):
    """Common degree of all terms; raises when inhomogeneous."""
    deg = None
    for m in poly.terms:
        cur = term_degree(m, degrees, group)
        if deg is None:
            deg = cur
        elif deg != cur:
            raise ValueError(f"relation not Cl-homogeneous: {deg} vs {cur}")
    return deg


def relation_b_weight(poly: SparsePoly, weights: dict[str, int]):
    """Common B-weight of all terms; raises when inhomogeneous."""
    w = None
    for m in poly.terms:
        cur = sum(e * weights[v] for v, e in m)
        if w is None:
            w = cur
        elif w != cur:
            raise ValueError(f"relation not B-weight homogeneous: {w} vs {cur}")
    return w


# -- pretty printing -------------------------------------------------------------

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def pretty_name(name: str) -> str:
    """s0 -> s_0, sinf -> s_inf, sp1 -> s'_1, r0_2 -> r_0,2 in unicode."""
    out = name
    prime = ""
    if len(out) > 1 and out[1] == "p" and out[0] in "sr":
        prime = "′"
        out = out[0] + out[2:]
    head = out[0]
    rest = out[1:]
    j = None
    if "_" in rest:
        rest, js = rest.split("_", 1)
        j = js
    if rest == "inf":
        sub = "∞"
    elif rest == "dom":
        sub = "dom"
    else:
        sub = rest.translate(_SUB)
    if j is not None:
        sub += "," + j.translate(_SUB)
    return head + prime + sub


def _coeff_str(c: GaussianRational) -> str:
    if c.im == 0:
        return str(c.re)
    return f"({c})"


def pretty_poly(poly: SparsePoly, var_order: list[str],
                names: dict[str, str] | None = None) -> str:
    if poly.is_zero():
        return "0"
    order = {v: i for i, v in enumerate(var_order)}
    names = names or {}
    items = sorted(poly.terms.items(), key=lambda kv: _mono_key(kv[0], order), reverse=True)
    parts: list[str] = []
    for m, c in items:
        mono = ""
        for v, e in sorted(m, key=lambda ve: order[ve[0]]):
            nm = names.get(v) or pretty_name(v)
            mono += nm + (str(e).translate(_SUP) if e > 1 else "")
        if not mono:
            neg = c.re < 0 or (c.re == 0 and c.im < 0)
            parts.append(("-" if neg else "+", _coeff_str(-c if neg else c)))
            continue
        neg = c.re < 0 or (c.re == 0 and c.im < 0)
        mag = -c if neg else c
        if mag == GAUSS_ONE:
            body = mono
        else:
            body = _coeff_str(mag) + mono
        parts.append(("-" if neg else "+", body))
    s = ""
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            s += ("-" if sign == "-" else "") + body
        else:
            s += f" {sign} {body}"
    return s


def poly_to_json(poly: SparsePoly) -> list[dict]:
    out = []
    for m, c in sorted(poly.terms.items()):
        out.append({
            "coeff": {"re": str(c.re), "im": str(c.im)},
            "monomial": {v: e for v, e in m},
        })
    return out


def poly_from_json(doc: list[dict]) -> SparsePoly:
    acc = SparsePoly()
    for t in doc:
        c = gauss(t["coeff"])
        acc = acc + SparsePoly.term(c, {str(k): int(v) for k, v in t["monomial"].items()})
    return acc
