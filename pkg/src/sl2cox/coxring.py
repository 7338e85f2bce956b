"""Cox-ring presentations for normal SL2/F-embeddings.

Three layers:

  * ``cox_u_presentation``: the U-invariant algebra by generators a, b, the
    canonical sections of the exceptional divisors, and one relation per
    exceptional point, with the section scalars solved exactly from the
    semi-invariant identities; ``eliminate`` removes a and b, and
    ``special_fiber_u`` cuts the invariant-divisor sections to zero.

  * ``full_cox_presentation_cyclic``: the full Cox ring for cyclic F.  The
    generators are bases of the simple modules spanned by the canonical
    sections of the exceptional colors; the relations are found per pair of
    modules by computing the highest-weight vectors of the non-leading
    Clebsch-Gordan components in the formal tensor algebra, evaluating them
    in the matrix coordinates of SL2, and matching the value against the
    unique monomial in the canonical sections of the same degree and weight,
    whose exponents come from a non-negative class-group computation.

  * ``batyrev_haddad``: height and hypersurface parameters of the affine
    shape (a single G-stable divisor over x0), cross-checked against the
    class group up to automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import classgroup as cg
from .embedding import (
    EmbeddingData,
    GStableDivisorSpec,
    canonical_coordinates,
    exceptional_relation_scalar,
)
from .exactmath import GAUSS_ONE, GaussianRational, gauss
from .groups import FiniteSubgroup, gcd_pos
from .hyperspace import BasePoint, X0, XINF, point
from .ogpoly import (
    G1,
    G2,
    G3,
    G4,
    GPoly,
    express_in_span,
    gr_nullspace,
)
from .presentation import (
    GradedPresentation,
    GradedVariable,
    SparsePoly,
    pretty_poly,
    relation_b_weight,
    relation_degree,
)


class NotCyclic(Exception):
    pass


class NotLinearInTarget(Exception):
    pass


class NotAffineShape(Exception):
    pass


class HeightOutOfRange(Exception):
    pass


class TorsionAfterAugmentation(Exception):
    pass


def clebsch_gordan(n: int, m: int) -> list[int]:
    """Summands of V_n (x) V_m: [n+m, n+m-2, ..., |n-m|]."""
    if n < m:
        n, m = m, n
    return list(range(n + m, n - m - 1, -2))


# -- U-invariant presentation ---------------------------------------------------


def _b_weight_table(F: FiniteSubgroup) -> tuple[int, dict[str, int]]:
    """Common weight n0 of a, b and the weights of the subregular sections."""
    if F.is_cyclic:
        return F.nbar, {"x0": 1, "xinf": 1}
    table = {
        "tetrahedral": (12, {"xv": 4, "xe": 6, "xf": 4}),
        "octahedral": (24, {"xv": 8, "xe": 12, "xf": 6}),
        "icosahedral": (60, {"xv": 12, "xe": 30, "xf": 20}),
    }
    if F.kind in table:
        return table[F.kind]
    return 2 * F.n, {"xv": F.n, "xe": F.n, "xf": 2}


def _point_coords(E: EmbeddingData, p: BasePoint):
    if p.tag is not None:
        return canonical_coordinates(E.group)[p.tag]
    return (p.alpha, p.beta)


def _fiber_combo(E: EmbeddingData, keys: dict, p: BasePoint) -> dict:
    k = keys[p]
    combo = {f"E[{k}]": E.color_multiplicity(p)}
    for j, d in enumerate(E.divisors_over(p)):
        combo[f"X[{k},{j}]"] = d.h
    return combo


def cox_u_presentation(E: EmbeddingData) -> GradedPresentation:
    """Generators a, b, s_i, s'_i, r_ij, r'_ij and one relation per
    exceptional point; the section of a divisor dominating P^1 appears as a
    free generator in no relation."""
    E.require_valid()
    R = cg.class_group(E)
    keys = R.point_keys
    F = E.group
    n0, wtable = _b_weight_table(F)

    pts = list(E.exceptional_points())
    base_fiber = _fiber_combo(E, keys, pts[0]) if pts else {"Dxd": 1}
    fiber_deg = R.image_of(base_fiber)

    variables: list[GradedVariable] = [
        GradedVariable("a", fiber_deg, n0, "coordinate"),
        GradedVariable("b", fiber_deg, n0, "coordinate"),
    ]
    svar: dict[BasePoint, str] = {}
    rvars: dict[tuple[BasePoint, int], str] = {}
    for p in pts:
        k = keys[p]
        canonical = p.tag is not None
        name = f"s{k[1:]}" if canonical else f"sp{k[1:]}"
        svar[p] = name
        w = wtable[k] if canonical else n0
        variables.append(GradedVariable(name, R.images[f"E[{k}]"], w, f"E[{k}]"))
        divs = E.divisors_over(p)
        for j, _ in enumerate(divs):
            rname = (f"r{k[1:]}" if canonical else f"rp{k[1:]}")
            rname += f"_{j + 1}" if len(divs) > 1 else ""
            rvars[(p, j)] = rname
            variables.append(GradedVariable(rname, R.images[f"X[{k},{j}]"], 0, f"X[{k},{j}]"))
    if E.dominating_divisor() is not None:
        variables.append(GradedVariable("rdom", R.images["Xdom"], 0, "Xdom"))

    relations: list[SparsePoly] = []
    for p in pts:
        alpha, beta = _point_coords(E, p)
        lam = GAUSS_ONE
        if not F.is_cyclic and p.tag == "xf":
            lam = exceptional_relation_scalar(F)
        mono = {svar[p]: E.color_multiplicity(p)}
        for j, d in enumerate(E.divisors_over(p)):
            mono[rvars[(p, j)]] = d.h
        rel = (SparsePoly.term(beta, {"a": 1})
               + SparsePoly.term(-alpha, {"b": 1})
               + SparsePoly.term(-lam, mono))
        relations.append(rel)

    return GradedPresentation(variables, relations, R.group)


def eliminate(P: GradedPresentation, targets=("a", "b")) -> tuple[GradedPresentation, list[str]]:
    """Remove each target generator using a relation linear in it.

    A target that appears in no relation is kept; a target occurring only
    non-linearly raises NotLinearInTarget.  Returns the new presentation and
    the substitution log.
    """
    variables = list(P.variables)
    relations = list(P.relations)
    log: list[str] = []
    order = P.var_order()
    for name in targets:
        used = None
        for i, rel in enumerate(relations):
            if name in rel.variables():
                c = rel.coefficient_of_linear(name)
                if c is None:
                    continue
                used = (i, c)
                break
        if used is None:
            if any(name in rel.variables() for rel in relations):
                raise NotLinearInTarget(f"{name} never occurs linearly")
            continue
        i, c = used
        rest = relations[i] + SparsePoly.term(-c, {name: 1})
        value = rest.scale(GAUSS_ONE / (-c))
        log.append(f"{name} = {pretty_poly(value, order)}")
        relations = [r.substitute(name, value) for j, r in enumerate(relations) if j != i]
        variables = [v for v in variables if v.name != name]
    relations = [r for r in relations if not r.is_zero()]
    return GradedPresentation(variables, relations, P.grading), log


def special_fiber_u(P: GradedPresentation, E: EmbeddingData) -> GradedPresentation:
    """Quotient by all invariant-divisor sections (the r-variables)."""
    rnames = [v.name for v in P.variables if v.name.startswith("r")]
    variables = [v for v in P.variables if v.name not in rnames]
    relations = []
    for rel in P.relations:
        cut = rel.kill_variables(rnames)
        if not cut.is_zero():
            relations.append(cut)
    return GradedPresentation(variables, relations, P.grading)


def classify_fiber_presentation(P: GradedPresentation) -> str:
    """Structural verdict on the special fiber: 'polynomial' (affine space),
    'reduced_reducible' (an irredundant binomial in two pure powers: a union
    of planes), 'nonreduced' (the relations span a pure power), or 'other'.

    The non-linear relations are reduced against each other first, so that
    e.g. two independent combinations of s0^n and sinf^n are recognized as
    the non-reduced ideal (s0^n, sinf^n).
    """
    from .ogpoly import gr_rref

    nontrivial = []
    for rel in P.relations:
        if all(sum(e for _, e in m) <= 1 for m in rel.terms):
            continue  # linear relations just delete generators
        nontrivial.append(rel)
    if not nontrivial:
        return "polynomial"
    support = sorted({m for rel in nontrivial for m in rel.terms})
    if any(len(m) != 1 or m[0][1] < 2 for m in support):
        return "other"
    idx = {m: i for i, m in enumerate(support)}
    rows = []
    for rel in nontrivial:
        row = [gauss(0)] * len(support)
        for m, c in rel.terms.items():
            row[idx[m]] = c
        rows.append(row)
    reduced, _ = gr_rref(rows)
    verdict = "polynomial"
    for row in reduced:
        nz = [i for i, c in enumerate(row) if c]
        if not nz:
            continue
        if len(nz) == 1:
            return "nonreduced"
        verdict = "reduced_reducible"
    return verdict


# -- full presentation for cyclic F ----------------------------------------------


@dataclass(frozen=True)
class SectionModule:
    """Simple module spanned by the canonical section of one exceptional
    color: variable names, their functions on SL2, weights, color class."""

    point_key: str  # "x0", "xinf", "x1", ... or a parametric designate
    color_combo: dict
    names: tuple[str, ...]
    fns: tuple[GPoly, ...]
    weights: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class ModuleRow:
    iso_m: int  # the component is isomorphic to V_m
    b_weight: int
    poly: SparsePoly
    monomials: tuple = ()  # every solved section monomial (name, exp) tuple
    in_kernel: bool = False


@dataclass(frozen=True)
class RelationModule:
    kind: str  # "M" | "N"
    points: tuple[str, ...]
    rows: tuple[ModuleRow, ...]


@dataclass
class FullCoxResult:
    presentation: GradedPresentation
    modules: list[RelationModule]
    preprocessing_log: list[str]
    warnings: list[str]
    class_group: cg.ClassGroupResult
    embedding: EmbeddingData  # after augmentation, if any


_LETTERS = "stuvwz"


def _basis_names(nbar: int, idx: str) -> list[str]:
    names = []
    for k in range(nbar + 1):
        if k < len(_LETTERS):
            names.append(f"{_LETTERS[k]}{idx}")
        else:
            names.append(f"m{k}_{idx}")
    return names


def _raising_matrix(mod: SectionModule):
    """Matrix A with raise(fn_j) = sum_k A[k][j] * fn_k."""
    cols = []
    for f in mod.fns:
        raised = f.raise_op()
        if raised.is_zero():
            cols.append([gauss(0)] * mod.dim)
            continue
        coeffs = express_in_span(list(mod.fns), raised)
        if coeffs is None:
            raise RuntimeError("raising operator does not stabilize a section module")
        cols.append(coeffs)
    return [[cols[j][i] for j in range(mod.dim)] for i in range(mod.dim)]


def _augment(E: EmbeddingData) -> tuple[EmbeddingData, list[str]]:
    """Add a virtual divisor over x0 / xinf when that family is empty, making
    the special fiber normal; the Cox ring of the input is the quotient of
    the augmented one by (r - 1) over the virtual sections."""
    log: list[str] = []
    divisors = list(E.divisors)
    for p, nm in ((X0, "r0"), (XINF, "rinf")):
        if not E.divisors_over(p):
            divisors.append(GStableDivisorSpec(p, 1, Fraction(-1)))
            log.append(f"augmented with a virtual divisor over {p.tag} with (h,l) = (1,-1); "
                       f"Cox(X) is the quotient of the result by ({nm} - 1)")
    return EmbeddingData(E.group, E.extra_points, tuple(divisors), E.section), log


class _Ctx:
    """Shared state of one full-presentation computation."""

    def __init__(self, E, R, mod0, modinf, rvar, bound, warnings,
                 p0_point=None, pinf_point=None):
        self.E = E
        self.R = R
        self.mod0 = mod0
        self.modinf = modinf
        self.rvar = rvar
        self.bound = bound
        self.warnings = warnings
        self.p0_point = p0_point
        self.pinf_point = pinf_point

    def solve_section_monomials(self, combo: dict, n0: int, ninf: int):
        """All monomials s0^n0 sinf^ninf * r^a with the class of ``combo``.

        Returns a list of exponent dicts over variable names.
        """
        target = dict(combo)
        for mod, power in ((self.mod0, n0), (self.modinf, ninf)):
            if power:
                for lbl, c in mod.color_combo.items():
                    target[lbl] = target.get(lbl, 0) - power * c
        labels, sols = cg.express_in_invariant_divisors(self.R, target, self.bound)
        out = []
        for sol in sols:
            mono: dict[str, int] = {}
            if n0:
                mono[self.mod0.names[0]] = n0
            if ninf:
                mono[self.modinf.names[0]] = mono.get(self.modinf.names[0], 0) + ninf
            for lbl, e in zip(labels, sol):
                if e:
                    mono[self.rvar[lbl]] = e
            out.append(mono)
        return out


def _pair_rows(A: SectionModule, B: SectionModule, ctx: _Ctx) -> list[ModuleRow]:
    """Rows of M_{AB}: one per non-leading Clebsch-Gordan component."""
    sym = A is B
    da, db = A.dim - 1, B.dim - 1
    comps = clebsch_gordan(da, db)[1:]  # drop the Cartan component
    if sym:
        comps = comps[1::2]  # Sym^2(V_d) = V_2d + V_{2d-4} + ...
    rows: list[ModuleRow] = []
    if not comps:
        return rows
    ra = _raising_matrix(A)
    rb = ra if sym else _raising_matrix(B)
    for m in comps:
        pairs = [(i, j) for i in range(A.dim) for j in range(B.dim)
                 if A.weights[i] + B.weights[j] == m and (not sym or i <= j)]
        if not pairs:
            continue
        up_pairs = [(i, j) for i in range(A.dim) for j in range(B.dim)
                    if A.weights[i] + B.weights[j] == m + 2 and (not sym or i <= j)]
        up_index = {p: r for r, p in enumerate(up_pairs)}
        mat = [[gauss(0)] * len(pairs) for _ in up_pairs]

        def bump(i, j, c, col):
            key = (min(i, j), max(i, j)) if sym else (i, j)
            r = up_index.get(key)
            if r is not None:
                mat[r][col] = mat[r][col] + c

        for col, (i, j) in enumerate(pairs):
            for k in range(A.dim):
                if ra[k][i]:
                    bump(k, j, ra[k][i], col)
            for k in range(B.dim):
                if rb[k][j]:
                    bump(i, k, rb[k][j], col)
        null = gr_nullspace(mat, len(pairs))
        if not null:
            continue
        if len(null) != 1:
            raise RuntimeError("Clebsch-Gordan component is not multiplicity free")
        coeffs = null[0]
        lead = next(c for c in coeffs if c)
        coeffs = [c / lead for c in coeffs]
        y = SparsePoly()
        fy = GPoly()
        for c, (i, j) in zip(coeffs, pairs):
            if not c:
                continue
            mono = {A.names[i]: 1}
            mono[B.names[j]] = mono.get(B.names[j], 0) + 1
            y = y + SparsePoly.term(c, mono)
            fy = fy + (A.fns[i] * B.fns[j]).scale(c)
        if fy.is_zero():
            rows.append(ModuleRow(m, m, y, (), True))
            continue
        g34 = fy.as_g34_monomial()
        if g34 is None:
            raise RuntimeError(
                "a product semi-invariant is not a single monomial in the "
                "exceptional sections; the data lies outside the regime of "
                "the cyclic presentation method")
        c_mono, n0, ninf = g34
        x_fn = ctx.mod0.fns[0].pow(n0) * ctx.modinf.fns[0].pow(ninf)
        c_x, _, _ = x_fn.as_g34_monomial()
        q = c_mono / c_x
        combo: dict = {}
        for mod in (A, B):
            for lbl, c in mod.color_combo.items():
                combo[lbl] = combo.get(lbl, 0) + c
        monos = ctx.solve_section_monomials(combo, n0, ninf)
        if len(monos) > 1:
            ctx.warnings.append(
                f"AmbiguousSolution: {len(monos)} exponent vectors for the "
                f"({A.point_key},{B.point_key}) component of weight {m}")
        poly = y + SparsePoly.term(-q, monos[0])
        rows.append(ModuleRow(
            m, m, poly, tuple(tuple(sorted(mm.items())) for mm in monos), False))
    return rows


def _n_rows(mod: SectionModule, ctx: _Ctx, E: EmbeddingData, keys: dict,
            p: BasePoint, include_lowered: bool) -> list[ModuleRow]:
    """The N-module of one non-designated exceptional point: scalars solved
    from the function identity between s0^nbar r0^h, sinf^nbar rinf^h and
    s_i r_i^h; for nbar = 1 the lowered (t-)row completes the module."""
    from .ogpoly import combination_nullspace

    mod0, modinf = ctx.mod0, ctx.modinf
    nb = E.group.nbar
    null = combination_nullspace([mod0.fns[0].pow(nb), modinf.fns[0].pow(nb), mod.fns[0]])
    if len(null) != 1:
        raise RuntimeError("section identity for an N module is not unique")
    c0, cinf, ci = null[0]
    scalefac = gauss(-1) / ci  # normalize the s_i coefficient to -1
    c0, cinf, ci = c0 * scalefac, cinf * scalefac, gauss(-1)

    def r_mono(q: BasePoint | None) -> dict[str, int]:
        if q is None:
            return {}
        k = keys[q]
        return {ctx.rvar[f"X[{k},{j}]"]: d.h
                for j, d in enumerate(E.divisors_over(q))}

    def build(index: int) -> SparsePoly:
        m0 = {mod0.names[index]: nb}
        m0.update(r_mono(ctx.p0_point))
        minf = {modinf.names[index]: nb}
        minf.update(r_mono(ctx.pinf_point))
        ms = {mod.names[index]: 1}
        ms.update(r_mono(p))
        return (SparsePoly.term(c0, m0) + SparsePoly.term(cinf, minf)
                + SparsePoly.term(ci, ms))

    rows = [ModuleRow(nb, nb, build(0))]
    if include_lowered:
        rows.append(ModuleRow(nb, nb - 2, build(1)))
    return rows


def full_cox_presentation_cyclic(E: EmbeddingData, bound: int = 128) -> FullCoxResult:
    F = E.group
    if not F.is_cyclic:
        raise NotCyclic(f"{F} is not cyclic")
    E.require_valid()
    n = F.n
    nb = F.nbar
    log: list[str] = []
    warnings: list[str] = []

    many_points = len(E.exceptional_points()) >= 3
    if many_points and n >= 3:
        from .diagnostics import special_fiber_normal

        if not special_fiber_normal(E):
            E, log = _augment(E)
    R = cg.class_group(E)
    if many_points and R.group.torsion:
        raise TorsionAfterAugmentation(
            f"class group {R.group} keeps torsion; the reduction to a "
            f"torsion-free model is not combinatorial here")

    keys = R.point_keys
    pts = list(E.exceptional_points())

    # designate the x0 / xinf roles
    if n >= 3:
        p0: BasePoint | None = X0
        pinf: BasePoint | None = XINF
    else:
        p0 = next((p for p in pts if p == point(0, 1)), None)
        pinf = next((p for p in pts if p == point(1, 0)), None)
        if many_points and (p0 is None or pinf is None):
            raise NotAffineShape(
                "for n <= 2 the presentation assumes exceptional points at "
                "[0:1] and [1:0]; move them there by a coordinate change")
        if len(pts) == 2 and not (p0 is not None and pinf is not None):
            raise NotAffineShape(
                "with two exceptional points they must sit at [0:1] and [1:0]")
        if len(pts) == 1 and p0 is None:
            raise NotAffineShape("a single exceptional point must sit at [0:1]")

    uniform = n <= 2
    base_fiber = _fiber_combo(E, keys, pts[0]) if pts else {"Dxd": 1}

    def make_module(p: BasePoint | None, role: str) -> SectionModule:
        if p is not None:
            if p.tag is not None:
                alpha, beta = canonical_coordinates(F)[p.tag]
            else:
                alpha, beta = p.alpha, p.beta
        else:
            alpha, beta = (gauss(0), gauss(1)) if role == "x0" else (gauss(1), gauss(0))
        combo = {f"E[{keys[p]}]": 1} if p is not None else dict(base_fiber)
        if uniform:
            fns = (G3.scale(beta) - G4.scale(alpha), G2.scale(alpha) - G1.scale(beta))
            idx = keys[p][1:] if p is not None else role[1:]
            return SectionModule(keys[p] if p is not None else role, combo,
                                 (f"s{idx}", f"t{idx}"), fns, (1, -1))
        if p is None or p.tag is not None:
            if role == "x0":
                return SectionModule("x0", combo, ("s0", "t0"), (G3, G1), (1, -1))
            return SectionModule("xinf", combo, ("sinf", "tinf"), (G4, G2), (1, -1))
        idx = keys[p][1:]
        names = tuple(_basis_names(nb, idx))
        fns = tuple(
            (G3.pow(nb - k) * G1.pow(k)).scale(beta)
            - (G4.pow(nb - k) * G2.pow(k)).scale(alpha)
            for k in range(nb + 1)
        )
        weights = tuple(nb - 2 * k for k in range(nb + 1))
        return SectionModule(keys[p], combo, names, fns, weights)

    mod0 = make_module(p0, "x0")
    modinf = make_module(pinf, "xinf")
    extra_pts = [p for p in pts if p not in (p0, pinf)]
    extra_modules = [make_module(p, "extra") for p in extra_pts]

    # generator order follows the paper: the points in their listed order
    point_order: list[SectionModule] = []
    for p in pts:
        if p == p0:
            point_order.append(mod0)
        elif p == pinf:
            point_order.append(modinf)
        else:
            point_order.append(extra_modules[extra_pts.index(p)])
    for m, q in ((mod0, p0), (modinf, pinf)):
        if q is None:
            point_order.append(m)

    variables: list[GradedVariable] = []
    for m in point_order:
        deg = R.image_of(m.color_combo)
        for nm, w in zip(m.names, m.weights):
            variables.append(GradedVariable(nm, deg, w, f"V(E^{m.point_key})"))
    rvar: dict[str, str] = {}
    for p in pts:
        k = keys[p]
        divs = E.divisors_over(p)
        for j, _ in enumerate(divs):
            nm = f"r{k[1:]}" + (f"_{j + 1}" if len(divs) > 1 else "")
            rvar[f"X[{k},{j}]"] = nm
            variables.append(GradedVariable(nm, R.images[f"X[{k},{j}]"], 0, f"X[{k},{j}]"))
    if E.dominating_divisor() is not None:
        variables.append(GradedVariable("rdom", R.images["Xdom"], 0, "Xdom"))

    ctx = _Ctx(E, R, mod0, modinf, rvar, bound, warnings, p0, pinf)

    rel_modules: list[RelationModule] = []
    relations: list[SparsePoly] = []
    for i in range(len(point_order)):
        for j in range(i, len(point_order)):
            A, B = point_order[i], point_order[j]
            rows = _pair_rows(A, B, ctx)
            if rows:
                rel_modules.append(RelationModule("M", (A.point_key, B.point_key), tuple(rows)))
                relations.extend(r.poly for r in rows)
    for m in extra_modules:
        p = extra_pts[extra_modules.index(m)]
        rows = _n_rows(m, ctx, E, keys, p, include_lowered=(nb == 1))
        rel_modules.append(RelationModule("N", (m.point_key,), tuple(rows)))
        relations.extend(r.poly for r in rows)

    pres = GradedPresentation(variables, relations, R.group)
    degs = pres.degree_map()
    wts = pres.weight_map()
    for rel in relations:
        relation_degree(rel, degs, R.group)
        relation_b_weight(rel, wts)
    return FullCoxResult(pres, rel_modules, log, warnings, R, E)


# -- Batyrev-Haddad parameters ----------------------------------------------------


@dataclass(frozen=True)
class BatyrevHaddadParams:
    p: int
    q: int
    k: int
    a: int
    b: int
    height: Fraction


def _affine_divisor(E: EmbeddingData) -> GStableDivisorSpec:
    F = E.group
    if not F.is_cyclic:
        raise NotAffineShape("the affine shape requires cyclic F")
    if E.dominating_divisor() is not None or len(E.divisors) != 1:
        raise NotAffineShape("the affine shape has exactly one G-stable divisor")
    d = E.divisors[0]
    if F.n >= 3:
        if d.over != X0 or E.extra_points:
            raise NotAffineShape("the divisor must lie over x0 with no extra points")
    else:
        if len(E.extra_points) != 1 or d.over != E.extra_points[0] \
                or E.extra_points[0] != point(0, 1):
            raise NotAffineShape("for n <= 2 the divisor must lie over the point [0:1]")
    return d


def batyrev_haddad(E: EmbeddingData, verify_degrees: bool = True) -> BatyrevHaddadParams:
    """Height h_P = p/q and the hypersurface data (k, a, b) of the affine
    total coordinate space y^b = t1 t4 - t2 t3."""
    E.require_valid()
    F = E.group
    d = _affine_divisor(E)
    n, nb, u = F.n, F.nbar, F.u
    h, l = d.h, d.l
    alpha_num = h * (nb + 1) + 2 * l * nb
    alpha_den = h * (1 - nb) - 2 * l * nb
    if alpha_den == 0:
        raise HeightOutOfRange("height undefined (denominator vanishes)")
    height = Fraction(alpha_num) / Fraction(alpha_den)
    if not (0 < height <= 1):
        raise HeightOutOfRange(f"alpha = {height} is outside (0, 1]")
    if gcd_pos(h, int(u * l)) != 1:
        raise NotAffineShape(f"h and u*l must be coprime, got ({h}, {u * l})")
    p, q = height.numerator, height.denominator
    k = gcd_pos(q - p, n)
    a = n // k
    b = (q - p) // k
    if b != -(h + 2 * l):
        raise RuntimeError("identity b = -(h + 2l) failed; data outside the affine regime")
    if verify_degrees:
        _check_bh_grading(E, p, q, k)
    return BatyrevHaddadParams(p, q, k, a, b, height)


def _check_bh_grading(E: EmbeddingData, p: int, q: int, k: int):
    """The classes of E^{x0}, X^{x0}, E^{xinf} match the hypersurface degrees
    (-p, ub - v), (k, u), (q, v) with -qu + kv = 1, up to an automorphism of
    Z x Z/d (the automorphisms are (x, y) -> (sx, cy + tx), c invertible)."""
    from math import gcd as _gcd

    R = cg.class_group(E)
    grp = R.group
    if grp.free_rank != 1 or len(grp.torsion) > 1:
        raise RuntimeError(f"affine class group should be Z x Z/d, got {grp}")
    dtor = grp.torsion[0] if grp.torsion else 1
    F = E.group
    if F.n >= 3:
        lbl_e0, lbl_x0, lbl_einf = "E[x0]", "X[x0,0]", "E[xinf]"
        img = {lbl: R.images[lbl] for lbl in (lbl_e0, lbl_x0, lbl_einf)}
    else:
        lbl_e0, lbl_x0 = "E[x1]", "X[x1,0]"
        img = {lbl: R.images[lbl] for lbl in (lbl_e0, lbl_x0)}
        lbl_einf = None
    free = {lbl: v[0] for lbl, v in img.items()}
    tor = {lbl: (v[1] if grp.torsion else 0) for lbl, v in img.items()}
    targets = {lbl_e0: -p, lbl_x0: k}
    if lbl_einf is not None:
        targets[lbl_einf] = q
    sign = None
    for s in (1, -1):
        if all(s * free[lbl] == t for lbl, t in targets.items()):
            sign = s
            break
    if sign is None:
        raise RuntimeError("free parts of the degrees do not match (-p, k, q)")
    if dtor == 1:
        return
    b = -(E.divisors[0].h + 2 * E.divisors[0].l)
    b = int(b)
    # one Bezout pair (u, v) with -q*u + k*v = 1; Aut(Z/d) absorbs the choice
    pairs = [(uu, (1 + q * uu) // k) for uu in range(-6 * dtor, 6 * dtor + 1)
             if k and (1 + q * uu) % k == 0]
    for uu, vv in pairs:
        expected = {lbl_e0: uu * b - vv, lbl_x0: uu}
        if lbl_einf is not None:
            expected[lbl_einf] = vv
        for c in range(1, dtor):
            if _gcd(c, dtor) != 1:
                continue
            for t in range(dtor):
                if all((c * tor[lbl] + t * sign * free[lbl]) % dtor == e % dtor
                       for lbl, e in expected.items()):
                    return
    raise RuntimeError("torsion parts of the degrees do not match any "
                       "automorphism of Z x Z/d")


# -- exact verification of emitted relations --------------------------------------


def verify_full_cox(result: FullCoxResult) -> None:
    """Re-check every emitted relation: Cl- and B-homogeneity plus the exact
    vanishing of the function part in the matrix coordinates of SL2."""
    E = result.embedding
    R = result.class_group
    pres = result.presentation
    degs = pres.degree_map()
    wts = pres.weight_map()
    fn_map = _full_cox_fn_map(E, R)
    for rel in pres.relations:
        relation_degree(rel, degs, R.group)
        relation_b_weight(rel, wts)
        acc = GPoly()
        for mono, c in rel.terms.items():
            f = GPoly.const(1)
            for v, e in mono:
                f = f * fn_map[v].pow(e)
            acc = acc + f.scale(c)
        if not acc.is_zero():
            raise RuntimeError("relation does not vanish identically on the orbit")


def _full_cox_fn_map(E: EmbeddingData, R: cg.ClassGroupResult) -> dict[str, GPoly]:
    """Function parts of the full-presentation variables (r sections are 1)."""
    F = E.group
    n, nb = F.n, F.nbar
    keys = R.point_keys
    pts = list(E.exceptional_points())
    uniform = n <= 2
    fn: dict[str, GPoly] = {}
    if n >= 3:
        fn["s0"], fn["t0"] = G3, G1
        fn["sinf"], fn["tinf"] = G4, G2
        for p in E.extra_points:
            idx = keys[p][1:]
            names = _basis_names(nb, idx)
            for k, nm in enumerate(names):
                fn[nm] = ((G3.pow(nb - k) * G1.pow(k)).scale(p.beta)
                          - (G4.pow(nb - k) * G2.pow(k)).scale(p.alpha))
    else:
        def put(idx, alpha, beta):
            fn[f"s{idx}"] = G3.scale(beta) - G4.scale(alpha)
            fn[f"t{idx}"] = G2.scale(alpha) - G1.scale(beta)

        for p in pts:
            put(keys[p][1:], p.alpha, p.beta)
        if not any(p == point(0, 1) for p in pts):
            put("0", gauss(0), gauss(1))
        if not any(p == point(1, 0) for p in pts):
            put("inf", gauss(1), gauss(0))
    for v in _all_r_names(E, keys):
        fn[v] = GPoly.const(1)
    return fn


def _all_r_names(E: EmbeddingData, keys: dict) -> list[str]:
    out = []
    for p in E.exceptional_points():
        k = keys[p]
        divs = E.divisors_over(p)
        for j, _ in enumerate(divs):
            out.append(f"r{k[1:]}" + (f"_{j + 1}" if len(divs) > 1 else ""))
    if E.dominating_divisor() is not None:
        out.append("rdom")
    return out


def verify_cox_u(E: EmbeddingData, P: GradedPresentation) -> None:
    """Exact vanishing of the cox_u relations: cyclic groups are checked in
    the matrix coordinates, polyhedral ones in the subregular semi-invariants
    modulo the single exceptional relation."""
    F = E.group
    degs = P.degree_map()
    wts = P.weight_map()
    R = cg.class_group(E)
    for rel in P.relations:
        relation_degree(rel, degs, R.group)
        relation_b_weight(rel, wts)
    if F.is_cyclic:
        nb = F.nbar
        keys = R.point_keys
        fn: dict[str, GPoly] = {"a": G3.pow(nb), "b": G4.pow(nb)}
        for p in E.exceptional_points():
            k = keys[p]
            if p.tag == "x0":
                fn[f"s{k[1:]}"] = G3
            elif p.tag == "xinf":
                fn[f"s{k[1:]}"] = G4
            else:
                fn[f"sp{k[1:]}"] = G3.pow(nb).scale(p.beta) - G4.pow(nb).scale(p.alpha)
            divs = E.divisors_over(p)
            for j, _ in enumerate(divs):
                nm = (f"r{k[1:]}" if p.tag else f"rp{k[1:]}") + (
                    f"_{j + 1}" if len(divs) > 1 else "")
                fn[nm] = GPoly.const(1)
        if E.dominating_divisor() is not None:
            fn["rdom"] = GPoly.const(1)
        for rel in P.relations:
            acc = GPoly()
            for mono, c in rel.terms.items():
                f = GPoly.const(1)
                for v, e in mono:
                    f = f * fn[v].pow(e)
                acc = acc + f.scale(c)
            if not acc.is_zero():
                raise RuntimeError("cox_u relation does not vanish on the orbit")
    else:
        _verify_cox_u_polyhedral(E, P, R)


def _verify_cox_u_polyhedral(E: EmbeddingData, P: GradedPresentation,
                             R: cg.ClassGroupResult) -> None:
    """Check relations in k[f_v, f_e, f_f] modulo the exceptional relation."""
    F = E.group
    mult = F.canonical_multiplicities()
    nv, ne, nf = mult["xv"], mult["xe"], mult["xf"]
    lam = exceptional_relation_scalar(F)
    if F.kind == "dihedral":
        c_v, c_e = gauss(-1), gauss(1)  # -f_v^2 + f_e^2 + lam f_f^n = 0
    else:
        c_v, c_e = gauss(1), gauss(1)  # f_v^a + f_e^2 + f_f^c = 0, lam = 1
    # rewrite rule: ff^nf = -(c_v fv^nv + c_e fe^ne) / lam

    def reduce3(terms: dict[tuple[int, int, int], GaussianRational]):
        out: dict[tuple[int, int, int], GaussianRational] = {}
        work = list(terms.items())
        while work:
            (ev, ee, ef), c = work.pop()
            if not c:
                continue
            if ef >= nf:
                base = (ev, ee, ef - nf)
                inv = lam.inverse()
                work.append(((base[0] + nv, base[1], base[2]), -c * c_v * inv))
                work.append(((base[0], base[1] + ne, base[2]), -c * c_e * inv))
                continue
            key = (ev, ee, ef)
            cur = out.get(key, gauss(0)) + c
            if cur:
                out[key] = cur
            else:
                out.pop(key, None)
        return out

    def fmul(t1, t2):
        acc: dict[tuple[int, int, int], GaussianRational] = {}
        for m1, a in t1.items():
            for m2, b in t2.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                acc[m] = acc.get(m, gauss(0)) + a * b
        return reduce3(acc)

    def fpow(t, k):
        out = {(0, 0, 0): gauss(1)}
        for _ in range(k):
            out = fmul(out, t)
        return out

    one = {(0, 0, 0): gauss(1)}
    keys = R.point_keys
    fn: dict[str, dict] = {
        "a": {(nv, 0, 0): gauss(1)},
        "b": {(0, ne, 0): gauss(-1)},
        "sv": {(1, 0, 0): gauss(1)},
        "se": {(0, 1, 0): gauss(1)},
        "sf": {(0, 0, 1): gauss(1)},
    }
    for p in E.extra_points:
        k = keys[p]
        fn[f"sp{k[1:]}"] = reduce3({
            (nv, 0, 0): gauss(p.beta),
            (0, ne, 0): gauss(p.alpha),
        })
    for v in P.variables:
        if v.name.startswith("r"):
            fn[v.name] = dict(one)
    for rel in P.relations:
        acc: dict = {}
        for mono, c in rel.terms.items():
            f = dict(one)
            for vname, e in mono:
                f = fmul(f, fpow(fn[vname], e))
            for m, a in f.items():
                acc[m] = acc.get(m, gauss(0)) + a * c
        acc = reduce3(acc)
        if acc:
            raise RuntimeError("polyhedral cox_u relation does not vanish")
