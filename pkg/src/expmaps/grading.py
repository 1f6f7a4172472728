"""Homogenization of exponential maps along a weight-induced filtration.

The filtration degree of a quotient-ring element is computed through the
Laurent model, the graded model is presented by the top part of the
relation, and the homogenized map is assembled from the support sets
where grdeg(D^n(a)) + n*grdeg(U) attains grdeg(a).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set

from . import linalg
from .algebras import (
    AlgebraElement,
    AlgebraPresentation,
    filtration_degree,
    laurent_embed,
)
from .errors import (
    HomogenizationNotExponential,
    InvalidArgs,
    NoLaurentModel,
    TrivialMap,
    ZeroElement,
)
from .maps import ExponentialMap
from .polynomials import NEG_INF, PolyRing, Polynomial, WeightVector


class FiltrationContext:
    """An algebra with a weight vector and the derived graded model."""

    def __init__(self, algebra: AlgebraPresentation, weights: WeightVector):
        self.algebra = algebra
        self.weights = self._effective_weights(weights)
        self.graded_model = self._build_graded_model()

    def _effective_weights(self, weights: WeightVector) -> WeightVector:
        """Weights with the solved variable pinned to its Laurent degree."""
        if self.algebra.laurent_expr is None:
            return weights
        v = self.algebra.solve_var
        computed = self.algebra.laurent_expr.weighted_degree(weights)
        given = dict(weights.weights).get(v)
        if given is not None and Fraction(given) != computed:
            raise InvalidArgs(
                f"weight of solved variable {v!r} is {given}, "
                f"but its Laurent image has degree {computed}"
            )
        return weights.updated(v, computed)

    def _build_graded_model(self) -> AlgebraPresentation:
        alg = self.algebra
        if alg.relation.is_zero():
            return alg
        top = alg.relation.top_component(self.weights)
        solve_var = alg.solve_var
        if solve_var is not None:
            try:
                return AlgebraPresentation(
                    alg.field, alg.var_names, top, alg.order, solve_var
                )
            except InvalidArgs:
                pass  # top relation no longer solvable for that variable
        return AlgebraPresentation(alg.field, alg.var_names, top, alg.order)

    def grdeg(self, a: AlgebraElement):
        return filtration_degree(a, self.weights)

    def __repr__(self):
        return f"FiltrationContext({self.algebra!r}, weights={dict(self.weights.weights)})"


def compute_grdegU(ctx: FiltrationContext, phi: ExponentialMap) -> Fraction:
    """min over generators x and i >= 1 with D^i(x) != 0 of
    (grdeg(x) - grdeg(D^i(x))) / i."""
    if phi.algebra != ctx.algebra:
        raise InvalidArgs("map and context live on different algebras")
    candidates: List[Fraction] = []
    for name in ctx.algebra.var_names:
        g = ctx.algebra.gen(name)
        gdeg = ctx.grdeg(g)
        top = phi.phi_degree(g)
        if top is NEG_INF:
            continue
        for i in range(1, int(top) + 1):
            d = phi.coefficient_D(i, g)
            if d:
                candidates.append(Fraction(gdeg - ctx.grdeg(d), i))
    if not candidates:
        raise TrivialMap("every D^i(x) vanishes for i >= 1")
    return min(candidates)


def support_set(
    ctx: FiltrationContext, phi: ExponentialMap, a: AlgebraElement
) -> Set[int]:
    """The n with grdeg(D^n(a)) + n*grdeg(U) = grdeg(a); always contains 0."""
    if not a:
        raise ZeroElement("support set of the zero element")
    gu = compute_grdegU(ctx, phi)
    adeg = ctx.grdeg(a)
    top = int(phi.phi_degree(a))
    out = set()
    for n in range(top + 1):
        d = phi.coefficient_D(n, a)
        if d and ctx.grdeg(d) + n * gu == adeg:
            out.add(n)
    return out


def _common_laurent_ring(r1: PolyRing, r2: PolyRing) -> PolyRing:
    laurent = {
        n for n, f in zip(r1.vars.names, r1.vars.laurent) if f
    } | {n for n, f in zip(r2.vars.names, r2.vars.laurent) if f}
    return r1.with_laurent(laurent)


def _from_laurent(
    graded: AlgebraPresentation, image: Polynomial, degree_hint: int
) -> AlgebraElement:
    """Find the graded-model element whose Laurent embedding equals image.

    Exact linear algebra over normal-form monomials of bounded degree;
    the bound escalates a few times before giving up.
    """
    if not graded.has_laurent_model() or graded.relation.is_zero():
        raise NoLaurentModel("graded model has no Laurent solution")
    for bound in (degree_hint, degree_hint + 2, degree_hint + 4, degree_hint + 6):
        basis = graded.monomial_basis(bound)
        embeds = [laurent_embed(graded.element(m)) for m in basis]
        ring = _common_laurent_ring(image.ring, graded.laurent_ring)
        embeds = [e.lift(ring) for e in embeds]
        target_poly = image.lift(ring)
        support = set(target_poly.terms)
        for e in embeds:
            support.update(e.terms)
        monomials = sorted(support)
        index = {m: i for i, m in enumerate(monomials)}
        field = graded.field

        def vec(p):
            v = [field.zero] * len(monomials)
            for exps, c in p.terms.items():
                v[index[exps]] = c
            return v

        solution = linalg.solve_columns(
            [vec(e) for e in embeds], vec(target_poly), field
        )
        if solution is not None:
            out = graded.ring.zero()
            for c, m in zip(solution, basis):
                if c:
                    out = out + m.scale(c)
            return graded.element(out)
    raise InvalidArgs("could not re-express the top part in the graded model")


def top_part(ctx: FiltrationContext, a: AlgebraElement) -> AlgebraElement:
    """Top weighted-homogeneous component of a, as a graded-model element."""
    if not a:
        raise ZeroElement("the zero element has no top part")
    if ctx.algebra.relation.is_zero():
        return ctx.graded_model.element(a.rep.top_component(ctx.weights))
    image = laurent_embed(a).top_component(ctx.weights)
    hint = max(int(a.total_degree()), 1)
    return _from_laurent(ctx.graded_model, image, hint)


def homogenize_map(ctx: FiltrationContext, phi: ExponentialMap) -> ExponentialMap:
    """The homogenized map on the graded model, fully re-verified.

    The top parts of a verified map always assemble into an exponential
    map on the associated graded ring, so a verification failure here
    signals an internal inconsistency and is raised with the full report.
    """
    if phi.is_trivial():
        raise TrivialMap("cannot homogenize the standard inclusion")
    graded = ctx.graded_model
    uring = graded.uring
    u = uring.var("U")
    images: Dict[str, Polynomial] = {}
    for name in ctx.algebra.var_names:
        g = ctx.algebra.gen(name)
        image = uring.zero()
        for n in sorted(support_set(ctx, phi, g)):
            piece = top_part(ctx, phi.coefficient_D(n, g))
            image = image + piece.rep.lift(uring) * u ** n
        images[name] = image
    phibar = ExponentialMap(graded, images)
    report = phibar.verify()
    if not report.ok:
        raise HomogenizationNotExponential(
            "homogenized map failed verification:\n" + report.render(), report
        )
    if phibar.is_trivial():
        raise HomogenizationNotExponential(
            "homogenized map is trivial although the input was not", report
        )
    return phibar


def check_invariant_top_parts(
    ctx: FiltrationContext,
    phi: ExponentialMap,
    samples: Sequence[AlgebraElement],
    phibar: Optional[ExponentialMap] = None,
) -> bool:
    """Top parts of invariant samples must be invariant for the
    homogenized map."""
    if phibar is None:
        phibar = homogenize_map(ctx, phi)
    for a in samples:
        if not a:
            continue
        if not phibar.is_invariant(top_part(ctx, a)):
            return False
    return True
