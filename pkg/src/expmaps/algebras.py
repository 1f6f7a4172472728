"""Finitely presented domains A = k[X1..Xn]/(f) and bounded linear algebra.

Elements are kept as normal forms with respect to the single defining
relation, so equality of elements is equality of representatives.  The
optional Laurent model (one variable solved from the relation) supports
weighted filtration degrees.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    BoundTooSmall,
    InvalidArgs,
    MixedRing,
    NoLaurentModel,
    NotADomain,
    ReservedName,
)
from .fields import Coefficient, FieldSpec
from .polynomials import (
    NEG_INF,
    MonomialOrder,
    PolyRing,
    Polynomial,
    VarList,
    WeightVector,
    normal_form,
)

#: Names adjoined formally by exponential maps; never ring variables.
RESERVED_NAMES = ("U", "S")


def solve_relation_for(relation: Polynomial, var: str) -> Polynomial:
    """Solve a relation q*v + r = 0 for v, where q is a single monomial.

    Returns the Laurent polynomial -r/q over the relation's ring with
    Laurent flags switched on for the variables occurring in q.
    """
    ring = relation.ring
    i = ring.vars.index(var)
    linear: Dict[Tuple[int, ...], Coefficient] = {}
    rest: Dict[Tuple[int, ...], Coefficient] = {}
    for exps, c in relation.terms.items():
        if exps[i] == 0:
            rest[exps] = c
        elif exps[i] == 1:
            linear[exps[:i] + (0,) + exps[i + 1 :]] = c
        else:
            raise InvalidArgs(f"relation is not linear in {var!r}")
    if len(linear) != 1:
        raise InvalidArgs(f"coefficient of {var!r} in the relation is not a monomial")
    (q_exps, q_coeff), = linear.items()
    needed = [n for n, e in zip(ring.vars.names, q_exps) if e]
    laurent_ring = ring.with_laurent(needed)
    q = laurent_ring.monomial(q_coeff, q_exps)
    r = Polynomial(ring, rest).lift(laurent_ring)
    return (-r) * q.monomial_inverse()


class AlgebraPresentation:
    """A domain presented by variables and a single relation (maybe zero)."""

    def __init__(
        self,
        field: FieldSpec,
        var_names: Sequence[str],
        relation: Optional[Polynomial] = None,
        order: Optional[MonomialOrder] = None,
        solve_var: Optional[str] = None,
    ):
        for name in var_names:
            if name in RESERVED_NAMES:
                raise ReservedName(f"{name!r} is reserved for adjoined indeterminates")
        self.field = field
        self.ring = PolyRing(field, VarList.of(var_names))
        self.order = order if order is not None else MonomialOrder(tuple(var_names))
        if relation is None:
            relation = self.ring.zero()
        if relation.ring != self.ring:
            relation = relation.lift(self.ring)
        self.relation = relation
        self._domain_sanity_checks()

        self.solve_var = solve_var
        self.laurent_expr: Optional[Polynomial] = None
        self.laurent_ring: PolyRing = self.ring
        if solve_var is not None:
            if relation.is_zero():
                raise InvalidArgs("nothing to solve: the relation is zero")
            self.laurent_expr = solve_relation_for(relation, solve_var)
            self.laurent_ring = self.laurent_expr.ring
            self._validate_laurent_solution()

        self.uring = self.ring.extend(("U",))
        self.suring = self.ring.extend(("S", "U"))
        self.relation_u = relation.lift(self.uring)
        self.relation_su = relation.lift(self.suring)

    def _domain_sanity_checks(self):
        # Irreducibility proper is out of scope; reject only the cheap
        # certain failures so shipped presentations stay honest.
        if self.relation.is_zero():
            return
        if self.relation.total_degree() == 0:
            raise NotADomain("the relation is a nonzero constant")
        for i, name in enumerate(self.ring.vars.names):
            if all(exps[i] > 0 for exps in self.relation.terms):
                raise NotADomain(f"the relation is divisible by {name!r}")

    def _validate_laurent_solution(self):
        mapping = {n: self.laurent_ring.var(n) for n in self.ring.vars.names}
        mapping[self.solve_var] = self.laurent_expr
        if self.relation.substitute(mapping, self.laurent_ring):
            raise InvalidArgs("laurent solution does not satisfy the relation")

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraPresentation)
            and self.ring == other.ring
            and self.relation == other.relation
            and self.order == other.order
            and self.solve_var == other.solve_var
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.relation.terms.items()), self.order))

    def __repr__(self):
        if self.relation.is_zero():
            return f"{self.ring}"
        return f"{self.ring}/({self.relation.render(self.order)})"

    @property
    def var_names(self) -> Tuple[str, ...]:
        return self.ring.vars.names

    def reduce(self, f: Polynomial) -> Polynomial:
        if self.relation.is_zero():
            return f
        return normal_form(f, self.relation, self.order)

    def element(self, f: Polynomial) -> "AlgebraElement":
        if f.ring != self.ring:
            if f.ring.vars.names != self.ring.vars.names or f.ring.field != self.field:
                raise MixedRing(f"polynomial over {f.ring}, expected {self.ring}")
            f = f.lift(self.ring)
        return AlgebraElement(self, self.reduce(f))

    def gen(self, name: str) -> "AlgebraElement":
        return self.element(self.ring.var(name))

    def gens(self) -> List["AlgebraElement"]:
        return [self.gen(n) for n in self.var_names]

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, self.ring.zero())

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.ring.one())

    def constant(self, c) -> "AlgebraElement":
        return AlgebraElement(self, self.ring.constant(c))

    def has_laurent_model(self) -> bool:
        return self.relation.is_zero() or self.laurent_expr is not None

    def monomial_basis(self, d: int) -> List[Polynomial]:
        """Normal-form monomials of total degree <= d, order-descending."""
        if self.relation.is_zero():
            lead = None
        else:
            lead, _ = self.relation.leading_term(self.order)
        basis = []
        for exps in _exponents_up_to(self.ring.nvars, d):
            if lead is not None and all(e >= l for e, l in zip(exps, lead)):
                continue
            basis.append(self.ring.monomial(self.field.one, exps))
        key = self.order.key(self.ring.vars)
        basis.sort(key=lambda m: key(next(iter(m.terms))), reverse=True)
        return basis


def _exponents_up_to(nvars: int, d: int):
    if nvars == 0:
        yield ()
        return
    for e in range(d + 1):
        for rest in _exponents_up_to(nvars - 1, d - e):
            yield (e,) + rest


class AlgebraElement:
    """An element of a presented algebra, stored as its normal form."""

    __slots__ = ("owner", "rep")

    def __init__(self, owner: AlgebraPresentation, rep: Polynomial):
        self.owner = owner
        self.rep = rep

    def _check(self, other: "AlgebraElement"):
        if self.owner != other.owner:
            raise MixedRing("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.owner, self.rep + other.rep)

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.owner, self.rep - other.rep)

    def __mul__(self, other):
        if isinstance(other, Coefficient):
            return AlgebraElement(self.owner, self.rep.scale(other))
        self._check(other)
        return self.owner.element(self.rep * other.rep)

    def __neg__(self):
        return AlgebraElement(self.owner, -self.rep)

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidArgs("negative powers are not defined in the algebra")
        out = self.owner.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: Coefficient) -> "AlgebraElement":
        return AlgebraElement(self.owner, self.rep.scale(c))

    def __bool__(self):
        return bool(self.rep)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.owner == other.owner
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((frozenset(self.rep.terms.items()),))

    def total_degree(self):
        return self.rep.total_degree()

    def render(self) -> str:
        return self.rep.render(self.owner.order)

    def __repr__(self):
        return self.render()


def make_element(algebra: AlgebraPresentation, f: Polynomial) -> AlgebraElement:
    return algebra.element(f)


def laurent_embed(a: AlgebraElement) -> Polynomial:
    """Image of a in the Laurent model (identity on free rings)."""
    owner = a.owner
    if owner.relation.is_zero():
        return a.rep
    if owner.laurent_expr is None:
        raise NoLaurentModel(f"{owner} has no Laurent solution")
    mapping = {n: owner.laurent_ring.var(n) for n in owner.var_names}
    mapping[owner.solve_var] = owner.laurent_expr
    return a.rep.substitute(mapping, owner.laurent_ring)


def filtration_degree(a: AlgebraElement, w: WeightVector):
    """Weighted degree of the Laurent image; NEG_INF for zero."""
    return laurent_embed(a).weighted_degree(w)


def _bounded_products(gens: Sequence[AlgebraElement], d: int):
    """Exponent tuples e with sum(e_i * max(deg g_i, 1)) <= d."""
    weights = [max(int(g.total_degree()), 1) if g else 1 for g in gens]

    def rec(i: int, budget: int):
        if i == len(gens):
            yield ()
            return
        e = 0
        while e * weights[i] <= budget:
            for rest in rec(i + 1, budget - e * weights[i]):
                yield (e,) + rest
            e += 1

    yield from rec(0, d)


def _product(
    owner: AlgebraPresentation, gens: Sequence[AlgebraElement], exps: Sequence[int]
) -> AlgebraElement:
    out = owner.one()
    for g, e in zip(gens, exps):
        if e:
            out = out * g ** e
    return out


def _coordinates(polys: Iterable[Polynomial], monomials: List[Tuple[int, ...]], field):
    index = {m: i for i, m in enumerate(monomials)}
    vectors = []
    for p in polys:
        vec = [field.zero] * len(monomials)
        for exps, c in p.terms.items():
            vec[index[exps]] = c
        vectors.append(vec)
    return vectors


def _monomial_support(polys: Iterable[Polynomial], order: MonomialOrder, vars: VarList):
    support = set()
    for p in polys:
        support.update(p.terms)
    return sorted(support, key=order.key(vars), reverse=True)


def subalgebra_membership_bounded(
    a: AlgebraElement, gens: Sequence[AlgebraElement], d: int
):
    """Decide whether a is a k-linear combination of products of gens of
    bounded total degree, by exact linear algebra over normal forms.

    Returns (True, certificate) with certificate mapping exponent tuples
    over gens to coefficients, or (False, None).
    """
    owner = a.owner
    deg = a.total_degree()
    if deg is not NEG_INF and deg > d:
        raise BoundTooSmall(f"element degree {deg} exceeds bound {d}")
    exponents = list(_bounded_products(gens, d))
    products = [_product(owner, gens, e) for e in exponents]
    monomials = _monomial_support(
        [p.rep for p in products] + [a.rep], owner.order, owner.ring.vars
    )
    columns = _coordinates([p.rep for p in products], monomials, owner.field)
    target = _coordinates([a.rep], monomials, owner.field)[0]
    solution = linalg.solve_columns(columns, target, owner.field)
    if solution is None:
        return False, None
    certificate = {e: c for e, c in zip(exponents, solution) if c}
    return True, certificate


def subalgebra_intersection_bounded(
    gens1: Sequence[AlgebraElement],
    gens2: Sequence[AlgebraElement],
    d: int,
) -> List[AlgebraElement]:
    """Basis of the intersection of the two bounded spans, in reduced
    echelon form over the normal-form monomial basis."""
    if not gens1 and not gens2:
        return []
    owner = (gens1 or gens2)[0].owner
    span1 = [_product(owner, gens1, e) for e in _bounded_products(gens1, d)]
    span2 = [_product(owner, gens2, e) for e in _bounded_products(gens2, d)]
    monomials = _monomial_support(
        [p.rep for p in span1 + span2], owner.order, owner.ring.vars
    )
    vecs1 = _coordinates([p.rep for p in span1], monomials, owner.field)
    vecs2 = _coordinates([p.rep for p in span2], monomials, owner.field)
    basis = []
    for row in linalg.intersect_spans(vecs1, vecs2, owner.field):
        terms = {m: c for m, c in zip(monomials, row) if c}
        basis.append(AlgebraElement(owner, Polynomial(owner.ring, terms)))
    return basis
