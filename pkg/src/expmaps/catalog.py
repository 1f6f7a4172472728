"""Built-in constructions: the Russell hypersurface with its two maps,
coordinate maps on free rings, the char-p homogenization example, and
the c1*a^n + c2*b^m invariance lemma checker/explorer."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebras import (
    AlgebraElement,
    AlgebraPresentation,
    subalgebra_intersection_bounded,
    subalgebra_membership_bounded,
)
from .errors import (
    InvalidArgs,
    InvalidCharacteristic,
    InvalidExponents,
    NonInvariantScalars,
)
from .fields import FieldSpec
from .grading import FiltrationContext, compute_grdegU, homogenize_map
from .maps import ExponentialMap
from .polynomials import NEG_INF, MonomialOrder, Polynomial, WeightVector


@dataclass
class CatalogEntry:
    name: str
    algebra: AlgebraPresentation
    maps: Dict[str, ExponentialMap] = field(default_factory=dict)
    weights: Dict[str, WeightVector] = field(default_factory=dict)
    documented_facts: List[Tuple[str, Callable[[], bool]]] = field(default_factory=list)

    def run_facts(self) -> List[Tuple[str, bool]]:
        return [(desc, bool(check())) for desc, check in self.documented_facts]


def _field(p: int) -> FieldSpec:
    try:
        return FieldSpec(p)
    except InvalidArgs as exc:
        raise InvalidCharacteristic(str(exc)) from None


def russell(p: int = 0) -> CatalogEntry:
    """The Russell hypersurface ring k[x,y,z,t]/(x + x^2 y + z^2 + t^3)
    with its two exponential maps and both weight vectors."""
    fld = _field(p)
    order = MonomialOrder.lex("y", "z", "t", "x")
    ring_vars = ("x", "y", "z", "t")
    tmp_alg = AlgebraPresentation(fld, ring_vars)  # just to build the relation
    ring = tmp_alg.ring
    x, y, z, t = (ring.var(n) for n in ring_vars)
    relation = x + x * x * y + z * z + t ** 3
    algebra = AlgebraPresentation(fld, ring_vars, relation, order, solve_var="y")

    u = algebra.uring
    xu, yu, zu, tu, U = (u.var(n) for n in ("x", "y", "z", "t", "U"))
    two = u.constant(2)
    three = u.constant(3)
    phi1 = ExponentialMap(
        algebra,
        {
            "x": xu,
            "y": yu + two * zu * U - xu ** 2 * U ** 2,
            "z": zu - xu ** 2 * U,
            "t": tu,
        },
    )
    phi2 = ExponentialMap(
        algebra,
        {
            "x": xu,
            "y": yu + three * tu ** 2 * U - three * xu ** 2 * tu * U ** 2
            + xu ** 4 * U ** 3,
            "z": zu,
            "t": tu - xu ** 2 * U,
        },
    )
    w1 = WeightVector.of({"x": -1, "y": 2, "z": 0, "t": 0})
    w2 = WeightVector.of({"x": 6, "y": -6, "z": 3, "t": 2})

    entry = CatalogEntry(
        name=f"russell(char={p})",
        algebra=algebra,
        maps={"phi1": phi1, "phi2": phi2},
        weights={"w1": w1, "w2": w2},
    )

    xe, ye, ze, te = (algebra.gen(n) for n in ring_vars)
    entry.documented_facts = [
        ("phi1 verifies", lambda: phi1.verify().ok),
        ("phi2 verifies", lambda: phi2.verify().ok),
        ("x, t invariant under phi1", lambda: phi1.is_invariant(xe) and phi1.is_invariant(te)),
        ("z, y not invariant under phi1", lambda: not phi1.is_invariant(ze) and not phi1.is_invariant(ye)),
        ("x, z invariant under phi2", lambda: phi2.is_invariant(xe) and phi2.is_invariant(ze)),
        ("t, y not invariant under phi2", lambda: not phi2.is_invariant(te) and not phi2.is_invariant(ye)),
        ("grdegU(w1, phi1) = 2", lambda: compute_grdegU(FiltrationContext(algebra, w1), phi1) == 2),
        ("grdegU(w1, phi2) = 2", lambda: compute_grdegU(FiltrationContext(algebra, w1), phi2) == 2),
        (
            "homogenizations verify on gr(R)",
            lambda: homogenize_map(FiltrationContext(algebra, w1), phi1).verify().ok
            and homogenize_map(FiltrationContext(algebra, w1), phi2).verify().ok,
        ),
    ]
    return entry


@dataclass
class InvariantSuiteReport:
    generator_facts: bool
    phi1_membership: bool
    phi2_membership: bool
    intersection_is_powers_of_x: bool
    intersection_basis: List[AlgebraElement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.generator_facts
            and self.phi1_membership
            and self.phi2_membership
            and self.intersection_is_powers_of_x
        )


def russell_invariant_suite(entry: CatalogEntry, d: int = 6) -> InvariantSuiteReport:
    """Bounded-degree confirmation of the invariant-ring claims:
    phi1-invariants sit in <x,t>-products, phi2-invariants in <x,z>,
    and the intersection is span{1, x, ..., x^d}."""
    if d < 3:
        raise InvalidArgs("need d >= 3 to see the relation at work")
    alg = entry.algebra
    phi1, phi2 = entry.maps["phi1"], entry.maps["phi2"]
    x, y, z, t = (alg.gen(n) for n in ("x", "y", "z", "t"))

    gen_facts = (
        phi1.is_invariant(x)
        and phi1.is_invariant(t)
        and not phi1.is_invariant(z)
        and not phi1.is_invariant(y)
        and phi2.is_invariant(x)
        and phi2.is_invariant(z)
        and not phi2.is_invariant(t)
        and not phi2.is_invariant(y)
    )

    def membership(phi, gens):
        for mono in alg.monomial_basis(d):
            elem = alg.element(mono)
            if phi.is_invariant(elem):
                ok, _ = subalgebra_membership_bounded(elem, gens, d)
                if not ok:
                    return False
        return True

    m1 = membership(phi1, [x, t])
    m2 = membership(phi2, [x, z])

    basis = subalgebra_intersection_bounded([x, t], [x, z], d)
    expected = {x ** i for i in range(d + 1)}
    inter_ok = set(basis) == expected

    return InvariantSuiteReport(gen_facts, m1, m2, inter_ok, basis)


def coordinate_maps(n: int, p: int = 0, d: int = 5) -> CatalogEntry:
    """The free ring k[x1..xn] with its n coordinate translation maps."""
    if not 1 <= n <= 4:
        raise InvalidArgs("supported for 1 <= n <= 4")
    fld = _field(p)
    names = tuple(f"x{i}" for i in range(1, n + 1))
    algebra = AlgebraPresentation(fld, names)
    u = algebra.uring
    U = u.var("U")
    maps = {}
    for i, target in enumerate(names, start=1):
        images = {v: u.var(v) + (U if v == target else u.zero()) for v in names}
        maps[f"phi{i}"] = ExponentialMap(algebra, images)

    entry = CatalogEntry(name=f"coordinate_maps(n={n}, char={p})", algebra=algebra, maps=maps)

    def no_common_invariant_monomial() -> bool:
        # Bounded shadow of ak(k^[n]) = k: every non-constant monomial of
        # degree <= d moves under some coordinate map.
        for mono in algebra.monomial_basis(d):
            elem = algebra.element(mono)
            if elem.total_degree() == 0:
                continue
            if all(phi.is_invariant(elem) for phi in maps.values()):
                return False
        return True

    entry.documented_facts = [
        ("all coordinate maps verify", lambda: all(phi.verify().ok for phi in maps.values())),
        (
            f"no non-constant monomial of degree <= {d} is fixed by every map",
            no_common_invariant_monomial,
        ),
    ]
    return entry


def char_p_square_entry(p: int = 2) -> CatalogEntry:
    """k[X, Y] in characteristic p with Y -> Y + X*U^p (X fixed)."""
    fld = _field(p)
    if p == 0:
        raise InvalidCharacteristic("this entry needs prime characteristic")
    algebra = AlgebraPresentation(fld, ("X", "Y"))
    u = algebra.uring
    phi = ExponentialMap(
        algebra,
        {"X": u.var("X"), "Y": u.var("Y") + u.var("X") * u.var("U") ** p},
    )
    entry = CatalogEntry(name=f"char_p_square(p={p})", algebra=algebra, maps={"phi": phi})

    def minimal_positive_degree_is_p() -> bool:
        degrees = []
        for mono in algebra.monomial_basis(5):
            d = phi.phi_degree(algebra.element(mono))
            if d != NEG_INF and d > 0:
                degrees.append(int(d))
        return min(degrees) == p

    entry.documented_facts = [
        ("phi verifies", lambda: phi.verify().ok),
        (f"minimal positive degree is {p}", minimal_positive_degree_is_p),
    ]
    return entry


def example2(p: int, alpha, beta) -> Tuple[Fraction, Dict[str, Polynomial]]:
    """k[X,Y] in characteristic p with phi(Y) = Y + U + X*U^p, graded by
    (alpha, beta); returns (grdegU, homogenized generator images)."""
    fld = _field(p)
    if p == 0:
        raise InvalidCharacteristic("the case split needs prime characteristic")
    algebra = AlgebraPresentation(fld, ("X", "Y"))
    u = algebra.uring
    phi = ExponentialMap(
        algebra,
        {
            "X": u.var("X"),
            "Y": u.var("Y") + u.var("U") + u.var("X") * u.var("U") ** p,
        },
    )
    ctx = FiltrationContext(
        algebra, WeightVector.of({"X": Fraction(alpha), "Y": Fraction(beta)})
    )
    gu = compute_grdegU(ctx, phi)
    phibar = homogenize_map(ctx, phi)
    return gu, dict(phibar.images)


@dataclass
class Lemma0Result:
    hypotheses_hold: bool
    conclusion_holds: bool
    combination: Optional[AlgebraElement] = None


def lemma0_check(
    phi: ExponentialMap,
    c1: AlgebraElement,
    c2: AlgebraElement,
    a: AlgebraElement,
    b: AlgebraElement,
    n: int,
    m: int,
) -> Lemma0Result:
    """Evaluate the hypotheses and conclusion of the c1*a^n + c2*b^m
    invariance implication for one instance."""
    if n < 2 or m < 2:
        raise InvalidExponents("need n, m >= 2")
    if not c1 or not c2 or not phi.is_invariant(c1) or not phi.is_invariant(c2):
        raise NonInvariantScalars("c1, c2 must be nonzero invariants")
    combo = c1 * a ** n + c2 * b ** m
    hypotheses = bool(combo) and phi.is_invariant(combo)
    conclusion = phi.is_invariant(a) and phi.is_invariant(b)
    return Lemma0Result(hypotheses, conclusion, combo)


def _is_p_power(i: int, p: int) -> bool:
    if p == 0:
        return False
    while i % p == 0:
        i //= p
    return i == 1


def lemma0_explore(
    phi: ExponentialMap,
    trials: int,
    rng: random.Random,
    invariant_gens: Sequence[AlgebraElement],
    max_degree: int = 3,
) -> List[Tuple[AlgebraElement, AlgebraElement, int, int]]:
    """Search for hypothesis-true/conclusion-false witnesses when n or m
    is a p-power.  Findings are reported, never asserted."""
    p = phi.algebra.field.characteristic
    if p == 0:
        return []
    findings = []
    basis = [phi.algebra.element(mono) for mono in phi.algebra.monomial_basis(max_degree)]
    for _ in range(trials):
        a = _random_combination(rng, basis, phi.algebra)
        b = _random_combination(rng, basis, phi.algebra)
        if not a or not b:
            continue
        n = rng.choice([p, p * p, rng.randrange(2, 5)])
        m = rng.randrange(2, 5)
        if not (_is_p_power(n, p) or _is_p_power(m, p)):
            continue
        c1 = _random_invariant(rng, invariant_gens, phi.algebra)
        c2 = _random_invariant(rng, invariant_gens, phi.algebra)
        if not c1 or not c2:
            continue
        try:
            result = lemma0_check(phi, c1, c2, a, b, n, m)
        except (InvalidExponents, NonInvariantScalars):
            continue
        if result.hypotheses_hold and not result.conclusion_holds:
            findings.append((a, b, n, m))
    return findings


def _random_coeff(rng: random.Random, fld: FieldSpec):
    p = fld.characteristic
    if p:
        return fld.coeff(rng.randrange(p))
    return fld.coeff(rng.randrange(-3, 4))


def _random_combination(rng, basis, algebra, nterms: int = 3):
    out = algebra.zero()
    for _ in range(nterms):
        out = out + algebra.element(rng.choice(basis).rep).scale(
            _random_coeff(rng, algebra.field)
        )
    return out


def _random_invariant(rng, invariant_gens, algebra):
    out = algebra.zero()
    for g in invariant_gens:
        e = rng.randrange(0, 3)
        c = _random_coeff(rng, algebra.field)
        if c:
            out = out + g ** e * c
    return out


def inclusion_map(algebra: AlgebraPresentation) -> ExponentialMap:
    u = algebra.uring
    return ExponentialMap(algebra, {n: u.var(n) for n in algebra.var_names})


def nonexamples(p: int = 0) -> Dict[str, ExponentialMap]:
    """Shipped negative controls for verify()."""
    fld = _field(p)
    kx = AlgebraPresentation(fld, ("X",))
    ux = kx.uring
    psi_bad = ExponentialMap(kx, {"X": ux.var("X") + ux.var("X") * ux.var("U")})
    ky = AlgebraPresentation(fld, ("Y",))
    uy = ky.uring
    phi_sq = ExponentialMap(ky, {"Y": uy.var("Y") + uy.var("U") ** 2})
    return {"psi_bad": psi_bad, "phi_square": phi_sq, "inclusion": inclusion_map(kx)}


def nonexample_suite() -> List[Tuple[str, bool]]:
    """Expected pass/fail pattern over the shipped non-examples."""
    results = []
    for p in (0, 2, 3, 5):
        maps = nonexamples(p)
        psi_report = maps["psi_bad"].verify()
        results.append((f"psi(X)=X+XU fails composition (char {p})", not psi_report.ok))
        sq_report = maps["phi_square"].verify()
        expected_ok = p == 2
        results.append(
            (f"Y -> Y + U^2 {'passes' if expected_ok else 'fails'} (char {p})",
             sq_report.ok == expected_ok)
        )
        inc_report = maps["inclusion"].verify()
        results.append(
            (f"inclusion passes and is flagged trivial (char {p})",
             inc_report.ok and inc_report.trivial)
        )
    return results
