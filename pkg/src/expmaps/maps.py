"""Exponential maps on presented domains.

A map is given by generator images in A[U].  Verification checks, fully
symbolically, that the images respect the relation, restore the identity
at U = 0, and satisfy the composition law phi_S phi_U = phi_{S+U}.
Checking on generators suffices because both sides are homomorphisms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebras import AlgebraElement, AlgebraPresentation
from .errors import (
    InvalidArgs,
    MixedRing,
    NonDivisibleDegree,
    NotInvariantFraction,
    RecursionNoProgress,
    TrivialMap,
    ZeroDenominator,
)
from .fields import binom_residue
from .polynomials import NEG_INF, Polynomial, normal_form


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: Optional[Polynomial] = None
    detail: str = ""

    def render(self) -> str:
        line = f"{self.name}: {'PASS' if self.passed else 'FAIL'}"
        if not self.passed and self.witness is not None:
            line += f"  witness: {self.witness.render()}"
        if self.detail:
            line += f"  ({self.detail})"
        return line


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)
    trivial: bool = False

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [c.render() for c in self.checks]
        if self.trivial:
            lines.append("note: the map is the standard inclusion (trivial)")
        return "\n".join(lines)

    def first_witness(self) -> Optional[Polynomial]:
        for c in self.checks:
            if not c.passed and c.witness is not None:
                return c.witness
        return None


class ExponentialMap:
    """A candidate exponential map, defined by generator images in A[U]."""

    def __init__(self, algebra: AlgebraPresentation, images: Dict[str, Polynomial]):
        self.algebra = algebra
        missing = set(algebra.var_names) - set(images)
        if missing:
            raise InvalidArgs(f"missing images for generators: {sorted(missing)}")
        self.images: Dict[str, Polynomial] = {}
        for name, img in images.items():
            if name not in algebra.var_names:
                raise InvalidArgs(f"image given for unknown generator {name!r}")
            if img.ring != algebra.uring:
                img = img.lift(algebra.uring)
            self.images[name] = self._reduce_u(img)

    def _reduce_u(self, f: Polynomial) -> Polynomial:
        if self.algebra.relation.is_zero():
            return f
        return normal_form(f, self.algebra.relation_u, self.algebra.order)

    # -- basic application ------------------------------------------------

    def apply_poly(self, f: Polynomial) -> Polynomial:
        """Substitute generator images into a raw polynomial over A's ring."""
        if f.ring != self.algebra.ring:
            raise MixedRing(f"polynomial over {f.ring}, expected {self.algebra.ring}")
        return self._reduce_u(f.substitute(self.images, self.algebra.uring))

    def apply(self, a: AlgebraElement) -> Polynomial:
        """phi(a) in A[U], every U-coefficient in normal form."""
        if a.owner != self.algebra:
            raise MixedRing("element of a different algebra")
        return self.apply_poly(a.rep)

    def coefficient_D(self, n: int, a: AlgebraElement) -> AlgebraElement:
        """D^n(a): the U^n-coefficient of phi(a)."""
        if n == 0:
            return a
        parts = self.apply(a).coefficients_in("U")
        part = parts.get(n)
        if part is None:
            return self.algebra.zero()
        return self.algebra.element(part)

    def phi_degree(self, a: AlgebraElement):
        """deg_U(phi(a)); NEG_INF for the zero element."""
        return self.apply(a).degree_in("U")

    def is_invariant(self, a: AlgebraElement) -> bool:
        return self.apply(a) == a.rep.lift(self.algebra.uring)

    def is_trivial(self) -> bool:
        u = self.algebra.uring
        return all(self.images[n] == u.var(n) for n in self.algebra.var_names)

    # -- axiom verification ----------------------------------------------

    def verify(self) -> VerificationReport:
        report = VerificationReport(trivial=self.is_trivial())
        alg = self.algebra

        if alg.relation.is_zero():
            report.checks.append(
                CheckResult("well-defined", True, detail="free ring, nothing to check")
            )
        else:
            residue = self.apply_poly(alg.relation)
            report.checks.append(
                CheckResult("well-defined", residue.is_zero(), residue or None)
            )

        eps_witness = None
        for name in alg.var_names:
            at_zero = self.images[name].substitute(
                {**{v: alg.ring.var(v) for v in alg.var_names}, "U": alg.ring.zero()},
                alg.ring,
            )
            diff = alg.reduce(at_zero - alg.ring.var(name))
            if diff:
                eps_witness = diff
                break
        report.checks.append(
            CheckResult("identity-at-zero", eps_witness is None, eps_witness)
        )

        su = alg.suring
        base = {v: su.var(v) for v in alg.var_names}
        images_s = {
            v: self.images[v].substitute({**base, "U": su.var("S")}, su)
            for v in alg.var_names
        }
        s_plus_u = su.var("S") + su.var("U")
        comp_witness = None
        for name in alg.var_names:
            lhs = self.images[name].substitute(
                {**images_s, "U": su.var("U")}, su
            )
            rhs = self.images[name].substitute({**base, "U": s_plus_u}, su)
            diff = lhs - rhs
            if not alg.relation.is_zero():
                diff = normal_form(diff, alg.relation_su, alg.order)
            if diff:
                comp_witness = diff
                break
        report.checks.append(
            CheckResult("composition", comp_witness is None, comp_witness)
        )
        return report

    # -- derived checks ---------------------------------------------------

    def check_iterative(self, i: int, j: int, a: AlgebraElement) -> bool:
        """D^i D^j = C(i+j, i) D^{i+j} on a."""
        lhs = self.coefficient_D(i, self.coefficient_D(j, a))
        rhs = self.coefficient_D(i + j, a).scale(
            binom_residue(i + j, i, self.algebra.field)
        )
        return lhs == rhs

    def check_leibniz(self, n: int, a: AlgebraElement, b: AlgebraElement) -> bool:
        """D^n(ab) = sum_{i+j=n} D^i(a) D^j(b)."""
        lhs = self.coefficient_D(n, a * b)
        rhs = self.algebra.zero()
        for i in range(n + 1):
            rhs = rhs + self.coefficient_D(i, a) * self.coefficient_D(n - i, b)
        return lhs == rhs

    def __repr__(self):
        pairs = ", ".join(
            f"{n} -> {img.render(self.algebra.order)}" for n, img in self.images.items()
        )
        return f"ExponentialMap({pairs})"


def verify(phi: ExponentialMap) -> VerificationReport:
    return phi.verify()


def min_positive_degree(
    phi: ExponentialMap,
    search_bound: int = 50,
    rng: Optional[random.Random] = None,
) -> Tuple[AlgebraElement, int]:
    """Element of minimal positive phi-degree among candidates.

    Heuristic candidate search: generators, their D-images, and random
    combinations.  Global minimality over all of A is not guaranteed;
    catalog tests cross-check by bounded brute force.
    """
    alg = phi.algebra
    candidates: List[AlgebraElement] = []
    for name in alg.var_names:
        g = alg.gen(name)
        candidates.append(g)
        top = phi.phi_degree(g)
        if top is not NEG_INF:
            for i in range(1, int(top) + 1):
                d = phi.coefficient_D(i, g)
                if d:
                    candidates.append(d)
    rng = rng or random.Random(0)
    p = alg.field.characteristic
    for _ in range(search_bound):
        a, b = rng.choice(candidates), rng.choice(candidates)
        c = rng.randrange(1, p) if p else rng.randrange(1, 6)
        candidates.append(a + b.scale(alg.field.coeff(c)))

    best: Optional[Tuple[AlgebraElement, int]] = None
    for cand in candidates:
        d = phi.phi_degree(cand)
        if d is NEG_INF or d <= 0:
            continue
        if best is None or d < best[1]:
            best = (cand, int(d))
    if best is None:
        raise TrivialMap("no candidate has positive phi-degree")
    return best


def check_power_support(phi: ExponentialMap, x_min: AlgebraElement) -> bool:
    """Nonzero D^i(x_min), i >= 1, occur only at p-powers (at i = 1 in
    characteristic 0), and each is invariant."""
    top = phi.phi_degree(x_min)
    if top is NEG_INF:
        return False
    p = phi.algebra.field.characteristic
    for i in range(1, int(top) + 1):
        d = phi.coefficient_D(i, x_min)
        if not d:
            continue
        if not phi.is_invariant(d):
            return False
        if p == 0:
            if i != 1:
                return False
        else:
            k = i
            while k % p == 0:
                k //= p
            if k != 1:
                return False
    return True


def check_degree_divisibility(
    phi: ExponentialMap, n: int, samples: Sequence[AlgebraElement]
) -> bool:
    """n divides deg_phi(a) for every nonzero sample."""
    for a in samples:
        d = phi.phi_degree(a)
        if d is NEG_INF:
            continue
        if int(d) % n != 0:
            return False
    return True


@dataclass
class LocalizationExpression:
    """a = c^{-m} * sum_i coeffs[i] * x^i with every coeffs[i] invariant."""

    coeffs: Dict[int, AlgebraElement]
    c: AlgebraElement
    x: AlgebraElement
    m: int

    def numerator(self) -> AlgebraElement:
        out = self.x.owner.zero()
        for i, h in self.coeffs.items():
            out = out + h * self.x ** i
        return out

    def reconstructs(self, a: AlgebraElement) -> bool:
        return self.c ** self.m * a == self.numerator()


def express_in_localization(
    phi: ExponentialMap, x_min: AlgebraElement, a: AlgebraElement
) -> LocalizationExpression:
    """Write a inside A^phi[c^{-1}][x_min] by degree-dropping recursion.

    c = D^n(x_min) with n the minimal positive degree; at every step the
    element c^l a - D^{ln}(a) x_min^l has strictly smaller phi-degree.
    """
    n = phi.phi_degree(x_min)
    if n is NEG_INF or n <= 0:
        raise InvalidArgs("x_min must have positive phi-degree")
    n = int(n)
    c = phi.coefficient_D(n, x_min)

    def rec(elem: AlgebraElement) -> Tuple[Dict[int, AlgebraElement], int]:
        if phi.is_invariant(elem):
            return {0: elem}, 0
        d = int(phi.phi_degree(elem))
        if d % n:
            raise NonDivisibleDegree(
                f"phi-degree {d} not divisible by {n}; x_min was not minimal"
            )
        l = d // n
        lead = phi.coefficient_D(d, elem)
        y = c ** l * elem - lead * x_min ** l
        ydeg = phi.phi_degree(y)
        if ydeg is not NEG_INF and ydeg >= d:
            raise RecursionNoProgress("phi-degree failed to drop")
        coeffs, m_prime = rec(y)
        coeffs = dict(coeffs)
        bump = c ** m_prime * lead
        coeffs[l] = coeffs.get(l, phi.algebra.zero()) + bump
        return coeffs, l + m_prime

    coeffs, m = rec(a)
    coeffs = {i: h for i, h in coeffs.items() if h}
    return LocalizationExpression(coeffs, c, x_min, m)


@dataclass
class FractionWitness:
    degree: int
    num: AlgebraElement  # D^n(a)
    den: AlgebraElement  # D^n(b)


def fraction_invariant_witness(
    phi: ExponentialMap, a: AlgebraElement, b: AlgebraElement
) -> FractionWitness:
    """Decide invariance of a/b via a*phi(b) = b*phi(a); return the
    leading-coefficient witness pair, or raise NotInvariantFraction."""
    if not b:
        raise ZeroDenominator("fraction with zero denominator")
    alg = phi.algebra
    lhs = phi._reduce_u(a.rep.lift(alg.uring) * phi.apply(b))
    rhs = phi._reduce_u(b.rep.lift(alg.uring) * phi.apply(a))
    if lhs != rhs:
        raise NotInvariantFraction("U-terms fail to cancel")
    n = int(phi.phi_degree(b))
    return FractionWitness(n, phi.coefficient_D(n, a), phi.coefficient_D(n, b))
