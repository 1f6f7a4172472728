"""Sparse multivariate Laurent-capable polynomial arithmetic.

Polynomials are stored as mappings from integer exponent vectors to
nonzero coefficients, over an ordered variable list.  Negative exponents
are permitted only for variables flagged as Laurent.  Everything is
exact; equal polynomials have identical term mappings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .errors import (
    DoesNotSplit,
    InvalidArgs,
    MixedRing,
    NotHomogeneous,
    ZeroPolynomial,
    ZeroRelation,
)
from .fields import Coefficient, FieldSpec

#: Formal degree of the zero polynomial; compares below every rational.
NEG_INF = float("-inf")

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class VarList:
    """Ordered list of distinct variable names with per-variable Laurent flags."""

    names: Tuple[str, ...]
    laurent: Tuple[bool, ...]

    @staticmethod
    def of(names: Iterable[str], laurent: Iterable[str] = ()) -> "VarList":
        names = tuple(names)
        if len(set(names)) != len(names):
            raise InvalidArgs(f"variable names must be distinct: {names}")
        laurent = set(laurent)
        unknown = laurent - set(names)
        if unknown:
            raise InvalidArgs(f"laurent flags for unknown variables: {sorted(unknown)}")
        return VarList(names, tuple(n in laurent for n in names))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidArgs(f"unknown variable {name!r} in {self.names}") from None


@dataclass(frozen=True)
class MonomialOrder:
    """Lexicographic order over a stated variable priority sequence.

    Variables of a ring that do not appear in the priority (e.g. the
    adjoined indeterminates U, S) sort after all listed ones, in ring
    order, so the leading monomial of a relation is stable under ring
    extension.
    """

    priority: Tuple[str, ...]

    @staticmethod
    def lex(*names: str) -> "MonomialOrder":
        return MonomialOrder(tuple(names))

    def key(self, vars: VarList):
        listed = [vars.names.index(n) for n in self.priority if n in vars.names]
        rest = [i for i in range(len(vars.names)) if i not in listed]
        seq = listed + rest

        def _key(exps: Exponents):
            return tuple(exps[i] for i in seq)

        return _key


class PolyRing:
    """A polynomial ring: a field together with a variable list."""

    __slots__ = ("field", "vars")

    def __init__(self, field: FieldSpec, vars: VarList):
        self.field = field
        self.vars = vars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.vars == other.vars
        )

    def __hash__(self):
        return hash((self.field, self.vars))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.vars.names)}]"

    @property
    def nvars(self) -> int:
        return len(self.vars.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(self.field.one)

    def constant(self, c) -> "Polynomial":
        if not isinstance(c, Coefficient):
            c = self.field.coeff(c)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        i = self.vars.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: self.field.one})

    def monomial(self, c, exps: Exponents) -> "Polynomial":
        if not isinstance(c, Coefficient):
            c = self.field.coeff(c)
        if not c:
            return self.zero()
        self._check_exponents(exps)
        return Polynomial(self, {tuple(exps): c})

    def _check_exponents(self, exps: Exponents):
        if len(exps) != self.nvars:
            raise InvalidArgs(f"expected {self.nvars} exponents, got {len(exps)}")
        for e, flag, name in zip(exps, self.vars.laurent, self.vars.names):
            if e < 0 and not flag:
                raise InvalidArgs(f"negative exponent on non-Laurent variable {name!r}")

    def poly(self, terms: Dict[Exponents, Coefficient]) -> "Polynomial":
        out: Dict[Exponents, Coefficient] = {}
        for exps, c in terms.items():
            if c:
                self._check_exponents(exps)
                out[tuple(exps)] = c
        return Polynomial(self, out)

    def extend(self, names: Iterable[str]) -> "PolyRing":
        """Adjoin fresh (non-Laurent) variables at the end of the list."""
        names = tuple(names)
        return PolyRing(
            self.field,
            VarList(self.vars.names + names, self.vars.laurent + (False,) * len(names)),
        )

    def with_laurent(self, names: Iterable[str]) -> "PolyRing":
        laurent = {n for n, f in zip(self.vars.names, self.vars.laurent) if f}
        laurent.update(names)
        return PolyRing(self.field, VarList.of(self.vars.names, laurent))


class Polynomial:
    """Immutable sparse polynomial in canonical form (no zero terms)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Dict[Exponents, Coefficient]):
        self.ring = ring
        self.terms = terms

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise MixedRing(f"cannot combine {self.ring} with {other.ring}")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps)
            s = c if s is None else s + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Polynomial(self.ring, out)

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Coefficient):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponents, Coefficient] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(exps)
                s = c if s is None else s + c
                if s:
                    out[exps] = s
                else:
                    out.pop(exps, None)
        return Polynomial(self.ring, out)

    def scale(self, c: Coefficient) -> "Polynomial":
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            return self.monomial_inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monomial_inverse(self) -> "Polynomial":
        """Inverse of a single-term polynomial, where Laurent flags permit."""
        if len(self.terms) != 1:
            raise InvalidArgs("only monomials are invertible")
        (exps, c), = self.terms.items()
        inv_exps = tuple(-e for e in exps)
        self.ring._check_exponents(inv_exps)
        return Polynomial(self.ring, {inv_exps: c.inverse()})

    def coefficient(self, exps: Exponents) -> Coefficient:
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def constant_term(self) -> Coefficient:
        return self.coefficient((0,) * self.ring.nvars)

    def total_degree(self):
        """Max of exponent sums (absolute values for Laurent exponents)."""
        if not self.terms:
            return NEG_INF
        return max(sum(abs(e) for e in exps) for exps in self.terms)

    def degree_in(self, name: str):
        """Largest exponent of one variable; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        i = self.ring.vars.index(name)
        return max(exps[i] for exps in self.terms)

    def coefficients_in(self, name: str) -> Dict[int, "Polynomial"]:
        """Split into coefficients of powers of one variable.

        The returned polynomials live in the ring with that variable
        dropped.
        """
        i = self.ring.vars.index(name)
        sub = PolyRing(
            self.ring.field,
            VarList(
                self.ring.vars.names[:i] + self.ring.vars.names[i + 1 :],
                self.ring.vars.laurent[:i] + self.ring.vars.laurent[i + 1 :],
            ),
        )
        split: Dict[int, Dict[Exponents, Coefficient]] = {}
        for exps, c in self.terms.items():
            split.setdefault(exps[i], {})[exps[:i] + exps[i + 1 :]] = c
        return {n: Polynomial(sub, terms) for n, terms in split.items()}

    def lift(self, target: PolyRing) -> "Polynomial":
        """Re-express in a ring containing the same variables (by name)."""
        if target == self.ring:
            return self
        positions = [target.vars.index(n) for n in self.ring.vars.names]
        out: Dict[Exponents, Coefficient] = {}
        for exps, c in self.terms.items():
            new = [0] * target.nvars
            for pos, e in zip(positions, exps):
                new[pos] = e
            target._check_exponents(tuple(new))
            out[tuple(new)] = c
        return Polynomial(target, out)

    def project(self, target: PolyRing) -> "Polynomial":
        """Re-express in a ring with fewer variables.

        Every variable carrying a nonzero exponent must exist in the
        target.
        """
        positions = []
        for n in self.ring.vars.names:
            positions.append(target.vars.names.index(n) if n in target.vars.names else None)
        out: Dict[Exponents, Coefficient] = {}
        for exps, c in self.terms.items():
            new = [0] * target.nvars
            for pos, e in zip(positions, exps):
                if pos is None:
                    if e:
                        raise InvalidArgs("cannot drop a variable with nonzero exponent")
                else:
                    new[pos] = e
            target._check_exponents(tuple(new))
            out[tuple(new)] = c
        return Polynomial(target, out)

    def substitute(self, mapping: Dict[str, "Polynomial"], target: PolyRing) -> "Polynomial":
        """Evaluate under variable -> polynomial substitution in a target ring.

        Negative exponents are supported only when the corresponding
        image is an invertible monomial.
        """
        power_cache: Dict[Tuple[str, int], Polynomial] = {}

        def image_power(name: str, e: int) -> Polynomial:
            cached = power_cache.get((name, e))
            if cached is None:
                img = mapping[name]
                cached = img ** e
                power_cache[(name, e)] = cached
            return cached

        if target.field != self.ring.field:
            raise MixedRing("substitution must stay over the same field")
        result = target.zero()
        for exps, c in self.terms.items():
            term = target.constant(c)
            for name, e in zip(self.ring.vars.names, exps):
                if e:
                    term = term * image_power(name, e)
            result = result + term
        return result

    def weighted_degree(self, w: "WeightVector"):
        """Max over terms of the weighted exponent sum; NEG_INF for zero."""
        if not self.terms:
            return NEG_INF
        wv = w.vector(self.ring.vars)
        return max(sum(wi * e for wi, e in zip(wv, exps)) for exps in self.terms)

    def top_component(self, w: "WeightVector") -> "Polynomial":
        """Sum of the terms attaining the weighted degree."""
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no top component")
        wv = w.vector(self.ring.vars)
        graded: Dict[Fraction, Dict[Exponents, Coefficient]] = {}
        for exps, c in self.terms.items():
            d = sum(wi * e for wi, e in zip(wv, exps))
            graded.setdefault(d, {})[exps] = c
        return Polynomial(self.ring, graded[max(graded)])

    def is_homogeneous(self, w: "WeightVector") -> bool:
        if not self.terms:
            return True
        wv = w.vector(self.ring.vars)
        degs = {sum(wi * e for wi, e in zip(wv, exps)) for exps in self.terms}
        return len(degs) == 1

    def leading_term(self, order: MonomialOrder) -> Tuple[Exponents, Coefficient]:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        exps = max(self.terms, key=order.key(self.ring.vars))
        return exps, self.terms[exps]

    def render(self, order: Optional[MonomialOrder] = None) -> str:
        return render(self, order)

    def __repr__(self):
        return render(self)


@dataclass(frozen=True)
class WeightVector:
    """Exact rational weight per variable; missing variables weigh 0."""

    weights: Tuple[Tuple[str, Fraction], ...]

    @staticmethod
    def of(mapping: Dict[str, object]) -> "WeightVector":
        return WeightVector(tuple((n, Fraction(v)) for n, v in mapping.items()))

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.weights)

    def weight(self, name: str) -> Fraction:
        return dict(self.weights).get(name, Fraction(0))

    def vector(self, vars: VarList) -> Tuple[Fraction, ...]:
        d = dict(self.weights)
        return tuple(d.get(n, Fraction(0)) for n in vars.names)

    def updated(self, name: str, value: Fraction) -> "WeightVector":
        items = [(n, v) for n, v in self.weights if n != name]
        items.append((name, Fraction(value)))
        return WeightVector(tuple(items))


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Dispatch polynomial ring arithmetic by operation name."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise InvalidArgs(f"unknown operation {op!r}")


def normal_form(f: Polynomial, rel: Polynomial, order: MonomialOrder) -> Polynomial:
    """Remainder of multivariate division of f by the single divisor rel.

    A single polynomial is a Groebner basis of its principal ideal, so
    the remainder is the unique normal form: zero iff f lies in (rel).
    """
    if rel.is_zero():
        raise ZeroRelation("cannot reduce modulo the zero relation")
    if any(rel.ring.vars.laurent):
        raise InvalidArgs("normal forms require a non-Laurent ring")
    if f.ring != rel.ring:
        rel = rel.lift(f.ring)
    key = order.key(f.ring.vars)
    lead_exps, lead_coeff = rel.leading_term(order)
    work = dict(f.terms)
    remainder: Dict[Exponents, Coefficient] = {}
    while work:
        exps = max(work, key=key)
        c = work.pop(exps)
        quot = tuple(a - b for a, b in zip(exps, lead_exps))
        if all(q >= 0 for q in quot):
            factor = c / lead_coeff
            for rexps, rc in rel.terms.items():
                if rexps == lead_exps:
                    continue
                target = tuple(q + r for q, r in zip(quot, rexps))
                s = work.get(target, f.ring.field.zero) - factor * rc
                if s:
                    work[target] = s
                else:
                    work.pop(target, None)
        else:
            remainder[exps] = c
    return Polynomial(f.ring, remainder)


# ---------------------------------------------------------------------------
# Univariate root finding at desk scale.


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _root_candidates(coeffs):
    """Candidate roots of a dense univariate polynomial over its field.

    Over F_p: every field element.  Over Q: rational-root candidates of
    the integer-cleared polynomial.
    """
    field = coeffs[0].field
    if field.characteristic:
        return field.elements()
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.value.denominator // math.gcd(denom_lcm, c.value.denominator)
    ints = [int(c.value * denom_lcm) for c in coeffs]
    lead = next(ints[i] for i in range(len(ints) - 1, -1, -1) if ints[i])
    const = next(i for i in ints if i)
    candidates = []
    for p in _divisors(const):
        for q in _divisors(lead):
            for sign in (1, -1):
                candidates.append(field.coeff(Fraction(sign * p, q)))
    candidates.append(field.zero)
    return candidates


def _eval_univariate(coeffs, x: Coefficient) -> Coefficient:
    acc = x.field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs, root: Coefficient):
    """Synthetic division of coeffs (low-to-high) by (s - root)."""
    out = [root.field.zero] * (len(coeffs) - 1)
    carry = coeffs[-1]
    for i in range(len(coeffs) - 2, -1, -1):
        out[i] = carry
        carry = coeffs[i] + carry * root
    assert not carry, "deflation at a non-root"
    return out


def univariate_roots(coeffs):
    """All base-field roots of a dense univariate polynomial, with
    multiplicity; returns (roots, residual_coeffs)."""
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        raise ZeroPolynomial("zero polynomial has every root")
    roots = []
    candidates = _root_candidates(coeffs)
    progress = True
    while len(coeffs) > 1 and progress:
        progress = False
        for cand in candidates:
            if not _eval_univariate(coeffs, cand):
                roots.append(cand)
                coeffs = _deflate(coeffs, cand)
                progress = True
                break
    return roots, coeffs


def weighted_homog_factor(g: Polynomial, w: WeightVector):
    """Factor a weighted-homogeneous bivariate g(z, t) with w(z)=3, w(t)=2
    as lam * z^n * t^m * prod(z^2 + mu_i * t^3).

    Returns (lam, n, m, mus) where mus is a list with multiplicity.
    Raises NotHomogeneous / DoesNotSplit as appropriate.
    """
    if g.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if g.ring.nvars != 2:
        raise InvalidArgs("expected a bivariate polynomial")
    zname, tname = g.ring.vars.names
    if w.weight(zname) != 3 or w.weight(tname) != 2:
        raise InvalidArgs(f"expected weights {zname}=3, {tname}=2")
    if not g.is_homogeneous(w):
        raise NotHomogeneous("input is not weighted-homogeneous")
    n = min(exps[0] for exps in g.terms)
    m = min(exps[1] for exps in g.terms)
    stripped = {(a - n, b - m): c for (a, b), c in g.terms.items()}
    # Homogeneity with weights (3, 2) and a z-free term forces even
    # z-exponents: the residual is a polynomial in s = z^2 / t^3.
    degree = max(a for a, _ in stripped) // 2
    field = g.ring.field
    coeffs = [field.zero] * (degree + 1)
    for (a, b), c in stripped.items():
        assert a % 2 == 0
        coeffs[a // 2] = c
    roots, residual = univariate_roots(coeffs)
    if len(residual) > 1:
        raise DoesNotSplit(
            "a factor of degree >= 2 does not split over the base field",
            residual=residual,
        )
    lam = residual[0] if residual else field.one
    mus = [-r for r in roots]
    return lam, n, m, mus


def expand_homog_factorization(ring: PolyRing, lam, n: int, m: int, mus) -> Polynomial:
    """Re-expand factorization data back into the bivariate ring."""
    z = ring.var(ring.vars.names[0])
    t = ring.var(ring.vars.names[1])
    out = ring.monomial(lam, (n, m))
    for mu in mus:
        out = out * (z * z + (t ** 3).scale(mu))
    return out


# ---------------------------------------------------------------------------
# Canonical text rendering.


def _render_coeff(c: Coefficient) -> str:
    return str(c.value)


def render(f: Polynomial, order: Optional[MonomialOrder] = None) -> str:
    """Canonical text: terms sorted descending, exact coefficients.

    Examples: ``-3/2*x^2*t``, ``x^-2``, ``z^2 - 2*x^2*z*u``.
    """
    if not f.terms:
        return "0"
    if order is None:
        order = MonomialOrder(f.ring.vars.names)
    key = order.key(f.ring.vars)
    parts = []
    for exps in sorted(f.terms, key=key, reverse=True):
        c = f.terms[exps]
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(f.ring.vars.names, exps)
            if e
        ]
        negative = f.ring.field.characteristic == 0 and c.value < 0
        mag = -c if negative else c
        if not factors:
            body = _render_coeff(mag)
        elif mag == f.ring.field.one:
            body = "*".join(factors)
        else:
            body = "*".join([_render_coeff(mag)] + factors)
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts)
