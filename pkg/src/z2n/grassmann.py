"""Truncated Z_2^n-Grassmann algebras with exact rational coefficients.

An element is a finite sum of monomials in graded generators.  Generators of
nonzero degree are the formal variables; the algebra keeps only monomials
whose total formal degree is at most ``cap``, which realises the quotient by
a power of the (nilpotent, hence complete) ideal of soul elements.

The same machinery also carries degree-0 polynomial variables ``x1..xp``.
They are never truncated and serve as base coordinates of the Cartesian
domain R^{p|q}; a Grassmann algebra proper has none of them.

Monomials are exponent tuples indexed by the canonical generator order:
degree index first, then position within the degree.  Multiplication moves
generators of the right factor past those of the left factor, picking up
``(-1)^<deg u, deg v>`` for every transposition.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .degree import Degree, enumerate_degrees, pairing_parity
from .errors import (
    AlgebraMismatch,
    DegreeViolation,
    DimensionError,
    NonInvertible,
    ParityViolation,
    Z2nError,
)
from .shape import GradedShape

Monomial = tuple  # exponent tuple, one entry per generator


class AlgebraSpec:
    """Generator layout and truncation cap of a (truncated) Grassmann algebra.

    ``gen_counts`` maps nonzero degree indices ``j`` to the number of
    generators of degree ``gamma_j``; a sequence is read as ``(m_1, ..., m_N)``.
    ``base`` is the number of degree-0 polynomial variables (0 for Lambda).
    """

    def __init__(self, n: int, gen_counts: Mapping[int, int] | Sequence[int], cap: int, base: int = 0):
        if n < 1:
            raise DimensionError(f"ambient rank must be >= 1, got {n}")
        N = 2**n - 1
        if isinstance(gen_counts, Mapping):
            counts = [0] * N
            for j, m in gen_counts.items():
                if not 1 <= j <= N:
                    raise Z2nError(f"degree index {j} is not a nonzero degree for n={n}")
                counts[j - 1] = int(m)
        else:
            counts = [int(m) for m in gen_counts]
            if len(counts) != N:
                raise Z2nError(f"expected {N} generator counts for n={n}, got {len(counts)}")
        if any(m < 0 for m in counts) or base < 0:
            raise Z2nError("generator counts must be nonnegative")
        if cap < 0:
            raise Z2nError("truncation cap must be >= 0")
        self.n = n
        self.cap = int(cap)
        self.shape = GradedShape([int(base)] + counts)

        self.gen_degrees: tuple[int, ...] = tuple(self.shape.slot_degrees())
        self.ngens = len(self.gen_degrees)
        self.formal = tuple(d != 0 for d in self.gen_degrees)
        self.odd = tuple(pairing_parity(d, d) == 1 for d in self.gen_degrees)
        names = []
        for i, k in self.shape.slots():
            if i == 0:
                names.append(f"x{k + 1}")
            else:
                names.append(f"{enumerate_degrees(n)[i]}{k + 1}")
        self.gen_names: tuple[str, ...] = tuple(names)
        self._by_name = {name: g for g, name in enumerate(names)}
        # _pair[u][v] == 1 iff swapping generators u and v costs a sign
        self._pair = [[pairing_parity(du, dv) for dv in self.gen_degrees] for du in self.gen_degrees]
        self._mul_cache: dict = {}
        self._deg_cache: dict = {}
        self._key = (n, tuple(self.shape), self.cap)

    @classmethod
    def coordinate_ring(cls, shape: GradedShape, cap: int) -> "AlgebraSpec":
        """Polynomial-in-x, truncated-in-xi function algebra of R^{p|q}."""
        shape = GradedShape(shape)
        return cls(shape.n, list(shape[1:]), cap, base=shape[0])

    @property
    def base(self) -> int:
        return self.shape[0]

    @property
    def gen_counts(self) -> dict[int, int]:
        return {j: m for j, m in enumerate(self.shape) if j and m}

    def is_grassmann(self) -> bool:
        return self.base == 0

    def with_cap(self, cap: int) -> "AlgebraSpec":
        return AlgebraSpec(self.n, list(self.shape[1:]), cap, base=self.base)

    def generator_index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise Z2nError(f"unknown generator {name!r}") from None

    def generator_degree(self, g: int) -> Degree:
        return enumerate_degrees(self.n)[self.gen_degrees[g]]

    def generator(self, g: int | str) -> "GElement":
        if isinstance(g, str):
            g = self.generator_index(g)
        exps = [0] * self.ngens
        exps[g] = 1
        return GElement(self, {tuple(exps): 1})

    def generators(self) -> list["GElement"]:
        return [self.generator(g) for g in range(self.ngens)]

    def one(self) -> "GElement":
        return _make(self, {self.unit_monomial: Fraction(1)})

    def zero(self) -> "GElement":
        return _make(self, {})

    def scalar(self, value) -> "GElement":
        value = Fraction(value)
        return _make(self, {self.unit_monomial: value} if value else {})

    @property
    def unit_monomial(self) -> Monomial:
        return (0,) * self.ngens

    def formal_degree(self, mono: Monomial) -> int:
        return sum(e for e, f in zip(mono, self.formal) if f)

    def monomial_degree(self, mono: Monomial) -> int:
        """Degree index of a monomial: sum of exponent times generator degree."""
        d = self._deg_cache.get(mono)
        if d is None:
            d = 0
            for e, gd in zip(mono, self.gen_degrees):
                if e & 1:
                    d ^= gd
            self._deg_cache[mono] = d
        return d

    def check_monomial(self, mono: Monomial) -> bool:
        """Validate parity; returns False when the monomial lies beyond the cap."""
        if len(mono) != self.ngens:
            raise Z2nError(f"monomial {mono} has wrong length for {self}")
        for g, e in enumerate(mono):
            if e < 0:
                raise Z2nError(f"negative exponent in {mono}")
            if e > 1 and self.odd[g]:
                raise ParityViolation(
                    f"generator {self.gen_names[g]} has odd self-pairing; exponent {e} > 1"
                )
        return self.formal_degree(mono) <= self.cap

    def mono_mul(self, a: Monomial, b: Monomial):
        """Return ``(sign, a*b)`` in canonical order, or None if the product vanishes."""
        key = (a, b)
        cache = self._mul_cache
        if key in cache:
            return cache[key]
        result = self._mono_mul(a, b)
        cache[key] = result
        return result

    def _mono_mul(self, a, b):
        exps = tuple(x + y for x, y in zip(a, b))
        for g, e in enumerate(exps):
            if e > 1 and self.odd[g]:
                return None
        if self.formal_degree(exps) > self.cap:
            return None
        parity = 0
        # generator v of b passes every generator u > v of a
        for v, bv in enumerate(b):
            if not bv:
                continue
            row = self._pair
            for u in range(v + 1, self.ngens):
                au = a[u]
                if au and row[u][v]:
                    parity += au * bv
        return (-1 if parity & 1 else 1, exps)

    def __eq__(self, other):
        return isinstance(other, AlgebraSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        counts = {str(enumerate_degrees(self.n)[j]): m for j, m in self.gen_counts.items()}
        extra = f", base={self.base}" if self.base else ""
        return f"AlgebraSpec(n={self.n}, gens={counts}, cap={self.cap}{extra})"


def _make(algebra: AlgebraSpec, terms: dict) -> "GElement":
    obj = object.__new__(GElement)
    obj.algebra = algebra
    obj.terms = terms
    return obj


class GElement:
    """An immutable element of a truncated Grassmann algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AlgebraSpec, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if not algebra.check_monomial(mono):
                continue
            coef = Fraction(coef)
            if coef:
                clean[mono] = clean.get(mono, 0) + coef
        self.algebra = algebra
        self.terms = {m: c for m, c in clean.items() if c}

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "GElement":
        if isinstance(other, GElement):
            if other.algebra != self.algebra:
                raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return _make(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return _make(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return gmul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return g_invert(self) ** (-k)
        result = self.algebra.one()
        base = self
        while k:
            if k & 1:
                result = gmul(result, base)
            k >>= 1
            if k:
                base = gmul(base, base)
        return result

    def scale(self, value) -> "GElement":
        value = Fraction(value)
        if not value:
            return self.algebra.zero()
        return _make(self.algebra, {m: c * value for m, c in self.terms.items()})

    # queries --------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, GElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def body(self) -> Fraction:
        return body(self)

    def soul(self) -> "GElement":
        terms = dict(self.terms)
        terms.pop(self.algebra.unit_monomial, None)
        return _make(self.algebra, terms)

    def degrees(self) -> set[int]:
        """Degree indices occurring among the terms."""
        return {self.algebra.monomial_degree(m) for m in self.terms}

    def is_homogeneous(self, degree: Degree | int | None = None) -> bool:
        """Homogeneous (of the given degree, if one is passed).  Zero is homogeneous of every degree."""
        degs = self.degrees()
        if degree is None:
            return len(degs) <= 1
        idx = degree if isinstance(degree, int) else Degree(degree).index
        return degs <= {idx}

    def degree(self) -> Degree | None:
        """The degree of a nonzero homogeneous element, else None."""
        degs = self.degrees()
        if len(degs) != 1:
            return None
        return enumerate_degrees(self.algebra.n)[degs.pop()]

    def homogeneous_part(self, g: Degree | int) -> "GElement":
        return homogeneous_part(self, g)

    def invert(self) -> "GElement":
        return g_invert(self)

    def truncate(self, cap: int) -> "GElement":
        """Image in the same generator layout with a smaller cap."""
        target = self.algebra.with_cap(cap)
        return _make(target, {m: c for m, c in self.terms.items() if target.formal_degree(m) <= cap})

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms by total degree, then with earlier generators first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))

    def __str__(self):
        from .textio import format_element

        return format_element(self)

    def __repr__(self):
        return f"GElement({self})"


def _check_same(a: GElement, b: GElement):
    if a.algebra != b.algebra:
        raise AlgebraMismatch(f"{a.algebra} vs {b.algebra}")


def gmul(a: GElement, b: GElement) -> GElement:
    _check_same(a, b)
    alg = a.algebra
    out: dict = {}
    mono_mul = alg.mono_mul
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            r = mono_mul(ma, mb)
            if r is None:
                continue
            sign, m = r
            c = ca * cb
            out[m] = out.get(m, 0) + (c if sign > 0 else -c)
    return _make(alg, {m: c for m, c in out.items() if c})


def body(a: GElement) -> Fraction:
    """Constant term (for coordinate rings, the value at x = 0)."""
    return a.terms.get(a.algebra.unit_monomial, Fraction(0))


def homogeneous_part(a: GElement, g: Degree | int) -> GElement:
    idx = g if isinstance(g, int) else Degree(g).index
    if isinstance(g, Degree) and g.n != a.algebra.n:
        raise DimensionError(f"degree {g} does not belong to Z_2^{a.algebra.n}")
    alg = a.algebra
    return _make(alg, {m: c for m, c in a.terms.items() if alg.monomial_degree(m) == idx})


def homogeneous_parts(a: GElement) -> dict[Degree, GElement]:
    return {d: homogeneous_part(a, d) for d in enumerate_degrees(a.algebra.n)}


def g_invert(a: GElement) -> GElement:
    """Inverse of an element with nonzero body.

    With ``a = l0 + s`` (``s`` nilpotent modulo the cap) the inverse is
    ``l0^-1 * sum_{k <= cap} (-s/l0)^k``.
    """
    alg = a.algebra
    if alg.base:
        raise Z2nError("inversion is defined on Grassmann algebras without base variables")
    l0 = body(a)
    if not l0:
        raise NonInvertible(f"element {a} has zero body")
    step = a.soul().scale(-1 / l0)
    total = alg.one()
    power = alg.one()
    for _ in range(alg.cap):
        power = gmul(power, step)
        if power.is_zero():
            break
        total = total + power
    return total.scale(1 / l0)


def substitute(a: GElement, images: Sequence[GElement], target: AlgebraSpec) -> GElement:
    """Replace generator ``g`` of ``a`` by ``images[g]`` and expand in ``target``.

    Monomials are stored in canonical order, so expanding each one as the
    ordered product of image powers is exactly the algebra-morphism extension.
    No degree checks happen here.
    """
    powers: dict = {}

    def power(g, e):
        key = (g, e)
        if key not in powers:
            powers[key] = images[g] if e == 1 else gmul(power(g, e - 1), images[g])
        return powers[key]

    out: dict = {}
    one = target.one()
    for mono, coef in a.terms.items():
        prod = one
        for g, e in enumerate(mono):
            if e:
                prod = gmul(prod, power(g, e))
                if prod.is_zero():
                    break
        for m, c in prod.terms.items():
            out[m] = out.get(m, 0) + coef * c
    return _make(target, {m: c for m, c in out.items() if c})


class AlgebraMorphism:
    """A degree-preserving unital algebra map fixed by generator images.

    Images of formal generators must be homogeneous of the generator's
    degree with zero body; images of base variables must have degree 0.
    """

    def __init__(self, source: AlgebraSpec, target: AlgebraSpec, images: Sequence[GElement] | Mapping):
        if source.n != target.n:
            raise DimensionError("source and target gradings differ")
        if isinstance(images, Mapping):
            imgs = [None] * source.ngens
            for key, val in images.items():
                g = source.generator_index(key) if isinstance(key, str) else key
                imgs[g] = val
            imgs = [target.zero() if v is None else v for v in imgs]
        else:
            imgs = list(images)
        if len(imgs) != source.ngens:
            raise Z2nError(f"need {source.ngens} generator images, got {len(imgs)}")
        for g, img in enumerate(imgs):
            if img.algebra != target:
                raise AlgebraMismatch(f"image of {source.gen_names[g]} is not in the target algebra")
            if not img.is_homogeneous(source.gen_degrees[g]):
                raise DegreeViolation(
                    f"image of {source.gen_names[g]} is not homogeneous of degree {source.generator_degree(g)}"
                )
            if source.formal[g] and body(img):
                raise DegreeViolation(f"image of {source.gen_names[g]} has a nonzero body")
        self.source = source
        self.target = target
        self.images = tuple(imgs)

    @classmethod
    def identity(cls, algebra: AlgebraSpec) -> "AlgebraMorphism":
        return cls(algebra, algebra, algebra.generators())

    @classmethod
    def to_body(cls, algebra: AlgebraSpec) -> "AlgebraMorphism":
        """Kill every formal generator."""
        return cls(algebra, algebra, [algebra.zero() for _ in range(algebra.ngens)])

    def __call__(self, a: GElement) -> GElement:
        return apply_morphism(self, a)


def apply_morphism(phi: AlgebraMorphism, a: GElement) -> GElement:
    if a.algebra != phi.source:
        raise AlgebraMismatch("element is not in the morphism's source algebra")
    return substitute(a, phi.images, phi.target)


def grassmann(n: int, gen_counts: Mapping[int, int] | Sequence[int], cap: int) -> AlgebraSpec:
    return AlgebraSpec(n, gen_counts, cap)


def lambda_one(n: int, cap: int = 2) -> AlgebraSpec:
    """The algebra with exactly one generator in each nonzero degree."""
    return AlgebraSpec(n, [1] * (2**n - 1), cap)


def element(algebra: AlgebraSpec, terms: Iterable[tuple[Mapping[str, int] | Monomial, object]]) -> GElement:
    """Build an element from ``(monomial, coefficient)`` pairs; monomials may be name->exponent maps."""
    out = {}
    for mono, coef in terms:
        if isinstance(mono, Mapping):
            exps = [0] * algebra.ngens
            for name, e in mono.items():
                exps[algebra.generator_index(name)] += e
            mono = tuple(exps)
        out[tuple(mono)] = out.get(tuple(mono), 0) + Fraction(coef)
    return GElement(algebra, out)
