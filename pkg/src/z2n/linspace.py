"""Graded vector spaces through a basis: symmetric algebras, block-diagonal
maps, and the passage between linear maps and linear morphisms.

``SymAlgebra`` realises the graded symmetric algebra on a space with graded
basis ``b^i_l``: a basis word is a nondecreasing sequence of basis vectors in
which a vector of odd self-pairing appears at most once.  Its product sorts
the concatenated word by adjacent transpositions, each contributing the Koszul
sign of the two swapped vectors.  For a space concentrated in nonzero degrees
the algebra is isomorphic to a Grassmann algebra (``flat_iso``).

A degree-0 linear map ``R^{p|q} -> R^{r|s}`` is block diagonal, one real
``s_i x q_i`` block per degree.  ``manifoldify`` turns it into the morphism
whose pullbacks are the rows of the blocks; ``vectorify`` reads them back.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .degree import enumerate_degrees, pairing_parity
from .errors import AlgebraMismatch, NotLinear, ShapeMismatch, Z2nError
from .grassmann import AlgebraSpec, GElement
from .points import Morphism
from .ratmat import RatMatrix, rat_matmul
from .shape import GradedShape, as_shape


class BlockDiagMap:
    """Degree-0 linear map given by one real block per degree."""

    __slots__ = ("source_shape", "target_shape", "blocks")

    def __init__(self, source_shape, target_shape, blocks: Sequence[Sequence[Sequence]]):
        self.source_shape = as_shape(source_shape)
        self.target_shape = as_shape(target_shape)
        if self.source_shape.n != self.target_shape.n:
            raise ShapeMismatch("source and target over different Z_2^n")
        if len(blocks) != len(self.source_shape):
            raise ShapeMismatch(f"need {len(self.source_shape)} blocks, got {len(blocks)}")
        out = []
        for i, blk in enumerate(blocks):
            rows, cols = self.target_shape[i], self.source_shape[i]
            if len(blk) != rows or any(len(r) != cols for r in blk):
                raise ShapeMismatch(f"block {i} must be {rows}x{cols}")
            out.append(tuple(tuple(Fraction(v) for v in r) for r in blk))
        self.blocks: tuple[RatMatrix, ...] = tuple(out)

    @classmethod
    def identity(cls, shape) -> "BlockDiagMap":
        shape = as_shape(shape)
        return cls(shape, shape, [[[int(r == c) for c in range(q)] for r in range(q)] for q in shape])

    def __matmul__(self, other: "BlockDiagMap") -> "BlockDiagMap":
        """Composition ``self o other``."""
        if other.target_shape != self.source_shape:
            raise ShapeMismatch(f"cannot compose {self.source_shape} with {other.target_shape}")
        blocks = []
        for i, (a, b) in enumerate(zip(self.blocks, other.blocks)):
            if not a or not b or not b[0]:
                blocks.append([[0] * other.source_shape[i] for _ in range(self.target_shape[i])])
            else:
                blocks.append(rat_matmul(a, b))
        return BlockDiagMap(other.source_shape, self.target_shape, blocks)

    def full_matrix(self) -> RatMatrix:
        rows, cols = self.target_shape, self.source_shape
        out = [[Fraction(0)] * cols.total for _ in range(rows.total)]
        for i, blk in enumerate(self.blocks):
            for r, row in enumerate(blk):
                for c, v in enumerate(row):
                    out[rows.offsets[i] + r][cols.offsets[i] + c] = v
        return tuple(tuple(r) for r in out)

    def __eq__(self, other):
        if not isinstance(other, BlockDiagMap):
            return NotImplemented
        return (self.source_shape, self.target_shape, self.blocks) == (
            other.source_shape,
            other.target_shape,
            other.blocks,
        )

    def __hash__(self):
        return hash((self.source_shape, self.target_shape, self.blocks))

    def __str__(self):
        from .textio import format_linmap

        return format_linmap(self)

    __repr__ = __str__


def manifoldify(L: BlockDiagMap, cap: int = 4) -> Morphism:
    """Linear morphism with pullbacks ``y^l_i <- sum_k L_i[l][k] u^k_i``."""
    ring = AlgebraSpec.coordinate_ring(L.source_shape, cap)
    gens = ring.generators()
    pbs = []
    for i, blk in enumerate(L.blocks):
        o = L.source_shape.offsets[i]
        for row in blk:
            acc = ring.zero()
            for k, v in enumerate(row):
                if v:
                    acc = acc + gens[o + k].scale(v)
            pbs.append(acc)
    return Morphism(L.source_shape, L.target_shape, cap, pbs)


def is_linear_morphism(phi: Morphism) -> bool:
    """Every pullback is a real combination of single source coordinates."""
    for pb in phi.pullbacks:
        for mono in pb.terms:
            if sum(mono) != 1:
                return False
    return True


def vectorify(phi: Morphism) -> BlockDiagMap:
    if not is_linear_morphism(phi):
        raise NotLinear("morphism has non-linear coordinate pullbacks")
    src, tgt = phi.source_shape, phi.target_shape
    blocks = [[[Fraction(0)] * src[i] for _ in range(tgt[i])] for i in range(len(src))]
    sdeg = src.slot_degrees()
    for slot, (i, pb) in enumerate(zip(tgt.slot_degrees(), phi.pullbacks)):
        for mono, coef in pb.terms.items():
            g = mono.index(1)
            if sdeg[g] != i:
                raise NotLinear("pullback mixes degrees")
            blocks[i][slot - tgt.offsets[i]][g - src.offsets[i]] = coef
    return BlockDiagMap(src, tgt, blocks)


# graded symmetric algebra -------------------------------------------------------


class SymAlgebra:
    """Graded symmetric algebra on a space with the given graded dimension,
    truncated at ``cap`` factors of nonzero degree."""

    def __init__(self, shape, cap: int):
        self.shape = as_shape(shape)
        self.n = self.shape.n
        self.cap = int(cap)
        self.gen_degrees = tuple(self.shape.slot_degrees())
        self.ngens = len(self.gen_degrees)
        degs = enumerate_degrees(self.n)
        self.gen_names = tuple(f"b{degs[i]}_{k + 1}" for i, k in self.shape.slots())

    def __eq__(self, other):
        return isinstance(other, SymAlgebra) and (self.shape, self.cap) == (other.shape, other.cap)

    def __hash__(self):
        return hash((self.shape, self.cap))

    def length(self, word: tuple) -> int:
        return sum(1 for g in word if self.gen_degrees[g])

    def word(self, *gens: int) -> "SymElement":
        """The product of basis vectors in the order given (signs applied)."""
        return SymElement(self, {tuple(gens): Fraction(1)}, normalize=True)

    def one(self) -> "SymElement":
        return SymElement(self, {(): Fraction(1)})

    def zero(self) -> "SymElement":
        return SymElement(self, {})

    def normalize_word(self, word: Sequence[int]):
        """Sort by adjacent transpositions.  Returns ``(sign, word)`` or None if it vanishes."""
        w = list(word)
        sign = 1
        for i in range(1, len(w)):
            j = i
            while j > 0 and w[j - 1] > w[j]:
                if pairing_parity(self.gen_degrees[w[j - 1]], self.gen_degrees[w[j]]):
                    sign = -sign
                w[j - 1], w[j] = w[j], w[j - 1]
                j -= 1
        for a, b in zip(w, w[1:]):
            if a == b and pairing_parity(self.gen_degrees[a], self.gen_degrees[a]):
                return None
        if self.length(w) > self.cap:
            return None
        return sign, tuple(w)


class SymElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: SymAlgebra, terms: dict, normalize: bool = False):
        self.algebra = algebra
        if normalize:
            out: dict = {}
            for w, c in terms.items():
                r = algebra.normalize_word(w)
                if r is not None:
                    out[r[1]] = out.get(r[1], 0) + r[0] * Fraction(c)
            terms = out
        self.terms = {w: Fraction(c) for w, c in terms.items() if c}

    def __add__(self, other):
        if other.algebra != self.algebra:
            raise AlgebraMismatch("elements of different symmetric algebras")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return SymElement(self.algebra, terms)

    def __neg__(self):
        return SymElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value) -> "SymElement":
        return SymElement(self.algebra, {w: c * Fraction(value) for w, c in self.terms.items()})

    def __mul__(self, other):
        return sym_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            names = "*".join(self.algebra.gen_names[g] for g in w)
            if not names:
                parts.append(str(c))
            else:
                parts.append(names if c == 1 else f"{c} {names}")
        return " + ".join(parts)

    __repr__ = __str__


def sym_basis(shape, k: int) -> list[tuple[int, ...]]:
    """All admissible words of length ``k`` (tuples of basis indices), lexicographically."""
    if k < 0:
        raise Z2nError("word length must be >= 0")
    shape = as_shape(shape)
    degs = shape.slot_degrees()
    out = []
    for word in combinations_with_replacement(range(len(degs)), k):
        if any(a == b and pairing_parity(degs[a], degs[a]) for a, b in zip(word, word[1:])):
            continue
        out.append(word)
    return out


def format_word(shape, word: Sequence[int]) -> str:
    names = SymAlgebra(shape, 0).gen_names
    return "*".join(names[g] for g in word) if word else "1"


def sym_mul(u: SymElement, v: SymElement) -> SymElement:
    if u.algebra != v.algebra:
        raise AlgebraMismatch("elements of different symmetric algebras")
    alg = u.algebra
    out: dict = {}
    for wu, cu in u.terms.items():
        for wv, cv in v.terms.items():
            r = alg.normalize_word(wu + wv)
            if r is None:
                continue
            sign, w = r
            out[w] = out.get(w, 0) + sign * cu * cv
    return SymElement(alg, out)


def _flat_target(alg: SymAlgebra) -> AlgebraSpec:
    if alg.shape[0]:
        raise Z2nError("the flat isomorphism needs a space concentrated in nonzero degrees")
    return AlgebraSpec(alg.n, list(alg.shape[1:]), alg.cap)


def flat_iso(u: SymElement, target: AlgebraSpec | None = None) -> GElement:
    """Relabel basis words as Grassmann monomials (dual basis vector -> generator)."""
    expected = _flat_target(u.algebra)
    target = expected if target is None else target
    if target != expected:
        raise AlgebraMismatch(f"flat isomorphism lands in {expected}, not {target}")
    terms = {}
    for w, c in u.terms.items():
        exps = [0] * target.ngens
        for g in w:
            exps[g] += 1
        terms[tuple(exps)] = c
    return GElement(target, terms)


def flat_iso_inverse(a: GElement, alg: SymAlgebra) -> SymElement:
    if a.algebra != _flat_target(alg):
        raise AlgebraMismatch("element does not live in the flat image of this symmetric algebra")
    terms = {}
    for mono, c in a.terms.items():
        word = tuple(g for g, e in enumerate(mono) for _ in range(e))
        terms[word] = c
    return SymElement(alg, terms)


__all__ = [
    "BlockDiagMap",
    "manifoldify",
    "vectorify",
    "is_linear_morphism",
    "SymAlgebra",
    "SymElement",
    "sym_basis",
    "sym_mul",
    "flat_iso",
    "flat_iso_inverse",
    "format_word",
    "GradedShape",
]
