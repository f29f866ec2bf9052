"""Wada's twisted Alexander invariant from a presentation, a surjection
onto a finite group, and a matrix representation.

For a deficiency-one meridional presentation with generators x_1..x_m and
relators r_1..r_{m-1}, a surjection f onto G, and a representation rho of
G, the invariant is the quotient of two determinants: the big one of the
(m-1) x (m-1) block matrix of Fox derivatives pushed through rho.f tensor
the abelianization, and the small one of (rho.f tensor phi)(x_j - 1) for a
dropped generator x_j.  The quotient, up to units c*t^k, does not depend
on the choices; this module always drops the largest-index generator with
a nonvanishing small determinant (for regular representations that is
always x_m, since the small determinant is +-(t^k - 1)^(|G|/k)).

Block rows are ordered by (relator, representation row) and block columns
by (kept generator ascending, representation column).

When the target group is abelian and the representation is by permutation
matrices, all blocks lie in one commutative matrix algebra, so the big
determinant equals det(Phi(D)) where D is the determinant of the small
(m-1) x (m-1) matrix of group-algebra symbols and Phi blows a symbol up
to its matrix.  This cuts the expensive elimination from size
(m-1)*|G| down to |G| and is bit-identical to the generic route.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    INTEGERS,
    CoefficientDomain,
    LaurentPolynomial,
    PolyMatrix,
    RationalFunction,
    determinant,
    prime_field,
    rational_normalize,
)
from .groups import MatrixRep, trivial_group, trivial_representation
from .homsearch import Homomorphism, evaluate_word
from .knots import (
    GroupRingElement,
    KnotPresentation,
    abelian_exponent,
    fox_derivative,
)


class DenominatorVanishesError(ArithmeticError):
    """Every candidate denominator determinant is zero (cannot happen for
    regular representations)."""


@dataclass(frozen=True)
class TwistedAlexanderResult:
    """Both determinants, the dropped generator (1-based) and the
    normalized quotient."""

    numerator: LaurentPolynomial
    denominator: LaurentPolynomial
    dropped_generator: int
    normalized: RationalFunction
    domain: CoefficientDomain

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def to_json(self) -> dict:
        return {
            "numerator": self.numerator.to_json(),
            "denominator": self.denominator.to_json(),
            "droppedGenerator": self.dropped_generator,
            "normalized": self.normalized.to_json(),
        }


def _scaled_coefficient(c: int, e: int, s: int,
                        domain: CoefficientDomain) -> int:
    if s == 1:
        return c
    if domain.p is not None:
        return c * pow(s, e, domain.p)
    return c * (s ** abs(e))  # s is +-1 over the integers


def evaluate_rep_phi(element: GroupRingElement, f: Homomorphism,
                     rep: MatrixRep, domain: CoefficientDomain,
                     meridian_scale: int = 1) -> PolyMatrix:
    """(rho.f tensor phi) extended linearly: each group ring term c*w
    contributes c * s^phi(w) * t^phi(w) * rho(f(w)), where s is the
    optional meridian scale (a unit of the domain, 1 by default)."""
    if rep.group is not f.group:
        raise ValueError("representation and homomorphism target differ")
    dim = rep.dimension
    s = domain.reduce(meridian_scale)
    if s != domain.reduce(1):
        domain.inv(s)  # must be a unit
    terms: list[list[dict[int, int]]] = [
        [{} for _ in range(dim)] for _ in range(dim)]
    for word, c in element.items():
        g = evaluate_word(f.group, f.images, word)
        e = abelian_exponent(word)
        c = _scaled_coefficient(c, e, s, domain)
        mat = rep.image(g)
        for i in range(dim):
            row = mat[i]
            for j in range(dim):
                v = row[j]
                if v:
                    cell = terms[i][j]
                    cell[e] = cell.get(e, 0) + c * v
    entries = [LaurentPolynomial.from_coeff_map(domain, terms[i][j])
               for i in range(dim) for j in range(dim)]
    return PolyMatrix(dim, dim, tuple(entries))


def _generator_minus_one(j: int) -> GroupRingElement:
    return {(j,): 1, (): -1}


def _abelian_fast_path(pres, f, rep, domain, meridian_scale, kept):
    """Numerator determinant via group-algebra symbols.

    Representations of an abelian group have pairwise commuting images, so
    all Fox blocks live in one commutative matrix algebra; the block
    determinant then equals the image of the symbol determinant computed
    in the group algebra itself.  The expensive elimination shrinks from
    size (m-1)*dim to dim.
    """
    from itertools import combinations

    group = f.group
    m1 = len(kept)
    zero = LaurentPolynomial.zero(domain)
    s = domain.reduce(meridian_scale)

    def symbol(element: GroupRingElement) -> dict[int, LaurentPolynomial]:
        acc: dict[int, dict[int, int]] = {}
        for word, c in element.items():
            g = evaluate_word(group, f.images, word)
            e = abelian_exponent(word)
            cell = acc.setdefault(g, {})
            cell[e] = cell.get(e, 0) + _scaled_coefficient(c, e, s, domain)
        out = {}
        for g, cell in acc.items():
            poly = LaurentPolynomial.from_coeff_map(domain, cell)
            if not poly.is_zero:
                out[g] = poly
        return out

    blocks = [[symbol(fox_derivative(r, j)) for j in kept]
              for r in pres.relators]

    def sym_mul(a, b):
        out: dict[int, LaurentPolynomial] = {}
        for g, pg in a.items():
            for h, ph in b.items():
                k = group.mul(g, h)
                prod = pg * ph
                out[k] = out[k] + prod if k in out else prod
        return {k: v for k, v in out.items() if not v.is_zero}

    def sym_addsub(a, b, negate):
        out = dict(a)
        for g, p in b.items():
            q = out.get(g, zero) + (-p if negate else p)
            if q.is_zero:
                out.pop(g, None)
            else:
                out[g] = q
        return out

    # division-free cofactor DP: minors[S] is the determinant of the
    # submatrix on rows 0..|S|-1 and column set S
    minors: dict[int, dict[int, LaurentPolynomial]] = {
        0: {group.identity: LaurentPolynomial.one(domain)}}
    for size in range(1, m1 + 1):
        level: dict[int, dict[int, LaurentPolynomial]] = {}
        for cols in combinations(range(m1), size):
            subset = 0
            for c in cols:
                subset |= 1 << c
            acc: dict[int, LaurentPolynomial] = {}
            for pos, c in enumerate(cols):
                entry = blocks[size - 1][c]
                if not entry:
                    continue
                term = sym_mul(entry, minors[subset & ~(1 << c)])
                acc = sym_addsub(acc, term, (size - 1 + pos) % 2 == 1)
            level[subset] = acc
        minors = level
    d = minors[(1 << m1) - 1]

    # apply the representation to the symbol determinant
    dim = rep.dimension
    rows = [[zero] * dim for _ in range(dim)]
    for g, poly in d.items():
        mat = rep.image(g)
        for i in range(dim):
            row = mat[i]
            for j in range(dim):
                v = row[j]
                if v:
                    rows[i][j] = rows[i][j] + poly.scale(v)
    return determinant(PolyMatrix.from_rows(rows))


def wada_invariant(pres: KnotPresentation, f: Homomorphism, rep: MatrixRep,
                   domain: CoefficientDomain = INTEGERS,
                   meridian_scale: int = 1,
                   dropped_generator: int | None = None
                   ) -> TwistedAlexanderResult:
    """The twisted invariant for an m-generator, (m-1)-relator meridional
    presentation; numerator and denominator are returned unreduced along
    with the normalized quotient.

    By default the largest-index generator with nonvanishing denominator
    is dropped; an explicit dropped_generator (1-based) overrides this,
    which changes the result only by a unit.
    """
    m = pres.generators
    if len(pres.relators) != m - 1:
        raise ValueError(
            f"need deficiency one: {m} generators, {len(pres.relators)} "
            "relators")
    if not pres.meridional:
        raise ValueError("twisted invariants need a meridional presentation")

    dropped = None
    den = None
    candidates = ([dropped_generator] if dropped_generator is not None
                  else range(m, 0, -1))
    for j in candidates:
        if not 1 <= j <= m:
            raise ValueError(f"dropped generator {j} out of range")
        cand = determinant(evaluate_rep_phi(
            _generator_minus_one(j), f, rep, domain, meridian_scale))
        if not cand.is_zero:
            dropped, den = j, cand
            break
    if dropped is None:
        raise DenominatorVanishesError(
            "det((rho tensor phi)(x_j - 1)) vanishes for every candidate "
            "generator")

    kept = [j for j in range(1, m + 1) if j != dropped]
    if m == 1:
        num = LaurentPolynomial.one(domain)
    elif m >= 3 and rep.dimension >= 2 and f.group.is_abelian():
        num = _abelian_fast_path(pres, f, rep, domain, meridian_scale, kept)
    else:
        dim = rep.dimension
        blocks = [[evaluate_rep_phi(fox_derivative(r, j), f, rep, domain,
                                    meridian_scale)
                   for j in kept] for r in pres.relators]
        size = (m - 1) * dim
        rows = []
        for bi in range(m - 1):
            for i in range(dim):
                row = []
                for bj in range(m - 1):
                    block = blocks[bi][bj]
                    row.extend(block.entry(i, jj) for jj in range(dim))
                rows.append(row)
        assert len(rows) == size
        num = determinant(PolyMatrix.from_rows(rows))

    normalized = rational_normalize(RationalFunction(num, den))
    return TwistedAlexanderResult(num, den, dropped, normalized, domain)


def twisted_alexander_mod(pres: KnotPresentation, f: Homomorphism,
                          rep: MatrixRep, p: int,
                          meridian_scale: int = 1,
                          dropped_generator: int | None = None
                          ) -> TwistedAlexanderResult:
    """Same pipeline with all arithmetic in F_p from the start; equal up to
    unit to the reduction of the exact result whenever the exact
    denominator survives mod p."""
    try:
        return wada_invariant(pres, f, rep, prime_field(p), meridian_scale,
                              dropped_generator)
    except DenominatorVanishesError as exc:
        raise DenominatorVanishesError(
            f"every candidate denominator vanishes identically mod {p}"
        ) from exc


def trivial_surjection() -> Homomorphism:
    g = trivial_group()
    return Homomorphism(g, ())


def alexander_polynomial(pres: KnotPresentation) -> LaurentPolynomial:
    """The classical Alexander polynomial: (t - 1) times the invariant of
    the one-dimensional trivial representation, normalized to min_exp 0
    with positive lowest coefficient."""
    g = trivial_group()
    f = Homomorphism(g, tuple(g.identity for _ in range(pres.generators)))
    res = wada_invariant(pres, f, trivial_representation(g), INTEGERS)
    t_minus_1 = LaurentPolynomial.make(INTEGERS, 0, (-1, 1))
    val = rational_normalize(RationalFunction(
        res.numerator * t_minus_1, res.denominator))
    if val.denominator != LaurentPolynomial.one(INTEGERS):
        raise ArithmeticError(
            "Alexander polynomial did not come out polynomial; "
            "is this a knot presentation?")
    return val.numerator
