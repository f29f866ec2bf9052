"""Knot group presentations: free words, Fox derivatives, and Wirtinger
presentations read off planar diagram (PD) codes.

Free words are tuples of nonzero ints: letter +j is the generator x_j,
letter -j its inverse (j is 1-based).  Elements of the integral group ring
of the free group are dicts mapping freely reduced words to nonzero
integer coefficients.

PD codes follow the usual convention for oriented knot diagrams: edges are
numbered 1..2n along the knot, and each crossing is a 4-tuple
(a, b, c, d) of incident edges listed counterclockwise starting from the
incoming under-edge a (so the outgoing under-edge is c = a + 1 mod 2n).
Arcs of the diagram - the Wirtinger generators - are the maximal runs of
edges not interrupted by an underpass.

The relator written at a crossing with under-in arc x_i, under-out arc
x_j and over arc x_k is x_k^e x_i x_k^-e x_j^-1, where e = +1 when the
over-strand enters at position d and -1 when it enters at position b.
Any globally consistent sign convention yields the same invariants up to
units (at worst it mirrors the knot), so tests compare up to unit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import INTEGERS, LaurentPolynomial, PolyMatrix, determinant

FreeWord = tuple[int, ...]
GroupRingElement = dict[FreeWord, int]


def free_reduce(word) -> FreeWord:
    """Cancel adjacent inverse pairs; idempotent and length-nonincreasing."""
    out: list[int] = []
    for letter in word:
        if letter == 0:
            raise ValueError("0 is not a valid letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word) -> FreeWord:
    return tuple(-letter for letter in reversed(word))


def abelian_exponent(word) -> int:
    """Image of the word under the abelianization sending every x_i to t,
    as the exponent of t."""
    return sum(1 if letter > 0 else -1 for letter in word)


def ring_add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    out = dict(a)
    for w, c in b.items():
        n = out.get(w, 0) + c
        if n:
            out[w] = n
        else:
            out.pop(w, None)
    return out


def ring_word_mul(u, e: GroupRingElement) -> GroupRingElement:
    """Left multiplication of a group ring element by the word u."""
    out: GroupRingElement = {}
    for w, c in e.items():
        key = free_reduce(tuple(u) + w)
        n = out.get(key, 0) + c
        if n:
            out[key] = n
        else:
            out.pop(key, None)
    return out


def fox_derivative(word, j: int) -> GroupRingElement:
    """The free derivative d(word)/dx_j in the integral group ring.

    Satisfies dx_i/dx_j = delta_ij, d(x_i^-1)/dx_j = -delta_ij x_i^-1 and
    the product rule d(uv) = du + u dv.
    """
    if j < 1:
        raise ValueError("generator index must be positive")
    word = free_reduce(word)
    if any(abs(letter) < 1 for letter in word):
        raise ValueError("invalid letter")
    terms: GroupRingElement = {}
    prefix: list[int] = []
    for letter in word:
        if letter == j:
            key = tuple(prefix)
            terms[key] = terms.get(key, 0) + 1
        elif letter == -j:
            # prefix is a reduced prefix not ending in +j, so appending -j
            # keeps it reduced
            key = tuple(prefix) + (-j,)
            terms[key] = terms.get(key, 0) - 1
        prefix.append(letter)
    return {w: c for w, c in terms.items() if c}


class PDValidationError(ValueError):
    """Raised for malformed planar diagram codes."""


@dataclass(frozen=True)
class PDCode:
    """An oriented knot diagram as a sequence of crossing 4-tuples."""

    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        n = len(self.crossings)
        if n == 0:
            raise PDValidationError("a PD code needs at least one crossing")
        counts: dict[int, int] = {}
        for idx, cr in enumerate(self.crossings):
            if len(cr) != 4:
                raise PDValidationError(f"crossing {idx} is not a 4-tuple")
            for e in cr:
                counts[e] = counts.get(e, 0) + 1
        if set(counts) != set(range(1, 2 * n + 1)):
            raise PDValidationError(
                f"edge labels must cover 1..{2 * n} exactly")
        bad = [e for e, c in counts.items() if c != 2]
        if bad:
            raise PDValidationError(
                f"edge labels {sorted(bad)} do not occur exactly twice")

    @staticmethod
    def parse(raw) -> "PDCode":
        return PDCode(tuple(tuple(int(x) for x in cr) for cr in raw))

    def __len__(self):
        return len(self.crossings)


@dataclass(frozen=True)
class KnotPresentation:
    """A deficiency-one group presentation; when meridional, every
    generator is a meridian of the knot (so sending each one to t gives a
    well defined abelianization)."""

    generators: int
    relators: tuple[FreeWord, ...]
    meridional: bool = True

    def __post_init__(self):
        for r in self.relators:
            for letter in r:
                if letter == 0 or abs(letter) > self.generators:
                    raise ValueError(f"letter {letter} out of range")
            if self.meridional and abelian_exponent(r) != 0:
                raise ValueError(
                    "meridional presentation with unbalanced relator")


def wirtinger_from_pd(pd: PDCode) -> KnotPresentation:
    """Wirtinger presentation with one generator per arc and one relator
    per crossing, the final crossing's (redundant) relator dropped."""
    n = len(pd)
    total = 2 * n

    def nxt(e: int) -> int:
        return e % total + 1

    under_in = set()
    over_in: dict[int, int] = {}
    for idx, (a, b, c, d) in enumerate(pd.crossings):
        if nxt(a) != c:
            raise PDValidationError(
                f"crossing {idx}: under-strand must run a -> a+1, got "
                f"({a},{b},{c},{d})")
        if nxt(b) == d:
            over_in[idx] = b
        elif nxt(d) == b:
            over_in[idx] = d
        else:
            raise PDValidationError(
                f"crossing {idx}: over-edges {b},{d} are not consecutive")
        under_in.add(a)

    # arcs start right after each underpass and absorb edges forward
    arc_of_edge: dict[int, int] = {}
    starts = sorted(nxt(a) for a in under_in)
    for gen, start in enumerate(starts, 1):
        e = start
        while True:
            arc_of_edge[e] = gen
            if e in under_in:
                break
            e = nxt(e)
    if len(arc_of_edge) != total:
        raise PDValidationError("diagram is not a single closed component")

    relators = []
    for idx, (a, b, c, d) in enumerate(pd.crossings):
        over = arc_of_edge[over_in[idx]]
        sign = 1 if over_in[idx] == d else -1
        word = free_reduce(
            (sign * over, arc_of_edge[a], -sign * over, -arc_of_edge[c]))
        relators.append(word)
    return KnotPresentation(generators=n, relators=tuple(relators[:-1]))


def presentation_abelianized_at_1(pres: KnotPresentation) -> int:
    """det of the Fox Jacobian minor with t = 1 and the last generator
    dropped; equals the Alexander polynomial at 1, so +-1 for a knot."""
    m = pres.generators
    rows = []
    for r in pres.relators:
        counts = [0] * m
        for letter in r:
            counts[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append([LaurentPolynomial.constant(c) for c in counts[:m - 1]])
    if not rows:
        return 1
    return determinant(PolyMatrix.from_rows(rows)).coefficient(0)


class KnotTableError(ValueError):
    """Raised for malformed knot table files."""


def load_knot_table(source) -> dict[str, KnotPresentation]:
    """Parse a knot table file into named, validated presentations.

    The file is JSON: {"knots": [entry, ...]} where each entry is either
    {"name": ..., "pd": [[a,b,c,d], ...]} or a direct presentation
    {"name": ..., "generators": m, "relators": [[letters], ...]}.  Every
    entry must pass the Alexander-polynomial-at-1 check.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KnotTableError(f"knot table is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "knots" not in data:
        raise KnotTableError('knot table must be an object with a "knots" list')
    table: dict[str, KnotPresentation] = {}
    for pos, entry in enumerate(data["knots"]):
        name = entry.get("name")
        if not name:
            raise KnotTableError(f"entry {pos} has no name")
        try:
            if "pd" in entry:
                pres = wirtinger_from_pd(PDCode.parse(entry["pd"]))
            elif "relators" in entry:
                pres = KnotPresentation(
                    generators=int(entry["generators"]),
                    relators=tuple(free_reduce(r) for r in entry["relators"]))
            else:
                raise KnotTableError(
                    f"entry {name}: needs either a pd code or relators")
            if len(pres.relators) != pres.generators - 1:
                raise KnotTableError(
                    f"entry {name}: expected deficiency one "
                    f"({pres.generators} generators, "
                    f"{len(pres.relators)} relators)")
            if abs(presentation_abelianized_at_1(pres)) != 1:
                raise KnotTableError(
                    f"entry {name}: Alexander polynomial at 1 is not a unit; "
                    "not a valid knot presentation")
        except (PDValidationError, ValueError) as exc:
            if isinstance(exc, KnotTableError):
                raise
            raise KnotTableError(f"entry {name or pos}: {exc}") from exc
        table[name] = pres
    return table


def bundled_table_path() -> str:
    from importlib.resources import files
    return str(files("talex").joinpath("data/knots.json"))


def bundled_table() -> dict[str, KnotPresentation]:
    return load_knot_table(bundled_table_path())
