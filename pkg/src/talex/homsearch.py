"""Enumeration of surjective homomorphisms from a knot group presentation
onto a finite group.

Every Wirtinger generator of a knot group is a meridian, and all meridians
are conjugate, so a homomorphism onto G sends every generator into a
single conjugacy class C; surjectivity further forces the normal closure
of C to be all of G.  The search therefore runs class by class, assigning
generators to members of C by backtracking, checking each relator as soon
as its last generator receives a value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import FiniteGroup
from .knots import KnotPresentation

DEFAULT_BUDGET = 5_000_000


class BudgetExceededError(RuntimeError):
    """The backtracking search hit its node budget before finishing."""

    def __init__(self, budget: int):
        super().__init__(f"surjection search exceeded {budget} nodes")
        self.budget = budget


@dataclass(frozen=True)
class Homomorphism:
    """Images of the presentation generators (one element index each)."""

    group: FiniteGroup
    images: tuple[int, ...]

    def image_of_word(self, word) -> int:
        return evaluate_word(self.group, self.images, word)


def evaluate_word(group: FiniteGroup, images, word) -> int:
    acc = group.identity
    cayley = group.cayley
    for letter in word:
        g = images[abs(letter) - 1]
        if letter < 0:
            g = group.inverses[g]
        acc = cayley[acc][g]
    return acc


def image_subgroup(group: FiniteGroup, images) -> frozenset[int]:
    return group.subgroup_generated(images)


def satisfies_relators(pres: KnotPresentation, group: FiniteGroup,
                       images) -> bool:
    e = group.identity
    return all(evaluate_word(group, images, r) == e for r in pres.relators)


def _canonical_under_conjugation(group: FiniteGroup, images) -> tuple[int, ...]:
    best = None
    for g in range(group.order):
        cand = tuple(group.conjugate(x, g) for x in images)
        if best is None or cand < best:
            best = cand
    return best


def find_meridional_surjections(pres: KnotPresentation, group: FiniteGroup,
                                up_to_conjugacy: bool = False,
                                budget: int = DEFAULT_BUDGET
                                ) -> list[Homomorphism]:
    """All surjections sending every generator into one conjugacy class.

    Output is deterministic: homomorphisms sorted by their image tuples,
    one canonical representative per simultaneous-conjugation orbit when
    up_to_conjugacy is set.  Raises BudgetExceededError rather than
    silently truncating.
    """
    if not pres.meridional:
        raise ValueError("surjection search needs a meridional presentation")
    m = pres.generators
    e = group.identity

    # check each relator as soon as its highest generator is assigned
    relators_at = [[] for _ in range(m + 1)]
    for r in pres.relators:
        if r:
            relators_at[max(abs(letter) for letter in r)].append(r)

    nodes = 0
    found: list[tuple[int, ...]] = []
    for cls in group.conjugacy_classes():
        if len(group.normal_closure(cls.representative)) != group.order:
            continue
        members = sorted(cls.members)
        images = [0] * m

        def assign(pos: int):
            nonlocal nodes
            if pos == m:
                if len(image_subgroup(group, images)) == group.order:
                    found.append(tuple(images))
                return
            for g in members:
                nodes += 1
                if nodes > budget:
                    raise BudgetExceededError(budget)
                images[pos] = g
                if all(evaluate_word(group, images, r) == e
                       for r in relators_at[pos + 1]):
                    assign(pos + 1)
            images[pos] = 0

        assign(0)

    found.sort()
    if up_to_conjugacy:
        reps = []
        seen = set()
        for images in found:
            canon = _canonical_under_conjugation(group, images)
            if canon not in seen:
                seen.add(canon)
                reps.append(images)
        found = reps
    return [Homomorphism(group, images) for images in found]


def brute_force_surjections(pres: KnotPresentation, group: FiniteGroup
                            ) -> list[Homomorphism]:
    """Oracle: exhaustive enumeration over C^m for every conjugacy class C
    whose members could host meridians; small groups only."""
    m = pres.generators
    out = []
    for cls in group.conjugacy_classes():
        members = sorted(cls.members)
        stack = [()]
        while stack:
            partial = stack.pop()
            if len(partial) == m:
                if satisfies_relators(pres, group, partial) and \
                        len(image_subgroup(group, partial)) == group.order:
                    out.append(partial)
                continue
            for g in reversed(members):
                stack.append(partial + (g,))
    out.sort()
    return [Homomorphism(group, images) for images in out]


def extends_to_automorphism(group: FiniteGroup, src, dst) -> bool:
    """True iff the assignment src[i] -> dst[i] extends to an automorphism
    of the whole group (src must generate)."""
    e = group.identity
    sigma = {e: e}
    frontier = [e]
    while frontier:
        x = frontier.pop()
        sx = sigma[x]
        for s, d in zip(src, dst):
            y = group.mul(x, s)
            z = group.mul(sx, d)
            prior = sigma.get(y)
            if prior is None:
                sigma[y] = z
                frontier.append(y)
            elif prior != z:
                return False
    if len(sigma) != group.order:
        return False
    if len(set(sigma.values())) != group.order:
        return False
    return all(sigma[group.mul(a, b)] == group.mul(sigma[a], sigma[b])
               for a in range(group.order) for b in range(group.order))


def regular_equivalence_classes(homs: list[Homomorphism]
                                ) -> list[list[Homomorphism]]:
    """Partition surjections into classes whose compositions with the
    regular representation are conjugate representations.

    Two surjections related by f' = sigma . f for an automorphism sigma
    give conjugate compositions (the regular representation is invariant
    under automorphisms), hence equal twisted invariants; sweeps compute
    one member per class.
    """
    classes: list[list[Homomorphism]] = []
    for h in homs:
        for cls in classes:
            rep = cls[0]
            if rep.group is h.group and extends_to_automorphism(
                    h.group, rep.images, h.images):
                cls.append(h)
                break
        else:
            classes.append([h])
    return classes
