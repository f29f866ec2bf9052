"""Finite groups as explicit Cayley tables, and their regular representations.

Each catalog constructor builds its elements concretely (pairs or
permutations), assigns indices deterministically, then forgets the
construction: downstream code only ever sees an order-n Cayley table with
optional named generators.  Group axioms are verified exhaustively at
construction for every order in scope (all groups here have order <= 64).

Element index conventions:

* cyclic(n): index i is a^i.
* dihedral(n): indices 0..n-1 are the rotations a^i, indices n..2n-1 are
  the reflections a^i b  (index i + n*eps for a^i b^eps).
* dicyclic(n): index i + 2n*eps is a^i b^eps with i mod 2n.
* metacyclic(m, p, k): index i + p*j is a^i b^j.
* direct products: pair (g, h) gets index g*|H| + h.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class GroupValidationError(ValueError):
    """Raised when a Cayley table fails one of the group axioms."""


_ASSOCIATIVITY_CHECK_LIMIT = 64


class FiniteGroup:
    """An immutable finite group on elements 0..order-1."""

    def __init__(self, cayley, labels=None, name=None):
        self.cayley = tuple(tuple(row) for row in cayley)
        self.order = len(self.cayley)
        self.name = name or f"G{self.order}"
        self.labels = dict(labels or {})
        self._validate()
        self.identity = self._find_identity()
        self.inverses = self._find_inverses()
        self._classes: tuple[ConjugacyClass, ...] | None = None

    # -- construction-time checks ----------------------------------------

    def _validate(self):
        n = self.order
        if n == 0:
            raise GroupValidationError("empty Cayley table")
        idx = set(range(n))
        for i, row in enumerate(self.cayley):
            if len(row) != n:
                raise GroupValidationError(f"row {i} has wrong length")
            if set(row) != idx:
                raise GroupValidationError(f"row {i} is not a permutation")
        for j in range(n):
            if {row[j] for row in self.cayley} != idx:
                raise GroupValidationError(f"column {j} is not a permutation")
        for name, g in self.labels.items():
            if not 0 <= g < n:
                raise GroupValidationError(f"label {name!r} out of range")
        if n <= _ASSOCIATIVITY_CHECK_LIMIT:
            c = self.cayley
            for a in range(n):
                ca = c[a]
                for b in range(n):
                    cab = c[ca[b]]
                    cb = c[b]
                    for d in range(n):
                        if cab[d] != ca[cb[d]]:
                            raise GroupValidationError(
                                f"associativity fails at ({a},{b},{d})")

    def _find_identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.cayley[e][x] == x and self.cayley[x][e] == x
                   for x in range(n)):
                return e
        raise GroupValidationError("no identity element")

    def _find_inverses(self) -> tuple[int, ...]:
        n, e = self.order, self.identity
        inv = [-1] * n
        for g in range(n):
            for h in range(n):
                if self.cayley[g][h] == e and self.cayley[h][g] == e:
                    inv[g] = h
                    break
            else:
                raise GroupValidationError(f"element {g} has no inverse")
        return tuple(inv)

    # -- basic operations --------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(g), -k)
        acc = self.identity
        base = g
        while k:
            if k & 1:
                acc = self.cayley[acc][base]
            base = self.cayley[base][base]
            k >>= 1
        return acc

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.cayley[x][g]
            k += 1
        return k

    def conjugate(self, g: int, by: int) -> int:
        return self.cayley[self.cayley[by][g]][self.inverses[by]]

    def label(self, name: str) -> int:
        return self.labels[name]

    def elements(self) -> range:
        return range(self.order)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<{self.name}: order {self.order}>"

    # -- structure ---------------------------------------------------------

    def conjugacy_classes(self) -> tuple["ConjugacyClass", ...]:
        if self._classes is None:
            seen = [False] * self.order
            classes = []
            for g in range(self.order):
                if seen[g]:
                    continue
                members = {self.conjugate(g, by) for by in range(self.order)}
                for m in members:
                    seen[m] = True
                classes.append(ConjugacyClass(min(members),
                                              frozenset(members)))
            classes.sort(key=lambda c: c.representative)
            self._classes = tuple(classes)
        return self._classes

    def subgroup_generated(self, gens) -> frozenset[int]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.cayley[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def normal_closure(self, g: int) -> frozenset[int]:
        members = {self.conjugate(g, by) for by in range(self.order)}
        return self.subgroup_generated(members)

    def is_normally_generated_by(self, g: int) -> bool:
        return len(self.normal_closure(g)) == self.order

    def is_normally_generated_by_one(self) -> int | None:
        """Smallest element whose conjugacy class generates the whole group,
        or None.  A knot group only surjects onto groups that have one."""
        if self.order == 1:
            return self.identity
        for g in range(self.order):
            if g == self.identity:
                continue
            if self.is_normally_generated_by(g):
                return g
        return None

    def is_abelian(self) -> bool:
        c = self.cayley
        return all(c[a][b] == c[b][a]
                   for a in range(self.order) for b in range(a))

    def to_json(self) -> dict:
        return {"order": self.order, "identity": self.identity,
                "table": [list(r) for r in self.cayley],
                "labels": dict(self.labels)}


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: frozenset[int]

    def __len__(self):
        return len(self.members)


# -- catalog constructors -------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, labels={"a": 1 % n}, name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """D_n = <a, b | a^n = b^2 = 1, b a b = a^-1>, order 2n."""
    if n < 2:
        raise ValueError("dihedral degree must be at least 2")

    def mul(x, y):
        i, e = x % n, x // n
        j, f = y % n, y // n
        jj = j if e == 0 else -j
        return (i + jj) % n + n * ((e + f) % 2)

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    return FiniteGroup(table, labels={"a": 1, "b": n}, name=f"D{n}")


def dicyclic(n: int) -> FiniteGroup:
    """Dic_n = <a, b | a^2n = 1, b^2 = a^n, b a b^-1 = a^-1>, order 4n."""
    if n < 2:
        raise ValueError("dicyclic degree must be at least 2")
    m = 2 * n

    def mul(x, y):
        i, e = x % m, x // m
        j, f = y % m, y // m
        jj = j if e == 0 else -j
        i2 = (i + jj) % m
        if e and f:  # b^2 = a^n
            return (i2 + n) % m
        return i2 + m * ((e + f) % 2)

    table = [[mul(x, y) for y in range(4 * n)] for x in range(4 * n)]
    return FiniteGroup(table, labels={"a": 1, "b": m}, name=f"Dic{n}")


def _multiplicative_order(k: int, p: int) -> int:
    k %= p
    if k == 0:
        return 0
    o, x = 1, k
    while x != 1:
        x = x * k % p
        o += 1
    return o


def metacyclic(m: int, p: int, k: int) -> FiniteGroup:
    """G(m, p | k) = <a, b | a^p = b^m = 1, b a b^-1 = a^k>, order m*p.

    Requires p an odd prime with p = 1 mod m and k a primitive m-th root
    of unity mod p; the three precondition failures are reported apart.
    """
    from .algebra import _is_prime
    if m < 1:
        raise ValueError("m must be positive")
    if not _is_prime(p) or p == 2:
        raise ValueError(f"p = {p} must be an odd prime")
    if (p - 1) % m != 0:
        raise ValueError(f"p = {p} is not congruent to 1 mod m = {m}")
    if pow(k, m, p) != 1:
        raise ValueError(f"k = {k} is not an m-th root of unity mod {p}")
    if _multiplicative_order(k, p) != m:
        raise ValueError(
            f"k = {k} has order {_multiplicative_order(k, p)} mod {p}, not {m}")
    kp = [pow(k, j, p) for j in range(m)]

    def mul(x, y):
        i, j = x % p, x // p
        u, v = y % p, y // p
        return (i + u * kp[j]) % p + p * ((j + v) % m)

    table = [[mul(x, y) for y in range(m * p)] for x in range(m * p)]
    return FiniteGroup(table, labels={"a": 1, "b": p}, name=f"G({m},{p}|{k})")


def _perm_group_from_generators(gens: dict[str, tuple[int, ...]],
                                name: str) -> FiniteGroup:
    """Close named permutations (tuples, p[i] = image of i) under
    composition; elements are indexed in BFS discovery order starting
    from the identity, with generators visited in sorted name order."""
    degree = len(next(iter(gens.values())))
    ident = tuple(range(degree))

    def compose(p, q):  # apply q first, then p
        return tuple(p[q[i]] for i in range(degree))

    names = sorted(gens)
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        x = frontier.pop(0)
        for nm in names:
            y = compose(x, gens[nm])
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                frontier.append(y)
    n = len(elems)
    table = [[index[compose(a, b)] for b in elems] for a in elems]
    labels = {nm: index[gens[nm]] for nm in names}
    return FiniteGroup(table, labels=labels, name=name)


def _cycles_to_perm(degree: int, cycles) -> tuple[int, ...]:
    p = list(range(degree))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            p[x - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(p)


def alternating4() -> FiniteGroup:
    """A_4 = <a, b | a^3 = b^2 = 1, (ab)^3 = 1>, as even permutations."""
    a = _cycles_to_perm(4, [(1, 2, 3)])
    b = _cycles_to_perm(4, [(1, 2), (3, 4)])
    g = _perm_group_from_generators({"a": a, "b": b}, "A4")
    if g.order != 12:
        raise GroupValidationError("A4 construction has wrong order")
    return g


def d3_semidirect_c3() -> FiniteGroup:
    """<a, b, c | a^3 = b^3 = c^2 = 1, ab = ba, cac = a^-1, cbc = b^-1>,
    realized by its standard embedding into S_9."""
    a = _cycles_to_perm(9, [(1, 2, 3), (4, 5, 6), (7, 8, 9)])
    b = _cycles_to_perm(9, [(1, 5, 8), (2, 6, 9), (3, 4, 7)])
    c = _cycles_to_perm(9, [(2, 3), (4, 9), (5, 8), (6, 7)])
    g = _perm_group_from_generators({"a": a, "b": b, "c": c}, "D3sC3")
    if g.order != 18:
        raise GroupValidationError("D3 x| C3 construction has wrong order")
    return g


def dp_semidirect_cp(p: int) -> FiniteGroup:
    """<a, b, c | a^p = b^p = c^2 = 1, ab = ba, cac = a^-1, cbc = b^-1,
    order 2p^2; element (i, j, eps) = a^i b^j c^eps has index
    (i*p + j) + p^2 * eps."""
    from .algebra import _is_prime
    if not _is_prime(p) or p == 2:
        raise ValueError(f"p = {p} must be an odd prime")
    pp = p * p

    def mul(x, y):
        ij, e = x % pp, x // pp
        uv, f = y % pp, y // pp
        i, j = divmod(ij, p)
        u, v = divmod(uv, p)
        if e:
            u, v = -u % p, -v % p
        return ((i + u) % p) * p + (j + v) % p + pp * ((e + f) % 2)

    table = [[mul(x, y) for y in range(2 * pp)] for x in range(2 * pp)]
    return FiniteGroup(table, labels={"a": p, "b": 1, "c": pp},
                       name=f"D{p}sC{p}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Componentwise product; pair (x, y) gets index x*|H| + y.  Labels of
    the left factor keep their names, colliding right-factor labels get a
    prime suffix."""
    nh = h.order
    table = [[g.cayley[x1][x2] * nh + h.cayley[y1][y2]
              for x2 in range(g.order) for y2 in range(h.order)]
             for x1 in range(g.order) for y1 in range(h.order)]
    labels = {}
    for name, x in g.labels.items():
        labels[name] = x * nh + h.identity
    for name, y in h.labels.items():
        while name in labels:
            name += "'"
        labels[name] = g.identity * nh + y
    return FiniteGroup(table, labels=labels,
                       name=f"{g.name}x{h.name}")


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def group_from_cayley_json(obj: dict | str) -> FiniteGroup:
    """Load {order, identity, table, labels} and re-validate all axioms."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    table = obj["table"]
    if len(table) != obj["order"]:
        raise GroupValidationError("declared order does not match the table")
    g = FiniteGroup(table, labels=obj.get("labels"),
                    name=obj.get("name", "custom"))
    if "identity" in obj and g.identity != obj["identity"]:
        raise GroupValidationError("declared identity is wrong")
    return g


# -- matrix representations -------------------------------------------------


@dataclass(frozen=True)
class MatrixRep:
    """A homomorphism from a finite group into GL(dimension, ZZ), stored as
    one integer matrix per element."""

    group: FiniteGroup
    dimension: int
    images: tuple[tuple[tuple[int, ...], ...], ...]

    def image(self, g: int) -> tuple[tuple[int, ...], ...]:
        return self.images[g]

    def as_permutations(self) -> tuple[tuple[int, ...], ...] | None:
        """If every image is a permutation matrix, the column maps j -> i
        with image[i][j] = 1; None otherwise."""
        perms = []
        for mat in self.images:
            perm = [-1] * self.dimension
            for i, row in enumerate(mat):
                for j, v in enumerate(row):
                    if v == 1:
                        if perm[j] != -1:
                            return None
                        perm[j] = i
                    elif v != 0:
                        return None
            if any(x < 0 for x in perm):
                return None
            perms.append(tuple(perm))
        return tuple(perms)

    def validate(self, pair_budget: int = 4_000_000) -> None:
        n, d = self.group.order, self.dimension
        if len(self.images) != n:
            raise GroupValidationError("one image per element required")
        ident = tuple(tuple(1 if i == j else 0 for j in range(d))
                      for i in range(d))
        if self.images[self.group.identity] != ident:
            raise GroupValidationError("identity does not map to I")
        perms = self.as_permutations()
        if perms is not None:
            for g in range(n):
                for h in range(n):
                    pg, ph = perms[g], perms[h]
                    if perms[self.group.mul(g, h)] != tuple(
                            pg[ph[j]] for j in range(d)):
                        raise GroupValidationError(
                            f"homomorphism law fails at ({g},{h})")
            return
        if n * n * d ** 3 > pair_budget:
            return  # exhaustive check out of budget for dense images
        for g in range(n):
            for h in range(n):
                if _mat_mul(self.images[g], self.images[h]) != \
                        self.images[self.group.mul(g, h)]:
                    raise GroupValidationError(
                        f"homomorphism law fails at ({g},{h})")


def _mat_mul(a, b):
    n, m = len(a), len(b[0])
    k = len(b)
    return tuple(tuple(sum(a[i][x] * b[x][j] for x in range(k))
                       for j in range(m)) for i in range(n))


def regular_representation(group: FiniteGroup) -> MatrixRep:
    """Left multiplication h -> g*h on the element basis: the image of g is
    the |G| x |G| permutation matrix with a 1 in row g*j of column j."""
    n = group.order
    images = []
    for g in range(n):
        col_to_row = [group.mul(g, j) for j in range(n)]
        mat = [[0] * n for _ in range(n)]
        for j, i in enumerate(col_to_row):
            mat[i][j] = 1
        images.append(tuple(tuple(r) for r in mat))
    rep = MatrixRep(group, n, tuple(images))
    rep.validate()
    return rep


def trivial_representation(group: FiniteGroup) -> MatrixRep:
    images = tuple(((1,),) for _ in range(group.order))
    return MatrixRep(group, 1, images)


def direct_sum_rep(r1: MatrixRep, r2: MatrixRep) -> MatrixRep:
    """Block-diagonal sum of two representations of the same group."""
    if r1.group is not r2.group:
        raise ValueError("direct sum requires a common group")
    d1, d2 = r1.dimension, r2.dimension
    images = []
    for g in range(r1.group.order):
        top = [tuple(row) + (0,) * d2 for row in r1.images[g]]
        bot = [(0,) * d1 + tuple(row) for row in r2.images[g]]
        images.append(tuple(top + bot))
    return MatrixRep(r1.group, d1 + d2, tuple(images))
