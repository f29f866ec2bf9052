"""Right-hand sides of the congruence formulas, the congruence checker,
and the binomial/conjugating-matrix identities used in their proofs.

Each supported case pairs a finite group with a closed-form expression in
the classical Alexander polynomial.  Complex roots of unity never appear:
whole Galois-orbit products are evaluated through the resultant-based
``product_over_roots_of_unity``, and integer scalars act through
``substitute_scale`` in the prime field, so everything stays exact.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .algebra import (
    INTEGERS,
    LaurentPolynomial,
    RationalFunction,
    _is_prime,
    equal_up_to_unit,
    prime_field,
    product_over_roots_of_unity,
    rational_normalize,
    reduce_mod,
    substitute_scale,
)
from .groups import (
    FiniteGroup,
    alternating4,
    cyclic,
    d3_semidirect_c3,
    dicyclic,
    dihedral,
    direct_product,
    dp_semidirect_cp,
    metacyclic,
    regular_representation,
)
from .homsearch import (
    DEFAULT_BUDGET,
    find_meridional_surjections,
    regular_equivalence_classes,
)
from .knots import KnotPresentation
from .twisted import alexander_polynomial, twisted_alexander_mod, wada_invariant

CASE_NAMES = ("cyclic", "dihedral", "dihedral_times_cyclic", "metacyclic",
              "dicyclic", "a4", "d3c3", "conjecture")


@dataclass(frozen=True)
class TheoremCase:
    """A congruence formula instance: case name, integer parameters, and
    the modulus the congruence lives at (None for the exact cyclic case).

    parameters: cyclic (n,); dihedral and dicyclic (p, n) with q = p^n;
    dihedral_times_cyclic (p, n, m); metacyclic (m, p, k);
    a4 and d3c3 (); conjecture (p,).
    """

    name: str
    parameters: tuple[int, ...]
    modulus: int | None

    def __post_init__(self):
        if self.name not in CASE_NAMES:
            raise ValueError(f"unknown case {self.name!r}")
        if self.modulus is not None and not _is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")

    def __str__(self):
        params = ",".join(str(x) for x in self.parameters)
        mod = f" mod {self.modulus}" if self.modulus is not None else ""
        return f"{self.name}({params}){mod}"


def _odd_prime(p: int, what: str) -> int:
    if not _is_prime(p) or p == 2:
        raise ValueError(f"{what} requires an odd prime, got {p}")
    return p


def make_case(name: str, *, n: int | None = None, p: int | None = None,
              m: int | None = None, k: int | None = None,
              modulus: int | None = None) -> TheoremCase:
    """Build and validate a TheoremCase; the default modulus is inferred
    from the case (dihedral q = p^n implies mod p, and so on)."""
    if name == "cyclic":
        if n is None or n < 1:
            raise ValueError("cyclic case needs n >= 1")
        return TheoremCase("cyclic", (n,), modulus)
    if name == "dihedral":
        _odd_prime(p, "dihedral case")
        n = 1 if n is None else n
        if n < 1:
            raise ValueError("dihedral case needs n >= 1")
        return TheoremCase("dihedral", (p, n), modulus or p)
    if name == "dihedral_times_cyclic":
        _odd_prime(p, "dihedral x cyclic case")
        n = 1 if n is None else n
        if n < 1 or m is None or m < 1:
            raise ValueError("dihedral x cyclic case needs n >= 1 and m >= 1")
        return TheoremCase("dihedral_times_cyclic", (p, n, m), modulus or p)
    if name == "metacyclic":
        _odd_prime(p, "metacyclic case")
        if m is None or k is None:
            raise ValueError("metacyclic case needs m and k")
        metacyclic(m, p, k)  # full precondition validation
        return TheoremCase("metacyclic", (m, p, k), modulus or p)
    if name == "dicyclic":
        _odd_prime(p, "dicyclic case")
        n = 1 if n is None else n
        if n < 1:
            raise ValueError("dicyclic case needs n >= 1")
        return TheoremCase("dicyclic", (p, n), modulus or p)
    if name == "a4":
        return TheoremCase("a4", (), modulus or 2)
    if name == "d3c3":
        return TheoremCase("d3c3", (), modulus or 3)
    if name == "conjecture":
        _odd_prime(p, "conjecture case")
        return TheoremCase("conjecture", (p,), modulus or p)
    raise ValueError(f"unknown case {name!r}")


def group_for_case(case: TheoremCase) -> FiniteGroup:
    if case.name == "cyclic":
        return cyclic(case.parameters[0])
    if case.name == "dihedral":
        p, n = case.parameters
        return dihedral(p ** n)
    if case.name == "dihedral_times_cyclic":
        p, n, m = case.parameters
        return direct_product(dihedral(p ** n), cyclic(m))
    if case.name == "metacyclic":
        m, p, k = case.parameters
        return metacyclic(m, p, k)
    if case.name == "dicyclic":
        p, n = case.parameters
        return dicyclic(p ** n)
    if case.name == "a4":
        return alternating4()
    if case.name == "d3c3":
        return d3_semidirect_c3()
    if case.name == "conjecture":
        return dp_semidirect_cp(case.parameters[0])
    raise AssertionError(case.name)


def mth_roots_of_unity_mod_p(m: int, p: int) -> list[int]:
    """All k in 1..p-1 with k^m = 1 mod p, ascending; requires m | p-1."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (p - 1) % m != 0:
        raise ValueError(f"m = {m} does not divide p - 1 = {p - 1}")
    return [k for k in range(1, p) if pow(k, m, p) == 1]


def _t_minus_1(domain=INTEGERS) -> LaurentPolynomial:
    return LaurentPolynomial.make(domain, 0, (-1, 1))


def _check_is_alexander(delta: LaurentPolynomial):
    if delta.domain.p is not None:
        raise ValueError("the Alexander polynomial must be exact over ZZ")
    if delta.is_zero or abs(delta.evaluate(1)) != 1:
        raise ValueError("not a knot Alexander polynomial: Delta(1) != +-1")


def _cyclic_orbit_quotient(delta: LaurentPolynomial, n: int
                           ) -> RationalFunction:
    """prod_{j=1..n} Delta(a^j t) / (a^j t - 1) as an exact rational
    function; the denominator orbit product is +-(t^n - 1)."""
    num = product_over_roots_of_unity(delta, n)
    den = product_over_roots_of_unity(_t_minus_1(), n)
    return RationalFunction(num, den)


def rhs(case: TheoremCase, delta: LaurentPolynomial,
        form: str = "regrouped") -> RationalFunction:
    """The formula's right-hand side, normalized, reduced to the case's
    modulus when it has one.

    ``form`` only matters for the metacyclic case, whose theorem display
    and worked-example regrouping are algebraically equal; both are
    implemented and their agreement is a test.
    """
    _check_is_alexander(delta)
    name = case.name
    if name == "cyclic":
        out = _cyclic_orbit_quotient(delta, case.parameters[0])
        if case.modulus is not None:
            out = out.reduce_mod(case.modulus)
        return rational_normalize(out)

    p = case.modulus
    assert p is not None
    field = prime_field(p)
    dp = reduce_mod(delta, p)
    tm1 = _t_minus_1(field)
    tp1 = LaurentPolynomial.make(field, 0, (1, 1))

    if name in ("dihedral", "d3c3", "conjecture"):
        if name == "dihedral":
            q = case.parameters[0] ** case.parameters[1]
        elif name == "d3c3":
            q = 9
        else:
            q = case.parameters[0] ** 2
        half = RationalFunction(dp * substitute_scale(dp, -1), tm1 * tp1)
        return rational_normalize(half ** q)

    if name == "dihedral_times_cyclic":
        pp, n, m = case.parameters
        q = pp ** n
        orbit = _cyclic_orbit_quotient(delta, m)
        neg = RationalFunction(substitute_scale(orbit.numerator, -1),
                               substitute_scale(orbit.denominator, -1))
        both = (orbit * neg).reduce_mod(p)
        return rational_normalize(both ** q)

    if name == "dicyclic":
        pp, n = case.parameters
        q = pp ** n
        quarter = _cyclic_orbit_quotient(delta, 4).reduce_mod(p)
        return rational_normalize(quarter ** q)

    if name == "a4":
        third = _cyclic_orbit_quotient(delta, 3).reduce_mod(2)
        return rational_normalize(third ** 4)

    if name == "metacyclic":
        m, pp, k = case.parameters
        roots = mth_roots_of_unity_mod_p(m, pp)
        orbit = _cyclic_orbit_quotient(delta, m).reduce_mod(p)

        def scaled(kj: int) -> RationalFunction:
            return RationalFunction(substitute_scale(dp, kj),
                                    substitute_scale(tm1, kj))

        if form == "theorem":
            acc = orbit
            for kj in roots:
                acc = acc * scaled(kj) ** (pp - 1)
            return rational_normalize(acc)
        if form == "regrouped":
            # Delta(t)/(t-1) to the power p, the nontrivial k_j to p-1,
            # and the orbit with its trivial root divided back out
            acc = scaled(1) ** pp
            for kj in roots:
                if kj != 1:
                    acc = acc * scaled(kj) ** (pp - 1)
            acc = acc * orbit / scaled(1)
            return rational_normalize(acc)
        raise ValueError(f"unknown metacyclic form {form!r}")

    raise AssertionError(name)


@dataclass(frozen=True)
class VerdictRecord:
    """Per-(knot, case) outcome of a congruence check."""

    knot: str
    group: str
    parameters: tuple[int, ...]
    surjections_found: int
    verdicts: tuple[bool, ...]
    lhs: tuple[RationalFunction, ...]
    rhs: RationalFunction | None
    modulus: int | None
    elapsed_ms: float

    @property
    def all_verified(self) -> bool:
        return all(self.verdicts)

    @property
    def vacuous(self) -> bool:
        return self.surjections_found == 0

    def to_json(self) -> dict:
        return {
            "knot": self.knot,
            "group": self.group,
            "parameters": list(self.parameters),
            "surjections_found": self.surjections_found,
            "verdicts": list(self.verdicts),
            "lhs": [x.to_json() for x in self.lhs],
            "rhs": self.rhs.to_json() if self.rhs is not None else None,
            "modulus": self.modulus,
            "elapsed_ms": self.elapsed_ms,
        }


def verify_congruence(pres: KnotPresentation, knot_name: str,
                      case: TheoremCase,
                      budget: int = DEFAULT_BUDGET) -> VerdictRecord:
    """Check the case's formula against every surjection up to conjugacy.

    The left side runs through the full twisted pipeline (mod p, or the
    exact invariant for the cyclic case); the right side is rhs() on the
    classical Alexander polynomial.  No surjections is a vacuous verdict,
    not a failure.
    """
    start = time.perf_counter()
    group = group_for_case(case)
    rep = regular_representation(group)
    surjections = find_meridional_surjections(
        pres, group, up_to_conjugacy=True, budget=budget)
    delta = alexander_polynomial(pres)
    rhs_value = rhs(case, delta)
    lhs_values = []
    verdicts = []
    for f in surjections:
        if case.modulus is None:
            res = wada_invariant(pres, f, rep, INTEGERS)
        else:
            res = twisted_alexander_mod(pres, f, rep, case.modulus)
        lhs_values.append(res.normalized)
        verdicts.append(equal_up_to_unit(res.normalized, rhs_value))
    elapsed = (time.perf_counter() - start) * 1000.0
    return VerdictRecord(
        knot=knot_name, group=group.name, parameters=case.parameters,
        surjections_found=len(surjections), verdicts=tuple(verdicts),
        lhs=tuple(lhs_values), rhs=rhs_value, modulus=case.modulus,
        elapsed_ms=elapsed)


# -- the order-< 24 catalog and the nonvanishing sweep ---------------------


def catalog_under_24() -> list[tuple[str, FiniteGroup, int | None]]:
    """The 35 groups of order < 24 that are normally generated by one
    element, each with the modulus at which its formula lives (None means
    the exact cyclic identity)."""
    entries: list[tuple[str, FiniteGroup, int | None]] = []
    for n in range(1, 24):
        entries.append((f"C{n}", cyclic(n), None))
    for q, p in ((3, 3), (5, 5), (7, 7), (9, 3), (11, 11)):
        entries.append((f"D{q}", dihedral(q), p))
    entries.append(("D3xC3", direct_product(dihedral(3), cyclic(3)), 3))
    entries.append(("G(4,5|2)", metacyclic(4, 5, 2), 5))
    entries.append(("G(3,7|2)", metacyclic(3, 7, 2), 7))
    entries.append(("Dic3", dicyclic(3), 3))
    entries.append(("Dic5", dicyclic(5), 5))
    entries.append(("A4", alternating4(), 2))
    entries.append(("D3sC3", d3_semidirect_c3(), 3))
    return entries


@dataclass(frozen=True)
class NonvanishingRecord:
    knot: str
    group: str
    surjections_found: int
    classes_computed: int
    all_nonzero: bool
    modulus: int | None
    elapsed_ms: float


def sweep_nonvanishing(table: dict[str, KnotPresentation],
                       budget: int = DEFAULT_BUDGET,
                       progress=None) -> list[NonvanishingRecord]:
    """For every catalog group and bundled knot, check that each computed
    twisted invariant is nonzero (mod the theorem's p where one applies,
    exact otherwise).

    Surjections are grouped into regular-equivalence classes (one
    invariant per automorphism orbit; such orbits share the invariant by
    the conjugate-representation lemma), which keeps the cyclic part of
    the sweep tractable.
    """
    out = []
    for group_name, group, modulus in catalog_under_24():
        rep = regular_representation(group)
        for knot_name in sorted(table):
            start = time.perf_counter()
            pres = table[knot_name]
            homs = find_meridional_surjections(
                pres, group, up_to_conjugacy=True, budget=budget)
            classes = regular_equivalence_classes(homs)
            all_nonzero = True
            for cls in classes:
                f = cls[0]
                if modulus is None:
                    res = wada_invariant(pres, f, rep, INTEGERS)
                else:
                    res = twisted_alexander_mod(pres, f, rep, modulus)
                if res.is_zero:
                    all_nonzero = False
            rec = NonvanishingRecord(
                knot=knot_name, group=group_name,
                surjections_found=len(homs), classes_computed=len(classes),
                all_nonzero=all_nonzero, modulus=modulus,
                elapsed_ms=(time.perf_counter() - start) * 1000.0)
            if progress is not None:
                progress(rec)
            out.append(rec)
    return out


# -- binomial identities and conjugating matrices from the proofs ----------


def binomial(n: int, k: int) -> int:
    """C(n, k) for any integer n (falling factorial over k!), k >= 0."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


def a_matrix(p: int, n: int) -> list[list[int]]:
    """The q x q binomial matrix (i, j) -> C(i-1, j-1) mod p, q = p^n."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be at least 1")
    q = p ** n
    return [[binomial(i, j) % p for j in range(q)] for i in range(q)]


def tau_a(p: int, n: int) -> list[list[int]]:
    """Upper triangular with alternating 1, -1 bands: (i, j) -> (-1)^(j-i)
    for i <= j, 0 below; all diagonal entries 1."""
    _odd_prime(p, "tau(a)")
    q = p ** n
    return [[(1 if (j - i) % 2 == 0 else p - 1) if i <= j else 0
             for j in range(q)] for i in range(q)]


def tau_b(p: int, n: int) -> list[list[int]]:
    """(i, j) -> (-1)^(j-1) C(j-1, i-1) mod p; upper triangular with
    alternating +-1 diagonal."""
    _odd_prime(p, "tau(b)")
    q = p ** n
    return [[(-1) ** j * binomial(j, i) % p for j in range(q)]
            for i in range(q)]


def dihedral_perm_a(q: int) -> list[list[int]]:
    """The q-cycle permutation matrix of the rotation in the embedding
    D_q -> S_q: ones on the subdiagonal and in the top-right corner."""
    mat = [[0] * q for _ in range(q)]
    mat[0][q - 1] = 1
    for i in range(1, q):
        mat[i][i - 1] = 1
    return mat


def dihedral_perm_b(q: int) -> list[list[int]]:
    """The antidiagonal reflection matrix."""
    mat = [[0] * q for _ in range(q)]
    for i in range(q):
        mat[i][q - 1 - i] = 1
    return mat


def metacyclic_perm_b(p: int, k: int) -> list[list[int]]:
    """Permutation image of b for G(m, p | k) acting on C_p: the (i, j)
    entry is 1 exactly when j = k*i - 1 mod p (1-based as in the proof)."""
    mat = [[0] * p for _ in range(p)]
    for i in range(1, p + 1):
        j = (k * i - 2) % p + 1
        mat[i - 1][j - 1] = 1
    return mat


def mat_mul_mod(a, b, p):
    n, m, kk = len(a), len(b[0]), len(b)
    return [[sum(a[i][x] * b[x][j] for x in range(kk)) % p
             for j in range(m)] for i in range(n)]


def mat_inv_mod(a, p):
    """Gauss-Jordan inverse of a square matrix over F_p."""
    n = len(a)
    aug = [[x % p for x in row] + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % p), None)
        if piv is None:
            raise ArithmeticError("matrix is singular mod p")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [(x * inv) % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def check_lucas(p: int, limit: int) -> bool:
    """C(m, n) mod p equals the digit-wise product of base-p binomials,
    for all 0 <= n <= m <= limit."""
    for m in range(limit + 1):
        for n in range(m + 1):
            lhs = math.comb(m, n) % p
            rhs_v, mm, nn = 1, m, n
            while mm or nn:
                rhs_v = rhs_v * math.comb(mm % p, nn % p) % p
                mm //= p
                nn //= p
            if lhs != rhs_v:
                return False
    return True


def check_pascal(limit: int) -> bool:
    return all(math.comb(m, n) == math.comb(m - 1, n) + math.comb(m - 1, n - 1)
               for m in range(1, limit + 1) for n in range(1, limit + 1))


def check_vandermonde(limit: int) -> bool:
    """C(m+n, r) = sum_k C(m, k) C(n, r-k) for all m, n <= limit and every
    r: each Pascal row is packed into one big integer wide enough that row
    convolution is integer multiplication, so the check is a product."""
    width = 2 * limit + 8  # C(2*limit, limit) < 2^(2*limit)
    packed = []
    for m in range(2 * limit + 1):
        v = 0
        for k in range(m, -1, -1):
            v = (v << width) + math.comb(m, k)
        packed.append(v)
    return all(packed[m] * packed[n] == packed[m + n]
               for m in range(limit + 1) for n in range(limit + 1))


def check_euler_finite_difference(n_limit: int, a_values=(1, 2, 3)) -> bool:
    """The alternating binomial sum annihilates polynomials of degree
    r < n and picks out (-1)^n n! a_n at degree n; checked on monomials
    x^r and on the paper's special case f(k) = C(ak - 2, r)."""
    kmax = n_limit
    powers = [[k ** r for r in range(n_limit + 1)] for k in range(kmax + 1)]
    shifted = {a: [[binomial(a * k - 2, r) for r in range(n_limit + 1)]
                   for k in range(kmax + 1)] for a in a_values}
    for n in range(n_limit + 1):
        signed = [(-1) ** k * math.comb(n, k) for k in range(n + 1)]
        for r in range(n + 1):
            s = sum(c * powers[k][r] for k, c in enumerate(signed))
            expect = 0 if r < n else (-1) ** n * math.factorial(n)
            if s != expect:
                return False
        for a in a_values:
            tab = shifted[a]
            for r in range(n + 1):
                s = sum(c * tab[k][r] for k, c in enumerate(signed))
                expect = 0 if r < n else (-1) ** n * a ** n
                if s != expect:
                    return False
    return True


def check_dihedral_lemma(p: int, n: int) -> bool:
    """The three binomial claims behind the dihedral theorem, over their
    full stated ranges for q = p^n."""
    q = p ** n
    for k in range(q):
        if math.comb(q - 1, k) % p != (-1) ** k % p:
            return False
    for m in range(1, q + 1):
        for j in range(1, q + 1):
            s = sum((-1) ** (j - k) * math.comb(m, k - 1)
                    for k in range(1, j + 1))
            if s != binomial(m - 1, j - 1):
                return False
    for i in range(1, q + 1):
        for j in range(1, q + 1):
            lhs = (-1) ** (j - 1) * binomial(i + j - 2, j - 1) % p
            if lhs != binomial(q - i, j - 1) % p:
                return False
    return True


def check_metacyclic_lemma(p: int) -> bool:
    """The three claims behind the metacyclic theorem: the convolution
    identity, the explicit inverse of A_p, and the sign-flip symmetry."""
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            s = sum(binomial(i - 1, k - 1) * binomial(p - j, p - k)
                    for k in range(j, i + 1))
            if s != binomial((p - j) + (i - 1), p - 1):
                return False
    a = a_matrix(p, 1)
    m = [[binomial(p - j, p - i) % p for j in range(1, p + 1)]
         for i in range(1, p + 1)]
    ident = [[1 if i == j else 0 for j in range(p)] for i in range(p)]
    if mat_mul_mod(a, m, p) != ident or mat_mul_mod(m, a, p) != ident:
        return False
    for i in range(1, p + 1):
        for s in range(1, p + 1):
            if binomial(p - s, p - i) % p != \
                    (-1) ** (i + s) * binomial(i - 1, s - 1) % p:
                return False
    return True


def check_dihedral_conjugation(p: int, n: int) -> bool:
    """A_{p,n}^-1 rho(a) A_{p,n} = tau(a) and likewise for b, exactly
    mod p, with rho the permutation images from the proof."""
    q = p ** n
    a = a_matrix(p, n)
    ainv = mat_inv_mod(a, p)
    lhs_a = mat_mul_mod(mat_mul_mod(ainv, dihedral_perm_a(q), p), a, p)
    lhs_b = mat_mul_mod(mat_mul_mod(ainv, dihedral_perm_b(q), p), a, p)
    return lhs_a == tau_a(p, n) and lhs_b == tau_b(p, n)


def check_metacyclic_triangularization(m: int, p: int, k: int) -> bool:
    """A_p^-1 rho(b) A_p is upper triangular with diagonal
    (1, k, k^2, ..., k^(p-1)) mod p."""
    metacyclic(m, p, k)  # validate the parameters
    a = a_matrix(p, 1)
    ainv = mat_inv_mod(a, p)
    t = mat_mul_mod(mat_mul_mod(ainv, metacyclic_perm_b(p, k), p), a, p)
    for i in range(p):
        for j in range(i):
            if t[i][j] % p:
                return False
        if t[i][i] % p != pow(k, i, p):
            return False
    return True
