"""Toric ideals, weighted Gröbner bases and the L-initial ideal.

Polynomials in ``d_1..d_n`` are sparse dicts ``{exponent tuple: Fraction}``.
Term orders are given by a key function on exponents (larger key means
larger term), so weight orders with a tie-breaking order are just tuple
keys. Everything is exact.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable

from .exactmath import dot, integer_kernel
from .umbrella import ToricMatrix, Umbrella, as_weights

Exp = tuple[int, ...]
Poly = dict[Exp, Fraction]


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of budget before reaching a decision."""


# -- polynomial helpers ---------------------------------------------------


def monomial(e: Iterable[int]) -> Poly:
    return {tuple(e): Fraction(1)}


def binomial_from_vector(u: Iterable[int]) -> Poly:
    """``d^{u+} - d^{u-}`` for an integer vector ``u``."""
    u = tuple(u)
    plus = tuple(max(x, 0) for x in u)
    minus = tuple(max(-x, 0) for x in u)
    if plus == minus:
        return {}
    return {plus: Fraction(1), minus: Fraction(-1)}


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    return not any(x and y for x, y in zip(a, b))


def poly_mul_term(f: Poly, e: Exp, c) -> Poly:
    return {_add_exp(m, e): a * c for m, a in f.items()}


def poly_sub(f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for m, a in g.items():
        v = out.get(m, 0) - a
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def substitute_zero(f: Poly, zero: Iterable[int]) -> Poly:
    """Set ``d_i = 0`` for ``i`` in ``zero``."""
    zero = set(zero)
    return {m: a for m, a in f.items() if not any(m[i] for i in zero)}


def format_poly(f: Poly, var: str = "d") -> str:
    """Human-readable form with 1-based variables, positive terms first."""
    if not f:
        return "0"
    parts = []
    for m in sorted(f, key=lambda m: (f[m] < 0, tuple(-x for x in m))):
        c = f[m]
        mono = "*".join(
            f"{var}{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(m) if k
        )
        body = mono or "1"
        mag = abs(c)
        if mono and mag == 1:
            text = body
        elif mono:
            text = f"{mag}*{body}"
        else:
            text = str(mag)
        parts.append(("- " if c < 0 else "+ ") + text)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[1:]


# -- term orders ----------------------------------------------------------


@dataclass(frozen=True)
class TermOrder:
    """Weight vectors compared in turn, then a tie-break order.

    ``tiebreak`` is ``"grevlex"``, ``"revlex"`` (no degree step) or ``"lex"``;
    ``var_order`` lists variables from largest to smallest. The first weight
    must be positive for Buchberger to terminate.
    """

    weights: tuple[tuple[Fraction, ...], ...] = ()
    tiebreak: str = "grevlex"
    var_order: tuple[int, ...] | None = None

    def key(self, m: Exp):
        order = self.var_order if self.var_order is not None else range(len(m))
        head = tuple(dot(w, m) for w in self.weights)
        if self.tiebreak == "lex":
            return head + tuple(m[i] for i in order)
        tail = tuple(-m[i] for i in reversed(tuple(order)))
        if self.tiebreak == "grevlex":
            return head + (sum(m),) + tail
        if self.tiebreak == "revlex":
            return head + tail
        raise ValueError(f"unknown tie-break {self.tiebreak!r}")

    def lead(self, f: Poly) -> Exp:
        return max(f, key=self.key)


@dataclass(frozen=True)
class KeyOrder:
    """A term order given directly by a key function."""

    key: Callable[[Exp], tuple]

    def lead(self, f: Poly) -> Exp:
        return max(f, key=self.key)


# -- Buchberger -----------------------------------------------------------


def _monic(f: Poly, lt: Exp) -> Poly:
    c = f[lt]
    return {m: a / c for m, a in f.items()}


def normal_form(f: Poly, G: list[tuple[Exp, Poly]], order) -> Poly:
    """Full reduction of ``f`` by monic ``G`` given as ``(leading exponent, poly)`` pairs."""
    f = dict(f)
    rem: Poly = {}
    while f:
        lt = order.lead(f)
        c = f[lt]
        for glt, g in G:
            if _divides(glt, lt):
                shift = tuple(x - y for x, y in zip(lt, glt))
                f = poly_sub(f, poly_mul_term(g, shift, c))
                break
        else:
            rem[lt] = c
            del f[lt]
    return rem


def s_polynomial(f: Poly, flt: Exp, g: Poly, glt: Exp) -> Poly:
    l = _lcm(flt, glt)
    a = poly_mul_term(f, tuple(x - y for x, y in zip(l, flt)), 1 / f[flt])
    b = poly_mul_term(g, tuple(x - y for x, y in zip(l, glt)), 1 / g[glt])
    return poly_sub(a, b)


def groebner(F: Iterable[Poly], order) -> list[Poly]:
    """Reduced Gröbner basis (monic, sorted by leading term) of the ideal of ``F``."""
    G: list[tuple[Exp, Poly]] = []
    for f in F:
        if f:
            lt = order.lead(f)
            G.append((lt, _monic(f, lt)))
    pairs = [(i, j) for i in range(len(G)) for j in range(i)]
    while pairs:
        # normal selection: smallest lcm first
        pairs.sort(key=lambda p: order.key(_lcm(G[p[0]][0], G[p[1]][0])), reverse=True)
        i, j = pairs.pop()
        (a, f), (b, g) = G[i], G[j]
        if _coprime(a, b):
            continue
        l = _lcm(a, b)
        # chain criterion: some third leading term divides the lcm and its pairs are done
        if any(
            k not in (i, j)
            and _divides(G[k][0], l)
            and (max(i, k), min(i, k)) not in pairs
            and (max(j, k), min(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        r = normal_form(s_polynomial(f, a, g, b), G, order)
        if r:
            lt = order.lead(r)
            G.append((lt, _monic(r, lt)))
            k = len(G) - 1
            pairs.extend((k, m) for m in range(k))
    return reduce_basis([g for _, g in G], order)


def reduce_basis(G: Iterable[Poly], order) -> list[Poly]:
    """Minimalize and interreduce; the result is reduced when ``G`` is a Gröbner basis."""
    items = []
    for g in G:
        if g:
            lt = order.lead(g)
            items.append((lt, _monic(g, lt)))
    items.sort(key=lambda p: order.key(p[0]))
    minimal = []
    for lt, g in items:
        if not any(_divides(mlt, lt) for mlt, _ in minimal):
            minimal.append((lt, g))
    out = []
    for k, (lt, g) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        tail = normal_form({m: a for m, a in g.items() if m != lt}, others, order)
        tail[lt] = Fraction(1)
        out.append(tail)
    out.sort(key=lambda f: order.key(order.lead(f)))
    return out


def is_groebner(G: list[Poly], order) -> bool:
    """Every S-pair reduces to zero."""
    pairs = [(order.lead(g), g) for g in G if g]
    for (a, f), (b, g) in combinations(pairs, 2):
        if normal_form(s_polynomial(f, a, g, b), pairs, order):
            return False
    return True


def reduce_mod(f: Poly, G: list[Poly], order) -> Poly:
    return normal_form(f, [(order.lead(g), _monic(g, order.lead(g))) for g in G if g], order)


# -- toric ideals ---------------------------------------------------------


@dataclass(frozen=True)
class Binomial:
    """``d^plus - d^minus`` with disjoint supports."""

    plus: Exp
    minus: Exp

    def __post_init__(self):
        if any(p and m for p, m in zip(self.plus, self.minus)):
            raise ValueError("binomial exponents must have disjoint support")

    @classmethod
    def from_poly(cls, f: Poly) -> "Binomial":
        (m1, c1), (m2, c2) = sorted(f.items())
        if c1 + c2 != 0:
            raise ValueError("not a pure difference binomial")
        return cls(m1, m2) if c1 > 0 else cls(m2, m1)

    def poly(self) -> Poly:
        return {self.plus: Fraction(1), self.minus: Fraction(-1)}

    def vector(self) -> tuple[int, ...]:
        return tuple(p - m for p, m in zip(self.plus, self.minus))

    def degree(self, A: ToricMatrix) -> tuple[int, ...]:
        return tuple(dot(row, self.plus) for row in A.rows)


@dataclass(frozen=True)
class ToricIdeal:
    """Reduced Gröbner basis of ``I_A`` under a positive grading and revlex."""

    A: ToricMatrix
    grading: tuple[int, ...]
    generators: tuple[Binomial, ...]

    def polys(self) -> list[Poly]:
        return [b.poly() for b in self.generators]


def _saturation_order(g, j: int, n: int) -> TermOrder:
    var_order = tuple(i for i in range(n) if i != j) + (j,)
    return TermOrder((tuple(g),), "revlex", var_order)


def toric_ideal(A) -> ToricIdeal:
    """``I_A`` from a kernel basis, saturated one variable at a time.

    Under a grading order with ``d_j`` revlex-smallest, ``d_j`` divides a
    homogeneous element exactly when it divides its leading term, so
    dividing out ``d_j`` from a Gröbner basis generates ``I : d_j^inf``.
    """
    A = ToricMatrix.of(A, strict=False)
    n = A.n
    g = A.grading()
    gens = [binomial_from_vector(u) for u in integer_kernel(A.rows).basis]
    gens = [f for f in gens if f]
    order = _saturation_order(g, n - 1, n)
    for j in range(n):
        order = _saturation_order(g, j, n)
        G = groebner(gens, order)
        gens = []
        for f in G:
            k = min(m[j] for m in f)
            gens.append({tuple(x - k if i == j else x for i, x in enumerate(m)): a for m, a in f.items()})
    G = groebner(gens, order) if gens else []
    return ToricIdeal(A, tuple(g), tuple(Binomial.from_poly(f) for f in G))


# -- initial ideals -------------------------------------------------------


def leading_form(f: Poly, L) -> Poly:
    """Terms of ``f`` of maximal ``L``-weight."""
    if not f:
        return {}
    top = max(dot(L, m) for m in f)
    return {m: a for m, a in f.items() if dot(L, m) == top}


def _positive_shift(L, g) -> Fraction:
    """Smallest integer ``c >= 1`` with ``L + c g > 0``."""
    c = 1
    for l, gj in zip(L, g):
        while l + c * gj <= 0:
            c += 1
    return Fraction(c)


def weight_order(L, g, tiebreak: str = "grevlex") -> TermOrder:
    """Term order refining ``L`` on ``g``-homogeneous polynomials."""
    c = _positive_shift(L, g)
    return TermOrder((tuple(Fraction(l) + c * gj for l, gj in zip(L, g)),), tiebreak)


@dataclass
class MarkedGroebnerBasis:
    """Reduced Gröbner basis of ``I_A`` whose ``L``-leading forms generate the initial ideal."""

    A: ToricMatrix
    weight: tuple[Fraction, ...]
    order: TermOrder
    generators: list[Poly]
    leading_forms: list[Poly] = field(default_factory=list)
    reduced: bool = True

    def __post_init__(self):
        if not self.leading_forms:
            self.leading_forms = [leading_form(f, self.weight) for f in self.generators]

    def reduce(self, f: Poly) -> Poly:
        """Normal form modulo ``I_A``."""
        return reduce_mod(f, self.generators, self.order)

    def reduce_initial(self, f: Poly) -> Poly:
        """Normal form modulo the initial ideal; the leading forms are a Gröbner basis for it."""
        return reduce_mod(f, self.leading_forms, self.order)

    def initial_ideal_basis(self, order=None) -> list[Poly]:
        """Reduced Gröbner basis of the initial ideal under ``order``."""
        return groebner(self.leading_forms, order or self.order)

    def describe(self) -> list[dict]:
        return [
            {"generator": format_poly(f), "leading_form": format_poly(lf)}
            for f, lf in zip(self.generators, self.leading_forms)
        ]


def _scaled_integer_weights(L) -> tuple[int, ...]:
    den = 1
    for x in L:
        den = den * x.denominator // _gcd(den, x.denominator)
    return tuple(int(x * den) for x in L)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def initial_ideal(ideal: ToricIdeal, L, route: str = "shift", tiebreak: str = "grevlex") -> MarkedGroebnerBasis:
    """Marked Gröbner basis for ``L``, any signs allowed.

    ``route="shift"`` uses the weight ``L + c g`` which orders the
    ``g``-homogeneous ideal exactly like ``L``. ``route="homogenize"`` adds a
    variable ``d_0`` of weight 1 with the row ``L`` on top of ``A``, computes
    there and dehomogenizes; it serves as an independent cross-check.
    """
    A = ideal.A
    L = as_weights(L, A.n)
    order = weight_order(L, ideal.grading, tiebreak)
    if route == "shift":
        G = groebner(ideal.polys(), order)
    elif route == "homogenize":
        G = _via_homogenization(ideal, L, order, tiebreak)
    else:
        raise ValueError(f"unknown route {route!r}")
    return MarkedGroebnerBasis(A, L, order, G)


def _via_homogenization(ideal: ToricIdeal, L, order: TermOrder, tiebreak: str) -> list[Poly]:
    A = ideal.A
    Li = _scaled_integer_weights(L)
    B = ToricMatrix(((1,) + Li,) + tuple((0,) + row for row in A.rows), strict=False)
    c = _positive_shift(Li, ideal.grading)
    G_weight = (1,) + tuple(l + c * gj for l, gj in zip(Li, ideal.grading))
    tb = TermOrder((), tiebreak)

    def key(m):
        return (dot(G_weight, m), -m[0]) + tb.key(m[1:])

    homog = groebner(toric_ideal(B).polys(), KeyOrder(key))
    dehom = []
    for f in homog:
        h: Poly = {}
        for m, a in f.items():
            h[m[1:]] = h.get(m[1:], 0) + a
        h = {m: a for m, a in h.items() if a}
        if h:
            dehom.append(h)
    return reduce_basis(dehom, order)


# -- radical and component checks -----------------------------------------


def default_nmax(n: int) -> int:
    env = os.environ.get("UMBRELLA_NMAX")
    return int(env) if env else 20 * n


def _vanishes_at_indicator(f: Poly, T: frozenset) -> bool:
    return sum((a for m, a in f.items() if all(i in T for i, k in enumerate(m) if k)), Fraction(0)) == 0


def radical_monomial_witness(gb: MarkedGroebnerBasis, S, nmax: int | None = None) -> bool:
    """Whether ``prod_{k in S} d_k`` lies in the radical of the initial ideal.

    ``False`` is certified by a 0/1 point of the initial variety where the
    monomial is 1; for ideals of monomials and pure difference binomials
    such a point exists whenever one exists at all. ``True`` is certified by
    a power of the monomial reducing to zero.
    """
    n = gb.A.n
    S = frozenset(S)
    rest = [j for j in range(n) if j not in S]
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            T = S | frozenset(extra)
            if all(_vanishes_at_indicator(f, T) for f in gb.leading_forms):
                return False
    nmax = default_nmax(n) if nmax is None else nmax
    base = tuple(int(j in S) for j in range(n))
    order = gb.order
    G = [(order.lead(f), _monic(f, order.lead(f))) for f in gb.leading_forms if f]
    power = monomial((0,) * n)
    for _ in range(nmax):
        power = normal_form(poly_mul_term(power, base, 1), G, order)
        if not power:
            return True
    raise BudgetExceeded(f"no nilpotency certificate up to power {nmax}")


@dataclass
class ComponentReport:
    facet_checks: dict = field(default_factory=dict)
    witness_checks: dict = field(default_factory=dict)

    @property
    def facets_ok(self) -> bool:
        return all(self.facet_checks.values())

    @property
    def witnesses_ok(self) -> bool:
        return all(expected == got for expected, got in self.witness_checks.values())

    @property
    def passed(self) -> bool:
        return self.facets_ok and self.witnesses_ok

    def summary(self) -> dict:
        return {
            "facet_membership": "pass" if self.facets_ok else "fail",
            "radical_witness": "pass" if self.witnesses_ok else "fail",
            "facets_checked": len(self.facet_checks),
            "subsets_checked": len(self.witness_checks),
        }


def verify_components(gb: MarkedGroebnerBasis, umb: Umbrella, max_size: int = 3, nmax: int | None = None) -> ComponentReport:
    """Check the initial ideal against the facets of ``umb``.

    (i) each leading form, with ``d_i = 0`` off a facet ``tau``, lies in the
    toric ideal of ``tau``; (ii) a monomial on ``S`` is nilpotent modulo the
    initial ideal exactly when ``S`` lies in no facet, for ``|S| <= max_size``.
    """
    A = gb.A
    n = A.n
    report = ComponentReport()
    facets = [frozenset(f.members) for f in umb.facets]
    for tau in facets:
        local = _facet_ideal(A, tau)
        off = [i for i in range(n) if i not in tau]
        ok = all(not reduce_mod(substitute_zero(f, off), local, gb.order) for f in gb.leading_forms)
        report.facet_checks[tuple(sorted(tau))] = ok
    for k in range(max_size + 1):
        for S in combinations(range(n), k):
            expected = not any(set(S) <= tau for tau in facets)
            try:
                got = radical_monomial_witness(gb, S, nmax)
            except BudgetExceeded:
                got = None
            report.witness_checks[S] = (expected, got)
    return report


def _facet_ideal(A: ToricMatrix, tau: frozenset) -> list[Poly]:
    """Toric ideal of the columns in ``tau``, embedded in all ``n`` variables."""
    members = sorted(tau)
    sub = ToricMatrix(tuple(tuple(row[j] for j in members) for row in A.rows), strict=False)
    out = []
    for b in toric_ideal(sub).generators:
        f = {}
        for m, a in b.poly().items():
            e = [0] * A.n
            for j, k in zip(members, m):
                e[j] = k
            f[tuple(e)] = a
        out.append(f)
    return out
