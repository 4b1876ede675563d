"""Buchberger's algorithm and multivariate division."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .multipoly import MultiPoly, Ring, VariableMismatchError, divides, lcm, quotient


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis (monic, sorted by leading monomial, largest first)."""

    generators: tuple
    ring: Ring

    @property
    def order(self) -> str:
        return self.ring.order

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def leading_monomials(self) -> list:
        return [g.leading_monomial() for g in self.generators]

    def reduce(self, p: MultiPoly) -> MultiPoly:
        return normal_form(p, self)

    def contains(self, p: MultiPoly) -> bool:
        return normal_form(p, self).is_zero()

    def is_standard(self, exp) -> bool:
        return not any(divides(m, exp) for m in self.leading_monomials())


def _divisors(G):
    return [(g.leading_monomial(), g.leading_coefficient(), g) for g in G]


def _reduce_terms(terms: dict, divisors, key, full: bool = True) -> dict:
    """Division remainder of a term dict; ``full=False`` stops at the head."""
    p = dict(terms)
    rem: dict = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, lc, g in divisors:
            if divides(lm, m):
                q = quotient(m, lm)
                f = c / lc
                for e, gc in g.items():
                    ne = tuple(a + b for a, b in zip(e, q))
                    v = p.get(ne, 0) - f * gc
                    if v:
                        p[ne] = v
                    else:
                        p.pop(ne, None)
                break
        else:
            rem[m] = c
            del p[m]
            if not full:
                rem.update(p)
                return rem
    return rem


def normal_form(p: MultiPoly, gb) -> MultiPoly:
    """Remainder of ``p`` on division by ``gb`` (a basis or a plain list).

    For a Gröbner basis the remainder is canonical and vanishes exactly when
    ``p`` lies in the ideal.
    """
    gens = gb.generators if isinstance(gb, GroebnerBasis) else tuple(gb)
    for g in gens:
        if g.ring != p.ring:
            raise VariableMismatchError("polynomial and basis live in different rings")
    if p.is_zero() or not gens:
        return p
    return MultiPoly(p.ring, _reduce_terms(p.terms, _divisors(gens), p.ring.key))


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    mf, mg = f.leading_monomial(), g.leading_monomial()
    m = lcm(mf, mg)
    return (f.mul_term(quotient(m, mf), 1 / f.leading_coefficient())
            - g.mul_term(quotient(m, mg), 1 / g.leading_coefficient()))


@dataclass
class BuchbergerStats:
    pairs_considered: int = 0
    product_criterion: int = 0
    chain_criterion: int = 0
    reductions_to_zero: int = 0
    basis_size_before_reduction: int = 0


def buchberger(gens, stats: BuchbergerStats | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Pairs are processed smallest lcm first; the product (coprime leading
    monomials) and chain criteria discard pairs whose S-polynomial is known to
    reduce to zero.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise VariableMismatchError("generators live in different rings")
    stats = stats if stats is not None else BuchbergerStats()
    key = ring.key

    G: list = []
    for g in gens:
        r = normal_form(g, G) if G else g
        if not r.is_zero():
            G.append(r.monic())
    if any(g.is_constant() for g in G):
        return GroebnerBasis((ring.const(1),), ring)

    lms = [g.leading_monomial() for g in G]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    done: set = set()

    def pair_lcm(pr):
        return lcm(lms[pr[0]], lms[pr[1]])

    while pairs:
        pr = min(pairs, key=lambda q: (key(pair_lcm(q)), q))
        pairs.remove(pr)
        stats.pairs_considered += 1
        i, j = pr
        m = pair_lcm(pr)
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            stats.product_criterion += 1
            done.add(pr)
            continue
        if _chain(i, j, m, lms, pairs):
            stats.chain_criterion += 1
            done.add(pr)
            continue
        done.add(pr)
        r = normal_form(s_polynomial(G[i], G[j]), G)
        if r.is_zero():
            stats.reductions_to_zero += 1
            continue
        r = r.monic()
        if r.is_constant():
            return GroebnerBasis((ring.const(1),), ring)
        G.append(r)
        lms.append(r.leading_monomial())
        n = len(G) - 1
        pairs.update((k, n) for k in range(n))

    stats.basis_size_before_reduction = len(G)
    return GroebnerBasis(tuple(_reduce_basis(G)), ring)


def _chain(i, j, m, lms, pairs) -> bool:
    for k, lk in enumerate(lms):
        if k in (i, j) or not divides(lk, m):
            continue
        if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
            return True
    return False


def _reduce_basis(G: list) -> list:
    key = G[0].ring.key
    # drop elements whose leading monomial is divisible by another's
    G = sorted(G, key=lambda g: key(g.leading_monomial()))
    minimal: list = []
    for g in G:
        lm = g.leading_monomial()
        if not any(divides(h.leading_monomial(), lm) for h in minimal):
            minimal = [h for h in minimal if not divides(lm, h.leading_monomial())]
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = normal_form(g, others) if others else g
        out.append(r.monic())
    return sorted(out, key=lambda g: key(g.leading_monomial()), reverse=True)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Every S-polynomial of a pair of basis elements reduces to zero."""
    G = list(gb.generators)
    return all(normal_form(s_polynomial(G[i], G[j]), G).is_zero()
               for j in range(len(G)) for i in range(j))


__all__ = ["BuchbergerStats", "GroebnerBasis", "buchberger", "is_groebner", "normal_form",
           "s_polynomial"]
