"""Right-ideal lattice machinery and radical computations.

The Zhou radical is computed by independent characterizations that are
cross-checked against each other; a disagreement raises CrossCheckMismatch
because the whole artifact's value rests on their mutual verification.

Subsets travel as int bitmasks.  Sums of right ideals need no fixpoint: for
subgroups I, J the one-pass set {i + j} is already I + J, and |I + J| =
|I| |J| / |I n J| turns "does I + J cover R" into popcount arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    LATTICE_CAP, QUANTIFIER_CAP, CrossCheckMismatch, ElementSet, FiniteRing,
    LatticeCap, SocleNotTwoSided, array_from_mask, bool_from_mask,
    element_set_from_mask, idempotents_mask, mask_from_bool, mask_iter,
    mask_of, units_mask)
from .constructions import is_two_sided_mask, quotient_ring


def _cached(R: FiniteRing, key, compute):
    cache = R.cache
    if key not in cache:
        cache[key] = compute()
    return cache[key]


# ---------------------------------------------------------------------------
# cyclic ideals and sums

def cyclic_masks(R: FiniteRing) -> tuple[int, ...]:
    """aR for every a, as bitmasks (row a of the multiplication table)."""
    def compute():
        return tuple(mask_of(row) for row in R.mul)
    return _cached(R, "cyc", compute)


def _sum_pair(R: FiniteRing, I: int, J: int) -> int:
    """I + J for additive subgroups given as masks."""
    U = I | J
    if U == I:
        return I
    if U == J:
        return J
    n = R.order
    ia = array_from_mask(I, n)
    ja = array_from_mask(J, n)
    vals = R.np_add[np.ix_(ia, ja)]
    b = np.zeros(n, dtype=bool)
    b[vals.ravel()] = True
    return mask_from_bool(b)


def additive_span_mask(R: FiniteRing, m: int) -> int:
    """Smallest additive subgroup containing the masked set."""
    n = R.order
    cur = m | (1 << R.zero)
    while True:
        arr = array_from_mask(cur, n)
        vals = R.np_add[np.ix_(arr, arr)]
        b = np.zeros(n, dtype=bool)
        b[vals.ravel()] = True
        grown = mask_from_bool(b)
        if grown == cur:
            return cur
        cur = grown


def right_ideal_generated(R: FiniteRing, gens) -> ElementSet:
    """Smallest right ideal containing gens: the additive span of gens.R."""
    if isinstance(gens, ElementSet):
        gens = gens.elems
    cyc = cyclic_masks(R)
    u = 1 << R.zero
    for s in gens:
        u |= cyc[s]
    return element_set_from_mask(R, additive_span_mask(R, u), "right-ideal", check=False)


# ---------------------------------------------------------------------------
# the full right-ideal lattice

@dataclass(frozen=True)
class IdealLattice:
    """All right ideals of a ring, with the maximal/minimal/essential sublists.

    Masks are the working representation; the ElementSet views are sorted
    lexicographically by their element lists, as are all mask tuples here.
    """
    ring: FiniteRing
    masks: tuple[int, ...]
    maximal: tuple[int, ...]
    minimal: tuple[int, ...]
    essential_maximal: tuple[int, ...]

    @property
    def right_ideals(self) -> list[ElementSet]:
        return [element_set_from_mask(self.ring, m, "right-ideal", check=False)
                for m in self.masks]

    def maximal_sets(self) -> list[ElementSet]:
        return [element_set_from_mask(self.ring, m, "right-ideal", check=False)
                for m in self.maximal]

    def minimal_sets(self) -> list[ElementSet]:
        return [element_set_from_mask(self.ring, m, "right-ideal", check=False)
                for m in self.minimal]


def _lex_sorted(masks) -> tuple[int, ...]:
    return tuple(sorted(masks, key=lambda m: tuple(mask_iter(m))))


def all_right_ideal_masks(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> tuple[int, ...]:
    """Every right ideal, as the closure of {0} under adding cyclic ideals.

    Complete because a right ideal of a unital ring is the sum of the cyclic
    ideals of its own elements; BFS over (ideal, cyclic) pairs therefore
    reaches every right ideal, and the result is closed under pairwise sums.
    """
    def compute():
        zero_bit = 1 << R.zero
        cyclics = sorted(set(cyclic_masks(R)) | {zero_bit})
        ideals: set[int] = {zero_bit}
        frontier = [zero_bit]
        sum_cache: dict[int, int] = {}
        while frontier:
            I = frontier.pop()
            for C in cyclics:
                U = I | C
                if U == I:
                    continue
                S = sum_cache.get(U)
                if S is None:
                    S = _sum_pair(R, I, C)
                    sum_cache[U] = S
                if S not in ideals:
                    if len(ideals) >= lattice_cap:
                        raise LatticeCap(
                            f"{R.name}: more than {lattice_cap} right ideals")
                    ideals.add(S)
                    frontier.append(S)
        return _lex_sorted(ideals)
    return _cached(R, "lattice_masks", compute)


def all_right_ideals(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> IdealLattice:
    def compute():
        masks = all_right_ideal_masks(R, lattice_cap)
        full = R.full_mask()
        zero_bit = 1 << R.zero
        proper = [m for m in masks if m != full]
        maximal = [m for m in proper
                   if not any(m != o and (m | o) == o for o in proper)]
        nonzero = [m for m in masks if m != zero_bit]
        minimal = [m for m in nonzero
                   if not any(o != m and (o | m) == m for o in nonzero)]
        ess_max = [m for m in maximal if is_essential_mask(R, m)]
        return IdealLattice(R, masks, _lex_sorted(maximal), _lex_sorted(minimal),
                            _lex_sorted(ess_max))
    return _cached(R, "lattice", compute)


def is_essential_mask(R: FiniteRing, E: int) -> bool:
    # E is essential iff it meets aR nontrivially for every a != 0; sufficient
    # because every nonzero right ideal contains a nonzero cyclic one.
    zero_bit = 1 << R.zero
    cyc = cyclic_masks(R)
    for a in R.elements():
        if a == R.zero:
            continue
        if (E & cyc[a]) == zero_bit:
            return False
    return True


def is_essential(R: FiniteRing, E: ElementSet) -> bool:
    return is_essential_mask(R, E.mask)


# ---------------------------------------------------------------------------
# socle and Jacobson radical

def socle_mask(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> int:
    def compute():
        lat = all_right_ideals(R, lattice_cap)
        m = 1 << R.zero
        for s in lat.minimal:
            m = _sum_pair(R, m, s)
        return m
    return _cached(R, "socle", compute)


def socle(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> ElementSet:
    """Sum of all minimal right ideals; verified two-sided."""
    m = socle_mask(R, lattice_cap)
    if not is_two_sided_mask(R, m):
        raise SocleNotTwoSided(f"socle of {R.name} fails left closure")
    return element_set_from_mask(R, m, "two-sided-ideal", check=False)


def _jacobson_by_lattice(R: FiniteRing, lattice_cap: int) -> int:
    lat = all_right_ideals(R, lattice_cap)
    m = R.full_mask()
    for M in lat.maximal:
        m &= M
    return m


def _jacobson_by_units(R: FiniteRing) -> int:
    # J(R) = {x : 1 - x y is a unit for every y}
    n = R.order
    A, M = R.np_add, R.np_mul
    NEG = np.asarray(R.neg, dtype=np.int64)
    one_row = A[R.one]
    ub = bool_from_mask(units_mask(R), n)
    ok = np.empty(n, dtype=bool)
    for x in range(n):
        t = one_row[NEG[M[x]]]
        ok[x] = bool(ub[t].all())
    return mask_from_bool(ok)


def jacobson_radical_mask(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> int:
    def compute():
        by_lattice = _jacobson_by_lattice(R, lattice_cap)
        by_units = _jacobson_by_units(R)
        if by_lattice != by_units:
            raise CrossCheckMismatch(
                f"J({R.name}): maximal-ideal intersection {sorted(mask_iter(by_lattice))} "
                f"!= unit characterization {sorted(mask_iter(by_units))}")
        return by_lattice
    return _cached(R, "jacobson", compute)


def jacobson_radical(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> ElementSet:
    """Intersection of all maximal right ideals, cross-checked against
    {x : 1 - xy is a unit for all y}."""
    return element_set_from_mask(R, jacobson_radical_mask(R, lattice_cap),
                                 "two-sided-ideal", check=False)


# ---------------------------------------------------------------------------
# the Zhou radical and its characterizations

def zhou_radical_mask(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> int:
    """Primary: intersect the essential maximal right ideals (empty
    intersection = R, matching the semisimple case).  Cross-checked against
    the pullback of J(R/socle) through the quotient projection."""
    def compute():
        primary = _zhou_by_essential(R, lattice_cap)
        pullback = _zhou_by_socle_quotient(R, lattice_cap)
        if primary != pullback:
            raise CrossCheckMismatch(
                f"delta({R.name}): essential-maximal intersection "
                f"{sorted(mask_iter(primary))} != socle-quotient pullback "
                f"{sorted(mask_iter(pullback))}")
        return primary
    return _cached(R, "zhou", compute)


def _zhou_by_essential(R: FiniteRing, lattice_cap: int) -> int:
    lat = all_right_ideals(R, lattice_cap)
    m = R.full_mask()
    for E in lat.essential_maximal:
        m &= E
    return m


def _zhou_by_socle_quotient(R: FiniteRing, lattice_cap: int) -> int:
    soc = socle(R, lattice_cap)
    q = quotient_ring(R, soc)
    jq = jacobson_radical_mask(q.ring, lattice_cap)
    m = 0
    for x in R.elements():
        if (jq >> q.proj[x]) & 1:
            m |= 1 << x
    return m


def zhou_radical(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> ElementSet:
    return element_set_from_mask(R, zhou_radical_mask(R, lattice_cap),
                                 "two-sided-ideal", check=False)


def summand_masks(R: FiniteRing) -> frozenset[int]:
    """Masks of the direct summands of R_R, i.e. the ideals eR for e idempotent."""
    def compute():
        cyc = cyclic_masks(R)
        return frozenset(cyc[e] for e in mask_iter(idempotents_mask(R)))
    return _cached(R, "summands", compute)


def is_direct_summand(R: FiniteRing, K: ElementSet | int) -> bool:
    m = K if isinstance(K, int) else K.mask
    return m in summand_masks(R)


def r3_membership(R: FiniteRing, x: int, lattice_cap: int = LATTICE_CAP) -> bool:
    """x such that xR + K = R forces K to be a direct summand of R_R."""
    return bool((r3_mask(R, lattice_cap) >> x) & 1)


def r3_mask(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> int:
    def compute():
        n = R.order
        masks = all_right_ideal_masks(R, lattice_cap)
        pops = {m: m.bit_count() for m in masks}
        summands = summand_masks(R)
        non_summands = [(m, pops[m]) for m in masks if m not in summands]
        cyc = cyclic_masks(R)
        out = 0
        for x in R.elements():
            I = cyc[x]
            pI = I.bit_count()
            # xR + K = R  iff  |xR| |K| = n |xR n K|
            if all(pI * pK != n * (I & K).bit_count() for K, pK in non_summands):
                out |= 1 << x
        return out
    return _cached(R, ("r3", ), compute)


def r5_membership(R: FiniteRing, x: int, lattice_cap: int = LATTICE_CAP) -> bool:
    """x such that for every y some semisimple right ideal Y has
    (1 + xy)R directSum Y = R."""
    return bool((r5_mask(R, lattice_cap) >> x) & 1)


def r5_mask(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> int:
    def compute():
        n = R.order
        soc = socle_mask(R, lattice_cap)
        masks = all_right_ideal_masks(R, lattice_cap)
        sem = [(Y, Y.bit_count()) for Y in masks if (Y | soc) == soc]
        cyc = cyclic_masks(R)
        zero_bit = 1 << R.zero
        full = R.full_mask()
        ok = np.zeros(n, dtype=bool)
        for z in R.elements():
            Zr = cyc[z]
            if Zr == full:
                ok[z] = True
                continue
            pZ = Zr.bit_count()
            ok[z] = any((Zr & Y) == zero_bit and pZ * pY == n for Y, pY in sem)
        A, M = R.np_add, R.np_mul
        one_row = A[R.one]
        out = 0
        for x in R.elements():
            z_of_y = one_row[M[x]]
            if bool(ok[z_of_y].all()):
                out |= 1 << x
        return out
    return _cached(R, ("r5", ), compute)


def r4_ideal(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> ElementSet:
    return element_set_from_mask(R, r4_ideal_mask(R, lattice_cap),
                                 "two-sided-ideal", check=False)


def r2_ideal(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> ElementSet:
    return element_set_from_mask(R, r2_ideal_mask(R, lattice_cap),
                                 "right-ideal", check=False)


def _bound_mask(R: FiniteRing, M: int) -> int:
    """Largest two-sided ideal inside the right ideal M: {r : R r is in M}."""
    out = 0
    for r in mask_iter(M):
        if all((M >> R.mul[s][r]) & 1 for s in R.elements()):
            out |= 1 << r
    return out


def r4_ideal_mask(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> int:
    """Intersection of the two-sided ideals P for which R/P has a simple right
    module, faithful over R/P and singular over R.

    Implemented literally: simple modules of Q = R/P arise as Q/(maximal right
    ideal); faithfulness is checked in Q and singularity elementwise in R.
    """
    def compute():
        n = R.order
        masks = all_right_ideal_masks(R, lattice_cap)
        two_sided = [m for m in masks if is_two_sided_mask(R, m)]
        cyc = cyclic_masks(R)
        out = R.full_mask()
        for P in two_sided:
            if P == R.full_mask():
                continue
            es = element_set_from_mask(R, P, "two-sided-ideal", check=False)
            q = quotient_ring(R, es)
            Q = q.ring
            qlat = all_right_ideals(Q, lattice_cap)
            zero_bit_q = 1 << Q.zero
            found = False
            for Mq in qlat.maximal:
                if _bound_mask(Q, Mq) != zero_bit_q:
                    continue  # Q/Mq is not faithful over Q
                # preimage of Mq in R
                Mr = 0
                for xx in R.elements():
                    if (Mq >> q.proj[xx]) & 1:
                        Mr |= 1 << xx
                singular = True
                for xx in R.elements():
                    ann = mask_of(r for r in R.elements() if (Mr >> R.mul[xx][r]) & 1)
                    if not is_essential_mask(R, ann):
                        singular = False
                        break
                if singular:
                    found = True
                    break
            if found:
                out &= P
        return out
    return _cached(R, ("r4", ), compute)


# ---------------------------------------------------------------------------
# delta-smallness and the R2 characterization

def _singular_quotient(R: FiniteRing, L: int) -> bool:
    """Is R/L singular as a right R-module (every element has essential annihilator)?"""
    key = ("singular", L)
    cache = R.cache
    if key not in cache:
        res = True
        for x in R.elements():
            ann = mask_of(r for r in R.elements() if (L >> R.mul[x][r]) & 1)
            if not is_essential_mask(R, ann):
                res = False
                break
        cache[key] = res
    return cache[key]


def is_delta_small_mask(R: FiniteRing, N: int, lattice_cap: int = LATTICE_CAP) -> bool:
    n = R.order
    full = R.full_mask()
    pN = N.bit_count()
    for L in all_right_ideal_masks(R, lattice_cap):
        if L == full:
            continue
        if pN * L.bit_count() != n * (N & L).bit_count():
            continue  # N + L != R
        if _singular_quotient(R, L):
            return False
    return True


def is_delta_small(R: FiniteRing, N: ElementSet, lattice_cap: int = LATTICE_CAP) -> bool:
    """N such that N + L = R with R/L singular forces L = R."""
    return is_delta_small_mask(R, N.mask, lattice_cap)


def r2_ideal_mask(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> int:
    """Sum of all delta-small right ideals (the unique largest one)."""
    def compute():
        m = 1 << R.zero
        for N in all_right_ideal_masks(R, lattice_cap):
            if is_delta_small_mask(R, N, lattice_cap):
                m = _sum_pair(R, m, N)
        return m
    return _cached(R, ("r2", ), compute)


# ---------------------------------------------------------------------------
# delta-sharp and semiprimeness

def delta_sharp_mask(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> int:
    """{x : some power of x lies in delta(R)}; powers cycle within order(R)
    steps, so that exponent bound is exhaustive."""
    def compute():
        d = zhou_radical_mask(R, lattice_cap)
        out = 0
        for x in R.elements():
            p = x
            for _ in range(R.order):
                if (d >> p) & 1:
                    out |= 1 << x
                    break
                p = R.mul[p][x]
        return out
    return _cached(R, "delta_sharp", compute)


def delta_sharp(R: FiniteRing, lattice_cap: int = LATTICE_CAP) -> ElementSet:
    return element_set_from_mask(R, delta_sharp_mask(R, lattice_cap),
                                 "subset", check=False)


def is_semiprime_ideal(R: FiniteRing, I: ElementSet | int) -> bool:
    """aRa inside I implies a in I (checked in the contrapositive)."""
    m = I if isinstance(I, int) else I.mask
    for a in R.elements():
        if (m >> a) & 1:
            continue
        row = R.mul[a]
        if all((m >> R.mul[row[r]][a]) & 1 for r in R.elements()):
            return False
    return True


# ---------------------------------------------------------------------------
# cross-characterization driver

def radical_characterizations(R: FiniteRing,
                              lattice_cap: int = LATTICE_CAP,
                              quantifier_cap: int = QUANTIFIER_CAP) -> dict[str, Optional[int]]:
    """All available characterizations of delta(R) as masks.

    r2/r4 quantify over the whole lattice and are gated to rings of order
    <= quantifier_cap (None above it).
    """
    out: dict[str, Optional[int]] = {
        "r1": _zhou_by_essential(R, lattice_cap),
        "pullback": _zhou_by_socle_quotient(R, lattice_cap),
        "r3": r3_mask(R, lattice_cap),
        "r5": r5_mask(R, lattice_cap),
        "r2": None,
        "r4": None,
    }
    if R.order <= quantifier_cap:
        out["r2"] = r2_ideal_mask(R, lattice_cap)
        out["r4"] = r4_ideal_mask(R, lattice_cap)
    return out


def assert_radical_agreement(R: FiniteRing,
                             lattice_cap: int = LATTICE_CAP,
                             quantifier_cap: int = QUANTIFIER_CAP) -> dict[str, Optional[int]]:
    chars = radical_characterizations(R, lattice_cap, quantifier_cap)
    reference = chars["r1"]
    for name, m in chars.items():
        if m is not None and m != reference:
            raise CrossCheckMismatch(
                f"delta({R.name}): characterization {name} = "
                f"{sorted(mask_iter(m))} differs from R1 = {sorted(mask_iter(reference))}")
    return chars
