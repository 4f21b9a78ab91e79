"""Alexander and Jones polynomials from diagram data.

The Alexander polynomial is computed classically: Fox derivatives of the
Wirtinger relations with every meridian abelianized to t, one relation row
and one generator column deleted, and the determinant taken by
fraction-free Bareiss elimination over Z[t].  Every interior division in
the elimination is exact and asserted.  The Jones polynomial comes from
the Kauffman bracket state sum with the writhe correction (-A^3)^-w and
the substitution t = A^-4.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diagram import DiagramError, PDCode, WirtingerPresentation, wirtinger
from .laurent import LaurentPoly

JONES_CROSSING_BUDGET = 24

_ONE = LaurentPoly.const(1)
_MINUS_ONE = LaurentPoly.const(-1)
_T = LaurentPoly.t()
_ONE_MINUS_T = _ONE - _T


@dataclass(frozen=True)
class AlexanderMatrix:
    """Square presentation matrix of the Alexander module, obtained from
    the Fox-derivative matrix by deleting one relation row and one
    generator column."""

    entries: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)


def fox_matrix(pres: WirtingerPresentation) -> list[list[LaurentPoly]]:
    """Fox-derivative matrix with each generator abelianized to t, one row
    per relation.  Rows for negative crossings are scaled by the unit -t
    so every entry lies in Z[t]."""
    zero = LaurentPoly()
    rows = []
    for out, over, inp, sign in pres.relations:
        row = [zero] * pres.generator_count
        if sign > 0:
            contributions = ((inp, _T), (over, _ONE_MINUS_T), (out, _MINUS_ONE))
        else:
            contributions = ((inp, _MINUS_ONE), (over, _ONE_MINUS_T), (out, _T))
        for col, value in contributions:
            row[col] = row[col] + value
        rows.append(row)
    return rows


def alexander_matrix(
    pres: WirtingerPresentation,
    drop_relation: int | None = None,
    drop_generator: int | None = None,
) -> AlexanderMatrix:
    """Delete one relation row and one generator column; by default the
    last relation and the highest-numbered generator (the normalized
    determinant is independent of the choice)."""
    full = fox_matrix(pres)
    if drop_relation is None:
        drop_relation = len(full) - 1
    if drop_generator is None:
        drop_generator = pres.generator_count - 1
    rows = []
    for i, row in enumerate(full):
        if i == drop_relation:
            continue
        rows.append(tuple(v for j, v in enumerate(row) if j != drop_generator))
    return AlexanderMatrix(tuple(rows))


def bareiss_determinant(matrix: AlexanderMatrix | list[list[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant over Z[t, t^-1] by fraction-free elimination.

    Rows are shifted to nonnegative exponents first; the unit correction
    is reapplied at the end, so the result is the literal determinant.
    """
    rows = matrix.entries if isinstance(matrix, AlexanderMatrix) else matrix
    m = [list(row) for row in rows]
    n = len(m)
    if n == 0:
        return LaurentPoly.const(1)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")

    unit_shift = 0
    for i, row in enumerate(m):
        low = min((v.min_degree for v in row if not v.is_zero()), default=0)
        if low < 0:
            m[i] = [v.shift(-low) for v in row]
            unit_shift += low
    sign = 1
    prev = LaurentPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return LaurentPoly()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                quotient = numerator.divided_by(prev)
                if quotient is None:
                    raise ArithmeticError("inexact interior division in Bareiss elimination")
                m[i][j] = quotient
            m[i][k] = LaurentPoly()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = -det
    return det.shift(unit_shift)


def alexander_polynomial(
    pd: PDCode,
    drop_relation: int | None = None,
    drop_generator: int | None = None,
) -> LaurentPoly:
    """Normalized Alexander polynomial of the diagram.  Satisfies
    delta(1) = +-1 and has palindromic coefficients."""
    pres = wirtinger(pd)
    matrix = alexander_matrix(pres, drop_relation, drop_generator)
    return bareiss_determinant(matrix).normalize()


def determinant_invariant(delta: LaurentPoly) -> int:
    """|delta(-1)|, the order of the first homology of the double branched
    cover."""
    value = delta.eval_int(-1)
    return abs(int(value))


def connected_sum_delta(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Alexander polynomial of a connected sum: the product of the
    summands' polynomials."""
    return (a * b).normalize()


def satellite_delta(pattern: LaurentPoly, companion: LaurentPoly, winding: int) -> LaurentPoly:
    """Alexander polynomial of a satellite with the given pattern and
    companion polynomials: pattern(t) * companion(t^winding).  Winding 0
    returns the pattern since companion(1) = +-1."""
    if winding < 0:
        raise ValueError(f"winding number must be >= 0, got {winding}")
    return (pattern * companion.substitute_power(winding)).normalize()


def kauffman_bracket(pd: PDCode) -> LaurentPoly:
    """Kauffman bracket state sum in the variable A over all 2^n
    resolutions: each A-smoothing joins (a,b) and (c,d), each B-smoothing
    joins (a,d) and (b,c), a state with k loops contributing
    A^(#A - #B) * (-A^2 - A^-2)^(k-1)."""
    n = pd.crossing_count
    if n == 0:
        return LaurentPoly.const(1)

    slots_of_edge: dict[int, list[int]] = {}
    for ci, (a, b, c, d) in enumerate(pd.crossings):
        for pos, edge in enumerate((a, b, c, d)):
            slots_of_edge.setdefault(edge, []).append(4 * ci + pos)
    edge_pairs = [tuple(slots) for slots in slots_of_edge.values()]

    delta = LaurentPoly.from_dict({2: -1, -2: -1})
    delta_powers = [LaurentPoly.const(1)]
    for _ in range(2 * n):
        delta_powers.append(delta_powers[-1] * delta)

    total = LaurentPoly()
    size = 4 * n
    for state in range(1 << n):
        parent = list(range(size))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            parent[find(x)] = find(y)

        for x, y in edge_pairs:
            union(x, y)
        a_count = 0
        for ci in range(n):
            base = 4 * ci
            if state >> ci & 1:
                a_count += 1
                union(base + 0, base + 1)
                union(base + 2, base + 3)
            else:
                union(base + 0, base + 3)
                union(base + 1, base + 2)
        loops = len({find(x) for x in range(size)})
        total = total + LaurentPoly.t(2 * a_count - n) * delta_powers[loops - 1]
    return total


def jones_polynomial(pd: PDCode) -> LaurentPoly:
    """Jones polynomial via the normalized Kauffman bracket.

    The value depends on diagram chirality (mirroring swaps t and t^-1);
    it is reported exactly as computed, without normalization.
    """
    n = pd.crossing_count
    if n > JONES_CROSSING_BUDGET:
        raise DiagramError(
            f"diagram has {n} crossings, over the {JONES_CROSSING_BUDGET}-crossing state-sum budget"
        )
    bracket = kauffman_bracket(pd)
    w = pd.writhe()
    corrected = bracket.shift(-3 * w)
    if w % 2 != 0:
        corrected = -corrected
    out: dict[int, int] = {}
    for e, c in corrected.terms:
        if e % 4 != 0:
            raise ArithmeticError("corrected bracket exponent not a multiple of 4")
        out[-e // 4] = c
    return LaurentPoly.from_dict(out)
