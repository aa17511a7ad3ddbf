"""
Functionals of norm ≤ 1 as points of ℝ^ℕ.

Coordinate n of φ(g) is g(a_{e'}(n)), where n is read as the code of a
finite sequence. The image of the dual unit ball sits in the box
X̂⁺ = ∏ [−‖a_{e'}(n)‖, ‖a_{e'}(n)‖] and inside the closed set X̃⁺ of
coordinate sequences that respect every linear relation among the
a_{e'}(n). Both X̃⁺ and the extension set H(f) are named negatively: the
i-th ball is either a ball avoiding the set or empty.

Ball indices are ⟨r, ⟨c, N⟩⟩: r picks a constraint, c the center (a dense
point of ℝ^ℕ) and N the radius 2^{-N}.
"""
import itertools
import logging
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from config import settings
from kernel.seq import Seq
from kernel.seqcode import FinSeq, cantor_pair, cantor_unpair, decode, encode
from banach.completion import BanachName, CPoint, point_norm, point_sub
from banach.functionals import PFName, whole_space
from hahn_banach.identity import approximate_over, identity_char
from hahn_banach.independence import BasisStream
from hahn_banach.product import ProductPoint, compact_box
from hyperspace.closed import ClosedMinus, CompactName
from spaces.creal import CReal, as_creal
from spaces.metric import REAL_SEQUENCES, Ball, cylinder_half_width
from spaces.rationals import dyadic, rat, rat_index

logger = logging.getLogger(__name__)

LinearForm = Dict[int, Fraction]


def bounded_tuple(r: int, arity: int) -> Tuple[int, ...]:
    """The r-th tuple in order of its largest entry, lexicographic within a shell."""
    top = 0
    while (top + 1) ** arity <= r:
        top += 1
    offset = r - top ** arity
    shell = (t for t in itertools.product(range(top + 1), repeat=arity) if max(t) == top)
    return next(itertools.islice(shell, offset, None))


def bounded_index(t: Sequence[int]) -> int:
    top = max(t)
    shell = (u for u in itertools.product(range(top + 1), repeat=len(t)) if max(u) == top)
    for offset, u in enumerate(shell):
        if u == tuple(t):
            return top ** len(t) + offset
    raise ValueError(f"tuple {t} not found")


def point_of(basis: BasisStream, n: int) -> CPoint:
    """a_{e'}(n) as a point of X."""
    return basis.space.point(basis.a_prime(decode(n)))


def code_of(s: Sequence[int]) -> int:
    return encode(s)


def phi_embed(g: PFName, basis: BasisStream) -> ProductPoint:
    """φ(g) = (g(a_{e'}(n)))_n."""
    return ProductPoint.of(lambda n: g(point_of(basis, n)), label=f"φ({g.label})")


# Linear relations a_{e'}(n) = α·a_{e'}(i) + β·a_{e'}(j)

def combination_code(alpha: Fraction, s: Sequence[int], beta: Fraction, t: Sequence[int]) -> FinSeq:
    """k with a_{e'}(k) = α·a_{e'}(s) + β·a_{e'}(t), coefficientwise."""
    size = max(len(s), len(t))
    values = []
    for pos in range(size):
        a = rat(s[pos]) if pos < len(s) else Fraction(0)
        b = rat(t[pos]) if pos < len(t) else Fraction(0)
        values.append(rat_index(alpha * a + beta * b))
    return FinSeq(values)


def relation(r: int) -> Tuple[Fraction, Fraction, int, int, int]:
    a, b, i, j, n = bounded_tuple(r, 5)
    return rat(a), rat(b), i, j, n


def relation_holds(basis: BasisStream, rel: Tuple[Fraction, Fraction, int, int, int]) -> bool:
    alpha, beta, i, j, n = rel
    k = combination_code(alpha, decode(i), beta, decode(j))
    return identity_char(basis, decode(n), k)


def relation_form(rel: Tuple[Fraction, Fraction, int, int, int]) -> LinearForm:
    """a_n − α·a_i − β·a_j, merged on repeated coordinates."""
    alpha, beta, i, j, n = rel
    form: LinearForm = {}
    for coord, coef in ((n, Fraction(1)), (i, -alpha), (j, -beta)):
        form[coord] = form.get(coord, Fraction(0)) + coef
    return {c: v for c, v in form.items() if v}


def _form_value(form: LinearForm, point: Sequence[Fraction]) -> Fraction:
    return sum((coef * (Fraction(point[c]) if c < len(point) else 0) for c, coef in form.items()), Fraction(0))


def _form_spread(form: LinearForm, radius: Fraction) -> Optional[Fraction]:
    """Largest change of the form across a ball of the radius; None when a coordinate is free."""
    spread = Fraction(0)
    for c, coef in form.items():
        w = cylinder_half_width(radius, c)
        if w is None:
            return None
        spread += abs(coef) * w
    return spread


def _empty(center: tuple) -> Ball:
    return Ball(center, Fraction(0))


def tilde_ball(basis: BasisStream, index: int) -> Ball:
    r, w = cantor_unpair(index)
    center_code, level = cantor_unpair(w)
    center = REAL_SEQUENCES.dense_point(center_code)
    radius = dyadic(-level)
    rel = relation(r)
    form = relation_form(rel)
    if not form or not relation_holds(basis, rel):
        return _empty(center)
    spread = _form_spread(form, radius)
    if spread is None or abs(_form_value(form, center)) < spread:
        return _empty(center)
    return Ball(center, radius)


def tilde_ball_index(rel_index: int, center: Sequence[Fraction], level: int) -> int:
    center_code = encode([rat_index(v) for v in center])
    return cantor_pair(rel_index, cantor_pair(center_code, level))


def find_excluding(basis: BasisStream, point: Sequence[Fraction], fuel: Optional[int] = None) -> Optional[int]:
    """Index of an X̃⁺ ball containing a dense point that breaks some listed relation among the first `fuel`."""
    fuel = settings.DEFAULT_FUEL if fuel is None else fuel
    for r in range(fuel):
        rel = relation(r)
        form = relation_form(rel)
        if not form:
            continue
        gap = abs(_form_value(form, point))
        if gap == 0 or not relation_holds(basis, rel):
            continue
        level = max(form) + 1
        while True:
            spread = _form_spread(form, dyadic(-level))
            if spread is not None and spread < gap:
                return tilde_ball_index(r, point, level)
            level += 1
    return None


def radii(basis: BasisStream) -> Seq:
    return Seq(rule=lambda n: point_norm(point_of(basis, n)), label=f"‖a_e'‖({basis.space.label})")


def candidate_sets(basis: BasisStream) -> Tuple[CompactName, ClosedMinus]:
    """(X̂⁺, X̃⁺)."""
    compact, _ = compact_box(radii(basis))
    closed = ClosedMinus(REAL_SEQUENCES, Seq(rule=lambda b: tilde_ball(basis, b), label="X~"))
    return compact, closed


# H(f): the images of the norm-1 extensions of f

def constraint_ball(f: PFName, basis: BasisStream, index: int) -> Ball:
    """Ball avoiding |a_n − f(y_i)| ≤ ‖y_i − a_{e'}(n)‖, or empty."""
    c, w = cantor_unpair(index)
    i, n = cantor_unpair(c)
    center_code, level = cantor_unpair(w)
    center = REAL_SEQUENCES.dense_point(center_code)
    radius = dyadic(-level)
    width = cylinder_half_width(radius, n)
    if width is None:
        return _empty(center)
    y = f.dense(i)
    precision = level + 6
    err = dyadic(-precision)
    value = f(y).approx(precision)
    reach = point_norm(point_sub(y, point_of(basis, n))).approx(precision)
    c_n = Fraction(center[n]) if n < len(center) else Fraction(0)
    if abs(c_n - value) - err - width >= reach + err:
        return Ball(center, radius)
    return _empty(center)


def constraint_index(i: int, n: int, center: Sequence[Fraction], level: int) -> int:
    center_code = encode([rat_index(v) for v in center])
    return cantor_pair(cantor_pair(i, n), cantor_pair(center_code, level))


def h_extensions(f: PFName, basis: BasisStream) -> ClosedMinus:
    """X̃⁺ on even indices, the extension constraints on odd ones."""

    def rule(b: int) -> Ball:
        half, odd = divmod(b, 2)
        if odd:
            return constraint_ball(f, basis, half)
        return tilde_ball(basis, half)

    return ClosedMinus(REAL_SEQUENCES, Seq(rule=rule, label=f"H({f.label})"))


# χ: back from coordinates to a functional

def _direct_witness(basis: BasisStream, coeffs: Sequence[Fraction], search: int) -> Optional[FinSeq]:
    """s with a_{e'}(s) equal to the combination, when its support lies among the selected e'."""
    slots: Dict[int, int] = {}
    for j in basis.selected(search):
        slots.setdefault(basis.q[j], j)
    s: Dict[int, int] = {}
    for i, coef in enumerate(coeffs):
        if not coef:
            continue
        if i not in slots:
            return None
        s[slots[i]] = rat_index(coef)
    if not s:
        return FinSeq()
    return FinSeq(s.get(j, 0) for j in range(max(s) + 1))


def witness(basis: BasisStream, x: CPoint, k: int) -> FinSeq:
    """s with ‖x − a_{e'}(s)‖ < 2^{-k}."""
    if x.exact is not None:
        coeffs = x.exact
        target = x
        exponent = k
    else:
        coeffs = x.rep(k + 1)
        target = basis.space.point(coeffs)
        exponent = k + 1
    direct = _direct_witness(basis, coeffs, len(coeffs) + k + 2)
    if direct is not None:
        return direct
    return approximate_over(basis, target, exponent)


def chi_recover(a: Seq, basis: BasisStream, r=1) -> PFName:
    """g with g(a_{e'}(n)) = a_n, read at x through a witness n with ‖x − a_{e'}(n)‖ small."""
    r = as_creal(r)
    shift = 0
    while dyadic(shift) < r.upper_bound():
        shift += 1

    def func(x: CPoint) -> CReal:
        def approx_fn(k: int) -> Fraction:
            s = witness(basis, x, k + 1 + shift)
            return as_creal(a[code_of(s)]).approx(k + 1)

        return CReal.from_function(approx_fn, label=f"χ({x.label})")

    space: BanachName = basis.space
    return PFName(space, whole_space(space), func, r, label=f"χ({a.label})")
