"""Semi-free noncommutative dga resolutions of k[x1..xm]/(f1..fr).

Generators through internal degree -2:

    x_i                    degree  0   d(x_i) = 0
    a[x_i,x_j]  (i < j)    degree -1   d = [x_i, x_j]
    s[l]                   degree -1   d = free lift of f_l
    v[x_i,x_j,x_k] (i<j<k) degree -2   d = cyclic Jacobi pattern
    t[x_j,l]               degree -2   d = [x_j, s_l] - commutator lift of f_l

The t-differential carries a minus sign on the correction term: that is the
unique choice closing d^2 = 0 under the orientation d(a[i,j]) = [x_i, x_j],
and check_d_squared verifies it on every input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .algebra import GenSym, GradedPoly, NCPoly, extend_derivation, graded_commutator
from .errors import StructureError
from .parser import parse_poly, variable_gens

KIND_VARIABLE = "variable"
KIND_COMMUTATOR = "commutator"
KIND_SYZYGY = "relation-syzygy"
KIND_JACOBI = "jacobi"
KIND_CORRECTION = "correction"


@dataclass(frozen=True)
class AlgebraInput:
    """Variables and relations presenting the coordinate ring."""

    variables: tuple
    relations: tuple

    def __post_init__(self):
        gens = variable_gens(self.variables)
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "relations", tuple(self.relations))
        if len(self.variables) < 1:
            raise StructureError("need at least one variable")
        allowed = set(gens)
        for f in self.relations:
            if not isinstance(f, GradedPoly) or f.is_zero():
                raise StructureError("relations must be nonzero polynomials")
            extra = f.generators() - allowed
            if extra:
                names = ", ".join(sorted(g.name for g in extra))
                raise StructureError(f"relation uses undeclared generators: {names}")

    @staticmethod
    def from_strings(variables: Sequence[str], relations: Sequence[str]) -> "AlgebraInput":
        gens = variable_gens(variables)
        polys = tuple(parse_poly(s, gens) for s in relations)
        return AlgebraInput(tuple(variables), polys)

    @property
    def var_gens(self) -> tuple:
        return variable_gens(self.variables)


@dataclass
class FreePresentation:
    """Generator table and differential of the truncated resolution."""

    source: AlgebraInput
    ordering: tuple  # variable names, the monomial lift order
    variables: tuple  # degree 0
    commutators: dict  # (i, j) index pair -> GenSym, i < j
    syzygies: tuple  # one per relation
    jacobis: dict  # (i, j, k) -> GenSym
    corrections: dict  # (j, l) -> GenSym
    diff: dict = field(repr=False)  # GenSym -> NCPoly
    truncation_degree: int = -2

    @property
    def generators(self) -> tuple:
        out = list(self.variables)
        out += [self.commutators[k] for k in sorted(self.commutators)]
        out += list(self.syzygies)
        out += [self.jacobis[k] for k in sorted(self.jacobis)]
        out += [self.corrections[k] for k in sorted(self.corrections)]
        return tuple(sorted(out, key=lambda g: g.sort_key))

    def d(self, p: NCPoly) -> NCPoly:
        return extend_derivation(self.diff, p, 1)

    def oriented_commutator(self, i: int, j: int) -> NCPoly:
        """A(i, j): the degree -1 element with d = [x_i, x_j]."""
        if i == j:
            return NCPoly.zero()
        if i < j:
            return NCPoly.gen(self.commutators[(i, j)])
        return -NCPoly.gen(self.commutators[(j, i)])


def lift_to_free(f: GradedPoly, order: Sequence[GenSym]) -> NCPoly:
    """Lift a commutative polynomial to the free algebra by writing each
    monomial with letters sorted ascending in the given variable order."""
    pos = {g: k for k, g in enumerate(order)}
    acc = {}
    for m, c in f.terms.items():
        word = []
        for g, e in m:
            if g not in pos:
                raise StructureError(f"unknown variable {g.name!r} in lift")
            word.extend([g] * e)
        word.sort(key=pos.__getitem__)
        acc[tuple(word)] = acc.get(tuple(word), 0) + c
    return NCPoly(acc)


def commutator_lift(pres: FreePresentation, j: int, f_lift: NCPoly) -> NCPoly:
    """xi with d(xi) = [x_j, f_lift], built letter by letter.

    Each word x_{i1}..x_{ik} contributes sum_l prefix * A(j, i_l) * suffix.
    """
    var_index = {g: k for k, g in enumerate(pres.variables)}
    out = NCPoly.zero()
    for w, c in f_lift.terms.items():
        for g in w:
            if g not in var_index:
                raise StructureError(
                    f"commutator lift requires a degree-0 word, found {g.name!r}"
                )
        for l, g in enumerate(w):
            a = pres.oriented_commutator(j, var_index[g])
            if a:
                out = out + NCPoly.word(w[:l], c) * a * NCPoly.word(w[l + 1 :])
    return out


def build_resolution(source: AlgebraInput, ordering: Optional[Sequence[str]] = None) -> FreePresentation:
    """Construct the truncated semi-free resolution with its differential."""
    var_names = list(source.variables)
    if ordering is None:
        ordering = tuple(var_names)
    else:
        ordering = tuple(ordering)
        if sorted(ordering) != sorted(var_names):
            raise StructureError("ordering must be a permutation of the variables")
    variables = source.var_gens
    m = len(variables)
    r = len(source.relations)

    commutators = {
        (i, j): GenSym(f"a[{var_names[i]},{var_names[j]}]", -1, KIND_COMMUTATOR)
        for i, j in combinations(range(m), 2)
    }
    syzygies = tuple(GenSym(f"s[{l + 1}]", -1, KIND_SYZYGY) for l in range(r))
    jacobis = {
        (i, j, k): GenSym(
            f"v[{var_names[i]},{var_names[j]},{var_names[k]}]", -2, KIND_JACOBI
        )
        for i, j, k in combinations(range(m), 3)
    }
    corrections = {
        (j, l): GenSym(f"t[{var_names[j]},{l + 1}]", -2, KIND_CORRECTION)
        for j in range(m)
        for l in range(r)
    }

    pres = FreePresentation(
        source=source,
        ordering=ordering,
        variables=variables,
        commutators=commutators,
        syzygies=syzygies,
        jacobis=jacobis,
        corrections=corrections,
        diff={},
    )

    order_gens = [variables[var_names.index(name)] for name in ordering]
    lifts = [lift_to_free(f, order_gens) for f in source.relations]

    diff = {g: NCPoly.zero() for g in variables}
    for (i, j), g in commutators.items():
        diff[g] = graded_commutator(NCPoly.gen(variables[i]), NCPoly.gen(variables[j]))
    for l, g in enumerate(syzygies):
        diff[g] = lifts[l]
    for (i, j, k), g in jacobis.items():
        xi, xj, xk = (NCPoly.gen(variables[t]) for t in (i, j, k))
        diff[g] = (
            graded_commutator(xi, pres.oriented_commutator(j, k))
            + graded_commutator(xj, pres.oriented_commutator(k, i))
            + graded_commutator(xk, pres.oriented_commutator(i, j))
        )
    for (j, l), g in corrections.items():
        xj = NCPoly.gen(variables[j])
        diff[g] = graded_commutator(xj, NCPoly.gen(syzygies[l])) - commutator_lift(
            pres, j, lifts[l]
        )
    pres.diff = diff
    return pres


@dataclass
class DSquaredReport:
    """Per-generator d(d(g)) values; success iff all are zero."""

    entries: tuple  # (generator name, NCPoly or GradedPoly)

    @property
    def ok(self) -> bool:
        return all(p.is_zero() for _, p in self.entries)

    def failures(self) -> list:
        return [(name, p) for name, p in self.entries if not p.is_zero()]


def check_d_squared(pres: FreePresentation) -> DSquaredReport:
    entries = []
    for g in pres.generators:
        entries.append((g.name, pres.d(pres.diff[g])))
    return DSquaredReport(tuple(entries))
