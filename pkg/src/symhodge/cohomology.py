"""Cohomological invariants of a symplectic Lie algebra.

All spaces are computed as canonical subspaces/quotients of the monomial
coordinate spaces: Chevalley-Eilenberg cohomology, harmonic cohomology (the
classes with a closed-and-coclosed representative), the cohomology of the
coclosed subcomplex, Lefschetz maps on cohomology, the three levels (how far
the Lefschetz maps stay surjective, how far the dδ identities hold, and where
the natural map from coclosed cohomology is bijective), witness forms on
failure, and the cross-validation report tying those levels together.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .exterior import Form, basis, from_coordinates, to_coordinates
from .liealg import (
    completely_solvable_heuristic,
    is_abelian,
    is_nilpotent,
    is_solvable,
    is_unimodular,
)
from .linalg import (
    DimensionMismatch,
    Matrix,
    Quotient,
    Subspace,
    complement,
    contains,
    image,
    intersect,
    kernel,
    subspace_sum,
)
from .symplectic import SymplecticStructure, matrix_of_wedge_power, operator_matrix


@dataclass
class CohomologySpace:
    degree: int
    cocycles: Subspace
    coboundaries: Subspace
    dim: int
    quotient: Quotient


@dataclass
class HarmonicSpace:
    degree: int
    harmonic_forms: Subspace          # ker d ∩ ker δ in Λ^k coordinates
    dim_hr: int
    classes: Subspace                 # the image inside H^k, in class coordinates


@dataclass
class MapI:
    degree: int
    matrix: Matrix                    # H^k_δ → H^k in canonical class bases
    injective: bool
    surjective: bool
    kernel_forms: list[Form]          # canonical coclosed cocycles spanning ker i

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


@dataclass
class Witness:
    kind: str                         # "ddelta_failure" | "i_kernel_class" | "lefschetz_kernel_class"
    degree: int
    form: Form


@dataclass
class Gates:
    unimodular: bool
    poincare_duality: bool
    nilpotent: bool
    solvable: bool
    completely_solvable_basis: bool
    abelian: bool

    @property
    def passed(self) -> bool:
        """Equivalence-level assertions are only made behind this gate."""
        return self.unimodular and self.poincare_duality


@dataclass
class LevelReport:
    lefschetz_level: int
    ddelta_level: int
    i_level: int
    ddelta_level_dual: int
    i_lower_range_ok: bool
    witnesses: list[Witness]
    gates: Gates
    failures: list[str]
    consistent: bool


class Cohomology:
    """Per-degree cohomological data of a symplectic structure, cached."""

    def __init__(self, structure: SymplecticStructure):
        self.s = structure
        self.g = structure.algebra
        self.dim = structure.dim
        self.n = structure.n
        self._cache: dict = {}

    # --- chain-level spaces -------------------------------------------------

    def _space_size(self, k: int) -> int:
        return len(basis(self.dim, k)) if 0 <= k <= self.dim else 0

    def d_matrix(self, k: int) -> Matrix:
        return operator_matrix(self.s, "d", k)

    def delta_matrix(self, k: int) -> Matrix:
        return operator_matrix(self.s, "delta", k)

    def _memo(self, key, compute):
        got = self._cache.get(key)
        if got is None:
            got = self._cache[key] = compute()
        return got

    def cocycles(self, k: int) -> Subspace:
        return self._memo(("cocycles", k), lambda: kernel(self.d_matrix(k)))

    def coboundaries(self, k: int) -> Subspace:
        if k == 0:
            return Subspace.zero(self._space_size(0))
        return self._memo(("coboundaries", k), lambda: image(self.d_matrix(k - 1)))

    def coclosed(self, k: int) -> Subspace:
        return self._memo(("coclosed", k), lambda: kernel(self.delta_matrix(k)))

    def quotient(self, k: int) -> Quotient:
        return self._memo(("quotient", k), lambda: Quotient(self.cocycles(k), self.coboundaries(k)))

    # --- ordinary cohomology --------------------------------------------------

    def betti(self, k: int) -> int:
        self._check_degree(k)
        return self.quotient(k).dim

    def cohomology(self, k: int) -> CohomologySpace:
        self._check_degree(k)
        q = self.quotient(k)
        return CohomologySpace(k, self.cocycles(k), self.coboundaries(k), q.dim, q)

    def _check_degree(self, k: int):
        if k < 0 or k > self.dim:
            raise ValueError(f"degree {k} out of range 0..{self.dim}")

    def class_coords(self, k: int, form: Form) -> tuple:
        """Coordinates of [form] in the canonical basis of H^k."""
        return self.quotient(k).coords(to_coordinates(form))

    def class_form(self, k: int, coords) -> Form:
        """Canonical representative of a class given in H^k coordinates."""
        return from_coordinates(self.dim, k, self.quotient(k).lift(coords))

    # --- harmonic cohomology --------------------------------------------------

    def harmonic(self, k: int) -> HarmonicSpace:
        self._check_degree(k)

        def compute():
            forms = intersect(self.cocycles(k), self.coclosed(k))
            q = self.quotient(k)
            classes = Subspace(q.dim, [q.coords(v) for v in forms.basis])
            return HarmonicSpace(k, forms, classes.dim, classes)

        return self._memo(("harmonic", k), compute)

    def harmonic_classes(self, k: int) -> Subspace:
        return self.harmonic(k).classes

    # --- coclosed-subcomplex cohomology ----------------------------------------

    def hdelta(self, k: int) -> CohomologySpace:
        """Cohomology of the coclosed forms under d."""
        self._check_degree(k)

        def compute():
            cocycles = intersect(self.cocycles(k), self.coclosed(k))
            if k == 0:
                cobound = Subspace.zero(self._space_size(0))
            else:
                dmat = self.d_matrix(k - 1)
                cobound = Subspace(self._space_size(k),
                                   [dmat.apply(v) for v in self.coclosed(k - 1).basis])
            q = Quotient(cocycles, cobound)
            return CohomologySpace(k, cocycles, cobound, q.dim, q)

        return self._memo(("hdelta", k), compute)

    def h_delta(self, k: int) -> CohomologySpace:
        return self.hdelta(k)

    def map_i(self, k: int) -> MapI:
        """The natural map H^k_δ → H^k induced by inclusion of cocycles."""
        self._check_degree(k)

        def compute():
            hd = self.hdelta(k)
            q = self.quotient(k)
            columns = [q.coords(rep) for rep in hd.quotient.reps]
            m = Matrix([[col[r] for col in columns] for r in range(q.dim)], cols=len(columns))
            ker_m = kernel(m)
            kernel_forms = [
                from_coordinates(self.dim, k, hd.quotient.lift(v)) for v in ker_m.basis
            ]
            return MapI(k, m, ker_m.dim == 0, m.rank() == q.dim, kernel_forms)

        return self._memo(("map_i", k), compute)

    # --- Lefschetz maps on cohomology -------------------------------------------

    def lefschetz_map(self, k: int, p: int) -> Matrix:
        """Induced ω^p ∧ · : H^k → H^{k+2p}; degrees above 2n are the zero space."""
        self._check_degree(k)

        def compute():
            target = k + 2 * p
            lmat = matrix_of_wedge_power(self.s, p, k)
            if target > self.dim:
                return Matrix([], cols=self.quotient(k).dim)
            # well-definedness: exact classes stay exact
            for v in self.coboundaries(k).basis:
                if not contains(self.coboundaries(target), lmat.apply(v)):
                    raise AssertionError("wedge by ω does not preserve exactness; bug")
            tq = self.quotient(target)
            columns = [tq.coords(lmat.apply(rep)) for rep in self.quotient(k).reps]
            return Matrix([[col[r] for col in columns] for r in range(tq.dim)],
                          cols=len(columns))

        return self._memo(("lefschetz_map", k, p), compute)

    def primitive_cohomology(self, k: int) -> Subspace:
        """Classes killed by the (n-k+1)-st Lefschetz power, in H^k coordinates."""
        if k > self.n:
            raise ValueError(f"primitive cohomology is defined for degree ≤ {self.n}")
        return self._memo(("primitive_cohomology", k),
                          lambda: kernel(self.lefschetz_map(k, self.n - k + 1)))

    def lefschetz_level(self) -> int:
        """Largest s ≤ n-1 with H^k → H^{2n-k} surjective for all k ≤ s; -1 if none."""

        def compute():
            for k in range(0, self.n):
                m = self.lefschetz_map(k, self.n - k)
                if m.rank() != self.betti(self.dim - k):
                    return k - 1
            return self.n - 1

        return self._memo(("lefschetz_level",), compute)

    def lefschetz_kernel_witness(self) -> Optional[Witness]:
        """A class in the kernel of the first failing Lefschetz map, if any."""
        level = self.lefschetz_level()
        if level == self.n - 1:
            return None
        k = level + 1
        ker_m = kernel(self.lefschetz_map(k, self.n - k))
        if ker_m.dim == 0:
            # surjectivity can fail with trivial kernel only if dims differ
            return None
        return Witness("lefschetz_kernel_class", k, self.class_form(k, ker_m.basis[0]))

    # --- the dδ identities ------------------------------------------------------

    def space_atom(self, name: str, op: Optional[str], k: int) -> Subspace:
        self._check_degree(k)
        size = self._space_size(k)
        if name == "full":
            return Subspace.full(size)
        if name == "zero":
            return Subspace.zero(size)
        if name == "im" and op == "d":
            return self.coboundaries(k)
        if name == "ker" and op == "d":
            return self.cocycles(k)
        if name == "im" and op == "delta":
            if k == self.dim:
                return Subspace.zero(size)
            return self._memo(("im_delta", k), lambda: image(self.delta_matrix(k + 1)))
        if name == "ker" and op == "delta":
            return self.coclosed(k)
        if name == "im" and op == "ddelta":
            if k == 0:
                return Subspace.zero(size)
            return self._memo(
                ("im_ddelta", k),
                lambda: image(self.d_matrix(k - 1) * self.delta_matrix(k)),
            )
        raise ValueError(f"unknown atom {name}({op},{k})")

    def eval_space_expr(self, expr: Union[str, "SpaceExpr"]) -> Union[Subspace, bool]:
        """Evaluate a subspace identity such as ``im(d,2) & ker(delta,2) = im(ddelta,2)``."""
        node = parse_space_expr(expr) if isinstance(expr, str) else expr
        return node.evaluate(self)

    def _pair_equal(self, k: int, left: str, right: str) -> bool:
        return self.eval_space_expr(f"{left.format(k=k)} = {right.format(k=k)}")

    def _triple_holds(self, k: int) -> bool:
        """Im d ∩ ker δ = Im dδ = Im δ ∩ ker d on Λ^k."""
        return bool(
            self.eval_space_expr(f"im(d,{k}) & ker(delta,{k}) = im(ddelta,{k})")
            and self.eval_space_expr(f"im(delta,{k}) & ker(d,{k}) = im(ddelta,{k})")
        )

    def _single_holds(self, k: int) -> bool:
        """Im d ∩ ker δ = Im dδ on Λ^k."""
        return bool(self.eval_space_expr(f"im(d,{k}) & ker(delta,{k}) = im(ddelta,{k})"))

    def _single_dual_holds(self, k: int) -> bool:
        """Im δ ∩ ker d = Im dδ on Λ^k."""
        return bool(self.eval_space_expr(f"im(delta,{k}) & ker(d,{k}) = im(ddelta,{k})"))

    def ddelta_level(self) -> int:
        """Largest s ≤ n-1 with the triple identity on degrees ≤ s and the
        exact-and-coclosed identity on degree s+1; -1 if s = 0 already fails."""

        def compute():
            level = -1
            for cand in range(0, self.n):
                if all(self._triple_holds(k) for k in range(0, cand + 1)) and \
                        self._single_holds(cand + 1):
                    level = cand
                else:
                    break
            return level

        return self._memo(("ddelta_level",), compute)

    def ddelta_level_dual(self) -> int:
        """The same level computed from the star-dual identities on high degrees."""

        def compute():
            level = -1
            for cand in range(0, self.n):
                if all(self._triple_holds(2 * self.n - k) for k in range(0, cand + 1)) and \
                        self._single_dual_holds(2 * self.n - cand - 1):
                    level = cand
                else:
                    break
            return level

        return self._memo(("ddelta_level_dual",), compute)

    def ddelta_witness(self) -> Optional[Witness]:
        """A canonical form separating the dδ spaces at the failing degree."""
        level = self.ddelta_level()
        if level == self.n - 1:
            return None
        checks = []
        if level == -1:
            checks = [("single", 0), ("dual_single", 0), ("single", 1)]
        else:
            checks = [("dual_single", level + 1), ("single", level + 2)]
        for which, k in checks:
            if k > self.dim:
                continue
            small = self.space_atom("im", "ddelta", k)
            if which == "single":
                big = intersect(self.space_atom("im", "d", k), self.coclosed(k))
            else:
                big = intersect(self.space_atom("im", "delta", k), self.cocycles(k))
            if big != small:
                vec = complement(big, small)[0]
                return Witness("ddelta_failure", k, from_coordinates(self.dim, k, vec))
        return None

    # --- the natural map level ----------------------------------------------------

    def i_bijective(self, k: int) -> bool:
        return self.map_i(k).bijective

    def i_level(self) -> int:
        """Largest s ≤ n-1 with the natural map bijective for all k ≥ 2n-s."""

        def compute():
            level = -1
            for cand in range(0, self.n):
                if all(self.i_bijective(k) for k in range(self.dim - cand, self.dim + 1)):
                    level = cand
                else:
                    break
            return level

        return self._memo(("i_level",), compute)

    def i_lower_range_ok(self) -> bool:
        """With s = i_level (determined by the high range), the map must also
        be bijective for every k ≤ s+1.  The converse direction is not
        implied: bijectivity can persist below s+1 without raising the level."""
        s = self.i_level()
        return all(self.i_bijective(k) for k in range(0, min(s + 1, self.dim) + 1))

    def i_kernel_witnesses(self) -> list[Witness]:
        out = []
        for k in range(self.dim + 1):
            for form in self.map_i(k).kernel_forms:
                out.append(Witness("i_kernel_class", k, form))
        return out

    # --- harmonic decomposition and the consistency report -------------------------

    def harmonic_decomposition_check(self, k: int) -> bool:
        """Two subspace identities inside cohomology, for 0 ≤ k ≤ n:

        H^{n-k}_hr = P_{n-k} + L(H^{n-k-2}_hr)  and  H^{n+k}_hr = L^k(H^{n-k}_hr).
        """
        if k < 0 or k > self.n:
            raise ValueError(f"need 0 ≤ k ≤ {self.n}")
        low = self.n - k
        prim = self.primitive_cohomology(low)
        if low - 2 >= 0:
            lmap = self.lefschetz_map(low - 2, 1)
            lifted = Subspace(self.betti(low),
                              [lmap.apply(v) for v in self.harmonic_classes(low - 2).basis])
        else:
            lifted = Subspace.zero(self.betti(low))
        first = subspace_sum(prim, lifted) == self.harmonic_classes(low)

        high = self.n + k
        lmap_k = self.lefschetz_map(low, k)
        pushed = Subspace(self.betti(high),
                          [lmap_k.apply(v) for v in self.harmonic_classes(low).basis])
        second = pushed == self.harmonic_classes(high)
        return first and second

    def i1_surjective(self, k: int) -> bool:
        """Image of H^k_δ inside H^k equals the harmonic classes."""
        return image(self.map_i(k).matrix) == self.harmonic_classes(k)

    def gates(self) -> Gates:
        def compute():
            pd = all(self.betti(k) == self.betti(self.dim - k) for k in range(self.dim + 1))
            return Gates(
                unimodular=is_unimodular(self.g),
                poincare_duality=pd,
                nilpotent=is_nilpotent(self.g),
                solvable=is_solvable(self.g),
                completely_solvable_basis=bool(completely_solvable_heuristic(self.g)),
                abelian=is_abelian(self.g),
            )

        return self._memo(("gates",), compute)

    def theorem_consistency(self) -> LevelReport:
        """Compute the three levels independently and cross-validate them.

        Level equality and the harmonic-range statements are asserted only
        when the unimodularity + Poincaré-duality gate passes; the duality of
        the two dδ computations, the harmonic decomposition identities and
        surjectivity onto harmonic cohomology are unconditional.
        """
        gates = self.gates()
        lef = self.lefschetz_level()
        dde = self.ddelta_level()
        dde_dual = self.ddelta_level_dual()
        ilev = self.i_level()
        ilow = self.i_lower_range_ok()
        failures: list[str] = []

        if dde != dde_dual:
            failures.append("coclosed_duality_agreement")
        if not all(self.harmonic_decomposition_check(k) for k in range(self.n + 1)):
            failures.append("primitive_harmonic_decomposition")
        if not all(self.i1_surjective(k) for k in range(self.dim + 1)):
            failures.append("coclosed_to_harmonic_surjective")

        if gates.passed:
            if not (lef == dde == ilev):
                failures.append("level_agreement")
            if not ilow:
                failures.append("i_lower_range")
            s = lef
            hr_ok = all(self.harmonic(k).dim_hr == self.betti(k) for k in range(0, min(s + 2, self.dim) + 1))
            hr_ok = hr_ok and all(
                self.harmonic(self.dim - k).dim_hr == self.betti(self.dim - k) for k in range(0, s + 1)
            )
            # converse: the top-range criterion recovers exactly the same level
            s_top = -1
            for cand in range(0, self.n):
                if all(self.harmonic(self.dim - k).dim_hr == self.betti(self.dim - k)
                       for k in range(0, cand + 1)):
                    s_top = cand
                else:
                    break
            if not hr_ok or s_top != s:
                failures.append("harmonic_range_agreement")

        witnesses = []
        w = self.ddelta_witness()
        if w:
            witnesses.append(w)
        witnesses.extend(self.i_kernel_witnesses())
        w = self.lefschetz_kernel_witness()
        if w:
            witnesses.append(w)

        return LevelReport(
            lefschetz_level=lef,
            ddelta_level=dde,
            i_level=ilev,
            ddelta_level_dual=dde_dual,
            i_lower_range_ok=ilow,
            witnesses=witnesses,
            gates=gates,
            failures=failures,
            consistent=not failures,
        )


# --- subspace expression language ---------------------------------------------

@dataclass
class SpaceExpr:
    """Expression tree over subspace atoms of one fixed degree."""

    kind: str                               # atom | inter | sum | eq | subset
    name: Optional[str] = None              # for atoms: im | ker | full | zero
    op: Optional[str] = None                # for atoms: d | delta | ddelta
    degree: Optional[int] = None
    children: list["SpaceExpr"] = field(default_factory=list)

    def evaluate(self, coh: Cohomology):
        if self.kind == "atom":
            return coh.space_atom(self.name, self.op, self.degree)
        parts = [child.evaluate(coh) for child in self.children]
        degrees = {child.atom_degree() for child in self.children}
        if len(degrees) != 1:
            raise DimensionMismatch(f"atoms mix degrees {sorted(degrees)}")
        if self.kind == "inter":
            out = parts[0]
            for p in parts[1:]:
                out = intersect(out, p)
            return out
        if self.kind == "sum":
            out = parts[0]
            for p in parts[1:]:
                out = subspace_sum(out, p)
            return out
        if self.kind == "eq":
            return parts[0] == parts[1]
        if self.kind == "subset":
            from .linalg import is_subspace
            return is_subspace(parts[0], parts[1])
        raise ValueError(f"unknown node kind {self.kind}")

    def atom_degree(self) -> int:
        if self.kind == "atom":
            return self.degree
        degrees = {c.atom_degree() for c in self.children}
        if len(degrees) != 1:
            raise DimensionMismatch(f"atoms mix degrees {sorted(degrees)}")
        return degrees.pop()


_TOKEN = re.compile(r"\s*(im|ker|full|zero|ddelta|delta|d|<=|⊆|∩|[()&+=,]|\d+)")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad token at column {pos}: {text[pos:pos + 10]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_space_expr(text: str) -> SpaceExpr:
    """Parse expressions like ``im(delta,1) & ker(d,1) = im(ddelta,1)``."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of expression")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r}, found {tok!r}")
        pos += 1
        return tok

    def atom() -> SpaceExpr:
        tok = take()
        if tok == "(":
            node = spaces()
            take(")")
            return node
        if tok in ("im", "ker"):
            take("(")
            op = take()
            if op not in ("d", "delta", "ddelta"):
                raise ValueError(f"unknown operator {op!r}")
            take(",")
            degree = int(take())
            take(")")
            return SpaceExpr("atom", name=tok, op=op, degree=degree)
        if tok in ("full", "zero"):
            take("(")
            degree = int(take())
            take(")")
            return SpaceExpr("atom", name=tok, degree=degree)
        raise ValueError(f"unexpected token {tok!r}")

    def inters() -> SpaceExpr:
        node = atom()
        while peek() in ("&", "∩"):
            take()
            node = SpaceExpr("inter", children=[node, atom()])
        return node

    def spaces() -> SpaceExpr:
        node = inters()
        while peek() == "+":
            take()
            node = SpaceExpr("sum", children=[node, inters()])
        return node

    node = spaces()
    if peek() in ("=", "<=", "⊆"):
        cmp = take()
        rhs = spaces()
        node = SpaceExpr("eq" if cmp == "=" else "subset", children=[node, rhs])
    if peek() is not None:
        raise ValueError(f"trailing tokens starting at {peek()!r}")
    return node
