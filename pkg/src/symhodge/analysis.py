"""Analysis driver: full reports, invariant suites, and random search.

Everything here is deterministic: random instances are generated from a seed
plus trial index, reports carry no environment data, and identical inputs
produce byte-identical JSON.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import dsl
from .cohomology import Cohomology, LevelReport
from .exterior import (
    Form,
    basis,
    format_form,
    from_coordinates,
    to_coordinates,
    wedge,
)
from .liealg import ce_differential, is_abelian, is_nilpotent
from .linalg import Matrix, solve
from .randgen import random_form, random_symplectic_instance
from .symplectic import (
    SymplecticStructure,
    build,
    c_constant,
    delta_star,
    is_primitive,
    lepage_decompose,
    lepage_decompose_high,
    matrix_of_wedge_power,
    op_L,
    op_iota_G,
    operator_matrix,
    pairing,
    primitive_subspace,
    star,
)

CORPUS_FILES = ("kodaira_thurston.lie", "solv6.lie")


def corpus_path(name: str) -> str:
    return os.path.join(os.path.dirname(__file__), "corpus", name)


def load_corpus(name: str) -> dsl.AlgebraDocument:
    with open(corpus_path(name), encoding="utf-8") as fh:
        return dsl.parse(fh.read())


# --- operator identity suite --------------------------------------------------

def _forms_equal(a: Form, b: Form) -> bool:
    if a.is_zero() and b.is_zero():
        return True
    return a == b


def _d(s: SymplecticStructure, a: Form) -> Form:
    return ce_differential(s.algebra, a)


def _space_size(s: SymplecticStructure, k: int) -> int:
    return len(basis(s.dim, k)) if 0 <= k <= s.dim else 0


def op_matrix(s: SymplecticStructure, name: str, k: int):
    """Operator matrix on Λ^k, with degrees outside [0, 2n] as zero spaces."""
    out_shift = {"d": 1, "delta": -1, "delta_koszul": -1, "L": 2, "iota_G": -2,
                 "A": 0, "star": s.dim - 2 * k}[name]
    if not 0 <= k <= s.dim:
        return Matrix([[] for _ in range(_space_size(s, k + out_shift))], cols=0)
    return operator_matrix(s, name, k)


def matrix_identity_checks(s: SymplecticStructure, k: int) -> list[tuple[str, Matrix, Matrix]]:
    """The operator identities on Λ^k as pairs of composed matrices.

    The bracket with the degree-weighting operator is realized as
    [L, iota_G] = A under the frozen contraction convention (see the README
    note on orientation); its companions [A, iota_G] = 2 iota_G and
    [A, L] = -2L are orientation independent.
    """
    dim = s.dim
    size = _space_size(s, k)

    def m(name, deg):
        return op_matrix(s, name, deg)

    zero_same = Matrix.zero(size, size)
    return [
        ("star_involution", m("star", dim - k) * m("star", k), Matrix.identity(size)),
        ("delta_routes_agree", m("delta", k), m("delta_koszul", k)),
        ("delta_squared", m("delta", k - 1) * m("delta", k),
         Matrix.zero(_space_size(s, k - 2), size)),
        ("d_delta_anticommute",
         m("d", k - 1) * m("delta", k) + m("delta", k + 1) * m("d", k), zero_same),
        ("bracket_L_delta_is_minus_d",
         m("L", k - 1) * m("delta", k) - m("delta", k + 2) * m("L", k),
         -m("d", k)),
        ("bracket_iota_d_is_delta",
         m("iota_G", k + 1) * m("d", k) - m("d", k - 2) * m("iota_G", k),
         m("delta", k)),
        ("bracket_L_d_vanishes",
         m("L", k + 1) * m("d", k) - m("d", k + 2) * m("L", k),
         Matrix.zero(_space_size(s, k + 3), size)),
        ("bracket_iota_delta_vanishes",
         m("iota_G", k - 1) * m("delta", k) - m("delta", k - 2) * m("iota_G", k),
         Matrix.zero(_space_size(s, k - 3), size)),
        ("iota_is_minus_star_L_star",
         m("iota_G", k),
         -(m("star", dim - k + 2) * m("L", dim - k) * m("star", k))),
        ("bracket_L_iota_is_A",
         m("L", k - 2) * m("iota_G", k) - m("iota_G", k + 2) * m("L", k),
         m("A", k)),
        ("bracket_A_iota_is_2iota",
         m("A", k - 2) * m("iota_G", k) - m("iota_G", k) * m("A", k),
         m("iota_G", k).scale(2)),
        ("bracket_A_L_is_minus_2L",
         m("A", k + 2) * m("L", k) - m("L", k) * m("A", k),
         m("L", k).scale(-2)),
    ]


def _first_bad_column(lhs: Matrix, rhs: Matrix) -> int:
    for j in range(lhs.cols):
        if lhs.column(j) != rhs.column(j):
            return j
    return -1


def operator_identity_failures(s: SymplecticStructure) -> list[str]:
    """Check every operator identity as an exact matrix identity per degree."""
    failures = []
    names = s.algebra.generator_names
    for k in range(s.dim + 1):
        monomials = basis(s.dim, k)
        for name, lhs, rhs in matrix_identity_checks(s, k):
            if lhs.shape != rhs.shape:
                failures.append(f"{name} has mismatched shapes at degree {k}")
            elif lhs != rhs:
                j = _first_bad_column(lhs, rhs)
                mono = format_form(Form(s.dim, k, {monomials[j]: Fraction(1)}), names)
                failures.append(f"{name} fails at degree {k} on {mono}")
    # L^k: Λ^{n-k} → Λ^{n+k} must be bijective
    for k in range(s.n + 1):
        m = matrix_of_wedge_power(s, k, s.n - k)
        if m.rows != m.cols or m.rank() != m.cols:
            failures.append(f"wedge power L^{k} is not bijective from degree {s.n - k}")
    # defining pairing condition of the star operator: the coefficient matrix
    # of b ∧ (*a) against the volume must equal the determinant pairing
    top_mask = next(iter(s.volume.terms))
    top_coef = s.volume.terms[top_mask]
    for k in range(s.dim + 1):
        for ma in basis(s.dim, k):
            fa = Form(s.dim, k, {ma: Fraction(1)})
            sfa = star(s, fa)
            for mb in basis(s.dim, k):
                fb = Form(s.dim, k, {mb: Fraction(1)})
                lhs = wedge(fb, sfa).terms.get(top_mask, Fraction(0)) / top_coef
                if lhs != pairing(s, fb, fa):
                    failures.append(f"pairing condition fails at degree {k}")
                    break
    return failures


# --- primitive-form suite -------------------------------------------------------

def measure_star_constants(s: SymplecticStructure) -> dict[int, Fraction]:
    """Measured constants c(k) with *α = c(k)·L^{n-k}(α) on primitive k-forms.

    Never hardcoded: derived from the primitive subspace basis per degree and
    checked for consistency across that basis.
    """
    out: dict[int, Fraction] = {}
    for k in range(s.n + 1):
        prim = primitive_subspace(s, k)
        constant: Optional[Fraction] = None
        for v in prim.basis:
            form = from_coordinates(s.dim, k, v)
            starred = star(s, form)
            powered = wedge(s.omega_power(s.n - k), form)
            if powered.is_zero():
                if not starred.is_zero():
                    raise AssertionError("star of a primitive form not proportional")
                continue
            mask, coef = powered.sorted_terms()[0]
            c = starred.terms.get(mask, Fraction(0)) / coef
            if starred != powered.scale(c):
                raise AssertionError("star of a primitive form not proportional")
            if constant is None:
                constant = c
            elif constant != c:
                raise AssertionError(f"primitive star constant varies at degree {k}")
        if constant is not None:
            out[k] = constant
    return out


def primitive_suite_failures(s: SymplecticStructure, rng: random.Random,
                             samples: int = 3) -> list[str]:
    """Decomposition round-trips and primitive-form identities on random forms."""
    failures = []
    n, dim = s.n, s.dim
    try:
        measure_star_constants(s)
    except AssertionError as exc:
        failures.append(str(exc))

    for degree in range(0, n + 1):
        for _ in range(samples):
            f = random_form(dim, degree, rng)
            dec = lepage_decompose(s, f)
            if not _forms_equal(dec.reconstruct(), f):
                failures.append(f"decomposition does not reconstruct at degree {degree}")
                continue
            redec = lepage_decompose(s, dec.reconstruct())
            if redec.components != dec.components:
                failures.append(f"decomposition is not unique at degree {degree}")
            for j, comp in enumerate(dec.components):
                m = degree - 2 * j
                if comp.is_zero():
                    continue
                if not is_primitive(s, comp):
                    failures.append(f"component of degree {m} is not primitive")
                for power in range(0, n - m + 1):
                    lhs = comp
                    for _ in range(power):
                        lhs = op_L(s, lhs)
                    for _ in range(power):
                        lhs = op_iota_G(s, lhs)
                    expected = comp.scale(c_constant(n, power, m) * (-1) ** power)
                    if not _forms_equal(lhs, expected):
                        failures.append(
                            f"iota^j L^j constant mismatch at degree {m}, j={power}"
                        )
    # high-degree route
    for degree in range(n, dim + 1):
        f = random_form(dim, degree, rng)
        dec = lepage_decompose_high(s, f)
        if not _forms_equal(dec.reconstruct(), f):
            failures.append(f"high-degree decomposition fails at degree {degree}")
        for j, comp in enumerate(dec.components):
            if not comp.is_zero() and not is_primitive(s, comp):
                failures.append(f"high-degree component not primitive at degree {degree}")
    # dδ commutes with wedge powers and preserves primitivity
    for degree in range(0, dim + 1):
        f = random_form(dim, degree, rng)
        ddelta = lambda x: _d(s, delta_star(s, x))
        for p in range(1, n + 1):
            if degree + 2 * p > dim:
                break
            lhs = ddelta(wedge(s.omega_power(p), f))
            rhs = wedge(s.omega_power(p), ddelta(f))
            if not _forms_equal(lhs, rhs):
                failures.append(f"dδ does not commute with L^{p} at degree {degree}")
    for degree in range(0, n + 1):
        f = random_form(dim, degree, rng)
        for comp in lepage_decompose(s, f).components:
            if comp.is_zero():
                continue
            dd = _d(s, delta_star(s, comp))
            if not dd.is_zero() and not is_primitive(s, dd):
                failures.append(f"dδ of a primitive form is not primitive at degree {comp.degree}")
    # coexactness propagates along wedge powers with the explicit witness
    failures.extend(_coexactness_witness_failures(s, rng))
    return failures


def _coexactness_witness_failures(s: SymplecticStructure, rng: random.Random,
                                  samples: int = 4) -> list[str]:
    """For δβ = dγ the identity δ(L^p β) = d(L^p γ + p L^{p-1} β) is exact."""
    failures = []
    dim, n = s.dim, s.n
    from .symplectic import operator_matrix

    for degree in range(2, dim + 1):
        found = 0
        for _ in range(samples * 3):
            if found >= samples:
                break
            beta = random_form(dim, degree, rng)
            target = delta_star(s, beta)
            dmat = operator_matrix(s, "d", degree - 2)
            sol = solve(dmat, to_coordinates(target))
            if sol is None:
                continue
            found += 1
            gamma = from_coordinates(dim, degree - 2, sol)
            for p in range(1, n + 1):
                if degree + 2 * p > dim:
                    break
                lhs = delta_star(s, wedge(s.omega_power(p), beta))
                rhs = _d(s, wedge(s.omega_power(p), gamma)
                         + wedge(s.omega_power(p - 1), beta).scale(p))
                if not _forms_equal(lhs, rhs):
                    failures.append(
                        f"coexactness witness identity fails at degree {degree}, p={p}"
                    )
    return failures


# --- exterior-algebra invariants -----------------------------------------------

def exterior_invariant_failures(dim: int, rng: random.Random, samples: int = 6) -> list[str]:
    from .exterior import contract_multi, contract_vector

    failures = []
    for _ in range(samples):
        ka = rng.randint(1, dim)
        kb = rng.randint(1, dim)
        a = random_form(dim, ka, rng)
        b = random_form(dim, kb, rng)
        c = random_form(dim, rng.randint(0, dim), rng)
        if not _forms_equal(wedge(a, b), wedge(b, a).scale((-1) ** (ka * kb))):
            failures.append("wedge is not graded-commutative")
        if not _forms_equal(wedge(wedge(a, b), c), wedge(a, wedge(b, c))):
            failures.append("wedge is not associative")
        x = rng.randint(1, dim)
        lhs = contract_vector(x, wedge(a, b))
        rhs = wedge(contract_vector(x, a), b) + wedge(a, contract_vector(x, b)).scale((-1) ** ka)
        if not _forms_equal(lhs, rhs):
            failures.append("contraction is not an antiderivation")
        # decomposable contraction equals the frozen composition order
        idx = sorted(rng.sample(range(1, dim + 1), rng.randint(1, min(3, dim))))
        p = Form.monomial(dim, idx)
        direct = contract_multi(p, a)
        composed = a
        for i in idx:
            composed = contract_vector(i, composed)
        if not _forms_equal(direct, composed):
            failures.append("decomposable contraction deviates from the frozen order")
        coords = to_coordinates(a)
        if from_coordinates(dim, ka, coords) != a:
            failures.append("coordinate round-trip fails")
    return failures


# --- cohomology invariants -------------------------------------------------------

def cohomology_invariant_failures(coh: Cohomology) -> list[str]:
    failures = []
    dim, n = coh.dim, coh.n
    for k in (0, 1, 2):
        if k <= dim and coh.harmonic(k).dim_hr != coh.betti(k):
            failures.append(f"harmonic cohomology is not full at degree {k}")
    top_rank = coh.lefschetz_map(0, n).rank()
    if coh.harmonic(dim).dim_hr != top_rank:
        failures.append("top harmonic dimension differs from the image of the top Lefschetz map")
    for k in range(dim + 1):
        if not coh.i1_surjective(k):
            failures.append(f"coclosed cohomology does not surject onto harmonic at degree {k}")
    rep = coh.theorem_consistency()
    failures.extend(rep.failures)
    if rep.ddelta_level == n - 1:
        for k in range(dim + 1):
            if not coh._triple_holds(k):
                failures.append(f"full dδ identity fails at degree {k} despite top level")
    g = coh.g
    if is_nilpotent(g):
        expected = n - 1 if is_abelian(g) else 0
        if rep.lefschetz_level != expected:
            failures.append(
                f"nilpotent dichotomy violated: level {rep.lefschetz_level}, expected {expected}"
            )
    return failures


# --- suite runner and search ------------------------------------------------------

@dataclass
class SuiteResult:
    passed: bool
    instances: int
    failures: list[str] = field(default_factory=list)
    counterexample: Optional[str] = None


def _instance_failures(s: SymplecticStructure, rng: random.Random) -> list[str]:
    failures = operator_identity_failures(s)
    failures += primitive_suite_failures(s, rng)
    failures += cohomology_invariant_failures(Cohomology(s))
    return failures


def _trial_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def _suite_trial(args: tuple[int, int, int]) -> tuple[int, list[str], str]:
    index, seed, dim = args
    rng = random.Random(_trial_seed(seed, index))
    s = random_symplectic_instance(dim, rng)
    doc = dsl.document_from(s.algebra, s.omega)
    failures = _instance_failures(s, rng)
    return index, failures, dsl.print_document(doc)


def _jobs(jobs: Optional[int]) -> int:
    if jobs is not None:
        return max(1, jobs)
    env = os.environ.get("SYMHODGE_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _run_trials(worker, argses, jobs: Optional[int]):
    n_jobs = _jobs(jobs)
    if n_jobs > 1 and len(argses) > 1:
        try:
            with ProcessPoolExecutor(max_workers=n_jobs) as pool:
                return sorted(pool.map(worker, argses), key=lambda r: r[0])
        except (OSError, PermissionError):
            pass
    return [worker(a) for a in argses]


def run_invariant_suite(doc: Optional[dsl.AlgebraDocument] = None, seed: int = 0,
                        dim: Optional[int] = None, trials: int = 20,
                        jobs: Optional[int] = None) -> SuiteResult:
    """Run every module invariant, on a document or on seeded random instances."""
    rng = random.Random(_trial_seed(seed, 0xE))
    failures: list[str] = []
    instances = 0

    targets: list[tuple[SymplecticStructure, str]] = []
    if doc is not None:
        s = build(doc.algebra(), doc.omega)
        targets.append((s, dsl.print_document(doc)))
    else:
        for name in CORPUS_FILES:
            parsed = load_corpus(name)
            targets.append((build(parsed.algebra(), parsed.omega), dsl.print_document(parsed)))

    for s, text in targets:
        instances += 1
        exterior_fails = exterior_invariant_failures(s.dim, rng)
        inst_fails = exterior_fails + _instance_failures(s, rng)
        if inst_fails:
            return SuiteResult(False, instances, inst_fails, text)

    if doc is None:
        dims = [dim] if dim else [4, 6]
        argses = []
        index = 0
        for d in dims:
            for _ in range(trials):
                argses.append((index, seed + d, d))
                index += 1
        for index, inst_fails, text in _run_trials(_suite_trial, argses, jobs):
            instances += 1
            if inst_fails:
                return SuiteResult(False, instances, inst_fails, text)

    return SuiteResult(True, instances, failures)


def _search_instance(dim: int, rng: random.Random) -> SymplecticStructure:
    """One search draw: a random nilpotent algebra, or a shipped algebra of
    matching dimension with a fresh random symplectic form.

    Nilpotent instances alone can only realize the extreme levels (0, or n-1
    for tori), so the pool mixes in the solvable corpus algebras to make
    intermediate target levels reachable.
    """
    from .randgen import random_symplectic_form

    corpus_by_dim = {4: "kodaira_thurston.lie", 6: "solv6.lie"}
    if dim in corpus_by_dim and rng.random() < 0.4:
        algebra = load_corpus(corpus_by_dim[dim]).algebra()
        omega = random_symplectic_form(algebra, rng)
        if omega is not None:
            return build(algebra, omega)
    return random_symplectic_instance(dim, rng)


def _search_trial(args: tuple[int, int, int, int, bool]) -> tuple[int, Optional[str]]:
    index, seed, dim, target_s, non_abelian = args
    rng = random.Random(_trial_seed(seed, index))
    s = _search_instance(dim, rng)
    if non_abelian and is_abelian(s.algebra):
        return index, None
    coh = Cohomology(s)
    if coh.lefschetz_level() == target_s:
        return index, dsl.print_document(dsl.document_from(s.algebra, s.omega))
    return index, None


def search(dim: int, target_s: int, trials: int, seed: int,
           non_abelian: bool = False, jobs: Optional[int] = None) -> list[dsl.AlgebraDocument]:
    """Random instances whose Lefschetz level is exactly ``target_s``."""
    if dim % 2:
        raise ValueError("dimension must be even")
    argses = [(i, seed, dim, target_s, non_abelian) for i in range(trials)]
    found = []
    seen: set[str] = set()
    for _, text in _run_trials(_search_trial, argses, jobs):
        if text is not None and text not in seen:
            seen.add(text)
            found.append(dsl.parse(text))
    return found


# --- full analysis reports ----------------------------------------------------------

@dataclass
class AnalysisReport:
    dim: int
    names: list[str]
    betti: list[int]
    hr_dims: list[int]
    hdelta_dims: list[int]
    lefschetz_level: int
    ddelta_level: int
    i_level: int
    ddelta_level_dual: int
    i_lower_range_ok: bool
    gates: dict
    witnesses: list[dict]
    primitive_star_constants: dict[str, str]
    failures: list[str]
    consistent: bool
    invariant_suite: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "names": list(self.names),
            "betti": list(self.betti),
            "hr_dims": list(self.hr_dims),
            "hdelta_dims": list(self.hdelta_dims),
            "lefschetz_level": self.lefschetz_level,
            "ddelta_level": self.ddelta_level,
            "i_level": self.i_level,
            "ddelta_level_dual": self.ddelta_level_dual,
            "i_lower_range_ok": self.i_lower_range_ok,
            "gates": dict(self.gates),
            "witnesses": [dict(w) for w in self.witnesses],
            "primitive_star_constants": dict(self.primitive_star_constants),
            "failures": list(self.failures),
            "consistent": self.consistent,
            "invariant_suite": self.invariant_suite,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def analyze(doc: dsl.AlgebraDocument, run_invariants: bool = False) -> AnalysisReport:
    """Full deterministic report for one document.

    Raises :class:`ValidationError` subclasses when the algebra or form is
    invalid; parse problems surface earlier from :func:`symhodge.dsl.parse`.
    """
    algebra = doc.algebra()
    structure = build(algebra, doc.omega)
    coh = Cohomology(structure)
    level_report: LevelReport = coh.theorem_consistency()
    dim = structure.dim

    witnesses = [
        {"kind": w.kind, "degree": w.degree, "form": format_form(w.form, doc.names)}
        for w in level_report.witnesses
    ]
    constants = {
        str(k): str(v) for k, v in sorted(measure_star_constants(structure).items())
    }
    gates = {
        "unimodular": level_report.gates.unimodular,
        "poincare_duality": level_report.gates.poincare_duality,
        "nilpotent": level_report.gates.nilpotent,
        "solvable": level_report.gates.solvable,
        "completely_solvable_heuristic": level_report.gates.completely_solvable_basis,
        "abelian": level_report.gates.abelian,
    }
    suite_dict = None
    if run_invariants:
        suite = run_invariant_suite(doc=doc)
        suite_dict = {"passed": suite.passed, "failures": suite.failures}

    return AnalysisReport(
        dim=dim,
        names=list(doc.names),
        betti=[coh.betti(k) for k in range(dim + 1)],
        hr_dims=[coh.harmonic(k).dim_hr for k in range(dim + 1)],
        hdelta_dims=[coh.hdelta(k).dim for k in range(dim + 1)],
        lefschetz_level=level_report.lefschetz_level,
        ddelta_level=level_report.ddelta_level,
        i_level=level_report.i_level,
        ddelta_level_dual=level_report.ddelta_level_dual,
        i_lower_range_ok=level_report.i_lower_range_ok,
        gates=gates,
        witnesses=witnesses,
        primitive_star_constants=constants,
        failures=list(level_report.failures),
        consistent=level_report.consistent,
        invariant_suite=suite_dict,
    )


def render_text(report: AnalysisReport) -> str:
    """Aligned per-degree tables plus a witness section."""
    lines = [
        f"dimension {report.dim} (n = {report.dim // 2})",
        "generators: " + " ".join(report.names),
        "",
        "degree | betti | harmonic | coclosed-H",
    ]
    for k in range(report.dim + 1):
        lines.append(
            f"{k:6d} | {report.betti[k]:5d} | {report.hr_dims[k]:8d} | {report.hdelta_dims[k]:10d}"
        )
    lines.append("")
    lines.append(
        f"levels: lefschetz = {report.lefschetz_level}, "
        f"ddelta = {report.ddelta_level} (dual {report.ddelta_level_dual}), "
        f"i = {report.i_level} (low range {'ok' if report.i_lower_range_ok else 'BROKEN'})"
    )
    gates = " ".join(f"{k}={'yes' if v else 'no'}" for k, v in report.gates.items())
    lines.append(f"gates: {gates}")
    if report.primitive_star_constants:
        consts = ", ".join(f"deg {k}: {v}" for k, v in report.primitive_star_constants.items())
        lines.append(f"primitive star constants: {consts}")
    if report.witnesses:
        lines.append("witnesses:")
        for w in report.witnesses:
            lines.append(f"  - {w['kind']} @ degree {w['degree']}: {w['form']}")
    else:
        lines.append("witnesses: none")
    if report.invariant_suite is not None:
        status = "pass" if report.invariant_suite["passed"] else "FAIL"
        lines.append(f"invariant suite: {status}")
        for f in report.invariant_suite["failures"]:
            lines.append(f"  ! {f}")
    lines.append(f"consistency: {'PASS' if report.consistent else 'FAIL: ' + ', '.join(report.failures)}")
    return "\n".join(lines) + "\n"
