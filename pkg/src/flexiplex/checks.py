"""Named verification bundles tying the library together.

Each bundle re-derives one of the headline constancy/flexibility claims from
scratch and reports pass/fail with details. The registry keys are the
command-line names used by ``flexiplex lemma-check``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .dual import family_dual_report
from .exactmat import SymMatrix, det, minor, principal_minors_order2, rank, signature
from .families import (
    DEFAULT_GRID,
    ExcludedT,
    at,
    build_family,
    family_n4,
    family_n5,
    sweep,
    verified_grid,
)
from .realize import realize

PAIR_GRID = (Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))
WIDE_GRID = tuple(
    sorted(
        set(DEFAULT_GRID)
        | {Fraction(4, 5), Fraction(9, 10), Fraction(10, 9), Fraction(5, 4)}
    )
)

N4_A = (1, 1, -2)
N4_B = (2, -3, 1)
N5_A = (1, 1, -2)
N5_B = (2, -3, 1)
N5_B_EXCLUDED_3 = (2, 3, -5)
N5_B_EXCLUDED_4 = (2, 4, -6)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str


def _result(name: str, passed: bool, details: str) -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), details=details)


def _rand_nonzero_fraction(rng: random.Random) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-9, 9)
    return Fraction(num, rng.randint(1, 4))


def check_rank1_pair_constancy(seed: int = 1, count: int = 1000) -> CheckResult:
    """det(t*A + B/t) for rank-1 pairs [[x^2, xy], [xy, y^2]] is t-independent
    and equals (a1*b2 - a2*b1)^2, exactly, on seeded random rationals."""
    rng = random.Random(seed)
    for index in range(count):
        a1, a2, b1, b2 = (_rand_nonzero_fraction(rng) for _ in range(4))
        a = SymMatrix.from_rows([[a1 * a1, a1 * a2], [a1 * a2, a2 * a2]])
        b = SymMatrix.from_rows([[b1 * b1, b1 * b2], [b1 * b2, b2 * b2]])
        expected = (a1 * b2 - a2 * b1) ** 2
        for t in PAIR_GRID:
            value = det(a.scale(t).add(b.scale(1 / t)))
            if value != expected:
                return _result(
                    "lemma-2.5",
                    False,
                    f"pair #{index} ({a1},{a2},{b1},{b2}) at t={t}: {value} != {expected}",
                )
    return _result(
        "lemma-2.5", True, f"{count} random rank-1 pairs constant on {len(PAIR_GRID)} t values"
    )


def _closed_form_n4(a, b, t):
    a1, a2, a3 = a
    b2, b3, b4 = b
    return -4 * a1**2 * b4**2 * (a2 * a3 * t + b2 * b3 / t) ** 2


def _closed_form_n5(a, b, t):
    a1, a2, a3 = a
    b2, b4, b5 = b
    return -16 * a1**2 * a2 * a3 * b2 * b4 * b5**2 * (a2 * a3 * t + b2 * b4 / t)


def check_n4_suite(seed: int = 1) -> CheckResult:
    """Fixed positive triangle areas, constant order-2 minors, the exact
    closed-form determinant (nonconstant), and inertia (3,1,0) throughout."""
    fam = family_n4(N4_A, N4_B)
    report = sweep(fam)
    a = fam.params["a"]
    b = fam.params["b"]
    problems = []
    if not report.verdicts["minors_constant"]:
        problems.append("order-2 principal minors vary")
    if not report.verdicts["face_vols_constant"]:
        problems.append("triangle areas vary")
    if report.verdicts["det_constant"]:
        problems.append("determinant unexpectedly constant")
    if any(tuple(s) != (3, 1, 0) for s in report.verdicts["signature_trace"]):
        problems.append(f"inertia trace {report.verdicts['signature_trace']}")
    for point in report.per_t:
        if point.det != _closed_form_n4(a, b, point.t):
            problems.append(f"det at t={point.t} off the closed form")
    if det(at(fam, 1)) != -256:
        problems.append("det at t=1 is not -256")
    if any(v <= 0 for v in report.per_t[0].face_vols.values()):
        problems.append("a fixed triangle area is not positive")
    passed = not problems
    return _result(
        "lemma-3.2",
        passed,
        "; ".join(problems) if problems else "closed form, minors, areas, inertia verified",
    )


def check_n5_suite(seed: int = 1) -> CheckResult:
    """The 5-simplex analogue: 20 fixed positive areas, the linear-in-t
    closed form (det 1536 at t=1), and excluded-t reporting/enforcement."""
    fam = family_n5(N5_A, N5_B)
    report = sweep(fam)
    a = fam.params["a"]
    b = fam.params["b"]
    problems = []
    if det(at(fam, 1)) != 1536:
        problems.append("det at t=1 is not 1536")
    for point in report.per_t:
        if point.det != _closed_form_n5(a, b, point.t):
            problems.append(f"det at t={point.t} off the closed form")
    if not report.verdicts["minors_constant"]:
        problems.append("order-2 principal minors vary")
    if not report.verdicts["face_vols_constant"]:
        problems.append("triangle areas vary")
    if len(report.per_t[0].face_vols) != 20:
        problems.append("expected 20 triangle faces")
    if fam.excluded_t_sq is not None:
        problems.append(
            f"example parameters report excluded t^2={fam.excluded_t_sq}; "
            "-b2*b4/(a2*a3) = -3 admits no positive t"
        )
    fam3 = family_n5(N5_A, N5_B_EXCLUDED_3)
    if fam3.excluded_t_sq != 3:
        problems.append(f"t^2 = 3 parameters report {fam3.excluded_t_sq}")
    fam4 = family_n5(N5_A, N5_B_EXCLUDED_4)
    if fam4.excluded_t_sq != 4:
        problems.append(f"t^2 = 4 parameters report {fam4.excluded_t_sq}")
    else:
        try:
            sweep(fam4)  # default grid contains t = 2
            problems.append("sweep failed to exclude t = 2 with t^2 = 4 degenerate")
        except ExcludedT:
            pass
        safe = tuple(t for t in DEFAULT_GRID if t * t != 4)
        if not sweep(fam4, safe).verdicts["minors_constant"]:
            problems.append("minors vary on the safe grid")
    passed = not problems
    return _result(
        "lemma-3.4",
        passed,
        "; ".join(problems) if problems else "closed form, areas, exclusion reporting verified",
    )


def check_matrix_family_membership(n: int = 5, seed: int = 1) -> CheckResult:
    """Strict membership along the verified grid: rank exactly n, all-ones
    kernel, positive order-2 minors, and exact minor constancy."""
    fam = build_family(n, seed=seed)
    grid = verified_grid(fam, WIDE_GRID)
    problems = []
    if Fraction(1) not in grid:
        problems.append("t=1 not in the verified grid")
    if len(grid) < 3:
        problems.append(f"verified grid too small: {grid}")
    reference = tuple(v for _, v in principal_minors_order2(at(fam, 1)))
    for t in grid:
        m = at(fam, t)
        if rank(m) != n:
            problems.append(f"rank at t={t} is {rank(m)}")
        if tuple(v for _, v in principal_minors_order2(m)) != reference:
            problems.append(f"order-2 minors moved at t={t}")
    passed = not problems
    return _result(
        "theorem-4.7",
        passed,
        "; ".join(problems)
        if problems
        else f"n={n}: strict membership and constant minors on {len(grid)} grid points",
    )


def check_submatrix_parity(n: int = 6, seed: int = 1) -> CheckResult:
    """Order-(n) principal subdeterminants of t*A + B/t: exactly t-constant
    when n is even; for odd n an exact alpha*t + beta/t fit with no constant
    term, and nonconstant."""
    fam = build_family(n, seed=seed)
    size = fam.order
    ts = (Fraction(1), Fraction(2), Fraction(3))
    problems = []
    for omit in range(size):
        keep = [i for i in range(size) if i != omit]
        values = [minor(at(fam, t), keep, keep) for t in ts]
        if n % 2 == 0:
            if len(set(values)) != 1:
                problems.append(f"submatrix omitting {omit} varies: {values}")
        else:
            d1, d2, d3 = values
            alpha = (2 * d2 - d1) / 3
            beta = d1 - alpha
            if d3 != alpha * ts[2] + beta / ts[2]:
                problems.append(f"submatrix omitting {omit} off the t + 1/t model")
            if d1 == d2 == d3:
                problems.append(f"submatrix omitting {omit} unexpectedly constant")
    passed = not problems
    return _result(
        "remark-5.8",
        passed,
        "; ".join(problems)
        if problems
        else f"n={n}: all {size} order-{size - 1} principal subdeterminants behave as required",
    )


def check_n4_realization(seed: int = 1) -> CheckResult:
    """The n=4 family realizes with inertia (3, 1, 0) at every grid point and
    reproduces its Gram matrix to round-trip accuracy."""
    fam = family_n4(N4_A, N4_B)
    problems = []
    for t in DEFAULT_GRID:
        m = at(fam, t)
        sig = signature(m)
        if tuple(sig) != (3, 1, 0):
            problems.append(f"inertia at t={t} is {tuple(sig)}")
            continue
        realized = realize(m)
        err = realized.max_gram_error()
        scale = max(abs(float(x)) for x in m.entries)
        if err > 1e-10 * max(1.0, scale):
            problems.append(f"round-trip error {err} at t={t}")
    passed = not problems
    return _result(
        "theorem-1.2",
        passed,
        "; ".join(problems) if problems else "realized with inertia (3,1,0) across the grid",
    )


def check_dual_codim2(n: int = 5, seed: int = 1) -> CheckResult:
    """End to end through the dual: codimension-2 volumes t-constant after
    rescaling, Euclidean-angle witness exact, and a non-congruence witness."""
    fam = build_family(n, seed=seed)
    report = family_dual_report(fam, WIDE_GRID)
    verdicts = report["verdicts"]
    problems = []
    if len(report["t_grid"]) < 5:
        problems.append(f"only {len(report['t_grid'])} verified grid points")
    if not verdicts["codim2_constant"]:
        problems.append(f"codim-2 spread {verdicts['codim2_spread']}")
    if not verdicts["euclidean_angles"]:
        problems.append("an order-2 Gram block is not positive definite")
    if not verdicts["noncongruent_witness"]:
        problems.append(f"edge spread only {verdicts['edge_spread']}")
    passed = not problems
    return _result(
        "theorem-1.3",
        passed,
        "; ".join(problems)
        if problems
        else (
            f"n={n}: codim-2 volumes constant to {verdicts['codim2_spread']:.2e}, "
            f"edges move by {verdicts['edge_spread']:.2e}"
        ),
    )


def check_volume_parity(seed: int = 1) -> CheckResult:
    """Full volume along the families: nonconstant for n=4 (direct) and the
    odd-n duals, constant for the even-n dual."""
    problems = []
    fam4 = family_n4(N4_A, N4_B)
    dets = [abs(float(det(at(fam4, t)))) for t in DEFAULT_GRID]
    spread4 = (max(dets) - min(dets)) / max(dets)
    if spread4 <= 1e-4:
        problems.append(f"n=4 volume spread only {spread4}")
    for n in (5, 7):
        verdicts = family_dual_report(build_family(n, seed=seed), WIDE_GRID)["verdicts"]
        if verdicts["Vn_Q_spread"] <= 1e-4:
            problems.append(f"n={n} dual volume spread only {verdicts['Vn_Q_spread']}")
    verdicts6 = family_dual_report(build_family(6, seed=seed), WIDE_GRID)["verdicts"]
    if not verdicts6["Vn_Q_constant"]:
        problems.append(f"n=6 dual volume spread {verdicts6['Vn_Q_spread']}")
    passed = not problems
    return _result(
        "theorem-1.5",
        passed,
        "; ".join(problems)
        if problems
        else "volume varies for n=4,5,7 and stays constant for n=6",
    )


def check_n5_flexible_areas(seed: int = 1) -> CheckResult:
    """The 5-simplex family keeps all 20 triangle areas fixed and positive,
    stays realizable (nonzero determinant, at least two positive directions),
    and its volume moves."""
    fam = family_n5(N5_A, N5_B)
    report = sweep(fam)
    problems = []
    if not report.verdicts["face_vols_constant"]:
        problems.append("areas vary")
    if any(v <= 0 for v in report.per_t[0].face_vols.values()):
        problems.append("a fixed area is not positive")
    for point in report.per_t:
        if point.det == 0:
            problems.append(f"degenerate at t={point.t}")
        if point.signature.positive < 2:
            problems.append(f"fewer than 2 positive directions at t={point.t}")
    if report.verdicts["det_constant"]:
        problems.append("volume unexpectedly constant")
    passed = not problems
    return _result(
        "theorem-1.6",
        passed,
        "; ".join(problems)
        if problems
        else "20 fixed positive areas, realizable throughout, volume nonconstant",
    )


BUNDLES = {
    "lemma-2.5": lambda n=None, seed=1, count=1000: check_rank1_pair_constancy(seed, count),
    "lemma-3.2": lambda n=None, seed=1, count=None: check_n4_suite(seed),
    "lemma-3.4": lambda n=None, seed=1, count=None: check_n5_suite(seed),
    "theorem-4.7": lambda n=5, seed=1, count=None: check_matrix_family_membership(
        n if n is not None else 5, seed
    ),
    "remark-5.8": lambda n=6, seed=1, count=None: check_submatrix_parity(
        n if n is not None else 6, seed
    ),
    "theorem-1.2": lambda n=None, seed=1, count=None: check_n4_realization(seed),
    "theorem-1.3": lambda n=5, seed=1, count=None: check_dual_codim2(
        n if n is not None else 5, seed
    ),
    "theorem-1.5": lambda n=None, seed=1, count=None: check_volume_parity(seed),
    "theorem-1.6": lambda n=None, seed=1, count=None: check_n5_flexible_areas(seed),
}


def run_bundle(name: str, n=None, seed: int = 1, count=None) -> CheckResult:
    if name not in BUNDLES:
        raise KeyError(f"unknown check bundle {name!r}; known: {sorted(BUNDLES)}")
    kwargs = {"n": n, "seed": seed}
    if count is not None:
        kwargs["count"] = count
    return BUNDLES[name](**kwargs)
