"""Theorem-level pipelines over the scene catalogue.

Each check assembles a tautological Steiner presentation, scans its
unstable hyperplanes over one or more primes, and compares the outcome
with the scene's own rational points.  The headline verdicts are

    EQUAL     the unstable set is exactly the image of the scene,
    SUPERSET  it strictly contains the image,
    INVALID   the presentation failed validation, or an enumerated
              image point escaped the unstable set.

Multi-prime runs never average: primes that disagree with the rest are
listed so a bad reduction is visible instead of silently absorbed.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass

from .errors import (ClassMismatch, HypothesisFailed, NonUniqueQuotient,
                     NotGeneralPosition, UnsupportedScene, ZeroScale)
from .exactfield import GF, QQ, Matrix, projective_reps, rank, span_reduction
from .koszul import green_points_test
from .scenes import PointSet, _scalar_json
from .steiner import (SteinerPresentation, make_presentation,
                      recover_section_point, validate_presentation,
                      valles_locus)

PRIMES_DEFAULT = (5, 7, 11)


def _vec_json(vec):
    return [_scalar_json(c) for c in vec]


# ---- tautological presentations ---------------------------------------------


def hypothesis_defect(scene, b_label, field=QQ):
    """h1 of B(-A), the obstruction to the presentation being a genuine
    two-term resolution; None when the scene cannot say."""
    if not scene.supports_cohomology:
        return None
    sub = scene.label_add(b_label, scene.label_scale(scene.label_A(), -1))
    return scene.cohomology_dim(sub, 1, field)


def tautological_presentation(scene, b_label, field=QQ, strict=False):
    """mu: H0(B-A) (x) V -> H0(B) from the scene's multiplication.

    The construction succeeds whenever both section spaces exist; the
    cohomological hypothesis h1(B-A) = 0 that makes the cokernel a
    vector bundle resolution is recorded on the result as `h1_defect`
    and only enforced when strict=True.
    """
    a_label = scene.label_A()
    sub_label = scene.label_add(b_label, scene.label_scale(a_label, -1))
    defect = hypothesis_defect(scene, b_label, field)
    if strict and defect:
        raise HypothesisFailed(
            f"h1 of B-A is {defect}, not 0, for {scene.name}")
    u1 = scene.section_space(sub_label, field)
    u0 = scene.section_space(b_label, field)
    m = scene.series_dim(field)
    tensor = scene.multiplication_map(sub_label, a_label, field)
    name = f"{scene.name} | B={scene.label_str(b_label)}"
    pres = make_presentation(tensor, u1.dim, m, u0.dim, name)
    pres.h1_defect = defect
    return pres


def vanishing_check(scene, b_label, field=QQ):
    """True iff h^i(B (x) A^-(i+1)) = 0 for i = 1..dim X."""
    if not scene.supports_cohomology:
        raise UnsupportedScene(
            f"vanishing test needs cohomology, not modelled for "
            f"{scene.kind}")
    a_label = scene.label_A()
    for i in range(1, scene.dimension + 1):
        lab = scene.label_add(b_label,
                              scene.label_scale(a_label, -(i + 1)))
        if scene.cohomology_dim(lab, i, field) != 0:
            return False
    return True


# ---- the Torelli comparison --------------------------------------------------


@dataclass(frozen=True)
class RecoveryRow:
    params: tuple
    expected: tuple
    recovered: tuple | None
    match: bool

    def to_json_dict(self):
        return {"params": _vec_json(self.params),
                "expected": _vec_json(self.expected),
                "recovered": None if self.recovered is None
                else _vec_json(self.recovered),
                "match": self.match}


@dataclass(frozen=True)
class PrimeResult:
    prime: int
    verdict: str
    scanned: int
    unstable_count: int
    image_count: int
    extra: tuple
    missing: tuple
    recovery: tuple

    @property
    def recovery_ok(self):
        return bool(self.recovery) and all(r.match for r in self.recovery)

    def to_json_dict(self):
        return {"prime": self.prime, "verdict": self.verdict,
                "scanned": self.scanned,
                "unstable_count": self.unstable_count,
                "image_count": self.image_count,
                "extra": [_vec_json(lam) for lam in self.extra],
                "missing": [_vec_json(lam) for lam in self.missing],
                "recovery": [r.to_json_dict() for r in self.recovery],
                "recovery_ok": self.recovery_ok}


@dataclass(frozen=True)
class TorelliReport:
    scene: str
    b_label: str
    primes: tuple
    results: tuple
    consensus: str
    bad_primes: tuple

    def to_json_dict(self):
        return {"scene": self.scene, "B": self.b_label,
                "primes": list(self.primes),
                "results": [r.to_json_dict() for r in self.results],
                "consensus": self.consensus,
                "bad_primes": list(self.bad_primes)}


def _consensus(verdicts):
    """Majority verdict plus the dissenting primes; DISAGREEMENT when the
    primes split."""
    if not verdicts:
        return "EMPTY", ()
    tally = {}
    for _, v in verdicts:
        tally[v] = tally.get(v, 0) + 1
    top = max(tally.values())
    lead = next(v for _, v in verdicts if tally[v] == top)
    bad = tuple(p for p, v in verdicts if v != lead)
    if bad:
        return "DISAGREEMENT", bad
    return lead, ()


def _prime_result(scene, b_label, p, with_recovery=True):
    field = GF(p)
    pres = tautological_presentation(scene, b_label, field)
    report = validate_presentation(pres, p)
    if not report.valid:
        return PrimeResult(p, "INVALID", report.fibers_scanned, 0, 0,
                           (), (), ())
    scan = valles_locus(pres, p)
    unstable = scan.unstable_set()
    enum = scene.enumerate_points(p)
    image = enum.phi_set()
    extra = tuple(sorted(unstable - image))
    missing = tuple(sorted(image - unstable))
    if missing:
        verdict = "INVALID"
    elif extra:
        verdict = "SUPERSET"
    else:
        verdict = "EQUAL"
    rows = []
    if with_recovery and not missing:
        for rec in enum.records:
            expected = scene.evaluation_functional(rec.params, b_label,
                                                   field)
            try:
                psi = recover_section_point(pres, rec.phi)
            except NonUniqueQuotient:
                rows.append(RecoveryRow(rec.params, expected, None, False))
                continue
            rows.append(RecoveryRow(rec.params, expected, psi,
                                    psi == expected))
    return PrimeResult(p, verdict, scan.scanned, len(unstable),
                       len(image), extra, missing, tuple(rows))


def torelli_check(scene, b_label, primes=PRIMES_DEFAULT,
                  with_recovery=True) -> TorelliReport:
    """Compare the unstable-hyperplane locus of the tautological
    presentation for B with the scene's image points, prime by prime."""
    results = tuple(_prime_result(scene, b_label, p, with_recovery)
                    for p in primes)
    consensus, bad = _consensus([(r.prime, r.verdict) for r in results])
    return TorelliReport(scene.name, scene.label_str(b_label),
                         tuple(primes), results, consensus, bad)


@dataclass(frozen=True)
class RecoveryReport:
    scene: str
    b_label: str
    prime: int
    rows: tuple

    @property
    def all_match(self):
        return all(r.match for r in self.rows)

    def to_json_dict(self):
        return {"scene": self.scene, "B": self.b_label,
                "prime": self.prime,
                "rows": [r.to_json_dict() for r in self.rows],
                "all_match": self.all_match}


def recover_embedding_check(scene, b_label, prime) -> RecoveryReport:
    """Recover, from the presentation alone, the functional that each
    image point induces on H0(B), and compare with direct evaluation.
    A cokernel of dimension > 1 at some point propagates as
    NonUniqueQuotient."""
    field = GF(prime)
    pres = tautological_presentation(scene, b_label, field)
    rows = []
    for rec in scene.enumerate_points(prime).records:
        expected = scene.evaluation_functional(rec.params, b_label, field)
        psi = recover_section_point(pres, rec.phi)
        rows.append(RecoveryRow(rec.params, expected, psi,
                                psi == expected))
    return RecoveryReport(scene.name, scene.label_str(b_label), prime,
                          tuple(rows))


# ---- scroll members ----------------------------------------------------------


def scroll_invariance(scene_x, scene_y, n=1, field=QQ) -> bool:
    """Whether two members of one linear system on one scroll yield
    byte-identical presentations for B = K + nA."""
    if scene_x.kind != "scroll_curve" or scene_y.kind != "scroll_curve":
        raise ClassMismatch("both scenes must be scroll members")
    sig_x = (scene_x.a, scene_x.b, scene_x.d, scene_x.e)
    sig_y = (scene_y.a, scene_y.b, scene_y.d, scene_y.e)
    if sig_x != sig_y:
        raise ClassMismatch(
            f"scroll classes differ: {sig_x} vs {sig_y}")
    b_label = scene_x.label_add(
        scene_x.canonical_label(),
        scene_x.label_scale(scene_x.label_A(), n))
    px = tautological_presentation(scene_x, b_label, field)
    py = tautological_presentation(scene_y, b_label, field)
    return px.tensor == py.tensor


# ---- point sets: the Dolgachev-Kapranov style bundle --------------------------


def dk_presentation(points, field=QQ) -> SteinerPresentation:
    """Presentation whose unstable locus should recover a general point
    set.

    With d points in general position in P^r, U1 and U0 are the duals of
    the cokernels of evaluating linear forms, resp. constants, at the
    fixed representatives; V acts by the transposed diagonal action.
    d = r + 1 is allowed but the bundle degenerates to a trivial one
    (U1 = 0), which is reported as a warning, not an error.
    """
    r = points.r
    d = points.count
    if d < r + 1:
        raise NotGeneralPosition(
            f"need at least r+1 = {r + 1} points, got {d}")
    if not points.in_general_position(field):
        raise NotGeneralPosition(
            "points are not in linear general position")
    if d == r + 1:
        warnings.warn(
            "d = r+1 points give U1 = 0: the presentation is degenerate "
            "and every hyperplane is unstable", RuntimeWarning,
            stacklevel=2)
    points.reduced_points(field)        # zero/collision guard mod p
    reps = tuple(tuple(field.normalize(c) for c in row)
                 for row in points.points)
    ones = Matrix(field, 1, d, (tuple(field.one for _ in range(d)),))
    quot0 = span_reduction(ones)
    lin = Matrix.from_rows(field, reps).transpose()   # (r+1) x d
    quot1 = span_reduction(lin)
    a, m, b = quot1.dim, r + 1, quot0.dim
    cols = [None] * (a * m)
    for j in range(m):
        # mult by x_j: quotient-by-constants -> quotient-by-linears,
        # then transposed into mu columns
        action_cols = []
        for c in quot0.complement:
            scale = reps[c][j]
            col = tuple(field.mul(scale, x)
                        for x in quot1.reduce.column(c))
            action_cols.append(col)
        mj = Matrix.from_cols(field, action_cols, a)
        for i in range(a):
            cols[i * m + j] = tuple(mj.entries[i])
    tensor = Matrix.from_cols(field, cols, b)
    return make_presentation(tensor, a, m, b,
                             f"dk({points.name})")


@dataclass(frozen=True)
class DKPrimeResult:
    prime: int
    verdict: str
    scanned: int
    unstable_count: int
    point_count: int
    extra: tuple
    missing: tuple
    rnc_flag: bool
    implication_ok: bool

    def to_json_dict(self):
        return {"prime": self.prime, "verdict": self.verdict,
                "scanned": self.scanned,
                "unstable_count": self.unstable_count,
                "point_count": self.point_count,
                "extra": [_vec_json(lam) for lam in self.extra],
                "missing": [_vec_json(lam) for lam in self.missing],
                "rnc_flag": self.rnc_flag,
                "implication_ok": self.implication_ok}


@dataclass(frozen=True)
class DKReport:
    points: str
    primes: tuple
    results: tuple
    consensus: str
    bad_primes: tuple

    def to_json_dict(self):
        return {"points": self.points, "primes": list(self.primes),
                "results": [r.to_json_dict() for r in self.results],
                "consensus": self.consensus,
                "bad_primes": list(self.bad_primes)}


def dk_check(points, primes=PRIMES_DEFAULT) -> DKReport:
    """Scan the point-set presentation prime by prime.  The point set
    itself always sits inside the unstable locus; a SUPERSET verdict is
    expected to coincide with the points lying on a rational normal
    curve, and that implication is re-checked per prime."""
    results = []
    for p in primes:
        field = GF(p)
        pres = dk_presentation(points, field)
        report = validate_presentation(pres, p)
        if not report.valid:
            results.append(DKPrimeResult(p, "INVALID",
                                         report.fibers_scanned, 0, 0,
                                         (), (), False, True))
            continue
        scan = valles_locus(pres, p)
        unstable = scan.unstable_set()
        image = set(points.reduced_points(field))
        extra = tuple(sorted(unstable - image))
        missing = tuple(sorted(image - unstable))
        if missing:
            verdict = "INVALID"
        elif extra:
            verdict = "SUPERSET"
        else:
            verdict = "EQUAL"
        rnc = green_points_test(points, field).on_rnc
        implication = verdict != "SUPERSET" or rnc
        results.append(DKPrimeResult(p, verdict, scan.scanned,
                                     len(unstable), len(image), extra,
                                     missing, rnc, implication))
    consensus, bad = _consensus([(r.prime, r.verdict) for r in results])
    return DKReport(points.name, tuple(primes), tuple(results),
                    consensus, bad)


# ---- base-point-free style image test -----------------------------------------


@dataclass(frozen=True)
class BpfReport:
    scene: str
    b_label: str
    prime: int
    params: tuple
    contained: bool
    image_rank: int
    expected_rank: int

    @property
    def equal(self):
        return self.contained and self.image_rank == self.expected_rank

    def to_json_dict(self):
        return {"scene": self.scene, "B": self.b_label,
                "prime": self.prime,
                "params": _vec_json(self.params),
                "contained": self.contained,
                "image_rank": self.image_rank,
                "expected_rank": self.expected_rank,
                "equal": self.equal}


def bpf_image_check(scene, b_label, params, prime) -> BpfReport:
    """At an image point x, the presentation restricted to the sections
    vanishing at x should land exactly on the sections of B vanishing at
    x: containment plus a rank count of b - 1."""
    field = GF(prime)
    pres = tautological_presentation(scene, b_label, field)
    lam = scene.evaluation_functional(params, scene.label_A(), field)
    ev_b = scene.evaluation_functional(params, b_label, field)
    restricted = pres.restricted_matrix(lam)
    contained = all(
        _dot_vec(field, ev_b, restricted.column(t)) == field.zero
        for t in range(restricted.ncols))
    image_rank = rank(restricted)
    return BpfReport(scene.name, scene.label_str(b_label), prime, params,
                     contained, image_rank, pres.dim_u0 - 1)


def _dot_vec(field, u, v):
    acc = field.zero
    for x, y in zip(u, v):
        acc = field.add(acc, field.mul(x, y))
    return acc


# ---- representative invariance -------------------------------------------------


def rescaling_invariance(points, scaling, primes=PRIMES_DEFAULT) -> bool:
    """Rescaling each point representative by a nonzero scalar must leave
    every dk_check verdict and unstable set unchanged."""
    if len(scaling) != points.count:
        raise ZeroScale(
            f"need one scale per point, got {len(scaling)} for "
            f"{points.count}")
    if any(s == 0 for s in scaling):
        raise ZeroScale("scales must be nonzero")
    scaled = PointSet(points.r,
                      [tuple(s * c for c in row)
                       for s, row in zip(scaling, points.points)],
                      name=f"{points.name}~rescaled")
    base = dk_check(points, primes)
    other = dk_check(scaled, primes)
    for rb, ro in zip(base.results, other.results):
        if (rb.verdict, rb.extra, rb.missing) != \
                (ro.verdict, ro.extra, ro.missing):
            return False
    return True


# ---- seeded generic configurations ---------------------------------------------


def random_point_set(count, prime, seed, r=3, max_tries=256):
    """Seeded point sets with a recorded genericity certificate.

    Draws ``count`` distinct canonical representatives of P^r(F_p) and
    retries with consecutive seeds until the draw certifies as generic:
    linear general position always, and additionally lying on no
    rational normal curve (K_{r-2,2} = 0) once count >= r+4.  Small
    fields make accidental incidences common, so the seed that finally
    certified is returned alongside the points and should be quoted in
    any report built from them.
    """
    field = GF(prime)
    reps = list(projective_reps(prime, r + 1))
    if count > len(reps):
        raise NotGeneralPosition(
            f"P^{r}(F_{prime}) has only {len(reps)} points, "
            f"cannot draw {count}")
    for attempt in range(max_tries):
        used = seed + attempt
        rng = random.Random(used)
        rows = rng.sample(reps, count)
        points = PointSet(
            r, rows, name=f"random(d={count}, p={prime}, seed={used})")
        if not points.in_general_position(field):
            continue
        if count >= r + 4 and green_points_test(points, field).on_rnc:
            continue
        return points, used
    raise NotGeneralPosition(
        f"no certified configuration within {max_tries} seeds from {seed}")
