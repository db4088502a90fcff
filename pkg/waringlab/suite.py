"""Named acceptance batches, runnable through ``waringlab suite``."""
import random
import typing
import logging
import itertools
import concurrent.futures

from . import binary, common, factory, files, spans, verifier
from .testing import examples

LOGGER = logging.getLogger(__name__)

DEGREES = {"a": (3, 4, 5, 6), "b": (3, 4, 5, 6), "c": (5, 6)}
DIMENSIONS = {"a": (2, 3, 4), "b": (2, 3, 4), "c": (3, 4)}
DEFAULT_RUNS = {1: 1, 2: 1, 3: 100, 4: 100, 5: 50, 6: 20, 7: 50, 8: 50}

BatchResult = typing.TypedDict(
    "BatchResult",
    {"criterion": int, "name": str, "runs": int, "failures": typing.List[str], "passed": bool},
)


def _result(criterion: int, name: str, runs: int, failures: typing.List[str]) -> BatchResult:
    LOGGER.info("Criterion %s (%s): %s runs, %s failures.", criterion, name, runs, len(failures))
    return {"criterion": criterion, "name": name, "runs": runs, "failures": failures, "passed": not failures}


def _map(fn: typing.Callable, items: typing.Sequence) -> typing.List:
    """Map in a thread pool; results keep the order of ``items``."""
    with concurrent.futures.ThreadPoolExecutor(max_workers=common.thread_count()) as pool:
        return list(pool.map(fn, items))


def grid_point(case: str, index: int) -> typing.Tuple[int, int]:
    """(m, d) for the index-th run of a case, cycling through its grid."""
    cells = list(itertools.product(DIMENSIONS[case], DEGREES[case]))
    return cells[index % len(cells)]


def _round_trip(job: typing.Tuple[str, int, int]) -> typing.Dict[str, typing.Any]:
    case, index, seed = job
    m, d = grid_point(case, index)
    instance = factory.generate(case, m, d, seed, index=index)
    report = verifier.classify(instance)
    return {
        "label": f"{case}/{index} (m={m}, d={d})",
        "case": case,
        "instance": instance,
        "report": report,
        "serialized": files.dumps(instance.to_json()) + files.dumps(report),
    }


def monomial_ranks() -> BatchResult:
    failures = []
    runs = 0
    for d in range(2, 9):
        for a in range(1, d):
            runs += 1
            form = examples.monomial_form(a, d - a)
            rank, decomposition = binary.complex_rank(form)
            if rank != max(a, d - a) + 1:
                failures.append(f"x^{a} y^{d - a}: complex rank {rank}")
            elif decomposition.mode == binary.EXACT and decomposition.reconstruct(d) != form.to_form():
                failures.append(f"x^{a} y^{d - a}: reconstruction differs")
    return _result(1, "binary monomial ranks", runs, failures)


def worked_gap() -> BatchResult:
    failures = []
    r_c, complex_dec = binary.complex_rank(examples.WORKED_GAP)
    r_r, real_dec = binary.real_rank(examples.WORKED_GAP)
    if (r_c, r_r) != (2, 3):
        failures.append(f"ranks ({r_c}, {r_r}) instead of (2, 3)")
    for decomposition in (complex_dec, real_dec):
        if decomposition.reconstruct(3) != examples.WORKED_GAP.to_form():
            failures.append(f"{decomposition.field} reconstruction differs")
    return _result(2, "worked gap form", 2, failures)


def collinear_h1(runs: int, seed: int) -> BatchResult:
    jobs = [(d, k, trial) for d in range(3, 7) for k in range(4) for trial in range(runs)]

    def check(job):
        d, k, trial = job
        rng = random.Random(common.derive_seed("collinear", seed, d, k, trial))
        points = examples.collinear_points(rng, 2, d + 1 + k)
        h1 = spans.h1_ideal(points, d).h1
        return None if h1 == k else f"d={d}, k={k}, trial {trial}: h1 = {h1}"

    failures = [f for f in _map(check, jobs) if f]
    return _result(3, "h1 of collinear points", len(jobs), failures)


def dichotomy(runs: int, seed: int) -> BatchResult:
    jobs = [(factory.CASES[i % 3], i // 3, seed) for i in range(runs)]

    def check(job):
        case, index, job_seed = job
        m, d = grid_point(case, index)
        instance = factory.generate(case, m, d, job_seed, index=index)
        structure = verifier.detect_structure(instance)
        if structure.lines or structure.conics:
            return None
        return f"{case}/{index}: no rich line or conic"

    failures = [f for f in _map(check, jobs) if f]
    return _result(4, "rich line or conic", len(jobs), failures)


def round_trip(trips: typing.Sequence[typing.Dict[str, typing.Any]]) -> BatchResult:
    failures = []
    for trip in trips:
        report = trip["report"]
        if report["overall"] != verifier.PASS or trip["case"] not in report["passing_cases"]:
            failures.append(f"{trip['label']}: {report['overall']} with {report['passing_cases']}")
    return _result(5, "generate and classify", len(trips), failures)


def lemma_coherence(trips: typing.Sequence[typing.Dict[str, typing.Any]], controls: int, seed: int) -> BatchResult:
    failures = []
    for trip in trips:
        for verdict in trip["report"]["verdicts"]:
            if not verdict["lemma_c2_coherent"]:
                failures.append(f"{trip['label']}: incoherent on {verdict['curve']['kind']}")
    perturbable = [trip["instance"] for trip in trips if trip["instance"].off_curve]
    for index in range(controls):
        if not perturbable:
            failures.append("no instance with off-curve points to perturb")
            break
        instance = factory.perturb_off_curve(perturbable[index % len(perturbable)], seed + index)
        result = spans.lemma_c2_check(instance.complex_points, instance.real_points, instance.curve, instance.d)
        if not isinstance(result, spans.Conclusion) or result.equal:
            failures.append(f"control {index}: {result.to_json()}")
    return _result(6, "independence lemma", len(trips) + controls, failures)


def _intersection_records(report) -> typing.Iterator[typing.Dict[str, typing.Any]]:
    for verdict in report["verdicts"]:
        for record in verdict["intersections"].values():
            spans_of = record.values() if "curve_span" in record else [record]
            for entry in spans_of:
                if isinstance(entry, dict) and entry.get("unique"):
                    yield entry


def realness(trips: typing.Sequence[typing.Dict[str, typing.Any]]) -> BatchResult:
    failures = []
    runs = 0
    for trip in trips:
        for entry in _intersection_records(trip["report"]):
            runs += 1
            if not entry["real"]:
                failures.append(f"{trip['label']}: non-real intersection point")
    return _result(7, "real intersection points", runs, failures)


def determinism(trips: typing.Sequence[typing.Dict[str, typing.Any]], jobs: typing.Sequence) -> BatchResult:
    repeated = _map(_round_trip, jobs)
    failures = [
        first["label"] for first, second in zip(trips, repeated) if first["serialized"] != second["serialized"]
    ]
    return _result(8, "byte-identical reruns", len(trips), failures)


def run_suite(
    criteria: typing.Optional[typing.Iterable[int]] = None,
    runs: typing.Optional[typing.Dict[int, int]] = None,
    seed: int = 0,
) -> typing.List[BatchResult]:
    """Run the selected acceptance batches (all by default)."""
    selected = sorted(set(criteria or DEFAULT_RUNS))
    unknown = [c for c in selected if c not in DEFAULT_RUNS]
    if unknown:
        raise ValueError(f"Unknown criteria {unknown}; choose from {sorted(DEFAULT_RUNS)}.")
    counts = {**DEFAULT_RUNS, **(runs or {})}
    results: typing.List[BatchResult] = []
    trips: typing.List[typing.Dict[str, typing.Any]] = []
    jobs = [(case, index, seed) for case in factory.CASES for index in range(counts[5])]
    if any(c >= 5 for c in selected):
        trips = _map(_round_trip, jobs)
    for criterion in selected:
        if criterion == 1:
            results.append(monomial_ranks())
        elif criterion == 2:
            results.append(worked_gap())
        elif criterion == 3:
            results.append(collinear_h1(counts[3], seed))
        elif criterion == 4:
            results.append(dichotomy(counts[4], seed))
        elif criterion == 5:
            results.append(round_trip(trips))
        elif criterion == 6:
            results.append(lemma_coherence(trips, counts[6], seed))
        elif criterion == 7:
            results.append(realness(trips))
        else:
            results.append(determinism(trips, jobs[: counts[8]]))
    return results
