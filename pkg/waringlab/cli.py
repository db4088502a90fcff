import json
import typing
import logging
import contextlib

import click

from . import binary, common, factory, files, spans, suite, verifier
from .binary import BinaryForm
from .points import PointSet

LOGGER = logging.getLogger(__name__)

BAD_INPUT = 2
INTERNAL_ERROR = 3


def _emit(payload: typing.Any, out: typing.Optional[str]):
    if out:
        files.write_json(payload, out)
    else:
        click.echo(files.dumps(payload))


def _fail(exception: Exception, path: typing.Optional[str], status: int):
    error: typing.Dict[str, typing.Any] = {
        "error": type(exception).__name__,
        "message": str(exception),
        "path": path,
    }
    if isinstance(exception, factory.ConstraintViolation):
        error["certificate"] = exception.certificate
    if status == INTERNAL_ERROR:
        error["internal"] = True
    click.echo(json.dumps(error), err=True)
    click.get_current_context().exit(status)


@contextlib.contextmanager
def _reporting(path: typing.Optional[str] = None):
    """Turn errors into a JSON object on standard error: 2 for bad input, 3 for internal failures."""
    try:
        yield
    except click.exceptions.Exit:
        raise
    except (ValueError, KeyError, json.JSONDecodeError) as exception:
        _fail(exception, path, BAD_INPUT)
    except Exception as exception:  # pylint: disable=broad-except
        LOGGER.exception("Internal error while handling %s.", path or "the command")
        _fail(exception, path, INTERNAL_ERROR)


def _overrides(text: typing.Optional[str]) -> typing.Dict[str, int]:
    with _reporting():
        return common.parse_threshold_overrides(text)
    return {}


@click.group()
@click.option("-v", "--verbose", count=True, help="Repeat for more detail (INFO, then DEBUG).")
def cli(verbose):
    """Exact real and complex Waring ranks, instances and verification."""
    level = logging.WARNING if verbose == 0 else (logging.INFO if verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@click.command()
@click.option("--case", "case", type=click.Choice(factory.CASES), required=True)
@click.option("--d", "d", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--seed", "seed", type=int, default=0, show_default=True)
@click.option("--index", "index", type=int, default=0, help="Instance index under the same seed.")
@click.option("--reducible", is_flag=True, help="Case (b) on two concurrent lines.")
@click.option("--off-curve", "off_curve", type=int, default=None, help="Number of off-curve points.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
def generate(case, d, m, seed, index, reducible, off_curve, out):
    """Generate a ground-truth instance."""
    config = common.make_config("generate", seed=seed, paths={"out": out}, case=case, d=d, m=m)
    with _reporting():
        instance = factory.generate(case, m, d, seed, index=index, reducible=reducible, off_curve_count=off_curve)
        _emit({**instance.to_json(), "config": config}, out)


@click.command()
@click.argument("instance", type=click.Path(dir_okay=False))
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
@click.option("--threshold-overrides", "threshold_overrides", default=None, help="Expert: line=K,conic=K.")
def verify(instance, out, threshold_overrides):
    """Verify an instance (or raw P, S_C, S_R triple); exit 0 on a passing verdict."""
    overrides = _overrides(threshold_overrides)
    config = common.make_config("verify", paths={"instance": instance, "out": out}, threshold_overrides=overrides)
    with _reporting(instance):
        loaded = factory.Instance.from_json(files.read_json(instance))
        config.update(case=loaded.case, d=loaded.d, m=loaded.m)
        seed = (loaded.provenance or {}).get("seed")
        if seed is not None:
            config["seed"] = seed
        report = verifier.classify(loaded, overrides)
        _emit({**report, "config": config}, out)
    if report["overall"] != verifier.PASS:
        click.get_current_context().exit(1)


@click.command()
@click.argument("form", type=click.Path(dir_okay=False))
@click.option("--depth", "depth", type=int, default=binary.DEFAULT_SEARCH_DEPTH, show_default=True)
def rank(form, depth):
    """Complex and real rank of a binary form, with decompositions."""
    with _reporting(form):
        loaded = BinaryForm.from_json(files.read_json(form))
        r_c, complex_dec = binary.complex_rank(loaded, depth)
        payload: typing.Dict[str, typing.Any] = {
            "config": common.make_config("rank", paths={"form": form}, d=loaded.degree, m=1),
            "complex_rank": r_c,
            "complex": complex_dec.to_json(),
            "real_rank": None,
            "real": None,
        }
        if loaded.is_real:
            r_r, real_dec = binary.real_rank(loaded, depth)
            payload["real_rank"] = r_r
            payload["real"] = real_dec.to_json()
            payload["real"]["signs"] = binary.normalized_signs(real_dec.points, real_dec.coeffs, loaded.degree)
        _emit(payload, None)


@click.command()
@click.argument("pointset", type=click.Path(dir_okay=False))
@click.option("--d", "d", type=int, required=True)
def h1(pointset, d):
    """Hilbert-function defect of a point set in degree d."""
    with _reporting(pointset):
        points = PointSet.from_json(files.read_json(pointset))
        report = spans.h1_ideal(points, d)
        config = common.make_config("h1", paths={"pointset": pointset}, d=d, m=points.m)
        _emit({**report.to_json(), "config": config}, None)


@click.command(name="suite")
@click.option("--criteria", "criteria", default=None, help="Comma-separated criteria, e.g. 1,2,5.")
@click.option("--runs", "runs", type=int, default=None, help="Override the run count of every batch.")
@click.option("--seed", "seed", type=int, default=0, show_default=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
def run_suite(criteria, runs, seed, out):
    """Run the acceptance batches; exit 0 when all pass."""
    with _reporting():
        selected = [int(c) for c in criteria.split(",")] if criteria else None
        counts = {c: runs for c in suite.DEFAULT_RUNS} if runs is not None else None
        results = suite.run_suite(selected, counts, seed)
        config = common.make_config("suite", seed=seed, paths={"out": out})
        _emit({"config": config, "results": results}, out)
    if not all(result["passed"] for result in results):
        click.get_current_context().exit(1)


cli.add_command(generate)
cli.add_command(verify)
cli.add_command(rank)
cli.add_command(h1)
cli.add_command(run_suite)

if __name__ == "__main__":
    cli()
